#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "ssred/filtmod.hpp"
#include "ssred/halfint.hpp"
#include "ssred/padic.hpp"
#include "ssred/series.hpp"
#include "ssred/verdict.hpp"

namespace ssred {

using nlohmann::json;

inline json to_json(HalfInt v) {
    if (v.is_infinite()) return json("inf");
    std::int64_t t = v.twice();
    if (t % 2 == 0) return json{{"num", t / 2}, {"den", 1}};
    return json{{"num", t}, {"den", 2}};
}

inline json to_json(const FieldElem& e) {
    return json{{"x", e.x().get_str()},
                {"y", e.y().get_str()},
                {"prec", e.is_exact() ? json("exact") : json(e.prec().m())},
                {"p", e.p()}};
}

/// Sparse {degree: element} map plus the certified tail bound.
inline json series_to_json(const TruncSeries& s) {
    json coeffs = json::object();
    for (std::int64_t i = 0; i <= s.trunc_deg(); ++i)
        if (!s.coeff(i).residue_is_zero()) coeffs[std::to_string(i)] = to_json(s.coeff(i));
    return json{{"coeffs", coeffs}, {"trunc_deg", s.trunc_deg()}, {"tail_val", to_json(s.tail())}};
}

struct RunConfig {
    long p = 0;
    std::int64_t k = 0;
    std::string L_input;  // literal, or empty when given by valuation / crystalline
    bool crystalline = false;
    bool L_by_valuation = false;
    HalfInt L_val;
    std::int64_t prec = 0;   // 0 = pipeline default
    std::int64_t deg_u = 0;  // 0 = pipeline default
    bool weak_bound = false;
    bool per_round = false;
};

/// One named certificate.  `asserted` marks the checks the run stakes its
/// exit code on; the rest are evaluated and reported but carry no claim
/// (e.g. descent outcomes on instances where the bound fails).
struct CertRecord {
    std::string name;
    Verdict v = Verdict::Unknown;
    bool asserted = false;
    std::string detail;
};

struct SeriesSummary {
    bool present = false;
    HalfInt v_r2_lb;
    std::vector<HalfInt> low_coeff_vals;  // valuations of coefficients 0..h
    TruncSeries series;
};

struct PCoeff {
    FieldElem value;
    HalfInt val;
};

struct RunReport {
    RunConfig cfg;
    long p = 0;
    std::int64_t k = 0, h = 0;
    bool crystalline = false;
    FieldElem L;
    bool L_is_representative = false;  // materialized from a valuation only
    std::int64_t prec_used = 0, deg_u_used = 0;

    bool bound_weak_used = false;
    bool bound_strong = false, bound_weak = false, bound_satisfied = false;
    HalfInt L_valuation;

    MonodromySignRecord sign;
    std::vector<CertRecord> certs;
    std::vector<HalfInt> x_valuations;
    SeriesSummary G_semistable, G_crystalline;
    std::vector<PCoeff> P_semistable, P_crystalline;
    std::string label_semistable, label_crystalline, label;
    bool labels_agree = false, both_labels_present = false;
    std::vector<std::string> skipped;  // stages not run, with reasons

    int escalations = 0;
    std::vector<std::string> escalation_log;
    int exit_code = 0;
    double wall_ms = 0.0;
    std::string error;

    void add_cert(std::string name, Verdict v, bool asserted, std::string detail = "") {
        certs.push_back({std::move(name), v, asserted, std::move(detail)});
    }
    bool any_asserted_unknown() const {
        for (const auto& c : certs)
            if (c.asserted && c.v == Verdict::Unknown) return true;
        return false;
    }
    bool any_asserted_false() const {
        for (const auto& c : certs)
            if (c.asserted && c.v == Verdict::False) return true;
        return false;
    }
};

inline std::string final_verdict_str(Verdict v) {
    return v == Verdict::Unknown ? "unknown-final" : to_string(v);
}

inline json report_to_json(const RunReport& r) {
    json cfg{{"p", r.p},
             {"k", r.k},
             {"L", r.cfg.crystalline ? json("inf")
                                     : (r.cfg.L_by_valuation ? json{{"valuation", to_json(r.cfg.L_val)}}
                                                             : json(r.cfg.L_input))},
             {"prec", r.prec_used},
             {"deg_u", r.deg_u_used},
             {"weak_bound", r.cfg.weak_bound}};
    json certs = json::array();
    for (const auto& c : r.certs) {
        json jc{{"name", c.name}, {"verdict", final_verdict_str(c.v)}, {"asserted", c.asserted}};
        if (!c.detail.empty()) jc["detail"] = c.detail;
        certs.push_back(jc);
    }
    json xs = json::array();
    for (const auto& v : r.x_valuations) xs.push_back(to_json(v));
    auto series_summary = [](const SeriesSummary& s) -> json {
        if (!s.present) return json(nullptr);
        json lows = json::array();
        for (const auto& v : s.low_coeff_vals) lows.push_back(to_json(v));
        return json{{"v_R2_lower_bound", to_json(s.v_r2_lb)},
                    {"low_coeff_valuations", lows},
                    {"series", series_to_json(s.series)}};
    };
    auto pcoeffs = [](const std::vector<PCoeff>& ps) -> json {
        json out = json::array();
        for (const auto& c : ps)
            out.push_back(json{{"value", to_json(c.value)}, {"valuation", to_json(c.val)}});
        return out;
    };
    json j{{"schema", 1},
           {"config", cfg},
           {"L_materialized", r.crystalline ? json("inf") : to_json(r.L)},
           {"L_is_representative", r.L_is_representative},
           {"L_valuation", r.crystalline ? json("inf") : to_json(r.L_valuation)},
           {"bound", json{{"strong", r.bound_strong},
                          {"weak", r.bound_weak},
                          {"weak_used", r.bound_weak_used},
                          {"satisfied", r.bound_satisfied}}},
           {"monodromy_sign",
            json{{"matches_display", r.sign.matches_display}, {"matches_neg_b", r.sign.matches_neg_b}}},
           {"certificates", certs},
           {"x_valuations", xs},
           {"G", json{{"semistable", series_summary(r.G_semistable)},
                      {"crystalline", series_summary(r.G_crystalline)}}},
           {"P", json{{"semistable", pcoeffs(r.P_semistable)},
                      {"crystalline", pcoeffs(r.P_crystalline)}}},
           {"label", json{{"result", r.label},
                          {"semistable", r.label_semistable},
                          {"crystalline", r.label_crystalline},
                          {"agree", r.labels_agree},
                          {"both_present", r.both_labels_present}}},
           {"skipped", r.skipped},
           {"escalations", json{{"count", r.escalations}, {"log", r.escalation_log}}},
           {"exit_code", r.exit_code},
           {"timings", json{{"wall_ms", r.wall_ms}}}};
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

inline std::string report_to_text(const RunReport& r) {
    std::string s;
    if (!r.error.empty()) {
        s += "p=" + std::to_string(r.p) + " k=" + std::to_string(r.k) + "\n";
        s += "error: " + r.error + "\n";
        s += "exit: " + std::to_string(r.exit_code) + "\n";
        return s;
    }
    s += "p=" + std::to_string(r.p) + " k=" + std::to_string(r.k) +
         " L=" + (r.crystalline ? "inf" : r.L.str()) +
         " (v_p(L)=" + (r.crystalline ? "inf" : r.L_valuation.str()) + ")" +
         " prec=" + std::to_string(r.prec_used) + " deg_u=" + std::to_string(r.deg_u_used) + "\n";
    s += std::string("bound: ") + (r.bound_satisfied ? "satisfied" : "NOT satisfied") +
         (r.bound_weak_used ? " (weak form)" : "") + "\n";
    for (const auto& c : r.certs) {
        s += "  [" + std::string(c.asserted ? "assert" : "report") + "] " + c.name + ": " +
             final_verdict_str(c.v);
        if (!c.detail.empty()) s += "  (" + c.detail + ")";
        s += "\n";
    }
    if (!r.label.empty()) s += "label: " + r.label + "\n";
    if (r.both_labels_present)
        s += std::string("paths agree: ") + (r.labels_agree ? "yes" : "NO") + "\n";
    for (const auto& k : r.skipped) s += "skipped: " + k + "\n";
    if (r.escalations) s += "escalations: " + std::to_string(r.escalations) + "\n";
    if (!r.error.empty()) s += "error: " + r.error + "\n";
    s += "exit: " + std::to_string(r.exit_code) + "\n";
    return s;
}

}  // namespace ssred
