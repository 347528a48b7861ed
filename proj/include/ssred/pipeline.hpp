#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ssred/breuil.hpp"
#include "ssred/descent.hpp"
#include "ssred/errors.hpp"
#include "ssred/filtmod.hpp"
#include "ssred/kisin.hpp"
#include "ssred/reduction.hpp"
#include "ssred/report.hpp"
#include "ssred/series.hpp"

namespace ssred {

inline std::int64_t default_deg_u(long p, std::int64_t h) {
    return std::max<std::int64_t>(static_cast<std::int64_t>(p) * p, 2 * p * h);
}

inline std::int64_t default_prec(std::int64_t h, HalfInt vL, std::int64_t /*deg_u*/) {
    std::int64_t ceil_abs = 0;
    if (!vL.is_infinite()) {
        std::int64_t t = vL.twice() < 0 ? -vL.twice() : vL.twice();
        ceil_abs = (t + 1) / 2;
    }
    return 2 * h + 2 * ceil_abs + 10;
}

namespace detail {

/// Instances the descent chain is claimed for: everything under the weak
/// bound, otherwise h >= 4 or p = h = 3 (plus the crystalline path, which is
/// always in range).
inline bool semistable_chain_claimed(long p, std::int64_t h, bool weak_used) {
    if (weak_used) return true;
    return h >= 4 || (p == 3 && h == 3);
}

struct ChainOutput {
    bool produced = false;
    SeriesSummary G;
    std::vector<PCoeff> P;
    std::string label;
};

inline SeriesSummary summarize_G(const TruncSeries& G, std::int64_t h) {
    SeriesSummary out;
    out.present = true;
    out.v_r2_lb = G.v_r2_lb();
    for (std::int64_t i = 0; i <= h; ++i) out.low_coeff_vals.push_back(G.coeff(i).valuation().v);
    out.series = G;
    return out;
}

inline std::vector<PCoeff> summarize_P(const std::vector<FieldElem>& P) {
    std::vector<PCoeff> out;
    for (const auto& c : P) out.push_back({c, c.valuation().v});
    return out;
}

/// Normalization, hypotheses, descent, reduction, classification for one
/// already-built Frobenius matrix.  `prefix` names the certificates;
/// `asserted` decides whether their verdicts gate the exit code.
inline ChainOutput run_descent_chain(RunReport& rep, const PhiMat& A, NormalizeKind kind,
                                     Prec work, bool asserted, bool per_round,
                                     const std::string& prefix) {
    ChainOutput out;
    std::int64_t h = A.h;
    long p = A.p();
    NormalizeResult norm = normalize_to_G(A, kind, work);
    rep.add_cert(prefix + "normalize_shape",
                 norm.snap_residues_vanish ? Verdict::True : Verdict::Unknown, asserted,
                 "off-entry residual v_R2 >= " + norm.snap_residual_lb.str() + ", path " + norm.path);
    rep.add_cert(prefix + "g_offset", norm.g_offset, asserted,
                 "G - mu in H^o_" + std::to_string(h));

    GHypotheses hyps = check_G_hypotheses(norm.G, h);
    rep.add_cert(prefix + "g_bounded", hyps.bounded, asserted);
    rep.add_cert(prefix + "g_tail_bounded", hyps.tail_bounded, asserted);
    rep.add_cert(prefix + "g_low_integral", hyps.low_integral, asserted);

    out.G = summarize_G(norm.G, h);

    DescentOptions opt;
    DescentResult desc;
    if (hyps.all_true()) {
        desc = descend(norm.normalized, hyps, opt);
    } else if (!asserted) {
        opt.force_run = true;
        desc = descend(norm.normalized, hyps, opt);
    } else {
        bool any_false = hyps.bounded == Verdict::False || hyps.tail_bounded == Verdict::False ||
                         hyps.low_integral == Verdict::False;
        if (any_false) return out;  // asserted hypothesis failed; certs above carry it
        throw PrecisionLossError(prefix + "descent hypotheses");  // unknown: escalate
    }

    rep.add_cert(prefix + "c0_identity", desc.c0_identity ? Verdict::True : Verdict::False, asserted);
    rep.add_cert(prefix + "conj_residual", desc.residual_ok, asserted,
                 "v_R2(C A - T phi(C)) >= " + desc.residual_lb.str() + " (threshold " +
                     std::to_string(h) + ")");
    rep.add_cert(prefix + "p_integral", desc.p_integral, asserted);
    rep.add_cert(prefix + "p_tracks_g", desc.p_tracks_g, asserted,
                 "v_R2(P - T_<=h(G)) >= " + desc.p_tracks_lb.str());
    rep.add_cert(prefix + "det_c_unit", desc.det_c_unit, asserted);
    std::string rounds_detail = std::to_string(desc.rounds) + " rounds";
    if (per_round) {
        rounds_detail += "; measures";
        for (const auto& m : desc.round_measures) rounds_detail += " " + m.str();
    }
    rep.add_cert(prefix + "rounds_in_budget",
                 desc.rounds <= 2 * A.trunc_deg() ? Verdict::True : Verdict::False, asserted,
                 rounds_detail);
    out.P = summarize_P(desc.P);

    if (desc.p_integral == Verdict::True) {
        ResidueMat rm = reduce_mod_p(desc, p, h);
        ReductionLabel label = classify(rm, p);
        rep.add_cert(prefix + "reduction_shape",
                     label.kind == ReductionLabel::Kind::Induced ? Verdict::True : Verdict::False,
                     asserted, label.label_str());
        out.label = label.label_str();
        out.produced = true;
    } else {
        rep.skipped.push_back(prefix + "reduction: P not certified integral (" +
                              final_verdict_str(desc.p_integral) + ")");
    }
    return out;
}

}  // namespace detail

/// One full pipeline pass at fixed working precision and truncation.
inline RunReport run_once(const RunConfig& cfg, std::optional<FieldElem> L, std::int64_t M,
                          std::int64_t N) {
    long p = cfg.p;
    std::int64_t k = cfg.k, h = k - 1;
    Prec work = Prec::mod(M);
    RunReport rep;
    rep.cfg = cfg;
    rep.p = p;
    rep.k = k;
    rep.h = h;
    rep.crystalline = !L.has_value();
    rep.prec_used = M;
    rep.deg_u_used = N;
    rep.bound_weak_used = cfg.weak_bound;

    HalfInt vL = HalfInt::infinity();
    if (L) {
        rep.L = *L;
        rep.L_is_representative = cfg.L_by_valuation;
        vL = L->valuation().v;
        rep.L_valuation = vL;
        rep.bound_strong = theorem_bound(p, k, vL, false);
        rep.bound_weak = theorem_bound(p, k, vL, true);
    } else {
        rep.L_valuation = HalfInt::infinity();
        rep.bound_strong = rep.bound_weak = true;  // v_p(L^{-1}) = +inf
    }
    rep.bound_satisfied = cfg.weak_bound ? rep.bound_weak : rep.bound_strong;
    bool claimed = rep.bound_satisfied && detail::semistable_chain_claimed(p, h, cfg.weak_bound);

    // ---- filtered module and admissibility ----
    FilteredModule D = make_D(p, k, L);
    AdmissibilityCert adm = weak_admissibility_check(D);
    rep.add_cert("admissibility", adm.admissible ? Verdict::True : Verdict::False, true,
                 "t_N = " + adm.t_N_total.str() + ", t_H = " + adm.t_H_total.str());

    // ---- lambda units ----
    auto [lm, lpp] = lambda_products(p, N);
    rep.add_cert("lambda_minus_offset",
                 (lm - TruncSeries::constant(FieldElem::one(p), N)).in_Hv(HalfInt::from_int(p - 2), false),
                 true);
    rep.add_cert("lambda_plusplus_offset",
                 (lpp - TruncSeries::constant(FieldElem::one(p), N))
                     .in_Hv(HalfInt::from_int(static_cast<std::int64_t>(p) * p - 2), false),
                 true);
    rep.add_cert("lambda_minus_unit", unit_certificate(lm), true);
    rep.add_cert("lambda_plusplus_unit", unit_certificate(lpp), true);
    {
        Verdict v = Verdict::True;
        for (const TruncSeries* s : {&lm, &lpp}) {
            for (const TruncSeries t : {*s, invert_unit(*s)}) {
                VR2 r = t.v_r2();
                Verdict one = r.exact ? (r.lb == HalfInt::from_int(0) ? Verdict::True : Verdict::False)
                                      : Verdict::Unknown;
                v = meet(v, one);
            }
        }
        rep.add_cert("lambda_valuations_zero", v, true);
    }

    // ---- semistable path ----
    if (L) {
        FilteredModule Df = to_f_basis(D, &rep.sign);
        rep.add_cert("monodromy_base_change",
                     (rep.sign.matches_display || rep.sign.matches_neg_b) ? Verdict::True
                                                                          : Verdict::False,
                     true,
                     rep.sign.matches_neg_b ? "matches the negated-b normalization"
                                            : "matches the displayed normalization");
        {
            Mat2<FieldElem> n2 = Df.n * Df.n;
            bool nil = n2.a.residue_is_zero() && n2.b.residue_is_zero() &&
                       n2.c.residue_is_zero() && n2.d.residue_is_zero() &&
                       Df.n.trace().residue_is_zero();
            rep.add_cert("monodromy_nilpotent", nil ? Verdict::True : Verdict::False, true);
            auto comm = [&](const FilteredModule& Dm) {
                Mat2<FieldElem> lhs = Dm.n * Dm.phi;
                Mat2<FieldElem> rhs =
                    (Dm.phi * Dm.n).map([&](const FieldElem& e) { return FieldElem::integer(p, p) * e; });
                return residually_equal(lhs.a, rhs.a) && residually_equal(lhs.b, rhs.b) &&
                       residually_equal(lhs.c, rhs.c) && residually_equal(lhs.d, rhs.d);
            };
            rep.add_cert("phi_n_relation", comm(D) && comm(Df) ? Verdict::True : Verdict::False, true,
                         "N phi = p phi N in both bases");
        }

        FiltrationData filt = filtration_recursion(Df);
        for (const auto& x : filt.x) rep.x_valuations.push_back(x.valuation().v);
        FiltrationCert fc = verify_filtration(filt);
        rep.add_cert("filtration_membership", fc.ok ? Verdict::True : Verdict::False, true,
                     fc.ok ? "" : fc.failures.front());
        CoeffBoundsCert cb = check_coeff_bounds(filt, &*L);
        rep.add_cert("coeff_lower_bound", cb.coeff_bound_all(), cb.hyps_hold,
                     "hypotheses a-d, bc integral: " + to_string(cb.hyp_ad) + ", " + to_string(cb.hyp_bc));
        rep.add_cert("coeff_estimate", cb.estimate_all(), cb.estimate_applicable,
                     cb.estimate_applicable ? "" : "not applicable: v_p(1/L) < -1");

        TruncSeries zs = cap_series(filt.z.to_series(N), work);
        PhiMat Ap = build_A_prime(filt.z, p, h, N, work);
        TruncSeries ch = TruncSeries::c_unit(p, N).pow(h);
        TruncSeries oneS = TruncSeries::constant(FieldElem::one(p), N);
        HeightCert hcp = finite_height_cert(Ap, oneS, ch);
        rep.add_cert("height_a_prime", hcp.ok(HalfInt::from_int(h)), true,
                     "det A' c^h = E^h, residual v_R2 >= " + hcp.residual_lb.str());

        PhiMat A = build_A(Ap, p, h, N);
        TruncSeries detC = scalar_mul(FieldElem::integer(p, p).pow(2 * h).with_prec_cap(work),
                                      (lm * lpp).pow(h));
        HeightCert hca = finite_height_cert(A, detC, frobenius(detC) * ch);
        rep.add_cert("height_a", hca.ok(HalfInt::from_int(h)), true,
                     "det A phi(det C) c^h = E^h det C, residual v_R2 >= " + hca.residual_lb.str());
        {
            TruncSeries nu = build_nu(zs, p, h, work);
            TruncSeries Eh = TruncSeries::e_power(h, p, N);
            bool entries = residually_equal(A.m.b, nu) && residually_equal(A.m.c, Eh);
            rep.add_cert("a_entries", entries ? Verdict::True : Verdict::Unknown, true,
                         "top-right = -1 + phi(z)(a_p - p^h z), bottom-left = E^h");
        }

        ZEstimates ze = z_estimates(zs, p, h, work);
        bool zb = rep.bound_satisfied;
        rep.add_cert("phz_bound", ze.phz_bound, zb);
        rep.add_cert("phiz_bound", ze.phiz_bound, zb);
        if (ze.sharp_applicable) {
            rep.add_cert("phiz_bound_sharp", ze.phiz_bound_sharp, zb);
            rep.add_cert("nu_offset_sharp", ze.nu_offset_sharp, zb);
        }
        rep.add_cert("nu_offset", ze.nu_offset, zb);
        rep.add_cert("nu_unit", ze.nu_unit, zb && (h >= 3 || cfg.weak_bound));

        try {
            detail::ChainOutput chain =
                detail::run_descent_chain(rep, A, NormalizeKind::Semistable, work, claimed,
                                          cfg.per_round, "");
            if (chain.produced) {
                rep.label_semistable = chain.label;
                rep.P_semistable = chain.P;
            }
            rep.G_semistable = chain.G;
        } catch (const NonUnitError& e) {
            // A certified-false unit hypothesis surfaces through the asserted
            // nu_unit certificate when the instance is claimed; an unknown one
            // escalates.  Either way the crystalline path still runs.
            if (claimed && e.verdict != Verdict::False)
                throw PrecisionLossError("normalization unit certificate");
            rep.skipped.push_back(std::string("semistable descent chain: ") + e.what());
        } catch (const ReductionRefusedError& e) {
            rep.skipped.push_back(std::string("semistable reduction: ") + e.what());
        }
    }

    // ---- crystalline comparison path (always theorem-valid) ----
    {
        PhiMat Ac = crystalline_A(p, k, N, work);
        TruncSeries ch = TruncSeries::c_unit(p, N).pow(h);
        TruncSeries oneS = TruncSeries::constant(FieldElem::one(p), N);
        HeightCert hcc = finite_height_cert(Ac, oneS, ch);
        rep.add_cert("crys_height", hcc.ok(HalfInt::from_int(h)), true,
                     "det A c^h = E^h, residual v_R2 >= " + hcc.residual_lb.str());
        detail::ChainOutput chain = detail::run_descent_chain(rep, Ac, NormalizeKind::Crystalline,
                                                              work, true, cfg.per_round, "crys_");
        if (chain.produced) {
            rep.label_crystalline = chain.label;
            rep.P_crystalline = chain.P;
        }
        rep.G_crystalline = chain.G;
    }

    rep.both_labels_present = !rep.label_semistable.empty() && !rep.label_crystalline.empty();
    if (rep.both_labels_present) {
        rep.labels_agree = rep.label_semistable == rep.label_crystalline;
        rep.add_cert("label_agreement", rep.labels_agree ? Verdict::True : Verdict::False, claimed,
                     rep.label_semistable + " vs " + rep.label_crystalline);
    }
    rep.label = !rep.label_semistable.empty() ? rep.label_semistable : rep.label_crystalline;
    return rep;
}

/// Full run with validation, materialization of L, and bounded escalation
/// (at most 2 retries, doubling the window and adding 10 digits each time).
inline RunReport run_pipeline(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    auto finish = [&](RunReport rep) {
        rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                          .count();
        return rep;
    };
    auto error_report = [&](const std::string& msg, int code) {
        RunReport rep;
        rep.cfg = cfg;
        rep.p = cfg.p;
        rep.k = cfg.k;
        rep.h = cfg.k - 1;
        rep.crystalline = cfg.crystalline;
        rep.error = msg;
        rep.exit_code = code;
        return finish(rep);
    };

    std::optional<FieldElem> L;
    try {
        if (!is_odd_prime(cfg.p))
            throw OutOfRangeError("p must be an odd prime (p = 2 is excluded); got " +
                                  std::to_string(cfg.p));
        if (cfg.k < 3) throw OutOfRangeError("k >= 3 required");
        std::int64_t h = cfg.k - 1;
        if (cfg.p == 3 && h == 2 && !cfg.weak_bound)
            throw OutOfRangeError("p = 3 needs h >= 3 under the strict bound; rerun with --weak-bound");
        if (!cfg.crystalline) {
            if (cfg.L_by_valuation)
                L = FieldElem::pi_pow(cfg.L_val.twice(), cfg.p);
            else
                L = parse_field_literal(cfg.L_input, cfg.p);
            if (L->residue_is_zero())
                throw OutOfRangeError("L = 0 is degenerate (the filtration generator becomes a "
                                      "Frobenius eigenvector); only L != 0 or L = inf are supported");
        }
        std::int64_t N0 = cfg.deg_u ? cfg.deg_u : default_deg_u(cfg.p, h);
        if (N0 < static_cast<std::int64_t>(cfg.p) * cfg.p)
            throw OutOfRangeError("deg_u must be at least p^2");
        HalfInt vL = L ? L->valuation().v : HalfInt::infinity();

        RunReport last;
        bool have_last = false;
        std::vector<std::string> eslog;
        for (int attempt = 0; attempt < 3; ++attempt) {
            std::int64_t N = N0 << attempt;
            std::int64_t M = (cfg.prec ? cfg.prec : default_prec(h, vL, N)) + 10 * attempt;
            try {
                RunReport rep = run_once(cfg, L, M, N);
                rep.escalations = attempt;
                rep.escalation_log = eslog;
                if (rep.any_asserted_unknown() && attempt < 2) {
                    for (const auto& c : rep.certs)
                        if (c.asserted && c.v == Verdict::Unknown)
                            eslog.push_back("unknown-escalated: " + c.name + " at prec=" +
                                            std::to_string(M) + " deg_u=" + std::to_string(N));
                    last = rep;
                    have_last = true;
                    continue;
                }
                rep.exit_code = rep.any_asserted_false() ? 1 : (rep.any_asserted_unknown() ? 3 : 0);
                return finish(rep);
            } catch (const PrecisionLossError& e) {
                eslog.push_back(std::string("escalated: ") + e.what() + " at prec=" +
                                std::to_string(M) + " deg_u=" + std::to_string(N));
                if (attempt == 2) return error_report(e.what(), 3);
            } catch (const NonUnitError& e) {
                if (e.verdict == Verdict::False)
                    return error_report(std::string("theorem out of range: ") + e.what(), 2);
                eslog.push_back(std::string("escalated: ") + e.what());
                if (attempt == 2) return error_report(e.what(), 3);
            }
        }
        if (have_last) {
            last.exit_code = last.any_asserted_false() ? 1 : 3;
            last.escalations = 2;
            last.escalation_log = eslog;
            return finish(last);
        }
        return error_report("precision exhausted", 3);
    } catch (const OutOfRangeError& e) {
        return error_report(e.what(), 2);
    } catch (const UnsupportedBasisError& e) {
        return error_report(e.what(), 2);
    }
}

// ---- sweeps ----

struct SweepSpec {
    std::vector<long> ps;
    std::vector<std::int64_t> ks;
    std::vector<HalfInt> lvals;
};

namespace detail {
inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

inline HalfInt parse_halfint(const std::string& t) {
    mpq_class q;
    if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational: " + t);
    q.canonicalize();
    mpq_class tw = 2 * q;
    if (tw.get_den() != 1 || !tw.get_num().fits_slong_p())
        throw std::invalid_argument("value must be a half-integer: " + t);
    return HalfInt::from_twice(tw.get_num().get_si());
}

template <typename T, typename Parse>
inline std::vector<T> parse_list(const std::string& val, Parse parse_one, bool allow_range) {
    std::vector<T> out;
    for (const std::string& item : split(val, ',')) {
        auto dots = item.find("..");
        if (allow_range && dots != std::string::npos) {
            std::int64_t step = 1;
            std::string hi_s = item.substr(dots + 2);
            auto colon = hi_s.find(':');
            if (colon != std::string::npos) {
                step = std::stoll(hi_s.substr(colon + 1));
                hi_s = hi_s.substr(0, colon);
            }
            std::int64_t lo = std::stoll(item.substr(0, dots)), hi = std::stoll(hi_s);
            for (std::int64_t v = lo; v <= hi; v += step) out.push_back(parse_one(std::to_string(v)));
        } else {
            out.push_back(parse_one(item));
        }
    }
    return out;
}
}  // namespace detail

/// Grammar: `p=3,5;k=4..8:2;lval=-4..-1`: lists, integer ranges with an
/// optional step, and half-integers like -7/2 for lval.
inline SweepSpec parse_sweep_spec(const std::string& spec) {
    SweepSpec out;
    bool seen_p = false, seen_k = false, seen_l = false;
    for (const std::string& part : detail::split(spec, ';')) {
        if (part.empty()) continue;
        auto eq = part.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("sweep: expected key=...: " + part);
        std::string key = part.substr(0, eq), val = part.substr(eq + 1);
        if (key == "p") {
            out.ps = detail::parse_list<long>(val, [](const std::string& t) { return std::stol(t); },
                                              true);
            seen_p = true;
        } else if (key == "k") {
            out.ks = detail::parse_list<std::int64_t>(
                val, [](const std::string& t) { return std::stoll(t); }, true);
            seen_k = true;
        } else if (key == "lval") {
            out.lvals = detail::parse_list<HalfInt>(
                val, [](const std::string& t) { return detail::parse_halfint(t); }, true);
            seen_l = true;
        } else {
            throw std::invalid_argument("sweep: unknown key " + key);
        }
    }
    if (!seen_p || !seen_k || !seen_l)
        throw std::invalid_argument("sweep: p, k and lval are all required");
    return out;  // empty ranges give an empty grid
}

/// Independent cells over the grid; per-cell failures are recorded and the
/// sweep continues.  Cells may run concurrently (they share no state).
inline std::vector<RunReport> run_sweep(const SweepSpec& spec, const RunConfig& base, int jobs) {
    std::vector<RunConfig> cells;
    for (long p : spec.ps)
        for (std::int64_t k : spec.ks)
            for (HalfInt lv : spec.lvals) {
                RunConfig c = base;
                c.p = p;
                c.k = k;
                c.crystalline = false;
                c.L_by_valuation = true;
                c.L_val = lv;
                c.L_input.clear();
                cells.push_back(c);
            }
    std::vector<RunReport> reports(cells.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) reports[i] = run_pipeline(cells[i]);
        return reports;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            reports[i] = run_pipeline(cells[i]);
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return reports;
}

inline json sweep_to_json(const std::vector<RunReport>& reports) {
    json cells = json::array();
    int ok = 0, cert_fail = 0, out_of_range = 0, exhausted = 0;
    for (const auto& r : reports) {
        cells.push_back(report_to_json(r));
        switch (r.exit_code) {
            case 0: ++ok; break;
            case 1: ++cert_fail; break;
            case 2: ++out_of_range; break;
            default: ++exhausted; break;
        }
    }
    return json{{"schema", 1},
                {"cells", cells},
                {"summary", json{{"ok", ok},
                                 {"certificate_failures", cert_fail},
                                 {"out_of_range", out_of_range},
                                 {"precision_exhausted", exhausted}}}};
}

inline std::string sweep_to_text(const std::vector<RunReport>& reports) {
    std::string s = "p\tk\tv_p(L)\tbound\texit\tlabel\n";
    for (const auto& r : reports) {
        s += std::to_string(r.p) + "\t" + std::to_string(r.k) + "\t" +
             (r.crystalline ? "inf" : r.L_valuation.str()) + "\t" +
             (r.bound_satisfied ? "yes" : "no") + "\t" + std::to_string(r.exit_code) + "\t" +
             (r.label.empty() ? (r.error.empty() ? "-" : r.error) : r.label) + "\n";
    }
    return s;
}

}  // namespace ssred
