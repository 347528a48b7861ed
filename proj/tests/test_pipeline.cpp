#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace ssred;
using testsup::find_cert;

namespace {
RunConfig config(long p, std::int64_t k, int vtwice, bool weak = false) {
    RunConfig cfg;
    cfg.p = p;
    cfg.k = k;
    cfg.L_by_valuation = true;
    cfg.L_val = HalfInt::from_twice(vtwice);
    cfg.weak_bound = weak;
    return cfg;
}
}  // namespace

TEST_CASE("p=5, k=6, v(L)=-3: full run, induced label") {
    RunReport rep = run_pipeline(config(5, 6, -6));
    REQUIRE(rep.exit_code == 0);
    REQUIRE(rep.bound_satisfied);
    REQUIRE(rep.label == "Ind(w2^5 * chi)");
    REQUIRE(rep.both_labels_present);
    REQUIRE(rep.labels_agree);
    REQUIRE(rep.escalations == 0);
}

TEST_CASE("p=3, k=4, L with v=-1 via literal") {
    RunConfig cfg;
    cfg.p = 3;
    cfg.k = 4;
    cfg.L_input = "1/3";
    RunReport rep = run_pipeline(cfg);
    REQUIRE(rep.exit_code == 0);
    REQUIRE(rep.label == "Ind(w2^3 * chi)");
}

TEST_CASE("refusals: p = 2 and the p = 3, h = 2 strict-bound case") {
    RunReport rep = run_pipeline(config(2, 4, -2));
    REQUIRE(rep.exit_code == 2);
    REQUIRE(!rep.error.empty());
    RunReport rep2 = run_pipeline(config(3, 3, -2));
    REQUIRE(rep2.exit_code == 2);
    RunReport rep3 = run_pipeline(config(3, 3, -2, true));  // weak bound admits it
    REQUIRE(rep3.exit_code == 0);
    REQUIRE(rep3.label == "Ind(w2^2 * chi)");
}

TEST_CASE("L = 0 is rejected with a clear message") {
    RunConfig cfg;
    cfg.p = 5;
    cfg.k = 6;
    cfg.L_input = "0";
    RunReport rep = run_pipeline(cfg);
    REQUIRE(rep.exit_code == 2);
    REQUIRE(rep.error.find("L = 0") != std::string::npos);
}

TEST_CASE("crystalline run: only the comparison path") {
    RunConfig cfg;
    cfg.p = 5;
    cfg.k = 6;
    cfg.crystalline = true;
    RunReport rep = run_pipeline(cfg);
    REQUIRE(rep.exit_code == 0);
    REQUIRE(rep.label == "Ind(w2^5 * chi)");
    REQUIRE_FALSE(rep.both_labels_present);
    REQUIRE(find_cert(rep, "crys_p_integral"));
    REQUIRE(find_cert(rep, "crys_p_integral")->v == Verdict::True);
}

TEST_CASE("negative control (3, 6, -2): bound false, descent outcomes reported not asserted") {
    RunReport rep = run_pipeline(config(3, 6, -4));
    REQUIRE_FALSE(rep.bound_satisfied);
    REQUIRE(rep.bound_strong == false);
    const CertRecord* pint = find_cert(rep, "p_integral");
    REQUIRE(pint);
    REQUIRE_FALSE(pint->asserted);
    // crystalline path still certifies
    const CertRecord* cint = find_cert(rep, "crys_p_integral");
    REQUIRE(cint);
    REQUIRE(cint->asserted);
    REQUIRE(cint->v == Verdict::True);
    REQUIRE(rep.exit_code == 0);
}

TEST_CASE("monodromy sign record is stable") {
    RunReport rep = run_pipeline(config(5, 6, -6));
    REQUIRE(rep.sign.matches_neg_b);
    REQUIRE_FALSE(rep.sign.matches_display);
}

TEST_CASE("determinism: identical configs give byte-identical reports modulo timings") {
    RunConfig cfg = config(3, 6, -6);
    RunReport r1 = run_pipeline(cfg), r2 = run_pipeline(cfg);
    json j1 = report_to_json(r1), j2 = report_to_json(r2);
    j1.erase("timings");
    j2.erase("timings");
    REQUIRE(j1.dump() == j2.dump());
}

TEST_CASE("escalation on a starved precision override is bounded and recorded") {
    RunConfig cfg = config(5, 6, -6);
    cfg.prec = 1;  // far below the default; forces unknowns
    RunReport rep = run_pipeline(cfg);
    REQUIRE(rep.escalations >= 1);
    REQUIRE(rep.escalations <= 2);
    if (rep.exit_code == 0) {
        REQUIRE_FALSE(rep.any_asserted_unknown());
    } else {
        REQUIRE(rep.exit_code == 3);
    }
    REQUIRE(!rep.escalation_log.empty());
}

TEST_CASE("valuations are serialized as exact rationals") {
    RunReport rep = run_pipeline(config(5, 8, -7));  // v(L) = -7/2
    json j = report_to_json(rep);
    REQUIRE(j["schema"] == 1);
    REQUIRE(j["L_valuation"]["num"] == -7);
    REQUIRE(j["L_valuation"]["den"] == 2);
    REQUIRE(j["L_is_representative"] == true);
    for (const auto& x : j["x_valuations"]) {
        REQUIRE(x.contains("num"));
        REQUIRE(x.contains("den"));
    }
}

TEST_CASE("sweep: grid parse, empty grid, per-cell independence") {
    SweepSpec empty = parse_sweep_spec("p=3;k=5..4;lval=-1");
    REQUIRE(run_sweep(empty, RunConfig{}, 1).empty());

    SweepSpec spec = parse_sweep_spec("p=3;k=4..6:2;lval=-3..-1");
    auto reports = run_sweep(spec, RunConfig{}, 2);
    REQUIRE(reports.size() == 6);
    for (const auto& r : reports) {
        INFO("p=" << r.p << " k=" << r.k << " vL=" << r.L_valuation.str());
        if (r.bound_satisfied) {
            REQUIRE(r.exit_code == 0);
            REQUIRE(r.label == "Ind(w2^" + std::to_string(r.h) + " * chi)");
        }
    }
    // the boundary cell (3, 6, -2) is present with bound false and no assertion failure
    bool saw_boundary = false;
    for (const auto& r : reports)
        if (r.k == 6 && r.L_valuation == HalfInt::from_int(-2)) {
            saw_boundary = true;
            REQUIRE_FALSE(r.bound_satisfied);
            REQUIRE(r.exit_code == 0);
        }
    REQUIRE(saw_boundary);
    json js = sweep_to_json(reports);
    REQUIRE(js["cells"].size() == 6);
}

TEST_CASE("sweep with half-integer valuations in the list") {
    SweepSpec spec = parse_sweep_spec("p=5;k=8;lval=-7/2");
    auto reports = run_sweep(spec, RunConfig{}, 1);
    REQUIRE(reports.size() == 1);
    REQUIRE(reports[0].bound_satisfied);
    REQUIRE(reports[0].exit_code == 0);
}
