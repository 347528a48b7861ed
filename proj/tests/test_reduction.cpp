#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace ssred;

namespace {

DescentResult integral_descent_stub(long p, std::int64_t h) {
    DescentResult d;
    for (std::int64_t i = 0; i <= h; ++i)
        d.P.push_back(FieldElem::integer(p, p));  // valuation 1 > 0
    d.p_integral = Verdict::True;
    return d;
}

}  // namespace

TEST_CASE("reduce_mod_p gives (0, -1; u^h, 0)") {
    for (auto [p, h] : {std::pair<long, std::int64_t>{3, 5}, {5, 5}, {7, 8}}) {
        ResidueMat m = reduce_mod_p(integral_descent_stub(p, h), p, h);
        REQUIRE(m.a.is_zero());
        REQUIRE(m.d.is_zero());
        REQUIRE(m.b.is_constant());
        REQUIRE(m.b.constant() == p - 1);
        REQUIRE(m.c.order() == h);
        for (std::int64_t i = 0; i < h; ++i) REQUIRE(m.c.coeff(i) == 0);
        REQUIRE(m.c.coeff(h) == 1);
    }
}

TEST_CASE("reduce_mod_p refuses a non-integral P, naming the coefficient") {
    long p = 3;
    DescentResult d = integral_descent_stub(p, 3);
    d.P[2] = FieldElem::one(p);  // valuation 0
    try {
        reduce_mod_p(d, p, 3);
        FAIL("expected refusal");
    } catch (const ReductionRefusedError& e) {
        REQUIRE(std::string(e.what()).find("coefficient 2") != std::string::npos);
    }
}

TEST_CASE("classify the canonical induced form") {
    for (auto [p, h] : {std::pair<long, std::int64_t>{3, 5}, {5, 5}, {7, 8}, {3, 3}}) {
        ResidueMat m = reduce_mod_p(integral_descent_stub(p, h), p, h);
        ReductionLabel lab = classify(m, p);
        REQUIRE(lab.kind == ReductionLabel::Kind::Induced);
        REQUIRE(lab.omega2_exponent == h);
        REQUIRE(lab.cycle_unit == p - 1);  // the quadratic unramified twist
        REQUIRE(lab.phi2_cycle_exponent == h * (p + 1));
        REQUIRE(lab.inertia_weight_1 == h % (p * p - 1));
        REQUIRE(lab.inertia_weight_2 == (h * p) % (p * p - 1));
        REQUIRE(lab.det_char_exponent == h % (p - 1));
        REQUIRE(lab.irreducible == (h % (p + 1) != 0));
    }
}

TEST_CASE("p=3, h=4 is reducible after induction: (p+1) | h") {
    ResidueMat m = reduce_mod_p(integral_descent_stub(3, 4), 3, 4);
    ReductionLabel lab = classify(m, 3);
    REQUIRE(lab.kind == ReductionLabel::Kind::Induced);
    REQUIRE_FALSE(lab.irreducible);
}

TEST_CASE("classification is invariant under diagonal rescaling") {
    long p = 5;
    std::int64_t h = 5;
    // conjugate (0,-1;u^h,0) by diag(alpha, beta): (0, -alpha/beta; u^h beta/alpha, 0)
    for (long alpha : {1L, 2L, 3L})
        for (long beta : {1L, 2L, 4L}) {
            long ainv = 1;
            while ((alpha * ainv) % p != 1) ++ainv;
            long binv = 1;
            while ((beta * binv) % p != 1) ++binv;
            ResidueMat m;
            m.p = p;
            m.a.p = m.b.p = m.c.p = m.d.p = p;
            m.b.c = {static_cast<long>(((p - 1) * alpha % p) * binv % p)};
            m.c.c.assign(static_cast<std::size_t>(h + 1), 0);
            m.c.c[static_cast<std::size_t>(h)] = static_cast<long>(beta * ainv % p);
            ReductionLabel lab = classify(m, p);
            REQUIRE(lab.kind == ReductionLabel::Kind::Induced);
            REQUIRE(lab.omega2_exponent == h);
            REQUIRE(lab.cycle_unit == p - 1);
        }
}

TEST_CASE("unrecognized and reducible shapes are labeled, never guessed") {
    long p = 3;
    ResidueMat m;
    m.p = p;
    m.a.p = m.b.p = m.c.p = m.d.p = p;
    m.a.c = {1};
    m.d.c = {2};
    ReductionLabel lab = classify(m, p);
    REQUIRE(lab.kind == ReductionLabel::Kind::Reducible);

    ResidueMat w;
    w.p = p;
    w.a.p = w.b.p = w.c.p = w.d.p = p;
    w.a.c = {1};
    w.b.c = {1};
    w.c.c = {1};
    w.d.c = {1};
    ReductionLabel lab2 = classify(w, p);
    REQUIRE(lab2.kind == ReductionLabel::Kind::Unrecognized);
    REQUIRE(!lab2.form.empty());
}

TEST_CASE("theorem bound: pinned vectors") {
    REQUIRE(theorem_bound(3, 6, HalfInt::from_int(-3), false));
    REQUIRE_FALSE(theorem_bound(3, 6, HalfInt::from_int(-2), false));
    REQUIRE(theorem_bound(3, 4, HalfInt::from_int(-1), false));
    REQUIRE_THROWS_AS(theorem_bound(2, 4, HalfInt::from_int(-1), false), OutOfRangeError);
    // weak form admits p=3, h=2: threshold is (h-1)/2 + v_3(1!) = 1/2
    REQUIRE(theorem_bound(3, 3, HalfInt::from_int(-1), true));
    REQUIRE_FALSE(theorem_bound(3, 3, HalfInt::from_twice(-1), true));
}

TEST_CASE("the two bound formulations agree on the grid") {
    for (long p : {3L, 5L, 7L, 11L})
        for (std::int64_t k = 3; k <= 20; ++k) {
            REQUIRE(bound_threshold_direct(p, k) == -bound_threshold_inverse(p, k));
            for (int tw = -12; tw <= 2; ++tw) {
                HalfInt v = HalfInt::from_twice(tw);
                bool b1 = theorem_bound(p, k, v, false);
                bool b2 = v < bound_threshold_direct(p, k);
                REQUIRE(b1 == b2);
            }
        }
}

TEST_CASE("half-integer valuations of L work in the bound") {
    // p=5, k=8: threshold on v(L^{-1}) is 3; v(L) = -7/2 passes, -3 does not
    REQUIRE(theorem_bound(5, 8, HalfInt::from_twice(-7), false));
    REQUIRE_FALSE(theorem_bound(5, 8, HalfInt::from_int(-3), false));
}

TEST_CASE("direct thresholds at p = 3 in low weights") {
    REQUIRE(bound_threshold_direct(3, 4) == HalfInt::from_int(0));
    REQUIRE(bound_threshold_direct(3, 6) == HalfInt::from_int(-2));
    REQUIRE(bound_threshold_direct(3, 8) == HalfInt::from_int(-4));
    // weight 8 at p = 3: -3 is not negative enough
    REQUIRE_FALSE(theorem_bound(3, 8, HalfInt::from_int(-3), false));
    REQUIRE(theorem_bound(3, 8, HalfInt::from_twice(-9), false));
}
