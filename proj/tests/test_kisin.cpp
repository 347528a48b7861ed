#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace ssred;
using testsup::Rng;

namespace {

struct Built {
    long p;
    std::int64_t h, n;
    EPoly z;
    TruncSeries zs;
    PhiMat Ap, A;
};

Built build_instance(long p, std::int64_t k, int Ltw) {
    Built b;
    b.p = p;
    b.h = k - 1;
    b.n = default_deg_u(p, b.h);
    FieldElem L = FieldElem::pi_pow(Ltw, p);
    FiltrationData fd = filtration_recursion(to_f_basis(make_D(p, k, L)));
    b.z = fd.z;
    b.zs = b.z.to_series(b.n);
    b.Ap = build_A_prime(b.z, p, b.h, b.n, Prec::exact());
    b.A = build_A(b.Ap, p, b.h, b.n);
    return b;
}

Mat2<TruncSeries> rand_invertible(Rng& rng, long p, std::int64_t n) {
    TruncSeries one = TruncSeries::constant(FieldElem::one(p), n);
    TruncSeries zero = TruncSeries::zero(p, n);
    auto small = [&] {
        TruncSeries s = zero;
        for (int t = 0; t < 3; ++t)
            s = s + TruncSeries::monomial(
                        rng.elem(p, 1, 3), rng.uniform(1, std::min<std::int64_t>(n, 6)), n);
        return s;
    };
    return {one + small(), small(), small(), one + small()};
}

}  // namespace

TEST_CASE("star_conj: identity and cocycle") {
    Rng rng(4242);
    long p = 3;
    std::int64_t n = 15;
    TruncSeries one = TruncSeries::constant(FieldElem::one(p), n);
    TruncSeries zero = TruncSeries::zero(p, n);
    PhiMat A;
    A.h = 2;
    A.m = {testsup::random_series(rng, p, n, 4), one + testsup::random_series(rng, p, n, 2),
           TruncSeries::e_power(2, p, n), zero};
    Mat2<TruncSeries> I{one, zero, zero, one};
    PhiMat IA = star_conj(I, A);
    REQUIRE(residually_equal(IA.m.a, A.m.a));
    REQUIRE(residually_equal(IA.m.d, A.m.d));
    for (int it = 0; it < 5; ++it) {
        Mat2<TruncSeries> C1 = rand_invertible(rng, p, n), C2 = rand_invertible(rng, p, n);
        PhiMat left = star_conj(C1 * C2, A);
        PhiMat right = star_conj(C1, star_conj(C2, A));
        REQUIRE(residually_equal(left.m.a, right.m.a));
        REQUIRE(residually_equal(left.m.b, right.m.b));
        REQUIRE(residually_equal(left.m.c, right.m.c));
        REQUIRE(residually_equal(left.m.d, right.m.d));
    }
}

TEST_CASE("A' matches its closed form entrywise") {
    for (auto [p, k, tw] : {std::tuple<long, std::int64_t, int>{3, 6, -6},
                            {5, 6, -6},
                            {3, 4, -2}}) {
        Built b = build_instance(p, k, tw);
        FieldElem ap = frobenius_trace_ap(p, b.h);
        FieldElem ph = FieldElem::integer(p, p).pow(b.h);
        TruncSeries cinvh = invert_unit(TruncSeries::c_unit(p, b.n)).pow(b.h);
        TruncSeries phiz = frobenius(b.zs);
        TruncSeries head = TruncSeries::constant(ap, b.n) - scalar_mul(ph, b.zs);
        TruncSeries one = TruncSeries::constant(FieldElem::one(p), b.n);
        TruncSeries Eh = TruncSeries::e_power(b.h, p, b.n);

        REQUIRE(residually_equal(b.Ap.m.a, head));
        REQUIRE(residually_equal(b.Ap.m.b,
                                 scalar_mul(ph.inverse(), cinvh * (phiz * head - one))));
        REQUIRE(residually_equal(b.Ap.m.c, scalar_mul(ph, Eh)));
        REQUIRE(residually_equal(b.Ap.m.d, scalar_mul(FieldElem::one(p), cinvh * Eh * phiz)));
    }
}

TEST_CASE("A matches the rescaled closed form entrywise") {
    for (auto [p, k, tw] : {std::tuple<long, std::int64_t, int>{3, 6, -6}, {5, 6, -6}}) {
        Built b = build_instance(p, k, tw);
        auto [lm, lpp] = lambda_products(p, b.n);
        FieldElem ap = frobenius_trace_ap(p, b.h);
        FieldElem ph = FieldElem::integer(p, p).pow(b.h);
        TruncSeries ratio = (lm * invert_unit(lpp)).pow(b.h);
        TruncSeries head = TruncSeries::constant(ap, b.n) - scalar_mul(ph, b.zs);
        TruncSeries phiz = frobenius(b.zs);
        TruncSeries one = TruncSeries::constant(FieldElem::one(p), b.n);
        TruncSeries Eh = TruncSeries::e_power(b.h, p, b.n);

        REQUIRE(residually_equal(b.A.m.a, head * ratio));
        REQUIRE(residually_equal(b.A.m.b, phiz * head - one));
        REQUIRE(residually_equal(b.A.m.c, Eh));
        REQUIRE(residually_equal(b.A.m.d, Eh * phiz * invert_unit(ratio)));
    }
}

TEST_CASE("z = 0 collapses A' and A to the crystalline shapes") {
    long p = 5;
    std::int64_t h = 5, n = default_deg_u(p, h);
    PhiMat Ap = build_A_prime(EPoly::zero(p), p, h, n, Prec::exact());
    FieldElem ap = frobenius_trace_ap(p, h);
    FieldElem ph = FieldElem::integer(p, p).pow(h);
    TruncSeries cinvh = invert_unit(TruncSeries::c_unit(p, n)).pow(h);
    REQUIRE(residually_equal(Ap.m.a, TruncSeries::constant(ap, n)));
    REQUIRE(residually_equal(Ap.m.b, scalar_mul(-ph.inverse(), cinvh)));
    REQUIRE(residually_equal(Ap.m.c, scalar_mul(ph, TruncSeries::e_power(h, p, n))));
    for (std::int64_t i = 0; i <= n; ++i) REQUIRE(Ap.m.d.coeff(i).residue_is_zero());

    PhiMat A = build_A(Ap, p, h, n);
    auto [lm, lpp] = lambda_products(p, n);
    REQUIRE(residually_equal(A.m.a, scalar_mul(ap, (lm * invert_unit(lpp)).pow(h))));
    REQUIRE(residually_equal(A.m.b, TruncSeries::constant(FieldElem::integer(-1, p), n)));
    REQUIRE(residually_equal(A.m.c, TruncSeries::e_power(h, p, n)));
}

TEST_CASE("height certificates: det A' = E^h c^{-h}, det A = unit E^h") {
    for (auto [p, k, tw] : {std::tuple<long, std::int64_t, int>{3, 6, -6}, {5, 6, -4}}) {
        Built b = build_instance(p, k, tw);
        TruncSeries ch = TruncSeries::c_unit(p, b.n).pow(b.h);
        TruncSeries one = TruncSeries::constant(FieldElem::one(p), b.n);
        HeightCert hp = finite_height_cert(b.Ap, one, ch);
        REQUIRE(hp.residues_vanish);
        REQUIRE(is_true(hp.ok(HalfInt::from_int(b.h))));

        auto [lm, lpp] = lambda_products(p, b.n);
        TruncSeries detC =
            scalar_mul(FieldElem::integer(p, p).pow(2 * b.h), (lm * lpp).pow(b.h));
        HeightCert ha = finite_height_cert(b.A, detC, frobenius(detC) * ch);
        REQUIRE(ha.residues_vanish);
        REQUIRE(is_true(ha.ok(HalfInt::from_int(b.h))));
    }
}

TEST_CASE("crystalline matrix: entries and height") {
    for (long p : {3L, 5L, 7L}) {
        std::int64_t k = 6, h = k - 1, n = default_deg_u(p, h);
        PhiMat A = crystalline_A(p, k, n, Prec::exact());
        REQUIRE(residually_equal(A.m.a, TruncSeries::constant(frobenius_trace_ap(p, h), n)));
        TruncSeries cinvh = invert_unit(TruncSeries::c_unit(p, n)).pow(h);
        REQUIRE(residually_equal(A.m.b, scalar_mul(FieldElem::integer(-1, p), cinvh)));
        REQUIRE(residually_equal(A.m.c, TruncSeries::e_power(h, p, n)));
        TruncSeries one = TruncSeries::constant(FieldElem::one(p), n);
        HeightCert hc = finite_height_cert(A, one, TruncSeries::c_unit(p, n).pow(h));
        REQUIRE(is_true(hc.ok(HalfInt::from_int(h))));
    }
}

TEST_CASE("star_conj refuses a non-invertible base change") {
    long p = 3;
    std::int64_t n = 12;
    TruncSeries one = TruncSeries::constant(FieldElem::one(p), n);
    TruncSeries zero = TruncSeries::zero(p, n);
    PhiMat A;
    A.h = 1;
    A.m = {one, zero, zero, one};
    Mat2<TruncSeries> C{TruncSeries::e_power(1, p, n), zero, zero, one};  // det = E, not a unit
    REQUIRE_THROWS_AS(star_conj(C, A), NonUnitError);
}
