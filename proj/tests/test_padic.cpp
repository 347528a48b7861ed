#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace ssred;
using testsup::Rng;

TEST_CASE("w * w = p") {
    for (long p : {3L, 5L, 7L}) {
        FieldElem w = FieldElem::pi_pow(1, p);
        REQUIRE(residually_equal(w * w, FieldElem::integer(p, p)));
        REQUIRE((w * w).y() == 0);
    }
}

TEST_CASE("valuation of a_p is (h-1)/2") {
    for (long p : {3L, 5L, 7L})
        for (std::int64_t h = 2; h <= 9; ++h) {
            ValInfo v = frobenius_trace_ap(p, h).valuation();
            REQUIRE(v.certain);
            REQUIRE(v.v == HalfInt::from_twice(h - 1));
        }
}

TEST_CASE("valuation of 1/(w^3 L (1-p)) at p=5, v(L)=-3") {
    long p = 5;
    FieldElem L = FieldElem::pi_pow(-6, p);  // v_p(L) = -3
    FieldElem denom = FieldElem::pi_pow(3, p) * L * FieldElem::integer(1 - p, p);
    ValInfo v = denom.inverse().valuation();
    REQUIRE(v.certain);
    REQUIRE(v.v == HalfInt::from_twice(3));  // 3/2
}

TEST_CASE("vp_factorial: Legendre matches brute force") {
    REQUIRE(vp_factorial(0, 5) == 0);
    REQUIRE(vp_factorial(4, 3) == 1);
    REQUIRE(vp_factorial(5, 3) == 1);
    for (long p : {2L, 3L, 5L, 7L})
        for (std::int64_t n = 0; n <= 40; ++n)
            REQUIRE(vp_factorial(n, p) == testsup::vp_factorial_bruteforce(n, p));
}

TEST_CASE("valuation is multiplicative and ultrametric") {
    Rng rng(12345);
    for (long p : {3L, 5L, 7L}) {
        for (int it = 0; it < 200; ++it) {
            FieldElem a = rng.elem(p), b = rng.elem(p);
            ValInfo va = a.valuation(), vb = b.valuation(), vab = (a * b).valuation();
            if (va.certain && vb.certain && !va.v.is_infinite() && !vb.v.is_infinite()) {
                REQUIRE(vab.certain);
                REQUIRE(vab.v == va.v + vb.v);
            }
            ValInfo vsum = (a + b).valuation();
            REQUIRE(vsum.v >= min(va.v, vb.v));
            if (va.certain && vb.certain && !(va.v == vb.v))
                REQUIRE(vsum.v == min(va.v, vb.v));
        }
    }
}

TEST_CASE("field axioms on residues") {
    Rng rng(99);
    long p = 5;
    for (int it = 0; it < 100; ++it) {
        FieldElem a = rng.elem(p), b = rng.elem(p), c = rng.elem(p);
        REQUIRE(residually_equal(a * (b + c), a * b + a * c));
        REQUIRE(residually_equal(a * b, b * a));
        if (!b.residue_is_zero()) REQUIRE(residually_equal((a / b) * b, a));
    }
}

TEST_CASE("literal parsing round trip") {
    long p = 3;
    for (const char* lit : {"5", "-7/25", "1/2*w^-5", "2*w^3", "p^-3", "p^2", "p^-7/2", "0"}) {
        FieldElem e = parse_field_literal(lit, p);
        FieldElem back = parse_field_literal(format_field_literal(e), p);
        REQUIRE(residually_equal(e, back));
    }
    REQUIRE(residually_equal(parse_field_literal("p^-7/2", p), FieldElem::pi_pow(-7, p)));
    REQUIRE_THROWS_AS(parse_field_literal("p^1/3", p), std::invalid_argument);
}

TEST_CASE("division by an indistinguishable-from-zero element is poisoned") {
    long p = 5;
    FieldElem tiny = FieldElem::from_rational(mpq_class(625), p, Prec::mod(4));  // = 0 mod p^4
    REQUIRE(tiny.residue_is_zero());
    REQUIRE_THROWS_AS(tiny.inverse(), PrecisionLossError);
    REQUIRE(tiny.val_gt(HalfInt::from_int(2)) == Verdict::True);
    REQUIRE(tiny.val_gt(HalfInt::from_int(5)) == Verdict::Unknown);
}

TEST_CASE("precision propagation never exceeds inputs") {
    long p = 5;
    FieldElem a = FieldElem::from_rational(mpq_class(7, 3), p, Prec::mod(8));
    FieldElem b = FieldElem::from_rational(mpq_class(2), p, Prec::mod(6));
    FieldElem ab = a * b;
    REQUIRE_FALSE(ab.is_exact());
    REQUIRE(ab.prec().m() <= 6);
    FieldElem q = FieldElem::one(p, Prec::mod(8)) / FieldElem::from_rational(mpq_class(25), p, Prec::mod(8));
    REQUIRE(q.prec().m() == 8 - 2 * 2);  // relative precision preserved through the inverse
    REQUIRE(q.valuation().v == HalfInt::from_int(-2));
}

TEST_CASE("exactness is preserved only when both operands are exact") {
    long p = 3;
    FieldElem e = FieldElem::from_rational(mpq_class(1, 2), p);
    REQUIRE((e * e).is_exact());
    FieldElem f = e.with_prec_cap(Prec::mod(10));
    REQUIRE_FALSE((e * f).is_exact());
}
