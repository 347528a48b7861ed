#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssred/descent.hpp"
#include "ssred/errors.hpp"
#include "ssred/padic.hpp"

namespace ssred {

class ReductionRefusedError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Polynomial over the residue field F_p (the coefficient field is ramified,
/// so the residue field is prime).
struct ResiduePoly {
    std::vector<long> c;  // c[i] in [0, p)
    long p = 0;

    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    bool is_constant() const { return c.size() <= 1; }
    long constant() const { return c.empty() ? 0 : c[0]; }
    std::int64_t order() const {  // lowest nonzero degree; -1 for 0
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] != 0) return static_cast<std::int64_t>(i);
        return -1;
    }
    long coeff(std::int64_t i) const {
        return (i >= 0 && i < static_cast<std::int64_t>(c.size())) ? c[static_cast<std::size_t>(i)] : 0;
    }
    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0) continue;
            if (!s.empty()) s += " + ";
            s += std::to_string(c[i]);
            if (i > 0) s += "*u^" + std::to_string(i);
        }
        return s;
    }
};

/// Residue mod m_F of an integral element; needs at least one certified digit.
inline long residue_mod_p(const FieldElem& e, const char* where) {
    if (e.val_ge(HalfInt::from_int(0)) != Verdict::True)
        throw ReductionRefusedError(std::string(where) + ": element not certified integral");
    if (!e.is_exact() && e.prec().m() < 1) throw PrecisionLossError(where);
    // y w has valuation in 1/2 + Z >= 1/2 > 0, so only x survives mod m_F
    mpq_class x = e.x();
    mpz_class num = x.get_num(), den = x.get_den(), pz(e.p()), deninv;
    num %= pz;
    if (num < 0) num += pz;
    if (mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()) == 0)
        throw std::logic_error("residue_mod_p: non-unit denominator");
    mpz_class r = (num * deninv) % pz;
    if (r < 0) r += pz;
    return static_cast<long>(r.get_si());
}

struct ResidueMat {
    ResiduePoly a, b, c, d;
    long p = 0;
    std::string str() const {
        return "(" + a.str() + ", " + b.str() + "; " + c.str() + ", " + d.str() + ")";
    }
};

/// Reduce the descended matrix (P, -1; E^h, 0) coefficientwise mod m_F.
/// Refuses unless the integrality of P is certified, naming the offender.
inline ResidueMat reduce_mod_p(const DescentResult& dr, long p, std::int64_t h) {
    for (std::size_t i = 0; i < dr.P.size(); ++i)
        if (dr.P[i].val_gt(HalfInt::from_int(0)) != Verdict::True)
            throw ReductionRefusedError("reduce_mod_p: coefficient " + std::to_string(i) +
                                        " of P is not certified to lie in m_F");
    ResidueMat out;
    out.p = p;
    for (const FieldElem& e : dr.P) out.a.c.push_back(residue_mod_p(e, "reduce_mod_p"));
    out.a.p = p;
    out.a.normalize();
    out.b.p = p;
    out.b.c = {(p - 1) % p};  // -1
    TruncSeries Eh = TruncSeries::e_power(h, p, h);
    out.c.p = p;
    for (std::int64_t i = 0; i <= h; ++i)
        out.c.c.push_back(residue_mod_p(Eh.coeff(i), "reduce_mod_p"));
    out.c.normalize();
    out.d.p = p;
    return out;
}

struct ReductionLabel {
    enum class Kind { Induced, Reducible, Unrecognized } kind = Kind::Unrecognized;
    std::int64_t omega2_exponent = 0;      // h in Ind(omega_2^h chi)
    long cycle_unit = 0;                   // leading unit of the phi^2 cycle (-1 here)
    std::int64_t phi2_cycle_exponent = 0;  // h(p+1)
    std::int64_t inertia_weight_1 = 0;     // h mod p^2-1
    std::int64_t inertia_weight_2 = 0;     // p h mod p^2-1
    std::int64_t det_char_exponent = 0;    // h mod p-1
    bool irreducible = false;
    std::string form;  // matrix echo

    long p = 0;
    std::string label_str() const {
        switch (kind) {
            case Kind::Induced: {
                std::string twist = (cycle_unit == p - 1) ? " * chi)"
                                                          : " * unr(" + std::to_string(cycle_unit) + "))";
                return "Ind(w2^" + std::to_string(omega2_exponent) + twist;
            }
            case Kind::Reducible: return "reducible " + form;
            default: return "unrecognized " + form;
        }
    }
};

/// Structural recognizer for the residue Frobenius.  The companion shape
/// (0, -s; w, 0) with s a nonzero constant and w of order h gives the module
/// induced from the unramified quadratic extension: the phi^2-stable lines
/// carry u-exponents h and ph (the inertia weights mod p^2-1), the phi^2
/// cycle has exponent h(p+1) with leading unit -s w_h, the determinant
/// character has exponent h mod p-1, and the result is irreducible exactly
/// when p+1 does not divide h.  Triangular shapes are labeled reducible;
/// anything else is echoed back, never guessed.
inline ReductionLabel classify(const ResidueMat& m, long p) {
    ReductionLabel out;
    out.p = p;
    out.form = m.str();
    std::int64_t p2m1 = static_cast<std::int64_t>(p) * p - 1;
    bool companion = m.a.is_zero() && m.d.is_zero() && m.b.is_constant() && !m.b.is_zero() &&
                     !m.c.is_zero() && m.c.order() >= 1;
    if (companion) {
        std::int64_t h = m.c.order();
        long beta = m.b.constant();  // phi(e2) = beta e1, phi(e1) = w e2
        long wh = m.c.coeff(h);
        out.kind = ReductionLabel::Kind::Induced;
        out.omega2_exponent = h;
        // phi^2(e2) = beta w e2: leading unit of the two-step cycle
        out.cycle_unit = static_cast<long>((static_cast<std::int64_t>(beta) * wh) % p);
        out.phi2_cycle_exponent = h * (p + 1);
        out.inertia_weight_1 = h % p2m1;
        out.inertia_weight_2 = (h * p) % p2m1;
        out.det_char_exponent = h % (p - 1);
        out.irreducible = (h % (p + 1)) != 0;
        return out;
    }
    bool triangular = m.b.is_zero() || m.c.is_zero();
    if (triangular && !m.a.is_zero() && !m.d.is_zero()) {
        out.kind = ReductionLabel::Kind::Reducible;
        return out;
    }
    out.kind = ReductionLabel::Kind::Unrecognized;
    return out;
}

/// Strict inequality gate of the main statement: v_p(L^{-1}) > (h-1)/2 - 1 +
/// v_p((h-1)!), or with `weak` the variant without the -1 (which also covers
/// p = 3, h = 2).
inline bool theorem_bound(long p, std::int64_t k, HalfInt v_L, bool weak) {
    if (p == 2) throw OutOfRangeError("theorem_bound: p = 2 unsupported");
    if (k < 3) throw OutOfRangeError("theorem_bound: k >= 3 required");
    std::int64_t h = k - 1;
    HalfInt rhs = HalfInt::from_twice(h - 1) + HalfInt::from_int(vp_factorial(h - 1, p) - (weak ? 0 : 1));
    return -v_L > rhs;
}

/// Threshold on v_p(L^{-1}) in the inverse formulation.
inline HalfInt bound_threshold_inverse(long p, std::int64_t k) {
    std::int64_t h = k - 1;
    return HalfInt::from_twice(h - 1) + HalfInt::from_int(vp_factorial(h - 1, p) - 1);
}

/// Threshold on v_p(L) in the direct formulation: 2 - k/2 - v_p((k-2)!).
inline HalfInt bound_threshold_direct(long p, std::int64_t k) {
    return HalfInt::from_int(2) - HalfInt::from_twice(k) - HalfInt::from_int(vp_factorial(k - 2, p));
}

}  // namespace ssred
