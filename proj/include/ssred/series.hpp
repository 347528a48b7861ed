#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssred/halfint.hpp"
#include "ssred/padic.hpp"
#include "ssred/verdict.hpp"

namespace ssred {

class NonUnitError : public std::runtime_error {
public:
    explicit NonUnitError(const std::string& what, Verdict v)
        : std::runtime_error("invert_unit: " + what + " (certificate: " + to_string(v) + ")"),
          verdict(v) {}
    Verdict verdict;
};

/// Certified lower bound for v_{R_2}; `exact` means the bound is the value.
struct VR2 {
    HalfInt lb;
    bool exact;
};

/// Polynomial-in-u approximation of an element of R_2, the Banach algebra of
/// series converging on |u| <= p^{-1/2}, with v_{R_2}(sum a_i u^i) =
/// inf_i (i + 2 vp(a_i)).
///
/// Coefficients 0..trunc_deg are kept as p-adic balls; `tail` is a certified
/// lower bound on v_{R_2} of the discarded part in degrees > trunc_deg
/// (+infinity when the represented series is exactly this polynomial).
/// Every operation preserves both guarantees; nothing here ever pretends
/// truncation is exact.
class TruncSeries {
public:
    TruncSeries() : p_(0), tail_(HalfInt::infinity()) {}

    static TruncSeries zero(long p, std::int64_t n) {
        TruncSeries s;
        s.p_ = p;
        s.c_.assign(static_cast<std::size_t>(n + 1), FieldElem::zero(p));
        return s;
    }
    static TruncSeries constant(const FieldElem& c, std::int64_t n) {
        TruncSeries s = zero(c.p(), n);
        s.c_[0] = c;
        return s;
    }
    static TruncSeries monomial(const FieldElem& c, std::int64_t deg, std::int64_t n) {
        TruncSeries s = zero(c.p(), n);
        if (deg <= n) {
            s.c_[static_cast<std::size_t>(deg)] = c;
        } else {
            s.tail_ = HalfInt::from_int(deg) + 2 * vlb(c);
        }
        return s;
    }
    static TruncSeries from_coeffs(std::vector<FieldElem> coeffs, long p, HalfInt tail) {
        TruncSeries s;
        s.p_ = p;
        s.c_ = std::move(coeffs);
        s.tail_ = tail;
        return s;
    }

    /// E^k = (u+p)^k with exact integer coefficients.
    static TruncSeries e_power(std::int64_t k, long p, std::int64_t n) {
        TruncSeries s = zero(p, n);
        mpz_class binom(1);
        mpz_class pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
        for (std::int64_t i = 0; i <= k; ++i) {
            mpq_class coeff = mpq_class(binom) * mpq_class(pk);
            if (i <= n)
                s.c_[static_cast<std::size_t>(i)] = FieldElem::from_rational(coeff, p);
            else
                s.tail_ = min(s.tail_, HalfInt::from_int(i + 2 * (k - i)));
            binom = binom * (k - i) / (i + 1);
            if (i < k) pk /= p;
        }
        return s;
    }

    /// c = phi(E)/p = 1 + u^p/p.
    static TruncSeries c_unit(long p, std::int64_t n) {
        TruncSeries s = zero(p, n);
        s.c_[0] = FieldElem::one(p);
        FieldElem invp = FieldElem::from_rational(mpq_class(1, p), p);
        if (p <= n)
            s.c_[static_cast<std::size_t>(p)] = invp;
        else
            s.tail_ = HalfInt::from_int(p - 2);
        return s;
    }

    long p() const { return p_; }
    std::int64_t trunc_deg() const { return static_cast<std::int64_t>(c_.size()) - 1; }
    HalfInt tail() const { return tail_; }
    const FieldElem& coeff(std::int64_t i) const { return c_[static_cast<std::size_t>(i)]; }
    const FieldElem& eval0() const { return c_[0]; }

    /// Certified lower bound on the valuation of coefficient i (its exact
    /// valuation when the residue is visible, else the precision bound).
    static HalfInt vlb(const FieldElem& e) { return e.valuation().v; }

    HalfInt term_lb(std::int64_t i) const { return HalfInt::from_int(i) + 2 * vlb(coeff(i)); }

    /// Lower bound on v_{R_2} of the retained polynomial part only.
    HalfInt retained_lb() const {
        HalfInt m = HalfInt::infinity();
        for (std::int64_t i = 0; i <= trunc_deg(); ++i) m = min(m, term_lb(i));
        return m;
    }

    HalfInt v_r2_lb() const { return min(retained_lb(), tail_); }

    /// v_{R_2} with exactness: exact when some coefficient of certain
    /// valuation attains the minimum below every unknown contribution.
    VR2 v_r2() const {
        HalfInt vcert = HalfInt::infinity(), vunc = tail_;
        bool pure_poly = tail_.is_infinite();
        for (std::int64_t i = 0; i <= trunc_deg(); ++i) {
            ValInfo v = coeff(i).valuation();
            HalfInt t = HalfInt::from_int(i) + 2 * v.v;
            if (v.certain)
                vcert = min(vcert, t);
            else {
                vunc = min(vunc, t);
                pure_poly = false;
            }
        }
        if (vcert.is_infinite() && pure_poly) return {HalfInt::infinity(), true};  // exactly 0
        if (!vcert.is_infinite() && vcert <= vunc) return {vcert, true};
        return {min(vcert, vunc), false};
    }

    /// Membership in H_v (v_{R_2} >= v) or H_v^o (strict), as a certificate.
    Verdict in_Hv(HalfInt v, bool strict) const {
        VR2 r = v_r2();
        if (r.exact) {
            bool pass = strict ? r.lb > v : r.lb >= v;
            return pass ? Verdict::True : Verdict::False;
        }
        bool pass = strict ? r.lb > v : r.lb >= v;
        return pass ? Verdict::True : Verdict::Unknown;
    }

    friend TruncSeries operator-(const TruncSeries& a) {
        TruncSeries s = a;
        for (auto& c : s.c_) c = -c;
        return s;
    }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        a.check_compatible(b);
        TruncSeries s = a;
        for (std::int64_t i = 0; i <= s.trunc_deg(); ++i)
            s.c_[static_cast<std::size_t>(i)] = a.coeff(i) + b.coeff(i);
        s.tail_ = min(a.tail_, b.tail_);
        return s;
    }
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        a.check_compatible(b);
        std::int64_t n = a.trunc_deg();
        TruncSeries s = zero(a.p_, n);
        for (std::int64_t i = 0; i <= n; ++i) {
            if (a.coeff(i).residue_is_zero() && a.coeff(i).is_exact()) continue;
            for (std::int64_t j = 0; i + j <= n; ++j)
                s.c_[static_cast<std::size_t>(i + j)] =
                    s.coeff(i + j) + a.coeff(i) * b.coeff(j);
        }
        // overflow of retained*retained past the window
        std::vector<HalfInt> suf(static_cast<std::size_t>(n + 2), HalfInt::infinity());
        for (std::int64_t j = n; j >= 0; --j)
            suf[static_cast<std::size_t>(j)] = min(suf[static_cast<std::size_t>(j + 1)], b.term_lb(j));
        HalfInt over = HalfInt::infinity();
        for (std::int64_t i = 0; i <= n; ++i) {
            std::int64_t jmin = n - i + 1;
            if (jmin <= n) over = min(over, a.term_lb(i) + suf[static_cast<std::size_t>(jmin)]);
        }
        s.tail_ = min(min(over, a.tail_ + b.v_r2_lb()),
                      min(b.tail_ + a.v_r2_lb(), a.tail_ + b.tail_));
        return s;
    }

    friend TruncSeries scalar_mul(const FieldElem& x, const TruncSeries& a) {
        TruncSeries s = a;
        for (auto& c : s.c_) c = x * c;
        s.tail_ = a.tail_ + 2 * vlb(x);
        return s;
    }

    TruncSeries pow(std::int64_t k) const {
        assert(k >= 0);
        TruncSeries r = constant(FieldElem::one(p_), trunc_deg());
        TruncSeries base = *this;
        while (k > 0) {
            if (k & 1) r = r * base;
            base = base * base;
            k >>= 1;
        }
        return r;
    }

    void require_same_shape(const TruncSeries& o) const { check_compatible(o); }

private:
    void check_compatible(const TruncSeries& o) const {
        if (p_ != o.p_ || c_.size() != o.c_.size())
            throw std::logic_error("TruncSeries: incompatible truncation windows");
    }

    std::vector<FieldElem> c_;
    long p_;
    HalfInt tail_;
};

/// phi: u -> u^p, F-linear on coefficients.  Exact on degrees <= N/p; the
/// image of everything beyond folds into the certified tail.
inline TruncSeries frobenius(const TruncSeries& f) {
    std::int64_t n = f.trunc_deg();
    long p = f.p();
    TruncSeries s = TruncSeries::zero(p, n);
    std::vector<FieldElem> out(static_cast<std::size_t>(n + 1), FieldElem::zero(p));
    HalfInt over = HalfInt::infinity();
    for (std::int64_t i = 0; i <= n; ++i) {
        if (p * i <= n)
            out[static_cast<std::size_t>(p * i)] = f.coeff(i);
        else
            over = min(over, f.term_lb(i) + HalfInt::from_int((p - 1) * i));
    }
    HalfInt tail_img = f.tail().is_infinite()
                           ? HalfInt::infinity()
                           : f.tail() + HalfInt::from_int((p - 1) * (n + 1));
    return TruncSeries::from_coeffs(std::move(out), p, min(over, tail_img));
}

/// N = -u d/du, coefficientwise -i * a_i.  Exact; tails only improve.
inline TruncSeries n_operator(const TruncSeries& f) {
    std::int64_t n = f.trunc_deg();
    std::vector<FieldElem> out;
    out.reserve(static_cast<std::size_t>(n + 1));
    for (std::int64_t i = 0; i <= n; ++i)
        out.push_back(FieldElem::integer(-i, f.p()) * f.coeff(i));
    return TruncSeries::from_coeffs(std::move(out), f.p(), f.tail());
}

inline TruncSeries truncate_le(const TruncSeries& f, std::int64_t d) {
    assert(d <= f.trunc_deg());
    std::int64_t n = f.trunc_deg();
    TruncSeries s = TruncSeries::zero(f.p(), n);
    std::vector<FieldElem> out(static_cast<std::size_t>(n + 1), FieldElem::zero(f.p()));
    for (std::int64_t i = 0; i <= d; ++i) out[static_cast<std::size_t>(i)] = f.coeff(i);
    return TruncSeries::from_coeffs(std::move(out), f.p(), HalfInt::infinity());
}

inline TruncSeries truncate_gt(const TruncSeries& f, std::int64_t d) {
    assert(d <= f.trunc_deg());
    std::int64_t n = f.trunc_deg();
    std::vector<FieldElem> out(static_cast<std::size_t>(n + 1), FieldElem::zero(f.p()));
    for (std::int64_t i = d + 1; i <= n; ++i) out[static_cast<std::size_t>(i)] = f.coeff(i);
    return TruncSeries::from_coeffs(std::move(out), f.p(), f.tail());
}

/// f = f(0)(1 + s) with vp(f(0)) certain and v_{R_2}(s) > 0, certified.
inline Verdict unit_certificate(const TruncSeries& f) {
    ValInfo v0 = f.eval0().valuation();
    if (!v0.certain) return Verdict::Unknown;
    TruncSeries rest = f - TruncSeries::constant(f.eval0(), f.trunc_deg());
    return rest.in_Hv(2 * v0.v, true);
}

namespace detail {
/// The stored residues as an exact polynomial (certified-tail analysis of
/// inverses quantifies over this witness; not for general use).
inline TruncSeries residue_witness(const TruncSeries& f) {
    std::vector<FieldElem> out;
    out.reserve(static_cast<std::size_t>(f.trunc_deg() + 1));
    for (std::int64_t i = 0; i <= f.trunc_deg(); ++i) {
        const FieldElem& c = f.coeff(i);
        out.push_back(FieldElem::from_parts(c.x(), c.y(), c.p(), Prec::exact()));
    }
    return TruncSeries::from_coeffs(std::move(out), f.p(), HalfInt::infinity());
}
}  // namespace detail

/// Reciprocal of a certified unit of R_2.  The result's tail bound comes from
/// the residual 1 - f * g of the computed witness g, so the guarantee
/// v_{R_2}(1/f - g) >= tail is itself certified rather than assumed.
inline TruncSeries invert_unit(const TruncSeries& f) {
    Verdict cert = unit_certificate(f);
    if (cert != Verdict::True) throw NonUnitError("input not certified as a unit", cert);
    std::int64_t n = f.trunc_deg();
    FieldElem g0 = f.eval0().inverse("invert_unit");
    std::vector<FieldElem> g(static_cast<std::size_t>(n + 1), FieldElem::zero(f.p()));
    g[0] = g0;
    for (std::int64_t k = 1; k <= n; ++k) {
        FieldElem acc = FieldElem::zero(f.p());
        for (std::int64_t j = 1; j <= k; ++j) acc = acc + f.coeff(j) * g[static_cast<std::size_t>(k - j)];
        g[static_cast<std::size_t>(k)] = -(g0 * acc);
    }
    TruncSeries gs = TruncSeries::from_coeffs(std::move(g), f.p(), HalfInt::infinity());
    TruncSeries resid = f * detail::residue_witness(gs) -
                        TruncSeries::constant(FieldElem::one(f.p()), n);
    HalfInt vf = 2 * f.eval0().valuation().v;
    HalfInt tail = resid.v_r2_lb() - vf;
    return TruncSeries::from_coeffs(
        [&] {
            std::vector<FieldElem> out;
            out.reserve(static_cast<std::size_t>(n + 1));
            for (std::int64_t i = 0; i <= n; ++i) out.push_back(gs.coeff(i));
            return out;
        }(),
        f.p(), tail);
}

/// lambda_- = prod_{n>=0} phi^{2n+1}(E)/p and lambda_++ = phi(lambda_-).
/// Factors with p^m > trunc_deg are 1 through the window; their omission is
/// charged to the tail bound.
inline std::pair<TruncSeries, TruncSeries> lambda_products(long p, std::int64_t n) {
    auto partial = [&](int parity) {
        TruncSeries acc = TruncSeries::constant(FieldElem::one(p), n);
        std::int64_t pm = 1;
        std::int64_t first_omitted = 0;
        for (std::int64_t m = 1;; ++m) {
            pm *= p;
            if (pm > n) {
                first_omitted = pm;
                break;
            }
            if (m % 2 == parity % 2) {
                TruncSeries factor = TruncSeries::constant(FieldElem::one(p), n);
                factor = factor + TruncSeries::monomial(
                                      FieldElem::from_rational(mpq_class(1, p), p), pm, n);
                acc = acc * factor;
            }
        }
        // remaining factors: 1 + (v_R2 >= p^m - 2, degree > n) each
        HalfInt omit = HalfInt::from_int(first_omitted - 2) + acc.v_r2_lb();
        return TruncSeries::from_coeffs(
            [&] {
                std::vector<FieldElem> out;
                for (std::int64_t i = 0; i <= n; ++i) out.push_back(acc.coeff(i));
                return out;
            }(),
            p, min(acc.tail(), omit));
    };
    return {partial(1), partial(0)};
}

/// Formal division by E = u+p (E is a unit of F[[u]], not of R_2): the
/// quotient's coefficients are exact through the window but no tail bound
/// survives, so the result carries the weakest honest tail claim via the
/// supplied fallback.  Used for finite-height certificates only.
inline TruncSeries divide_by_E_formal(const TruncSeries& f, HalfInt tail_claim) {
    std::int64_t n = f.trunc_deg();
    FieldElem invp = FieldElem::from_rational(mpq_class(1, f.p()), f.p());
    std::vector<FieldElem> g(static_cast<std::size_t>(n + 1), FieldElem::zero(f.p()));
    FieldElem prev = FieldElem::zero(f.p());
    for (std::int64_t i = 0; i <= n; ++i) {
        g[static_cast<std::size_t>(i)] = (f.coeff(i) - prev) * invp;
        prev = g[static_cast<std::size_t>(i)];
    }
    return TruncSeries::from_coeffs(std::move(g), f.p(), tail_claim);
}

/// All retained residues of a - b vanish at working precision.
inline bool residually_equal(const TruncSeries& a, const TruncSeries& b) {
    a.require_same_shape(b);
    for (std::int64_t i = 0; i <= a.trunc_deg(); ++i)
        if (!residually_equal(a.coeff(i), b.coeff(i))) return false;
    return true;
}

}  // namespace ssred
