#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ssred/padic.hpp"
#include "ssred/series.hpp"
#include "ssred/verdict.hpp"

namespace ssred {

class InternalConsistencyError : public std::logic_error {
    using std::logic_error::logic_error;
};

/// Polynomial in E = u + p with coefficients in F, kept exact.  The
/// filtration recursion lives entirely inside F[E] and all its divisions by E
/// are polynomial divisions with a remainder assertion, which removes a whole
/// class of precision failures.
class EPoly {
public:
    EPoly() : p_(0) {}
    explicit EPoly(long p) : p_(p) {}

    static EPoly constant(const FieldElem& c) {
        EPoly f(c.p());
        f.c_.push_back(c);
        f.normalize();
        return f;
    }
    static EPoly zero(long p) { return EPoly(p); }
    /// c * E^k
    static EPoly monomial(const FieldElem& c, std::int64_t k) {
        EPoly f(c.p());
        f.c_.assign(static_cast<std::size_t>(k + 1), FieldElem::zero(c.p()));
        f.c_.back() = c;
        f.normalize();
        return f;
    }

    long p() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    std::int64_t degree() const { return static_cast<std::int64_t>(c_.size()) - 1; }
    FieldElem coeff(std::int64_t k) const {
        if (k < 0 || k > degree()) return FieldElem::zero(p_);
        return c_[static_cast<std::size_t>(k)];
    }

    /// Value at E = 0, i.e. at u = pi = -p.
    FieldElem eval_at_pi() const { return coeff(0); }

    friend EPoly operator+(const EPoly& a, const EPoly& b) {
        EPoly s(a.p_ ? a.p_ : b.p_);
        std::int64_t n = std::max(a.degree(), b.degree());
        for (std::int64_t k = 0; k <= n; ++k) s.c_.push_back(a.coeff(k) + b.coeff(k));
        s.normalize();
        return s;
    }
    friend EPoly operator-(const EPoly& a, const EPoly& b) { return a + scale(FieldElem::integer(-1, b.p_ ? b.p_ : a.p_), b); }
    friend EPoly operator*(const EPoly& a, const EPoly& b) {
        EPoly s(a.p_ ? a.p_ : b.p_);
        if (a.is_zero() || b.is_zero()) return s;
        s.c_.assign(static_cast<std::size_t>(a.degree() + b.degree() + 1),
                    FieldElem::zero(s.p_));
        for (std::int64_t i = 0; i <= a.degree(); ++i)
            for (std::int64_t j = 0; j <= b.degree(); ++j)
                s.c_[static_cast<std::size_t>(i + j)] =
                    s.coeff(i + j) + a.coeff(i) * b.coeff(j);
        s.normalize();
        return s;
    }
    friend EPoly scale(const FieldElem& x, const EPoly& a) {
        EPoly s(a.p_ ? a.p_ : x.p());
        for (const auto& c : a.c_) s.c_.push_back(x * c);
        s.normalize();
        return s;
    }

    /// Exact division by E; the constant term must vanish (this is the
    /// recursion's "numerator vanishes at u = pi" invariant).
    EPoly divide_by_E(const char* where) const {
        if (!c_.empty() && !c_[0].residue_is_zero())
            throw InternalConsistencyError(std::string("division by E is not exact in ") + where);
        EPoly q(p_);
        for (std::size_t k = 1; k < c_.size(); ++k) q.c_.push_back(c_[k]);
        q.normalize();
        return q;
    }

    /// N = -u d/du in the E-variable: N(E^k) = -k E^k + k p E^{k-1}.
    friend EPoly n_operator(const EPoly& f) {
        EPoly s(f.p_);
        for (std::int64_t k = 1; k <= f.degree(); ++k) {
            FieldElem kk = FieldElem::integer(k, f.p_);
            s = s + EPoly::monomial(-(kk * f.coeff(k)), k);
            s = s + EPoly::monomial(kk * FieldElem::integer(f.p_, f.p_) * f.coeff(k), k - 1);
        }
        return s;
    }

    /// u = E - p as a polynomial in E.
    static EPoly u_poly(long p) {
        EPoly f(p);
        f.c_.push_back(FieldElem::integer(-p, p));
        f.c_.push_back(FieldElem::one(p));
        return f;
    }

    TruncSeries to_series(std::int64_t trunc_deg) const {
        TruncSeries s = TruncSeries::zero(p_, trunc_deg);
        for (std::int64_t k = 0; k <= degree(); ++k)
            s = s + scalar_mul(coeff(k), TruncSeries::e_power(k, p_, trunc_deg));
        return s;
    }

    friend bool residually_equal(const EPoly& a, const EPoly& b) {
        std::int64_t n = std::max(a.degree(), b.degree());
        for (std::int64_t k = 0; k <= n; ++k)
            if (!residually_equal(a.coeff(k), b.coeff(k))) return false;
        return true;
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back().residue_is_zero() && c_.back().is_exact()) c_.pop_back();
    }
    std::vector<FieldElem> c_;
    long p_;
};

/// Membership in A_v = { sum y_j E^j : vp(y_j) + vp(j!) + j >= v }, the
/// coefficient-bound group the filtration estimates are phrased in.
inline Verdict in_Av(const EPoly& f, HalfInt v) {
    Verdict out = Verdict::True;
    for (std::int64_t j = 0; j <= f.degree(); ++j) {
        HalfInt bound = v - HalfInt::from_int(j + vp_factorial(j, f.p()));
        out = meet(out, f.coeff(j).val_ge(bound));
    }
    return out;
}

}  // namespace ssred
