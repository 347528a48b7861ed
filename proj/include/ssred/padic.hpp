#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "ssred/halfint.hpp"
#include "ssred/verdict.hpp"

namespace ssred {

class PrecisionLossError : public std::runtime_error {
public:
    explicit PrecisionLossError(const std::string& op)
        : std::runtime_error("precision loss in " + op +
                             ": operand indistinguishable from 0 at working precision") {}
};

/// Absolute p-adic precision: residues are known mod p^M, or exactly.
class Prec {
public:
    constexpr Prec() : m_(0), exact_(true) {}
    static constexpr Prec exact() { return Prec(0, true); }
    static constexpr Prec mod(std::int64_t m) { return Prec(m, false); }

    constexpr bool is_exact() const { return exact_; }
    constexpr std::int64_t m() const { return m_; }

    friend constexpr Prec min(Prec a, Prec b) {
        if (a.exact_) return b;
        if (b.exact_) return a;
        return mod(a.m_ < b.m_ ? a.m_ : b.m_);
    }
    friend constexpr bool operator==(Prec a, Prec b) {
        return a.exact_ == b.exact_ && (a.exact_ || a.m_ == b.m_);
    }
    HalfInt as_halfint() const { return exact_ ? HalfInt::infinity() : HalfInt::from_int(m_); }
    std::string str() const { return exact_ ? "exact" : std::to_string(m_); }

private:
    constexpr Prec(std::int64_t m, bool e) : m_(m), exact_(e) {}
    std::int64_t m_;
    bool exact_;
};

namespace detail {

constexpr std::int64_t kValInf = std::int64_t(1) << 56;

/// p-adic valuation of a nonzero rational; kValInf for 0.
inline std::int64_t vp_rational(const mpq_class& q, long p) {
    if (q == 0) return kValInf;
    mpz_class pz(p), tmp;
    std::int64_t v = 0;
    v += static_cast<std::int64_t>(mpz_remove(tmp.get_mpz_t(), q.get_num().get_mpz_t(), pz.get_mpz_t()));
    v -= static_cast<std::int64_t>(mpz_remove(tmp.get_mpz_t(), q.get_den().get_mpz_t(), pz.get_mpz_t()));
    return v;
}

inline mpz_class pow_p(long p, std::int64_t e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

/// Canonical representative of q mod p^M: p^a * m with m in [1, p^{M-a}) prime to p,
/// where a = vp(q).  Returns 0 if vp(q) >= M.
inline mpq_class reduce_rational(const mpq_class& q, long p, std::int64_t M) {
    if (q == 0) return q;
    std::int64_t a = vp_rational(q, p);
    if (a >= M) return mpq_class(0);
    mpz_class pz(p), num = q.get_num(), den = q.get_den(), tmp;
    std::int64_t an = static_cast<std::int64_t>(mpz_remove(tmp.get_mpz_t(), num.get_mpz_t(), pz.get_mpz_t()));
    if (an > 0) num = tmp;
    std::int64_t ad = static_cast<std::int64_t>(mpz_remove(tmp.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()));
    if (ad > 0) den = tmp;
    mpz_class mod = pow_p(p, M - a);
    mpz_class deninv;
    if (mpz_invert(deninv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t()) == 0)
        throw std::logic_error("reduce_rational: denominator not a p-adic unit");
    mpz_class m = (num * deninv) % mod;
    if (m < 0) m += mod;
    mpq_class out(m);
    if (a > 0) out *= mpq_class(pow_p(p, a));
    if (a < 0) out /= mpq_class(pow_p(p, -a));
    out.canonicalize();
    return out;
}

constexpr std::int64_t ext_add(std::int64_t a, std::int64_t b) {
    return (a >= kValInf || b >= kValInf) ? kValInf : a + b;
}
constexpr std::int64_t ext_min(std::int64_t a, std::int64_t b) { return a < b ? a : b; }

}  // namespace detail

/// Certified information about a valuation: either the exact value (certain)
/// or a lower bound coming from the working precision.
struct ValInfo {
    HalfInt v;
    bool certain;
};

/// An element of F = Q_p(w), w^2 = p, written x + y*w with rational parts,
/// together with the absolute precision to which both parts are known.
///
/// Residues are kept reduced mod p^M so sizes stay bounded; arithmetic
/// propagates precision by interval rules and never silently increases it.
/// Valuations take values in (1/2)Z.
class FieldElem {
public:
    FieldElem() : x_(0), y_(0), p_(0), prec_(Prec::exact()) {}

    static FieldElem from_parts(mpq_class x, mpq_class y, long p, Prec prec = Prec::exact()) {
        FieldElem e;
        e.x_ = std::move(x);
        e.y_ = std::move(y);
        e.p_ = p;
        e.prec_ = prec;
        e.reduce();
        return e;
    }
    static FieldElem from_rational(const mpq_class& x, long p, Prec prec = Prec::exact()) {
        return from_parts(x, mpq_class(0), p, prec);
    }
    static FieldElem integer(long n, long p, Prec prec = Prec::exact()) {
        return from_rational(mpq_class(n), p, prec);
    }
    static FieldElem zero(long p, Prec prec = Prec::exact()) { return integer(0, p, prec); }
    static FieldElem one(long p, Prec prec = Prec::exact()) { return integer(1, p, prec); }

    /// w^e for any integer e (w = sqrt(p); negative powers allowed).
    static FieldElem pi_pow(std::int64_t e, long p, Prec prec = Prec::exact()) {
        mpq_class r(1);
        std::int64_t half = (e % 2 == 0) ? e / 2 : (e - 1) / 2;
        if (half >= 0)
            r = mpq_class(detail::pow_p(p, half));
        else
            r = mpq_class(1) / mpq_class(detail::pow_p(p, -half));
        if (e % 2 == 0) return from_parts(r, mpq_class(0), p, prec);
        return from_parts(mpq_class(0), r, p, prec);
    }

    long p() const { return p_; }
    Prec prec() const { return prec_; }
    const mpq_class& x() const { return x_; }
    const mpq_class& y() const { return y_; }

    bool residue_is_zero() const { return x_ == 0 && y_ == 0; }
    bool is_exact() const { return prec_.is_exact(); }

    /// Valuation min(vp(x), vp(y)+1/2).  When both residues vanish the element
    /// is indistinguishable from 0 and only the lower bound prec is known.
    ValInfo valuation() const {
        std::int64_t vx = detail::vp_rational(x_, p_);
        std::int64_t vy = detail::vp_rational(y_, p_);
        std::int64_t tw = detail::ext_min(vx >= detail::kValInf ? detail::kValInf : 2 * vx,
                                          vy >= detail::kValInf ? detail::kValInf : 2 * vy + 1);
        if (tw >= detail::kValInf) {
            if (prec_.is_exact()) return {HalfInt::infinity(), true};
            return {HalfInt::from_int(prec_.m()), false};
        }
        return {HalfInt::from_twice(tw), true};
    }

    Verdict val_gt(HalfInt t) const {
        ValInfo v = valuation();
        if (v.certain) return v.v > t ? Verdict::True : Verdict::False;
        return v.v > t ? Verdict::True : Verdict::Unknown;
    }
    Verdict val_ge(HalfInt t) const {
        ValInfo v = valuation();
        if (v.certain) return v.v >= t ? Verdict::True : Verdict::False;
        return v.v >= t ? Verdict::True : Verdict::Unknown;
    }

    FieldElem operator-() const {
        FieldElem e = *this;
        e.x_ = -e.x_;
        e.y_ = -e.y_;
        return e;
    }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b) {
        a.check_same_field(b);
        return from_parts(a.x_ + b.x_, a.y_ + b.y_, a.p_, min(a.prec_, b.prec_));
    }
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b) { return a + (-b); }

    friend FieldElem operator*(const FieldElem& a, const FieldElem& b) {
        a.check_same_field(b);
        mpq_class x = a.x_ * b.x_ + a.p_ * a.y_ * b.y_;
        mpq_class y = a.x_ * b.y_ + a.y_ * b.x_;
        return from_parts(std::move(x), std::move(y), a.p_, mul_prec(a, b));
    }

    /// Multiplicative inverse.  Requires a certain valuation; an operand
    /// indistinguishable from 0 is poisoned for division.
    FieldElem inverse(const char* op = "inverse") const {
        ValInfo v = valuation();
        if (!v.certain) throw PrecisionLossError(op);
        mpq_class nrm = x_ * x_ - p_ * y_ * y_;  // norm to Q_p; vp(nrm) = 2 val exactly
        Prec pr = prec_.is_exact() ? Prec::exact() : Prec::mod(prec_.m() - v.v.twice());
        return from_parts(x_ / nrm, -y_ / nrm, p_, pr);
    }

    friend FieldElem operator/(const FieldElem& a, const FieldElem& b) {
        return a * b.inverse("division");
    }

    FieldElem pow(std::int64_t n) const {
        if (n < 0) return inverse("pow").pow(-n);
        FieldElem r = one(p_, prec_.is_exact() ? Prec::exact() : prec_);
        FieldElem base = *this;
        while (n > 0) {
            if (n & 1) r = r * base;
            base = base * base;
            n >>= 1;
        }
        return r;
    }

    /// Forget precision down to mod p^M (no-op if already coarser).
    FieldElem with_prec_cap(Prec cap) const {
        Prec np = min(prec_, cap);
        return from_parts(x_, y_, p_, np);
    }

    /// True if a and b agree as residues at their common precision.
    friend bool residually_equal(const FieldElem& a, const FieldElem& b) {
        return (a - b).residue_is_zero();
    }

    std::string str() const {
        std::string s = x_.get_str();
        if (y_ != 0) s += " + " + y_.get_str() + "*w";
        return s;
    }

private:
    void check_same_field(const FieldElem& o) const {
        if (p_ != o.p_) throw std::logic_error("FieldElem: mixed primes");
    }

    static Prec mul_prec(const FieldElem& a, const FieldElem& b) {
        if (a.prec_.is_exact() && b.prec_.is_exact()) return Prec::exact();
        std::int64_t Ma = a.prec_.is_exact() ? detail::kValInf : a.prec_.m();
        std::int64_t Mb = b.prec_.is_exact() ? detail::kValInf : b.prec_.m();
        std::int64_t vxa = detail::vp_rational(a.x_, a.p_), vya = detail::vp_rational(a.y_, a.p_);
        std::int64_t vxb = detail::vp_rational(b.x_, b.p_), vyb = detail::vp_rational(b.y_, b.p_);
        using detail::ext_add;
        using detail::ext_min;
        std::int64_t m = detail::kValInf;
        // x-part error terms of (a+ea)(b+eb)
        m = ext_min(m, ext_add(Ma, vxb));
        m = ext_min(m, ext_add(Mb, vxa));
        m = ext_min(m, ext_add(Ma, Mb));
        m = ext_min(m, 1 + ext_min(ext_add(Ma, vyb), ext_min(ext_add(Mb, vya), ext_add(Ma, Mb))));
        // y-part error terms
        m = ext_min(m, ext_add(Ma, vyb));
        m = ext_min(m, ext_add(Mb, vxa));
        m = ext_min(m, ext_add(Ma, vxb));
        m = ext_min(m, ext_add(Mb, vya));
        return m >= detail::kValInf ? Prec::exact() : Prec::mod(m);
    }

    void reduce() {
        if (prec_.is_exact()) {
            x_.canonicalize();
            y_.canonicalize();
            return;
        }
        x_ = detail::reduce_rational(x_, p_, prec_.m());
        y_ = detail::reduce_rational(y_, p_, prec_.m());
    }

    mpq_class x_, y_;
    long p_;
    Prec prec_;
};

/// vp(n!) by Legendre's formula.
inline std::int64_t vp_factorial(std::int64_t n, long p) {
    std::int64_t v = 0;
    for (std::int64_t q = n / p; q > 0; q /= p) v += q;
    return v;
}

/// Parse the CLI literal format: `a/b`, `a/b*w^e`, or `p^v` (v in (1/2)Z).
inline FieldElem parse_field_literal(const std::string& s, long p, Prec prec = Prec::exact()) {
    auto parse_q = [](const std::string& t) {
        mpq_class q;
        if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational literal: " + t);
        q.canonicalize();
        return q;
    };
    if (s.rfind("p^", 0) == 0) {
        mpq_class v = parse_q(s.substr(2));
        mpq_class tw = 2 * v;
        if (tw.get_den() != 1) throw std::invalid_argument("p^v needs v in (1/2)Z: " + s);
        if (!tw.get_num().fits_slong_p()) throw std::invalid_argument("exponent too large: " + s);
        return FieldElem::pi_pow(tw.get_num().get_si(), p, prec);
    }
    auto star = s.find("*w^");
    if (star == std::string::npos) return FieldElem::from_rational(parse_q(s), p, prec);
    mpq_class r = parse_q(s.substr(0, star));
    std::string es = s.substr(star + 3);
    mpq_class e = parse_q(es);
    if (e.get_den() != 1 || !e.get_num().fits_slong_p())
        throw std::invalid_argument("bad w-exponent: " + s);
    return FieldElem::from_rational(r, p, prec) * FieldElem::pi_pow(e.get_num().get_si(), p, prec);
}

/// Inverse of parse_field_literal on elements with a single nonzero part.
inline std::string format_field_literal(const FieldElem& e) {
    if (e.y() == 0) return e.x().get_str();
    if (e.x() == 0) return e.y().get_str() + "*w^1";
    throw std::invalid_argument("element has no single-literal form");
}

}  // namespace ssred
