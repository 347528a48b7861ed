#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ssred/errors.hpp"
#include "ssred/halfint.hpp"
#include "ssred/mat2.hpp"
#include "ssred/padic.hpp"

namespace ssred {

enum class BasisTag { E, F };

/// Rank-2 filtered (phi,N)-module over F with Hodge-Tate weights {0, h},
/// h = k-1.  The filtration in degrees 1..h is the line through fil_gen.
/// L encodes the non-crystalline parameter; crystalline means the N = 0 limit.
struct FilteredModule {
    long p = 0;
    std::int64_t k = 0;
    std::int64_t h = 0;
    bool crystalline = false;
    FieldElem L;
    Mat2<FieldElem> phi;
    Mat2<FieldElem> n;
    std::pair<FieldElem, FieldElem> fil_gen;
    BasisTag basis = BasisTag::E;
};

inline bool is_odd_prime(long p) {
    if (p < 3 || p % 2 == 0) return false;
    for (long d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

inline FieldElem frobenius_trace_ap(long p, std::int64_t h) {
    return FieldElem::pi_pow(h - 1, p) + FieldElem::pi_pow(h + 1, p);
}

/// The standard module: phi = diag(w^k, w^{k-2}), N = (0 0; 1 0), filtration
/// generated by e1 + L e2.  With L = infinity (crystalline = true), N = 0 and
/// the generator is e1' + e2'.
inline FilteredModule make_D(long p, std::int64_t k, std::optional<FieldElem> L) {
    if (!is_odd_prime(p)) throw OutOfRangeError("p must be an odd prime, got " + std::to_string(p));
    if (k < 3) throw OutOfRangeError("weight k must be >= 3, got " + std::to_string(k));
    FilteredModule D;
    D.p = p;
    D.k = k;
    D.h = k - 1;
    D.crystalline = !L.has_value();
    FieldElem z = FieldElem::zero(p), o = FieldElem::one(p);
    D.phi = {FieldElem::pi_pow(k, p), z, z, FieldElem::pi_pow(k - 2, p)};
    if (D.crystalline) {
        D.n = {z, z, z, z};
        D.fil_gen = {o, o};
    } else {
        D.L = *L;
        D.n = {z, z, o, z};
        D.fil_gen = {o, D.L};
    }
    D.basis = BasisTag::E;
    return D;
}

/// Which of the two published normalizations the computed f-basis monodromy
/// matches: the b-entry of the base-changed N agrees with one sign choice only.
struct MonodromySignRecord {
    bool matches_display = false;   // (1,2) entry as displayed with +w^{-h-1}
    bool matches_neg_b = false;     // (1,2) entry negated
};

/// Base change to {f1, f2} = {-phi(e1 + L e2), e1 + L e2}, in which
/// phi = (a_p -1; p^h 0) and Fil^i = F f2 for 1 <= i <= h.  The monodromy
/// matrix is computed by explicit 2x2 linear algebra from the e-basis, never
/// transcribed; `sign` records which printed normalization it agrees with.
inline FilteredModule to_f_basis(const FilteredModule& D, MonodromySignRecord* sign = nullptr) {
    if (D.basis != BasisTag::E) throw UnsupportedBasisError("to_f_basis: input must be in the e-basis");
    if (D.crystalline) throw UnsupportedBasisError("to_f_basis: L = infinity has no f-basis");
    if (D.L.residue_is_zero())
        throw UnsupportedBasisError("to_f_basis: L = 0 (e1 + L e2 is a phi-eigenvector)");
    long p = D.p;
    std::int64_t h = D.h;
    FieldElem o = FieldElem::one(p);
    // columns: f1 = (-w^{h+1}, -L w^{h-1}), f2 = (1, L) in e-coordinates
    Mat2<FieldElem> T{-FieldElem::pi_pow(h + 1, p), o, -(D.L * FieldElem::pi_pow(h - 1, p)), D.L};
    FieldElem dT = T.det();
    Mat2<FieldElem> Tinv = T.adjugate().map([&](const FieldElem& e) { return e / dT; });

    FilteredModule Df = D;
    Df.basis = BasisTag::F;
    Df.phi = Tinv * D.phi * T;
    Df.n = Tinv * D.n * T;
    Df.fil_gen = {FieldElem::zero(p), o};

    if (sign) {
        // p/(L(1-p)) * (1, w^{-h-1}; w^{h+1}, -1)
        FieldElem s = FieldElem::integer(p, p) / (D.L * FieldElem::integer(1 - p, p));
        Mat2<FieldElem> W{s, s * FieldElem::pi_pow(-h - 1, p), s * FieldElem::pi_pow(h + 1, p), -s};
        auto eq = [&](const Mat2<FieldElem>& X, const Mat2<FieldElem>& Y) {
            return residually_equal(X.a, Y.a) && residually_equal(X.b, Y.b) &&
                   residually_equal(X.c, Y.c) && residually_equal(X.d, Y.d);
        };
        sign->matches_display = eq(Df.n, W);
        Mat2<FieldElem> Wneg{W.a, -W.b, W.c, W.d};
        sign->matches_neg_b = eq(Df.n, Wneg);
    }
    return Df;
}

/// Express an f-basis operator matrix back in e-coordinates (test support for
/// the involutivity of the base change).
inline Mat2<FieldElem> f_to_e_coords(const FilteredModule& D_e, const Mat2<FieldElem>& Mf) {
    long p = D_e.p;
    std::int64_t h = D_e.h;
    FieldElem o = FieldElem::one(p);
    Mat2<FieldElem> T{-FieldElem::pi_pow(h + 1, p), o, -(D_e.L * FieldElem::pi_pow(h - 1, p)), D_e.L};
    FieldElem dT = T.det();
    Mat2<FieldElem> Tinv = T.adjugate().map([&](const FieldElem& e) { return e / dT; });
    return T * Mf * Tinv;
}

struct LineCheck {
    std::string which;
    HalfInt t_H;
    HalfInt t_N;
    bool ok = false;
};

struct AdmissibilityCert {
    bool admissible = false;
    HalfInt t_N_total;
    HalfInt t_H_total;
    bool lines_complete = false;  // all phi,N-stable lines were enumerated
    std::vector<LineCheck> lines;
};

namespace detail {

inline std::optional<FieldElem> sqrt_in_F(const FieldElem& e) {
    if (e.y() != 0) return std::nullopt;  // only Q_p-part radicands arise here
    mpq_class q = e.x();
    if (q == 0) return FieldElem::zero(e.p());
    auto rat_sqrt = [](const mpq_class& r) -> std::optional<mpq_class> {
        if (r < 0) return std::nullopt;
        mpz_class n = r.get_num(), d = r.get_den(), sn, sd;
        if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
            return std::nullopt;
        mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
        return mpq_class(sn) / mpq_class(sd);
    };
    if (auto r = rat_sqrt(q)) return FieldElem::from_rational(*r, e.p());
    if (auto r = rat_sqrt(q / e.p())) return FieldElem::from_parts(mpq_class(0), *r, e.p());
    return std::nullopt;
}

}  // namespace detail

/// Weak admissibility: t_N(D) = t_H(D) globally and t_H <= t_N on every
/// (phi, N)-stable line.  Lines are enumerated through eigenvectors of phi
/// when its eigenvalues lie in F; `lines_complete` says whether that
/// enumeration is exhaustive.
inline AdmissibilityCert weak_admissibility_check(const FilteredModule& D) {
    AdmissibilityCert cert;
    cert.t_N_total = D.phi.det().valuation().v;
    cert.t_H_total = HalfInt::from_int(D.h);
    bool total_ok = cert.t_N_total == cert.t_H_total;

    FieldElem tr = D.phi.trace(), dt = D.phi.det();
    FieldElem disc = tr * tr - FieldElem::integer(4, D.p) * dt;
    std::vector<std::pair<FieldElem, std::pair<FieldElem, FieldElem>>> eigen;  // (value, vector)
    cert.lines_complete = false;
    if (auto sq = detail::sqrt_in_F(disc)) {
        FieldElem two_inv = FieldElem::integer(2, D.p).inverse();
        for (int s : {+1, -1}) {
            FieldElem lam = (tr + (s > 0 ? *sq : -*sq)) * two_inv;
            // kernel of (phi - lam): column convention, phi(v) = lam v
            FieldElem v1, v2;
            if (!D.phi.b.residue_is_zero() || !residually_equal(D.phi.a, lam)) {
                v1 = -D.phi.b;
                v2 = D.phi.a - lam;
                if (v1.residue_is_zero() && v2.residue_is_zero()) {
                    v1 = lam - D.phi.d;
                    v2 = D.phi.c;
                }
            } else {
                v1 = FieldElem::one(D.p);
                v2 = FieldElem::zero(D.p);
            }
            eigen.push_back({lam, {v1, v2}});
        }
        bool distinct = !residually_equal(eigen[0].first, eigen[1].first);
        cert.lines_complete = distinct;  // equal eigenvalues: infinitely many lines
        auto colinear = [](const FieldElem& x1, const FieldElem& x2, const FieldElem& y1,
                           const FieldElem& y2) { return (x1 * y2 - x2 * y1).residue_is_zero(); };
        for (std::size_t i = 0; i < eigen.size(); ++i) {
            const auto& [lam, v] = eigen[i];
            // N-stability: N v parallel to v
            FieldElem nv1 = D.n.a * v.first + D.n.b * v.second;
            FieldElem nv2 = D.n.c * v.first + D.n.d * v.second;
            bool nzero = nv1.residue_is_zero() && nv2.residue_is_zero();
            if (!nzero && !colinear(nv1, nv2, v.first, v.second)) continue;
            LineCheck lc;
            lc.which = i == 0 ? "eigenline(+)" : "eigenline(-)";
            lc.t_N = lam.valuation().v;
            bool gen_on_line = colinear(D.fil_gen.first, D.fil_gen.second, v.first, v.second);
            lc.t_H = gen_on_line ? HalfInt::from_int(D.h) : HalfInt::from_int(0);
            lc.ok = lc.t_H <= lc.t_N;
            cert.lines.push_back(lc);
        }
    }
    bool lines_ok = true;
    for (const auto& lc : cert.lines) lines_ok = lines_ok && lc.ok;
    cert.admissible = total_ok && lines_ok;
    return cert;
}

}  // namespace ssred
