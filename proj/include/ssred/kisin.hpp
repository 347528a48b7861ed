#pragma once

#include <cstdint>
#include <utility>

#include "ssred/breuil.hpp"
#include "ssred/epoly.hpp"
#include "ssred/mat2.hpp"
#include "ssred/series.hpp"

namespace ssred {

/// 2x2 Frobenius matrix over R_2 carrying the height bound h; the finite
/// height condition det = unit * E^h is certified separately, not assumed.
struct PhiMat {
    Mat2<TruncSeries> m;
    std::int64_t h = 0;

    long p() const { return m.a.p(); }
    std::int64_t trunc_deg() const { return m.a.trunc_deg(); }
};

inline Mat2<TruncSeries> frobenius(const Mat2<TruncSeries>& m) {
    return m.map([](const TruncSeries& s) { return frobenius(s); });
}

/// Inverse of a 2x2 matrix over R_2 whose determinant is a certified unit.
inline Mat2<TruncSeries> mat_inverse(const Mat2<TruncSeries>& m) {
    TruncSeries dinv = invert_unit(m.det());
    return m.adjugate().map([&](const TruncSeries& s) { return s * dinv; });
}

/// C *_phi A = C A phi(C)^{-1}, the matrix of the same semilinear operator in
/// the base-changed frame.  C itself must be invertible over R_2, not merely
/// phi(C): phi can turn non-units into units (phi(E) = p c).
inline PhiMat star_conj(const Mat2<TruncSeries>& C, const PhiMat& A) {
    Verdict cert = unit_certificate(C.det());
    if (cert != Verdict::True) throw NonUnitError("star_conj: base change not invertible", cert);
    PhiMat out;
    out.h = A.h;
    out.m = C * A.m * mat_inverse(frobenius(C));
    return out;
}

/// Cap every coefficient at the working precision (applied once to exact
/// upstream data so the series stage runs at bounded size).
inline TruncSeries cap_series(const TruncSeries& s, Prec work) {
    std::vector<FieldElem> out;
    out.reserve(static_cast<std::size_t>(s.trunc_deg() + 1));
    for (std::int64_t i = 0; i <= s.trunc_deg(); ++i) out.push_back(s.coeff(i).with_prec_cap(work));
    return TruncSeries::from_coeffs(std::move(out), s.p(), s.tail());
}

/// A' = E^h B^{-1} X phi(B) p^{-h} c^{-h} for B = (E^h z; 0 1) and
/// X = (a_p -1; p^h 0).  The first three factors are kept polynomial-exact
/// (E^h B^{-1} is the adjugate row scaled by nothing: (1 -z; 0 E^h)); the
/// p^{-h} c^{-h} factor is applied last.
inline PhiMat build_A_prime(const EPoly& z, long p, std::int64_t h, std::int64_t n, Prec work) {
    FieldElem ap = frobenius_trace_ap(p, h).with_prec_cap(work);
    FieldElem ph = FieldElem::integer(p, p).pow(h);
    TruncSeries zs = cap_series(z.to_series(n), work);
    TruncSeries Eh = TruncSeries::e_power(h, p, n);
    TruncSeries one = TruncSeries::constant(FieldElem::one(p), n);
    TruncSeries zero = TruncSeries::zero(p, n);

    Mat2<TruncSeries> EhBinv{one, -zs, zero, Eh};
    Mat2<TruncSeries> X{TruncSeries::constant(ap, n), -one,
                        TruncSeries::constant(ph, n), zero};
    Mat2<TruncSeries> phiB{frobenius(Eh), frobenius(zs), zero, one};

    Mat2<TruncSeries> M = EhBinv * X * phiB;
    TruncSeries cinv_h = invert_unit(TruncSeries::c_unit(p, n)).pow(h);
    FieldElem ph_inv = ph.inverse();
    PhiMat out;
    out.h = h;
    out.m = M.map([&](const TruncSeries& s) { return scalar_mul(ph_inv, s * cinv_h); });
    return out;
}

/// The unit-rescaled matrix A = C *_phi A' with C = diag(p^h lambda_-^h,
/// lambda_++^h), whose bottom-left entry is exactly E^h.
inline PhiMat build_A(const PhiMat& A_prime, long p, std::int64_t h, std::int64_t n) {
    auto [lm, lpp] = lambda_products(p, n);
    FieldElem ph = FieldElem::integer(p, p).pow(h);
    TruncSeries zero = TruncSeries::zero(p, n);
    Mat2<TruncSeries> C{scalar_mul(ph, lm.pow(h)), zero, zero, lpp.pow(h)};
    return star_conj(C, A_prime);
}

/// Crystalline comparison matrix: A = Lambda X_0 Cdiag with Lambda =
/// diag(1, E^h), X_0 = (a_p -1; 1 0) the unit part of Frobenius on a strongly
/// divisible lattice with jumps (0, h), and Cdiag = diag(1, c^{-h}).
inline PhiMat crystalline_A(long p, std::int64_t k, std::int64_t n, Prec work) {
    std::int64_t h = k - 1;
    FieldElem ap = frobenius_trace_ap(p, h).with_prec_cap(work);
    TruncSeries one = TruncSeries::constant(FieldElem::one(p), n);
    TruncSeries zero = TruncSeries::zero(p, n);
    Mat2<TruncSeries> Lambda{one, zero, zero, TruncSeries::e_power(h, p, n)};
    Mat2<TruncSeries> X0{TruncSeries::constant(ap, n), -one, one, zero};
    Mat2<TruncSeries> Cdiag{one, zero, zero, invert_unit(TruncSeries::c_unit(p, n)).pow(h)};
    PhiMat out;
    out.h = h;
    out.m = Lambda * X0 * Cdiag;
    return out;
}

struct HeightCert {
    bool residues_vanish = false;
    HalfInt residual_lb;
    Verdict ok(HalfInt threshold) const {
        if (!residues_vanish) return Verdict::Unknown;
        return residual_lb > threshold ? Verdict::True : Verdict::Unknown;
    }
};

/// Certify det(A) * den = E^h * num through the window (the multiply-only
/// form of det A = (num/den) E^h, so no division is needed).
inline HeightCert finite_height_cert(const PhiMat& A, const TruncSeries& num,
                                     const TruncSeries& den) {
    TruncSeries diff = A.m.det() * den - TruncSeries::e_power(A.h, A.p(), A.trunc_deg()) * num;
    HeightCert cert;
    cert.residues_vanish = true;
    for (std::int64_t i = 0; i <= diff.trunc_deg(); ++i)
        if (!diff.coeff(i).residue_is_zero()) cert.residues_vanish = false;
    cert.residual_lb = diff.v_r2_lb();
    return cert;
}

}  // namespace ssred
