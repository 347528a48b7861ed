#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ssred/errors.hpp"
#include "ssred/kisin.hpp"
#include "ssred/series.hpp"

namespace ssred {

/// nu = -1 + phi(z)(a_p - p^h z), the top-right entry of the rescaled
/// Frobenius matrix and the unit the normalization divides by.
inline TruncSeries build_nu(const TruncSeries& z, long p, std::int64_t h, Prec work) {
    std::int64_t n = z.trunc_deg();
    FieldElem ap = frobenius_trace_ap(p, h).with_prec_cap(work);
    FieldElem ph = FieldElem::integer(p, p).pow(h);
    TruncSeries head = TruncSeries::constant(ap, n) - scalar_mul(ph, z);
    return frobenius(z) * head - TruncSeries::constant(FieldElem::one(p), n);
}

/// Certified valuation estimates for z and nu.  The sharpened clause applies
/// only at p = h = 3, where the constant term of z carries the extra digit.
struct ZEstimates {
    Verdict phz_bound = Verdict::Unknown;         // p^h z in H^o_{h-1}
    Verdict phiz_bound = Verdict::Unknown;        // phi(z) in H^o_{-2}
    bool sharp_applicable = false;
    Verdict phiz_bound_sharp = Verdict::Unknown;  // phi(z) in H^o_{-1}
    Verdict nu_offset = Verdict::Unknown;         // nu + 1 in H^o_{h-3}
    Verdict nu_offset_sharp = Verdict::Unknown;   // nu + 1 in H^o_1
    Verdict nu_unit = Verdict::Unknown;
};

inline ZEstimates z_estimates(const TruncSeries& z, long p, std::int64_t h, Prec work) {
    std::int64_t n = z.trunc_deg();
    ZEstimates out;
    FieldElem ph = FieldElem::integer(p, p).pow(h);
    out.phz_bound = scalar_mul(ph, z).in_Hv(HalfInt::from_int(h - 1), true);
    TruncSeries phiz = frobenius(z);
    out.phiz_bound = phiz.in_Hv(HalfInt::from_int(-2), true);
    out.sharp_applicable = (p == 3 && h == 3);
    if (out.sharp_applicable) out.phiz_bound_sharp = phiz.in_Hv(HalfInt::from_int(-1), true);
    TruncSeries nu = build_nu(z, p, h, work);
    TruncSeries nu1 = nu + TruncSeries::constant(FieldElem::one(p), n);
    out.nu_offset = nu1.in_Hv(HalfInt::from_int(h - 3), true);
    if (out.sharp_applicable) out.nu_offset_sharp = nu1.in_Hv(HalfInt::from_int(1), true);
    out.nu_unit = unit_certificate(nu);
    return out;
}

enum class NormalizeKind { Semistable, Crystalline };

struct NormalizeResult {
    TruncSeries G;
    Mat2<TruncSeries> C;     // base change of this stage: C *_phi A = normalized
    PhiMat normalized;       // (G, -1; E^h, 0), off entries snapped to exact form
    TruncSeries mu;          // leading reference for the offset certificate
    bool snap_residues_vanish = false;
    HalfInt snap_residual_lb;
    Verdict g_offset = Verdict::Unknown;  // G - mu in H^o_h
    std::string path;
};

namespace detail {

/// prod_{n>=0} phi^{2n}(f) for f = 1 + (positive-valuation, u-divisible)
/// part.  Once the iterated Frobenius pushes the whole offset past the
/// window the remaining factors contribute only to the certified tail.
inline TruncSeries phi_square_product(const TruncSeries& f) {
    std::int64_t n = f.trunc_deg();
    long p = f.p();
    TruncSeries one = TruncSeries::constant(FieldElem::one(p), n);
    TruncSeries acc = one;
    TruncSeries cur = f;
    for (;;) {
        acc = acc * cur;
        bool settled = residually_equal(cur, one);
        cur = frobenius(frobenius(cur));
        if (settled) break;
    }
    HalfInt rest = (cur - one).v_r2_lb() + acc.v_r2_lb();
    std::vector<FieldElem> coeffs;
    for (std::int64_t i = 0; i <= n; ++i) coeffs.push_back(acc.coeff(i));
    return TruncSeries::from_coeffs(std::move(coeffs), p, min(acc.tail(), rest));
}

}  // namespace detail

/// Bring A to the shape (G, -1; E^h, 0).
///
/// Semistable input (mu, nu; E^h, eta): first the unipotent change clearing
/// the bottom-right through nu, then the diagonal change built from the
/// convergent products nu_+ = prod phi^{2n}(nu/nu(0)), nu_- = phi(nu_+).
/// Crystalline input (a_p, -c^{-h}; E^h, 0): the diagonal change
/// diag(lambda_-^h, lambda_++^h).
///
/// The off entries of the result are equal to (-1, E^h, 0) as series; this is
/// checked residually (and the residual bound recorded) before they are
/// replaced by their exact forms.
inline NormalizeResult normalize_to_G(const PhiMat& A, NormalizeKind kind, Prec work) {
    std::int64_t n = A.trunc_deg(), h = A.h;
    long p = A.p();
    TruncSeries one = TruncSeries::constant(FieldElem::one(p), n);
    TruncSeries zero = TruncSeries::zero(p, n);
    NormalizeResult out;

    PhiMat A2;
    if (kind == NormalizeKind::Semistable) {
        out.path = "unipotent+diagonal";
        TruncSeries mu = A.m.a, nu = A.m.b, eta = A.m.d;
        TruncSeries nuinv = invert_unit(nu);  // throws NonUnitError when uncertified
        Mat2<TruncSeries> C1{one, zero, -(eta * nuinv), one};
        PhiMat A1 = star_conj(C1, A);
        FieldElem nu0inv = nu.eval0().inverse("normalize_to_G");
        TruncSeries nu_scaled = scalar_mul(nu0inv, nu);
        TruncSeries nup = detail::phi_square_product(nu_scaled);
        TruncSeries num = frobenius(nup);
        TruncSeries c1 = scalar_mul(-nu0inv, num * invert_unit(nup));
        TruncSeries c2 = nup * invert_unit(num);
        Mat2<TruncSeries> C2{c1, zero, zero, c2};
        A2 = star_conj(C2, A1);
        out.C = C2 * C1;
        out.mu = mu;
    } else {
        out.path = "lambda-diagonal";
        auto [lm, lpp] = lambda_products(p, n);
        Mat2<TruncSeries> C{lm.pow(h), zero, zero, lpp.pow(h)};
        A2 = star_conj(C, A);
        out.C = C;
        FieldElem ap = frobenius_trace_ap(p, h).with_prec_cap(work);
        out.mu = scalar_mul(ap, (lm * invert_unit(lpp)).pow(h));
    }

    out.G = A2.m.a;
    TruncSeries Eh = TruncSeries::e_power(h, p, n);
    TruncSeries d_b = A2.m.b + one, d_c = A2.m.c - Eh, d_d = A2.m.d;
    out.snap_residues_vanish = true;
    out.snap_residual_lb = HalfInt::infinity();
    for (const TruncSeries* s : {&d_b, &d_c, &d_d}) {
        for (std::int64_t i = 0; i <= n; ++i)
            if (!s->coeff(i).residue_is_zero()) out.snap_residues_vanish = false;
        out.snap_residual_lb = min(out.snap_residual_lb, s->v_r2_lb());
    }
    out.normalized.h = h;
    out.normalized.m = {out.G, -one, Eh, zero};
    out.g_offset = (out.G - out.mu).in_Hv(HalfInt::from_int(h), true);
    return out;
}

struct GHypotheses {
    Verdict bounded = Verdict::Unknown;       // G in H_{h-1}
    Verdict tail_bounded = Verdict::Unknown;  // T_{>h}(G) in H^o_{h-1}
    Verdict low_integral = Verdict::Unknown;  // T_{<=h}(G) in m_F[u]
    bool all_true() const {
        return is_true(bounded) && is_true(tail_bounded) && is_true(low_integral);
    }
};

inline GHypotheses check_G_hypotheses(const TruncSeries& G, std::int64_t h) {
    GHypotheses out;
    out.bounded = G.in_Hv(HalfInt::from_int(h - 1), false);
    out.tail_bounded = truncate_gt(G, h).in_Hv(HalfInt::from_int(h - 1), true);
    Verdict integral = Verdict::True;
    for (std::int64_t i = 0; i <= h; ++i)
        integral = meet(integral, G.coeff(i).val_gt(HalfInt::from_int(0)));
    out.low_integral = integral;
    return out;
}

struct DescentOptions {
    bool force_run = false;  // run even with uncertified hypotheses
};

namespace detail {

/// Coefficientwise division by u^k for a series supported in degrees > k.
inline TruncSeries shift_down(const TruncSeries& f, std::int64_t k) {
    std::int64_t n = f.trunc_deg();
    std::vector<FieldElem> out(static_cast<std::size_t>(n + 1), FieldElem::zero(f.p()));
    for (std::int64_t i = k + 1; i <= n; ++i)
        out[static_cast<std::size_t>(i - k)] = f.coeff(i);
    HalfInt tail = f.tail().is_infinite() ? HalfInt::infinity() : f.tail() - HalfInt::from_int(k);
    return TruncSeries::from_coeffs(std::move(out), f.p(), tail);
}

/// One normalization of a companion-with-unit matrix (mu, nu; E^h, eta) back
/// to (G, -1; E^h, 0), by the same unipotent + diagonal base change as
/// normalize_to_G but with G taken from its closed form; the accumulated
/// witness is validated once at the end of the descent by the full residual.
struct CompanionStep {
    TruncSeries G;
    Mat2<TruncSeries> C;
};

inline CompanionStep companion_normalize(const TruncSeries& mu, const TruncSeries& nu,
                                         const TruncSeries& eta) {
    std::int64_t n = mu.trunc_deg();
    long p = mu.p();
    TruncSeries one = TruncSeries::constant(FieldElem::one(p), n);
    TruncSeries zero = TruncSeries::zero(p, n);
    TruncSeries nuinv = invert_unit(nu);
    Mat2<TruncSeries> C1{one, zero, -(eta * nuinv), one};
    FieldElem nu0inv = nu.eval0().inverse("companion_normalize");
    TruncSeries nup = phi_square_product(scalar_mul(nu0inv, nu));
    TruncSeries num = frobenius(nup);
    TruncSeries nupp = frobenius(num);
    Mat2<TruncSeries> C2{scalar_mul(-nu0inv, num * invert_unit(nup)), zero, zero,
                         nup * invert_unit(num)};
    CompanionStep out;
    out.G = (mu + nu * frobenius(eta) * invert_unit(frobenius(nu))) * num * num *
            invert_unit(nup * nupp);
    out.C = C2 * C1;
    return out;
}

}  // namespace detail

/// Witness and certificates of a completed descent from the normalized shape.
struct DescentResult {
    Mat2<TruncSeries> C;          // C(0) = I
    std::vector<FieldElem> P;     // degree 0..h coefficients of the target
    GHypotheses hyps;
    bool c0_identity = false;
    HalfInt residual_lb;
    Verdict residual_ok = Verdict::Unknown;   // C A - T phi(C) certified above h
    Verdict p_integral = Verdict::Unknown;    // every coefficient of P in m_F
    Verdict p_tracks_g = Verdict::Unknown;    // v_R2(P - T_{<=h}(G)) > h
    HalfInt p_tracks_lb;
    Verdict det_c_unit = Verdict::Unknown;    // det C in 1 + H_0^o
    std::int64_t rounds = 0;
    std::vector<HalfInt> round_measures;      // error measure before each round
};

/// Iterative removal of the above-degree-h part of G.  Each round conjugates
/// by (1, x; 0, 1) with x = -T_{>h}(G)/u^h, which trades the tail for
/// x(E^h - u^h) of v_{R_2} one higher, then restores the companion shape with
/// the same unipotent + diagonal normalization as before; every base change
/// is the identity at u = 0.  The error measure v_{R_2}(T_{>h}(G)) rises by
/// at least 1 per round until it clears the threshold h (or the window/
/// precision ceiling stalls it, in which case the certificates below come
/// out unknown and the caller escalates).  Convergence is never assumed: the
/// final residual of the accumulated witness is recomputed from scratch.
inline DescentResult descend(const PhiMat& A_norm, const GHypotheses& hyps,
                             const DescentOptions& opt = {}) {
    if (!hyps.all_true() && !opt.force_run)
        throw DescentRefusedError("descend: hypotheses not all certified (" +
                                  to_string(hyps.bounded) + ", " + to_string(hyps.tail_bounded) +
                                  ", " + to_string(hyps.low_integral) + ")");
    const TruncSeries& G = A_norm.m.a;
    std::int64_t n = A_norm.trunc_deg(), h = A_norm.h;
    long p = A_norm.p();
    TruncSeries one = TruncSeries::constant(FieldElem::one(p), n);
    TruncSeries zero = TruncSeries::zero(p, n);
    TruncSeries Eh = TruncSeries::e_power(h, p, n);

    DescentResult out;
    out.hyps = hyps;

    HalfInt stop = HalfInt::from_int(h + 2);
    std::int64_t budget = 2 * n;
    TruncSeries Gt = G;
    Mat2<TruncSeries> Ctot{one, zero, zero, one};
    for (;;) {
        HalfInt m = truncate_gt(Gt, h).v_r2_lb();
        out.round_measures.push_back(m);
        if (m > stop || out.rounds >= budget) break;
        std::size_t sz = out.round_measures.size();
        if (sz >= 2 && !(m > out.round_measures[sz - 2])) break;  // stalled below target

        TruncSeries x = -detail::shift_down(truncate_gt(Gt, h), h);
        TruncSeries phix = frobenius(x);
        TruncSeries mu2 = Gt + x * Eh;
        TruncSeries nu2 = -one - mu2 * phix;
        TruncSeries eta2 = -(Eh * phix);
        detail::CompanionStep step = detail::companion_normalize(mu2, nu2, eta2);
        Mat2<TruncSeries> C1{one, x, zero, one};
        Gt = step.G;
        Ctot = step.C * C1 * Ctot;
        ++out.rounds;
    }

    std::vector<FieldElem> pc(static_cast<std::size_t>(n + 1), FieldElem::zero(p));
    for (std::int64_t i = 0; i <= h; ++i) {
        out.P.push_back(Gt.coeff(i));
        pc[static_cast<std::size_t>(i)] = Gt.coeff(i);
    }
    TruncSeries Pser = TruncSeries::from_coeffs(std::move(pc), p, HalfInt::infinity());

    out.C = Ctot;
    out.c0_identity = residually_equal(Ctot.a.eval0(), FieldElem::one(p)) &&
                      residually_equal(Ctot.d.eval0(), FieldElem::one(p)) &&
                      Ctot.b.eval0().residue_is_zero() && Ctot.c.eval0().residue_is_zero();

    Mat2<TruncSeries> T{Pser, -one, Eh, zero};
    Mat2<TruncSeries> R = Ctot * A_norm.m - T * frobenius(Ctot);
    out.residual_lb = HalfInt::infinity();
    R.for_each([&](const TruncSeries& s) { out.residual_lb = min(out.residual_lb, s.v_r2_lb()); });
    out.residual_ok = out.residual_lb > HalfInt::from_int(h) ? Verdict::True : Verdict::Unknown;

    Verdict integral = Verdict::True;
    for (const FieldElem& c : out.P) integral = meet(integral, c.val_gt(HalfInt::from_int(0)));
    out.p_integral = integral;

    TruncSeries track = Pser - truncate_le(G, h);
    out.p_tracks_lb = track.v_r2_lb();
    out.p_tracks_g = track.in_Hv(HalfInt::from_int(h), true);
    out.det_c_unit = (Ctot.det() - one).in_Hv(HalfInt::from_int(0), true);
    return out;
}

}  // namespace ssred
