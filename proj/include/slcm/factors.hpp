#pragma once

#include "slcm/weil.hpp"

namespace slcm {

// ---------------------------------------------------------------------------
// Slot conventions.  A RatFun in X represents a rational function of q^{-s}.
// Shifting the argument s is the monomial substitution:
//   s -> 1-s    : X -> q^{-1} X^{-1}
//   s -> -s     : X -> X^{-1}
//   s -> s+1/2  : X -> q^{-1/2} X
//   s -> ks     : X -> X^k
// ---------------------------------------------------------------------------

inline CycNumber q_inverse(const TameField& T) {
    return CycNumber::from_rational(T.cyc(), make_rational(1, T.q()));
}

inline RatFun to_one_minus_s(const TameField& T, const RatFun& f) {
    return f.substitute(q_inverse(T), -1);
}

inline RatFun to_minus_s(const TameField& T, const RatFun& f) {
    return f.substitute(CycNumber::one(T.cyc()), -1);
}

// L(s, chi): (1 - chi(varpi) X)^{-1} when chi is unramified, else 1.
inline RatFun l_factor(const TameField& T, const MultChar& chi) {
    const CycField& F = T.cyc();
    if (!mchar_is_unramified(chi)) return RatFun::constant(F, CycNumber::one(F));
    Poly den = Poly::one(F) - Poly::monomial(F, 1, chi_of_varpi(T, chi));
    return RatFun(Poly::one(F), std::move(den));
}

// Residue-field Gauss sum: sum over t in F_q^* of
// zeta_{q-1}^{unit_exp dlog t} zeta_p^{Tr(c t)}.
inline CycNumber gauss_sum(const TameField& T, long unit_exp, long c_encoding) {
    CycNumber s = CycNumber::zero(T.cyc());
    for (long t = 1; t < T.q(); ++t)
        s = s + nth_root(T.cyc(), T.q() - 1, unit_exp * T.dlog(t)) *
                    T.psi_res(T.mul(c_encoding, t));
    return s;
}

// eps(s, chi, psi_a): a monomial c X^k.  Base case (normalized psi, ramified
// chi) comes from the single contributing shell of the local functional
// equation; unramified chi with normalized psi gives 1.  Twisting psi by a
// multiplies by chi(a) |a|^{s-1/2} = chi(a) sqrt(q)^{v(a)} X^{v(a)}.
inline RatFun epsilon_factor(const TameField& T, const MultChar& chi, const FStarClass& a) {
    const CycField& F = T.cyc();
    RatFun base = RatFun::constant(F, CycNumber::one(F));
    if (!mchar_is_unramified(chi)) {
        CycNumber c = chi_of_varpi(T, chi) * gauss_sum(T, -chi.unit_exp, 1);
        base = RatFun::monomial(F, 1, c);
    }
    CycNumber tw = mchar_eval(T, chi, a) * sqrt_q(F, T.p(), T.f()).pow(a.val);
    return RatFun::monomial(F, a.val, tw) * base;
}

// gamma(s, chi, psi_a) = eps(s, chi, psi_a) L(1-s, chi^{-1}) / L(s, chi).
inline RatFun tate_gamma(const TameField& T, const MultChar& chi, const FStarClass& a) {
    RatFun shifted_l = to_one_minus_s(T, l_factor(T, mchar_inv(T, chi)));
    return epsilon_factor(T, chi, a) * shifted_l / l_factor(T, chi);
}

// Independent oracle: gamma(1-s, chi^{-1}, psi_a) computed as the principal
// value of int chi(x)|x|^s psi_a(x) d*x over valuation shells, with the
// measure self-dual for psi_a (a factor |a|^{1/2} against the normalized
// one).  Tame wild shells vanish; the geometric part sums exactly.
inline RatFun shell_integral_gamma(const TameField& T, const MultChar& chi, const FStarClass& a) {
    const CycField& F = T.cyc();
    CycNumber c = chi_of_varpi(T, chi);
    long va = a.val;
    long wbar = T.exp_g(a.unit_dlog); // unit residue of a
    RatFun total(F);

    // Boundary shell m = -1 - v(a): unit integral (1/q) sum_t chi(t) psi(w t).
    CycNumber boundary = CycNumber::zero(F);
    for (long t = 1; t < T.q(); ++t)
        boundary = boundary + mchar_eval_unit(T, chi, t) * T.psi_res(T.mul(wbar, t));
    boundary = boundary * CycNumber::from_rational(F, make_rational(1, T.q()));
    total = total + RatFun::monomial(F, -1 - va, c.pow(-1 - va) * boundary);

    if (mchar_is_unramified(chi)) {
        //

        // Shells m >= -v(a) each contribute (1 - 1/q)(cX)^m; sum the
        // geometric series exactly: (1-1/q)(cX)^{-v(a)} / (1 - cX).
        CycNumber vol = CycNumber::from_rational(F, make_rational(T.q() - 1, T.q()));
        RatFun tail(Poly::constant(F, vol), Poly::one(F) - Poly::monomial(F, 1, c));
        total = total + RatFun::monomial(F, -va, c.pow(-va)) * tail;
    }
    // Deeper shells (two or more psi oscillations) vanish identically in the
    // tame case; that cancellation is verified separately at enlarged depth.

    return RatFun::constant(F, sqrt_q(F, T.p(), T.f()).pow(-va)) * total;
}

// Genuine gamma factor on the cover at the s slot.  For the normalized psi it
// is defined through the quotient
//   gamma(s+1/2, chi', psi) / gamma(2s, chi'^2, psi_2)
// at chi' = chi^{-1}, corrected by chi'(-1) and the index of psi_{-1}, read
// in the 1-s slot; twisting psi multiplies by gamma_psi(a)|a|^{s-1/2}chi(a).
inline RatFun meta_gamma(const TameField& T, const WeilIndex& W, const MultChar& chi,
                         const FStarClass& a) {
    const CycField& F = T.cyc();
    MultChar chip = mchar_inv(T, chi);
    CycNumber sq = sqrt_q(F, T.p(), T.f());

    RatFun num = tate_gamma(T, chip, FStarClass{}).substitute(sq.inv(), 1);
    MultChar chip2 = mchar_pow(T, chip, 2);
    RatFun den = RatFun::constant(F, mchar_eval_unit(T, chip2, 2)) *
                 tate_gamma(T, chip2, FStarClass{}).substitute(CycNumber::one(F), 2);
    CycNumber front = W.gamma(T.class_minus_one()).inv() * mchar_eval(T, chip, T.class_minus_one());
    RatFun base = to_one_minus_s(T, RatFun::constant(F, front) * num / den);

    if (a == FStarClass{}) return base;
    CycNumber tw = W.gamma(a) * sq.pow(a.val) * mchar_eval(T, chi, a);
    return RatFun::monomial(F, a.val, tw) * base;
}

// ---------------------------------------------------------------------------
// Partial factors: averages of gamma over the d unramified twists
//   eta_j = eta at the unit class g^j,  eta_j(varpi) = zeta_d^j,
// weighted against the valuation class of k.  The ramified part of any twist
// is carried by the argument character itself.  Both partials are returned in
// the 1-s slot, which commutes with the average.
// ---------------------------------------------------------------------------

inline std::vector<MultChar> unramified_twists(const TameField& T) {
    std::vector<MultChar> out;
    out.reserve(static_cast<size_t>(T.d()));
    for (long j = 0; j < T.d(); ++j) out.push_back(eta(T, FStarClass{0, j}));
    return out;
}

inline RatFun partial_tate_gamma(const TameField& T, const MultChar& chi, const FStarClass& a,
                                 const FStarClass& k) {
    const CycField& F = T.cyc();
    RatFun sum(F);
    long d = T.d();
    for (long j = 0; j < d; ++j) {
        MultChar ej = eta(T, FStarClass{0, j});
        CycNumber w = nth_root(F, d, -j * k.val); // eta_j(k^{-1})
        sum = sum + w * tate_gamma(T, mchar_mul(T, chi, ej), a);
    }
    Rational w = make_rational(1, d);
    return RatFun::constant(F, CycNumber::from_rational(F, w)) * to_one_minus_s(T, sum);
}

inline RatFun partial_meta_gamma(const TameField& T, const WeilIndex& W, const MultChar& chi,
                                 const FStarClass& a, const FStarClass& k) {
    const CycField& F = T.cyc();
    RatFun sum(F);
    long d = T.d();
    for (long j = 0; j < d; ++j) {
        MultChar ej = eta(T, FStarClass{0, j});
        CycNumber w = nth_root(F, d, -j * k.val);
        sum = sum + w * meta_gamma(T, W, mchar_mul(T, chi, ej), a);
    }
    Rational w = make_rational(1, d);
    return RatFun::constant(F, CycNumber::from_rational(F, w)) * to_one_minus_s(T, sum);
}

// ---------------------------------------------------------------------------
// Closed forms of the partial factors at k = varpi^t (normalized psi).  The
// ramified side collapses to a single surviving index carrying the full
// factor; the unramified side is an explicit L-series filtered along the
// residue of the index, plus a boundary monomial at the wrap-around index.
// The definitional averages above are the oracle.
// ---------------------------------------------------------------------------

inline RatFun closed_partial_tate(const TameField& T, const MultChar& chi, long t) {
    const CycField& F = T.cyc();
    long n = T.n();
    if (!mchar_is_unramified(chi)) {
        // gamma(1-s, chi eta_j, psi) = zeta_n^j gamma(1-s, chi, psi): the
        // average is a pure character sum over j, nonzero only at t = 1.
        if (mod_long(t - 1, n) != 0) return RatFun(F);
        return to_one_minus_s(T, tate_gamma(T, chi, FStarClass{}));
    }
    long tp = mod_long(-t, n);
    CycNumber cinv = chi_of_varpi(T, chi).inv();
    CycNumber vol = CycNumber::from_rational(F, make_rational(T.q() - 1, T.q()));
    // (1 - 1/q)(chi(varpi)^{-1} X)^{t'} / (1 - chi(varpi)^{-n} X^n)
    RatFun series(Poly::monomial(F, tp, vol * cinv.pow(tp)),
                  Poly::one(F) - Poly::monomial(F, n, cinv.pow(n)));
    if (tp == n - 1) {
        // boundary shell: -q^{-1} chi(varpi) X^{-1}
        CycNumber b = CycNumber::from_rational(F, make_rational(-1, T.q())) * chi_of_varpi(T, chi);
        series = series + RatFun::monomial(F, -1, b);
    }
    return series;
}

inline RatFun closed_partial_meta(const TameField& T, const WeilIndex& W, const MultChar& chi,
                                  long t) {
    const CycField& F = T.cyc();
    long d = T.d();
    long inv2 = (d + 1) / 2; // inverse of 2 mod d (d odd)
    MultChar chi2 = mchar_pow(T, chi, 2);
    CycNumber c = chi_of_varpi(T, chi);
    CycNumber vol = CycNumber::from_rational(F, make_rational(T.q() - 1, T.q()));
    CycNumber sqinv = sqrt_q(F, T.p(), T.f()).inv();

    if (!mchar_is_unramified(chi2)) {
        // gamma~(1-s, chi eta_j, psi) = zeta_d^j gamma~(1-s, chi, psi):
        // single surviving index t = 1.
        if (mod_long(t - 1, d) != 0) return RatFun(F);
        return to_one_minus_s(T, meta_gamma(T, W, chi, FStarClass{}));
    }
    Poly lden = Poly::one(F) - Poly::monomial(F, 2 * d, c.inv().pow(2 * d)); // 1 - c^{-2d} X^{2d}
    if (mchar_is_unramified(chi)) {
        // (1-1/q)(c^{-2}X^2)^{t2}/(1 - c^{-2d}X^{2d})  [+ q^{-1/2} c X^{-1} at t = 1]
        long t2 = mod_long(mod_long(-t, d) * inv2, d);
        RatFun out(Poly::monomial(F, 2 * t2, vol * c.inv().pow(2 * t2)), lden);
        if (mod_long(t - 1, d) == 0) out = out + RatFun::monomial(F, -1, sqinv * c);
        return out;
    }
    // chi ramified with chi^2 unramified (unit part is the quadratic
    // character): prefactor chi(-1) G q^{-1/2} c^{-1} X with the quadratic
    // Gauss sum G, an L-series at t5 = (-t-1)/2 mod d, and a boundary
    // monomial at t = 1.
    CycNumber G = gauss_sum(T, chi.unit_exp, 1);
    CycNumber chi_m1 = mchar_eval(T, chi, T.class_minus_one());
    CycNumber pre = chi_m1 * G * sqinv * c.inv();
    long t5 = mod_long((mod_long(-t, d) - 1) * inv2, d);
    RatFun out(Poly::monomial(F, 2 * t5, vol * c.inv().pow(2 * t5)), lden);
    if (mod_long(t - 1, d) == 0) {
        CycNumber b = CycNumber::from_rational(F, make_rational(-1, T.q())) * c.pow(2);
        out = out + RatFun::monomial(F, -2, b);
    }
    return RatFun::monomial(F, 1, pre) * out;
}

} // namespace slcm
