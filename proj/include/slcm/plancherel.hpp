#pragma once
// Inverse Plancherel measures for the cover, computed along four independent
// paths that must agree as exact rational functions of X = q^{-s}:
//
//   1. plan-and-sum: a Fourier sum of matrix entries over the Lagrangian
//      classes, weighted by the central sign of the representation;
//   2. averaging: the mean of the d^2 rank-one (odd cover) or rank-two
//      (doubled cover) inverse measures of the twisted characters;
//   3. closed form: a constant c(sigma) times a quotient of L-factors in the
//      variable q^{-ns};
//   4. trace expansion: a weighted sum of matrix traces over all additive
//      character twists, divided by the central sign.
//
// The module also classifies reducibility of the induced representation,
// checks the conductor-sum identity for odd covers, and realizes the inverse
// measure of an n-fold cover as the mean of inverse measures of related data
// on a smaller cover of matching parity.

#include "slcm/slcm_matrix.hpp"

#include <map>
#include <utility>
#include <vector>

namespace slcm {

// Central sign of the representation attached to (chi, psi_a): the value of
// its central character at the image of -I, against the sign (-1,-1)_n of the
// cover.  Odd covers see only chi(-1); doubled covers pick up the inverse
// index of psi_a at -1.
inline CycNumber central_sign(const GenuineCharData& D) {
    const TameField& T = D.field();
    FStarClass m1 = T.class_minus_one();
    CycNumber out = T.hilbert(m1, m1, T.n()) * mchar_eval(T, D.chi, m1);
    if (D.even()) out = out * D.weil().gamma_twisted(D.psi_a, m1).inv();
    return out;
}

// Rank-one inverse measure: chi(-1) gamma(1-s, chi^{-1}, psi_a) gamma(1+s, chi, psi_a).
inline RatFun rank_one_mu_inverse(const TameField& T, const MultChar& chi, const FStarClass& a) {
    const CycField& F = T.cyc();
    RatFun g_left = to_one_minus_s(T, tate_gamma(T, mchar_inv(T, chi), a));
    RatFun g_right = tate_gamma(T, chi, a).substitute(q_inverse(T), 1);
    return RatFun::constant(F, mchar_eval(T, chi, T.class_minus_one())) * g_left * g_right;
}

// Rank-two inverse measure for the doubled cover:
//   (-1,-1)_2 chi(-1) gamma_{psi_a}(-1)^{-1}
//     gammatilde(1-s, chi^{-1}, psi_a) gammatilde(1+s, chi, psi_a).
inline RatFun rank_two_mu_inverse(const TameField& T, const WeilIndex& W, const MultChar& chi,
                                  const FStarClass& a) {
    const CycField& F = T.cyc();
    FStarClass m1 = T.class_minus_one();
    CycNumber pre =
        T.hilbert(m1, m1, 2) * mchar_eval(T, chi, m1) * W.gamma_twisted(a, m1).inv();
    RatFun g_left = to_one_minus_s(T, meta_gamma(T, W, mchar_inv(T, chi), a));
    RatFun g_right = meta_gamma(T, W, chi, a).substitute(q_inverse(T), 1);
    return RatFun::constant(F, pre) * g_left * g_right;
}

// Path 2: mean over the d^2 twisting classes, each summand the rank-one or
// rank-two inverse measure of the twisted character at the data's psi_a.
inline RatFun plancherel_average(const GenuineCharData& D) {
    const TameField& T = D.field();
    const CycField& F = T.cyc();
    RatFun sum(F);
    for (const MultChar& twist : dual_group(T)) {
        MultChar arg = mchar_mul(T, D.chi, twist);
        sum = sum + (D.even() ? rank_two_mu_inverse(T, D.weil(), arg, D.psi_a)
                              : rank_one_mu_inverse(T, arg, D.psi_a));
    }
    Rational w(1, T.d() * T.d());
    return RatFun::constant(F, CycNumber::from_rational(F, w)) * sum;
}

// Path 1: central sign times the sum over k in Kbar of the matrix entry at
// (identity, k) for chi against the entry at (k^{-1}, identity) for chi^{-1}
// with X inverted (the -s slot).
inline RatFun plancherel_plan_and_sum(const GenuineCharData& D) {
    const TameField& T = D.field();
    const CycField& F = T.cyc();
    LagrangianDecomposition L = D.decomposition();
    MultChar chi_inv = mchar_inv(T, D.chi);
    RatFun sum(F);
    for (const FStarClass& k : L.Kbar) {
        FStarClass kinv = T.class_inv(k);
        MultChar tw_fwd = D.even() ? eta_prime(T, k) : eta(T, k);
        MultChar tw_back = D.even() ? eta_prime(T, kinv) : eta(T, kinv);
        RatFun fwd = partial_gamma_over(D, L.Jbar, mchar_mul(T, chi_inv, tw_fwd), kinv);
        RatFun back =
            to_minus_s(T, partial_gamma_over(D, L.Jbar, mchar_mul(T, D.chi, tw_back), kinv));
        sum = sum + fwd * back;
    }
    return RatFun::constant(F, central_sign(D)) * sum;
}

// L(ns, chi^n) L(-ns, chi^{-n}) / ( L(1-ns, chi^{-n}) L(1+ns, chi^n) ).
inline RatFun l_quotient_nth(const TameField& T, const MultChar& chi) {
    const CycField& F = T.cyc();
    long n = T.n();
    MultChar chin = mchar_pow(T, chi, n);
    MultChar chin_inv = mchar_inv(T, chin);
    RatFun num = l_factor(T, chin).substitute(CycNumber::one(F), n) *
                 l_factor(T, chin_inv).substitute(CycNumber::one(F), -n);
    RatFun den = l_factor(T, chin_inv).substitute(q_inverse(T), -n) *
                 l_factor(T, chin).substitute(q_inverse(T), n);
    return num / den;
}

// Path 3: c(sigma) times the L-factor quotient.  The constant is
// q^{e(psi_a)} when chi^n is unramified and q^{e(psi_a)} times the mean of
// q^{-e((chi eta)^{n/d})} over the d^2 twists when chi^n is ramified, with
// e(psi_a) = -v(a).
inline std::pair<CycNumber, RatFun> plancherel_closed(const GenuineCharData& D) {
    const TameField& T = D.field();
    const CycField& F = T.cyc();
    long nd = T.n() / T.d();
    Rational c = q_power(T, -D.psi_a.val);
    if (!mchar_is_unramified(mchar_pow(T, D.chi, T.n()))) {
        Rational mean(0);
        for (const MultChar& twist : dual_group(T)) {
            MultChar m = mchar_pow(T, mchar_mul(T, D.chi, twist), nd);
            mean += q_power(T, -conductor_exp(m));
        }
        mean /= Rational(T.d() * T.d());
        c *= mean;
    }
    CycNumber c_sigma = CycNumber::from_rational(F, c);
    return {c_sigma, RatFun::constant(F, c_sigma) * l_quotient_nth(T, D.chi)};
}

// Path 4 numerator: the trace expansion
//   d^{-2} sum over classes x of F*/F*^d of
//     |x|^{-1} [ (x,-1)_2 for doubled covers ]
//     T(chi, s, psi_{x a}) T(chi^{-1}, -s, psi_{x a}),
// which must equal central_sign(D) times the inverse measure.  The |x|^{-1}
// weight compensates for the dependence of each trace on the additive twist.
inline RatFun trace_plancherel_sum(const GenuineCharData& D) {
    const TameField& T = D.field();
    const CycField& F = T.cyc();
    FStarClass m1 = T.class_minus_one();
    RatFun sum(F);
    for (const FStarClass& x : T.class_group(T.d())) {
        GenuineCharData fwd = D;
        fwd.psi_a = T.class_mul(x, D.psi_a);
        GenuineCharData back = fwd;
        back.chi = mchar_inv(T, D.chi);
        CycNumber w = CycNumber::from_rational(F, q_power(T, x.val));
        if (D.even()) w = w * T.hilbert(x, m1, 2);
        sum = sum + RatFun::constant(F, w) * trace_T_formula(fwd) *
                        to_minus_s(T, trace_T_formula(back));
    }
    Rational norm(1, T.d() * T.d());
    return RatFun::constant(F, CycNumber::from_rational(F, norm)) * sum;
}

// Reducibility of the induced representation at the unitary point, for
// torsion chi: reducible exactly when the cover degree is odd and the
// restriction of chi to the n-th powers is nontrivial of order two.  The
// report also carries the self-duality flag (chi^{2n} = 1), the order of the
// inverse measure at X = 1 (s = 0), and the cross-check predicate
// "self-dual and the inverse measure is a unit at X = 1".
struct ReducibilityReport {
    bool reducible = false;
    bool self_dual = false;
    long mu_inv_order_at_one = 0;
    bool cross_check = false;
    long pole_order_at_s0() const {
        return mu_inv_order_at_one < 0 ? -mu_inv_order_at_one : 0;
    }
};

inline ReducibilityReport reducibility(const GenuineCharData& D) {
    const TameField& T = D.field();
    MultChar chin = mchar_pow(T, D.chi, T.n());
    ReducibilityReport R;
    R.self_dual = mchar_is_trivial(mchar_pow(T, chin, 2));
    R.reducible = (T.n() % 2 == 1) && R.self_dual && !mchar_is_trivial(chin);
    R.mu_inv_order_at_one = plancherel_closed(D).second.order_at(CycNumber::one(T.cyc()));
    R.cross_check = R.self_dual && R.mu_inv_order_at_one == 0;
    return R;
}

// Conductor-sum identity for odd covers: over the n^2 characters eta that are
// trivial on the n-th powers, sum q^{-e(eta)} = n(n-1)/q + n (n of them are
// unramified, the rest have conductor exponent one).
inline bool conductor_identity_check(const TameField& T) {
    if (T.n() % 2 == 0) throw ConfigError("the conductor-sum identity requires an odd cover");
    Rational lhs(0);
    for (const MultChar& twist : dual_group(T)) lhs += q_power(T, -conductor_exp(twist));
    Rational rhs = Rational(T.n() * (T.n() - 1)) / Rational(T.q()) + Rational(T.n());
    return lhs == rhs;
}

// Data on a smaller cover sharing the inverse measure with D.  The target
// field carries the divisor cover degree m | n with gcd(m,2) = gcd(n,2) and
// the same (p, f); one representative chi*eta is taken per coset of the
// m-torsion dual inside the d-torsion dual, keyed by eta^c with c the odd
// part of m.  For even targets a Weil index table on the target must be
// supplied.
inline std::vector<GenuineCharData> related_reps(const GenuineCharData& D,
                                                 const TameField& target,
                                                 const WeilIndex* target_weil = nullptr) {
    const TameField& T = D.field();
    long m = target.n();
    if (target.p() != T.p() || target.f() != T.f())
        throw ConfigError("related covers must share the residue field");
    if (m <= 0 || T.n() % m != 0 || (m % 2) != (T.n() % 2))
        throw ConfigError("related covers require a divisor of matching parity");
    if (m % 2 == 0 && target_weil == nullptr)
        throw ConfigError("even covers require the Weil index tables");
    long c = target.d();
    std::map<std::pair<long, long>, MultChar> coset_reps;
    for (const MultChar& twist : dual_group(T)) {
        MultChar key = mchar_pow(T, twist, c);
        coset_reps.emplace(std::make_pair(key.unit_exp, key.varpi_exp), twist);
    }
    std::vector<GenuineCharData> out;
    out.reserve(coset_reps.size());
    for (const auto& [key, twist] : coset_reps) {
        GenuineCharData rep;
        rep.field_ptr = &target;
        rep.weil_ptr = target_weil;
        rep.chi = mchar_mul(T, D.chi, twist);
        rep.psi_a = D.psi_a;
        rep.swapped = false;
        out.push_back(rep);
    }
    return out;
}

// Harmonic-mean relation: the inverse measure of D equals the mean of the
// inverse measures of its related data on the target cover.
inline RatFun plancherel_harmonic_mean(const GenuineCharData& D, const TameField& target,
                                       const WeilIndex* target_weil = nullptr) {
    const CycField& F = D.field().cyc();
    std::vector<GenuineCharData> reps = related_reps(D, target, target_weil);
    RatFun sum(F);
    for (const GenuineCharData& rep : reps) sum = sum + plancherel_average(rep);
    Rational w(1, static_cast<long>(reps.size()));
    return RatFun::constant(F, CycNumber::from_rational(F, w)) * sum;
}

// All four paths plus the classification data, for output and verification.
struct PlancherelReport {
    RatFun plan_and_sum;
    RatFun average;
    RatFun closed;
    RatFun trace_path;
    CycNumber c_sigma;
    bool paths_agree = false;
    ReducibilityReport classification;
};

inline PlancherelReport plancherel_report(const GenuineCharData& D) {
    const CycField& F = D.field().cyc();
    auto [c_sigma, closed] = plancherel_closed(D);
    PlancherelReport R{plancherel_plan_and_sum(D),
                       plancherel_average(D),
                       std::move(closed),
                       RatFun::constant(F, central_sign(D).inv()) * trace_plancherel_sum(D),
                       std::move(c_sigma),
                       false,
                       reducibility(D)};
    R.paths_agree = R.plan_and_sum == R.average && R.average == R.closed &&
                    R.closed == R.trace_path;
    return R;
}

}  // namespace slcm
