#pragma once

#include "slcm/ratfun.hpp"
#include "slcm/tame_field.hpp"

namespace slcm {

// A tame multiplicative character of F^*, determined by its restriction to
// units (a power of iota composed with reduction) and its value at the fixed
// uniformizer (a root of unity in the working field).
//
//   chi(u)     = zeta_{q-1}^{unit_exp * dlog(u)}   for units u
//   chi(varpi) = zeta_N^{varpi_exp}
struct MultChar {
    long unit_exp = 0;  // mod q-1
    long varpi_exp = 0; // mod N

    friend bool operator==(const MultChar&, const MultChar&) = default;
};

inline MultChar mchar_make(const TameField& T, long unit_exp, long varpi_exp) {
    return {mod_long(unit_exp, T.q() - 1), mod_long(varpi_exp, T.cyc().order())};
}

// chi(varpi) = zeta_N^{num * N / den}; den must divide N.
inline MultChar mchar_from_varpi_fraction(const TameField& T, long unit_exp, long num, long den) {
    long N = T.cyc().order();
    if (den <= 0 || N % den != 0)
        throw ConfigError("character value at the uniformizer must have order dividing " +
                          std::to_string(N));
    return mchar_make(T, unit_exp, num * (N / den));
}

inline MultChar mchar_mul(const TameField& T, const MultChar& a, const MultChar& b) {
    return mchar_make(T, a.unit_exp + b.unit_exp, a.varpi_exp + b.varpi_exp);
}
inline MultChar mchar_inv(const TameField& T, const MultChar& a) {
    return mchar_make(T, -a.unit_exp, -a.varpi_exp);
}
inline MultChar mchar_pow(const TameField& T, const MultChar& a, long e) {
    return mchar_make(T, mod_long(a.unit_exp * mod_long(e, T.q() - 1), T.q() - 1),
                      mod_long(a.varpi_exp * mod_long(e, T.cyc().order()), T.cyc().order()));
}

inline bool mchar_is_trivial(const MultChar& a) { return a.unit_exp == 0 && a.varpi_exp == 0; }
inline bool mchar_is_unramified(const MultChar& a) { return a.unit_exp == 0; }

// Conductor exponent: 0 for unramified, 1 otherwise (tame case).
inline long conductor_exp(const MultChar& a) { return mchar_is_unramified(a) ? 0 : 1; }

inline CycNumber mchar_eval(const TameField& T, const MultChar& chi, const FStarClass& x) {
    CycNumber u = nth_root(T.cyc(), T.q() - 1, chi.unit_exp * x.unit_dlog);
    CycNumber w = CycNumber::root_of_unity(T.cyc(), chi.varpi_exp * x.val);
    return u * w;
}

inline CycNumber mchar_eval_unit(const TameField& T, const MultChar& chi, long t_encoding) {
    return nth_root(T.cyc(), T.q() - 1, chi.unit_exp * T.dlog(t_encoding));
}

inline CycNumber chi_of_varpi(const TameField& T, const MultChar& chi) {
    return CycNumber::root_of_unity(T.cyc(), chi.varpi_exp);
}

// The slot-valued character chi |.|^s at x: chi(x) X^{v(x)} with X = q^{-s}.
inline RatFun chi_slot(const TameField& T, const MultChar& chi, const FStarClass& x) {
    return RatFun::monomial(T.cyc(), x.val, mchar_eval(T, chi, x));
}

// Order of chi as a character (exact torsion).
inline long mchar_order(const TameField& T, const MultChar& chi) {
    long N = T.cyc().order();
    long ou = (chi.unit_exp == 0) ? 1 : (T.q() - 1) / std::gcd(chi.unit_exp, T.q() - 1);
    long ow = (chi.varpi_exp == 0) ? 1 : N / std::gcd(chi.varpi_exp, N);
    return lcm_long(ou, ow);
}

// eta_x(y) := (x, y)_m for any odd m dividing q-1, packaged as a MultChar.
// The m-th power norm-residue pairing identifies F^*/F^{*m} with its own
// dual; eta_x is unramified iff x is a unit class.
inline MultChar eta_mod(const TameField& T, const FStarClass& x, long m) {
    long qm1 = T.q() - 1;
    long N = T.cyc().order();
    if (m <= 0 || qm1 % m != 0)
        throw ConfigError("pairing order must divide q-1, got " + std::to_string(m));
    long unit_exp = mod_long(-x.val * (qm1 / m), qm1);
    long varpi_exp = mod_long((N / m) * mod_long(x.unit_dlog + x.val * ((qm1 / 2) % m), m), N);
    return {unit_exp, varpi_exp};
}

// eta_x(y) := (x, y)_d, the pairing of order d used throughout.
inline MultChar eta(const TameField& T, const FStarClass& x) { return eta_mod(T, x, T.d()); }

// The quadratic character y -> (y, x)_2, packaged as a MultChar.
inline MultChar quad_char(const TameField& T, const FStarClass& x) {
    long qm1 = T.q() - 1;
    long N = T.cyc().order();
    long unit_exp = mod_long(x.val * (qm1 / 2), qm1);
    long varpi_exp = (N / 2) * mod_long(x.val * (qm1 / 2) - x.unit_dlog, 2);
    return {unit_exp, varpi_exp};
}

// eta'_x = eta_x^{(d+1)/2}, the square-root-compatible twist used on the
// even-cover side.
inline MultChar eta_prime(const TameField& T, const FStarClass& x) {
    return mchar_pow(T, eta(T, x), (T.d() + 1) / 2);
}

// All d^2 characters of F^*/F^{*d}, indexed by class_group(d).
inline std::vector<MultChar> dual_group(const TameField& T) {
    std::vector<MultChar> out;
    for (auto& x : T.class_group(T.d())) out.push_back(eta(T, x));
    return out;
}

// Do a and b restrict to the same character of the subgroup F^{*c}?
inline bool restriction_equal(const TameField& T, const MultChar& a, const MultChar& b, long c) {
    MultChar ratio = mchar_mul(T, a, mchar_inv(T, b));
    return mchar_is_trivial(mchar_pow(T, ratio, c));
}

// Additive character data: psi_a(x) = psi(ax) for the fixed normalized psi.
// Only the class of a matters in the tame theory.
struct AddCharTwist {
    FStarClass a; // psi_a; the normalized character is a = 1

    long val() const { return a.val; }
};

} // namespace slcm
