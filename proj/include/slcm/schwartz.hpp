#pragma once

// Exact Schwartz-Bruhat functions on a p-adic field with prime residue field
// (f = 1).  A function is a finite sum of additively twisted coset
// indicators
//
//     phi(x) = sum_i  c_i * psi(b_i x) * 1_{a_i + p^{k_i} O}(x),
//
// a class closed under the Fourier transform.  Everything here is exact:
// pointwise values are cyclotomic numbers, zeta integrals are rational
// functions in X = q^{-s}, and the Fourier transform is a term-by-term
// rewrite.  Additive character values live in the working cyclotomic field,
// so twists may only reach as deep as the p-part of its order allows;
// beyond that DepthError is thrown (construct the field with a larger
// p-depth to go deeper).
//
// Measures: dx gives O volume 1 (self-dual for the normalized psi), and
// zeta integrals use the multiplicative measure dx/|x|, so the unit group
// has volume 1 - 1/q.

#include "slcm/factors.hpp"
#include "slcm/lagrangian.hpp"

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

namespace slcm {

// One twisted indicator term c * psi(b x) * 1_{a + p^k O}(x).  The center a
// and twist b are rationals whose denominators must be powers of p.
struct SchwartzTerm {
    CycNumber c;
    Rational b;
    Rational a;
    long k = 0;
};

struct SchwartzFn {
    std::vector<SchwartzTerm> terms;
};

namespace detail {

// x = A / p^m with m >= 0 minimal for the denominator; rejects denominators
// with prime factors other than p.
inline std::pair<mpz_class, long> p_fraction(long p, const Rational& x) {
    Rational c = x;
    c.canonicalize();
    mpz_class den = c.get_den();
    mpz_class rest;
    long m = static_cast<long>(mpz_remove(rest.get_mpz_t(), den.get_mpz_t(), mpz_class(p).get_mpz_t()));
    if (rest != 1)
        throw ConfigError("coset centers and additive twists need p-power denominators");
    return {c.get_num(), m};
}

// p-adic valuation of a nonzero rational with p-power denominator.
inline long val_p(long p, const Rational& x) {
    auto [num, m] = p_fraction(p, x);
    if (num == 0) throw ConfigError("the zero rational has no valuation");
    mpz_class unit;
    long vnum = static_cast<long>(mpz_remove(unit.get_mpz_t(), num.get_mpz_t(), mpz_class(p).get_mpz_t()));
    return vnum - m;
}

// Residue in (Z/p)^* of x * p^{-val(x)}.
inline long unit_residue(long p, const Rational& x) {
    auto [num, m] = p_fraction(p, x);
    mpz_class unit;
    long vnum = static_cast<long>(mpz_remove(unit.get_mpz_t(), num.get_mpz_t(), mpz_class(p).get_mpz_t()));
    (void)vnum;
    mpz_class r = unit % p;
    if (r < 0) r += p;
    return r.get_si();
}

inline Rational p_power_rational(long p, long k) {
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), mpz_class(p).get_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
    if (k >= 0) return Rational(pw);
    Rational r(1);
    r /= Rational(pw);
    return r;
}

inline void require_prime_base(const TameField& T) {
    if (T.f() != 1)
        throw ConfigError("exact test functions are implemented for prime residue fields only");
}

} // namespace detail

// Largest m with p^m dividing the working cyclotomic order: the depth to
// which additive character values exist exactly.
inline long p_depth(const TameField& T) {
    long m = 0, N = T.cyc().order();
    while (N % T.p() == 0) {
        N /= T.p();
        ++m;
    }
    return m;
}

// The normalized additive character at a rational argument: trivial on O,
// and psi(A / p^m) = zeta_{p^m}^A.  Throws DepthError when p^m does not
// divide the working order.
inline CycNumber psi_q(const TameField& T, const Rational& x) {
    const CycField& F = T.cyc();
    if (x == 0) return CycNumber::one(F);
    auto [num, m] = detail::p_fraction(T.p(), x);
    mpz_class unit;
    long shared = static_cast<long>(
        mpz_remove(unit.get_mpz_t(), num.get_mpz_t(), mpz_class(T.p()).get_mpz_t()));
    if (shared >= m) return CycNumber::one(F);
    m -= shared;
    if (m > p_depth(T))
        throw DepthError("additive twist reaches depth " + std::to_string(m) +
                         " but the working field stops at depth " + std::to_string(p_depth(T)));
    mpz_class mod;
    mpz_pow_ui(mod.get_mpz_t(), mpz_class(T.p()).get_mpz_t(), static_cast<unsigned long>(m));
    mpz_class r = unit % mod;
    if (r < 0) r += mod;
    return nth_root(F, mod.get_si(), r.get_si());
}

// The class in F^*/(1+P) of a nonzero rational (uniformizer p).
inline FStarClass rational_class(const TameField& T, const Rational& x) {
    detail::require_prime_base(T);
    long v = detail::val_p(T.p(), x);
    return {v, T.dlog(detail::unit_residue(T.p(), x))};
}

// phi(x), exactly.
inline CycNumber evaluate(const TameField& T, const SchwartzFn& phi, const Rational& x) {
    detail::require_prime_base(T);
    const CycField& F = T.cyc();
    CycNumber out = CycNumber::zero(F);
    for (const SchwartzTerm& t : phi.terms) {
        Rational diff = x - t.a;
        bool inside = (diff == 0) || detail::val_p(T.p(), diff) >= t.k;
        if (!inside) continue;
        out = out + t.c * psi_q(T, t.b * x);
    }
    return out;
}

// Refines every term to the deepest coset level present, folds twist parts
// that are constant on the refined cosets into the coefficients, merges
// duplicates and drops zero terms.  The result represents the same function
// with pairwise disjoint supports and canonical centers and twists.
inline SchwartzFn normalize(const TameField& T, const SchwartzFn& phi) {
    detail::require_prime_base(T);
    const long p = T.p();
    if (phi.terms.empty()) return {};
    long K = phi.terms.front().k;
    for (const SchwartzTerm& t : phi.terms) K = std::max(K, t.k);

    // x mod p^level O, canonical representative with denominator preserved.
    auto reduce_mod = [&](const Rational& x, long level) -> Rational {
        if (x == 0) return Rational(0);
        auto [num, m] = detail::p_fraction(p, x);
        long e = level + m;
        if (e <= 0) return Rational(0);
        mpz_class mod;
        mpz_pow_ui(mod.get_mpz_t(), mpz_class(p).get_mpz_t(), static_cast<unsigned long>(e));
        mpz_class r = num % mod;
        if (r < 0) r += mod;
        Rational out(r);
        out /= detail::p_power_rational(p, m);
        out.canonicalize();
        return out;
    };

    std::map<std::pair<Rational, Rational>, CycNumber> merged;
    for (const SchwartzTerm& t : phi.terms) {
        Rational center = t.a;
        if (center != 0 && detail::val_p(p, center) >= t.k) center = 0;
        Rational bhat = reduce_mod(t.b, -K);
        Rational brest = t.b - bhat;
        long pieces = 1;
        for (long i = 0; i < K - t.k; ++i) pieces *= p;
        for (long piece = 0; piece < pieces; ++piece) {
            Rational sub = center + Rational(piece) * detail::p_power_rational(p, t.k);
            Rational canon = reduce_mod(sub, K);
            CycNumber coeff = t.c * psi_q(T, brest * canon);
            auto key = std::make_pair(canon, bhat);
            auto it = merged.find(key);
            if (it == merged.end())
                merged.emplace(key, coeff);
            else
                it->second = it->second + coeff;
        }
    }

    SchwartzFn out;
    for (const auto& [key, c] : merged) {
        if (c.is_zero()) continue;
        out.terms.push_back({c, key.second, key.first, K});
    }
    return out;
}

// integral of phi over the field, dx-measure.
inline CycNumber integral(const TameField& T, const SchwartzFn& phi) {
    detail::require_prime_base(T);
    const CycField& F = T.cyc();
    CycNumber out = CycNumber::zero(F);
    for (const SchwartzTerm& t : phi.terms) {
        if (t.b != 0 && detail::val_p(T.p(), t.b) < -t.k) continue;
        CycNumber vol = CycNumber::from_rational(F, q_power(T, -t.k));
        out = out + t.c * psi_q(T, t.a * t.b) * vol;
    }
    return out;
}

// Fourier transform with respect to the normalized additive character and
// the self-dual measure: each term maps to one term, and transforming twice
// returns x -> phi(-x).
inline SchwartzFn fourier(const TameField& T, const SchwartzFn& phi) {
    detail::require_prime_base(T);
    SchwartzFn out;
    out.terms.reserve(phi.terms.size());
    for (const SchwartzTerm& t : phi.terms) {
        CycNumber scale = CycNumber::from_rational(T.cyc(), q_power(T, -t.k));
        CycNumber c = t.c * scale * psi_q(T, t.a * t.b);
        out.terms.push_back({c, t.a, -t.b, -t.k});
    }
    return out;
}

enum class ZetaSlot { S, OneMinusS };

namespace detail {

enum class ShellFilter { None, Valuation, UnitClass };

// zeta(s, chi, phi) as a rational function in X = q^{-s}, optionally
// restricted to the coset of (F^*)^d selected by the filter: Valuation
// keeps shells with v = r mod d, UnitClass keeps points whose unit part
// lies in the dlog-class r mod d.
inline RatFun zeta_filtered(const TameField& T, const SchwartzFn& phi, const MultChar& chi,
                            ShellFilter filter, long r) {
    require_prime_base(T);
    const CycField& F = T.cyc();
    const long p = T.p(), q = T.q(), d = T.d();
    if (filter != ShellFilter::None) r = mod_long(r, d);
    RatFun out(F);

    auto shell_char = [&](long v) { return mchar_eval(T, chi, FStarClass{v, 0}); };
    auto val_ok = [&](long v) { return filter != ShellFilter::Valuation || mod_long(v - r, d) == 0; };
    auto unit_ok = [&](long t_res) {
        return filter != ShellFilter::UnitClass || mod_long(T.dlog(t_res) - r, d) == 0;
    };

    // Mean over the unit group of chi against the per-point filter: the
    // weight of every full tail shell.
    CycNumber tail_weight = CycNumber::zero(F);
    for (long t = 1; t < q; ++t)
        if (unit_ok(t)) tail_weight = tail_weight + mchar_eval_unit(T, chi, t);
    tail_weight = tail_weight.scaled(make_rational(1, q));

    for (const SchwartzTerm& term : phi.terms) {
        bool ideal = (term.a == 0) || val_p(p, term.a) >= term.k;
        if (!ideal) {
            // Single shell v = val(a): the coset sits inside p^v O^*.
            long v = val_p(p, term.a);
            if (!val_ok(v)) continue;
            long j = term.k - v;
            long m = 0;
            if (term.b != 0) m = std::max(0L, -(val_p(p, term.b) + v));
            if (m > j) continue; // full additive character sum: zero
            Rational aprime = term.a / p_power_rational(p, v);
            long res = unit_residue(p, aprime);
            if (!unit_ok(res)) continue;
            CycNumber I = psi_q(T, term.a * term.b) * mchar_eval_unit(T, chi, res);
            I = I.scaled(q_power(T, -j));
            out = out + RatFun::monomial(F, v, term.c * shell_char(v) * I);
            continue;
        }

        // Support p^k O: every shell v >= k against the full unit group.
        long vb = term.b == 0 ? 0 : val_p(p, term.b);
        long tail_from = term.k;
        if (term.b != 0) {
            tail_from = std::max(term.k, -vb);
            long v1 = -vb - 1; // the only shell where the twist is ramified but shallow
            if (v1 >= term.k && val_ok(v1)) {
                CycNumber sum = CycNumber::zero(F);
                Rational beta = term.b * p_power_rational(p, v1);
                for (long t = 1; t < q; ++t) {
                    if (!unit_ok(t)) continue;
                    sum = sum + mchar_eval_unit(T, chi, t) * psi_q(T, beta * Rational(t));
                }
                sum = sum.scaled(make_rational(1, q));
                out = out + RatFun::monomial(F, v1, term.c * shell_char(v1) * sum);
            }
            // shells k <= v < v1 have depth >= 2 twists: exactly zero
        }
        if (tail_weight.is_zero()) continue;
        long v0 = tail_from;
        long step = 1;
        if (filter == ShellFilter::Valuation) {
            step = d;
            v0 = tail_from + mod_long(r - tail_from, d);
        }
        RatFun head = RatFun::monomial(F, v0, term.c * shell_char(v0) * tail_weight);
        RatFun ratio = RatFun::monomial(F, step, shell_char(step));
        out = out + head / (RatFun::constant(F, CycNumber::one(F)) - ratio);
    }
    return out;
}

} // namespace detail

// The Tate integral of phi against chi |.|^s, exact in X = q^{-s}.  The
// OneMinusS slot returns the same integral written at 1-s (X -> 1/(qX)).
inline RatFun zeta(const TameField& T, const SchwartzFn& phi, const MultChar& chi,
                   ZetaSlot slot = ZetaSlot::S) {
    RatFun z = detail::zeta_filtered(T, phi, chi, detail::ShellFilter::None, 0);
    return slot == ZetaSlot::S ? z : to_one_minus_s(T, z);
}

// The same integral restricted to the coset J k of the subgroup J attached
// to the decomposition: valuation classes mod d for the standard
// decomposition, unit dlog classes mod d for the swapped one.
inline RatFun partial_zeta(const TameField& T, const SchwartzFn& phi, const MultChar& chi,
                           const FStarClass& k, const LagrangianDecomposition& L,
                           ZetaSlot slot = ZetaSlot::S) {
    detail::ShellFilter f = L.swapped ? detail::ShellFilter::UnitClass : detail::ShellFilter::Valuation;
    long r = L.swapped ? k.unit_dlog : k.val;
    RatFun z = detail::zeta_filtered(T, phi, chi, f, r);
    return slot == ZetaSlot::S ? z : to_one_minus_s(T, z);
}

} // namespace slcm
