#pragma once

#include <string>
#include <utility>
#include <vector>

#include "slcm/cyclotomic.hpp"

namespace slcm {

// Dense polynomial over Q(zeta_N) in one variable.  Coefficients are stored
// little-endian with no zero leading coefficient; the zero polynomial has an
// empty coefficient vector and degree -1.
class Poly {
public:
    Poly() : fld_(nullptr) {}
    explicit Poly(const CycField& F) : fld_(&F) {}
    Poly(const CycField& F, std::vector<CycNumber> cs) : fld_(&F), c_(std::move(cs)) { trim(); }

    static Poly constant(const CycField& F, const CycNumber& c) {
        return Poly(F, std::vector<CycNumber>{c});
    }
    static Poly one(const CycField& F) { return constant(F, CycNumber::one(F)); }
    static Poly X(const CycField& F) { return monomial(F, 1, CycNumber::one(F)); }
    static Poly monomial(const CycField& F, long k, const CycNumber& c) {
        std::vector<CycNumber> cs(static_cast<size_t>(k) + 1);
        cs.back() = c;
        return Poly(F, std::move(cs));
    }

    const CycField* field() const { return fld_; }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    const CycNumber& operator[](size_t i) const { return c_[i]; }
    const std::vector<CycNumber>& coeffs() const { return c_; }

    CycNumber coeff(long k) const {
        if (k < 0 || k > degree()) return fld_ ? CycNumber::zero(*fld_) : CycNumber();
        return c_[static_cast<size_t>(k)];
    }
    CycNumber lc() const { return c_.empty() ? CycNumber::zero(*fld_) : c_.back(); }

    // Trailing X-valuation: largest v with X^v | this (0 for the zero poly).
    long valuation() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return static_cast<long>(i);
        return 0;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        const CycField* F = a.fld_ ? a.fld_ : b.fld_;
        std::vector<CycNumber> cs(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < cs.size(); ++i) cs[i] = a.coeff(static_cast<long>(i)) + b.coeff(static_cast<long>(i));
        return Poly(*F, std::move(cs));
    }
    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        const CycField* F = a.fld_ ? a.fld_ : b.fld_;
        if (a.is_zero() || b.is_zero()) return Poly(*F);
        std::vector<CycNumber> cs(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j].is_zero()) continue;
                cs[i + j] = cs[i + j] + a.c_[i] * b.c_[j];
            }
        }
        return Poly(*F, std::move(cs));
    }

    friend Poly operator*(const CycNumber& s, const Poly& a) { return a.scaled(s); }
    friend Poly operator*(const Poly& a, const CycNumber& s) { return a.scaled(s); }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (size_t i = 0; i < a.c_.size(); ++i)
            if (a.c_[i] != b.c_[i]) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly scaled(const CycNumber& s) const {
        const CycField* F = fld_ ? fld_ : s.field();
        if (s.is_zero()) return Poly(*F);
        std::vector<CycNumber> cs(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) cs[i] = c_[i] * s;
        return Poly(*F, std::move(cs));
    }

    Poly shifted(long k) const { // multiply by X^k, k >= 0
        if (is_zero() || k == 0) return *this;
        std::vector<CycNumber> cs(c_.size() + static_cast<size_t>(k));
        for (size_t i = 0; i < c_.size(); ++i) cs[i + static_cast<size_t>(k)] = c_[i];
        return Poly(*fld_, std::move(cs));
    }

    // f(c X^e) for e >= 1.
    Poly compose_monomial(const CycNumber& c, long e) const {
        std::vector<CycNumber> cs(c_.empty() ? 0 : (c_.size() - 1) * static_cast<size_t>(e) + 1);
        CycNumber ck = CycNumber::one(*fld_);
        for (size_t i = 0; i < c_.size(); ++i) {
            cs[i * static_cast<size_t>(e)] = c_[i] * ck;
            ck = ck * c;
        }
        return Poly(*fld_, std::move(cs));
    }

    CycNumber eval(const CycNumber& x) const {
        CycNumber r = CycNumber::zero(*fld_);
        for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
        return r;
    }

    // Division with remainder; throws if b is zero.  Exact when b | a.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw DivisionByZeroError();
        const CycField& F = *b.fld_;
        CycNumber inv_lc = b.lc().inv();
        std::vector<CycNumber> rem = a.c_;
        std::vector<CycNumber> quo(a.c_.size() > b.c_.size() - 1 ? a.c_.size() - b.c_.size() + 1 : 0);
        long db = b.degree();
        long da = static_cast<long>(rem.size()) - 1;
        while (da >= db) {
            if (!rem[static_cast<size_t>(da)].is_zero()) {
                CycNumber c = rem[static_cast<size_t>(da)] * inv_lc;
                quo[static_cast<size_t>(da - db)] = c;
                for (long i = 0; i <= db; ++i)
                    rem[static_cast<size_t>(da - db + i)] =
                        rem[static_cast<size_t>(da - db + i)] - c * b.c_[static_cast<size_t>(i)];
            }
            --da;
        }
        return {Poly(F, std::move(quo)), Poly(F, std::move(rem))};
    }

    // Monic gcd via pseudo-remainders with rational content stripping, so the
    // only true field inversions are the final normalizations.
    static Poly gcd(Poly a, Poly b) {
        const CycField& F = a.fld_ ? *a.fld_ : *b.fld_;
        a.strip_content();
        b.strip_content();
        while (!b.is_zero()) {
            Poly r = pseudo_rem(a, b);
            r.strip_content();
            a = std::move(b);
            b = std::move(r);
        }
        if (a.is_zero()) return a;
        return a.scaled(a.lc().inv());
    }

    std::string str() const {
        std::string s = "[";
        if (c_.empty()) {
            s += CycNumber::zero(*fld_).str();
        } else {
            for (size_t i = 0; i < c_.size(); ++i) {
                if (i) s += ",";
                s += (c_[i].is_zero() ? CycNumber::zero(*fld_) : c_[i]).str();
            }
        }
        return s + "]";
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
        for (auto& c : c_) // re-anchor detached zeros so eval/str have a field
            if (c.detached() && fld_) c = CycNumber::zero(*fld_);
    }

    // lc(b)^k a mod b computed with ring operations only.
    static Poly pseudo_rem(Poly a, const Poly& b) {
        long db = b.degree();
        while (!a.is_zero() && a.degree() >= db) {
            long shift = a.degree() - db;
            a = a * b.lc() - b.shifted(shift) * a.lc();
        }
        return a;
    }

    // Divide out the gcd of every rational appearing in every coefficient.
    void strip_content() {
        Integer num_gcd = 0, den_lcm = 1;
        for (auto& c : c_)
            for (auto& [e, r] : c.terms()) {
                mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), r.get_num().get_mpz_t());
                mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), r.get_den().get_mpz_t());
            }
        if (num_gcd == 0) return;
        Rational content(num_gcd, den_lcm);
        content.canonicalize();
        Rational inv = Rational(1) / content;
        for (auto& c : c_) c = c.scaled(inv);
    }

    const CycField* fld_;
    std::vector<CycNumber> c_;
};

} // namespace slcm
