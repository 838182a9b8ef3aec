#pragma once

#include <string>
#include <utility>
#include <vector>

#include "slcm/polynomial.hpp"

namespace slcm {

// Rational function in X over Q(zeta_N), kept in the unique reduced form
// gcd(num, den) = 1 with monic denominator.  Equality of reduced forms is
// therefore literal coefficient equality.
class RatFun {
public:
    RatFun() = default;
    explicit RatFun(const CycField& F) : num_(F), den_(Poly::one(F)) {}
    RatFun(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

    static RatFun constant(const CycField& F, const CycNumber& c) {
        return RatFun(Poly::constant(F, c), Poly::one(F));
    }
    static RatFun from_rational(const CycField& F, const Rational& r) {
        return constant(F, CycNumber::from_rational(F, r));
    }
    static RatFun X(const CycField& F) { return RatFun(Poly::X(F), Poly::one(F)); }
    static RatFun monomial(const CycField& F, long k, const CycNumber& c) {
        if (k >= 0) return RatFun(Poly::monomial(F, k, c), Poly::one(F));
        return RatFun(Poly::constant(F, c), Poly::monomial(F, -k, CycNumber::one(F)));
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const CycField* field() const { return den_.field(); }
    bool is_zero() const { return num_.is_zero(); }

    friend RatFun operator+(const RatFun& a, const RatFun& b) {
        return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFun operator-(const RatFun& a) {
        RatFun r = a;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
    friend RatFun operator*(const RatFun& a, const RatFun& b) {
        return RatFun(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFun operator/(const RatFun& a, const RatFun& b) {
        if (b.is_zero()) throw DivisionByZeroError();
        return RatFun(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend RatFun operator*(const CycNumber& s, const RatFun& a) {
        return RatFun(a.num_.scaled(s), a.den_);
    }
    friend RatFun operator*(const RatFun& a, const CycNumber& s) { return s * a; }

    friend bool operator==(const RatFun& a, const RatFun& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

    RatFun inverse() const {
        if (is_zero()) throw DivisionByZeroError();
        return RatFun(den_, num_);
    }

    RatFun pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        RatFun r = RatFun::constant(*field(), CycNumber::one(*field()));
        RatFun b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            b = (e >>= 1) ? b * b : b;
        }
        return r;
    }

    // f(c X^e) for nonzero c and e != 0; negative e clears X-denominators by
    // scaling both sides with X^(D|e|) before reducing.
    RatFun substitute(const CycNumber& c, long e) const {
        if (e == 0) throw ConfigError("substitute requires a nonzero monomial exponent");
        if (c.is_zero()) throw ConfigError("substitute requires a nonzero monomial coefficient");
        const CycField& F = *field();
        if (e > 0) return RatFun(num_.compose_monomial(c, e), den_.compose_monomial(c, e));
        long k = -e;
        long D = std::max(num_.degree(), den_.degree());
        auto lift = [&](const Poly& f) {
            std::vector<CycNumber> cs(static_cast<size_t>(D * k) + 1);
            CycNumber ci = CycNumber::one(F);
            for (long i = 0; i <= f.degree(); ++i) {
                cs[static_cast<size_t>((D - i) * k)] = f.coeff(i) * ci;
                ci = ci * c;
            }
            return Poly(F, std::move(cs));
        };
        return RatFun(lift(num_), lift(den_));
    }

    CycNumber evaluate(const CycNumber& x) const {
        CycNumber d = den_.eval(x);
        if (d.is_zero()) throw PoleError();
        return num_.eval(x) * d.inv();
    }

    // Vanishing order at X = x: multiplicity in num minus multiplicity in den
    // (negative at a pole).  Zero function has no well-defined order.
    long order_at(const CycNumber& x) const {
        if (is_zero()) throw PoleError("order of the zero function is undefined");
        return root_multiplicity(num_, x) - root_multiplicity(den_, x);
    }

    std::string str() const { return "(" + num_.str() + ")/(" + den_.str() + ")"; }

    static RatFun parse(const CycField& F, const std::string& s);

private:
    void reduce() {
        if (den_.is_zero()) throw DivisionByZeroError();
        const CycField& F = *den_.field();
        if (num_.is_zero()) {
            num_ = Poly(F);
            den_ = Poly::one(F);
            return;
        }
        long v = std::min(num_.valuation(), den_.valuation());
        if (v > 0) { // cheap pre-strip of common X powers
            num_ = strip_valuation(num_, v);
            den_ = strip_valuation(den_, v);
        }
        Poly g = Poly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = Poly::divmod(num_, g).first;
            den_ = Poly::divmod(den_, g).first;
        }
        CycNumber c = den_.lc().inv();
        num_ = num_.scaled(c);
        den_ = den_.scaled(c);
    }

    static Poly strip_valuation(const Poly& f, long v) {
        std::vector<CycNumber> cs(f.coeffs().begin() + v, f.coeffs().end());
        return Poly(*f.field(), std::move(cs));
    }

    static long root_multiplicity(Poly f, const CycNumber& x) {
        long m = 0;
        while (!f.is_zero() && f.eval(x).is_zero()) {
            // synthetic division by (X - x)
            std::vector<CycNumber> q(f.coeffs().size() - 1);
            CycNumber carry = f.lc();
            for (size_t i = q.size(); i-- > 0;) {
                q[i] = carry;
                carry = f.coeffs()[i] + carry * x;
            }
            f = Poly(*f.field(), std::move(q));
            ++m;
        }
        return m;
    }

    Poly num_, den_;
};

namespace detail {

// Split "a,b,c" at top-level commas, respecting [] nesting.
inline std::vector<std::string> split_top_level(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '[') ++depth;
        if (ch == ']') --depth;
        if (ch == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

inline Poly parse_poly(const CycField& F, const std::string& s) {
    std::string body = s;
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
        throw ConfigError("polynomial text must be bracketed: " + s);
    body = body.substr(1, body.size() - 2);
    std::vector<CycNumber> cs;
    for (auto& tok : split_top_level(body)) cs.push_back(CycNumber::parse(F, tok));
    return Poly(F, std::move(cs));
}

} // namespace detail

inline RatFun RatFun::parse(const CycField& F, const std::string& s) {
    auto mid = s.find(")/(");
    if (s.size() < 7 || s.front() != '(' || s.back() != ')' || mid == std::string::npos)
        throw ConfigError("rational function text must look like ([...])/([...]): " + s);
    Poly n = detail::parse_poly(F, s.substr(1, mid - 1));
    Poly d = detail::parse_poly(F, s.substr(mid + 3, s.size() - mid - 4));
    return RatFun(std::move(n), std::move(d));
}

} // namespace slcm
