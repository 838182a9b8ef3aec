#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "slcm/errors.hpp"
#include "slcm/rational.hpp"

namespace slcm {

// ---------------------------------------------------------------------------
// small number theory on machine integers
// ---------------------------------------------------------------------------

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::pair<long, int>> factorize(long n) {
    std::vector<std::pair<long, int>> fs;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) { n /= d; ++e; }
            fs.emplace_back(d, e);
        }
    }
    if (n > 1) fs.emplace_back(n, 1);
    return fs;
}

inline long euler_phi(long n) {
    long r = n;
    for (auto& [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

inline long radical(long n) {
    long r = 1;
    for (auto& [p, e] : factorize(n)) r *= p;
    return r;
}

inline std::vector<long> divisors(long n) {
    std::vector<long> ds;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            ds.push_back(d);
            if (d != n / d) ds.push_back(n / d);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

inline long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

inline long mod_long(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

inline long pow_long_checked(long base, long exp, const char* what) {
    long r = 1;
    for (long i = 0; i < exp; ++i) {
        if (r > (1L << 40) / base) throw ConfigError(std::string(what) + ": size out of supported range");
        r *= base;
    }
    return r;
}

// Cyclotomic order for a tame context: every value the engine produces lies in
// Q(zeta_N) with N = lcm(8, p, q-1).  The 8 covers the eighth roots from Weil
// indices and the sign normalization of sqrt q, p covers the additive
// characters of the residue field, q-1 the multiplicative ones.
inline long make_order(long p, long f, long n) {
    if (!is_prime(p)) throw ConfigError("residue characteristic must be prime");
    if (p == 2) throw ConfigError("even residue characteristic is out of scope (tame case only)");
    if (f < 1) throw ConfigError("residue degree must be positive");
    long q = pow_long_checked(p, f, "q = p^f");
    if (n < 1 || (q - 1) % n != 0) throw ConfigError("cover degree must divide q-1");
    if (n % 4 == 0) throw ConfigError("cover degree divisible by 4 is out of scope");
    return lcm_long(lcm_long(8, p), q - 1);
}

// ---------------------------------------------------------------------------
// integer cyclotomic polynomials
// ---------------------------------------------------------------------------

namespace detail {

// Exact division of dense integer polynomials, divisor monic.
inline std::vector<Integer> zp_div_exact(std::vector<Integer> num, const std::vector<Integer>& den) {
    std::vector<Integer> q(num.size() - den.size() + 1);
    for (size_t k = q.size(); k-- > 0;) {
        Integer c = num[k + den.size() - 1];
        q[k] = c;
        if (c == 0) continue;
        for (size_t i = 0; i < den.size(); ++i) num[k + i] -= c * den[i];
    }
    return q;
}

} // namespace detail

// Phi_n as a dense integer polynomial.  Built by recursive division of
// x^m - 1 by Phi_d over the proper divisors d | m on the squarefree radical,
// then inflating x -> x^{n/rad(n)}; the inflation identity keeps the huge
// orders used by the deep-shell checks tractable.
inline std::vector<Integer> cyclotomic_polynomial(long n) {
    if (n < 1) throw ConfigError("cyclotomic index must be positive");
    if (n == 1) return {Integer(-1), Integer(1)};
    long rad = radical(n);
    std::vector<Integer> base;
    if (rad == n) {
        std::vector<Integer> poly(static_cast<size_t>(n) + 1);
        poly[0] = -1;
        poly[static_cast<size_t>(n)] = 1;
        for (long d : divisors(n))
            if (d != n) poly = detail::zp_div_exact(std::move(poly), cyclotomic_polynomial(d));
        base = std::move(poly);
    } else {
        base = cyclotomic_polynomial(rad);
    }
    if (rad == n) return base;
    long stride = n / rad;
    std::vector<Integer> out(static_cast<size_t>(euler_phi(n)) + 1);
    for (size_t i = 0; i < base.size(); ++i)
        if (base[i] != 0) out[i * static_cast<size_t>(stride)] = base[i];
    return out;
}

// ---------------------------------------------------------------------------
// the field Q(zeta_N)
// ---------------------------------------------------------------------------

// Shared per-context data: the order N, phi(N), and Phi_N stored sparsely.
// CycNumbers hold a pointer to their field; fields must outlive their values.
class CycField {
public:
    explicit CycField(long order) : order_(order) {
        if (order < 1) throw ConfigError("cyclotomic order must be positive");
        degree_ = euler_phi(order);
        auto poly = cyclotomic_polynomial(order);
        for (long e = 0; e < degree_; ++e)
            if (poly[static_cast<size_t>(e)] != 0) tail_.emplace_back(e, poly[static_cast<size_t>(e)]);
    }

    long order() const { return order_; }
    long degree() const { return degree_; }

    // Phi_N minus its leading monomial, sparse ascending.
    const std::vector<std::pair<long, Integer>>& modulus_tail() const { return tail_; }

    // Rewrites zeta^e for e >= phi(N) using Phi_N until every exponent is in
    // [0, phi(N)); exponents must be nonnegative on entry.
    void reduce(std::map<long, Rational>& acc) const {
        while (!acc.empty()) {
            auto top = std::prev(acc.end());
            long e = top->first;
            if (e < degree_) break;
            Rational c = top->second;
            acc.erase(top);
            if (c == 0) continue;
            for (auto& [d, a] : tail_) acc[e - degree_ + d] -= c * Rational(a);
        }
        for (auto it = acc.begin(); it != acc.end();)
            it = (it->second == 0) ? acc.erase(it) : std::next(it);
    }

private:
    long order_;
    long degree_;
    std::vector<std::pair<long, Integer>> tail_;
};

// One element of Q(zeta_N) in the canonical power basis 1, zeta, ...,
// zeta^{phi(N)-1}.  Stored sparsely but with canonical coordinates, so
// equality is plain coordinate comparison.  A default-constructed value is a
// detached zero that combines with values of any field.
class CycNumber {
public:
    CycNumber() : fld_(nullptr) {}

    static CycNumber zero(const CycField& F) { return CycNumber(&F); }

    static CycNumber one(const CycField& F) { return from_rational(F, Rational(1)); }

    static CycNumber from_rational(const CycField& F, const Rational& r) {
        CycNumber x(&F);
        if (r != 0) x.terms_.emplace_back(0, r);
        return x;
    }

    const CycField* field() const { return fld_; }
    bool detached() const { return fld_ == nullptr; }
    bool is_zero() const { return terms_.empty(); }

    bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }

    Rational rational_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_rational()) throw Error("value is not rational");
        return terms_[0].second;
    }

    bool is_monomial() const { return terms_.size() == 1; }

    const std::vector<std::pair<long, Rational>>& terms() const { return terms_; }

    friend CycNumber operator+(const CycNumber& a, const CycNumber& b) {
        const CycField* F = merge_fields(a, b);
        if (!F) return CycNumber();
        CycNumber r(F);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto ia = a.terms_.begin(), ib = b.terms_.begin();
        while (ia != a.terms_.end() || ib != b.terms_.end()) {
            if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first)) {
                r.terms_.push_back(*ia++);
            } else if (ia == a.terms_.end() || ib->first < ia->first) {
                r.terms_.push_back(*ib++);
            } else {
                Rational c = ia->second + ib->second;
                if (c != 0) r.terms_.emplace_back(ia->first, c);
                ++ia, ++ib;
            }
        }
        return r;
    }

    friend CycNumber operator-(const CycNumber& a) {
        CycNumber r = a;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    friend CycNumber operator-(const CycNumber& a, const CycNumber& b) { return a + (-b); }

    friend CycNumber operator*(const CycNumber& a, const CycNumber& b) {
        const CycField* F = merge_fields(a, b);
        if (!F || a.is_zero() || b.is_zero()) return F ? zero(*F) : CycNumber();
        if (a.terms_.size() == 1 && b.terms_.size() == 1) {
            CycNumber r = root_of_unity(*F, a.terms_[0].first + b.terms_[0].first);
            return r.scaled(a.terms_[0].second * b.terms_[0].second);
        }
        std::map<long, Rational> acc;
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) acc[ea + eb] += ca * cb;
        F->reduce(acc);
        return CycNumber(F, std::move(acc));
    }

    friend CycNumber operator*(const Rational& c, const CycNumber& a) { return a.scaled(c); }
    friend CycNumber operator*(const CycNumber& a, const Rational& c) { return a.scaled(c); }

    friend CycNumber operator/(const CycNumber& a, const CycNumber& b) { return a * b.inv(); }

    friend bool operator==(const CycNumber& a, const CycNumber& b) {
        if (a.fld_ && b.fld_ && a.fld_->order() != b.fld_->order()) throw OrderMismatchError();
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const CycNumber& a, const CycNumber& b) { return !(a == b); }

    CycNumber scaled(const Rational& c) const {
        if (c == 0) return fld_ ? zero(*fld_) : CycNumber();
        CycNumber r = *this;
        for (auto& [e, k] : r.terms_) k *= c;
        return r;
    }

    // zeta_N^e, e arbitrary (reduced mod N, then into the power basis).
    static CycNumber root_of_unity(const CycField& F, long e) {
        e = mod_long(e, F.order());
        if (e < F.degree()) {
            CycNumber r(&F);
            r.terms_.emplace_back(e, Rational(1));
            return r;
        }
        std::map<long, Rational> acc;
        acc[e] = Rational(1);
        F.reduce(acc);
        return CycNumber(&F, std::move(acc));
    }

    // Galois conjugation zeta -> zeta^{-1}; complex conjugation under the
    // fixed embedding zeta_N = e^{2 pi i / N}.
    CycNumber conj() const {
        if (!fld_ || terms_.empty()) return *this;
        std::map<long, Rational> acc;
        long N = fld_->order();
        for (auto& [e, c] : terms_) acc[e == 0 ? 0 : N - e] += c;
        fld_->reduce(acc);
        return CycNumber(fld_, std::move(acc));
    }

    CycNumber inv() const {
        if (terms_.empty()) throw DivisionByZeroError();
        const CycField& F = *fld_;
        if (terms_.size() == 1) {
            auto& [e, c] = terms_[0];
            return root_of_unity(F, -e).scaled(Rational(1) / c);
        }
        // Extended Euclid against Phi_N over Q; Phi_N is irreducible, so the
        // gcd is a unit and the Bezout coefficient is the inverse.
        return euclid_inverse(F);
    }

    // zeta^k |-> zeta^{k e} on every monomial; only valid when gcd(e, N) = 1
    // (a Galois action).  Used by tests.
    CycNumber galois(long e) const {
        if (!fld_) return *this;
        if (std::gcd(mod_long(e, fld_->order()), fld_->order()) != 1)
            throw ConfigError("galois exponent not coprime to the order");
        std::map<long, Rational> acc;
        // canonical coordinates are not stable under e-multiplication of the
        // power basis, so go through the monomials of the stored form: each
        // stored term c zeta^k is a genuine monomial, so this is exact.
        for (auto& [k, c] : terms_) acc[mod_long(k * e, fld_->order())] += c;
        fld_->reduce(acc);
        return CycNumber(fld_, std::move(acc));
    }

    CycNumber pow(long e) const {
        if (e < 0) return inv().pow(-e);
        const CycField* F = fld_;
        if (!F) return *this; // detached zero (e == 0 on detached is undefined; treat as zero)
        if (terms_.size() == 1) {
            Rational c = rational_pow(terms_[0].second, e);
            return root_of_unity(*F, terms_[0].first * e).scaled(c);
        }
        CycNumber r = one(*F), b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            b = (e >>= 1) ? b * b : b;
        }
        return r;
    }

    std::vector<Rational> to_dense() const {
        long n = fld_ ? fld_->degree() : 0;
        std::vector<Rational> v(static_cast<size_t>(n), Rational(0));
        for (auto& [e, c] : terms_) v[static_cast<size_t>(e)] = c;
        while (!v.empty() && v.back() == 0) v.pop_back();
        return v;
    }

    // Canonical text form "N:[c0/d0,c1/d1,...]" with phi(N) dense entries.
    std::string str() const {
        if (!fld_) return "0:[]";
        std::ostringstream os;
        os << fld_->order() << ":[";
        auto it = terms_.begin();
        for (long e = 0; e < fld_->degree(); ++e) {
            if (e) os << ",";
            if (it != terms_.end() && it->first == e) {
                os << rational_string(it->second);
                ++it;
            } else {
                os << "0/1";
            }
        }
        os << "]";
        return os.str();
    }

    static CycNumber parse(const CycField& F, const std::string& s) {
        auto colon = s.find(':');
        if (colon == std::string::npos || s.size() < colon + 3 || s[colon + 1] != '[' || s.back() != ']')
            throw ConfigError("bad cyclotomic literal: " + s);
        long order = std::stol(s.substr(0, colon));
        if (order != F.order()) throw OrderMismatchError();
        std::string body = s.substr(colon + 2, s.size() - colon - 3);
        CycNumber x(&F);
        long e = 0;
        size_t pos = 0;
        while (pos <= body.size() && !body.empty()) {
            size_t comma = body.find(',', pos);
            std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            Rational c = parse_rational(item);
            if (c != 0) x.terms_.emplace_back(e, c);
            ++e;
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (e != F.degree() && !(e == 0 && F.degree() == 0))
            throw ConfigError("cyclotomic literal has wrong length");
        return x;
    }

private:
    explicit CycNumber(const CycField* F) : fld_(F) {}

    CycNumber(const CycField* F, std::map<long, Rational>&& acc) : fld_(F) {
        terms_.reserve(acc.size());
        for (auto& [e, c] : acc)
            if (c != 0) terms_.emplace_back(e, c);
    }

    CycNumber(const CycField* F, std::vector<std::pair<long, Rational>>&& t)
        : fld_(F), terms_(std::move(t)) {}

    static const CycField* merge_fields(const CycNumber& a, const CycNumber& b) {
        if (a.fld_ && b.fld_ && a.fld_->order() != b.fld_->order()) throw OrderMismatchError();
        return a.fld_ ? a.fld_ : b.fld_;
    }

    static std::vector<Rational> dense_modulus(const CycField& F) {
        std::vector<Rational> m(static_cast<size_t>(F.degree()) + 1, Rational(0));
        m[static_cast<size_t>(F.degree())] = 1;
        for (auto& [e, c] : F.modulus_tail()) m[static_cast<size_t>(e)] = Rational(c);
        return m;
    }

    static void trim(std::vector<Rational>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    }

    static void monicize(std::vector<Rational>& r, std::vector<Rational>& t) {
        Rational lc = r.back();
        if (lc == 1) return;
        for (auto& c : r) c /= lc;
        for (auto& c : t) c /= lc;
    }

    // num <- num mod den (den monic); returns the quotient.
    static std::vector<Rational> divmod_monic(std::vector<Rational>& num, const std::vector<Rational>& den) {
        std::vector<Rational> q;
        if (num.size() >= den.size()) q.assign(num.size() - den.size() + 1, Rational(0));
        while (num.size() >= den.size()) {
            Rational c = num.back();
            size_t shift = num.size() - den.size();
            q[shift] = c;
            for (size_t i = 0; i + 1 < den.size(); ++i) num[shift + i] -= c * den[i];
            num.pop_back();
            trim(num);
        }
        return q;
    }

    // t2 -= q * t1
    static void poly_submul(std::vector<Rational>& t2, const std::vector<Rational>& q,
                            const std::vector<Rational>& t1) {
        if (q.empty() || t1.empty()) return;
        if (t2.size() < q.size() + t1.size() - 1) t2.resize(q.size() + t1.size() - 1, Rational(0));
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < t1.size(); ++j) t2[i + j] -= q[i] * t1[j];
        }
        trim(t2);
    }

    CycNumber euclid_inverse(const CycField& F) const {
        std::vector<Rational> r0 = dense_modulus(F);
        std::vector<Rational> r1 = to_dense();
        std::vector<Rational> t0, t1{Rational(1)};
        monicize(r1, t1);
        while (!r1.empty()) {
            std::vector<Rational> q = divmod_monic(r0, r1); // r0 becomes remainder
            std::vector<Rational> t2 = t0;
            poly_submul(t2, q, t1);
            r0.swap(r1);   // r0 = old r1 (current divisor), r1 = remainder
            t0.swap(t1);
            t1.swap(t2);   // pairs (r0,t0) and (r1,t1) stay matched
            if (!r1.empty()) monicize(r1, t1);
        }
        if (r0.size() != 1) throw Error("cyclotomic inverse: gcd not a unit (internal)");
        // r0 = {1} after the final monicize, so t0 * a == 1 mod Phi_N.
        std::map<long, Rational> acc;
        for (size_t e = 0; e < t0.size(); ++e)
            if (t0[e] != 0) acc[static_cast<long>(e)] = t0[e];
        F.reduce(acc);
        return CycNumber(&F, std::move(acc));
    }

    const CycField* fld_;
    std::vector<std::pair<long, Rational>> terms_;
};

inline CycNumber root_of_unity(const CycField& F, long e) { return CycNumber::root_of_unity(F, e); }

// zeta_m^k inside Q(zeta_N); requires m | N.
inline CycNumber nth_root(const CycField& F, long m, long k) {
    if (m < 1 || F.order() % m != 0) throw OrderMismatchError();
    return CycNumber::root_of_unity(F, mod_long(k, m) * (F.order() / m));
}

// The positive square root of q = p^f under the embedding zeta_N = e^{2pi i/N},
// assembled from quadratic Gauss sums: sqrt p = sum_t (t|p) zeta_p^t for
// p = 1 mod 4 and -zeta_8^2 sum_t (t|p) zeta_p^t for p = 3 mod 4.
inline CycNumber sqrt_q(const CycField& F, long p, long f) {
    if (!is_prime(p) || p == 2) throw ConfigError("sqrt_q needs an odd prime");
    if (F.order() % p != 0 || F.order() % 8 != 0)
        throw OrderMismatchError("field order lacks the roots needed by sqrt_q");
    Rational scale = Rational(integer_pow(p, f / 2));
    if (f % 2 == 0) return CycNumber::from_rational(F, scale);
    CycNumber s = CycNumber::zero(F);
    for (long t = 1; t < p; ++t) {
        long leg = 1, e = (p - 1) / 2, b = t % p, acc = 1;
        while (e) { // t^((p-1)/2) mod p
            if (e & 1) acc = acc * b % p;
            b = b * b % p;
            e >>= 1;
        }
        leg = (acc == 1) ? 1 : -1;
        s = s + nth_root(F, p, t).scaled(Rational(leg));
    }
    if (p % 4 == 3) s = CycNumber::root_of_unity(F, F.order() / 2 + F.order() / 4) * s;
    return s.scaled(scale);
}

} // namespace slcm
