#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "slcm/cyclotomic.hpp"

namespace slcm {

// Cover bookkeeping for an n-fold cover in odd residue characteristic with
// n | q-1 and n not divisible by 4.  d is the rank of the arithmetic: n when
// n is odd and n/2 when n = 2 mod 4; it is always odd.
struct CoverParams {
    long p = 0, f = 1, n = 1;
    long q = 1;
    long d = 1;
    long order = 8; // cyclotomic working order
};

// A class in F^* / (1 + P): varpi^val times a unit whose residue is
// generator^unit_dlog.  Tame characters and symbols only see this data.
struct FStarClass {
    long val = 0;
    long unit_dlog = 0; // mod q-1

    friend bool operator==(const FStarClass&, const FStarClass&) = default;
};

// The residue field F_q together with the cyclotomic coefficient field
// Q(zeta_N), N = lcm(8, p^depth, q-1).  Residue elements are encoded as
// integers in [0, q) via base-p digits c0 + c1 p + ... of their coordinates
// in the power basis of the defining modulus.
class TameField {
public:
    TameField(long p, long f, long n, std::vector<long> modulus_coeffs = {},
              long extra_p_depth = 1)
        : cover_{p, f, n} {
        long base_order = make_order(p, f, n); // validates p, f, n
        cover_.q = 1;
        for (long i = 0; i < f; ++i) cover_.q *= p;
        cover_.d = (n % 2 == 0) ? n / 2 : n;
        if (extra_p_depth < 1 || extra_p_depth > 3) throw ConfigError("extra_p_depth must be 1..3");
        cover_.order = base_order;
        for (long i = 1; i < extra_p_depth; ++i) cover_.order *= p;
        cyc_ = std::make_unique<CycField>(cover_.order);

        if (f == 1) {
            modulus_ = {0, 1}; // y - 0: the prime field needs no extension
        } else if (!modulus_coeffs.empty()) {
            modulus_ = std::move(modulus_coeffs);
            validate_modulus();
        } else {
            modulus_ = smallest_irreducible();
        }
        build_tables();
    }

    TameField(const TameField&) = delete;
    TameField& operator=(const TameField&) = delete;

    const CoverParams& params() const { return cover_; }
    const CycField& cyc() const { return *cyc_; }
    long p() const { return cover_.p; }
    long f() const { return cover_.f; }
    long n() const { return cover_.n; }
    long q() const { return cover_.q; }
    long d() const { return cover_.d; }
    const std::vector<long>& modulus() const { return modulus_; }

    // ---- residue field arithmetic on encodings ----

    long add(long a, long b) const {
        long r = 0, mult = 1;
        while (a || b) {
            r += ((a % p() + b % p()) % p()) * mult;
            a /= p();
            b /= p();
            mult *= p();
        }
        return r;
    }
    long neg(long a) const {
        long r = 0, mult = 1;
        while (a) {
            r += ((p() - a % p()) % p()) * mult;
            a /= p();
            mult *= p();
        }
        return r;
    }
    long sub(long a, long b) const { return add(a, neg(b)); }

    long mul(long a, long b) const {
        if (a == 0 || b == 0) return 0;
        return exp_table_[(dlog_table_[a] + dlog_table_[b]) % (q() - 1)];
    }
    long inv_res(long a) const {
        if (a == 0) throw DivisionByZeroError();
        return exp_table_[(q() - 1 - dlog_table_[a]) % (q() - 1)];
    }
    long pow_res(long a, long e) const {
        if (a == 0) {
            if (e <= 0) throw DivisionByZeroError();
            return 0;
        }
        return exp_table_[mod_long(dlog_table_[a] * e, q() - 1)];
    }

    long generator() const { return exp_table_[1]; }
    long dlog(long a) const {
        if (a <= 0 || a >= q()) throw ConfigError("dlog of a non-unit residue");
        return dlog_table_[a];
    }
    long exp_g(long e) const { return exp_table_[mod_long(e, q() - 1)]; }
    long trace(long a) const { return trace_table_[a]; } // in [0, p)

    // Teichmueller-style inclusion of residue units into roots of unity.
    CycNumber iota(long t) const { return nth_root(*cyc_, q() - 1, dlog(t)); }

    // Additive character of the residue field: zeta_p^{Tr}.
    CycNumber psi_res(long x) const { return nth_root(*cyc_, p(), trace(x)); }

    // ---- classes in F^*/(1+P) ----

    FStarClass unit_class(long t) const { return {0, dlog(t)}; }
    FStarClass uniformizer() const { return {1, 0}; }
    FStarClass class_from(long val, long unit_dlog) const {
        return {val, mod_long(unit_dlog, q() - 1)};
    }
    FStarClass class_mul(const FStarClass& a, const FStarClass& b) const {
        return {a.val + b.val, mod_long(a.unit_dlog + b.unit_dlog, q() - 1)};
    }
    FStarClass class_inv(const FStarClass& a) const {
        return {-a.val, mod_long(-a.unit_dlog, q() - 1)};
    }
    FStarClass class_pow(const FStarClass& a, long e) const {
        return {a.val * e, mod_long(a.unit_dlog * e, q() - 1)};
    }
    FStarClass class_minus_one() const { return {0, (q() - 1) / 2}; }

    // Representatives varpi^i g^j, 0 <= i, j < m, of F^*/F^{*m} for m | q-1.
    std::vector<FStarClass> class_group(long m) const {
        if ((q() - 1) % m != 0) throw ConfigError("class group order must divide q-1");
        std::vector<FStarClass> out;
        out.reserve(static_cast<size_t>(m) * m);
        for (long i = 0; i < m; ++i)
            for (long j = 0; j < m; ++j) out.push_back({i, j});
        return out;
    }

    // Is x an m-th power modulo (1+P)?  (Equivalently in F^* since 1+P is
    // m-divisible for m coprime to p.)
    bool is_mth_power(const FStarClass& x, long m) const {
        if ((q() - 1) % m != 0) throw ConfigError("power index must divide q-1");
        // x = varpi^val g^dlog is an m-th power iff val = 0 mod m and
        // dlog = 0 mod m (solve i m = val, j m = dlog mod q-1 with m | q-1).
        return mod_long(x.val, m) == 0 && mod_long(x.unit_dlog, m) == 0;
    }

    // ---- tame Hilbert symbol ----

    // (x, y)_m as a root of unity, m | q-1.  Computed from the tame symbol
    // omega(x,y) = (-1)^{v(x)v(y)} xbar^{v(y)} ybar^{-v(x)} raised to (q-1)/m.
    CycNumber hilbert(const FStarClass& x, const FStarClass& y, long m) const {
        return nth_root(*cyc_, q() - 1, hilbert_dlog(x, y, m));
    }

    // dlog of the symbol: exponent of zeta_{q-1}.
    long hilbert_dlog(const FStarClass& x, const FStarClass& y, long m) const {
        if ((q() - 1) % m != 0) throw ConfigError("symbol index must divide q-1");
        long a = mod_long(x.val, 2) * mod_long(y.val, 2) * ((q() - 1) / 2) + x.unit_dlog * y.val -
                 y.unit_dlog * x.val;
        return mod_long(((q() - 1) / m) * mod_long(a, q() - 1), q() - 1);
    }

    std::string describe() const {
        std::string s = "F_" + std::to_string(q()) + " (p=" + std::to_string(p()) +
                        ", f=" + std::to_string(f()) + ", n=" + std::to_string(n()) +
                        ", d=" + std::to_string(d()) + ", N=" + std::to_string(cover_.order) + ")";
        return s;
    }

private:
    // Polynomial residue arithmetic used only while building tables.
    long raw_mul(long a, long b) const {
        std::vector<long> da = digits(a), db = digits(b);
        std::vector<long> prod(da.size() + db.size() - 1, 0);
        for (size_t i = 0; i < da.size(); ++i)
            for (size_t j = 0; j < db.size(); ++j)
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p();
        // reduce modulo the monic modulus
        for (size_t k = prod.size(); k-- > static_cast<size_t>(f());) {
            long c = prod[k];
            if (!c) continue;
            prod[k] = 0;
            for (long i = 0; i < f(); ++i) {
                long sub = (c * modulus_[static_cast<size_t>(i)]) % p();
                size_t pos = k - static_cast<size_t>(f()) + static_cast<size_t>(i);
                prod[pos] = ((prod[pos] - sub) % p() + p()) % p();
            }
        }
        long enc = 0, mult = 1;
        for (long i = 0; i < f(); ++i) {
            enc += prod[static_cast<size_t>(i)] * mult;
            mult *= p();
        }
        return enc;
    }

    std::vector<long> digits(long a) const {
        std::vector<long> d;
        do {
            d.push_back(a % p());
            a /= p();
        } while (a);
        return d;
    }

    long raw_pow(long a, long e) const {
        long r = 1, b = a;
        while (e > 0) {
            if (e & 1) r = raw_mul(r, b);
            b = raw_mul(b, b);
            e >>= 1;
        }
        return r;
    }

    bool is_irreducible(const std::vector<long>& m) const {
        // Trial division by every monic polynomial of degree 1..f/2.
        long deg = static_cast<long>(m.size()) - 1;
        for (long dd = 1; dd * 2 <= deg; ++dd) {
            long count = 1;
            for (long i = 0; i < dd; ++i) count *= p();
            for (long enc = 0; enc < count; ++enc) {
                // divisor y^dd + (digits of enc)
                std::vector<long> div_digits;
                long e = enc;
                for (long i = 0; i < dd; ++i) {
                    div_digits.push_back(e % p());
                    e /= p();
                }
                div_digits.push_back(1);
                // synthetic remainder of m by divisor
                std::vector<long> rem = m;
                for (size_t k = rem.size(); k-- > static_cast<size_t>(dd);) {
                    long c = rem[k];
                    if (!c) continue;
                    rem[k] = 0;
                    for (long i = 0; i < dd; ++i) {
                        size_t pos = k - static_cast<size_t>(dd) + static_cast<size_t>(i);
                        rem[pos] = ((rem[pos] - c * div_digits[static_cast<size_t>(i)]) % p() + p()) % p();
                    }
                }
                bool zero = true;
                for (size_t i = 0; i < static_cast<size_t>(dd); ++i)
                    if (rem[i]) zero = false;
                if (zero) return false;
            }
        }
        return true;
    }

    std::vector<long> smallest_irreducible() const {
        long count = 1;
        for (long i = 0; i < f(); ++i) count *= p();
        for (long enc = 0; enc < count; ++enc) {
            std::vector<long> m;
            long e = enc;
            for (long i = 0; i < f(); ++i) {
                m.push_back(e % p());
                e /= p();
            }
            m.push_back(1);
            if (is_irreducible(m)) return m;
        }
        throw Error("no irreducible modulus found"); // unreachable
    }

    void validate_modulus() {
        if (static_cast<long>(modulus_.size()) != f() + 1 || modulus_.back() != 1)
            throw ConfigError("modulus must be monic of degree f");
        for (long c : modulus_)
            if (c < 0 || c >= p()) throw ConfigError("modulus coefficients must lie in [0, p)");
        if (!is_irreducible(modulus_)) throw ConfigError("modulus is reducible");
    }

    void build_tables() {
        // Generator: smallest encoding with full multiplicative order q-1.
        auto primes = [](long m) {
            std::vector<long> ps;
            for (auto& [pr, e] : factorize(m)) ps.push_back(pr);
            return ps;
        };
        std::vector<long> crit = primes(q() - 1);
        long g = 0;
        for (long t = 1; t < q(); ++t) {
            bool full = true;
            for (long ell : crit)
                if (raw_pow(t, (q() - 1) / ell) == 1) {
                    full = false;
                    break;
                }
            if (full) {
                g = t;
                break;
            }
        }
        if (!g) throw Error("no generator found"); // unreachable: q >= 3 here
        exp_table_.resize(static_cast<size_t>(q() - 1));
        dlog_table_.assign(static_cast<size_t>(q()), -1);
        long cur = 1;
        for (long i = 0; i < q() - 1; ++i) {
            exp_table_[static_cast<size_t>(i)] = cur;
            dlog_table_[static_cast<size_t>(cur)] = i;
            cur = raw_mul(cur, g);
        }
        if (cur != 1) throw Error("generator order wrong"); // unreachable

        // Absolute trace to F_p: Tr(x) = sum of Frobenius images.
        trace_table_.assign(static_cast<size_t>(q()), 0);
        for (long x = 0; x < q(); ++x) {
            long acc = 0, y = x;
            for (long i = 0; i < f(); ++i) {
                acc = add(acc, y);
                y = raw_pow(y, p());
            }
            trace_table_[static_cast<size_t>(x)] = acc % p(); // acc is a prime-field encoding
        }
    }

    CoverParams cover_;
    std::unique_ptr<CycField> cyc_;
    std::vector<long> modulus_;
    std::vector<long> exp_table_, dlog_table_, trace_table_;
};

// Exact rational power q^k (k may be negative).
inline Rational q_power(const TameField& T, long k) {
    mpz_class base(T.q());
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k < 0 ? -k : k));
    if (k >= 0) return Rational(pw);
    Rational r(1);
    r /= Rational(pw);
    return r;
}

} // namespace slcm
