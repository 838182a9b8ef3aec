#pragma once

#include <gmpxx.h>

#include <string>

#include "slcm/errors.hpp"

namespace slcm {

// Exact scalars are GMP rationals; mpq_class keeps gcd(num, den) = 1 and
// den > 0 after canonicalize(), which is exactly the canonical form we need.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw DivisionByZeroError();
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Serialized as "num/den", always with the denominator, so the text form is
// canonical byte for byte.
inline std::string rational_string(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s.find('/') == std::string::npos ? s + "/1" : s, 10) != 0)
        throw ConfigError("bad rational literal: " + s);
    if (r.get_den() == 0) throw DivisionByZeroError();
    r.canonicalize();
    return r;
}

inline Rational rational_pow(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0) {
        if (e < 0) throw DivisionByZeroError();
        return Rational(0);
    }
    Integer num, den;
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), a);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), a);
    Rational r = (e < 0) ? Rational(den, num) : Rational(num, den);
    r.canonicalize();
    return r;
}

inline Integer integer_pow(long base, long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(e));
    return r;
}

} // namespace slcm
