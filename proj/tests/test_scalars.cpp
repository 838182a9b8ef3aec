// Exact cyclotomic scalar arithmetic: field axioms, canonical reduction,
// conjugation, inverses, root-of-unity bookkeeping, and the square root of q
// used by half-integral powers.  Expected values here are either frozen
// classical polynomial identities or independent numeric-embedding checks.

#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>

#include "slcm/cyclotomic.hpp"

using namespace slcm;

namespace {

// Independent oracle: evaluate at zeta_N = exp(2*pi*i/N).
std::complex<long double> embed(const CycNumber& a, long N) {
    const long double pi = 3.14159265358979323846264338327950288L;
    std::complex<long double> r = 0;
    for (auto& [e, c] : a.terms()) {
        long double x = 2 * pi * static_cast<long double>(e) / static_cast<long double>(N);
        r += static_cast<long double>(c.get_d()) * std::complex<long double>(std::cos(x), std::sin(x));
    }
    return r;
}

CycNumber random_elem(const CycField& F, std::mt19937_64& rng, int nonzero_terms = 4) {
    std::uniform_int_distribution<long> exp_dist(0, F.degree() - 1);
    std::uniform_int_distribution<long> num_dist(-9, 9);
    std::uniform_int_distribution<long> den_dist(1, 7);
    CycNumber a = CycNumber::zero(F);
    for (int i = 0; i < nonzero_terms; ++i) {
        Rational c = make_rational(num_dist(rng), den_dist(rng));
        a = a + CycNumber::from_rational(F, c) * CycNumber::root_of_unity(F, exp_dist(rng));
    }
    return a;
}

std::vector<Integer> poly_mul(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    std::vector<Integer> c(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

} // namespace

TEST_CASE("context order selection") {
    CHECK(make_order(5, 1, 2) == 40);
    CHECK(make_order(7, 1, 3) == 168);
    CHECK(make_order(7, 1, 6) == 168);
    CHECK(make_order(11, 1, 5) == 440);
    CHECK(make_order(3, 2, 2) == 24);
    CHECK(make_order(13, 1, 3) == 312);

    CHECK_THROWS_AS(make_order(2, 1, 1), ConfigError);  // even residue characteristic
    CHECK_THROWS_AS(make_order(6, 1, 1), ConfigError);  // not prime
    CHECK_THROWS_AS(make_order(7, 0, 1), ConfigError);  // bad extension degree
    CHECK_THROWS_AS(make_order(5, 1, 4), ConfigError);  // 4 | n
    CHECK_THROWS_AS(make_order(5, 1, 3), ConfigError);  // n does not divide q-1
}

TEST_CASE("cyclotomic polynomials") {
    // Frozen small cases.
    CHECK(cyclotomic_polynomial(1) == std::vector<Integer>({-1, 1}));
    CHECK(cyclotomic_polynomial(2) == std::vector<Integer>({1, 1}));
    CHECK(cyclotomic_polynomial(7) == std::vector<Integer>({1, 1, 1, 1, 1, 1, 1}));
    CHECK(cyclotomic_polynomial(8) == std::vector<Integer>({1, 0, 0, 0, 1}));
    CHECK(cyclotomic_polynomial(12) == std::vector<Integer>({1, 0, -1, 0, 1}));
    CHECK(cyclotomic_polynomial(24) == std::vector<Integer>({1, 0, 0, 0, -1, 0, 0, 0, 1}));

    // Product identity prod_{d | n} Phi_d = x^n - 1 for every working order.
    for (long n : {24L, 40L, 168L, 312L, 440L}) {
        std::vector<Integer> prod{1};
        for (long d : divisors(n)) prod = poly_mul(prod, cyclotomic_polynomial(d));
        std::vector<Integer> expect(static_cast<size_t>(n) + 1);
        expect[0] = -1;
        expect[static_cast<size_t>(n)] = 1;
        CHECK(prod == expect);
    }

    auto phi168 = cyclotomic_polynomial(168);
    REQUIRE(phi168.size() == 49);
    for (auto& c : phi168) CHECK((c == -1 || c == 0 || c == 1));
}

TEST_CASE("field axioms and inverses") {
    std::mt19937_64 rng(20260814);
    for (long N : {24L, 168L}) {
        CycField F(N);
        CHECK(F.degree() == euler_phi(N));
        int inv_rounds = (N == 24) ? 400 : 40;
        for (int i = 0; i < inv_rounds; ++i) {
            CycNumber a = random_elem(F, rng), b = random_elem(F, rng), c = random_elem(F, rng);
            CHECK((a + b) + c == a + (b + c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * b == b * a);
            if (!a.is_zero()) {
                CycNumber ai = a.inv();
                CHECK(a * ai == CycNumber::one(F));
            }
        }
    }
    // Big-field smoke: inversion stays exact at degree 160.
    CycField F440(440);
    REQUIRE(F440.degree() == 160);
    for (int i = 0; i < 6; ++i) {
        CycNumber a = random_elem(F440, rng, 3);
        if (a.is_zero()) continue;
        CHECK(a * a.inv() == CycNumber::one(F440));
    }
}

TEST_CASE("detached zero interoperates") {
    CycField F(24);
    CycNumber z; // no field attached
    CHECK(z.is_zero());
    CycNumber a = CycNumber::root_of_unity(F, 5);
    CHECK(z + a == a);
    CHECK(a + z == a);
    CHECK((a * z).is_zero());
    CHECK(z == CycNumber::zero(F));
    CHECK_THROWS_AS(z.inv(), DivisionByZeroError);
}

TEST_CASE("roots of unity") {
    CycField F(168);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-500, 500);
    for (int i = 0; i < 200; ++i) {
        long a = d(rng), b = d(rng);
        CHECK(CycNumber::root_of_unity(F, a) * CycNumber::root_of_unity(F, b) ==
              CycNumber::root_of_unity(F, a + b));
    }
    CHECK(CycNumber::root_of_unity(F, 168) == CycNumber::one(F));
    CHECK(nth_root(F, 8, 1).pow(2) == nth_root(F, 4, 1));
    CHECK(nth_root(F, 2, 1) == -CycNumber::one(F));
    CHECK_THROWS_AS(nth_root(F, 16, 1), OrderMismatchError); // 16 does not divide 168

    // Vanishing sum of all p-th roots.
    CycNumber s = CycNumber::zero(F);
    for (long t = 0; t < 7; ++t) s = s + nth_root(F, 7, t);
    CHECK(s.is_zero());
}

TEST_CASE("conjugation and galois maps") {
    CycField F(168);
    std::mt19937_64 rng(99);
    for (int i = 0; i < 50; ++i) {
        CycNumber a = random_elem(F, rng), b = random_elem(F, rng);
        CHECK(a.conj().conj() == a);
        CHECK((a * b).conj() == a.conj() * b.conj());
        CHECK((a + b).conj() == a.conj() + b.conj());
        CHECK(a.galois(25) * b.galois(25) == (a * b).galois(25)); // gcd(25,168)=1
        CHECK(a.galois(167) == a.conj());
    }
    for (long e = 0; e < 168; e += 11) {
        CycNumber z = CycNumber::root_of_unity(F, e);
        CHECK(z.conj() * z == CycNumber::one(F));
        CHECK(z.inv() == z.conj());
    }
    CHECK_THROWS_AS(random_elem(F, rng).galois(14), ConfigError); // gcd(14,168)>1
}

TEST_CASE("powers") {
    CycField F(40);
    std::mt19937_64 rng(3);
    CycNumber a = random_elem(F, rng);
    CycNumber acc = CycNumber::one(F);
    for (long k = 0; k <= 7; ++k) {
        CHECK(a.pow(k) == acc);
        acc = acc * a;
    }
    if (!a.is_zero()) CHECK(a.pow(-3) == a.inv().pow(3));
}

TEST_CASE("square root of q") {
    struct Case {
        long p, f;
    } cases[] = {{5, 1}, {7, 1}, {11, 1}, {13, 1}, {3, 2}};
    for (auto [p, f] : cases) {
        long N = make_order(p, f, 1);
        CycField F(N);
        CycNumber s = sqrt_q(F, p, f);
        long q = 1;
        for (int i = 0; i < f; ++i) q *= p;
        CHECK(s * s == CycNumber::from_rational(F, Rational(q)));
        CHECK(s.conj() == s);
        // Sign convention: positive under the embedding zeta_N -> exp(2*pi*i/N).
        auto v = embed(s, N);
        CHECK(std::abs(v.imag()) < 1e-9L);
        CHECK(std::abs(v.real() - std::sqrt(static_cast<long double>(q))) < 1e-9L);
    }
    CycField F24(24);
    CHECK(sqrt_q(F24, 3, 2) == CycNumber::from_rational(F24, Rational(3)));
    CHECK_THROWS_AS(sqrt_q(F24, 5, 1), OrderMismatchError); // 5 does not divide 24
}

TEST_CASE("text round trip") {
    CycField F8(8);
    CycNumber half = CycNumber::from_rational(F8, make_rational(1, 2));
    CHECK(half.str() == "8:[1/2,0/1,0/1,0/1]");
    CHECK(CycNumber::parse(F8, "8:[1/2,0/1,0/1,0/1]") == half);

    CycField F(168);
    std::mt19937_64 rng(123);
    for (int i = 0; i < 40; ++i) {
        CycNumber a = random_elem(F, rng);
        CHECK(CycNumber::parse(F, a.str()) == a);
    }
    CHECK_THROWS_AS(CycNumber::parse(F, "24:[1/2]"), OrderMismatchError);
    CHECK_THROWS_AS(CycNumber::parse(F, "168:[1/2]"), ConfigError); // wrong length
    CHECK_THROWS_AS(CycNumber::parse(F, "oops"), ConfigError);
}

TEST_CASE("numeric embedding cross-check of arithmetic") {
    CycField F(24);
    std::mt19937_64 rng(55);
    for (int i = 0; i < 30; ++i) {
        CycNumber a = random_elem(F, rng), b = random_elem(F, rng);
        auto lhs = embed(a * b, 24);
        auto rhs = embed(a, 24) * embed(b, 24);
        CHECK(std::abs(lhs - rhs) < 1e-7L);
    }
}
