// Lagrangian decompositions of F*/F*^d: the two varpi/unit decompositions
// pass the exhaustive audit, corrupted ones fail with witnesses, the dual
// group enumeration satisfies orthogonality, the coset indicator identity
// holds, and the order-m pairing characters agree with the symbol values.

#include <array>

#include <catch2/catch_amalgamated.hpp>

#include "slcm/lagrangian.hpp"

using namespace slcm;

namespace {

const std::vector<std::array<long, 3>> kGrid = {
    {5, 1, 2}, {7, 1, 3}, {7, 1, 6}, {11, 1, 5}, {3, 2, 2}, {13, 1, 3},
};

} // namespace

TEST_CASE("standard and swapped decompositions pass the audit") {
    for (auto [p, f, n] : kGrid) {
        CAPTURE(p, f, n);
        TameField T(p, f, n);
        auto std_check = verify_lagrangian(T, standard_decomposition(T));
        CAPTURE(std_check.failure);
        CHECK(std_check.ok);
        auto sw_check = verify_lagrangian(T, swapped_decomposition(T));
        CAPTURE(sw_check.failure);
        CHECK(sw_check.ok);
    }
    TameField T(13, 1, 6);
    CHECK(verify_lagrangian(T, standard_decomposition(T)).ok);
    CHECK(verify_lagrangian(T, swapped_decomposition(T)).ok);
}

TEST_CASE("d=1 swapped decomposition equals standard") {
    TameField T(5, 1, 2);
    auto a = standard_decomposition(T);
    auto b = swapped_decomposition(T);
    REQUIRE(T.d() == 1);
    CHECK(a.Jbar == b.Jbar);
    CHECK(a.Kbar == b.Kbar);
    CHECK_FALSE(a.swapped);
    CHECK(b.swapped);
}

TEST_CASE("corrupted decompositions fail with witnesses") {
    TameField T(7, 1, 3);

    SECTION("whole group is not isotropic") {
        LagrangianDecomposition L = standard_decomposition(T);
        L.Jbar = T.class_group(T.d());
        auto check = verify_lagrangian(T, L);
        REQUIRE_FALSE(check.ok);
        CHECK(check.failure == "Jbar not isotropic");
        REQUIRE(check.witness.size() == 2);
        CHECK(T.hilbert_dlog(check.witness[0], check.witness[1], T.d()) != 0);
    }

    SECTION("two trivial parts are not a direct product decomposition") {
        LagrangianDecomposition L;
        L.Jbar = {FStarClass{0, 0}};
        L.Kbar = {FStarClass{0, 0}};
        auto check = verify_lagrangian(T, L);
        REQUIRE_FALSE(check.ok);
        CHECK(check.failure == "products do not cover quotient");
    }

    SECTION("repeating one part in both roles breaks uniqueness") {
        LagrangianDecomposition L = standard_decomposition(T);
        L.Kbar = L.Jbar;
        auto check = verify_lagrangian(T, L);
        REQUIRE_FALSE(check.ok);
        CHECK(check.failure == "product decomposition not unique");
        CHECK(check.witness.size() == 2);
    }
}

TEST_CASE("dual group enumerates d^2 distinct d-torsion characters") {
    for (auto [p, f, n] : kGrid) {
        CAPTURE(p, f, n);
        TameField T(p, f, n);
        long d = T.d();
        auto dual = dual_group(T);
        REQUIRE(static_cast<long>(dual.size()) == d * d);
        for (size_t a = 0; a < dual.size(); ++a) {
            CHECK(mchar_is_trivial(mchar_pow(T, dual[a], d)));
            for (size_t b = a + 1; b < dual.size(); ++b) CHECK_FALSE(dual[a] == dual[b]);
        }
    }
}

TEST_CASE("dual group orthogonality sums") {
    for (auto [p, f, n] : {std::array<long, 3>{7, 1, 3}, {11, 1, 5}, {7, 1, 6}}) {
        CAPTURE(p, f, n);
        TameField T(p, f, n);
        const CycField& F = T.cyc();
        long d = T.d();
        // Sum over the dual of eta(y) is d^2 exactly on d-th power classes.
        std::vector<FStarClass> samples = {{0, 0}, {1, 0},      {0, 1},         {2, 3},
                                           {d, 0}, {0, d},      {d, d},         {-1, 2},
                                           {1, 1}, {2 * d, 3 * d}, {d + 1, d - 1}};
        for (const auto& y : samples) {
            CycNumber sum = CycNumber::zero(F);
            for (const auto& x : T.class_group(d)) sum = sum + mchar_eval(T, eta(T, x), y);
            bool is_power = mod_long(y.val, d) == 0 && mod_long(y.unit_dlog, d) == 0;
            CycNumber expect = is_power ? CycNumber::from_rational(F, Rational(d * d))
                                        : CycNumber::zero(F);
            CHECK(sum == expect);
        }
    }
}

TEST_CASE("coset indicator identity on both decompositions") {
    for (auto [p, f, n] : {std::array<long, 3>{7, 1, 3}, {7, 1, 6}}) {
        CAPTURE(p, f, n);
        TameField T(p, f, n);
        const CycField& F = T.cyc();
        for (auto L : {standard_decomposition(T), swapped_decomposition(T)}) {
            for (const auto& x : T.class_group(T.d())) {
                for (const auto& k : L.Kbar) {
                    bool in_coset = class_in(T, T.class_mul(x, T.class_inv(k)), L.Jbar);
                    CycNumber expect =
                        in_coset ? CycNumber::one(F) : CycNumber::zero(F);
                    CHECK(coset_indicator(T, L, x, k) == expect);
                }
            }
        }
    }
}

TEST_CASE("square-root twist permutes the dual group when n = 2 mod 4") {
    for (auto [p, f, n] : {std::array<long, 3>{7, 1, 6}, {13, 1, 6}}) {
        CAPTURE(p, f, n);
        TameField T(p, f, n);
        auto dual = dual_group(T);
        std::vector<MultChar> primed;
        for (const auto& x : T.class_group(T.d())) primed.push_back(eta_prime(T, x));
        for (const auto& c : primed)
            CHECK(std::find(dual.begin(), dual.end(), c) != dual.end());
        for (size_t a = 0; a < primed.size(); ++a)
            for (size_t b = a + 1; b < primed.size(); ++b) CHECK_FALSE(primed[a] == primed[b]);
    }
}

TEST_CASE("order-m pairing characters match symbol values") {
    for (auto [p, f, n] : {std::array<long, 3>{7, 1, 3}, {11, 1, 5}, {13, 1, 3}}) {
        CAPTURE(p, f, n);
        TameField T(p, f, n);
        long qm1 = T.q() - 1;
        for (long m : {1L, T.d()}) {
            if (qm1 % m != 0) continue;
            std::vector<FStarClass> samples = {{0, 0}, {1, 0}, {0, 1}, {2, 3}, {-1, 2}, {1, 5}};
            for (const auto& x : samples) {
                MultChar ex = eta_mod(T, x, m);
                for (const auto& y : samples) {
                    CHECK(mchar_eval(T, ex, y) == T.hilbert(x, y, m));
                }
            }
        }
    }
}

TEST_CASE("restricted symbol on units collapses to the quadratic one") {
    // For unit arguments the order-n symbol is trivial for odd n and equals
    // the quadratic symbol when n = 2 mod 4.
    for (auto [p, f, n] : kGrid) {
        CAPTURE(p, f, n);
        TameField T(p, f, n);
        const CycField& F = T.cyc();
        for (long a = 0; a < std::min<long>(T.q() - 1, 6); ++a) {
            for (long b = 0; b < std::min<long>(T.q() - 1, 6); ++b) {
                FStarClass x{0, a}, y{0, b};
                CycNumber full = T.hilbert(x, y, T.n());
                if (T.n() % 2 == 1) {
                    CHECK(full == CycNumber::one(F));
                } else {
                    CHECK(full == T.hilbert(x, y, 2));
                }
            }
        }
    }
}
