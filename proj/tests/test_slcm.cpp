// The local coefficient matrix: definitional partial-factor assembly versus
// piecewise closed entry forms, delta-sparsity for ramified chi^n, trace by
// two routes, determinant against a naive permanent-style expansion,
// characteristic-polynomial identities, conjugacy invariance, and the
// additive-twist transport law for every entry.

#include <array>

#include <catch2/catch_amalgamated.hpp>

#include "slcm/slcm_matrix.hpp"

using namespace slcm;

namespace {

std::vector<long> varpi_exps(const TameField& T) {
    long N = T.cyc().order();
    return {0, 1, N / 8, N / (T.q() - 1), N / 2, N / T.n()};
}

std::vector<MultChar> chi_sweep(const TameField& T, bool full) {
    std::vector<MultChar> out;
    std::vector<long> ves = full ? varpi_exps(T)
                                 : std::vector<long>{0, T.cyc().order() / (T.q() - 1),
                                                     T.cyc().order() / T.n()};
    for (long ue = 0; ue < T.q() - 1; ++ue)
        for (long ve : ves) out.push_back(mchar_make(T, ue, ve));
    return out;
}

bool matrices_equal(const SlcmMatrix& A, const SlcmMatrix& B) {
    if (A.dim() != B.dim()) return false;
    for (long r = 0; r < A.dim(); ++r)
        for (long c = 0; c < A.dim(); ++c)
            if (A.entries[r][c] != B.entries[r][c]) return false;
    return true;
}

// Sign-of-permutation determinant, as an independent cross-check.
RatFun leibniz_det(const CycField& F, const std::vector<std::vector<RatFun>>& M) {
    size_t m = M.size();
    std::vector<size_t> perm(m);
    for (size_t i = 0; i < m; ++i) perm[i] = i;
    RatFun det(F);
    do {
        long sign = 1;
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i + 1; j < m; ++j)
                if (perm[i] > perm[j]) sign = -sign;
        RatFun term = RatFun::constant(F, CycNumber::one(F));
        for (size_t i = 0; i < m; ++i) term = term * M[i][perm[i]];
        det = (sign > 0) ? det + term : det - term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

} // namespace

TEST_CASE("one-fold matrix is the reciprocal abelian local coefficient") {
    TameField T(7, 1, 1);
    for (const auto& chi : chi_sweep(T, true)) {
        GenuineCharData data{&T, nullptr, chi, {0, 0}, false};
        SlcmMatrix M = assemble_slcm(data);
        REQUIRE(M.dim() == 1);
        RatFun expect = to_one_minus_s(T, tate_gamma(T, mchar_inv(T, chi), FStarClass{0, 0}));
        CHECK(M.entries[0][0] == expect);
        CHECK(matrices_equal(M, assemble_slcm_closed(data)));
    }
}

TEST_CASE("closed entry forms match the definitional assembly") {
    struct Ctx {
        long p, f, n;
        bool full;
    };
    for (auto [p, f, n, full] : {Ctx{7, 1, 3, true}, Ctx{13, 1, 3, false}, Ctx{11, 1, 5, false},
                                 Ctx{5, 1, 2, true}, Ctx{3, 2, 2, false}, Ctx{7, 1, 6, true},
                                 Ctx{13, 1, 6, false}}) {
        CAPTURE(p, f, n);
        TameField T(p, f, n);
        WeilIndex W(T);
        for (const auto& chi : chi_sweep(T, full)) {
            CAPTURE(chi.unit_exp, chi.varpi_exp);
            GenuineCharData data{&T, &W, chi, {0, 0}, false};
            bool chi_ram = !mchar_is_unramified(chi);
            bool chi2_ram = !mchar_is_unramified(mchar_pow(T, chi, 2));
            bool chin_ram = !mchar_is_unramified(mchar_pow(T, chi, T.n()));
            bool gap = T.n() % 2 == 1 ? (chi_ram && !chin_ram) : (chi2_ram && !chin_ram);
            if (gap) {
                CHECK_THROWS_AS(assemble_slcm_closed(data), UnsupportedCaseError);
                continue;
            }
            CHECK(matrices_equal(assemble_slcm(data), assemble_slcm_closed(data)));
        }
    }
}

TEST_CASE("ramified chi^n gives a generalized permutation matrix") {
    // (13,1,6) rather than (7,1,6): when n = q-1 the unit part of chi^n is
    // forced trivial, so only contexts with n < q-1 reach the sparse case.
    for (auto [p, f, n] : {std::array<long, 3>{7, 1, 3}, {11, 1, 5}, {13, 1, 6}}) {
        CAPTURE(p, f, n);
        TameField T(p, f, n);
        WeilIndex W(T);
        long d = T.d();
        MultChar chi = mchar_make(T, 1, 1); // chi^n stays ramified on these contexts
        REQUIRE_FALSE(mchar_is_unramified(mchar_pow(T, chi, T.n())));
        SlcmMatrix M = assemble_slcm(GenuineCharData{&T, &W, chi, {0, 0}, false});
        for (long r = 0; r < d; ++r)
            for (long c = 0; c < d; ++c) {
                bool on_support = mod_long(r - c, d) == mod_long(1, d);
                CAPTURE(r, c);
                CHECK(M.entries[r][c].is_zero() == !on_support);
            }
    }
}

TEST_CASE("matrix trace equals the dual-group average") {
    for (auto [p, f, n] : {std::array<long, 3>{7, 1, 3}, {5, 1, 2}, {7, 1, 6}, {13, 1, 3}}) {
        CAPTURE(p, f, n);
        TameField T(p, f, n);
        WeilIndex W(T);
        long N = T.cyc().order();
        for (const auto& chi :
             {mchar_make(T, 0, 0), mchar_make(T, 1, 1), mchar_make(T, 2, N / (T.q() - 1))}) {
            for (const auto& a : {FStarClass{0, 0}, FStarClass{1, 0}, FStarClass{0, 1},
                                  FStarClass{-1, 2}}) {
                for (bool swapped : {false, true}) {
                    CAPTURE(chi.unit_exp, chi.varpi_exp, a.val, a.unit_dlog, swapped);
                    GenuineCharData data{&T, &W, chi, a, swapped};
                    CHECK(trace_T(data) == trace_T_formula(data));
                }
            }
        }
    }
}

TEST_CASE("fraction-free determinant agrees with the permutation expansion") {
    for (auto [p, f, n] : {std::array<long, 3>{7, 1, 3}, {7, 1, 6}}) {
        CAPTURE(p, f, n);
        TameField T(p, f, n);
        WeilIndex W(T);
        const CycField& F = T.cyc();
        for (const auto& chi : {mchar_make(T, 0, 0), mchar_make(T, 1, 1),
                                mchar_make(T, 0, T.cyc().order() / T.n())}) {
            CAPTURE(chi.unit_exp, chi.varpi_exp);
            GenuineCharData data{&T, &W, chi, {0, 0}, false};
            SlcmMatrix M = assemble_slcm(data);
            CHECK(det_matrix(F, M.entries) == leibniz_det(F, M.entries));
            CHECK(det_D(data) == leibniz_det(F, M.entries));
        }
    }
}

TEST_CASE("determinant pivoting handles leading zero entries") {
    // Ramified chi^n makes entry (0,0) vanish, forcing a row swap in the
    // elimination; compare against the reference expansion.
    TameField T(11, 1, 5);
    const CycField& F = T.cyc();
    GenuineCharData data{&T, nullptr, mchar_make(T, 1, 1), {0, 0}, false};
    SlcmMatrix M = assemble_slcm(data);
    REQUIRE(M.entries[0][0].is_zero());
    CHECK(det_matrix(F, M.entries) == leibniz_det(F, M.entries));
}

TEST_CASE("characteristic polynomial ties to trace and determinant") {
    for (auto [p, f, n] : {std::array<long, 3>{7, 1, 3}, {7, 1, 6}, {5, 1, 2}}) {
        CAPTURE(p, f, n);
        TameField T(p, f, n);
        WeilIndex W(T);
        const CycField& F = T.cyc();
        long d = T.d();
        for (const auto& chi : {mchar_make(T, 0, 0), mchar_make(T, 1, 1)}) {
            CAPTURE(chi.unit_exp, chi.varpi_exp);
            GenuineCharData data{&T, &W, chi, {0, 0}, false};
            auto cp = charpoly(data);
            REQUIRE(static_cast<long>(cp.size()) == d + 1);
            CHECK(cp[d] == RatFun::constant(F, CycNumber::one(F)));
            CHECK(cp[d - 1] == -trace_T(data));
            RatFun signed_det = (d % 2 == 0) ? det_D(data) : -det_D(data);
            CHECK(cp[0] == signed_det);
        }
    }
}

TEST_CASE("characteristic polynomial is a conjugacy invariant") {
    for (auto [p, f, n] : {std::array<long, 3>{7, 1, 3}, {7, 1, 6}}) {
        CAPTURE(p, f, n);
        TameField T(p, f, n);
        WeilIndex W(T);
        for (const auto& chi : {mchar_make(T, 0, 0), mchar_make(T, 1, 1)}) {
            GenuineCharData base{&T, &W, chi, {0, 0}, false};
            auto reference = charpoly(base);

            // Same datum, opposite decomposition.
            GenuineCharData sw = base;
            sw.swapped = true;
            CHECK(charpoly(sw) == reference);

            // Twisting chi by any pairing character fixes the restriction
            // to n-th powers, hence the underlying datum.
            for (const auto& x : T.class_group(T.d())) {
                CAPTURE(chi.unit_exp, chi.varpi_exp, x.val, x.unit_dlog);
                GenuineCharData tw = base;
                tw.chi = mchar_mul(T, chi, eta(T, x));
                CHECK(charpoly(tw) == reference);
                tw.swapped = true;
                CHECK(charpoly(tw) == reference);
            }
        }
    }
}

TEST_CASE("entrywise additive-twist transport") {
    // gamma_J(1-s, mu, psi_x, k) picks up gamma_psi(x) |x|^{1/2 - s} mu(x)
    // and shifts the index by x^{-1}; entirely determined by the abelian and
    // genuine twist laws.  This is the entry-level content of replacing psi
    // by psi_x in an assembled matrix.
    for (auto [p, f, n] : {std::array<long, 3>{7, 1, 3}, {7, 1, 6}}) {
        CAPTURE(p, f, n);
        TameField T(p, f, n);
        WeilIndex W(T);
        const CycField& F = T.cyc();
        CycNumber rootq = sqrt_q(F, T.p(), T.f());
        MultChar chi = mchar_make(T, 1, 1);
        LagrangianDecomposition L = standard_decomposition(T);
        for (const auto& x : {FStarClass{0, 1}, FStarClass{1, 0}, FStarClass{2, 1}}) {
            CAPTURE(x.val, x.unit_dlog);
            GenuineCharData at_psi{&T, &W, chi, {0, 0}, false};
            GenuineCharData at_psi_x{&T, &W, chi, x, false};
            SlcmMatrix M = assemble_slcm(at_psi_x);
            // |x|^{1/2 - s} = sqrt(q)^{-v(x)} X^{-v(x)}; gamma_psi(x) is the
            // normalized Weil index, trivial on odd covers.
            CycNumber scale = (x.val >= 0) ? rootq.inv().pow(x.val) : rootq.pow(-x.val);
            if (T.n() % 2 == 0) scale = scale * W.gamma(x);
            RatFun slot = RatFun::monomial(F, -x.val, scale);
            for (long r = 0; r < M.dim(); ++r)
                for (long c = 0; c < M.dim(); ++c) {
                    FStarClass ab = T.class_mul(L.Kbar[r], L.Kbar[c]);
                    FStarClass k = T.class_mul(L.Kbar[r], T.class_inv(L.Kbar[c]));
                    MultChar twist = at_psi.even() ? eta_prime(T, ab) : eta(T, ab);
                    MultChar mu = mchar_mul(T, mchar_inv(T, chi), twist);
                    RatFun base = partial_gamma_over(at_psi, L.Jbar, mu,
                                                     T.class_mul(k, T.class_inv(x)));
                    CHECK(M.entries[r][c] == mchar_eval(T, mu, x) * slot * base);
                }
        }
    }
}

TEST_CASE("closed assembly rejects unsupported inputs") {
    TameField T(7, 1, 3);
    GenuineCharData data{&T, nullptr, mchar_make(T, 0, 0), {0, 0}, false};

    GenuineCharData swapped = data;
    swapped.swapped = true;
    CHECK_THROWS_AS(assemble_slcm_closed(swapped), ConfigError);

    GenuineCharData twisted = data;
    twisted.psi_a = FStarClass{1, 0};
    CHECK_THROWS_AS(assemble_slcm_closed(twisted), ConfigError);

    // chi ramified with chi^n unramified: genuinely open parameter range.
    GenuineCharData gap = data;
    gap.chi = mchar_make(T, 2, 0);
    REQUIRE_FALSE(mchar_is_unramified(gap.chi));
    REQUIRE(mchar_is_unramified(mchar_pow(T, gap.chi, T.n())));
    CHECK_THROWS_AS(assemble_slcm_closed(gap), UnsupportedCaseError);

    // Even-cover analog: chi^2 ramified with chi^n unramified.
    TameField T6(13, 1, 6);
    WeilIndex W6(T6);
    GenuineCharData gap6{&T6, &W6, mchar_make(T6, 2, 0), {0, 0}, false};
    REQUIRE_FALSE(mchar_is_unramified(mchar_pow(T6, gap6.chi, 2)));
    REQUIRE(mchar_is_unramified(mchar_pow(T6, gap6.chi, T6.n())));
    CHECK_THROWS_AS(assemble_slcm_closed(gap6), UnsupportedCaseError);

    // Even covers need the Weil tables.
    TameField T2(5, 1, 2);
    GenuineCharData noweil{&T2, nullptr, mchar_make(T2, 0, 0), {0, 0}, false};
    CHECK_THROWS_AS(assemble_slcm(noweil), ConfigError);
}
