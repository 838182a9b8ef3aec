#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "slcm/factors.hpp"
#include "slcm/lagrangian.hpp"
#include "slcm/weil.hpp"

namespace slcm {

// Parameters of a genuine principal-series datum on the n-fold cover: the
// tame context, the inducing character chi, the additive twist psi_a, and
// which Lagrangian decomposition indexes the matrix.
struct GenuineCharData {
    const TameField* field_ptr = nullptr;
    const WeilIndex* weil_ptr = nullptr; // required when n is even
    MultChar chi;
    FStarClass psi_a{0, 0}; // additive character psi_a; {0,0} is the normalized psi
    bool swapped = false;   // which Lagrangian decomposition indexes the matrix

    const TameField& field() const { return *field_ptr; }
    bool even() const { return field().n() % 2 == 0; }
    const WeilIndex& weil() const {
        if (!weil_ptr) throw ConfigError("even covers require the Weil index tables");
        return *weil_ptr;
    }
    LagrangianDecomposition decomposition() const {
        return swapped ? swapped_decomposition(field()) : standard_decomposition(field());
    }
    bool normalized_psi() const {
        return psi_a.val == 0 && mod_long(psi_a.unit_dlog, field().q() - 1) == 0;
    }
};

// gamma(s, arg, psi_a) in the q^{-s} slot: the abelian factor on odd covers,
// the genuine double-cover factor on even ones.
inline RatFun gamma_s_slot(const GenuineCharData& D, const MultChar& arg) {
    const TameField& T = D.field();
    return D.even() ? meta_gamma(T, D.weil(), arg, D.psi_a) : tate_gamma(T, arg, D.psi_a);
}

// Partial factor over an arbitrary maximal isotropic Jbar, expressed in the
// 1-s slot: (1/#Jbar) sum_j eta_j(k^{-1}) gamma(1-s, arg * eta_j, psi_a).
inline RatFun partial_gamma_over(const GenuineCharData& D, const std::vector<FStarClass>& Jbar,
                                 const MultChar& arg, const FStarClass& k) {
    const TameField& T = D.field();
    const CycField& F = T.cyc();
    RatFun sum(F);
    FStarClass kinv = T.class_inv(k);
    for (const auto& j : Jbar) {
        MultChar ej = eta(T, j);
        sum = sum + mchar_eval(T, ej, kinv) * gamma_s_slot(D, mchar_mul(T, arg, ej));
    }
    CycNumber inv_size =
        CycNumber::from_rational(F, make_rational(1, static_cast<long>(Jbar.size())));
    return inv_size * to_one_minus_s(T, sum);
}

// The d x d local coefficient matrix, indexed by Kbar x Kbar in the fixed
// Kbar order of its decomposition.
struct SlcmMatrix {
    LagrangianDecomposition L;
    GenuineCharData data;
    std::vector<std::vector<RatFun>> entries;

    long dim() const { return static_cast<long>(entries.size()); }
};

// Definitional assembly: entry (a, b) = gamma_J(1-s, chi^{-1} eta_{ab}, psi,
// a b^{-1}) on odd covers, with eta'_{ab} in place of eta_{ab} on even ones.
inline SlcmMatrix assemble_slcm(const LagrangianDecomposition& L, const GenuineCharData& D) {
    const TameField& T = D.field();
    if (T.n() % 4 == 0)
        throw UnsupportedCaseError("cover degree divisible by four is not modeled");
    MultChar chi_inv = mchar_inv(T, D.chi);
    SlcmMatrix M{L, D, {}};
    for (const auto& a : L.Kbar) {
        std::vector<RatFun> row;
        for (const auto& b : L.Kbar) {
            FStarClass ab = T.class_mul(a, b);
            FStarClass k = T.class_mul(a, T.class_inv(b));
            MultChar twist = D.even() ? eta_prime(T, ab) : eta(T, ab);
            row.push_back(partial_gamma_over(D, L.Jbar, mchar_mul(T, chi_inv, twist), k));
        }
        M.entries.push_back(std::move(row));
    }
    return M;
}

inline SlcmMatrix assemble_slcm(const GenuineCharData& D) {
    return assemble_slcm(D.decomposition(), D);
}

namespace detail {

inline RatFun eps_one_minus_s(const TameField& T, const MultChar& arg) {
    return to_one_minus_s(T, epsilon_factor(T, arg, FStarClass{0, 0}));
}

inline RatFun eps_s_plus_half(const TameField& T, const MultChar& arg) {
    const CycField& F = T.cyc();
    return epsilon_factor(T, arg, FStarClass{0, 0}).substitute(sqrt_q(F, T.p(), T.f()).inv(), 1);
}

inline RatFun eps_double_s_psi2(const TameField& T, const MultChar& arg) {
    return epsilon_factor(T, arg, T.unit_class(2)).substitute(CycNumber::one(T.cyc()), 2);
}

// (q^{-s} chi(varpi))^e as a RatFun; e must be nonnegative here.
inline RatFun power_monomial(const TameField& T, const MultChar& chi, long e) {
    return RatFun::monomial(T.cyc(), e, chi_of_varpi(T, chi).pow(e));
}

} // namespace detail

// Piecewise closed forms of the matrix entries over the standard
// decomposition at normalized psi.  The two genuinely open parameter
// ranges (ramified chi with unramified chi^n on odd covers; ramified chi^2
// with unramified chi^n on even ones) are reported, not approximated.
inline SlcmMatrix assemble_slcm_closed(const GenuineCharData& D) {
    const TameField& T = D.field();
    const CycField& F = T.cyc();
    if (T.n() % 4 == 0)
        throw UnsupportedCaseError("cover degree divisible by four is not modeled");
    if (D.swapped) throw ConfigError("closed entry forms require the standard decomposition");
    if (!D.normalized_psi())
        throw ConfigError("closed entry forms require the normalized additive character");

    long n = T.n();
    long d = T.d();
    const MultChar& chi = D.chi;
    MultChar chi_inv = mchar_inv(T, chi);
    MultChar chin = mchar_pow(T, chi, n);
    bool chi_ram = !mchar_is_unramified(chi);
    bool chin_ram = !mchar_is_unramified(chin);
    bool chi2_ram = !mchar_is_unramified(mchar_pow(T, chi, 2));
    if (!D.even() && chi_ram && !chin_ram)
        throw UnsupportedCaseError("no closed entry form: ramified chi with unramified chi^n");
    if (D.even() && chi2_ram && !chin_ram)
        throw UnsupportedCaseError("no closed entry form: ramified chi^2 with unramified chi^n");
    CycNumber chi_m1 = mchar_eval(T, chi, T.class_minus_one());
    CycNumber shell = CycNumber::one(F) - q_inverse(T); // 1 - 1/q
    RatFun l_nth = l_factor(T, chin).substitute(CycNumber::one(F), n);

    SlcmMatrix M{standard_decomposition(T), D, {}};
    auto delta_entry = [&](long r, long c) -> RatFun {
        if (mod_long(r - c, d) != mod_long(1, d)) return RatFun(F);
        FStarClass ab{r + c, 0};
        if (!D.even()) return detail::eps_one_minus_s(T, mchar_mul(T, chi_inv, eta(T, ab)));
        MultChar mu = mchar_mul(T, chi, mchar_inv(T, eta_prime(T, ab)));
        return chi_m1 * detail::eps_s_plus_half(T, mu) /
               detail::eps_double_s_psi2(T, mchar_pow(T, mu, 2));
    };

    for (long r = 0; r < d; ++r) {
        std::vector<RatFun> row;
        for (long c = 0; c < d; ++c) {
            bool anti = mod_long(r + c, d) == 0;
            long i = c;
            if (!D.even()) {
                if (chin_ram || !anti) {
                    row.push_back(delta_entry(r, c));
                } else if (i != (n - 1) / 2) {
                    long e = 2 * i - (i <= (n - 1) / 2 ? 0 : n);
                    row.push_back(detail::power_monomial(T, chi, e) * (shell * l_nth));
                } else {
                    RatFun g = tate_gamma(T, mchar_inv(T, chin), FStarClass{0, 0})
                                   .substitute(q_inverse(T), -n);
                    row.push_back(detail::power_monomial(T, chi, n - 1) * g);
                }
            } else {
                if (chin_ram || !anti) {
                    row.push_back(delta_entry(r, c));
                    continue;
                }
                RatFun g_meta = meta_gamma(T, D.weil(), mchar_inv(T, mchar_pow(T, chi, d)),
                                           FStarClass{0, 0})
                                    .substitute(q_inverse(T), -d);
                if (!chi_ram) {
                    if (i != (d - 1) / 2)
                        row.push_back(detail::power_monomial(T, chi, 2 * i) * (shell * l_nth));
                    else
                        row.push_back(detail::power_monomial(T, chi, d - 1) * g_meta);
                } else { // ramified chi with unramified chi^2
                    if (i == (d - 1) / 2) {
                        row.push_back(detail::power_monomial(T, chi, d - 1) * g_meta);
                    } else {
                        long e = 2 * i - 1 + (i <= (d - 3) / 2 ? d : -d);
                        RatFun eps = detail::eps_s_plus_half(T, chi);
                        row.push_back(detail::power_monomial(T, chi, e) *
                                      (shell * chi_m1 * eps * l_nth));
                    }
                }
            }
        }
        M.entries.push_back(std::move(row));
    }
    return M;
}

// Matrix trace, from the assembled matrix.
inline RatFun trace_T(const GenuineCharData& D) {
    SlcmMatrix M = assemble_slcm(D);
    RatFun t(D.field().cyc());
    for (long i = 0; i < M.dim(); ++i) t = t + M.entries[i][i];
    return t;
}

// The same trace from the dual-group average d^{-1} sum over all d^2
// characters eta of gamma(1-s, chi^{-1} eta, psi_a).
inline RatFun trace_T_formula(const GenuineCharData& D) {
    const TameField& T = D.field();
    const CycField& F = T.cyc();
    MultChar chi_inv = mchar_inv(T, D.chi);
    RatFun sum(F);
    for (const auto& e : dual_group(T))
        sum = sum + to_one_minus_s(T, gamma_s_slot(D, mchar_mul(T, chi_inv, e)));
    return CycNumber::from_rational(F, make_rational(1, T.d())) * sum;
}

// Determinant by fraction-free elimination: denominators are cleared row by
// row, then Bareiss pivoting keeps every intermediate entry a polynomial
// (each division below is exact).
inline RatFun det_matrix(const CycField& F, const std::vector<std::vector<RatFun>>& M) {
    size_t m = M.size();
    if (m == 0) return RatFun::constant(F, CycNumber::one(F));
    std::vector<std::vector<Poly>> A;
    Poly cleared = Poly::one(F); // product of all row multipliers
    for (const auto& row : M) {
        Poly prod = Poly::one(F);
        for (const auto& e : row) prod = prod * e.den();
        std::vector<Poly> arow;
        for (const auto& e : row) {
            auto [quot, rem] = Poly::divmod(prod, e.den());
            arow.push_back(e.num() * quot);
        }
        A.push_back(std::move(arow));
        cleared = cleared * prod;
    }

    auto exact_div = [](const Poly& a, const Poly& b) {
        auto [quot, rem] = Poly::divmod(a, b);
        if (!rem.is_zero()) throw Error("internal: non-exact division in determinant");
        return quot;
    };

    long sign = 1;
    Poly prev = Poly::one(F);
    for (size_t k = 0; k + 1 < m; ++k) {
        if (A[k][k].is_zero()) {
            size_t swap_row = k;
            for (size_t i = k + 1; i < m; ++i)
                if (!A[i][k].is_zero()) {
                    swap_row = i;
                    break;
                }
            if (swap_row == k) return RatFun(F); // whole pivot column vanishes
            std::swap(A[k], A[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < m; ++i)
            for (size_t j = k + 1; j < m; ++j)
                A[i][j] = exact_div(A[i][j] * A[k][k] - A[i][k] * A[k][j], prev);
        prev = A[k][k];
    }
    Poly num = (sign < 0) ? -A[m - 1][m - 1] : A[m - 1][m - 1];
    return RatFun(std::move(num), std::move(cleared));
}

inline RatFun det_D(const GenuineCharData& D) {
    return det_matrix(D.field().cyc(), assemble_slcm(D).entries);
}

// Characteristic polynomial coefficients (ascending, monic) by the
// trace-recursion method.  Denominators are cleared once up front — with
// A = B/Q for a polynomial matrix B, det(tI - A) = Q^{-m} det(QtI - B), so
// the recursion runs entirely over polynomials and every division is by an
// integer, hence exact.
inline std::vector<RatFun> charpoly_matrix(const CycField& F,
                                           const std::vector<std::vector<RatFun>>& A) {
    size_t m = A.size();
    std::vector<RatFun> coef(m + 1, RatFun(F));
    coef[m] = RatFun::constant(F, CycNumber::one(F));
    if (m == 0) return coef;

    auto exact_div = [](const Poly& a, const Poly& b) {
        auto [quot, rem] = Poly::divmod(a, b);
        if (!rem.is_zero())
            throw Error("internal: non-exact division in characteristic polynomial");
        return quot;
    };

    Poly zero = Poly::constant(F, CycNumber::zero(F));
    Poly common = Poly::one(F); // least common denominator Q
    for (const auto& row : A)
        for (const auto& e : row) common = common * exact_div(e.den(), Poly::gcd(common, e.den()));
    std::vector<std::vector<Poly>> B(m, std::vector<Poly>(m, zero));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            B[i][j] = A[i][j].num() * exact_div(common, A[i][j].den());

    auto mat_mul = [&](const std::vector<std::vector<Poly>>& X,
                       const std::vector<std::vector<Poly>>& Y) {
        std::vector<std::vector<Poly>> Z(m, std::vector<Poly>(m, zero));
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < m; ++j)
                for (size_t l = 0; l < m; ++l) Z[i][j] = Z[i][j] + X[i][l] * Y[l][j];
        return Z;
    };
    auto trace = [&](const std::vector<std::vector<Poly>>& X) {
        Poly t = zero;
        for (size_t i = 0; i < m; ++i) t = t + X[i][i];
        return t;
    };

    // det(uI - B) = sum cp[i] u^i via the trace recursion over polynomials.
    std::vector<Poly> cp(m + 1, zero);
    cp[m] = Poly::one(F);
    std::vector<std::vector<Poly>> M = B;
    cp[m - 1] = -trace(M);
    for (size_t k = 2; k <= m; ++k) {
        for (size_t i = 0; i < m; ++i) M[i][i] = M[i][i] + cp[m - k + 1];
        M = mat_mul(B, M);
        cp[m - k] = CycNumber::from_rational(F, make_rational(-1, static_cast<long>(k))) *
                    trace(M);
    }

    // Substitute u = Qt: the t^i coefficient of det(tI - A) is cp[i]/Q^{m-i}.
    Poly qpow = Poly::one(F);
    for (size_t i = 0; i <= m; ++i) {
        coef[m - i] = RatFun(cp[m - i], qpow);
        if (i < m) qpow = qpow * common;
    }
    return coef;
}

inline std::vector<RatFun> charpoly(const GenuineCharData& D) {
    return charpoly_matrix(D.field().cyc(), assemble_slcm(D).entries);
}

} // namespace slcm
