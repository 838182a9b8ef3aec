#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "slcm/characters.hpp"

namespace slcm {

// A decomposition of the order-d^2 quotient F*/F*^d as a direct product of
// two order-d subgroups, each isotropic for the power-residue pairing
// (., .)_d, with the pairing restricting to a perfect duality between them.
// Kbar doubles as the ordered index set of the local coefficient matrix.
struct LagrangianDecomposition {
    std::vector<FStarClass> Jbar; // subgroup whose characters eta_j weight the averages
    std::vector<FStarClass> Kbar; // complementary subgroup, fixed matrix index order
    bool swapped = false;         // true when built by swapped_decomposition
};

// Canonical representative of x in F*/F*^d: both coordinates reduced mod d
// (valid since d | q-1, so unit d-th powers are exactly dlog = 0 mod d).
inline FStarClass reduce_class(const TameField& T, const FStarClass& x) {
    return {mod_long(x.val, T.d()), mod_long(x.unit_dlog, T.d())};
}

inline bool class_in(const TameField& T, const FStarClass& x, const std::vector<FStarClass>& sub) {
    FStarClass r = reduce_class(T, x);
    return std::any_of(sub.begin(), sub.end(),
                       [&](const FStarClass& y) { return reduce_class(T, y) == r; });
}

// Jbar = unit classes, Kbar = (varpi^0, varpi^1, ..., varpi^{d-1}) classes.
inline LagrangianDecomposition standard_decomposition(const TameField& T) {
    LagrangianDecomposition L;
    for (long j = 0; j < T.d(); ++j) L.Jbar.push_back({0, j});
    for (long i = 0; i < T.d(); ++i) L.Kbar.push_back({i, 0});
    return L;
}

// The same two subgroups with their roles exchanged: Jbar = varpi powers,
// Kbar = unit classes (g^0, g^1, ..., g^{d-1}).  Valid because both
// subgroups are isotropic regardless of which side indexes the matrix.
inline LagrangianDecomposition swapped_decomposition(const TameField& T) {
    LagrangianDecomposition L = standard_decomposition(T);
    std::swap(L.Jbar, L.Kbar);
    L.swapped = true;
    return L;
}

// Outcome of the exhaustive decomposition audit.  On failure, `witness`
// holds the offending pair of classes (or a single class for membership
// failures) and `failure` names the violated property.
struct LagrangianCheck {
    bool ok = true;
    std::string failure;
    std::vector<FStarClass> witness;
};

// Checks, in order: subgroup axioms and isotropy of both parts, direct
// product coverage of F*/F*^d, maximality (each part equals the
// intersection of the kernels of its own pairing characters), and perfect
// duality (k -> eta_k restricted to Jbar is injective).
inline LagrangianCheck verify_lagrangian(const TameField& T, const LagrangianDecomposition& L) {
    long d = T.d();
    auto fail = [](std::string what, std::vector<FStarClass> w) {
        return LagrangianCheck{false, std::move(what), std::move(w)};
    };

    for (const auto* part : {&L.Jbar, &L.Kbar}) {
        const char* name = (part == &L.Jbar) ? "Jbar" : "Kbar";
        if (!class_in(T, {0, 0}, *part)) return fail(std::string(name) + " misses identity", {});
        for (const auto& x : *part) {
            for (const auto& y : *part) {
                if (!class_in(T, T.class_mul(x, y), *part))
                    return fail(std::string(name) + " not closed under product", {x, y});
                if (T.hilbert_dlog(x, y, d) != 0)
                    return fail(std::string(name) + " not isotropic", {x, y});
            }
        }
    }

    // Direct product: the products j*k must cover F*/F*^d without repeats.
    std::vector<FStarClass> seen;
    for (const auto& j : L.Jbar) {
        for (const auto& k : L.Kbar) {
            FStarClass prod = reduce_class(T, T.class_mul(j, k));
            if (std::find(seen.begin(), seen.end(), prod) != seen.end())
                return fail("product decomposition not unique", {j, k});
            seen.push_back(prod);
        }
    }
    if (static_cast<long>(seen.size()) != d * d) return fail("products do not cover quotient", {});

    // Maximality: any class pairing trivially with a whole part must already
    // lie in that part (the part equals the kernel intersection).
    for (const auto* part : {&L.Jbar, &L.Kbar}) {
        const char* name = (part == &L.Jbar) ? "Jbar" : "Kbar";
        for (const auto& z : T.class_group(d)) {
            bool in_kernels = std::all_of(part->begin(), part->end(), [&](const FStarClass& x) {
                return T.hilbert_dlog(x, z, d) == 0;
            });
            if (in_kernels && !class_in(T, z, *part))
                return fail(std::string(name) + " not maximal isotropic", {z});
        }
    }

    // Perfect duality: distinct k in Kbar restrict to distinct characters of J.
    for (size_t a = 0; a < L.Kbar.size(); ++a) {
        for (size_t b = a + 1; b < L.Kbar.size(); ++b) {
            bool same = std::all_of(L.Jbar.begin(), L.Jbar.end(), [&](const FStarClass& j) {
                return T.hilbert_dlog(L.Kbar[a], j, d) == T.hilbert_dlog(L.Kbar[b], j, d);
            });
            if (same) return fail("Kbar does not separate via duality", {L.Kbar[a], L.Kbar[b]});
        }
    }
    return {};
}

// Indicator of the coset J*k: (1/#Jbar) sum_j eta_j(x k^{-1}), which is 1
// when x k^{-1} lands in Jbar mod d-th powers and 0 otherwise.
inline CycNumber coset_indicator(const TameField& T, const LagrangianDecomposition& L,
                                 const FStarClass& x, const FStarClass& k) {
    CycNumber sum = CycNumber::zero(T.cyc());
    FStarClass ratio = T.class_mul(x, T.class_inv(k));
    for (const auto& j : L.Jbar) sum = sum + mchar_eval(T, eta(T, j), ratio);
    return sum * CycNumber::from_rational(T.cyc(), mpq_class(1, static_cast<long>(L.Jbar.size())));
}

} // namespace slcm
