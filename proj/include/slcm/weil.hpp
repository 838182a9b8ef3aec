#pragma once

#include "slcm/characters.hpp"

namespace slcm {

// Normalized quartic Weil indices attached to the fixed additive character of
// conductor O.  Units have index 1; the value at the uniformizer is the
// normalized quadratic Gauss sum of the residue field; everything else
// follows from the cocycle rule
//
//   gamma(xy) = gamma(x) gamma(y) (x, y)_2.
class WeilIndex {
public:
    explicit WeilIndex(const TameField& T) : T_(T) {
        CycNumber s = CycNumber::zero(T.cyc());
        for (long t = 0; t < T.q(); ++t) s = s + T.psi_res(T.mul(t, t));
        gamma_varpi_ = s * sqrt_q(T.cyc(), T.p(), T.f()).inv();
    }

    const TameField& field() const { return T_; }

    // gamma_psi(x) for the normalized psi.
    CycNumber gamma(const FStarClass& x) const {
        if (x.val == 0) return CycNumber::one(T_.cyc());
        // gamma(varpi^v) = gamma(varpi)^v (varpi,varpi)_2^{v(v-1)/2}; for
        // negative v use gamma(x)gamma(x^{-1}) = (x,x^{-1})_2 = (x,-1)_2^{?}:
        // directly, gamma(x^{-1}) = gamma(x)^{-1} (x, x)_2 since
        // 1 = gamma(1) = gamma(x)gamma(x^{-1})(x, x^{-1})_2 and
        // (x, x^{-1})_2 = (x, x)_2.
        long v = x.val;
        bool invert = v < 0;
        FStarClass y = invert ? T_.class_inv(x) : x;
        long vv = invert ? -v : v;
        CycNumber g = gamma_varpi_.pow(vv) *
                      T_.hilbert(T_.uniformizer(), T_.uniformizer(), 2).pow(vv * (vv - 1) / 2) *
                      T_.hilbert({0, y.unit_dlog}, {vv, 0}, 2);
        if (!invert) return g;
        return g.inv() * T_.hilbert(y, y, 2);
    }

    // gamma_{psi_a}(x) = (a, x)_2 gamma_psi(x).
    CycNumber gamma_twisted(const FStarClass& a, const FStarClass& x) const {
        return T_.hilbert(a, x, 2) * gamma(x);
    }

    // The index of the character psi_a itself: gamma_F(psi_a) = gamma_psi(a)
    // under the normalization gamma_F(psi) = 1.
    CycNumber gamma_F(const FStarClass& a) const { return gamma(a); }

private:
    const TameField& T_;
    CycNumber gamma_varpi_;
};

} // namespace slcm
