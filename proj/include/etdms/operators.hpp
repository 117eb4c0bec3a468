#pragma once

// Diagonal spectral operators: gradient (i*kappa), divergence, biharmonic
// (|kappa|^4 multiplier), and 2/3-rule dealiasing.

#include <algorithm>
#include <cstdlib>

#include "field.hpp"

namespace etdms {

inline SpectralField apply_biharmonic(const SpectralField& f) {
    SpectralField out(*f.grid);
    const int n = f.grid->n;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            out.at(ix, iy) = f.grid->lam(ix, iy) * f.at(ix, iy);
    return out;
}

inline std::pair<SpectralField, SpectralField> gradient(const SpectralField& f) {
    SpectralField gx(*f.grid), gy(*f.grid);
    const int n = f.grid->n;
    const cplx iu(0.0, 1.0);
    for (int ix = 0; ix < n; ++ix) {
        const double kx = f.grid->wavenumbers[static_cast<std::size_t>(ix)];
        for (int iy = 0; iy < n; ++iy) {
            const double ky = f.grid->wavenumbers[static_cast<std::size_t>(iy)];
            const cplx v = f.at(ix, iy);
            gx.at(ix, iy) = iu * kx * v;
            gy.at(ix, iy) = iu * ky * v;
        }
    }
    return {std::move(gx), std::move(gy)};
}

inline SpectralField divergence(const SpectralField& fx, const SpectralField& fy) {
    fx.check_same_grid(fy);
    SpectralField out(*fx.grid);
    const int n = fx.grid->n;
    const cplx iu(0.0, 1.0);
    for (int ix = 0; ix < n; ++ix) {
        const double kx = fx.grid->wavenumbers[static_cast<std::size_t>(ix)];
        for (int iy = 0; iy < n; ++iy) {
            const double ky = fx.grid->wavenumbers[static_cast<std::size_t>(iy)];
            out.at(ix, iy) = iu * (kx * fx.at(ix, iy) + ky * fy.at(ix, iy));
        }
    }
    return out;
}

// 2/3 rule: zero every mode with max(|j|,|m|) > N/3
inline SpectralField dealias(const SpectralField& f) {
    SpectralField out = f;
    const int n = f.grid->n;
    for (int ix = 0; ix < n; ++ix) {
        const int jx = std::abs(f.grid->signed_index(ix));
        for (int iy = 0; iy < n; ++iy) {
            const int jy = std::abs(f.grid->signed_index(iy));
            if (3 * std::max(jx, jy) > n) out.at(ix, iy) = cplx(0.0, 0.0);
        }
    }
    return out;
}

}  // namespace etdms
