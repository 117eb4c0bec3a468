#pragma once

// Periodic 2-D grid: N points per dimension on [0,L)^2, Fourier wavenumbers
// kappa_j = 2*pi*j_signed/L with j_signed in {-N/2+1, ..., N/2}.

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace etdms {

struct PeriodicGrid {
    int n = 0;           // points per dimension (even, >= 8; powers of two in practice)
    double length = 0;   // domain edge length L
    std::vector<double> wavenumbers;   // kappa_j indexed by FFT layout position

    PeriodicGrid(int n_points, double domain_length)
        : n(n_points), length(domain_length) {
        if (n < 8 || n % 2 != 0)
            throw std::invalid_argument("PeriodicGrid: n_points must be even and >= 8");
        if (!(length > 0))
            throw std::invalid_argument("PeriodicGrid: length must be positive");
        wavenumbers.resize(static_cast<std::size_t>(n));
        const double two_pi_over_l = 2.0 * 3.14159265358979323846 / length;
        for (int idx = 0; idx < n; ++idx)
            wavenumbers[static_cast<std::size_t>(idx)] = two_pi_over_l * signed_index(idx);
    }

    // FFT layout position -> signed mode index (Nyquist mapped to +N/2)
    int signed_index(int idx) const { return idx <= n / 2 ? idx : idx - n; }

    double dx() const { return length / n; }
    double cell_area() const { return dx() * dx(); }
    double area() const { return length * length; }
    std::size_t size() const { return static_cast<std::size_t>(n) * static_cast<std::size_t>(n); }

    // |kappa|^2 at layout position (ix, iy)
    double k2(int ix, int iy) const {
        const double kx = wavenumbers[static_cast<std::size_t>(ix)];
        const double ky = wavenumbers[static_cast<std::size_t>(iy)];
        return kx * kx + ky * ky;
    }
    // eigenvalue of the biharmonic operator, |kappa|^4
    double lam(int ix, int iy) const {
        const double q = k2(ix, iy);
        return q * q;
    }

    bool same_as(const PeriodicGrid& other) const {
        return n == other.n && length == other.length;
    }
};

}  // namespace etdms
