#pragma once

// SpectralField: full complex coefficient array in standard FFT layout,
// row-major (ix*n + iy). Convention: unnormalized forward transform,
// 1/N^2 on the inverse, so Parseval reads sum_x v^2 = sum_k |c|^2 / N^2.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "fft.hpp"
#include "grid.hpp"

namespace etdms {

using cplx = std::complex<double>;

struct SpectralField {
    const PeriodicGrid* grid = nullptr;
    std::vector<cplx> c;

    SpectralField() = default;
    explicit SpectralField(const PeriodicGrid& g) : grid(&g), c(g.size(), cplx(0.0, 0.0)) {}

    cplx& at(int ix, int iy) { return c[static_cast<std::size_t>(ix) * grid->n + iy]; }
    const cplx& at(int ix, int iy) const { return c[static_cast<std::size_t>(ix) * grid->n + iy]; }

    SpectralField& operator+=(const SpectralField& o) {
        check_same_grid(o);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
    SpectralField& operator-=(const SpectralField& o) {
        check_same_grid(o);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
        return *this;
    }
    SpectralField& operator*=(double a) {
        for (auto& v : c) v *= a;
        return *this;
    }

    void check_same_grid(const SpectralField& o) const {
        if (!grid || !o.grid || !grid->same_as(*o.grid))
            throw std::invalid_argument("SpectralField: grid mismatch");
    }
};

inline SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
inline SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
inline SpectralField operator*(double s, SpectralField a) { return a *= s; }

inline SpectralField to_spectral(const PeriodicGrid& grid, const std::vector<double>& values) {
    if (values.size() != grid.size())
        throw std::invalid_argument("to_spectral: array shape does not match grid");
    SpectralField f(grid);
    for (std::size_t i = 0; i < values.size(); ++i) f.c[i] = cplx(values[i], 0.0);
    detail::fft2_inplace(grid.n, f.c.data(), FFTW_FORWARD);
    return f;
}

// Real part of the normalized inverse transform. For Hermitian coefficient
// arrays this is exact; stray anti-symmetric content (e.g. a derivative of
// the Nyquist mode) is discarded, the usual pseudo-spectral convention.
inline std::vector<double> to_physical(const SpectralField& f) {
    std::vector<cplx> work(f.c);
    detail::fft2_inplace(f.grid->n, work.data(), FFTW_BACKWARD);
    const double inv_n2 = 1.0 / (static_cast<double>(f.grid->n) * f.grid->n);
    std::vector<double> values(work.size());
    for (std::size_t i = 0; i < work.size(); ++i) values[i] = work[i].real() * inv_n2;
    return values;
}

// max relative deviation from Hermitian symmetry c(-j,-m) = conj(c(j,m))
inline double hermitian_defect(const SpectralField& f) {
    const int n = f.grid->n;
    double max_abs = 0.0, max_dev = 0.0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy) {
            const int jx = (n - ix) % n, jy = (n - iy) % n;
            const cplx a = f.at(ix, iy), b = std::conj(f.at(jx, jy));
            max_dev = std::max(max_dev, std::abs(a - b));
            max_abs = std::max(max_abs, std::abs(a));
        }
    return max_abs > 0 ? max_dev / max_abs : 0.0;
}

// ||f||_{L^2(Omega)} = sqrt(L^2/N^4 * sum |c|^2)
inline double norm_h(const SpectralField& f) {
    double s = 0.0;
    for (const auto& v : f.c) s += std::norm(v);
    const double n2 = static_cast<double>(f.grid->n) * f.grid->n;
    return std::sqrt(s * f.grid->area() / (n2 * n2));
}

// V^alpha norm with L = Delta^2: multiplier |kappa|^{4 alpha}, zero mode excluded
inline double norm_v(const SpectralField& f, double alpha) {
    const int n = f.grid->n;
    double s = 0.0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy) {
            if (ix == 0 && iy == 0) continue;
            s += std::pow(f.grid->lam(ix, iy), alpha) * std::norm(f.at(ix, iy));
        }
    const double n2 = static_cast<double>(n) * n;
    return std::sqrt(s * f.grid->area() / (n2 * n2));
}

// RMS over grid values, computed spectrally: sqrt(mean v^2) = sqrt(sum|c|^2)/N^2
inline double rms(const SpectralField& f) {
    double s = 0.0;
    for (const auto& v : f.c) s += std::norm(v);
    const double n2 = static_cast<double>(f.grid->n) * f.grid->n;
    return std::sqrt(s) / n2;
}

inline double mean_value(const SpectralField& f) {
    const double n2 = static_cast<double>(f.grid->n) * f.grid->n;
    return f.c[0].real() / n2;
}

}  // namespace etdms
