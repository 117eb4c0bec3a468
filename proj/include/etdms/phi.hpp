#pragma once

// phi-functions of exponential integrators:
//   phi_0(z) = e^z,  phi_{j+1}(z) = (phi_j(z) - 1/j!)/z,  phi_j(0) = 1/j!.
// Direct recurrence for |z| > 0.5; truncated Taylor series for |z| <= 0.5
// to avoid the cancellation in (phi_j - 1/j!)/z near zero. For large x the
// rearranged form phi_j(-x) = (1/x)(1/(j-1)! - phi_{j-1}(-x)) is the same
// recurrence and is stable; e^{-x} underflows harmlessly.

#include <cmath>
#include <stdexcept>

namespace etdms {

inline constexpr int kPhiMaxIndex = 6;

inline double phi(int j, double z) {
    if (j < 0 || j > kPhiMaxIndex)
        throw std::invalid_argument("phi: index must lie in [0, 6]");
    static const double inv_factorial[] = {
        1.0, 1.0, 1.0 / 2, 1.0 / 6, 1.0 / 24, 1.0 / 120, 1.0 / 720};
    if (std::abs(z) > 0.5) {
        double p = std::exp(z);
        for (int i = 0; i < j; ++i) p = (p - inv_factorial[i]) / z;
        return p;
    }
    // phi_j(z) = sum_{m>=0} z^m / (m+j)!
    double term = inv_factorial[j];
    double sum = term;
    for (int m = 1; m <= 40; ++m) {
        term *= z / (m + j);
        sum += term;
        if (std::abs(term) < 1e-20 * std::abs(sum)) break;
    }
    return sum;
}

}  // namespace etdms
