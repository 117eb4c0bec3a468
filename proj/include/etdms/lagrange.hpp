#pragma once

// Shifted Lagrange basis on the nonuniform node set
//   s_0 = 0,  s_m = -(tau_{n-1} + ... + tau_{n-m}),  m = 1..k-1,
// expanded in the monomial basis: l_i(s) = sum_j xi[i][j] s^j, built from the
// product form l_i(s) = prod_{m != i} (s - s_m)/(s_i - s_m).

#include <stdexcept>
#include <vector>

namespace etdms {

struct LagrangeWindow {
    int k = 1;
    std::vector<double> steps;              // tau_{n-1}, ..., tau_{n-k+1}
    std::vector<std::vector<double>> xi;    // xi[i][j], i = node, j = monomial degree

    double node(int m) const {              // s_m
        double s = 0.0;
        for (int j = 0; j < m; ++j) s -= steps[static_cast<std::size_t>(j)];
        return s;
    }
    // l_i(s) by Horner on the stored coefficients
    double eval(int i, double s) const {
        const auto& row = xi[static_cast<std::size_t>(i)];
        double v = row[static_cast<std::size_t>(k - 1)];
        for (int j = k - 2; j >= 0; --j) v = v * s + row[static_cast<std::size_t>(j)];
        return v;
    }
};

inline LagrangeWindow lagrange_window(int k, const std::vector<double>& steps) {
    if (k < 1) throw std::invalid_argument("lagrange_window: k must be >= 1");
    if (static_cast<int>(steps.size()) != k - 1)
        throw std::invalid_argument("lagrange_window: need k-1 steps");
    for (double tau : steps)
        if (!(tau > 0)) throw std::invalid_argument("lagrange_window: steps must be positive");

    LagrangeWindow w;
    w.k = k;
    w.steps = steps;
    w.xi.assign(static_cast<std::size_t>(k), std::vector<double>(static_cast<std::size_t>(k), 0.0));

    std::vector<double> nodes(static_cast<std::size_t>(k));
    for (int m = 0; m < k; ++m) nodes[static_cast<std::size_t>(m)] = w.node(m);

    for (int i = 0; i < k; ++i) {
        // numerator prod_{m != i} (s - s_m), expanded by successive convolution
        std::vector<double> num(1, 1.0);
        double denom = 1.0;
        for (int m = 0; m < k; ++m) {
            if (m == i) continue;
            denom *= nodes[static_cast<std::size_t>(i)] - nodes[static_cast<std::size_t>(m)];
            std::vector<double> next(num.size() + 1, 0.0);
            for (std::size_t d = 0; d < num.size(); ++d) {
                next[d] -= nodes[static_cast<std::size_t>(m)] * num[d];
                next[d + 1] += num[d];
            }
            num.swap(next);
        }
        for (int j = 0; j < k; ++j)
            w.xi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                num[static_cast<std::size_t>(j)] / denom;
    }
    return w;
}

}  // namespace etdms
