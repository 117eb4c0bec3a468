#pragma once

// Brute-force references for the test suite, sharing no code with the
// phi-based stepper: an adaptive Dormand-Prince 5(4) integrator over complex
// state vectors, and a direct Vandermonde solve for the Lagrange coefficients.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace etdms::oracle {

using cvec = std::vector<std::complex<double>>;

struct OdeProblem {
    std::function<void(double, const cvec&, cvec&)> rhs;
    cvec y0;
    double t0 = 0.0, t1 = 1.0;
    double rtol = 1e-12, atol = 1e-14;
};

struct OdeResult {
    cvec y;
    double err_est = 0.0;  // accumulated local error estimates
    long n_steps = 0;
    long n_rejected = 0;
};

inline OdeResult solve_reference(const OdeProblem& prob) {
    // Dormand-Prince 5(4) coefficients
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const std::size_t dim = prob.y0.size();
    cvec y = prob.y0, k1(dim), k2(dim), k3(dim), k4(dim), k5(dim), k6(dim), k7(dim), ytmp(dim);
    double t = prob.t0;
    double h = (prob.t1 - prob.t0) * 1e-3;
    OdeResult res;

    prob.rhs(t, y, k1);
    while (t < prob.t1) {
        h = std::min(h, prob.t1 - t);
        if (h < 1e-14 * (std::abs(prob.t1) + 1.0))
            throw std::runtime_error("solve_reference: step size underflow at t=" + std::to_string(t));

        for (std::size_t i = 0; i < dim; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        prob.rhs(t + h / 5, ytmp, k2);
        for (std::size_t i = 0; i < dim; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        prob.rhs(t + 3 * h / 10, ytmp, k3);
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        prob.rhs(t + 4 * h / 5, ytmp, k4);
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        prob.rhs(t + 8 * h / 9, ytmp, k5);
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        prob.rhs(t + h, ytmp, k6);
        for (std::size_t i = 0; i < dim; ++i)
            ytmp[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        prob.rhs(t + h, ytmp, k7);

        double err = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const std::complex<double> le =
                h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double scale = prob.atol + prob.rtol * std::max(std::abs(y[i]), std::abs(ytmp[i]));
            err += std::norm(le / scale);
        }
        err = std::sqrt(err / static_cast<double>(dim));

        if (err <= 1.0) {
            t += h;
            y.swap(ytmp);
            k1.swap(k7);  // FSAL
            res.err_est += err;
            ++res.n_steps;
        } else {
            ++res.n_rejected;
        }
        const double fac = std::clamp(0.9 * std::pow(err > 0 ? err : 1e-16, -0.2), 0.2, 5.0);
        h *= fac;
    }
    res.y = std::move(y);
    return res;
}

// xi[i][j] with sum_j xi[i][j] s_m^j = delta_{im}: solve the Vandermonde
// system by Gaussian elimination with partial pivoting (tiny k).
inline std::vector<std::vector<double>> vandermonde_lagrange(const std::vector<double>& nodes) {
    const int k = static_cast<int>(nodes.size());
    if (k < 1) throw std::invalid_argument("vandermonde_lagrange: need at least one node");
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            if (nodes[static_cast<std::size_t>(a)] == nodes[static_cast<std::size_t>(b)])
                throw std::invalid_argument("vandermonde_lagrange: duplicate nodes");

    // augmented [V | I], V[m][j] = s_m^j
    std::vector<std::vector<double>> aug(static_cast<std::size_t>(k),
                                         std::vector<double>(static_cast<std::size_t>(2 * k), 0.0));
    for (int m = 0; m < k; ++m) {
        double p = 1.0;
        for (int j = 0; j < k; ++j) {
            aug[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] = p;
            p *= nodes[static_cast<std::size_t>(m)];
        }
        aug[static_cast<std::size_t>(m)][static_cast<std::size_t>(k + m)] = 1.0;
    }
    for (int col = 0; col < k; ++col) {
        int piv = col;
        for (int r = col + 1; r < k; ++r)
            if (std::abs(aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
                std::abs(aug[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]))
                piv = r;
        std::swap(aug[static_cast<std::size_t>(col)], aug[static_cast<std::size_t>(piv)]);
        const double d = aug[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
        for (int j = 0; j < 2 * k; ++j) aug[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)] /= d;
        for (int r = 0; r < k; ++r) {
            if (r == col) continue;
            const double f = aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
            if (f == 0.0) continue;
            for (int j = 0; j < 2 * k; ++j)
                aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -=
                    f * aug[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
        }
    }
    // V xi_i = e_i  =>  xi_i = V^{-1} e_i = column i of V^{-1}
    std::vector<std::vector<double>> xi(static_cast<std::size_t>(k),
                                        std::vector<double>(static_cast<std::size_t>(k), 0.0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            xi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                aug[static_cast<std::size_t>(j)][static_cast<std::size_t>(k + i)];
    return xi;
}

}  // namespace etdms::oracle
