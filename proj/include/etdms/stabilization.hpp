#pragma once

// Stabilization-constant chain for the regularized ETD multistep scheme.
// Inputs (k, beta, gamma, C_L, r_c) determine:
//   p = (beta+gamma)k/2,  q = 1/(1+gamma/beta)  (0 if beta=0, 1 if gamma=0),
//   C_j* basis-deviation bounds,  Cbar_j = sum_{l>=j} C_l*,
//   Chat/Ctilde by the symmetric-equality split of
//     (1-beta/p) Chat^{1/(1-beta/p)} + (1-gamma/p) Ctilde^{1/(1-gamma/p)} = 2/(C_L Cbar_0),
//   C1..C4 Young-inequality constants, and the regularization amplitude
//     A = C_L (C2 + C4) Cbar_0.

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lagrange.hpp"

namespace etdms {

struct StabilizationConfig {
    int k = 2;
    double beta = 0.5, gamma = 0.5;
    double c_lip = 1.0;              // Lipschitz constant C_L of the nonlinearity
    double r_c = 1.0;                // local step-ratio bound
    double p_k = 0.0, q = 0.0;
    double c_hat = 1.0, c_tilde = 1.0;   // unused branches stay at the neutral value 1
    double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0;
    std::vector<double> c_star;      // C_0*, ..., C_{k-1}*
    std::vector<double> c_bar;       // Cbar_0, ..., Cbar_{k-1}
    double a_stab = 0.0;             // A
    bool requires_step_restriction = false;  // beta = gamma = 0 (unregularized)
};

// C_j* for the closed-form cases; k >= 3 needs a user-supplied table.
inline std::vector<double> c_star_bounds(
    int k, double r_c, const std::optional<std::vector<double>>& user_table = std::nullopt) {
    if (k < 1) throw std::invalid_argument("c_star_bounds: k must be >= 1");
    if (!(r_c >= 1)) throw std::invalid_argument("c_star_bounds: r_c must be >= 1");
    if (user_table) {
        if (static_cast<int>(user_table->size()) != k)
            throw std::invalid_argument("c_star_bounds: user table must have k entries");
        if ((*user_table)[0] != 1.0)
            throw std::invalid_argument("c_star_bounds: C_0* must equal 1");
        return *user_table;
    }
    if (k == 1) return {1.0};
    if (k == 2) return {1.0, r_c / std::sqrt(3.0)};
    throw std::runtime_error("c_star_bounds: k >= 3 unsupported without a user-supplied table");
}

// Non-certified numerical estimate of C_j*: maximize ||1 - sum_{i<j} l_i||_{L^2(I_n)}^2 / tau
// over step windows with pairwise ratio <= r_c, by dense grid sampling (steps normalized
// so the window maximum is 1; the functional is scale-invariant).
inline std::vector<double> estimate_c_star(int k, double r_c, int samples_per_step = 9) {
    if (k < 1 || k > 6) throw std::invalid_argument("estimate_c_star: k must lie in [1, 6]");
    if (samples_per_step < 2) throw std::invalid_argument("estimate_c_star: need >= 2 samples");
    std::vector<double> out(static_cast<std::size_t>(k), 0.0);
    out[0] = 1.0;
    if (k == 1) return out;

    std::vector<double> levels(static_cast<std::size_t>(samples_per_step));
    for (int i = 0; i < samples_per_step; ++i)
        levels[static_cast<std::size_t>(i)] =
            1.0 / r_c * std::pow(r_c, static_cast<double>(i) / (samples_per_step - 1));

    // window = (tau_{n-k+1}, ..., tau_{n-1}, tau_n); iterate over all level combinations
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    std::vector<double> taus(static_cast<std::size_t>(k));
    while (true) {
        for (int i = 0; i < k; ++i) taus[static_cast<std::size_t>(i)] = levels[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        const double tau_n = taus[static_cast<std::size_t>(k - 1)];
        double tau_max = 0;
        for (double t : taus) tau_max = std::max(tau_max, t);
        std::vector<double> hist(taus.rbegin() + 1, taus.rend());  // tau_{n-1}, ..., tau_{n-k+1}
        LagrangeWindow w = lagrange_window(k, hist);
        for (int j = 1; j < k; ++j) {
            // e(s) = 1 - sum_{i<j} l_i(s), a degree-(k-1) polynomial
            std::vector<double> e(static_cast<std::size_t>(k), 0.0);
            e[0] = 1.0;
            for (int i = 0; i < j; ++i)
                for (int d = 0; d < k; ++d)
                    e[static_cast<std::size_t>(d)] -= w.xi[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)];
            // int_0^{tau_n} e(s)^2 ds in closed form
            double integral = 0.0;
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b)
                    integral += e[static_cast<std::size_t>(a)] * e[static_cast<std::size_t>(b)] *
                                std::pow(tau_n, a + b + 1) / (a + b + 1);
            out[static_cast<std::size_t>(j)] =
                std::max(out[static_cast<std::size_t>(j)], std::sqrt(integral / tau_max));
        }
        int pos = 0;
        while (pos < k && ++idx[static_cast<std::size_t>(pos)] == samples_per_step) {
            idx[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == k) break;
    }
    return out;
}

inline StabilizationConfig stabilization(
    int k, double beta, double gamma, double c_lip, double r_c,
    const std::optional<std::vector<double>>& user_c_star = std::nullopt) {
    if (k < 1) throw std::invalid_argument("stabilization: k must be >= 1");
    if (beta < 0 || gamma < 0 || beta + gamma > 1 + 1e-15)
        throw std::invalid_argument("stabilization: need beta, gamma >= 0 and beta+gamma <= 1");
    if (!(c_lip > 0)) throw std::invalid_argument("stabilization: c_lip must be positive");

    StabilizationConfig cfg;
    cfg.k = k;
    cfg.beta = beta;
    cfg.gamma = gamma;
    cfg.c_lip = c_lip;
    cfg.r_c = r_c;
    cfg.c_star = c_star_bounds(k, r_c, user_c_star);
    cfg.c_bar.assign(static_cast<std::size_t>(k), 0.0);
    for (int j = k - 1; j >= 0; --j)
        cfg.c_bar[static_cast<std::size_t>(j)] =
            cfg.c_star[static_cast<std::size_t>(j)] +
            (j + 1 < k ? cfg.c_bar[static_cast<std::size_t>(j + 1)] : 0.0);

    cfg.p_k = 0.5 * (beta + gamma) * k;

    if (beta == 0.0 && gamma == 0.0) {
        // unregularized variant: A = 0, stability needs a step-size restriction
        cfg.q = 0.0;
        cfg.a_stab = 0.0;
        cfg.requires_step_restriction = true;
        return cfg;
    }
    cfg.q = gamma == 0.0 ? 1.0 : (beta == 0.0 ? 0.0 : 1.0 / (1.0 + gamma / beta));

    const double p = cfg.p_k;
    if (beta > p || gamma > p)   // only reachable for k = 1; V^beta would exceed V^p
        throw std::invalid_argument("stabilization: exponents must not exceed p(k)");
    const double budget = 2.0 / (c_lip * cfg.c_bar[0]);

    // Each branch contributes 2*C_u to the equality-split budget:
    //   exponent 0  -> C_u = 1/2 fixed (no interpolation constant),
    //   exponent p  -> C_u = 0, C_v = exp/(2p), constant pinned at 1,
    //   otherwise   -> free; free branches share the leftover budget equally.
    const bool beta_free = beta > 0.0 && beta < p;
    const bool gamma_free = gamma > 0.0 && gamma < p;
    double fixed = 0.0;
    if (!beta_free) fixed += beta == 0.0 ? 1.0 : 0.0;
    if (!gamma_free) fixed += gamma == 0.0 ? 1.0 : 0.0;
    const int n_free = (beta_free ? 1 : 0) + (gamma_free ? 1 : 0);
    const double leftover = budget - fixed;
    if (n_free > 0 && !(leftover > 0))
        throw std::invalid_argument("stabilization: infeasible constants, C_L*Cbar_0 too large");
    if (n_free == 0 && leftover < -1e-12)
        throw std::invalid_argument("stabilization: infeasible constants, C_L*Cbar_0 too large");
    const double share = n_free > 0 ? leftover / n_free : 0.0;

    auto resolve_branch = [&](double expo, bool free_branch, double& c_interp,
                              double& c_u, double& c_v) {
        if (expo == 0.0) {
            c_interp = 1.0;
            c_u = 0.5;
            c_v = 0.0;
        } else if (!free_branch) {  // expo == p
            c_interp = 1.0;
            c_u = 0.0;
            c_v = expo / (2.0 * p);
        } else {
            const double one_minus = 1.0 - expo / p;
            c_u = 0.5 * share;
            c_interp = std::pow(share / one_minus, one_minus);
            c_v = expo / (2.0 * p) * std::pow(c_interp, -p / expo);
        }
    };
    resolve_branch(beta, beta_free, cfg.c_hat, cfg.c1, cfg.c2);
    resolve_branch(gamma, gamma_free, cfg.c_tilde, cfg.c3, cfg.c4);

    cfg.a_stab = c_lip * (cfg.c2 + cfg.c4) * cfg.c_bar[0];
    return cfg;
}

// Left side of the budget identity, for invariants/tests: equals
// 2*(C1 + C3) and must not exceed 2/(C_L Cbar_0).
inline double stabilization_budget_lhs(const StabilizationConfig& cfg) {
    return 2.0 * (cfg.c1 + cfg.c3);
}

}  // namespace etdms
