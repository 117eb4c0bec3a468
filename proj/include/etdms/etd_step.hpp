#pragma once

// Exact per-mode integration of the regularized scheme over one step.
// For mode kappa with lam = |kappa|^4, m = 1 + A tau_max^k lam^{p(k)} and
// mu = eps*lam/m, the interval problem
//   m u' + eps*lam u = g(s),  g(s) = sum_j c_j s^j,  s in [0, tau_n]
// has the closed-form solution
//   u(s) = e^{-mu s} u^n + (1/m) sum_j c_j j! s^{j+1} phi_{j+1}(-mu s),
// with c_j = sum_i xi[i][j] Fhat(u^{n-i}) (plus any explicit source polynomial).

#include <cmath>
#include <deque>
#include <stdexcept>
#include <vector>

#include "field.hpp"
#include "lagrange.hpp"
#include "phi.hpp"
#include "stabilization.hpp"

namespace etdms {

struct ModeDecay {
    double lam_L = 0.0;      // |kappa|^4
    double multiplier = 1.0; // m = 1 + A tau_max^k lam^{p(k)}
    double mu = 0.0;         // eps*lam/m
};

inline ModeDecay mode_decay(double lam, double epsilon, double a_tau_k, double p_k) {
    ModeDecay d;
    d.lam_L = lam;
    d.multiplier = 1.0 + a_tau_k * (lam > 0.0 ? std::pow(lam, p_k) : 0.0);
    d.mu = epsilon * lam / d.multiplier;
    return d;
}

// Dense output: everything needed to evaluate u(s) and du/ds on [0, tau].
struct StepResult {
    SpectralField u_new;
    SpectralField u_start;
    std::vector<SpectralField> source;  // c_j, j = 0..k-1
    double tau = 0.0;
    double epsilon = 0.0;
    double a_tau_k = 0.0;  // A * tau_max^k
    double p_k = 0.0;

    ModeDecay decay(int ix, int iy) const {
        return mode_decay(u_start.grid->lam(ix, iy), epsilon, a_tau_k, p_k);
    }

    // u(s) per mode via the phi-form
    cplx value(int ix, int iy, double s) const {
        const ModeDecay d = decay(ix, iy);
        cplx u = std::exp(-d.mu * s) * u_start.at(ix, iy);
        double fact = 1.0, spow = s;
        for (std::size_t j = 0; j < source.size(); ++j) {
            u += source[j].at(ix, iy) * (fact * spow * phi(static_cast<int>(j) + 1, -d.mu * s) / d.multiplier);
            fact *= static_cast<double>(j + 1);
            spow *= s;
        }
        return u;
    }
    // du/ds = (g(s) - eps*lam*u)/m = g(s)/m - mu*u
    cplx deriv(int ix, int iy, double s) const {
        const ModeDecay d = decay(ix, iy);
        cplx g(0.0, 0.0);
        for (std::size_t j = source.size(); j-- > 0;)
            g = g * s + source[j].at(ix, iy);
        return g / d.multiplier - d.mu * value(ix, iy, s);
    }

    SpectralField dense_value(double s) const {
        SpectralField out(*u_start.grid);
        const int n = u_start.grid->n;
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy) out.at(ix, iy) = value(ix, iy, s);
        return out;
    }
};

// Rolling history for the k-step scheme: u^n, the nonlinear evaluations
// G_i = Fhat(u^{n-i}) (forcing already folded in where applicable), and the
// realized steps tau_{n-1}, tau_{n-2}, ... (newest first).
struct SchemeState {
    SpectralField u;
    std::deque<SpectralField> f_hist;
    std::deque<double> step_hist;

    void advance(SpectralField u_next, SpectralField f_next, double tau, int k) {
        u = std::move(u_next);
        f_hist.push_front(std::move(f_next));
        step_hist.push_front(tau);
        while (static_cast<int>(f_hist.size()) > k) f_hist.pop_back();
        while (static_cast<int>(step_hist.size()) > k - 1) step_hist.pop_back();
    }
};

inline StepResult etdms_step(const SchemeState& state, const LagrangeWindow& window,
                             const StabilizationConfig& stab, double tau_n,
                             double epsilon, double tau_max,
                             const std::vector<SpectralField>* forcing_poly = nullptr) {
    const int k = window.k;
    if (static_cast<int>(state.f_hist.size()) < k)
        throw std::logic_error("etdms_step: history shorter than k");
    if (!(tau_n > 0)) throw std::invalid_argument("etdms_step: tau_n must be positive");
    const PeriodicGrid& grid = *state.u.grid;

    StepResult r;
    r.u_start = state.u;
    r.tau = tau_n;
    r.epsilon = epsilon;
    r.a_tau_k = stab.a_stab * std::pow(tau_max, k);
    r.p_k = stab.p_k;

    // c_j = sum_i xi[i][j] G_i (+ forcing polynomial)
    r.source.assign(static_cast<std::size_t>(k), SpectralField(grid));
    for (int j = 0; j < k; ++j) {
        SpectralField& cj = r.source[static_cast<std::size_t>(j)];
        for (int i = 0; i < k; ++i) {
            const double w = window.xi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (w == 0.0) continue;
            const SpectralField& gi = state.f_hist[static_cast<std::size_t>(i)];
            for (std::size_t idx = 0; idx < cj.c.size(); ++idx) cj.c[idx] += w * gi.c[idx];
        }
        if (forcing_poly && j < static_cast<int>(forcing_poly->size()))
            cj += (*forcing_poly)[static_cast<std::size_t>(j)];
    }

    r.u_new = SpectralField(grid);
    const int n = grid.n;
    std::vector<double> weight(static_cast<std::size_t>(k));
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy) {
            const ModeDecay d = mode_decay(grid.lam(ix, iy), epsilon, r.a_tau_k, r.p_k);
            const double z = -d.mu * tau_n;
            double fact = 1.0, tpow = tau_n;
            for (int j = 0; j < k; ++j) {
                weight[static_cast<std::size_t>(j)] = fact * tpow * phi(j + 1, z) / d.multiplier;
                fact *= j + 1;
                tpow *= tau_n;
            }
            cplx u = std::exp(z) * state.u.at(ix, iy);
            for (int j = 0; j < k; ++j)
                u += weight[static_cast<std::size_t>(j)] * r.source[static_cast<std::size_t>(j)].at(ix, iy);
            if (std::isnan(u.real()) || std::isnan(u.imag()))
                throw std::runtime_error("etdms_step: NaN in source or state");
            r.u_new.at(ix, iy) = u;
        }
    return r;
}

// First-order ETD step, no regularization (m = 1): the k = 1 scheme.
inline SpectralField etd1_step(const SpectralField& u_n, const SpectralField& f_n,
                               double tau, double epsilon) {
    u_n.check_same_grid(f_n);
    SpectralField out(*u_n.grid);
    const int n = u_n.grid->n;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy) {
            const double z = -epsilon * u_n.grid->lam(ix, iy) * tau;
            out.at(ix, iy) = std::exp(z) * u_n.at(ix, iy) + tau * phi(1, z) * f_n.at(ix, iy);
        }
    return out;
}

// ETD1 step with dense output (a k = 1 StepResult with A = 0), so boot
// intervals feed the same seminorm machinery as multistep intervals.
// p_k only sets the V^{p(k)} weight used by interval_seminorms (the dynamics
// see A = 0 either way); pass the enclosing run's p(k) when mixing intervals.
inline StepResult etd1_step_dense(const SpectralField& u_n, const SpectralField& f_n,
                                  double tau, double epsilon, double p_k = 0.0) {
    u_n.check_same_grid(f_n);
    StepResult r;
    r.u_start = u_n;
    r.tau = tau;
    r.epsilon = epsilon;
    r.a_tau_k = 0.0;
    r.p_k = p_k;
    r.source.assign(1, f_n);
    r.u_new = etd1_step(u_n, f_n, tau, epsilon);
    return r;
}

namespace detail {

// Gauss-Legendre nodes/weights on [0,1] by Newton iteration on P_n.
inline void gauss_legendre_01(int order, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(static_cast<std::size_t>(order));
    weights.resize(static_cast<std::size_t>(order));
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < order; ++i) {
        double x = std::cos(pi * (i + 0.75) / (order + 0.5));  // root guess on [-1,1]
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= order; ++j) {
                const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(order - 1 - i)] = 0.5 * (1.0 + x);
        weights[static_cast<std::size_t>(order - 1 - i)] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
}

}  // namespace detail

// (int_I ||du/dt||_H^2 dt, int_I ||du/dt||_{V^{p(k)}}^2 dt) by Gauss-Legendre
// quadrature of the closed-form per-mode derivative. The polynomial part is
// integrated exactly; the exponential part needs quad_order commensurate with
// mu*tau (order 8 resolves mu*tau <~ 5; ~40 reaches mu*tau = 50 at 1e-10).
inline std::pair<double, double> interval_seminorms(const StepResult& r, int quad_order) {
    if (quad_order < 2) throw std::invalid_argument("interval_seminorms: quad_order must be >= 2");
    std::vector<double> x, w;
    detail::gauss_legendre_01(quad_order, x, w);

    const PeriodicGrid& grid = *r.u_start.grid;
    const int n = grid.n;
    const double n2 = static_cast<double>(n) * n;
    const double h_weight = grid.area() / (n2 * n2);  // ||v||_H^2 = h_weight * sum |vhat|^2

    double s_h = 0.0, s_p = 0.0;
    for (int q = 0; q < quad_order; ++q) {
        const double s = x[static_cast<std::size_t>(q)] * r.tau;
        double acc_h = 0.0, acc_p = 0.0;
        for (int ix = 0; ix < n; ++ix)
            for (int iy = 0; iy < n; ++iy) {
                const double du2 = std::norm(r.deriv(ix, iy, s));
                acc_h += du2;
                const double lam = grid.lam(ix, iy);
                if (lam > 0.0) acc_p += std::pow(lam, r.p_k) * du2;
            }
        s_h += w[static_cast<std::size_t>(q)] * acc_h;
        s_p += w[static_cast<std::size_t>(q)] * acc_p;
    }
    return {s_h * r.tau * h_weight, s_p * r.tau * h_weight};
}

}  // namespace etdms
