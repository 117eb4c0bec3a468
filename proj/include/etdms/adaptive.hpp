#pragma once

// Adaptive time stepping with the ETD1 / ETD-MS2 embedded pair:
//   U1 = ETD1(tau), U2 = ETD-MS2(tau), e = ||U1-U2||/||U2|| (grid RMS),
//   A_dp(e, tau) = rho (tol/e)^r tau, clamped to [tau_min, tau_max];
// retry with the recalculated step while e > tol (bounded by max_retries,
// then forced accept), U2 is the accepted solution. The first interval has
// no multistep history; its pair is ETD1 vs two ETD1 half-steps.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "etd_step.hpp"
#include "nss.hpp"

namespace etdms {

struct AdaptiveConfig {
    double rho = 0.95;
    double tol = 1e-3;
    double rate = 0.5;      // exponent r of the update rule
    double tau_min = 1e-3;
    double tau_max = 1e-1;
    int max_retries = 10;
    bool growth_cap = true; // enforce tau_{n+1} <= r_c * tau_n
    double r_c = 4.0;
};

inline double adp_update(double e, double tau, const AdaptiveConfig& cfg) {
    if (!(e > 0)) return cfg.tau_max;  // error-free step: clamp decides
    return std::clamp(cfg.rho * std::pow(cfg.tol / e, cfg.rate) * tau, cfg.tau_min, cfg.tau_max);
}

struct AdaptiveEvent {
    long step = 0;
    double t = 0.0;      // time at the end of the accepted step
    double tau = 0.0;
    double e_rel = 0.0;
    int retries = 0;
    bool accepted = true;   // false only for forced accepts (e > tol at the floor)
    double energy = 0.0;
    double modified_energy = 0.0;
};

struct AdaptiveTrajectory {
    std::vector<AdaptiveEvent> events;
    SpectralField u_final;
    long total_candidate_steps = 0;  // candidate pairs evaluated incl. retries
};

inline AdaptiveTrajectory adaptive_run(const SpectralField& u0, const NssParams& params,
                                       const AdaptiveConfig& cfg,
                                       const StabilizationConfig& stab, double T,
                                       int quad_order = 8) {
    AdaptiveTrajectory traj;
    const int k = stab.k;

    SchemeState state;
    state.u = u0;
    state.f_hist.push_front(nonlinear_term(u0, params));

    std::vector<std::pair<double, double>> seminorm_window;  // I_{n-1}, I_{n-2}, ...
    double t = 0.0, tau = cfg.tau_min;
    long n = 0;

    while (t < T - 1e-12 * T) {
        tau = std::min(tau, T - t);
        int retries = 0;
        bool forced = false;
        double e = 0.0;
        SpectralField u2;
        StepResult ms_result;
        bool have_dense = false;

        while (true) {
            const SpectralField u1 = etd1_step(state.u, state.f_hist.front(), tau, params.epsilon);
            if (static_cast<int>(state.f_hist.size()) >= k) {
                LagrangeWindow window = lagrange_window(
                    k, {state.step_hist.begin(), state.step_hist.begin() + (k - 1)});
                ms_result = etdms_step(state, window, stab, tau, params.epsilon, cfg.tau_max);
                u2 = ms_result.u_new;
                have_dense = true;
            } else {
                // boot pair: two ETD1 half-steps as the refined member
                const SpectralField uh =
                    etd1_step(state.u, state.f_hist.front(), 0.5 * tau, params.epsilon);
                u2 = etd1_step(uh, nonlinear_term(uh, params), 0.5 * tau, params.epsilon);
                have_dense = false;
            }
            ++traj.total_candidate_steps;
            e = rms(u1 - u2) / rms(u2);
            if (e <= cfg.tol) break;
            if (tau <= cfg.tau_min) {
                forced = true;  // accept anyway to avoid livelock
                break;
            }
            ++retries;
            // exhausted retries drop straight to the floor for the final attempt
            tau = retries >= cfg.max_retries ? cfg.tau_min : adp_update(e, tau, cfg);
        }

        // seminorms of the accepted interval (boot: two dense half-steps)
        std::pair<double, double> sem;
        if (have_dense) {
            sem = interval_seminorms(ms_result, quad_order);
        } else {
            const SpectralField uh =
                etd1_step(state.u, state.f_hist.front(), 0.5 * tau, params.epsilon);
            const StepResult h1 =
                etd1_step_dense(state.u, state.f_hist.front(), 0.5 * tau, params.epsilon, stab.p_k);
            const StepResult h2 =
                etd1_step_dense(uh, nonlinear_term(uh, params), 0.5 * tau, params.epsilon, stab.p_k);
            const auto s1 = interval_seminorms(h1, quad_order);
            const auto s2 = interval_seminorms(h2, quad_order);
            sem = {s1.first + s2.first, s1.second + s2.second};
        }
        seminorm_window.insert(seminorm_window.begin(), sem);
        if (static_cast<int>(seminorm_window.size()) > k - 1) seminorm_window.pop_back();

        t += tau;
        state.advance(u2, nonlinear_term(u2, params), tau, k);

        AdaptiveEvent ev;
        ev.step = n++;
        ev.t = t;
        ev.tau = tau;
        ev.e_rel = e;
        ev.retries = retries;
        ev.accepted = !forced;
        ev.energy = energy(state.u, params);
        ev.modified_energy = static_cast<int>(seminorm_window.size()) >= k - 1
                                 ? modified_energy(seminorm_window, ev.energy, stab, cfg.tau_max)
                                 : ev.energy;
        traj.events.push_back(ev);

        double tau_next = adp_update(e, tau, cfg);
        if (cfg.growth_cap) tau_next = std::min(tau_next, cfg.r_c * tau);
        tau = std::clamp(tau_next, cfg.tau_min, cfg.tau_max);
    }
    traj.u_final = state.u;
    return traj;
}

}  // namespace etdms
