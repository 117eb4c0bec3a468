// Acceptance gate: one self-contained check per shipped guarantee. Each check
// prints exactly one "criterion N: PASS|FAIL - ..." verdict line (supporting
// rows indented below it); the exit status is the number of failures.
//
//   acceptance [--criterion N] [--output DIR]
//
// Heavier checks run full experiments and leave their artifacts under DIR
// (default acceptance_out/) for offline inspection.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <etdms/etdms.hpp>

namespace {

using namespace etdms;

constexpr double kPi = 3.14159265358979323846;

template <typename... Args>
std::string strf(const char* fmt, Args... args) {
    char buf[1024];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return std::string(buf);
}

struct Verdict {
    bool pass = false;
    std::string summary;
    std::vector<std::string> detail;
};

// ---------- criterion 1: stabilization constant chain ----------

Verdict check_constants() {
    Verdict v;
    const StabilizationConfig s = stabilization(2, 0.5, 0.5, 1.0, 1.0);
    const double root3 = std::sqrt(3.0);
    const double a_ref = (2.0 + root3) / 6.0;
    const double sq_ref = 6.0 / (3.0 + root3);  // = 3 - sqrt(3)
    const double budget_ref = 3.0 - root3;
    const double lhs = stabilization_budget_lhs(s);
    const double rhs = 2.0 / (s.c_lip * s.c_bar[0]);
    const double worst = std::max({std::abs(s.a_stab - a_ref),
                                   std::abs(s.c_hat * s.c_hat - sq_ref),
                                   std::abs(s.c_tilde * s.c_tilde - sq_ref),
                                   std::abs(lhs - budget_ref),
                                   std::abs(rhs - budget_ref)});
    v.pass = worst <= 1e-12;
    v.summary = strf("k=2 symmetric constants: A=%.15g, Chat^2=%.15g, budget lhs=%.15g rhs=%.15g, max dev %.2e (tol 1e-12)",
                     s.a_stab, s.c_hat * s.c_hat, lhs, rhs, worst);
    return v;
}

// ---------- criteria 2/3: manufactured-solution convergence table ----------

const double kRefErr[7] = {5.258e-2, 1.658e-2, 4.432e-3, 1.128e-3,
                           2.837e-4, 7.103e-5, 1.777e-5};
const double kRefRate[7] = {0.0, 1.665, 1.903, 1.973, 1.992, 1.998, 1.999};

const ConvergenceResult& benchmark_table(const std::filesystem::path& outdir) {
    static std::optional<ConvergenceResult> memo;
    if (!memo) {
        ExperimentConfig cfg;  // defaults are the benchmark protocol
        cfg.kind = ExperimentKind::converge;
        cfg.output_dir = (outdir / "converge").string();
        std::filesystem::create_directories(cfg.output_dir);
        memo = run_convergence(cfg);
    }
    return *memo;
}

// Same stepper and constants with the transport term removed from both the
// evolution and the compensating forcing; the benchmark stays the exact
// solution of the reduced equation. Diagnostic only: isolates how much of the
// measured error is attributable to the transport coupling.
double forcing_only_error(const PeriodicGrid& grid, double dt, double T, double eps) {
    const TimeMesh mesh = perturbed_uniform(dt, T, 0.0, 1);
    const StabilizationConfig stab = stabilization(2, 0.5, 0.5, 1.0, 1.0);
    const SpectralField profile = benchmark_profile(grid);

    auto g_at = [&](double t) {  // u_t + eps*Delta^2 u along the benchmark
        SpectralField f(grid);
        const double c = std::cos(t), s = std::sin(t);
        for (int ix = 0; ix < grid.n; ++ix)
            for (int iy = 0; iy < grid.n; ++iy)
                f.at(ix, iy) = (eps * grid.lam(ix, iy) * c - s) * profile.at(ix, iy);
        return f;
    };

    SchemeState state;
    state.u = benchmark_solution(0.0, grid);
    state.f_hist.push_front(g_at(0.0));
    SpectralField u1 = benchmark_solution(mesh.nodes[1], grid);
    state.advance(std::move(u1), g_at(mesh.nodes[1]), mesh.step(0), 2);

    for (int n = 1; n < mesh.n_steps(); ++n) {
        const LagrangeWindow w =
            lagrange_window(2, {state.step_hist.begin(), state.step_hist.begin() + 1});
        StepResult r = etdms_step(state, w, stab, mesh.step(n), eps, mesh.tau_max());
        SpectralField g = g_at(mesh.nodes[static_cast<std::size_t>(n + 1)]);
        state.advance(std::move(r.u_new), std::move(g), mesh.step(n), 2);
    }
    return norm_h(state.u - benchmark_solution(T, grid));
}

Verdict check_table_uniform(const std::filesystem::path& outdir) {
    Verdict v;
    const ConvergenceResult& res = benchmark_table(outdir);
    const bool sized = res.rows.size() == 7;
    double worst_err = 0.0, worst_rate = 0.0;
    for (std::size_t i = 0; sized && i < res.rows.size(); ++i) {
        const ConvergenceRow& row = res.rows[i];
        const double rel = std::abs(row.error_uniform - kRefErr[i]) / kRefErr[i];
        worst_err = std::max(worst_err, rel);
        std::string line = strf("N_T=%2d  measured %.4e  reference %.4e  (dev %7.1f%%)",
                                row.nt, row.error_uniform, kRefErr[i], 100.0 * rel);
        if (i >= 2) {
            const double dev = std::abs(row.rate_uniform - kRefRate[i]);
            worst_rate = std::max(worst_rate, dev);
            line += strf("  rate %.3f vs %.3f (dev %.3f)", row.rate_uniform, kRefRate[i], dev);
        }
        v.detail.push_back(line);
    }
    v.pass = sized && worst_err <= 0.05 && worst_rate <= 0.03;
    v.summary = strf("uniform-mesh errors vs fixed reference column: worst error dev %.0f%% (tol 5%%), worst rate dev from N_T=4 on %.3f (tol 0.03)",
                     100.0 * worst_err, worst_rate);

    const PeriodicGrid& grid = etdms::detail::shared_grid(32, 4.0 * kPi);
    double lin_worst = 0.0;
    std::string lin_line = "forcing-only variant (transport term disabled):";
    for (int level = 0; level < 7; ++level) {
        const double err = forcing_only_error(grid, 0.0025 / (1 << level), 1.0, 0.01);
        lin_worst = std::max(lin_worst, std::abs(err - kRefErr[static_cast<std::size_t>(level)]) /
                                            kRefErr[static_cast<std::size_t>(level)]);
        lin_line += strf(" %.3e", err);
    }
    v.detail.push_back(lin_line);
    v.detail.push_back(strf("forcing-only variant vs reference column: worst dev %.1f%% (diagnostic, non-gating)",
                            100.0 * lin_worst));
    return v;
}

Verdict check_table_perturbed(const std::filesystem::path& outdir) {
    Verdict v;
    const ConvergenceResult& res = benchmark_table(outdir);
    const bool sized = res.rows.size() == 7;
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; sized && i < res.rows.size(); ++i) {
        const ConvergenceRow& row = res.rows[i];
        std::string line = strf("N_T=%2d  error %.4e", row.nt, row.error_perturbed);
        if (i > 0) line += strf("  rate %.4f", row.rate_perturbed);
        if (i >= 4) {
            lo = std::min(lo, row.rate_perturbed);
            hi = std::max(hi, row.rate_perturbed);
        }
        v.detail.push_back(line);
    }
    v.pass = sized && lo >= 1.95 && hi <= 2.05;
    v.summary = strf("three finest refined-mesh rates span [%.4f, %.4f] (required within [1.95, 2.05]); error values are seed-dependent by design",
                     lo, hi);
    return v;
}

// ---------- criterion 4: one multistep step vs brute-force ODE solve ----------

Verdict check_step_vs_ode_oracle() {
    Verdict v;
    const PeriodicGrid& grid = etdms::detail::shared_grid(8, 2.0 * kPi);
    const double eps = 0.02;
    const NssParams params{eps, &grid};
    std::mt19937_64 eng(424242);

    auto rand_field = [&]() {  // a few random low-frequency cosine waves
        std::vector<double> vv(grid.size(), 0.0);
        for (int w = 0; w < 5; ++w) {
            const double amp = 0.4 * (2.0 * uniform01(eng) - 1.0);
            const int jx = static_cast<int>(uniform01(eng) * 5.0) - 2;
            const int jy = static_cast<int>(uniform01(eng) * 5.0) - 2;
            const double ph = 2.0 * kPi * uniform01(eng);
            for (int ix = 0; ix < grid.n; ++ix)
                for (int iy = 0; iy < grid.n; ++iy)
                    vv[static_cast<std::size_t>(ix) * grid.n + iy] +=
                        amp * std::cos(jx * grid.dx() * ix + jy * grid.dx() * iy + ph);
        }
        return to_spectral(grid, vv);
    };
    auto draw_tau = [&]() { return 1e-3 * std::pow(100.0, uniform01(eng)); };

    double worst = 0.0;
    int worst_trial = -1;
    for (int trial = 0; trial < 100; ++trial) {
        const double tau_prev = draw_tau();
        double tau_n = draw_tau();
        while (std::abs(tau_n - tau_prev) < 1e-6) tau_n = draw_tau();

        const SpectralField u_prev = rand_field();
        const SpectralField u_cur = rand_field();
        const SpectralField g_prev = nonlinear_term(u_prev, params);
        const SpectralField g_cur = nonlinear_term(u_cur, params);

        const double ratio = std::max(tau_n / tau_prev, tau_prev / tau_n);
        const double tau_max = std::max(tau_n, tau_prev);
        const StabilizationConfig stab = stabilization(2, 0.5, 0.5, 1.0, std::max(1.0, ratio));

        SchemeState st;
        st.u = u_cur;
        st.f_hist.push_front(g_prev);
        st.f_hist.push_front(g_cur);
        st.step_hist.push_front(tau_prev);
        const LagrangeWindow win = lagrange_window(2, {tau_prev});
        const StepResult r = etdms_step(st, win, stab, tau_n, eps, tau_max);

        // independent reference: Vandermonde interpolation coefficients and an
        // adaptive RK integration of the per-mode interval problem
        //   m y' = c0 + c1 s - eps*lam*y
        const auto xi = oracle::vandermonde_lagrange({0.0, -tau_prev});
        const std::size_t dim = grid.size();
        oracle::cvec c0(dim), c1(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            c0[i] = xi[0][0] * g_cur.c[i] + xi[1][0] * g_prev.c[i];
            c1[i] = xi[0][1] * g_cur.c[i] + xi[1][1] * g_prev.c[i];
        }
        std::vector<double> lam_v(dim), m_v(dim);
        for (int ix = 0; ix < grid.n; ++ix)
            for (int iy = 0; iy < grid.n; ++iy) {
                const std::size_t idx = static_cast<std::size_t>(ix) * grid.n + iy;
                lam_v[idx] = grid.lam(ix, iy);
                m_v[idx] = 1.0 + stab.a_stab * tau_max * tau_max *
                                     (lam_v[idx] > 0.0 ? std::pow(lam_v[idx], stab.p_k) : 0.0);
            }
        oracle::OdeProblem prob;
        prob.y0 = oracle::cvec(u_cur.c.begin(), u_cur.c.end());
        prob.t1 = tau_n;
        prob.rhs = [&](double s, const oracle::cvec& y, oracle::cvec& dy) {
            for (std::size_t i = 0; i < dim; ++i)
                dy[i] = (c0[i] + s * c1[i] - eps * lam_v[i] * y[i]) / m_v[i];
        };
        const oracle::OdeResult ref = oracle::solve_reference(prob);

        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            num += std::norm(r.u_new.c[i] - ref.y[i]);
            den += std::norm(ref.y[i]);
        }
        const double rel = std::sqrt(num / den);
        if (rel > worst) {
            worst = rel;
            worst_trial = trial;
        }
    }
    v.pass = worst <= 1e-8;
    v.summary = strf("100 randomized variable-step windows vs adaptive RK reference: worst relative L2 deviation %.3e (tol 1e-8, trial %d)",
                     worst, worst_trial);
    return v;
}

// ---------- criterion 5: modified-energy monotonicity ----------

Verdict check_modified_energy_monotone() {
    Verdict v;
    const PeriodicGrid& grid = etdms::detail::shared_grid(64, 2.0 * kPi);
    const TimeMesh mesh = perturbed_uniform(0.01, 50.0, 0.1, 50125);
    const StabilizationConfig stab =
        stabilization(2, 0.5, 0.5, 1.0, std::max(1.0, measured_ratio(mesh, 2)));
    ExperimentConfig icfg;  // only the initial-condition fields are used
    const SpectralField u0 = make_initial(icfg, grid);
    const FixedRunResult run = run_fixed_nss(grid, mesh, stab, 0.005, u0, 8);

    long violations = 0, worst_n = -1;
    double worst_excess = -1e300, max_increment = -1e300;
    for (std::size_t n = 2; n + 1 < run.series.size(); ++n) {
        const double cur = run.series[n].modified_energy;
        const double nxt = run.series[n + 1].modified_energy;
        const double slack = 1e-8 * std::max(1.0, std::abs(cur));
        const double excess = nxt - cur - slack;
        max_increment = std::max(max_increment, nxt - cur);
        if (excess > 0.0) ++violations;
        if (excess > worst_excess) {
            worst_excess = excess;
            worst_n = static_cast<long>(n);
        }
    }
    v.pass = !run.aborted && violations == 0 && run.series.size() > 3;
    v.summary = strf("%d steps, modified energy %.4f -> %.4f, violations %ld, worst step increment %.3e (slack 1e-8*max(1,|E~|))",
                     mesh.n_steps(), run.series[2].modified_energy,
                     run.series.back().modified_energy, violations, max_increment);
    if (violations > 0)
        v.detail.push_back(strf("first/worst violation near step %ld, excess %.3e", worst_n, worst_excess));
    if (run.aborted) v.detail.push_back(strf("run aborted at step %ld", run.abort_step));
    return v;
}

// ---------- criterion 6: mass conservation ----------

Verdict check_mass_conservation() {
    Verdict v;
    const PeriodicGrid& grid = etdms::detail::shared_grid(32, 2.0 * kPi);
    const TimeMesh mesh = perturbed_uniform(0.01, 10.0, 0.1, 61001);  // 1000 steps
    const StabilizationConfig stab =
        stabilization(2, 0.5, 0.5, 1.0, std::max(1.0, measured_ratio(mesh, 2)));
    ExperimentConfig icfg;
    icfg.ic_seed = 99;
    const SpectralField u0 = make_initial(icfg, grid);
    const FixedRunResult run = run_fixed_nss(grid, mesh, stab, 0.01, u0, 8);

    double drift = 0.0;
    for (const Diagnostics& d : run.series)
        drift = std::max(drift, std::abs(d.mass - run.series.front().mass));
    v.pass = !run.aborted && run.series.size() >= 1001 && drift <= 1e-12;
    v.summary = strf("%zu recorded states over %d steps, max |mean(u^n) - mean(u^0)| = %.3e (tol 1e-12)",
                     run.series.size(), mesh.n_steps(), drift);
    return v;
}

// ---------- criterion 7: phi-function branch agreement at the switch ----------

std::complex<double> phi_direct(int j, std::complex<double> z) {
    static const double inv_fact[] = {1.0, 1.0, 0.5, 1.0 / 6, 1.0 / 24, 1.0 / 120, 1.0 / 720};
    std::complex<double> p = std::exp(z);
    for (int i = 0; i < j; ++i) p = (p - inv_fact[i]) / z;
    return p;
}

std::complex<double> phi_series(int j, std::complex<double> z) {
    static const double inv_fact[] = {1.0, 1.0, 0.5, 1.0 / 6, 1.0 / 24, 1.0 / 120, 1.0 / 720};
    std::complex<double> term = inv_fact[j], sum = term;
    for (int m = 1; m <= 60; ++m) {
        term *= z / static_cast<double>(m + j);
        sum += term;
        if (std::abs(term) < 1e-22 * std::abs(sum)) break;
    }
    return sum;
}

Verdict check_phi_branches() {
    Verdict v;
    double worst_circle = 0.0;
    for (int j = 0; j <= kPhiMaxIndex; ++j)
        for (int i = 0; i < 100; ++i) {
            const double th = 2.0 * kPi * i / 100.0;
            const std::complex<double> z = std::polar(0.5, th);
            worst_circle = std::max(worst_circle, std::abs(phi_direct(j, z) - phi_series(j, z)));
        }
    // seam of the shipped function: series for |z| <= 0.5, direct just outside
    double worst_seam = 0.0;
    for (int j = 0; j <= kPhiMaxIndex; ++j) {
        worst_seam = std::max(worst_seam,
                              std::abs(phi(j, 0.5) - phi(j, std::nextafter(0.5, 1.0))));
        worst_seam = std::max(worst_seam,
                              std::abs(phi(j, -0.5) - phi(j, std::nextafter(-0.5, -1.0))));
    }
    v.pass = worst_circle <= 1e-13 && worst_seam <= 1e-13;
    v.summary = strf("direct vs series on |z|=0.5, j<=6, 100-point scan: worst %.3e; shipped branch seam jump: worst %.3e (tol 1e-13)",
                     worst_circle, worst_seam);
    return v;
}

// ---------- criterion 8: interpolation-coefficient engine ----------

Verdict check_lagrange_engine() {
    Verdict v;
    std::mt19937_64 eng(321321);
    double worst_vand = 0.0, worst_unity = 0.0, worst_scale = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int k = 1 + static_cast<int>(uniform01(eng) * 5.0);
        std::vector<double> steps(static_cast<std::size_t>(k - 1));
        for (double& s : steps) s = std::pow(4.0, uniform01(eng) - 0.5);  // pairwise ratio <= 4
        const LagrangeWindow w = lagrange_window(k, steps);

        std::vector<double> nodes(static_cast<std::size_t>(k));
        for (int m = 0; m < k; ++m) nodes[static_cast<std::size_t>(m)] = w.node(m);
        const auto ref = oracle::vandermonde_lagrange(nodes);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                const double a = w.xi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                const double b = ref[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                worst_vand = std::max(worst_vand, std::abs(a - b) / std::max(1.0, std::abs(b)));
            }

        const double span = std::abs(w.node(k - 1)) + 1.0;
        for (int p = 0; p <= 12; ++p) {
            const double s = -span + 2.0 * span * p / 12.0;
            double sum = 0.0;
            for (int i = 0; i < k; ++i) sum += w.eval(i, s);
            worst_unity = std::max(worst_unity, std::abs(sum - 1.0));
        }

        const double c = std::pow(10.0, 4.0 * uniform01(eng) - 3.0);  // [1e-3, 10]
        std::vector<double> scaled = steps;
        for (double& s : scaled) s *= c;
        const LagrangeWindow wc = lagrange_window(k, scaled);
        double cpow = 1.0;
        for (int j = 0; j < k; ++j) {
            for (int i = 0; i < k; ++i) {
                const double a = wc.xi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * cpow;
                const double b = w.xi[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                worst_scale = std::max(worst_scale, std::abs(a - b) / std::max(1.0, std::abs(b)));
            }
            cpow *= c;
        }
    }
    v.pass = worst_vand <= 1e-12 && worst_unity <= 1e-11 && worst_scale <= 1e-12;
    v.summary = strf("1000 random windows (k<=5, ratio<=4): vs Vandermonde %.3e (tol 1e-12), partition of unity %.3e (tol 1e-11), step-scaling invariance %.3e (tol 1e-12)",
                     worst_vand, worst_unity, worst_scale);
    return v;
}

// ---------- criterion 9: adaptive controller on the coarsening problem ----------

Verdict check_adaptive_controller(const std::filesystem::path& outdir) {
    Verdict v;
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::adaptive;
    cfg.n = 64;
    cfg.length = 2.0 * kPi;
    cfg.epsilon = 0.005;
    cfg.T = 60.0;
    cfg.output_dir = (outdir / "adaptive").string();
    std::filesystem::create_directories(cfg.output_dir);
    const AdaptiveComparisonResult res = run_adaptive_comparison(cfg);

    const auto& ev = res.adaptive.events;
    bool clamp_ok = !ev.empty();
    const double hi = cfg.tau_max * (1.0 + 1e-12);
    const double lo = cfg.tau_min * (1.0 - 1e-12);
    for (std::size_t i = 0; i < ev.size(); ++i) {
        const bool last = i + 1 == ev.size();  // horizon-truncated step may undershoot
        if (!(ev[i].tau > 0.0) || ev[i].tau > hi || (!last && ev[i].tau < lo)) clamp_ok = false;
    }
    long quarter = 0, saturated = 0;
    for (const AdaptiveEvent& e : ev)
        if (e.t > 0.75 * cfg.T) {
            ++quarter;
            if (e.tau >= cfg.tau_max * (1.0 - 1e-9)) ++saturated;
        }
    const double frac = quarter > 0 ? static_cast<double>(saturated) / quarter : 0.0;
    const bool sat_ok = frac >= 0.90;
    const bool dist_ok = res.dist_adaptive < res.dist_large;

    v.pass = clamp_ok && sat_ok && dist_ok;
    v.summary = strf("clamp %s; final-quarter saturation %.1f%% (need >=90%%); terminal |u_adp - u_ref| = %.4e %s |u_large - u_ref| = %.4e",
                     clamp_ok ? "respected" : "VIOLATED", 100.0 * frac, res.dist_adaptive,
                     dist_ok ? "<" : ">=", res.dist_large);
    v.detail.push_back(strf("accepted steps %zu (candidate pairs %ld); uniform comparisons: %d large / %d small steps",
                            ev.size(), res.adaptive.total_candidate_steps,
                            res.large_run.series.empty() ? 0 : static_cast<int>(res.large_run.series.size()) - 1,
                            res.small_run.series.empty() ? 0 : static_cast<int>(res.small_run.series.size()) - 1));
    v.detail.push_back(strf("final-quarter: %ld of %ld steps at tau_max; first accepted tau %.3e",
                            saturated, quarter, ev.empty() ? 0.0 : ev.front().tau));
    return v;
}

// ---------- criterion 10: coarsening scaling-law bands ----------

Verdict check_scaling_laws(const std::filesystem::path& outdir) {
    Verdict v;
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::coarsen;
    cfg.n = 64;
    cfg.length = 2.0 * kPi;
    cfg.epsilon = 0.005;
    cfg.dt0 = 0.01;
    cfg.T = 200.0;
    cfg.fit_hm_min_t = 1.0;
    cfg.fit_energy_min_t = 1.0;
    cfg.output_dir = (outdir / "coarsen").string();
    std::filesystem::create_directories(cfg.output_dir);
    const CoarsenResult res = run_coarsening(cfg);

    const double h_exp = res.height_fit.slope;
    const double m_exp = res.slope_fit.slope;
    const double e_slope = res.energy_fit.slope;
    const bool fits_ok = res.height_fit.valid && res.slope_fit.valid && res.energy_fit.valid;
    v.pass = !res.run.aborted && fits_ok && h_exp >= 0.35 && h_exp <= 0.65 &&
             m_exp >= 0.15 && m_exp <= 0.40 && e_slope < 0.0;
    v.summary = strf("informational bands: h ~ t^%.3f (band [0.35,0.65]), m ~ t^%.3f (band [0.15,0.40]), E ~ %.3f ln t + b (need < 0)",
                     h_exp, m_exp, e_slope);
    const Diagnostics& last = res.run.series.back();
    v.detail.push_back(strf("fit windows: h,m over t >= %g (%d points), energy over t >= %g (%d points)",
                            cfg.fit_hm_min_t, res.height_fit.points, cfg.fit_energy_min_t,
                            res.energy_fit.points));
    v.detail.push_back(strf("final state: t=%.1f, E=%.4f, h=%.4f, m=%.4f%s", last.t, last.energy,
                            last.height, last.slope, res.run.aborted ? "  (ABORTED)" : ""));
    return v;
}

void report(int id, const Verdict& v) {
    std::printf("criterion %d: %s - %s\n", id, v.pass ? "PASS" : "FAIL", v.summary.c_str());
    for (const std::string& line : v.detail) std::printf("    %s\n", line.c_str());
    std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    std::filesystem::path outdir = "acceptance_out";
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
            if (only < 1 || only > 10) {
                std::fprintf(stderr, "acceptance: criterion must lie in [1, 10]\n");
                return 2;
            }
        } else if (arg == "--output" && i + 1 < argc) {
            outdir = argv[++i];
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N] [--output DIR]\n");
            return 2;
        }
    }
    std::filesystem::create_directories(outdir);

    const std::vector<std::pair<int, std::function<Verdict()>>> checks = {
        {1, [&] { return check_constants(); }},
        {2, [&] { return check_table_uniform(outdir); }},
        {3, [&] { return check_table_perturbed(outdir); }},
        {4, [&] { return check_step_vs_ode_oracle(); }},
        {5, [&] { return check_modified_energy_monotone(); }},
        {6, [&] { return check_mass_conservation(); }},
        {7, [&] { return check_phi_branches(); }},
        {8, [&] { return check_lagrange_engine(); }},
        {9, [&] { return check_adaptive_controller(outdir); }},
        {10, [&] { return check_scaling_laws(outdir); }},
    };

    int failures = 0, ran = 0;
    for (const auto& [id, fn] : checks) {
        if (only != 0 && id != only) continue;
        ++ran;
        Verdict v;
        try {
            v = fn();
        } catch (const std::exception& e) {
            v.pass = false;
            v.summary = strf("unhandled exception: %s", e.what());
        }
        report(id, v);
        failures += v.pass ? 0 : 1;
    }
    if (only == 0) std::printf("acceptance: %d/%d criteria passed\n", ran - failures, ran);
    return failures;
}
