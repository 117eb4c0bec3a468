#pragma once

// Experiment drivers: manufactured-solution convergence tables, coarsening
// runs with scaling-law fits, adaptive-vs-uniform comparisons, and the
// step-debug probe. All file outputs carry provenance headers and are
// reproducible bit-identically from the config.

#include <cmath>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <functional>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "adaptive.hpp"
#include "config.hpp"
#include "etd_step.hpp"
#include "io.hpp"
#include "nss.hpp"
#include "oracle.hpp"
#include "stabilization.hpp"
#include "time_mesh.hpp"

namespace etdms {

namespace detail {

// Fields carry a pointer to their grid, so grids backing returned results
// need stable addresses for the process lifetime.
inline const PeriodicGrid& shared_grid(int n, double length) {
    static std::mutex mu;
    static std::deque<PeriodicGrid> store;
    std::lock_guard<std::mutex> lock(mu);
    for (const PeriodicGrid& g : store)
        if (g.n == n && g.length == length) return g;
    store.emplace_back(n, length);
    return store.back();
}

}  // namespace detail

// -------- initial conditions --------

inline SpectralField make_initial(const ExperimentConfig& cfg, const PeriodicGrid& grid) {
    if (cfg.ic_type == "manufactured") return benchmark_solution(0.0, grid);
    std::mt19937_64 eng(cfg.ic_seed);
    std::vector<double> v(grid.size(), 0.0);
    for (int ix = 0; ix < grid.n; ++ix) {
        const double x = grid.dx() * ix;
        for (int iy = 0; iy < grid.n; ++iy) {
            const double noise = cfg.ic_amplitude * (2.0 * uniform01(eng) - 1.0);
            double base = 0.0;
            if (cfg.ic_type == "sincos_noise") base = std::sin(x) * std::cos(grid.dx() * iy);
            else if (cfg.ic_type != "random")
                throw std::invalid_argument("unknown initial-condition type: " + cfg.ic_type);
            v[static_cast<std::size_t>(ix) * grid.n + iy] = base + noise;
        }
    }
    return to_spectral(grid, v);
}

// -------- stabilization from config + realized mesh --------

inline StabilizationConfig resolve_stabilization(const ExperimentConfig& cfg, double realized_ratio) {
    const double r_c = cfg.r_c_override ? *cfg.r_c_override : std::max(1.0, realized_ratio);
    StabilizationConfig stab = stabilization(cfg.k, cfg.beta, cfg.gamma, cfg.c_lip, r_c);
    if (cfg.a_override) stab.a_stab = *cfg.a_override;
    return stab;
}

inline void provenance_common(CsvBuilder& csv, const ExperimentConfig& cfg,
                              const StabilizationConfig& stab, double tau_max) {
    csv.provenance("artifact_version", kArtifactVersion);
    csv.provenance("config_hash", config_hash(cfg));
    csv.provenance("config", canonical_config(cfg));
    csv.provenance("mesh_seed", std::to_string(cfg.mesh_seed));
    csv.provenance("ic_seed", std::to_string(cfg.ic_seed));
    csv.provenance("k", std::to_string(stab.k));
    csv.provenance("beta", format_double(stab.beta));
    csv.provenance("gamma", format_double(stab.gamma));
    csv.provenance("c_lip", format_double(stab.c_lip));
    csv.provenance("r_c", format_double(stab.r_c));
    csv.provenance("A", format_double(stab.a_stab));
    csv.provenance("c_bar0", format_double(stab.k >= 1 ? stab.c_bar[0] : 1.0));
    csv.provenance("tau_max", format_double(tau_max));
}

// -------- manufactured-solution fixed-mesh run --------

// History seeding, then ETD-MS(k) across the mesh; forcing sampled at the
// interpolation nodes is folded into the stored nonlinear evaluations.
inline SpectralField run_manufactured(const PeriodicGrid& grid, const TimeMesh& mesh,
                                      const StabilizationConfig& stab, double epsilon,
                                      const std::string& seeding) {
    const int k = stab.k;
    if (mesh.n_steps() < k) throw std::invalid_argument("run_manufactured: mesh shorter than k steps");
    const double tau_max = mesh.tau_max();
    NssParams params{epsilon, &grid};

    auto g_at = [&](const SpectralField& u, double t) {
        SpectralField g = nonlinear_term(u, params);
        g += manufactured_forcing(t, grid, epsilon);
        return g;
    };

    SchemeState state;
    state.u = benchmark_solution(mesh.nodes[0], grid);
    state.f_hist.push_front(g_at(state.u, mesh.nodes[0]));

    if (seeding == "exact") {
        for (int i = 1; i < k; ++i) {
            const double t_i = mesh.nodes[static_cast<std::size_t>(i)];
            SpectralField u_i = benchmark_solution(t_i, grid);
            state.advance(u_i, g_at(u_i, t_i), mesh.step(i - 1), k);
        }
    } else if (seeding == "etd1") {
        for (int i = 0; i < k - 1; ++i) {
            const double t_i = mesh.nodes[static_cast<std::size_t>(i)];
            const double tau_i = mesh.step(i);
            SpectralField u = state.u;
            for (int s = 0; s < k; ++s) {  // k ETD1 sub-steps per boot interval
                const double t_sub = t_i + tau_i * s / k;
                u = etd1_step(u, g_at(u, t_sub), tau_i / k, epsilon);
            }
            state.advance(u, g_at(u, t_i + tau_i), tau_i, k);
        }
    } else {
        throw std::invalid_argument("run_manufactured: seeding must be 'exact' or 'etd1'");
    }

    for (int n = k - 1; n < mesh.n_steps(); ++n) {
        const LagrangeWindow window =
            lagrange_window(k, {state.step_hist.begin(), state.step_hist.begin() + (k - 1)});
        StepResult r = etdms_step(state, window, stab, mesh.step(n), epsilon, tau_max);
        const double t_next = mesh.nodes[static_cast<std::size_t>(n + 1)];
        SpectralField g_next = g_at(r.u_new, t_next);
        state.advance(std::move(r.u_new), std::move(g_next), mesh.step(n), k);
    }
    return state.u;
}

// -------- convergence study --------

struct ConvergenceRow {
    int nt = 1;
    double error_uniform = 0.0, rate_uniform = 0.0;
    double error_perturbed = 0.0, rate_perturbed = 0.0;
};

struct ConvergenceResult {
    std::vector<ConvergenceRow> rows;
};

// Resolution guard: relative spectral content of the benchmark solution
// outside the dealiased band. Nonzero only when the grid is too coarse (or
// the domain too long) for the benchmark modes to survive dealiasing.
inline double benchmark_resolution_defect(const PeriodicGrid& grid) {
    const SpectralField u = to_spectral(grid, to_physical(benchmark_solution(0.0, grid)));
    double inside = 0.0, outside = 0.0;
    for (int ix = 0; ix < grid.n; ++ix) {
        const int jx = grid.signed_index(ix);
        for (int iy = 0; iy < grid.n; ++iy) {
            const int jy = grid.signed_index(iy);
            const double a = std::norm(u.at(ix, iy));
            if (3 * std::max(std::abs(jx), std::abs(jy)) > grid.n) outside += a;
            else inside += a;
        }
    }
    return inside > 0.0 ? std::sqrt(outside / inside) : 1.0;
}

inline ConvergenceResult run_convergence(const ExperimentConfig& cfg) {
    const PeriodicGrid& grid = detail::shared_grid(cfg.n, cfg.length);
    const double defect = benchmark_resolution_defect(grid);
    if (defect > 1e-8)
        throw std::runtime_error("config error: grid unresolved, spectral residual " +
                                 format_double(defect));

    ConvergenceResult result;
    TimeMesh coarse = perturbed_uniform(cfg.dt0, cfg.T, cfg.amplitude, cfg.mesh_seed);
    TimeMesh perturbed = coarse;

    for (int level = 0; level < cfg.levels; ++level) {
        const int nt = 1 << level;
        ConvergenceRow row;
        row.nt = nt;

        {  // uniform: dt = dt0 / N_T
            TimeMesh mesh = perturbed_uniform(cfg.dt0 / nt, cfg.T, 0.0, cfg.mesh_seed);
            StabilizationConfig stab = resolve_stabilization(cfg, measured_ratio(mesh, cfg.k));
            SpectralField u = run_manufactured(grid, mesh, stab, cfg.epsilon, cfg.seeding);
            row.error_uniform = norm_h(u - benchmark_solution(cfg.T, grid));
        }
        {  // perturbed: dyadic refinement of the seeded coarse mesh
            StabilizationConfig stab = resolve_stabilization(cfg, measured_ratio(perturbed, cfg.k));
            SpectralField u = run_manufactured(grid, perturbed, stab, cfg.epsilon, cfg.seeding);
            row.error_perturbed = norm_h(u - benchmark_solution(cfg.T, grid));
        }
        if (level > 0) {
            row.rate_uniform = std::log2(result.rows.back().error_uniform / row.error_uniform);
            row.rate_perturbed = std::log2(result.rows.back().error_perturbed / row.error_perturbed);
        } else {
            row.rate_uniform = row.rate_perturbed = std::nan("");
        }
        result.rows.push_back(row);
        perturbed = refine(perturbed);
    }

    // outputs
    const std::filesystem::path dir(cfg.output_dir);
    StabilizationConfig stab0 = resolve_stabilization(cfg, measured_ratio(coarse, cfg.k));
    CsvBuilder csv;
    provenance_common(csv, cfg, stab0, coarse.tau_max());
    csv.provenance("resolution_defect", format_double(defect));
    csv.header({"N_T", "error_uniform", "rate_uniform", "error_perturbed", "rate_perturbed"});
    for (const auto& row : result.rows) {
        csv.cell(row.nt);
        csv.cell(row.error_uniform);
        csv.cell(std::isnan(row.rate_uniform) ? std::string() : format_double(row.rate_uniform));
        csv.cell(row.error_perturbed);
        csv.cell(std::isnan(row.rate_perturbed) ? std::string() : format_double(row.rate_perturbed));
        csv.end_row();
    }
    csv.write(dir / "converge.csv");

    CsvBuilder mesh_csv;
    provenance_common(mesh_csv, cfg, stab0, coarse.tau_max());
    mesh_csv.header({"index", "t"});
    for (std::size_t i = 0; i < coarse.nodes.size(); ++i) {
        mesh_csv.cell(static_cast<long>(i));
        mesh_csv.cell(coarse.nodes[i]);
        mesh_csv.end_row();
    }
    mesh_csv.write(dir / "mesh_perturbed_coarse.csv");
    return result;
}

// -------- unforced NSS fixed-mesh run (coarsening core) --------

struct FixedRunResult {
    std::vector<Diagnostics> series;   // one entry per node from t = 0
    std::vector<std::pair<double, double>> seminorms;  // per interval
    SpectralField u_final;
    bool aborted = false;
    long abort_step = -1;
};

using NodeHook = std::function<void(long step_index, double t, const SpectralField& u)>;

inline FixedRunResult run_fixed_nss(const PeriodicGrid& grid, const TimeMesh& mesh,
                                    const StabilizationConfig& stab, double epsilon,
                                    const SpectralField& u0, int quad_order,
                                    const NodeHook& node_hook = {}) {
    const int k = stab.k;
    if (mesh.n_steps() < k) throw std::invalid_argument("run_fixed_nss: mesh shorter than k steps");
    const double tau_max = mesh.tau_max();
    NssParams params{epsilon, &grid};
    FixedRunResult out;

    std::vector<std::pair<double, double>> window;  // seminorms, newest first

    auto record = [&](double t, double tau, const SpectralField& u) {
        Diagnostics d;
        d.t = t;
        d.energy = energy(u, params);
        auto [h, m] = roughness_and_slope(u);
        d.height = h;
        d.slope = m;
        d.mass = mean_value(u);
        d.modified_energy = static_cast<int>(window.size()) >= k - 1
                                ? modified_energy(window, d.energy, stab, tau_max)
                                : d.energy;
        (void)tau;
        out.series.push_back(d);
        const bool finite = std::isfinite(d.energy) && std::isfinite(d.height);
        if (finite && node_hook) node_hook(static_cast<long>(out.series.size()) - 1, t, u);
        return finite;
    };

    SchemeState state;
    state.u = u0;
    state.f_hist.push_front(nonlinear_term(u0, params));
    record(0.0, 0.0, state.u);

    // boot intervals: k ETD1 sub-steps each, seminorms summed over sub-steps
    for (int i = 0; i < k - 1; ++i) {
        const double tau_i = mesh.step(i);
        SpectralField u = state.u;
        double s_h = 0.0, s_p = 0.0;
        for (int s = 0; s < k; ++s) {
            SpectralField f = nonlinear_term(u, params);
            StepResult r = etd1_step_dense(u, f, tau_i / k, epsilon, stab.p_k);
            const auto sem = interval_seminorms(r, quad_order);
            s_h += sem.first;
            s_p += sem.second;
            u = std::move(r.u_new);
        }
        window.insert(window.begin(), {s_h, s_p});
        if (static_cast<int>(window.size()) > k - 1) window.pop_back();
        out.seminorms.push_back({s_h, s_p});
        SpectralField f_new = nonlinear_term(u, params);
        state.advance(std::move(u), std::move(f_new), tau_i, k);
        record(mesh.nodes[static_cast<std::size_t>(i + 1)], tau_i, state.u);
    }

    for (int n = k - 1; n < mesh.n_steps(); ++n) {
        const LagrangeWindow lw =
            lagrange_window(k, {state.step_hist.begin(), state.step_hist.begin() + (k - 1)});
        StepResult r = etdms_step(state, lw, stab, mesh.step(n), epsilon, tau_max);
        const auto sem = interval_seminorms(r, quad_order);
        window.insert(window.begin(), sem);
        if (static_cast<int>(window.size()) > k - 1) window.pop_back();
        out.seminorms.push_back(sem);
        SpectralField f_new = nonlinear_term(r.u_new, params);
        state.advance(std::move(r.u_new), std::move(f_new), mesh.step(n), k);
        if (!record(mesh.nodes[static_cast<std::size_t>(n + 1)], mesh.step(n), state.u)) {
            out.aborted = true;
            out.abort_step = n;
            break;
        }
    }
    out.u_final = state.u;
    return out;
}

// -------- least-squares line fit --------

struct LineFit {
    double slope = std::nan("");
    double intercept = std::nan("");
    int points = 0;
    bool valid = false;
};

inline LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    LineFit f;
    f.points = static_cast<int>(xs.size());
    if (xs.size() != ys.size() || xs.size() < 2) return f;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double n = static_cast<double>(xs.size());
    const double det = n * sxx - sx * sx;
    if (det == 0.0) return f;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy * sxx - sx * sxy) / det;
    f.valid = true;
    return f;
}

// -------- shared CSV writers --------

inline void write_diagnostics_csv(const std::filesystem::path& path, const ExperimentConfig& cfg,
                                  const StabilizationConfig& stab, const TimeMesh& mesh,
                                  const std::vector<Diagnostics>& series) {
    CsvBuilder csv;
    provenance_common(csv, cfg, stab, mesh.tau_max());
    csv.header({"step", "t", "tau", "E", "E_modified", "h", "m", "mass"});
    for (std::size_t i = 0; i < series.size(); ++i) {
        const Diagnostics& d = series[i];
        csv.cell(static_cast<long>(i));
        csv.cell(d.t);
        csv.cell(i == 0 ? 0.0 : mesh.step(static_cast<int>(i) - 1));
        csv.cell(d.energy);
        csv.cell(d.modified_energy);
        csv.cell(d.height);
        csv.cell(d.slope);
        csv.cell(d.mass);
        csv.end_row();
    }
    csv.write(path);
}

inline void write_mesh_csv(const std::filesystem::path& path, const ExperimentConfig& cfg,
                           const StabilizationConfig& stab, const TimeMesh& mesh) {
    CsvBuilder csv;
    provenance_common(csv, cfg, stab, mesh.tau_max());
    csv.provenance("measured_ratio", format_double(measured_ratio(mesh, stab.k)));
    csv.header({"index", "t"});
    for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
        csv.cell(static_cast<long>(i));
        csv.cell(mesh.nodes[i]);
        csv.end_row();
    }
    csv.write(path);
}

inline std::string snapshot_base(const char* prefix, double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", t);
    return std::string(prefix) + buf;
}

// -------- coarsening study --------

struct CoarsenResult {
    FixedRunResult run;
    StabilizationConfig stab;
    double tau_max = 0.0;
    LineFit energy_fit;  // E ~ slope * ln t + intercept
    LineFit height_fit;  // ln h ~ exponent * ln t + intercept
    LineFit slope_fit;   // ln m ~ exponent * ln t + intercept
};

inline CoarsenResult run_coarsening(const ExperimentConfig& cfg) {
    const PeriodicGrid& grid = detail::shared_grid(cfg.n, cfg.length);
    const TimeMesh mesh = perturbed_uniform(cfg.dt0, cfg.T, cfg.amplitude, cfg.mesh_seed);
    CoarsenResult out;
    out.stab = resolve_stabilization(cfg, measured_ratio(mesh, cfg.k));
    out.tau_max = mesh.tau_max();

    const std::filesystem::path dir(cfg.output_dir);
    const std::string hash = config_hash(cfg);
    const SpectralField u0 = make_initial(cfg, grid);

    std::vector<double> snap_times = cfg.snapshot_times;
    std::sort(snap_times.begin(), snap_times.end());
    std::size_t next_snap = 0;
    double last_good_t = 0.0;
    SpectralField last_good = u0;
    NodeHook hook = [&](long, double t, const SpectralField& u) {
        last_good = u;
        last_good_t = t;
        while (next_snap < snap_times.size() && t >= snap_times[next_snap] - 1e-9) {
            write_snapshot(dir, snapshot_base("snapshot_t", snap_times[next_snap]),
                           to_physical(u), grid, t, hash);
            ++next_snap;
        }
    };

    out.run = run_fixed_nss(grid, mesh, out.stab, cfg.epsilon, u0, cfg.quad_order, hook);

    write_snapshot(dir, out.run.aborted ? "snapshot_last_good" : "snapshot_final",
                   to_physical(last_good), grid, last_good_t, hash);
    write_diagnostics_csv(dir / "coarsen.csv", cfg, out.stab, mesh, out.run.series);
    write_mesh_csv(dir / "mesh.csv", cfg, out.stab, mesh);

    // scaling fits over the configured windows; samples are decimated to a
    // log-uniform grid in t so the densely sampled late times do not dominate
    std::vector<double> lt_e, e_vals, lt_hm, lh, lm;
    const double stride = std::pow(10.0, 1.0 / 40.0);  // 40 samples per decade
    double next_e = 0.0;
    double next_hm = 0.0;
    for (const Diagnostics& d : out.run.series) {
        if (d.t <= 0.0) continue;
        if (d.t >= cfg.fit_energy_min_t && d.t >= next_e) {
            lt_e.push_back(std::log(d.t));
            e_vals.push_back(d.energy);
            next_e = d.t * stride;
        }
        if (d.t >= cfg.fit_hm_min_t && d.t >= next_hm && d.height > 0.0 && d.slope > 0.0) {
            lt_hm.push_back(std::log(d.t));
            lh.push_back(std::log(d.height));
            lm.push_back(std::log(d.slope));
            next_hm = d.t * stride;
        }
    }
    out.energy_fit = fit_line(lt_e, e_vals);
    out.height_fit = fit_line(lt_hm, lh);
    out.slope_fit = fit_line(lt_hm, lm);

    nlohmann::json fits;
    fits["config_hash"] = hash;
    fits["aborted"] = out.run.aborted;
    fits["abort_step"] = out.run.abort_step;
    auto fit_obj = [](const LineFit& f) {
        nlohmann::json o;
        o["slope"] = f.slope;
        o["intercept"] = f.intercept;
        o["points"] = f.points;
        o["valid"] = f.valid;
        return o;
    };
    fits["energy_vs_ln_t"] = fit_obj(out.energy_fit);
    fits["ln_height_vs_ln_t"] = fit_obj(out.height_fit);
    fits["ln_slope_vs_ln_t"] = fit_obj(out.slope_fit);
    write_file_atomic(dir / "fits.json", fits.dump(2) + "\n");
    return out;
}

// -------- adaptive vs uniform comparison --------

struct AdaptiveComparisonResult {
    AdaptiveTrajectory adaptive;
    FixedRunResult large_run, small_run;
    StabilizationConfig stab;
    double dist_adaptive = 0.0;  // ||u_adaptive(T) - u_ref(T)||, ref = uniform tau_min
    double dist_large = 0.0;     // ||u_large(T) - u_ref(T)||
};

inline AdaptiveComparisonResult run_adaptive_comparison(const ExperimentConfig& cfg) {
    const PeriodicGrid& grid = detail::shared_grid(cfg.n, cfg.length);
    const NssParams params{cfg.epsilon, &grid};
    const std::filesystem::path dir(cfg.output_dir);
    const SpectralField u0 = make_initial(cfg, grid);

    AdaptiveConfig acfg;
    acfg.rho = cfg.rho;
    acfg.tol = cfg.tol;
    acfg.rate = cfg.rate;
    acfg.tau_min = cfg.tau_min;
    acfg.tau_max = cfg.tau_max;
    acfg.max_retries = cfg.max_retries;
    acfg.growth_cap = cfg.growth_cap;
    acfg.r_c = cfg.growth_r_c;

    AdaptiveComparisonResult out;
    out.stab = resolve_stabilization(cfg, cfg.growth_r_c);
    out.adaptive = adaptive_run(u0, params, acfg, out.stab, cfg.T, cfg.quad_order);

    {
        CsvBuilder csv;
        provenance_common(csv, cfg, out.stab, cfg.tau_max);
        csv.header({"step", "t", "tau", "e_rel", "retries", "accepted", "E", "E_modified"});
        for (const AdaptiveEvent& ev : out.adaptive.events) {
            csv.cell(ev.step);
            csv.cell(ev.t);
            csv.cell(ev.tau);
            csv.cell(ev.e_rel);
            csv.cell(ev.retries);
            csv.cell(ev.accepted ? 1 : 0);
            csv.cell(ev.energy);
            csv.cell(ev.modified_energy);
            csv.end_row();
        }
        csv.write(dir / "adaptive.csv");
    }

    const TimeMesh mesh_large = perturbed_uniform(cfg.tau_max, cfg.T, 0.0, cfg.mesh_seed);
    const TimeMesh mesh_small = perturbed_uniform(cfg.tau_min, cfg.T, 0.0, cfg.mesh_seed);
    StabilizationConfig stab_large = resolve_stabilization(cfg, measured_ratio(mesh_large, cfg.k));
    StabilizationConfig stab_small = resolve_stabilization(cfg, measured_ratio(mesh_small, cfg.k));
    out.large_run = run_fixed_nss(grid, mesh_large, stab_large, cfg.epsilon, u0, cfg.quad_order);
    out.small_run = run_fixed_nss(grid, mesh_small, stab_small, cfg.epsilon, u0, cfg.quad_order);
    write_diagnostics_csv(dir / "uniform_large.csv", cfg, stab_large, mesh_large, out.large_run.series);
    write_diagnostics_csv(dir / "uniform_small.csv", cfg, stab_small, mesh_small, out.small_run.series);

    out.dist_adaptive = norm_h(out.adaptive.u_final - out.small_run.u_final);
    out.dist_large = norm_h(out.large_run.u_final - out.small_run.u_final);

    nlohmann::json rep;
    rep["config_hash"] = config_hash(cfg);
    rep["dist_adaptive_to_ref"] = out.dist_adaptive;
    rep["dist_large_to_ref"] = out.dist_large;
    rep["steps_adaptive_accepted"] = static_cast<long>(out.adaptive.events.size());
    rep["steps_adaptive_candidates"] = out.adaptive.total_candidate_steps;
    rep["steps_large"] = static_cast<long>(mesh_large.n_steps());
    rep["steps_small"] = static_cast<long>(mesh_small.n_steps());
    write_file_atomic(dir / "comparison.json", rep.dump(2) + "\n");
    return out;
}

// -------- step-debug probe --------

struct StepDebugResult {
    FixedRunResult run;
    StabilizationConfig stab;
    TimeMesh mesh;
};

inline StepDebugResult run_step_debug(const ExperimentConfig& cfg) {
    const PeriodicGrid& grid = detail::shared_grid(cfg.n, cfg.length);
    const double horizon = cfg.dt0 * static_cast<double>(cfg.max_steps);
    StepDebugResult out;
    out.mesh = perturbed_uniform(cfg.dt0, horizon, cfg.amplitude, cfg.mesh_seed);
    out.stab = resolve_stabilization(cfg, measured_ratio(out.mesh, cfg.k));

    const std::filesystem::path dir(cfg.output_dir);
    const std::string hash = config_hash(cfg);
    const SpectralField u0 = make_initial(cfg, grid);
    out.run = run_fixed_nss(grid, out.mesh, out.stab, cfg.epsilon, u0, cfg.quad_order);

    CsvBuilder csv;
    provenance_common(csv, cfg, out.stab, out.mesh.tau_max());
    csv.header({"step", "t", "tau", "E", "E_modified", "h", "m", "mass", "S_H", "S_P"});
    for (std::size_t i = 0; i < out.run.series.size(); ++i) {
        const Diagnostics& d = out.run.series[i];
        csv.cell(static_cast<long>(i));
        csv.cell(d.t);
        csv.cell(i == 0 ? 0.0 : out.mesh.step(static_cast<int>(i) - 1));
        csv.cell(d.energy);
        csv.cell(d.modified_energy);
        csv.cell(d.height);
        csv.cell(d.slope);
        csv.cell(d.mass);
        csv.cell(i == 0 ? 0.0 : out.run.seminorms[i - 1].first);
        csv.cell(i == 0 ? 0.0 : out.run.seminorms[i - 1].second);
        csv.end_row();
    }
    csv.write(dir / "step_debug.csv");
    write_mesh_csv(dir / "mesh.csv", cfg, out.stab, out.mesh);
    write_snapshot(dir, "snapshot_final", to_physical(out.run.u_final), grid,
                   out.mesh.nodes.back(), hash);
    return out;
}

// Dispatch by configured experiment kind; returns the output directory used.
inline std::string run_experiment(const ExperimentConfig& cfg) {
    std::filesystem::create_directories(cfg.output_dir);
    switch (cfg.kind) {
        case ExperimentKind::converge: run_convergence(cfg); break;
        case ExperimentKind::coarsen: run_coarsening(cfg); break;
        case ExperimentKind::adaptive: run_adaptive_comparison(cfg); break;
        case ExperimentKind::step_debug: run_step_debug(cfg); break;
    }
    return cfg.output_dir;
}

}  // namespace etdms
