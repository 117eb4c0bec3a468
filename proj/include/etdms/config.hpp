#pragma once

// Experiment configuration: JSON round trip (see README for the schema) and
// the canonical serialization that defines the config hash.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "io.hpp"

namespace etdms {

enum class ExperimentKind { converge, coarsen, adaptive, step_debug };

inline std::string kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::converge: return "converge";
        case ExperimentKind::coarsen: return "coarsen";
        case ExperimentKind::adaptive: return "adaptive";
        case ExperimentKind::step_debug: return "step-debug";
    }
    return "?";
}

inline ExperimentKind kind_from_name(const std::string& s) {
    if (s == "converge") return ExperimentKind::converge;
    if (s == "coarsen") return ExperimentKind::coarsen;
    if (s == "adaptive") return ExperimentKind::adaptive;
    if (s == "step-debug") return ExperimentKind::step_debug;
    throw std::invalid_argument("unknown experiment kind: " + s);
}

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::converge;

    int n = 32;
    double length = 4.0 * 3.14159265358979323846;
    double epsilon = 0.01;

    // scheme
    int k = 2;
    double beta = 0.5, gamma = 0.5;
    double c_lip = 1.0;
    std::optional<double> a_override;   // bypass the constant chain
    std::optional<double> r_c_override; // else: measured from the realized mesh
    int quad_order = 8;

    // fixed meshes
    double dt0 = 0.0025;
    double T = 1.0;
    double amplitude = 0.1;
    std::uint64_t mesh_seed = 12345;
    int levels = 7;                 // convergence: N_T = 1, 2, ..., 2^{levels-1}
    std::string seeding = "exact";  // convergence history: "exact" | "etd1"

    // adaptive controller
    double rho = 0.95;
    double tol = 1e-3;
    double rate = 0.5;
    double tau_min = 1e-3;
    double tau_max = 1e-1;
    int max_retries = 10;
    bool growth_cap = true;
    double growth_r_c = 4.0;

    // initial condition
    std::string ic_type = "sincos_noise";  // "manufactured" | "sincos_noise" | "random"
    double ic_amplitude = 0.5;
    std::uint64_t ic_seed = 777;

    std::string output_dir = "out";
    std::vector<double> snapshot_times;
    long max_steps = 50;            // step-debug only

    // fit windows for the coarsening scaling laws
    double fit_energy_min_t = 100.0;
    double fit_hm_min_t = 10.0;
};

inline nlohmann::json to_json(const ExperimentConfig& c) {
    nlohmann::json j;
    j["kind"] = kind_name(c.kind);
    j["grid"] = {{"n", c.n}, {"length", c.length}};
    j["epsilon"] = c.epsilon;
    nlohmann::json scheme = {{"k", c.k},       {"beta", c.beta},
                             {"gamma", c.gamma}, {"c_lip", c.c_lip},
                             {"quad_order", c.quad_order}};
    if (c.a_override) scheme["a_override"] = *c.a_override;
    if (c.r_c_override) scheme["r_c"] = *c.r_c_override;
    j["scheme"] = scheme;
    j["mesh"] = {{"dt0", c.dt0},           {"T", c.T},
                 {"amplitude", c.amplitude}, {"seed", c.mesh_seed},
                 {"levels", c.levels},      {"seeding", c.seeding}};
    j["adaptive"] = {{"rho", c.rho},
                     {"tol", c.tol},
                     {"rate", c.rate},
                     {"tau_min", c.tau_min},
                     {"tau_max", c.tau_max},
                     {"max_retries", c.max_retries},
                     {"growth_cap", c.growth_cap},
                     {"r_c", c.growth_r_c}};
    j["initial"] = {{"type", c.ic_type}, {"amplitude", c.ic_amplitude}, {"seed", c.ic_seed}};
    j["output"] = c.output_dir;
    j["snapshot_times"] = c.snapshot_times;
    j["max_steps"] = c.max_steps;
    j["fit_windows"] = {{"energy_min_t", c.fit_energy_min_t}, {"hm_min_t", c.fit_hm_min_t}};
    return j;
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    if (j.contains("kind")) c.kind = kind_from_name(j["kind"].get<std::string>());
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        if (g.contains("n")) c.n = g["n"].get<int>();
        if (g.contains("length")) c.length = g["length"].get<double>();
    }
    if (j.contains("epsilon")) c.epsilon = j["epsilon"].get<double>();
    if (j.contains("scheme")) {
        const auto& s = j["scheme"];
        if (s.contains("k")) c.k = s["k"].get<int>();
        if (s.contains("beta")) c.beta = s["beta"].get<double>();
        if (s.contains("gamma")) c.gamma = s["gamma"].get<double>();
        if (s.contains("c_lip")) c.c_lip = s["c_lip"].get<double>();
        if (s.contains("a_override")) c.a_override = s["a_override"].get<double>();
        if (s.contains("r_c")) c.r_c_override = s["r_c"].get<double>();
        if (s.contains("quad_order")) c.quad_order = s["quad_order"].get<int>();
    }
    if (j.contains("mesh")) {
        const auto& m = j["mesh"];
        if (m.contains("dt0")) c.dt0 = m["dt0"].get<double>();
        if (m.contains("T")) c.T = m["T"].get<double>();
        if (m.contains("amplitude")) c.amplitude = m["amplitude"].get<double>();
        if (m.contains("seed")) c.mesh_seed = m["seed"].get<std::uint64_t>();
        if (m.contains("levels")) c.levels = m["levels"].get<int>();
        if (m.contains("seeding")) c.seeding = m["seeding"].get<std::string>();
    }
    if (j.contains("adaptive")) {
        const auto& a = j["adaptive"];
        if (a.contains("rho")) c.rho = a["rho"].get<double>();
        if (a.contains("tol")) c.tol = a["tol"].get<double>();
        if (a.contains("rate")) c.rate = a["rate"].get<double>();
        if (a.contains("tau_min")) c.tau_min = a["tau_min"].get<double>();
        if (a.contains("tau_max")) c.tau_max = a["tau_max"].get<double>();
        if (a.contains("max_retries")) c.max_retries = a["max_retries"].get<int>();
        if (a.contains("growth_cap")) c.growth_cap = a["growth_cap"].get<bool>();
        if (a.contains("r_c")) c.growth_r_c = a["r_c"].get<double>();
    }
    if (j.contains("initial")) {
        const auto& i = j["initial"];
        if (i.contains("type")) c.ic_type = i["type"].get<std::string>();
        if (i.contains("amplitude")) c.ic_amplitude = i["amplitude"].get<double>();
        if (i.contains("seed")) c.ic_seed = i["seed"].get<std::uint64_t>();
    }
    if (j.contains("output")) c.output_dir = j["output"].get<std::string>();
    if (j.contains("snapshot_times")) c.snapshot_times = j["snapshot_times"].get<std::vector<double>>();
    if (j.contains("max_steps")) c.max_steps = j["max_steps"].get<long>();
    if (j.contains("fit_windows")) {
        const auto& f = j["fit_windows"];
        if (f.contains("energy_min_t")) c.fit_energy_min_t = f["energy_min_t"].get<double>();
        if (f.contains("hm_min_t")) c.fit_hm_min_t = f["hm_min_t"].get<double>();
    }
    return c;
}

// canonical serialization (nlohmann sorts object keys) -> stable hash
inline std::string canonical_config(const ExperimentConfig& c) { return to_json(c).dump(); }
inline std::string config_hash(const ExperimentConfig& c) { return hash_hex(canonical_config(c)); }

}  // namespace etdms
