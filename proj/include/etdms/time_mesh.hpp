#pragma once

// Time meshes: perturbed-uniform construction, dyadic refinement keeping the
// coarse nodes, and the windowed step-ratio constraint tau_n/tau_m <= r_c for
// |n-m| < k.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace etdms {

// Bit-portable uniform doubles on [0,1): the mt19937_64 stream is specified
// by the standard; std::uniform_real_distribution is not.
inline double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

struct TimeMesh {
    std::vector<double> nodes;  // strictly increasing, nodes[0] = 0, back() = T
    std::uint64_t seed = 0;

    int n_steps() const { return static_cast<int>(nodes.size()) - 1; }
    double step(int j) const { return nodes[static_cast<std::size_t>(j + 1)] - nodes[static_cast<std::size_t>(j)]; }
    std::vector<double> steps() const {
        std::vector<double> s(static_cast<std::size_t>(n_steps()));
        for (int j = 0; j < n_steps(); ++j) s[static_cast<std::size_t>(j)] = step(j);
        return s;
    }
    double tau_max() const {
        double m = 0.0;
        for (int j = 0; j < n_steps(); ++j) m = std::max(m, step(j));
        return m;
    }
    double tau_min() const {
        double m = step(0);
        for (int j = 1; j < n_steps(); ++j) m = std::min(m, step(j));
        return m;
    }
};

inline TimeMesh perturbed_uniform(double dt0, double T, double amplitude, std::uint64_t seed) {
    if (!(dt0 > 0) || !(T > dt0))
        throw std::invalid_argument("perturbed_uniform: need dt0 > 0 and T > dt0");
    if (!(amplitude >= 0) || amplitude >= 0.5)
        throw std::invalid_argument("perturbed_uniform: amplitude must lie in [0, 0.5)");

    const int m = static_cast<int>(std::ceil(T / dt0 - 1e-12));
    TimeMesh mesh;
    mesh.seed = seed;
    mesh.nodes.resize(static_cast<std::size_t>(m) + 1);
    mesh.nodes[0] = 0.0;
    mesh.nodes[static_cast<std::size_t>(m)] = T;
    std::mt19937_64 eng(seed);
    for (int j = 1; j < m; ++j) {
        const double base = j * dt0;
        const double eta = 2.0 * uniform01(eng) - 1.0;
        // skip the perturbation next to a clamped short final interval
        const bool near_end = base + 0.5 * dt0 >= T;
        mesh.nodes[static_cast<std::size_t>(j)] = near_end ? base : base + amplitude * dt0 * eta;
    }
    for (int j = 0; j < m; ++j)
        if (!(mesh.nodes[static_cast<std::size_t>(j)] < mesh.nodes[static_cast<std::size_t>(j + 1)]))
            throw std::logic_error("perturbed_uniform: nodes not strictly increasing");
    return mesh;
}

// Halve every interval: coarse nodes are kept, new nodes are midpoints.
inline TimeMesh refine(const TimeMesh& mesh) {
    TimeMesh fine;
    fine.seed = mesh.seed;
    const std::size_t m = mesh.nodes.size() - 1;
    fine.nodes.resize(2 * m + 1);
    for (std::size_t i = 0; i < m; ++i) {
        fine.nodes[2 * i] = mesh.nodes[i];
        fine.nodes[2 * i + 1] = 0.5 * (mesh.nodes[i] + mesh.nodes[i + 1]);
    }
    fine.nodes[2 * m] = mesh.nodes[m];
    return fine;
}

struct RatioReport {
    bool ok = true;
    int n = -1, m = -1;   // worst offending step pair
    double ratio = 1.0;   // max windowed ratio encountered
};

inline RatioReport validate_ratio(const TimeMesh& mesh, int k, double r_c) {
    RatioReport rep;
    const int n_steps = mesh.n_steps();
    for (int n = 0; n < n_steps; ++n)
        for (int m = std::max(0, n - k + 1); m < n; ++m) {
            const double a = mesh.step(n), b = mesh.step(m);
            const double ratio = a > b ? a / b : b / a;
            if (ratio > rep.ratio) {
                rep.ratio = ratio;
                rep.n = n;
                rep.m = m;
            }
        }
    rep.ok = rep.ratio <= r_c;
    return rep;
}

// Realized windowed ratio, for feeding the stabilization chain's r_c.
inline double measured_ratio(const TimeMesh& mesh, int k) {
    return validate_ratio(mesh, k, 1.0).ratio;
}

}  // namespace etdms
