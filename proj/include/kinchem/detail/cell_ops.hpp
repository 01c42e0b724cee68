#pragma once

#include <span>

#include "kinchem/velocity_grid.hpp"

// Per-cell building blocks shared by the moment API, the serial reference
// kernels and the OpenMP kernels, so all paths produce bitwise-identical
// values: symmetric pairs are accumulated together and pairs summed left to
// right, matching VelocityGrid::moment.

namespace kinchem::detail {

struct Moments01 {
    double m0;
    double m1;
};

inline Moments01 pair_moments01(const VelocityGrid& grid,
                                std::span<const double> row) {
    const int half = grid.size() / 2;
    const auto nodes = grid.nodes();
    const auto weights = grid.weights();
    double m0 = 0.0;
    double m1 = 0.0;
    for (int p = 0; p < half; ++p) {
        const int j = p;
        const int k = grid.size() - 1 - p;
        m0 += weights[j] * row[j] + weights[k] * row[k];
        m1 += weights[j] * (nodes[j] * row[j]) + weights[k] * (nodes[k] * row[k]);
    }
    return {m0, m1};
}

inline double pair_moment0(const VelocityGrid& grid, std::span<const double> row) {
    const int half = grid.size() / 2;
    const auto weights = grid.weights();
    double m0 = 0.0;
    for (int p = 0; p < half; ++p) {
        const int k = grid.size() - 1 - p;
        m0 += weights[p] * row[p] + weights[k] * row[k];
    }
    return m0;
}

inline double pair_moment2(const VelocityGrid& grid, std::span<const double> row) {
    const int half = grid.size() / 2;
    const auto nodes = grid.nodes();
    const auto weights = grid.weights();
    double m2 = 0.0;
    for (int p = 0; p < half; ++p) {
        const int j = p;
        const int k = grid.size() - 1 - p;
        const double pj = nodes[j] * nodes[j];
        const double pk = nodes[k] * nodes[k];
        m2 += weights[j] * (pj * row[j]) + weights[k] * (pk * row[k]);
    }
    return m2;
}

/// Equilibrium node value (n + gamma_sq*J*v) / measure, with the affine
/// coefficient c = gamma_sq*J and inv_measure = 1/measure precomputed.
inline double equilibrium_value(double n, double c, double v, double inv_measure) {
    return (n + c * v) * inv_measure;
}

} // namespace kinchem::detail
