#include "kinchem/velocity_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace kinchem {

VelocityGrid VelocityGrid::uniform_symmetric(double nu, int n_v) {
    if (!(nu > 0.0)) {
        throw std::invalid_argument("velocity grid: nu must be positive");
    }
    if (n_v < 2 || n_v % 2 != 0) {
        throw std::invalid_argument(
            "velocity grid: n_v must be even and >= 2 for symmetric pairing");
    }

    VelocityGrid grid;
    const int half = n_v / 2;
    const double h = 2.0 * nu / n_v;
    grid.nodes_.resize(n_v);
    grid.weights_.assign(n_v, h);
    // Build the positive half and mirror it so v_{n_v-1-j} == -v_j bitwise.
    for (int k = 0; k < half; ++k) {
        const double v = (k + 0.5) * h;
        grid.nodes_[half + k] = v;
        grid.nodes_[half - 1 - k] = -v;
    }
    grid.nu_ = nu;
    grid.max_speed_ = grid.nodes_[n_v - 1];

    std::vector<double> ones(n_v, 1.0);
    grid.measure_ = grid.moment(ones, 0);
    const double second = grid.moment(grid.nodes_, 1); // sum w v * v
    grid.gamma_sq_ = grid.measure_ / second;
    return grid;
}

double VelocityGrid::moment(std::span<const double> profile, int order) const {
    if (profile.size() != nodes_.size()) {
        throw std::invalid_argument("moment: profile length does not match grid");
    }
    if (order < 0 || order > 2) {
        throw std::invalid_argument("moment: order must be 0, 1 or 2");
    }
    const int half = size() / 2;
    double acc = 0.0;
    for (int p = 0; p < half; ++p) {
        const int j = p;
        const int k = size() - 1 - p;
        const double vj = nodes_[j];
        const double vk = nodes_[k];
        const double pj = order == 0 ? 1.0 : (order == 1 ? vj : vj * vj);
        const double pk = order == 0 ? 1.0 : (order == 1 ? vk : vk * vk);
        acc += weights_[j] * (pj * profile[j]) + weights_[k] * (pk * profile[k]);
    }
    return acc;
}

} // namespace kinchem
