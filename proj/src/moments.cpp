#include "kinchem/moments.hpp"

#include <stdexcept>

#include "kinchem/detail/cell_ops.hpp"
#include "kinchem/kernels.hpp"

namespace kinchem {

MacroMoments compute_moments(const SimState& state) {
    const int n_x = state.f.n_x();
    MacroMoments m;
    m.n.resize(n_x);
    m.J.resize(n_x);
    m.S.resize(n_x);
    m.q.resize(n_x);
    m.Q.resize(n_x);
    kernels::cell_moments(state.f.grid(), n_x, state.f.data(), m.n, m.J, {});
    kernels::cell_moments(state.g.grid(), n_x, state.g.data(), m.S, m.q, m.Q);
    return m;
}

void equilibrium(double n, double J, const VelocityGrid& grid,
                 std::span<double> out) {
    if (out.size() != static_cast<size_t>(grid.size())) {
        throw std::invalid_argument("equilibrium: output length mismatch");
    }
    const double c = grid.gamma_sq() * J;
    const double inv_measure = 1.0 / grid.measure();
    for (int j = 0; j < grid.size(); ++j) {
        out[j] = detail::equilibrium_value(n, c, grid.node(j), inv_measure);
    }
}

std::vector<double> equilibrium(double n, double J, const VelocityGrid& grid) {
    std::vector<double> out(grid.size());
    equilibrium(n, J, grid, out);
    return out;
}

void sym_antisym_split(std::span<const double> profile, const VelocityGrid& grid,
                       std::span<double> even, std::span<double> odd) {
    const auto n = static_cast<size_t>(grid.size());
    if (profile.size() != n || even.size() != n || odd.size() != n) {
        throw std::invalid_argument("sym_antisym_split: length mismatch");
    }
    for (int j = 0; j < grid.size(); ++j) {
        const int k = grid.pair(j);
        even[j] = 0.5 * (profile[j] + profile[k]);
        odd[j] = 0.5 * (profile[j] - profile[k]);
    }
}

} // namespace kinchem
