#pragma once

#include <span>
#include <vector>

#include "kinchem/field.hpp"
#include "kinchem/velocity_grid.hpp"

namespace kinchem {

/// All per-cell moments of a state: n, J from f and S, q, Q from g.
MacroMoments compute_moments(const SimState& state);

/// Affine equilibrium profile F_j = (n + gamma_sq * J * v_j) / measure.
/// Its discrete zeroth and first moments reproduce (n, J).
void equilibrium(double n, double J, const VelocityGrid& grid, std::span<double> out);
std::vector<double> equilibrium(double n, double J, const VelocityGrid& grid);

/// Split a profile into its even and odd parts in v:
/// even_j = (h_j + h_pair(j))/2, odd_j = (h_j - h_pair(j))/2.
/// even + odd reconstructs the profile bitwise on paired grids; the odd
/// moment of the even part and the zeroth moment of the odd part vanish
/// exactly.
void sym_antisym_split(std::span<const double> profile, const VelocityGrid& grid,
                       std::span<double> even, std::span<double> odd);

} // namespace kinchem
