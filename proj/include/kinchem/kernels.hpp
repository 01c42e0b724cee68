#pragma once

#include <cstddef>
#include <span>

#include "kinchem/params.hpp"
#include "kinchem/velocity_grid.hpp"

namespace kinchem::kernels {

/// Work (elements touched) below which the solver dispatches to the serial
/// variants instead of paying the OpenMP fork/join cost.
inline constexpr std::ptrdiff_t kParallelMinWork = 4096;

// Every kernel exists twice with the same signature and the same per-cell
// arithmetic: the functions in this namespace parallelize the cell loop with
// OpenMP, the ones in kernels::serial are the plain-loop reference used by
// the tests and the benchmark. Outputs are bitwise identical by construction
// because each cell's operation sequence is shared code and reductions are
// never split across threads.

/// First-order conservative upwind transport on periodic cells.
/// out must not alias in. Requires dt * max_speed <= dx.
void upwind_transport(const VelocityGrid& grid, int n_x, double dx, double dt,
                      std::span<const double> in, std::span<double> out);

/// Exact relaxation toward the per-cell affine equilibrium:
/// f <- F + beta*(f - F) with beta = exp(-mu0*dt/eps) computed by the caller.
/// Preserves each cell's (n, J) up to rounding; beta = 0 projects exactly.
void bgk_relaxation(const VelocityGrid& grid, int n_x, double beta,
                    std::span<double> f);

/// Explicit Euler taxis source with per-cell frozen (n, J) from f itself and
/// frozen attractant density S:
/// f += dt*( mu1*(n/|V| - f) - mu2*gamma_sq*(J/|V| - v f)*alpha(S) ).
/// S is clamped at 0 before alpha: slightly negative densities are a
/// monitored diagnostic, not grounds to abort.
void taxis_source(const VelocityGrid& grid, int n_x, double dt,
                  const PhysParams& params, std::span<const double> S,
                  std::span<double> f);

/// Explicit Euler attractant source with frozen S from g itself and frozen n:
/// g += dt*( sigma*(S/|V| - g) + a*n - b*S ).
void chemo_source(const VelocityGrid& grid, int n_x, double dt,
                  const PhysParams& params, std::span<const double> n,
                  std::span<double> g);

/// Per-cell moments of a field. m1 and m2 may be empty spans to skip those
/// orders; non-empty spans must have length n_x.
void cell_moments(const VelocityGrid& grid, int n_x, std::span<const double> field,
                  std::span<double> m0, std::span<double> m1, std::span<double> m2);

/// Per-cell sum_j w_j field_ij^2 (pair order), for L2 diagnostics.
void cell_weighted_sumsq(const VelocityGrid& grid, int n_x,
                         std::span<const double> field, std::span<double> out);

/// Per-cell sum_j w_j (field_ij - F_ij)^2 against the cell's own equilibrium.
void cell_eqdist_sq(const VelocityGrid& grid, int n_x,
                    std::span<const double> field, std::span<double> out);

/// One upwind step of the linear macroscopic flux pair
///   d_t n + d_x J = 0,  d_t J + (1/gamma^2) d_x n = 0
/// via the characteristic variables w± = n ± gamma*J advected at ±1/gamma.
/// wp/wm are caller scratch of length n_x; outputs may alias inputs.
/// Requires dt <= gamma * dx.
void riemann_upwind(double gamma, int n_x, double dx, double dt,
                    std::span<const double> n_in, std::span<const double> J_in,
                    std::span<double> wp, std::span<double> wm,
                    std::span<double> n_out, std::span<double> J_out);

/// Exact affine update of the damped macroscopic flux with frozen (n, S):
/// J <- J*exp(-mu1*dt) + mu2*n*alpha(S)*(1 - exp(-mu1*dt))/mu1,
/// with the mu1 -> 0 limit handled exactly.
void macro_flux_source(int n_x, double dt, const PhysParams& params,
                       std::span<const double> n, std::span<const double> S,
                       std::span<double> J);

namespace serial {

void upwind_transport(const VelocityGrid& grid, int n_x, double dx, double dt,
                      std::span<const double> in, std::span<double> out);
void bgk_relaxation(const VelocityGrid& grid, int n_x, double beta,
                    std::span<double> f);
void taxis_source(const VelocityGrid& grid, int n_x, double dt,
                  const PhysParams& params, std::span<const double> S,
                  std::span<double> f);
void chemo_source(const VelocityGrid& grid, int n_x, double dt,
                  const PhysParams& params, std::span<const double> n,
                  std::span<double> g);
void cell_moments(const VelocityGrid& grid, int n_x, std::span<const double> field,
                  std::span<double> m0, std::span<double> m1, std::span<double> m2);
void cell_weighted_sumsq(const VelocityGrid& grid, int n_x,
                         std::span<const double> field, std::span<double> out);
void cell_eqdist_sq(const VelocityGrid& grid, int n_x,
                    std::span<const double> field, std::span<double> out);
void riemann_upwind(double gamma, int n_x, double dx, double dt,
                    std::span<const double> n_in, std::span<const double> J_in,
                    std::span<double> wp, std::span<double> wm,
                    std::span<double> n_out, std::span<double> J_out);
void macro_flux_source(int n_x, double dt, const PhysParams& params,
                       std::span<const double> n, std::span<const double> S,
                       std::span<double> J);

} // namespace serial

} // namespace kinchem::kernels
