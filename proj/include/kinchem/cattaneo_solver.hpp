#pragma once

#include <functional>
#include <span>
#include <vector>

#include "kinchem/field.hpp"
#include "kinchem/kinetic_solver.hpp"
#include "kinchem/params.hpp"

namespace kinchem {

/// One upwind step of the (n, J) wave pair in Riemann invariants
/// w± = n ± gamma*J at speeds ±1/gamma. Conserves total n.
void macro_flux_step(std::span<double> n, std::span<double> J, double gamma_sq,
                     double dt, double dx);

/// Exact affine update of J with frozen (n, S); n is untouched.
void macro_source_step(std::span<double> n, std::span<double> J,
                       std::span<const double> S, const PhysParams& params,
                       double dt);

/// Shared dt for kinetic/limit comparisons: min of the kinetic bound and the
/// macroscopic wave bound cfl_safety * gamma * dx.
double cattaneo_timestep(const VelocityGrid& grid, double dx,
                         const PhysParams& params, const SchemeConfig& cfg);

/// One full splitting step: macro flux, transport g, macro source, chemo
/// source on g.
void advance_cattaneo(CattaneoState& state, const PhysParams& params, double dt,
                      StepWorkspace& ws);

using CattaneoSink = std::function<void(const CattaneoState&)>;

/// March to cfg.t_end with the shared timestep, same sink cadence as run().
CattaneoState run_cattaneo(CattaneoState initial, const PhysParams& params,
                           const SchemeConfig& cfg, const CattaneoSink& sink = {});

} // namespace kinchem
