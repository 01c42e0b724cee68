#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kinchem/field.hpp"
#include "kinchem/params.hpp"

namespace kinchem {

struct SchemeConfig {
    double cfl_safety = 0.9;   // in (0, 1]
    double t_end = 1.0;
    long snapshot_every = 100; // steps between sink calls; 0 = first/last only
    bool clip_negative = false;
};

/// Thrown when a substep produces a non-finite value.
struct NumericalFailure : std::runtime_error {
    NumericalFailure(const std::string& substep, int cell, int node);
    std::string substep;
    int cell;
    int node;
};

/// dt = cfl_safety * min( dx/nu, 1/(mu1 + mu2*gamma_sq*nu*alpha_inf + sigma
/// + b*measure) ). The stiff mu0/eps term is handled exactly and imposes no
/// constraint.
double cfl_timestep(const VelocityGrid& grid, double dx, const PhysParams& params,
                    const SchemeConfig& cfg);

/// One upwind transport step; rejects dt * max node speed > dx.
KineticField transport_step(const KineticField& field, double dt);

/// Exact exponential relaxation toward the per-cell equilibrium.
void relaxation_step_exact(KineticField& f, const PhysParams& params, double dt);

/// Explicit taxis source step with frozen per-cell S.
void taxis_source_step(KineticField& f, std::span<const double> S,
                       const PhysParams& params, double dt);

/// Explicit attractant source step with frozen per-cell n.
void chemo_source_step(KineticField& g, std::span<const double> n,
                       const PhysParams& params, double dt);

/// Scratch buffers reused across steps.
struct StepWorkspace {
    std::vector<double> field_buf;
    std::vector<double> cell_a;
    std::vector<double> cell_b;
};

/// One full splitting step with a given dt:
/// transport f, transport g, relax f, taxis source on f, chemo source on g.
/// Scans each substep's output and throws NumericalFailure on NaN/Inf.
void advance(SimState& state, const PhysParams& params, double dt,
             StepWorkspace& ws, bool clip_negative = false);
void advance(SimState& state, const PhysParams& params, double dt);

/// advance() with dt from cfl_timestep.
void step(SimState& state, const PhysParams& params, const SchemeConfig& cfg);

using SnapshotSink = std::function<void(const SimState&)>;

/// March to cfg.t_end (clamping the final step), invoking the sink on the
/// initial state, every snapshot_every steps, and on the final state.
SimState run(SimState initial, const PhysParams& params, const SchemeConfig& cfg,
             const SnapshotSink& sink = {});

} // namespace kinchem
