#include "kinchem/kinetic_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kinchem/kernels.hpp"

namespace kinchem {

namespace {

bool parallel_worthwhile(const KineticField& field) {
    return static_cast<std::ptrdiff_t>(field.data().size()) >=
           kernels::kParallelMinWork;
}

void check_finite(const KineticField& field, const char* substep) {
    const auto data = field.data();
    for (size_t idx = 0; idx < data.size(); ++idx) {
        if (!std::isfinite(data[idx])) {
            const int n_v = field.n_v();
            throw NumericalFailure(substep, static_cast<int>(idx) / n_v,
                                   static_cast<int>(idx) % n_v);
        }
    }
}

void clip_below_zero(KineticField& field) {
    for (double& v : field.data()) {
        v = std::max(v, 0.0);
    }
}

double relaxation_factor(const PhysParams& params, double dt) {
    // exp underflows to exactly 0 for large exponents, which turns the
    // substep into the exact equilibrium projection: the eps -> 0 limit.
    return std::exp(-params.mu0 * dt / params.eps);
}

} // namespace

NumericalFailure::NumericalFailure(const std::string& substep_in, int cell_in,
                                   int node_in)
    : std::runtime_error("non-finite value in substep '" + substep_in +
                         "' at cell " + std::to_string(cell_in) + ", node " +
                         std::to_string(node_in)),
      substep(substep_in), cell(cell_in), node(node_in) {}

double cfl_timestep(const VelocityGrid& grid, double dx, const PhysParams& params,
                    const SchemeConfig& cfg) {
    if (!(dx > 0.0)) {
        throw std::invalid_argument("cfl_timestep: dx must be positive");
    }
    const double transport = dx / grid.nu();
    const double source_rate = params.mu1 +
                               params.mu2 * grid.gamma_sq() * grid.nu() *
                                   params.taxis.alpha_inf() +
                               params.sigma + params.b * grid.measure();
    const double source = 1.0 / source_rate; // inf when all rates vanish
    return cfg.cfl_safety * std::min(transport, source);
}

KineticField transport_step(const KineticField& field, double dt) {
    KineticField out(field.grid_ptr(), field.n_x(), field.dx());
    if (parallel_worthwhile(field)) {
        kernels::upwind_transport(field.grid(), field.n_x(), field.dx(), dt,
                                  field.data(), out.data());
    } else {
        kernels::serial::upwind_transport(field.grid(), field.n_x(), field.dx(),
                                          dt, field.data(), out.data());
    }
    return out;
}

void relaxation_step_exact(KineticField& f, const PhysParams& params, double dt) {
    const double beta = relaxation_factor(params, dt);
    if (parallel_worthwhile(f)) {
        kernels::bgk_relaxation(f.grid(), f.n_x(), beta, f.data());
    } else {
        kernels::serial::bgk_relaxation(f.grid(), f.n_x(), beta, f.data());
    }
}

void taxis_source_step(KineticField& f, std::span<const double> S,
                       const PhysParams& params, double dt) {
    if (S.size() != static_cast<size_t>(f.n_x())) {
        throw std::invalid_argument("taxis_source_step: S length mismatch");
    }
    if (parallel_worthwhile(f)) {
        kernels::taxis_source(f.grid(), f.n_x(), dt, params, S, f.data());
    } else {
        kernels::serial::taxis_source(f.grid(), f.n_x(), dt, params, S, f.data());
    }
}

void chemo_source_step(KineticField& g, std::span<const double> n,
                       const PhysParams& params, double dt) {
    if (n.size() != static_cast<size_t>(g.n_x())) {
        throw std::invalid_argument("chemo_source_step: n length mismatch");
    }
    if (parallel_worthwhile(g)) {
        kernels::chemo_source(g.grid(), g.n_x(), dt, params, n, g.data());
    } else {
        kernels::serial::chemo_source(g.grid(), g.n_x(), dt, params, n, g.data());
    }
}

void advance(SimState& state, const PhysParams& params, double dt,
             StepWorkspace& ws, bool clip_negative) {
    const int n_x = state.f.n_x();
    const VelocityGrid& grid = state.f.grid();
    const bool par = parallel_worthwhile(state.f);
    ws.field_buf.resize(state.f.data().size());
    ws.cell_a.resize(static_cast<size_t>(n_x));
    ws.cell_b.resize(static_cast<size_t>(n_x));

    auto transport_into_buf = [&](KineticField& field, const char* name) {
        if (par) {
            kernels::upwind_transport(grid, n_x, field.dx(), dt, field.data(),
                                      ws.field_buf);
        } else {
            kernels::serial::upwind_transport(grid, n_x, field.dx(), dt,
                                              field.data(), ws.field_buf);
        }
        std::copy(ws.field_buf.begin(), ws.field_buf.end(), field.data().begin());
        check_finite(field, name);
    };

    transport_into_buf(state.f, "transport-f");
    transport_into_buf(state.g, "transport-g");

    relaxation_step_exact(state.f, params, dt);
    check_finite(state.f, "relaxation");

    // Frozen moments for the source phase: S from g, n from f.
    if (par) {
        kernels::cell_moments(grid, n_x, state.g.data(), ws.cell_a, {}, {});
        kernels::cell_moments(grid, n_x, state.f.data(), ws.cell_b, {}, {});
    } else {
        kernels::serial::cell_moments(grid, n_x, state.g.data(), ws.cell_a, {}, {});
        kernels::serial::cell_moments(grid, n_x, state.f.data(), ws.cell_b, {}, {});
    }

    taxis_source_step(state.f, ws.cell_a, params, dt);
    check_finite(state.f, "taxis-source");

    chemo_source_step(state.g, ws.cell_b, params, dt);
    check_finite(state.g, "chemo-source");

    if (clip_negative) {
        clip_below_zero(state.f);
        clip_below_zero(state.g);
    }

    state.t += dt;
    state.step_count += 1;
}

void advance(SimState& state, const PhysParams& params, double dt) {
    StepWorkspace ws;
    advance(state, params, dt, ws);
}

void step(SimState& state, const PhysParams& params, const SchemeConfig& cfg) {
    const double dt = cfl_timestep(state.f.grid(), state.f.dx(), params, cfg);
    advance(state, params, dt);
}

SimState run(SimState initial, const PhysParams& params, const SchemeConfig& cfg,
             const SnapshotSink& sink) {
    params.validate();
    if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0)) {
        throw std::invalid_argument("run: cfl_safety must lie in (0, 1]");
    }
    if (cfg.t_end < 0.0) {
        throw std::invalid_argument("run: t_end must be nonnegative");
    }

    SimState state = std::move(initial);
    StepWorkspace ws;
    const double dt_cfl = cfl_timestep(state.f.grid(), state.f.dx(), params, cfg);

    if (sink) {
        sink(state);
    }
    while (state.t < cfg.t_end) {
        const double dt = std::min(dt_cfl, cfg.t_end - state.t);
        if (!(dt > 0.0) || state.t + dt == state.t) {
            break;
        }
        advance(state, params, dt, ws, cfg.clip_negative);
        const bool at_end = state.t >= cfg.t_end;
        const bool on_cadence =
            cfg.snapshot_every > 0 && state.step_count % cfg.snapshot_every == 0;
        if (sink && (at_end || on_cadence)) {
            sink(state);
        }
    }
    return state;
}

} // namespace kinchem
