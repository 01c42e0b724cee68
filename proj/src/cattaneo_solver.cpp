#include "kinchem/cattaneo_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kinchem/kernels.hpp"

namespace kinchem {

namespace {

bool parallel_worthwhile(size_t work) {
    return static_cast<std::ptrdiff_t>(work) >= kernels::kParallelMinWork;
}

void check_finite_macro(std::span<const double> values, const char* substep) {
    for (size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw NumericalFailure(substep, static_cast<int>(i), -1);
        }
    }
}

} // namespace

void macro_flux_step(std::span<double> n, std::span<double> J, double gamma_sq,
                     double dt, double dx) {
    if (n.size() != J.size() || n.empty()) {
        throw std::invalid_argument("macro_flux_step: n/J length mismatch");
    }
    const int n_x = static_cast<int>(n.size());
    const double gamma = std::sqrt(gamma_sq);
    std::vector<double> wp(n.size());
    std::vector<double> wm(n.size());
    if (parallel_worthwhile(n.size())) {
        kernels::riemann_upwind(gamma, n_x, dx, dt, n, J, wp, wm, n, J);
    } else {
        kernels::serial::riemann_upwind(gamma, n_x, dx, dt, n, J, wp, wm, n, J);
    }
}

void macro_source_step(std::span<double> n, std::span<double> J,
                       std::span<const double> S, const PhysParams& params,
                       double dt) {
    if (n.size() != J.size() || S.size() != n.size()) {
        throw std::invalid_argument("macro_source_step: length mismatch");
    }
    const int n_x = static_cast<int>(n.size());
    if (parallel_worthwhile(n.size())) {
        kernels::macro_flux_source(n_x, dt, params, n, S, J);
    } else {
        kernels::serial::macro_flux_source(n_x, dt, params, n, S, J);
    }
}

double cattaneo_timestep(const VelocityGrid& grid, double dx,
                         const PhysParams& params, const SchemeConfig& cfg) {
    const double kinetic = cfl_timestep(grid, dx, params, cfg);
    const double wave = cfg.cfl_safety * std::sqrt(grid.gamma_sq()) * dx;
    return std::min(kinetic, wave);
}

void advance_cattaneo(CattaneoState& state, const PhysParams& params, double dt,
                      StepWorkspace& ws) {
    const int n_x = state.g.n_x();
    const double dx = state.g.dx();
    const VelocityGrid& grid = state.g.grid();
    const bool par = parallel_worthwhile(state.g.data().size());

    macro_flux_step(state.n, state.J, grid.gamma_sq(), dt, dx);
    check_finite_macro(state.n, "macro-flux");

    ws.field_buf.resize(state.g.data().size());
    if (par) {
        kernels::upwind_transport(grid, n_x, dx, dt, state.g.data(), ws.field_buf);
    } else {
        kernels::serial::upwind_transport(grid, n_x, dx, dt, state.g.data(),
                                          ws.field_buf);
    }
    std::copy(ws.field_buf.begin(), ws.field_buf.end(), state.g.data().begin());
    check_finite_macro(state.g.data(), "transport-g");

    // Frozen attractant density for the J update.
    ws.cell_a.resize(static_cast<size_t>(n_x));
    if (par) {
        kernels::cell_moments(grid, n_x, state.g.data(), ws.cell_a, {}, {});
    } else {
        kernels::serial::cell_moments(grid, n_x, state.g.data(), ws.cell_a, {}, {});
    }
    macro_source_step(state.n, state.J, ws.cell_a, params, dt);
    check_finite_macro(state.J, "macro-source");

    chemo_source_step(state.g, state.n, params, dt);
    check_finite_macro(state.g.data(), "chemo-source");

    state.t += dt;
    state.step_count += 1;
}

CattaneoState run_cattaneo(CattaneoState initial, const PhysParams& params,
                           const SchemeConfig& cfg, const CattaneoSink& sink) {
    params.validate();
    if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0)) {
        throw std::invalid_argument("run_cattaneo: cfl_safety must lie in (0, 1]");
    }
    if (cfg.t_end < 0.0) {
        throw std::invalid_argument("run_cattaneo: t_end must be nonnegative");
    }

    CattaneoState state = std::move(initial);
    StepWorkspace ws;
    const double dt_shared =
        cattaneo_timestep(state.g.grid(), state.g.dx(), params, cfg);

    if (sink) {
        sink(state);
    }
    while (state.t < cfg.t_end) {
        const double dt = std::min(dt_shared, cfg.t_end - state.t);
        if (!(dt > 0.0) || state.t + dt == state.t) {
            break;
        }
        advance_cattaneo(state, params, dt, ws);
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
