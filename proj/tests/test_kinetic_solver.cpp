#include <doctest.h>

#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <vector>

#include "kinchem/config.hpp"
#include "kinchem/kernels.hpp"
#include "kinchem/kinetic_solver.hpp"
#include "kinchem/moments.hpp"
#include "kinchem/verification.hpp"
#include "ode_oracle.hpp"

using namespace kinchem;

namespace {

GridPtr make_grid(double nu, int n_v) {
    return std::make_shared<const VelocityGrid>(
        VelocityGrid::uniform_symmetric(nu, n_v));
}

SimState uniform_state(GridPtr grid, int n_x, double dx, double f_val,
                       double g_val) {
    KineticField f(grid, n_x, dx, f_val);
    KineticField g(grid, n_x, dx, g_val);
    return SimState(std::move(f), std::move(g));
}

} // namespace

TEST_CASE("cfl_timestep examples") {
    SchemeConfig cfg;

    SUBCASE("transport-limited") {
        const auto grid = VelocityGrid::uniform_symmetric(1.0, 8);
        PhysParams p;
        p.mu1 = p.mu2 = p.sigma = p.b = 1e-12;
        p.a = 1e-12;
        cfg.cfl_safety = 0.9;
        CHECK(cfl_timestep(grid, 0.01, p, cfg) ==
              doctest::Approx(0.009).epsilon(1e-12));
    }

    SUBCASE("source-limited") {
        const auto grid = VelocityGrid::uniform_symmetric(1.0, 8);
        PhysParams p;
        p.mu1 = 1.0;
        p.mu2 = 0.0;
        p.sigma = 0.0;
        p.b = 0.0;
        cfg.cfl_safety = 1.0;
        // dx/nu = 2, source bound = 1/mu1 = 1
        CHECK(cfl_timestep(grid, 2.0, p, cfg) == doctest::Approx(1.0).epsilon(1e-15));
    }

    SUBCASE("all source rates active") {
        const auto grid = VelocityGrid::uniform_symmetric(1.0, 4); // gamma_sq 3.2
        PhysParams p; // mu1 = mu2 = sigma = b = 1, chi = 1, measure = 2
        cfg.cfl_safety = 0.5;
        // rate = 1 + 3.2 + 1 + 2 = 7.2
        CHECK(cfl_timestep(grid, 1e9, p, cfg) ==
              doctest::Approx(0.5 / 7.2).epsilon(1e-14));
    }
}

TEST_CASE("transport_step API honors the node-speed CFL line") {
    auto grid = make_grid(1.0, 2); // max node speed 0.5
    SimState state = uniform_state(grid, 4, 0.5, 1.0, 0.0);
    CHECK_NOTHROW(transport_step(state.f, 1.0));
    CHECK_THROWS_AS(transport_step(state.f, 1.0001), std::invalid_argument);
}

TEST_CASE("relaxation_step_exact") {
    auto grid = make_grid(1.0, 8);
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> dist(0.1, 2.0);

    SUBCASE("mu0 dt/eps = ln 2 halves the deviation") {
        KineticField f(grid, 3, 0.1);
        for (double& v : f.data()) {
            v = dist(rng);
        }
        PhysParams p;
        p.mu0 = 2.0;
        p.eps = 0.5;
        const double dt = std::log(2.0) * p.eps / p.mu0;
        KineticField before = f;
        relaxation_step_exact(f, p, dt);
        for (int i = 0; i < 3; ++i) {
            std::vector<double> m0(1), m1(1);
            kernels::serial::cell_moments(*grid, 1, before.row(i), m0, m1, {});
            const auto F = equilibrium(m0[0], m1[0], *grid);
            for (int j = 0; j < 8; ++j) {
                const double expected = F[j] + 0.5 * (before(i, j) - F[j]);
                CHECK(f(i, j) == doctest::Approx(expected).epsilon(1e-14));
            }
        }
    }

    SUBCASE("the eps -> 0 limit is the exact projection") {
        KineticField f(grid, 2, 0.1);
        for (double& v : f.data()) {
            v = dist(rng);
        }
        PhysParams p;
        p.eps = 1e-300; // relaxation factor underflows to exactly zero
        std::vector<double> m0(2), m1(2);
        kernels::serial::cell_moments(*grid, 2, f.data(), m0, m1, {});
        relaxation_step_exact(f, p, 0.01);
        for (int i = 0; i < 2; ++i) {
            const auto F = equilibrium(m0[i], m1[i], *grid);
            for (int j = 0; j < 8; ++j) {
                CHECK(f(i, j) == F[j]);
            }
        }
    }
}

TEST_CASE("step: uniform joint steady state is stationary to 1e-12 per step") {
    auto grid = make_grid(1.0, 8);
    // f = n/|V| with n = 2, g = S/|V| with S = (a/b) n = 2, chi = 0
    SimState state = uniform_state(grid, 16, 1.0 / 16, 1.0, 1.0);
    PhysParams p;
    p.eps = 1e6;
    p.taxis.chi = 0.0;
    SchemeConfig cfg;
    step(state, p, cfg);
    for (double v : state.f.data()) {
        CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    }
    for (double v : state.g.data()) {
        CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(state.step_count == 1);
}

TEST_CASE("step: one step preserves the f mass of a pulse") {
    auto grid = make_grid(1.0, 8);
    const int n_x = 32;
    KineticField f(grid, n_x, 1.0 / n_x);
    KineticField g(grid, n_x, 1.0 / n_x, 0.1);
    for (int i = 0; i < n_x; ++i) {
        const double x = (i + 0.5) / n_x;
        const double n0 = std::exp(-50.0 * (x - 0.5) * (x - 0.5));
        for (int j = 0; j < 8; ++j) {
            f(i, j) = n0 / grid->measure();
        }
    }
    SimState state(std::move(f), std::move(g));
    const double mass_before = f_mass(state);
    PhysParams p;
    step(state, p, SchemeConfig{});
    CHECK(f_mass(state) == doctest::Approx(mass_before).epsilon(1e-12));
}

TEST_CASE("f mass is conserved over many steps") {
    RunConfig cfg;
    cfg.grid.n_x = 50;
    cfg.grid.n_v = 8;
    cfg.initial.preset = "gaussian-pulse";
    cfg.initial.s0_scale = 0.3;
    SimState state = make_initial_state(cfg);
    const double mass0 = f_mass(state);
    const double dt =
        cfl_timestep(state.f.grid(), state.f.dx(), cfg.params, cfg.scheme);
    StepWorkspace ws;
    for (int s = 0; s < 300; ++s) {
        advance(state, cfg.params, dt, ws);
    }
    CHECK(f_mass(state) == doctest::Approx(mass0).epsilon(1e-12));
}

TEST_CASE("advance reports the offending substep on NaN") {
    auto grid = make_grid(1.0, 4);
    SimState state = uniform_state(grid, 8, 0.125, 1.0, 0.0);
    state.f(3, 1) = std::numeric_limits<double>::quiet_NaN();
    PhysParams p;
    try {
        advance(state, p, 1e-3);
        FAIL("expected NumericalFailure");
    } catch (const NumericalFailure& e) {
        CHECK(e.substep == "transport-f");
        CHECK(e.cell >= 0);
        CHECK(e.node >= 0);
    }
}

TEST_CASE("slightly negative attractant densities do not abort the solver") {
    auto grid = make_grid(1.0, 4);
    SimState state = uniform_state(grid, 8, 0.125, 1.0, -1e-18);
    PhysParams p;
    CHECK_NOTHROW(advance(state, p, 1e-3));
}

TEST_CASE("run bookkeeping") {
    auto grid = make_grid(1.0, 4);
    PhysParams p;

    SUBCASE("zero initial data stays zero") {
        SimState state = uniform_state(grid, 8, 0.125, 0.0, 0.0);
        SchemeConfig cfg;
        cfg.t_end = 0.05;
        const SimState out = run(std::move(state), p, cfg);
        for (double v : out.f.data()) CHECK(v == 0.0);
        for (double v : out.g.data()) CHECK(v == 0.0);
    }

    SUBCASE("t_end = 0 returns the initial state with zero steps") {
        SimState state = uniform_state(grid, 8, 0.125, 1.0, 0.5);
        SchemeConfig cfg;
        cfg.t_end = 0.0;
        int sink_calls = 0;
        const SimState out =
            run(std::move(state), p, cfg, [&](const SimState&) { ++sink_calls; });
        CHECK(out.step_count == 0);
        CHECK(out.t == 0.0);
        CHECK(sink_calls == 1);
    }

    SUBCASE("the final time lands on t_end") {
        SimState state = uniform_state(grid, 8, 0.125, 1.0, 0.5);
        SchemeConfig cfg;
        cfg.t_end = 0.1003; // not a multiple of the CFL step
        const SimState out = run(std::move(state), p, cfg);
        CHECK(out.t == doctest::Approx(cfg.t_end).epsilon(1e-14));
    }

    SUBCASE("two identical runs produce bitwise identical trajectories") {
        RunConfig rc;
        rc.grid.n_x = 24;
        rc.grid.n_v = 8;
        rc.initial.preset = "cosine";
        rc.initial.offset = 1.0;
        rc.initial.amplitude = 0.4;
        rc.initial.s0_scale = 0.5;
        rc.scheme.t_end = 0.2;
        rc.scheme.snapshot_every = 3;

        const auto capture = [&]() {
            std::vector<std::vector<double>> states;
            run(make_initial_state(rc), rc.params, rc.scheme,
                [&](const SimState& s) {
                    std::vector<double> all(s.f.data().begin(), s.f.data().end());
                    all.insert(all.end(), s.g.data().begin(), s.g.data().end());
                    all.push_back(s.t);
                    states.push_back(std::move(all));
                });
            return states;
        };
        CHECK(capture() == capture());
    }
}

TEST_CASE("stiff regime: eps = 1e-8 at transport-limited dt stays finite") {
    RunConfig rc;
    rc.grid.n_x = 40;
    rc.grid.n_v = 8;
    rc.params.eps = 1e-8;
    rc.initial.preset = "gaussian-pulse";
    SimState state = make_initial_state(rc);
    const double dt = state.f.dx() / state.f.grid().nu() * 0.9;
    StepWorkspace ws;
    for (int s = 0; s < 25; ++s) {
        CHECK_NOTHROW(advance(state, rc.params, dt, ws));
    }
    CHECK(equilibrium_distance(state.f) < 1e-3);
}

TEST_CASE("oracle integrator reproduces closed forms") {
    SUBCASE("scalar exponential decay") {
        const auto rhs = [](const std::vector<double>& y, std::vector<double>& dy) {
            dy.resize(1);
            dy[0] = -y[0];
        };
        const auto out =
            oracle::integrate_adaptive(rhs, {1.0}, 0.0, 1.0, 1e-12, 1e-14);
        CHECK(out[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
    }
    SUBCASE("harmonic oscillator returns after one period") {
        const auto rhs = [](const std::vector<double>& y, std::vector<double>& dy) {
            dy.resize(2);
            dy[0] = y[1];
            dy[1] = -y[0];
        };
        const auto out = oracle::integrate_adaptive(rhs, {1.0, 0.0}, 0.0,
                                                    2.0 * M_PI, 1e-12, 1e-14);
        CHECK(out[0] == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(out[1] == doctest::Approx(0.0).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("homogeneous data: splitting solver matches the ODE oracle") {
    auto grid = make_grid(1.0, 8);
    PhysParams p;
    p.eps = 0.2;

    const int n_v = grid->size();
    KineticField f(grid, 1, 1.0);
    KineticField g(grid, 1, 1.0);
    for (int j = 0; j < n_v; ++j) {
        const double v = grid->node(j);
        f(0, j) = 0.4 + 0.3 * (v + 0.2) * (v + 0.2); // not an equilibrium
        g(0, j) = 0.1 + 0.05 * v * v;
    }

    std::vector<double> y0(2 * static_cast<size_t>(n_v));
    for (int j = 0; j < n_v; ++j) {
        y0[j] = f(0, j);
        y0[n_v + j] = g(0, j);
    }

    SimState state(std::move(f), std::move(g));
    const double T = 0.1;
    const int steps = 20000;
    const double dt = T / steps;
    StepWorkspace ws;
    for (int s = 0; s < steps; ++s) {
        advance(state, p, dt, ws);
    }

    const oracle::HomogeneousRhs rhs(*grid, p);
    const auto y = oracle::integrate_adaptive(rhs, y0, 0.0, T, 1e-12, 1e-14);

    double err = 0.0;
    for (int j = 0; j < n_v; ++j) {
        err = std::max(err, std::abs(state.f(0, j) - y[j]));
        err = std::max(err, std::abs(state.g(0, j) - y[n_v + j]));
    }
    MESSAGE("homogeneous splitting error at dt = ", dt, ": ", err);
    CHECK(err < 1e-6);
}
