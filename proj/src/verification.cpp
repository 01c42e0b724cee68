#include "kinchem/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kinchem/cattaneo_solver.hpp"
#include "kinchem/kernels.hpp"
#include "kinchem/kinetic_solver.hpp"
#include "kinchem/moments.hpp"

namespace kinchem {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool parallel_worthwhile(size_t work) {
    return static_cast<std::ptrdiff_t>(work) >= kernels::kParallelMinWork;
}

std::vector<double> per_cell_m0(const KineticField& field) {
    std::vector<double> m0(static_cast<size_t>(field.n_x()));
    if (parallel_worthwhile(field.data().size())) {
        kernels::cell_moments(field.grid(), field.n_x(), field.data(), m0, {}, {});
    } else {
        kernels::serial::cell_moments(field.grid(), field.n_x(), field.data(), m0,
                                      {}, {});
    }
    return m0;
}

// Cells are reduced left to right after the in-cell pair sums, keeping every
// reduction deterministic and thread-count independent.
double sum_cells(std::span<const double> cells) {
    double acc = 0.0;
    for (double c : cells) {
        acc += c;
    }
    return acc;
}

std::string format(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

} // namespace

double field_mass(const KineticField& field) {
    return sum_cells(per_cell_m0(field)) * field.dx();
}

double f_mass(const SimState& state) { return field_mass(state.f); }
double g_mass(const SimState& state) { return field_mass(state.g); }

double g_mass_closed_form(double t, double M_f0, double M_g0,
                          const PhysParams& params, double measure) {
    if (params.b > 0.0) {
        const double decay = std::exp(-params.b * measure * t);
        return (params.a / params.b) * M_f0 * (1.0 - decay) + M_g0 * decay;
    }
    return M_g0 + params.a * measure * M_f0 * t;
}

double g_mass_law_error(std::span<const double> times,
                        std::span<const double> g_masses, double M_f0,
                        double M_g0, const PhysParams& params, double measure) {
    if (times.size() != g_masses.size()) {
        throw std::invalid_argument("g_mass_law_error: sample length mismatch");
    }
    double worst = 0.0;
    for (size_t k = 0; k < times.size(); ++k) {
        const double expected =
            g_mass_closed_form(times[k], M_f0, M_g0, params, measure);
        worst = std::max(worst, std::abs(g_masses[k] - expected));
    }
    return worst;
}

double field_sup(const KineticField& field) {
    double sup = 0.0;
    for (double v : field.data()) {
        sup = std::max(sup, std::abs(v));
    }
    return sup;
}

LinfReport linf_bound_check(std::span<const double> f_sups,
                            std::span<const double> g_sups, double f0_inf,
                            double g0_inf) {
    LinfReport report;
    double f_max = 0.0;
    double g_max = 0.0;
    for (double v : f_sups) f_max = std::max(f_max, v);
    for (double v : g_sups) g_max = std::max(g_max, v);
    report.f_ratio = f_max == 0.0 ? 0.0 : f_max / f0_inf;
    report.g_ratio = g_max == 0.0 ? 0.0 : g_max / (f0_inf + g0_inf);
    report.finite = std::isfinite(report.f_ratio) && std::isfinite(report.g_ratio);
    return report;
}

double equilibrium_distance(const KineticField& f) {
    std::vector<double> cells(static_cast<size_t>(f.n_x()));
    if (parallel_worthwhile(f.data().size())) {
        kernels::cell_eqdist_sq(f.grid(), f.n_x(), f.data(), cells);
    } else {
        kernels::serial::cell_eqdist_sq(f.grid(), f.n_x(), f.data(), cells);
    }
    return std::sqrt(sum_cells(cells) * f.dx());
}

double l2_energy(const SimState& state) {
    const auto n_x = static_cast<size_t>(state.f.n_x());
    std::vector<double> cf(n_x);
    std::vector<double> cg(n_x);
    if (parallel_worthwhile(state.f.data().size())) {
        kernels::cell_weighted_sumsq(state.f.grid(), state.f.n_x(), state.f.data(), cf);
        kernels::cell_weighted_sumsq(state.g.grid(), state.g.n_x(), state.g.data(), cg);
    } else {
        kernels::serial::cell_weighted_sumsq(state.f.grid(), state.f.n_x(),
                                             state.f.data(), cf);
        kernels::serial::cell_weighted_sumsq(state.g.grid(), state.g.n_x(),
                                             state.g.data(), cg);
    }
    double acc = 0.0;
    for (size_t i = 0; i < n_x; ++i) {
        acc += cf[i] + cg[i];
    }
    return acc * state.f.dx();
}

bool cauchy_schwarz_ok(std::span<const double> profile, const VelocityGrid& grid) {
    const double m0 = grid.moment(profile, 0);
    const double m1 = grid.moment(profile, 1);
    double sumsq = 0.0;
    kernels::serial::cell_weighted_sumsq(grid, 1, profile, {&sumsq, 1});

    const auto holds = [](double lhs, double rhs) {
        const double slack = 8.0 * kEps * std::max(std::abs(lhs), std::abs(rhs));
        return lhs <= rhs + slack;
    };
    const bool zeroth = holds(m0 * m0, grid.measure() * sumsq);
    const bool first = holds(m1 * m1, grid.measure() / grid.gamma_sq() * sumsq);
    return zeroth && first;
}

bool cauchy_schwarz_ok(const SimState& state) {
    for (int i = 0; i < state.f.n_x(); ++i) {
        if (!cauchy_schwarz_ok(state.f.row(i), state.f.grid()) ||
            !cauchy_schwarz_ok(state.g.row(i), state.g.grid())) {
            return false;
        }
    }
    return true;
}

ConvergenceReport eps_convergence_study(const RunConfig& base,
                                        std::span<const double> eps_list) {
    if (eps_list.empty()) {
        throw std::invalid_argument("eps_convergence_study: empty eps list");
    }
    for (size_t k = 1; k < eps_list.size(); ++k) {
        if (!(eps_list[k] < eps_list[k - 1])) {
            throw std::invalid_argument(
                "eps_convergence_study: eps list must be strictly decreasing");
        }
    }

    RunConfig cfg = base;
    const double dx = cfg.grid.domain_length / cfg.grid.n_x;
    const int n_x = cfg.grid.n_x;

    CattaneoState limit = make_initial_cattaneo(cfg);
    const double dt_shared =
        cattaneo_timestep(limit.g.grid(), dx, cfg.params, cfg.scheme);

    // Limit trajectory of (n, J, S), stored per step.
    struct MacroSlice {
        std::vector<double> n, J, S;
    };
    std::vector<MacroSlice> trajectory;
    std::vector<double> dts;
    {
        StepWorkspace ws;
        double t = 0.0;
        std::vector<double> S(static_cast<size_t>(n_x));
        while (t < cfg.scheme.t_end) {
            const double dt = std::min(dt_shared, cfg.scheme.t_end - t);
            if (!(dt > 0.0) || t + dt == t) break;
            advance_cattaneo(limit, cfg.params, dt, ws);
            kernels::serial::cell_moments(limit.g.grid(), n_x, limit.g.data(), S,
                                          {}, {});
            trajectory.push_back({limit.n, limit.J, S});
            dts.push_back(dt);
            t += dt;
        }
    }

    ConvergenceReport report;
    report.n_x = n_x;
    report.n_v = cfg.grid.n_v;
    report.t_end = cfg.scheme.t_end;
    report.dt = dt_shared;

    for (double eps : eps_list) {
        cfg.params.eps = eps;
        SimState state = make_initial_state(cfg);
        StepWorkspace ws;
        std::vector<double> n(static_cast<size_t>(n_x));
        std::vector<double> J(static_cast<size_t>(n_x));
        std::vector<double> S(static_cast<size_t>(n_x));
        double acc = 0.0;
        for (size_t step = 0; step < trajectory.size(); ++step) {
            advance(state, cfg.params, dts[step], ws);
            kernels::serial::cell_moments(state.f.grid(), n_x, state.f.data(), n, J,
                                          {});
            kernels::serial::cell_moments(state.g.grid(), n_x, state.g.data(), S,
                                          {}, {});
            const MacroSlice& ref = trajectory[step];
            double slice = 0.0;
            for (int i = 0; i < n_x; ++i) {
                const double dn = n[i] - ref.n[i];
                const double dJ = J[i] - ref.J[i];
                const double dS = S[i] - ref.S[i];
                slice += dn * dn + dJ * dJ + dS * dS;
            }
            acc += slice * dx * dts[step];
        }
        report.eps_values.push_back(eps);
        report.errors.push_back(std::sqrt(acc));
    }
    for (size_t k = 0; k + 1 < report.errors.size(); ++k) {
        report.observed_orders.push_back(
            std::log2(report.errors[k] / report.errors[k + 1]));
    }
    return report;
}

std::vector<VerifyResult> run_verification(const RunConfig& cfg) {
    struct Sample {
        double t, mass_f, mass_g, sup_f, sup_g, energy, eq_dist;
        bool cs_ok;
    };
    std::vector<Sample> samples;

    SimState initial = make_initial_state(cfg);
    const double f0_inf = field_sup(initial.f);
    const double g0_inf = field_sup(initial.g);
    const double measure = initial.f.grid().measure();

    const auto sink = [&](const SimState& s) {
        samples.push_back({s.t, f_mass(s), g_mass(s), field_sup(s.f),
                           field_sup(s.g), l2_energy(s), equilibrium_distance(s.f),
                           cauchy_schwarz_ok(s)});
    };
    run(std::move(initial), cfg.params, cfg.scheme, sink);

    const double M_f0 = samples.front().mass_f;
    const double M_g0 = samples.front().mass_g;
    const auto grid = VelocityGrid::uniform_symmetric(cfg.grid.nu, cfg.grid.n_v);
    const double dt = cfl_timestep(grid, cfg.grid.domain_length / cfg.grid.n_x,
                                   cfg.params, cfg.scheme);

    std::vector<VerifyResult> results;

    {
        double drift = 0.0;
        for (const Sample& s : samples) {
            drift = std::max(drift, std::abs(s.mass_f - M_f0));
        }
        const double rel = drift / std::max(std::abs(M_f0), 1e-300);
        results.push_back({"f-mass-conservation", rel <= 1e-12,
                           "relative drift " + format(rel)});
    }
    {
        std::vector<double> times, masses;
        for (const Sample& s : samples) {
            times.push_back(s.t);
            masses.push_back(s.mass_g);
        }
        const double dev =
            g_mass_law_error(times, masses, M_f0, M_g0, cfg.params, measure);
        const double R0 = std::abs(cfg.params.a * M_f0 - cfg.params.b * M_g0);
        const double scale = std::max({std::abs(M_f0), std::abs(M_g0), 1.0});
        const double bound = 2.0 * measure * R0 * dt + 1e-10 * scale;
        results.push_back({"g-mass-law", dev <= bound,
                           "max deviation " + format(dev) + " (bound " +
                               format(bound) + ")"});
    }
    {
        bool all_ok = true;
        for (const Sample& s : samples) {
            all_ok = all_ok && s.cs_ok;
        }
        results.push_back({"cauchy-schwarz", all_ok,
                           all_ok ? "holds on every snapshot"
                                  : "violated on a snapshot"});
    }
    {
        std::vector<double> f_sups, g_sups;
        for (const Sample& s : samples) {
            f_sups.push_back(s.sup_f);
            g_sups.push_back(s.sup_g);
        }
        const LinfReport lr = linf_bound_check(f_sups, g_sups, f0_inf, g0_inf);
        results.push_back({"linf-bounded", lr.finite,
                           "f ratio " + format(lr.f_ratio) + ", g ratio " +
                               format(lr.g_ratio)});
    }
    {
        const double E0 = samples.front().energy;
        double c_meas = 0.0;
        bool finite = true;
        for (const Sample& s : samples) {
            if (s.t > 0.0 && E0 > 0.0) {
                c_meas = std::max(c_meas, std::log(s.energy / E0) / s.t);
            }
            finite = finite && std::isfinite(s.energy);
        }
        finite = finite && std::isfinite(c_meas);
        results.push_back({"l2-energy-exponent", finite,
                           "measured growth exponent " + format(c_meas)});
    }
    {
        bool finite = true;
        double worst = 0.0;
        for (const Sample& s : samples) {
            finite = finite && std::isfinite(s.eq_dist);
            worst = std::max(worst, s.eq_dist);
        }
        results.push_back({"equilibrium-distance-finite", finite,
                           "max distance " + format(worst)});
    }
    return results;
}

} // namespace kinchem
