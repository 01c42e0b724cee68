#pragma once

#include <span>
#include <string>
#include <vector>

#include "kinchem/config.hpp"
#include "kinchem/field.hpp"
#include "kinchem/params.hpp"

namespace kinchem {

/// Total mass sum_ij w_j values_ij dx of one field.
double field_mass(const KineticField& field);
double f_mass(const SimState& state);
double g_mass(const SimState& state);

/// Closed-form total g-mass at time t for constant f-mass M_f0:
/// (a/b) M_f0 (1 - e^{-b|V|t}) + M_g0 e^{-b|V|t}, with the b = 0 limit
/// M_g0 + a|V|M_f0 t.
double g_mass_closed_form(double t, double M_f0, double M_g0,
                          const PhysParams& params, double measure);

/// Max over samples of |M_g(t_k) - closed form|.
double g_mass_law_error(std::span<const double> times,
                        std::span<const double> g_masses, double M_f0,
                        double M_g0, const PhysParams& params, double measure);

double field_sup(const KineticField& field); // max |values|

struct LinfReport {
    double f_ratio = 0.0; // sup_t ||f||_inf / ||f0||_inf
    double g_ratio = 0.0; // sup_t ||g||_inf / (||f0||_inf + ||g0||_inf)
    bool finite = true;
};

/// Qualitative boundedness check over sampled sup norms.
LinfReport linf_bound_check(std::span<const double> f_sups,
                            std::span<const double> g_sups, double f0_inf,
                            double g0_inf);

/// Discrete L2_{x,v} distance of f from its own per-cell equilibrium.
double equilibrium_distance(const KineticField& f);

/// sum_ij w_j dx (f^2 + g^2).
double l2_energy(const SimState& state);

/// Per-cell Cauchy-Schwarz inequalities for a profile h:
///   (sum w h)^2 <= measure * sum w h^2
///   (sum w v h)^2 <= (measure/gamma_sq) * sum w h^2
/// true when both hold up to an 8-ulp rounding slack.
bool cauchy_schwarz_ok(std::span<const double> profile, const VelocityGrid& grid);
bool cauchy_schwarz_ok(const SimState& state);

struct ConvergenceReport {
    std::vector<double> eps_values;
    std::vector<double> errors;          // L2((0,T) x X) of (n, J, S) vs limit run
    std::vector<double> observed_orders; // log2(err_k / err_{k+1})
    int n_x = 0;
    int n_v = 0;
    double t_end = 0.0;
    double dt = 0.0;
};

/// Run the limit solver once and the kinetic solver per eps on the shared
/// grid and timestep; errors are discrete L2 in (t, x) of the (n, J, S)
/// triple. eps_list must be decreasing.
ConvergenceReport eps_convergence_study(const RunConfig& base,
                                        std::span<const double> eps_list);

struct VerifyResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// The built-in check battery behind the `verify` CLI mode: runs the
/// configured kinetic simulation and checks mass conservation, the g-mass
/// law bound, Cauchy-Schwarz on snapshots, and finiteness of the sup-norm
/// ratios, energy exponent, and equilibrium distance.
std::vector<VerifyResult> run_verification(const RunConfig& cfg);

} // namespace kinchem
