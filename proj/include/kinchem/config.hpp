#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kinchem/cattaneo_solver.hpp"
#include "kinchem/field.hpp"
#include "kinchem/kinetic_solver.hpp"
#include "kinchem/params.hpp"

namespace kinchem {

enum class RunMode { kinetic, cattaneo, convergence, verify };

struct GridConfig {
    double nu = 1.0;
    int n_v = 16;
    int n_x = 200;
    double domain_length = 1.0;
};

struct InitialConfig {
    std::string preset = "gaussian-pulse"; // uniform | gaussian-pulse | cosine
    double amplitude = 1.0;
    double center = 0.5; // gaussian-pulse
    double width = 0.1;  // gaussian-pulse
    int k = 1;           // cosine wavenumber
    double offset = 0.0; // cosine baseline
    double j0 = 0.0;     // initial flux (well-prepared data)
    double s0_scale = 0.0;      // S0(x) = s0_scale * n0(x)
    bool well_prepared = true;  // f0 = equilibrium(n0, j0) vs perturbed isotropic
    double perturbation = 0.1;  // ill-prepared: f0 = n0/|V| * (1 + p*(v/nu)^2)
};

struct OutputConfig {
    std::string dir = "out";
    bool fields = false; // include full f/g arrays in snapshots
};

struct RunConfig {
    RunMode mode = RunMode::kinetic;
    PhysParams params{};
    GridConfig grid{};
    SchemeConfig scheme{};
    InitialConfig initial{};
    OutputConfig output{};
    std::vector<double> eps_list{0.4, 0.2, 0.1, 0.05};
};

/// Config parse/validation failure; carries the 1-based line number
/// (0 when the error is not tied to a line).
struct ConfigError : std::runtime_error {
    ConfigError(int line, const std::string& message);
    int line;
};

/// Parse the line-oriented `key = value` format with [section] headers.
/// Every key is optional and has a documented default; unknown keys,
/// duplicates, and out-of-range values are rejected with their line number.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::filesystem::path& path);

/// Build the kinetic initial state from the configured preset.
SimState make_initial_state(const RunConfig& cfg);

/// Limit-system initial data: the moments of the kinetic initial state,
/// with the same g field.
CattaneoState make_initial_cattaneo(const RunConfig& cfg);

std::string to_string(RunMode mode);

} // namespace kinchem
