#include "kinchem/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "kinchem/kernels.hpp"
#include "kinchem/moments.hpp"

namespace kinchem {

namespace {

std::string trim(std::string_view s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

double parse_double(const std::string& value, const std::string& key, int line) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const double parsed = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || std::isnan(parsed)) {
        throw ConfigError(line, "key '" + key + "': expected a number, got '" +
                                    value + "'");
    }
    return parsed;
}

long parse_long(const std::string& value, const std::string& key, int line) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const long parsed = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0') {
        throw ConfigError(line, "key '" + key + "': expected an integer, got '" +
                                    value + "'");
    }
    return parsed;
}

bool parse_bool(const std::string& value, const std::string& key, int line) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ConfigError(line, "key '" + key + "': expected true or false, got '" +
                                value + "'");
}

std::vector<double> parse_double_list(const std::string& value,
                                      const std::string& key, int line) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_double(trim(item), key, line));
    }
    if (out.empty()) {
        throw ConfigError(line, "key '" + key + "': expected comma-separated numbers");
    }
    return out;
}

void require(bool ok, int line, const std::string& message) {
    if (!ok) {
        throw ConfigError(line, message);
    }
}

} // namespace

ConfigError::ConfigError(int line_in, const std::string& message)
    : std::runtime_error(line_in > 0
                             ? "config line " + std::to_string(line_in) + ": " + message
                             : "config: " + message),
      line(line_in) {}

std::string to_string(RunMode mode) {
    switch (mode) {
    case RunMode::kinetic: return "kinetic";
    case RunMode::cattaneo: return "cattaneo";
    case RunMode::convergence: return "convergence";
    case RunMode::verify: return "verify";
    }
    return "?";
}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    std::string section;
    std::set<std::string> seen;

    std::istringstream stream{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') {
            continue;
        }
        if (line.front() == '[') {
            require(line.back() == ']', line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            static const std::set<std::string> known_sections{
                "run", "params", "grid", "scheme", "initial", "output",
                "convergence"};
            require(known_sections.count(section) > 0, line_no,
                    "unknown section '" + section + "'");
            continue;
        }
        const size_t eq = line.find('=');
        require(eq != std::string::npos, line_no,
                "expected 'key = value' or a [section] header");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        require(!key.empty(), line_no, "empty key");
        require(!value.empty(), line_no, "key '" + key + "': empty value");
        require(!section.empty(), line_no,
                "key '" + key + "' appears before any [section] header");

        const std::string full = section + "." + key;
        require(seen.insert(full).second, line_no,
                "duplicate key '" + full + "'");

        if (full == "run.mode") {
            if (value == "kinetic") cfg.mode = RunMode::kinetic;
            else if (value == "cattaneo") cfg.mode = RunMode::cattaneo;
            else if (value == "convergence") cfg.mode = RunMode::convergence;
            else if (value == "verify") cfg.mode = RunMode::verify;
            else throw ConfigError(line_no, "key 'mode': unknown mode '" + value + "'");
        } else if (full == "params.mu0" || full == "params.mu1" ||
                   full == "params.mu2" || full == "params.sigma" ||
                   full == "params.a" || full == "params.b") {
            const double v = parse_double(value, key, line_no);
            require(v >= 0.0, line_no, "key '" + key + "': rate must be >= 0");
            if (key == "mu0") cfg.params.mu0 = v;
            else if (key == "mu1") cfg.params.mu1 = v;
            else if (key == "mu2") cfg.params.mu2 = v;
            else if (key == "sigma") cfg.params.sigma = v;
            else if (key == "a") cfg.params.a = v;
            else cfg.params.b = v;
        } else if (full == "params.eps") {
            const double v = parse_double(value, key, line_no);
            require(v > 0.0, line_no, "key 'eps': must be > 0");
            cfg.params.eps = v;
        } else if (full == "params.chi") {
            const double v = parse_double(value, key, line_no);
            require(v >= 0.0, line_no, "key 'chi': must be >= 0");
            cfg.params.taxis.chi = v;
        } else if (full == "grid.nu") {
            const double v = parse_double(value, key, line_no);
            require(v > 0.0, line_no, "key 'nu': must be > 0");
            cfg.grid.nu = v;
        } else if (full == "grid.n_v") {
            const long v = parse_long(value, key, line_no);
            require(v >= 2 && v % 2 == 0, line_no, "key 'n_v': must be even and >= 2");
            cfg.grid.n_v = static_cast<int>(v);
        } else if (full == "grid.n_x") {
            const long v = parse_long(value, key, line_no);
            require(v >= 1 && v <= 100000000, line_no, "key 'n_x': must be >= 1");
            cfg.grid.n_x = static_cast<int>(v);
        } else if (full == "grid.domain_length") {
            const double v = parse_double(value, key, line_no);
            require(v > 0.0, line_no, "key 'domain_length': must be > 0");
            cfg.grid.domain_length = v;
        } else if (full == "scheme.cfl_safety") {
            const double v = parse_double(value, key, line_no);
            require(v > 0.0 && v <= 1.0, line_no, "key 'cfl_safety': must lie in (0, 1]");
            cfg.scheme.cfl_safety = v;
        } else if (full == "scheme.t_end") {
            const double v = parse_double(value, key, line_no);
            require(v >= 0.0, line_no, "key 't_end': must be >= 0");
            cfg.scheme.t_end = v;
        } else if (full == "scheme.snapshot_every") {
            const long v = parse_long(value, key, line_no);
            require(v >= 0, line_no, "key 'snapshot_every': must be >= 0");
            cfg.scheme.snapshot_every = v;
        } else if (full == "scheme.clip_negative") {
            cfg.scheme.clip_negative = parse_bool(value, key, line_no);
        } else if (full == "initial.preset") {
            require(value == "uniform" || value == "gaussian-pulse" ||
                        value == "cosine",
                    line_no, "key 'preset': unknown preset '" + value + "'");
            cfg.initial.preset = value;
        } else if (full == "initial.amplitude") {
            cfg.initial.amplitude = parse_double(value, key, line_no);
        } else if (full == "initial.center") {
            cfg.initial.center = parse_double(value, key, line_no);
        } else if (full == "initial.width") {
            const double v = parse_double(value, key, line_no);
            require(v > 0.0, line_no, "key 'width': must be > 0");
            cfg.initial.width = v;
        } else if (full == "initial.k") {
            const long v = parse_long(value, key, line_no);
            require(v >= 1, line_no, "key 'k': must be >= 1");
            cfg.initial.k = static_cast<int>(v);
        } else if (full == "initial.offset") {
            cfg.initial.offset = parse_double(value, key, line_no);
        } else if (full == "initial.j0") {
            cfg.initial.j0 = parse_double(value, key, line_no);
        } else if (full == "initial.s0_scale") {
            const double v = parse_double(value, key, line_no);
            require(v >= 0.0, line_no, "key 's0_scale': must be >= 0");
            cfg.initial.s0_scale = v;
        } else if (full == "initial.prepared") {
            require(value == "well" || value == "ill", line_no,
                    "key 'prepared': expected well or ill");
            cfg.initial.well_prepared = value == "well";
        } else if (full == "initial.perturbation") {
            const double v = parse_double(value, key, line_no);
            require(v >= 0.0, line_no, "key 'perturbation': must be >= 0");
            cfg.initial.perturbation = v;
        } else if (full == "output.dir") {
            cfg.output.dir = value;
        } else if (full == "output.fields") {
            cfg.output.fields = parse_bool(value, key, line_no);
        } else if (full == "convergence.eps_list") {
            auto list = parse_double_list(value, key, line_no);
            for (size_t i = 0; i < list.size(); ++i) {
                require(list[i] > 0.0, line_no, "key 'eps_list': entries must be > 0");
                require(i == 0 || list[i] < list[i - 1], line_no,
                        "key 'eps_list': entries must be strictly decreasing");
            }
            cfg.eps_list = std::move(list);
        } else {
            throw ConfigError(line_no, "unknown key '" + full + "'");
        }
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(0, "cannot open '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

namespace {

std::vector<double> density_profile(const RunConfig& cfg) {
    const int n_x = cfg.grid.n_x;
    const double L = cfg.grid.domain_length;
    const double dx = L / n_x;
    std::vector<double> n0(n_x);
    for (int i = 0; i < n_x; ++i) {
        const double x = (i + 0.5) * dx;
        if (cfg.initial.preset == "uniform") {
            n0[i] = cfg.initial.amplitude;
        } else if (cfg.initial.preset == "gaussian-pulse") {
            const double d = x - cfg.initial.center;
            const double w = cfg.initial.width;
            n0[i] = cfg.initial.amplitude * std::exp(-d * d / (2.0 * w * w));
        } else { // cosine
            n0[i] = cfg.initial.offset +
                    cfg.initial.amplitude *
                        std::cos(2.0 * M_PI * cfg.initial.k * x / L);
        }
    }
    return n0;
}

} // namespace

SimState make_initial_state(const RunConfig& cfg) {
    cfg.params.validate();
    auto grid = std::make_shared<const VelocityGrid>(
        VelocityGrid::uniform_symmetric(cfg.grid.nu, cfg.grid.n_v));
    const int n_x = cfg.grid.n_x;
    const double dx = cfg.grid.domain_length / n_x;
    KineticField f(grid, n_x, dx);
    KineticField g(grid, n_x, dx);

    const auto n0 = density_profile(cfg);
    const int n_v = grid->size();
    std::vector<double> profile(n_v);
    for (int i = 0; i < n_x; ++i) {
        if (cfg.initial.well_prepared) {
            equilibrium(n0[i], cfg.initial.j0, *grid, profile);
            for (int j = 0; j < n_v; ++j) {
                f(i, j) = profile[j];
            }
        } else {
            const double iso = n0[i] / grid->measure();
            for (int j = 0; j < n_v; ++j) {
                const double rel = grid->node(j) / grid->nu();
                f(i, j) = iso * (1.0 + cfg.initial.perturbation * rel * rel);
            }
        }
        const double S0 = cfg.initial.s0_scale * n0[i];
        const double g_iso = S0 / grid->measure();
        for (int j = 0; j < n_v; ++j) {
            g(i, j) = g_iso;
        }
    }
    return SimState(std::move(f), std::move(g));
}

CattaneoState make_initial_cattaneo(const RunConfig& cfg) {
    SimState kinetic = make_initial_state(cfg);
    MacroMoments m = compute_moments(kinetic);
    return CattaneoState(std::move(m.n), std::move(m.J), std::move(kinetic.g));
}

} // namespace kinchem
