#include "kinchem/snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "kinchem/moments.hpp"
#include "kinchem/verification.hpp"

namespace kinchem {

namespace {

const char* const kBaseColumns[] = {
    "t", "step", "nu", "x", "n", "J", "S", "q", "mass_f", "mass_g",
    "min_f", "min_g", "l2_energy", "eq_distance"};
constexpr size_t kBaseCount = sizeof(kBaseColumns) / sizeof(kBaseColumns[0]);

// 17 significant digits: the shortest length that round-trips every double.
void append_double(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else if (c != '\r') {
            current += c;
        }
    }
    fields.push_back(current);
    return fields;
}

double parse_double_field(const std::string& text, size_t row, size_t col) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw SnapshotError("row " + std::to_string(row) + ", column " +
                            std::to_string(col) + ": not a number: '" + text + "'");
    }
    return v;
}

double min_of(std::span<const double> values) {
    double m = values.empty() ? 0.0 : values[0];
    for (double v : values) {
        m = std::min(m, v);
    }
    return m;
}

} // namespace

SnapshotError::SnapshotError(const std::string& message)
    : std::runtime_error("snapshot: " + message) {}

Snapshot make_snapshot(const SimState& state, bool include_fields) {
    Snapshot snap;
    snap.t = state.t;
    snap.step = state.step_count;
    snap.nu = state.f.grid().nu();

    const int n_x = state.f.n_x();
    const double dx = state.f.dx();
    snap.x.resize(n_x);
    for (int i = 0; i < n_x; ++i) {
        snap.x[i] = (i + 0.5) * dx;
    }
    MacroMoments m = compute_moments(state);
    snap.n = std::move(m.n);
    snap.J = std::move(m.J);
    snap.S = std::move(m.S);
    snap.q = std::move(m.q);

    snap.mass_f = f_mass(state);
    snap.mass_g = g_mass(state);
    snap.min_f = min_of(state.f.data());
    snap.min_g = min_of(state.g.data());
    snap.l2_energy = l2_energy(state);
    snap.eq_distance = equilibrium_distance(state.f);

    if (include_fields) {
        snap.n_v = state.f.n_v();
        snap.f.assign(state.f.data().begin(), state.f.data().end());
        snap.g.assign(state.g.data().begin(), state.g.data().end());
    }
    return snap;
}

Snapshot make_snapshot(const CattaneoState& state, bool include_fields) {
    Snapshot snap;
    snap.t = state.t;
    snap.step = state.step_count;
    snap.nu = state.g.grid().nu();

    const int n_x = state.g.n_x();
    const double dx = state.g.dx();
    const double gamma_sq = state.g.grid().gamma_sq();
    snap.x.resize(n_x);
    for (int i = 0; i < n_x; ++i) {
        snap.x[i] = (i + 0.5) * dx;
    }
    snap.n = state.n;
    snap.J = state.J;
    snap.S.resize(n_x);
    snap.q.resize(n_x);
    for (int i = 0; i < n_x; ++i) {
        snap.S[i] = state.g.grid().moment(state.g.row(i), 0);
        snap.q[i] = state.g.grid().moment(state.g.row(i), 1);
    }

    double n_total = 0.0;
    double wave_energy = 0.0;
    double n_min = n_x > 0 ? state.n[0] : 0.0;
    for (int i = 0; i < n_x; ++i) {
        n_total += state.n[i];
        wave_energy += state.n[i] * state.n[i] + gamma_sq * state.J[i] * state.J[i];
        n_min = std::min(n_min, state.n[i]);
    }
    snap.mass_f = n_total * dx;
    snap.mass_g = field_mass(state.g);
    snap.min_f = n_min;
    snap.min_g = min_of(state.g.data());

    std::vector<double> g_sq(n_x);
    for (int i = 0; i < n_x; ++i) {
        double cell = 0.0;
        const auto row = state.g.row(i);
        for (int j = 0; j < state.g.n_v(); ++j) {
            cell += state.g.grid().weight(j) * row[j] * row[j];
        }
        g_sq[i] = cell;
    }
    double g_energy = 0.0;
    for (double c : g_sq) g_energy += c;
    snap.l2_energy = (wave_energy + g_energy) * dx;
    snap.eq_distance = 0.0; // the limit pair is its own equilibrium

    if (include_fields) {
        snap.n_v = state.g.n_v();
        snap.g.assign(state.g.data().begin(), state.g.data().end());
    }
    return snap;
}

void write_snapshot(const Snapshot& snap, std::ostream& out) {
    const size_t n_x = snap.x.size();
    if (snap.n.size() != n_x || snap.J.size() != n_x || snap.S.size() != n_x ||
        snap.q.size() != n_x) {
        throw SnapshotError("write: per-cell array lengths differ");
    }
    const size_t n_v = static_cast<size_t>(std::max(snap.n_v, 0));
    const bool has_f = !snap.f.empty();
    const bool has_g = !snap.g.empty();
    if ((has_f && snap.f.size() != n_x * n_v) ||
        (has_g && snap.g.size() != n_x * n_v)) {
        throw SnapshotError("write: field array lengths do not match n_x * n_v");
    }

    std::string line;
    for (size_t c = 0; c < kBaseCount; ++c) {
        if (c > 0) line += ',';
        line += kBaseColumns[c];
    }
    if (has_f) {
        for (size_t j = 0; j < n_v; ++j) {
            line += ",f_" + std::to_string(j);
        }
    }
    if (has_g) {
        for (size_t j = 0; j < n_v; ++j) {
            line += ",g_" + std::to_string(j);
        }
    }
    out << line << '\n';

    for (size_t i = 0; i < n_x; ++i) {
        line.clear();
        append_double(line, snap.t);
        line += ',' + std::to_string(snap.step);
        line += ',';
        append_double(line, snap.nu);
        for (double v : {snap.x[i], snap.n[i], snap.J[i], snap.S[i], snap.q[i],
                         snap.mass_f, snap.mass_g, snap.min_f, snap.min_g,
                         snap.l2_energy, snap.eq_distance}) {
            line += ',';
            append_double(line, v);
        }
        if (has_f) {
            for (size_t j = 0; j < n_v; ++j) {
                line += ',';
                append_double(line, snap.f[i * n_v + j]);
            }
        }
        if (has_g) {
            for (size_t j = 0; j < n_v; ++j) {
                line += ',';
                append_double(line, snap.g[i * n_v + j]);
            }
        }
        out << line << '\n';
    }
    if (!out) {
        throw SnapshotError("write: stream failure");
    }
}

Snapshot read_snapshot(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) {
        throw SnapshotError("missing header line");
    }
    const auto columns = split_csv(header);
    if (columns.size() < kBaseCount) {
        throw SnapshotError("malformed header: expected at least " +
                            std::to_string(kBaseCount) + " columns");
    }
    for (size_t c = 0; c < kBaseCount; ++c) {
        if (columns[c] != kBaseColumns[c]) {
            throw SnapshotError("malformed header: column " + std::to_string(c) +
                                " is '" + columns[c] + "', expected '" +
                                kBaseColumns[c] + "'");
        }
    }
    size_t nf = 0;
    size_t ng = 0;
    for (size_t c = kBaseCount; c < columns.size(); ++c) {
        const std::string expected_f = "f_" + std::to_string(nf);
        const std::string expected_g = "g_" + std::to_string(ng);
        if (ng == 0 && columns[c] == expected_f) {
            ++nf;
        } else if (columns[c] == expected_g) {
            ++ng;
        } else {
            throw SnapshotError("malformed header: unexpected column '" +
                                columns[c] + "'");
        }
    }
    if (nf > 0 && ng > 0 && nf != ng) {
        throw SnapshotError("malformed header: f and g column counts differ");
    }
    const size_t n_v = std::max(nf, ng);

    Snapshot snap;
    snap.n_v = static_cast<int>(n_v);
    std::string raw;
    size_t row = 0;
    while (std::getline(in, raw)) {
        if (raw.empty()) {
            continue;
        }
        ++row;
        const auto fields = split_csv(raw);
        if (fields.size() != columns.size()) {
            throw SnapshotError("row " + std::to_string(row) + ": has " +
                                std::to_string(fields.size()) + " fields, header " +
                                "declares " + std::to_string(columns.size()));
        }
        size_t c = 0;
        const double t = parse_double_field(fields[c], row, c); ++c;
        const double step = parse_double_field(fields[c], row, c); ++c;
        const double nu = parse_double_field(fields[c], row, c); ++c;
        if (row == 1) {
            snap.t = t;
            snap.step = static_cast<long>(step);
            snap.nu = nu;
        }
        snap.x.push_back(parse_double_field(fields[c], row, c)); ++c;
        snap.n.push_back(parse_double_field(fields[c], row, c)); ++c;
        snap.J.push_back(parse_double_field(fields[c], row, c)); ++c;
        snap.S.push_back(parse_double_field(fields[c], row, c)); ++c;
        snap.q.push_back(parse_double_field(fields[c], row, c)); ++c;
        const double mass_f = parse_double_field(fields[c], row, c); ++c;
        const double mass_g = parse_double_field(fields[c], row, c); ++c;
        const double min_f = parse_double_field(fields[c], row, c); ++c;
        const double min_g = parse_double_field(fields[c], row, c); ++c;
        const double energy = parse_double_field(fields[c], row, c); ++c;
        const double eq_dist = parse_double_field(fields[c], row, c); ++c;
        if (row == 1) {
            snap.mass_f = mass_f;
            snap.mass_g = mass_g;
            snap.min_f = min_f;
            snap.min_g = min_g;
            snap.l2_energy = energy;
            snap.eq_distance = eq_dist;
        }
        for (size_t j = 0; j < nf; ++j) {
            snap.f.push_back(parse_double_field(fields[c], row, c));
            ++c;
        }
        for (size_t j = 0; j < ng; ++j) {
            snap.g.push_back(parse_double_field(fields[c], row, c));
            ++c;
        }
    }

    // Stored distributions must satisfy the discrete Cauchy-Schwarz
    // inequalities cell by cell.
    if (n_v > 0 && snap.nu > 0.0 && !snap.x.empty()) {
        const auto grid =
            VelocityGrid::uniform_symmetric(snap.nu, static_cast<int>(n_v));
        for (size_t i = 0; i < snap.x.size(); ++i) {
            const auto check = [&](const std::vector<double>& field,
                                   const char* name) {
                if (field.empty()) return;
                const std::span<const double> profile{field.data() + i * n_v, n_v};
                if (!cauchy_schwarz_ok(profile, grid)) {
                    throw SnapshotError("cell " + std::to_string(i) + ": stored " +
                                        name +
                                        " violates the Cauchy-Schwarz inequality");
                }
            };
            check(snap.f, "f");
            check(snap.g, "g");
        }
    }
    return snap;
}

void write_report(const ConvergenceReport& report, std::ostream& out) {
    out << "eps,l2_error,observed_order,n_x,n_v,t_end,dt\n";
    std::string line;
    for (size_t k = 0; k < report.eps_values.size(); ++k) {
        line.clear();
        append_double(line, report.eps_values[k]);
        line += ',';
        append_double(line, report.errors[k]);
        line += ',';
        if (k == 0) {
            line += "nan";
        } else {
            append_double(line, report.observed_orders[k - 1]);
        }
        line += ',' + std::to_string(report.n_x);
        line += ',' + std::to_string(report.n_v);
        line += ',';
        append_double(line, report.t_end);
        line += ',';
        append_double(line, report.dt);
        out << line << '\n';
    }
    if (!out) {
        throw SnapshotError("report write: stream failure");
    }
}

ConvergenceReport read_report(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) {
        throw SnapshotError("report: missing header line");
    }
    if (split_csv(header) !=
        std::vector<std::string>{"eps", "l2_error", "observed_order", "n_x", "n_v",
                                 "t_end", "dt"}) {
        throw SnapshotError("report: malformed header");
    }
    ConvergenceReport report;
    std::string raw;
    size_t row = 0;
    while (std::getline(in, raw)) {
        if (raw.empty()) continue;
        ++row;
        const auto fields = split_csv(raw);
        if (fields.size() != 7) {
            throw SnapshotError("report row " + std::to_string(row) +
                                ": expected 7 fields");
        }
        report.eps_values.push_back(parse_double_field(fields[0], row, 0));
        report.errors.push_back(parse_double_field(fields[1], row, 1));
        if (row > 1) {
            report.observed_orders.push_back(parse_double_field(fields[2], row, 2));
        }
        report.n_x = static_cast<int>(parse_double_field(fields[3], row, 3));
        report.n_v = static_cast<int>(parse_double_field(fields[4], row, 4));
        report.t_end = parse_double_field(fields[5], row, 5);
        report.dt = parse_double_field(fields[6], row, 6);
    }
    return report;
}

} // namespace kinchem
