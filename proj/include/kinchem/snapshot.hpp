#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "kinchem/field.hpp"

namespace kinchem {

struct ConvergenceReport; // verification.hpp

/// One time slice of a run: per-cell moments, optional full distributions,
/// and scalar diagnostics. Serialized as single-header CSV with 17
/// significant digits so read(write(s)) round-trips bitwise.
struct Snapshot {
    double t = 0.0;
    long step = 0;
    double nu = 0.0; // velocity bound, lets a reader rebuild the grid
    int n_v = 0;     // > 0 when f/g columns are present

    std::vector<double> x, n, J, S, q;
    std::vector<double> f, g; // cell-major, n_x * n_v; empty when not stored

    double mass_f = 0.0, mass_g = 0.0;
    double min_f = 0.0, min_g = 0.0;
    double l2_energy = 0.0;
    double eq_distance = 0.0;
};

struct SnapshotError : std::runtime_error {
    explicit SnapshotError(const std::string& message);
};

Snapshot make_snapshot(const SimState& state, bool include_fields);
Snapshot make_snapshot(const CattaneoState& state, bool include_fields);

void write_snapshot(const Snapshot& snap, std::ostream& out);

/// Parse a snapshot CSV. When full fields are present, the per-cell
/// Cauchy-Schwarz inequalities are asserted on load (SnapshotError on
/// violation).
Snapshot read_snapshot(std::istream& in);

void write_report(const ConvergenceReport& report, std::ostream& out);
ConvergenceReport read_report(std::istream& in);

} // namespace kinchem
