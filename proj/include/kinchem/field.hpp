#pragma once

#include <span>
#include <vector>

#include "kinchem/velocity_grid.hpp"

namespace kinchem {

/// One distribution sampled on the (x, v) grid, cell-major: values[i*n_v + j].
class KineticField {
public:
    KineticField(GridPtr grid, int n_x, double dx, double fill = 0.0);

    double operator()(int i, int j) const {
        return values_[static_cast<size_t>(i) * n_v_ + j];
    }
    double& operator()(int i, int j) {
        return values_[static_cast<size_t>(i) * n_v_ + j];
    }
    std::span<const double> row(int i) const {
        return {values_.data() + static_cast<size_t>(i) * n_v_,
                static_cast<size_t>(n_v_)};
    }
    std::span<double> row(int i) {
        return {values_.data() + static_cast<size_t>(i) * n_v_,
                static_cast<size_t>(n_v_)};
    }
    std::span<const double> data() const { return values_; }
    std::span<double> data() { return values_; }

    int n_x() const { return n_x_; }
    int n_v() const { return n_v_; }
    double dx() const { return dx_; }
    const VelocityGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }

private:
    GridPtr grid_;
    int n_x_ = 0;
    int n_v_ = 0;
    double dx_ = 0;
    std::vector<double> values_;
};

/// Per-cell moments: n, J from the cell field; S, q, Q from the attractant.
struct MacroMoments {
    std::vector<double> n, J, S, q, Q;
};

/// Paired cell and chemoattractant distributions plus time bookkeeping.
/// f and g share the velocity grid and the spatial descriptors.
struct SimState {
    KineticField f;
    KineticField g;
    double t = 0.0;
    long step_count = 0;

    SimState(KineticField f_in, KineticField g_in);
};

/// Macroscopic (n, J) pair coupled to the still-kinetic attractant field.
struct CattaneoState {
    std::vector<double> n;
    std::vector<double> J;
    KineticField g;
    double t = 0.0;
    long step_count = 0;

    CattaneoState(std::vector<double> n_in, std::vector<double> J_in, KineticField g_in);
};

} // namespace kinchem
