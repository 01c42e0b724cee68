#include "kinchem/field.hpp"

#include <stdexcept>
#include <utility>

namespace kinchem {

KineticField::KineticField(GridPtr grid, int n_x, double dx, double fill)
    : grid_(std::move(grid)), n_x_(n_x), dx_(dx) {
    if (!grid_) {
        throw std::invalid_argument("field: null velocity grid");
    }
    if (n_x_ < 1) {
        throw std::invalid_argument("field: need at least one cell");
    }
    if (!(dx_ > 0.0)) {
        throw std::invalid_argument("field: dx must be positive");
    }
    n_v_ = grid_->size();
    values_.assign(static_cast<size_t>(n_x_) * n_v_, fill);
}

SimState::SimState(KineticField f_in, KineticField g_in)
    : f(std::move(f_in)), g(std::move(g_in)) {
    const bool same_shape = f.n_x() == g.n_x() && f.n_v() == g.n_v() &&
                            f.dx() == g.dx() && f.grid_ptr() == g.grid_ptr();
    if (!same_shape) {
        throw std::invalid_argument("state: f and g must share grid descriptors");
    }
}

CattaneoState::CattaneoState(std::vector<double> n_in, std::vector<double> J_in,
                             KineticField g_in)
    : n(std::move(n_in)), J(std::move(J_in)), g(std::move(g_in)) {
    const auto nx = static_cast<size_t>(g.n_x());
    if (n.size() != nx || J.size() != nx) {
        throw std::invalid_argument("state: n/J length must match the g field");
    }
}

} // namespace kinchem
