#pragma once

#include <memory>
#include <span>
#include <vector>

namespace kinchem {

/// Symmetric bounded discrete velocity set with midpoint quadrature.
///
/// Nodes come in exact bitwise pairs (v, -v) with equal weights; moments are
/// accumulated pair-by-pair so odd moments cancel exactly. gamma_sq is defined
/// from the stored quadrature, gamma_sq = measure / sum_j w_j v_j^2, so the
/// affine equilibrium reproduces its defining moments at the discrete level.
class VelocityGrid {
public:
    /// Midpoint nodes on [-nu, nu] with uniform weights 2*nu/n_v.
    /// n_v must be even and >= 2 (no node sits at v = 0), nu > 0.
    static VelocityGrid uniform_symmetric(double nu, int n_v);

    int size() const { return static_cast<int>(nodes_.size()); }
    double node(int j) const { return nodes_[static_cast<size_t>(j)]; }
    double weight(int j) const { return weights_[static_cast<size_t>(j)]; }
    std::span<const double> nodes() const { return nodes_; }
    std::span<const double> weights() const { return weights_; }

    /// Index of the mirror node with node(pair(j)) == -node(j) bitwise.
    int pair(int j) const { return size() - 1 - j; }

    double nu() const { return nu_; }
    double max_speed() const { return max_speed_; }
    /// Discrete |V| = sum of weights, accumulated in pair order.
    double measure() const { return measure_; }
    /// Discrete gamma^2 = measure / sum_j w_j v_j^2.
    double gamma_sq() const { return gamma_sq_; }

    /// sum_j w_j v_j^order profile_j for order in {0,1,2}.
    ///
    /// Symmetric pairs (j, size()-1-j) are added together first, then pairs
    /// are summed left to right; odd-order moments of even profiles vanish
    /// bitwise.
    double moment(std::span<const double> profile, int order) const;

private:
    VelocityGrid() = default;

    std::vector<double> nodes_;
    std::vector<double> weights_;
    double nu_ = 0;
    double max_speed_ = 0;
    double measure_ = 0;
    double gamma_sq_ = 0;
};

using GridPtr = std::shared_ptr<const VelocityGrid>;

} // namespace kinchem
