#include "kinchem/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "kinchem/detail/cell_ops.hpp"

// Both kernel flavors live here so the serial reference and the OpenMP
// variant share one per-cell body; outputs match bitwise because no
// reduction ever crosses a thread boundary.

namespace kinchem::kernels {

namespace {

void check_transport_args(const VelocityGrid& grid, int n_x, double dx, double dt,
                          std::span<const double> in, std::span<double> out) {
    const size_t total = static_cast<size_t>(n_x) * grid.size();
    if (in.size() != total || out.size() != total) {
        throw std::invalid_argument("upwind_transport: field size mismatch");
    }
    if (in.data() == out.data()) {
        throw std::invalid_argument("upwind_transport: in-place call not supported");
    }
    if (!(dx > 0.0) || dt < 0.0) {
        throw std::invalid_argument("upwind_transport: need dx > 0 and dt >= 0");
    }
    if (grid.max_speed() * dt > dx) {
        throw std::invalid_argument(
            "upwind_transport: CFL violation, dt * max node speed exceeds dx");
    }
}

// One cell of upwind transport in flux form. Each interface flux value is
// computed identically in the two cells it borders, so the spatial sum
// telescopes to rounding level.
inline void transport_cell(const double* in, double* out, int i, int n_x, int n_v,
                           const double* courant) {
    const int im1 = (i == 0) ? n_x - 1 : i - 1;
    const int ip1 = (i == n_x - 1) ? 0 : i + 1;
    const double* self = in + static_cast<size_t>(i) * n_v;
    const double* left = in + static_cast<size_t>(im1) * n_v;
    const double* right = in + static_cast<size_t>(ip1) * n_v;
    double* o = out + static_cast<size_t>(i) * n_v;
    for (int j = 0; j < n_v; ++j) {
        const double c = courant[j];
        if (c >= 0.0) {
            o[j] = self[j] - (c * self[j] - c * left[j]);
        } else {
            o[j] = self[j] - (c * right[j] - c * self[j]);
        }
    }
}

inline void relax_cell(const VelocityGrid& grid, double beta, double inv_measure,
                       double* row, int n_v) {
    const auto [n, J] = detail::pair_moments01(grid, {row, static_cast<size_t>(n_v)});
    const double c = grid.gamma_sq() * J;
    const auto nodes = grid.nodes();
    for (int j = 0; j < n_v; ++j) {
        const double F = detail::equilibrium_value(n, c, nodes[j], inv_measure);
        row[j] = F + beta * (row[j] - F);
    }
}

inline void taxis_cell(const VelocityGrid& grid, double dt, const PhysParams& p,
                       double S, double inv_measure, double* row, int n_v) {
    const auto [n, J] = detail::pair_moments01(grid, {row, static_cast<size_t>(n_v)});
    const double alpha_S = p.taxis(std::max(S, 0.0));
    const double iso = n * inv_measure;
    const double flux = J * inv_measure;
    const double k2 = p.mu2 * grid.gamma_sq() * alpha_S;
    const auto nodes = grid.nodes();
    for (int j = 0; j < n_v; ++j) {
        const double fij = row[j];
        row[j] = fij + dt * (p.mu1 * (iso - fij) - k2 * (flux - nodes[j] * fij));
    }
}

inline void chemo_cell(const VelocityGrid& grid, double dt, const PhysParams& p,
                       double n, double inv_measure, double* row, int n_v) {
    const double S = detail::pair_moment0(grid, {row, static_cast<size_t>(n_v)});
    const double iso = S * inv_measure;
    const double src = p.a * n - p.b * S;
    for (int j = 0; j < n_v; ++j) {
        row[j] += dt * (p.sigma * (iso - row[j]) + src);
    }
}

inline void moments_cell(const VelocityGrid& grid, const double* row, int n_v,
                         double* m0, double* m1, double* m2, int i) {
    const std::span<const double> r{row, static_cast<size_t>(n_v)};
    if (m1 != nullptr) {
        const auto [a, b] = detail::pair_moments01(grid, r);
        m0[i] = a;
        m1[i] = b;
    } else {
        m0[i] = detail::pair_moment0(grid, r);
    }
    if (m2 != nullptr) {
        m2[i] = detail::pair_moment2(grid, r);
    }
}

inline double sumsq_cell(const VelocityGrid& grid, const double* row, int n_v) {
    const int half = n_v / 2;
    const auto weights = grid.weights();
    double acc = 0.0;
    for (int p = 0; p < half; ++p) {
        const int k = n_v - 1 - p;
        acc += weights[p] * (row[p] * row[p]) + weights[k] * (row[k] * row[k]);
    }
    return acc;
}

inline double eqdist_cell(const VelocityGrid& grid, const double* row, int n_v,
                          double inv_measure) {
    const auto [n, J] = detail::pair_moments01(grid, {row, static_cast<size_t>(n_v)});
    const double c = grid.gamma_sq() * J;
    const auto nodes = grid.nodes();
    const auto weights = grid.weights();
    const int half = n_v / 2;
    double acc = 0.0;
    for (int p = 0; p < half; ++p) {
        const int k = n_v - 1 - p;
        const double dj = row[p] - detail::equilibrium_value(n, c, nodes[p], inv_measure);
        const double dk = row[k] - detail::equilibrium_value(n, c, nodes[k], inv_measure);
        acc += weights[p] * (dj * dj) + weights[k] * (dk * dk);
    }
    return acc;
}

void check_riemann_args(int n_x, double gamma, double dx, double dt,
                        std::span<const double> n_in, std::span<const double> J_in,
                        std::span<double> wp, std::span<double> wm,
                        std::span<double> n_out, std::span<double> J_out) {
    const auto nx = static_cast<size_t>(n_x);
    if (n_in.size() != nx || J_in.size() != nx || wp.size() != nx ||
        wm.size() != nx || n_out.size() != nx || J_out.size() != nx) {
        throw std::invalid_argument("riemann_upwind: array size mismatch");
    }
    if (!(gamma > 0.0) || !(dx > 0.0) || dt < 0.0) {
        throw std::invalid_argument("riemann_upwind: bad gamma, dx or dt");
    }
    if (dt > gamma * dx) {
        throw std::invalid_argument(
            "riemann_upwind: CFL violation, dt exceeds gamma * dx");
    }
}

inline void riemann_cell(const double* wp, const double* wm, int i, int n_x,
                         double c, double inv_two_gamma, double* n_out,
                         double* J_out) {
    const int im1 = (i == 0) ? n_x - 1 : i - 1;
    const int ip1 = (i == n_x - 1) ? 0 : i + 1;
    const double wp_new = wp[i] - (c * wp[i] - c * wp[im1]);
    const double wm_new = wm[i] + (c * wm[ip1] - c * wm[i]);
    n_out[i] = 0.5 * (wp_new + wm_new);
    J_out[i] = (wp_new - wm_new) * inv_two_gamma;
}

inline void macro_source_cell(double decay, double gain, const PhysParams& p,
                              double n, double S, double& J) {
    const double alpha_S = p.taxis(std::max(S, 0.0));
    J = J * decay + p.mu2 * n * alpha_S * gain;
}

} // namespace

void upwind_transport(const VelocityGrid& grid, int n_x, double dx, double dt,
                      std::span<const double> in, std::span<double> out) {
    check_transport_args(grid, n_x, dx, dt, in, out);
    const int n_v = grid.size();
    std::vector<double> courant(n_v);
    for (int j = 0; j < n_v; ++j) {
        courant[j] = grid.node(j) * dt / dx;
    }
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_x; ++i) {
        transport_cell(in.data(), out.data(), i, n_x, n_v, courant.data());
    }
}

void bgk_relaxation(const VelocityGrid& grid, int n_x, double beta,
                    std::span<double> f) {
    const int n_v = grid.size();
    const double inv_measure = 1.0 / grid.measure();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_x; ++i) {
        relax_cell(grid, beta, inv_measure, f.data() + static_cast<size_t>(i) * n_v,
                   n_v);
    }
}

void taxis_source(const VelocityGrid& grid, int n_x, double dt,
                  const PhysParams& params, std::span<const double> S,
                  std::span<double> f) {
    const int n_v = grid.size();
    const double inv_measure = 1.0 / grid.measure();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_x; ++i) {
        taxis_cell(grid, dt, params, S[i], inv_measure,
                   f.data() + static_cast<size_t>(i) * n_v, n_v);
    }
}

void chemo_source(const VelocityGrid& grid, int n_x, double dt,
                  const PhysParams& params, std::span<const double> n,
                  std::span<double> g) {
    const int n_v = grid.size();
    const double inv_measure = 1.0 / grid.measure();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_x; ++i) {
        chemo_cell(grid, dt, params, n[i], inv_measure,
                   g.data() + static_cast<size_t>(i) * n_v, n_v);
    }
}

void cell_moments(const VelocityGrid& grid, int n_x, std::span<const double> field,
                  std::span<double> m0, std::span<double> m1, std::span<double> m2) {
    const int n_v = grid.size();
    double* m1p = m1.empty() ? nullptr : m1.data();
    double* m2p = m2.empty() ? nullptr : m2.data();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_x; ++i) {
        moments_cell(grid, field.data() + static_cast<size_t>(i) * n_v, n_v,
                     m0.data(), m1p, m2p, i);
    }
}

void cell_weighted_sumsq(const VelocityGrid& grid, int n_x,
                         std::span<const double> field, std::span<double> out) {
    const int n_v = grid.size();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_x; ++i) {
        out[i] = sumsq_cell(grid, field.data() + static_cast<size_t>(i) * n_v, n_v);
    }
}

void cell_eqdist_sq(const VelocityGrid& grid, int n_x,
                    std::span<const double> field, std::span<double> out) {
    const int n_v = grid.size();
    const double inv_measure = 1.0 / grid.measure();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_x; ++i) {
        out[i] = eqdist_cell(grid, field.data() + static_cast<size_t>(i) * n_v, n_v,
                             inv_measure);
    }
}

void riemann_upwind(double gamma, int n_x, double dx, double dt,
                    std::span<const double> n_in, std::span<const double> J_in,
                    std::span<double> wp, std::span<double> wm,
                    std::span<double> n_out, std::span<double> J_out) {
    check_riemann_args(n_x, gamma, dx, dt, n_in, J_in, wp, wm, n_out, J_out);
    const double c = dt / (gamma * dx);
    const double inv_two_gamma = 1.0 / (2.0 * gamma);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_x; ++i) {
        wp[i] = n_in[i] + gamma * J_in[i];
        wm[i] = n_in[i] - gamma * J_in[i];
    }
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_x; ++i) {
        riemann_cell(wp.data(), wm.data(), i, n_x, c, inv_two_gamma, n_out.data(),
                     J_out.data());
    }
}

void macro_flux_source(int n_x, double dt, const PhysParams& params,
                       std::span<const double> n, std::span<const double> S,
                       std::span<double> J) {
    const double decay = std::exp(-params.mu1 * dt);
    const double gain =
        params.mu1 > 0.0 ? -std::expm1(-params.mu1 * dt) / params.mu1 : dt;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n_x; ++i) {
        macro_source_cell(decay, gain, params, n[i], S[i], J[i]);
    }
}

namespace serial {

void upwind_transport(const VelocityGrid& grid, int n_x, double dx, double dt,
                      std::span<const double> in, std::span<double> out) {
    check_transport_args(grid, n_x, dx, dt, in, out);
    const int n_v = grid.size();
    std::vector<double> courant(n_v);
    for (int j = 0; j < n_v; ++j) {
        courant[j] = grid.node(j) * dt / dx;
    }
    for (int i = 0; i < n_x; ++i) {
        transport_cell(in.data(), out.data(), i, n_x, n_v, courant.data());
    }
}

void bgk_relaxation(const VelocityGrid& grid, int n_x, double beta,
                    std::span<double> f) {
    const int n_v = grid.size();
    const double inv_measure = 1.0 / grid.measure();
    for (int i = 0; i < n_x; ++i) {
        relax_cell(grid, beta, inv_measure, f.data() + static_cast<size_t>(i) * n_v,
                   n_v);
    }
}

void taxis_source(const VelocityGrid& grid, int n_x, double dt,
                  const PhysParams& params, std::span<const double> S,
                  std::span<double> f) {
    const int n_v = grid.size();
    const double inv_measure = 1.0 / grid.measure();
    for (int i = 0; i < n_x; ++i) {
        taxis_cell(grid, dt, params, S[i], inv_measure,
                   f.data() + static_cast<size_t>(i) * n_v, n_v);
    }
}

void chemo_source(const VelocityGrid& grid, int n_x, double dt,
                  const PhysParams& params, std::span<const double> n,
                  std::span<double> g) {
    const int n_v = grid.size();
    const double inv_measure = 1.0 / grid.measure();
    for (int i = 0; i < n_x; ++i) {
        chemo_cell(grid, dt, params, n[i], inv_measure,
                   g.data() + static_cast<size_t>(i) * n_v, n_v);
    }
}

void cell_moments(const VelocityGrid& grid, int n_x, std::span<const double> field,
                  std::span<double> m0, std::span<double> m1, std::span<double> m2) {
    const int n_v = grid.size();
    double* m1p = m1.empty() ? nullptr : m1.data();
    double* m2p = m2.empty() ? nullptr : m2.data();
    for (int i = 0; i < n_x; ++i) {
        moments_cell(grid, field.data() + static_cast<size_t>(i) * n_v, n_v,
                     m0.data(), m1p, m2p, i);
    }
}

void cell_weighted_sumsq(const VelocityGrid& grid, int n_x,
                         std::span<const double> field, std::span<double> out) {
    const int n_v = grid.size();
    for (int i = 0; i < n_x; ++i) {
        out[i] = sumsq_cell(grid, field.data() + static_cast<size_t>(i) * n_v, n_v);
    }
}

void cell_eqdist_sq(const VelocityGrid& grid, int n_x,
                    std::span<const double> field, std::span<double> out) {
    const int n_v = grid.size();
    const double inv_measure = 1.0 / grid.measure();
    for (int i = 0; i < n_x; ++i) {
        out[i] = eqdist_cell(grid, field.data() + static_cast<size_t>(i) * n_v, n_v,
                             inv_measure);
    }
}

void riemann_upwind(double gamma, int n_x, double dx, double dt,
                    std::span<const double> n_in, std::span<const double> J_in,
                    std::span<double> wp, std::span<double> wm,
                    std::span<double> n_out, std::span<double> J_out) {
    check_riemann_args(n_x, gamma, dx, dt, n_in, J_in, wp, wm, n_out, J_out);
    const double c = dt / (gamma * dx);
    const double inv_two_gamma = 1.0 / (2.0 * gamma);
    for (int i = 0; i < n_x; ++i) {
        wp[i] = n_in[i] + gamma * J_in[i];
        wm[i] = n_in[i] - gamma * J_in[i];
    }
    for (int i = 0; i < n_x; ++i) {
        riemann_cell(wp.data(), wm.data(), i, n_x, c, inv_two_gamma, n_out.data(),
                     J_out.data());
    }
}

void macro_flux_source(int n_x, double dt, const PhysParams& params,
                       std::span<const double> n, std::span<const double> S,
                       std::span<double> J) {
    const double decay = std::exp(-params.mu1 * dt);
    const double gain =
        params.mu1 > 0.0 ? -std::expm1(-params.mu1 * dt) / params.mu1 : dt;
    for (int i = 0; i < n_x; ++i) {
        macro_source_cell(decay, gain, params, n[i], S[i], J[i]);
    }
}

} // namespace serial

} // namespace kinchem::kernels
