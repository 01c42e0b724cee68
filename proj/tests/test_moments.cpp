#include <doctest.h>

#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

#include "kinchem/field.hpp"
#include "kinchem/moments.hpp"
#include "kinchem/params.hpp"
#include "kinchem/verification.hpp"

using namespace kinchem;

namespace {

constexpr double kUlp = std::numeric_limits<double>::epsilon();

GridPtr make_grid(double nu, int n_v) {
    return std::make_shared<const VelocityGrid>(
        VelocityGrid::uniform_symmetric(nu, n_v));
}

} // namespace

TEST_CASE("moments of simple states") {
    auto grid = make_grid(1.0, 4);

    SUBCASE("constant f has isotropic moments") {
        KineticField f(grid, 3, 0.1, 1.5);
        KineticField g(grid, 3, 0.1, 0.0);
        SimState state(std::move(f), std::move(g));
        const MacroMoments m = compute_moments(state);
        for (int i = 0; i < 3; ++i) {
            CHECK(m.n[i] == doctest::Approx(1.5 * 2.0).epsilon(4 * kUlp));
            CHECK(m.J[i] == 0.0);
            CHECK(m.S[i] == 0.0);
            CHECK(m.q[i] == 0.0);
            CHECK(m.Q[i] == 0.0);
        }
    }

    SUBCASE("f_ij = v_j gives zero density and flux 0.625") {
        KineticField f(grid, 2, 0.5);
        KineticField g(grid, 2, 0.5);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 4; ++j) {
                f(i, j) = grid->node(j);
            }
        }
        SimState state(std::move(f), std::move(g));
        const MacroMoments m = compute_moments(state);
        for (int i = 0; i < 2; ++i) {
            CHECK(m.n[i] == 0.0);
            CHECK(m.J[i] == 0.625);
        }
    }
}

TEST_CASE("equilibrium profiles") {
    SUBCASE("isotropic case is constant") {
        const auto grid = VelocityGrid::uniform_symmetric(1.0, 2);
        const auto prof = equilibrium(2.0, 0.0, grid);
        CHECK(prof[0] == 1.0);
        CHECK(prof[1] == 1.0);
        CHECK(equilibrium(0.0, 0.0, grid) == std::vector<double>{0.0, 0.0});
    }

    SUBCASE("affine case reproduces the hand integrals") {
        // continuum V=[-1,1], gamma^2 = 3: F(v) = 1 + 0.75 v with moments
        // (2, 0.5); the discrete analogue uses the grid's own gamma_sq.
        const auto grid = VelocityGrid::uniform_symmetric(1.0, 4);
        const auto prof = equilibrium(2.0, 0.5, grid);
        for (int j = 0; j < 4; ++j) {
            const double expected = 1.0 + 0.5 * grid.gamma_sq() * 0.5 * grid.node(j);
            CHECK(prof[j] == doctest::Approx(expected).epsilon(8 * kUlp));
        }
        CHECK(grid.moment(prof, 0) == doctest::Approx(2.0).epsilon(4 * kUlp));
        CHECK(grid.moment(prof, 1) == doctest::Approx(0.5).epsilon(4 * kUlp));
    }

    SUBCASE("moment exactness for random (n, J)") {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> n_dist(0.0, 10.0);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        for (int trial = 0; trial < 500; ++trial) {
            const int n_v = 2 * (1 + static_cast<int>(rng() % 16));
            const auto grid = VelocityGrid::uniform_symmetric(1.0, n_v);
            const double n = n_dist(rng);
            const double J = unit(rng) * grid.nu() * n;
            const auto prof = equilibrium(n, J, grid);
            CHECK(grid.moment(prof, 0) ==
                  doctest::Approx(n).epsilon(4 * kUlp).scale(n + 1.0));
            CHECK(grid.moment(prof, 1) ==
                  doctest::Approx(J).epsilon(4 * kUlp).scale(n + 1.0));
        }
    }
}

TEST_CASE("taxis sensitivity function") {
    SUBCASE("examples") {
        TaxisFunction alpha{1.0};
        CHECK(alpha(0.0) == 0.0);
        CHECK(alpha(1.0) == 0.5);
        TaxisFunction alpha2{2.0};
        CHECK(alpha2(1e14) == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(alpha2(1e14) <= 2.0);
    }

    SUBCASE("negative density is rejected") {
        TaxisFunction alpha{1.0};
        CHECK_THROWS_AS(alpha(-1e-9), std::domain_error);
    }

    SUBCASE("bounded, monotone, Lipschitz") {
        TaxisFunction alpha{3.0};
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> dist(0.0, 100.0);
        for (int trial = 0; trial < 1000; ++trial) {
            double s1 = dist(rng);
            double s2 = dist(rng);
            if (s1 > s2) std::swap(s1, s2);
            const double a1 = alpha(s1);
            const double a2 = alpha(s2);
            CHECK(a1 >= 0.0);
            CHECK(a2 <= alpha.alpha_inf());
            CHECK(a1 <= a2 * (1.0 + 4 * kUlp));
            CHECK(std::abs(a2 - a1) <=
                  alpha.lipschitz() * std::abs(s2 - s1) * (1.0 + 4 * kUlp) + 1e-300);
        }
    }
}

TEST_CASE("symmetric/antisymmetric split") {
    const auto grid = VelocityGrid::uniform_symmetric(1.0, 4);

    SUBCASE("constant profile is purely even") {
        const std::vector<double> prof(4, 1.0);
        std::vector<double> even(4), odd(4);
        sym_antisym_split(prof, grid, even, odd);
        CHECK(even == std::vector<double>(4, 1.0));
        CHECK(odd == std::vector<double>(4, 0.0));
    }

    SUBCASE("the node profile is purely odd") {
        std::vector<double> prof(grid.nodes().begin(), grid.nodes().end());
        std::vector<double> even(4), odd(4);
        sym_antisym_split(prof, grid, even, odd);
        for (int j = 0; j < 4; ++j) {
            CHECK(even[j] == 0.0);
            CHECK(odd[j] == grid.node(j));
        }
    }

    SUBCASE("split of an equilibrium separates density and flux parts") {
        const auto prof = equilibrium(2.0, 0.5, grid);
        std::vector<double> even(4), odd(4);
        sym_antisym_split(prof, grid, even, odd);
        const double iso = 2.0 / grid.measure();
        for (int j = 0; j < 4; ++j) {
            CHECK(even[j] == doctest::Approx(iso).epsilon(4 * kUlp));
            const double expected_odd = grid.gamma_sq() * 0.5 * grid.node(j) / 2.0;
            CHECK(odd[j] == doctest::Approx(expected_odd).epsilon(8 * kUlp));
        }
        // density from the even part, flux from the odd part
        CHECK(grid.moment(even, 0) == doctest::Approx(2.0).epsilon(4 * kUlp));
        CHECK(grid.moment(odd, 1) == doctest::Approx(0.5).epsilon(4 * kUlp));
    }

    SUBCASE("length mismatch is rejected") {
        std::vector<double> prof(3, 1.0), even(4), odd(4);
        CHECK_THROWS_AS(sym_antisym_split(prof, grid, even, odd),
                        std::invalid_argument);
    }
}

TEST_CASE("split and Cauchy-Schwarz properties over random profiles") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    int trials = 0;
    while (trials < 1200) {
        const int n_v = 2 * (1 + static_cast<int>(rng() % 16));
        const auto grid =
            VelocityGrid::uniform_symmetric(0.25 + 4.0 * (trials % 7) / 7.0, n_v);
        std::vector<double> prof(n_v);
        for (double& p : prof) {
            p = dist(rng);
        }
        std::vector<double> even(n_v), odd(n_v);
        sym_antisym_split(prof, grid, even, odd);

        // exact cancellations from the pairing
        CHECK(grid.moment(even, 1) == 0.0);
        CHECK(grid.moment(odd, 0) == 0.0);

        // reconstruction to one ulp of the pair magnitude (the halved
        // sum/difference pair rounds at most once each)
        for (int j = 0; j < n_v; ++j) {
            const double mag =
                std::max(std::abs(prof[j]), std::abs(prof[grid.pair(j)]));
            CHECK(std::abs(even[j] + odd[j] - prof[j]) <= kUlp * mag);
        }

        // moment recovery through the split
        double scale = 0.0;
        for (int j = 0; j < n_v; ++j) {
            scale += grid.weight(j) * std::abs(prof[j]);
        }
        CHECK(std::abs(grid.moment(even, 0) - grid.moment(prof, 0)) <=
              4 * kUlp * scale);
        CHECK(std::abs(grid.moment(odd, 1) - grid.moment(prof, 1)) <=
              4 * kUlp * scale * grid.nu());

        CHECK(cauchy_schwarz_ok(prof, grid));
        ++trials;
    }
}
