#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "kinchem/velocity_grid.hpp"

using kinchem::VelocityGrid;

namespace {
constexpr double kUlp = std::numeric_limits<double>::epsilon();
}

TEST_CASE("two-point symmetric rule") {
    const auto grid = VelocityGrid::uniform_symmetric(1.0, 2);
    REQUIRE(grid.size() == 2);
    CHECK(grid.node(0) == -0.5);
    CHECK(grid.node(1) == 0.5);
    CHECK(grid.weight(0) == 1.0);
    CHECK(grid.weight(1) == 1.0);
    CHECK(grid.measure() == 2.0);
    CHECK(grid.gamma_sq() == 4.0);
}

TEST_CASE("four-point rule matches direct quadrature arithmetic") {
    const auto grid = VelocityGrid::uniform_symmetric(1.0, 4);
    const double expected_nodes[] = {-0.75, -0.25, 0.25, 0.75};
    for (int j = 0; j < 4; ++j) {
        CHECK(grid.node(j) == expected_nodes[j]);
        CHECK(grid.weight(j) == 0.5);
    }
    CHECK(grid.measure() == 2.0);
    // sum w v^2 = 0.625 exactly, so gamma_sq = 2/0.625 = 3.2 up to one
    // correctly rounded division
    CHECK(grid.gamma_sq() == 3.2);
}

TEST_CASE("construction rejects bad arguments") {
    CHECK_THROWS_AS(VelocityGrid::uniform_symmetric(1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(VelocityGrid::uniform_symmetric(1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(VelocityGrid::uniform_symmetric(0.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(VelocityGrid::uniform_symmetric(-1.0, 4), std::invalid_argument);
}

TEST_CASE("pairing is exact and nodes stay inside the ball") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> nu_dist(0.1, 7.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double nu = nu_dist(rng);
        const int n_v = 2 * (1 + static_cast<int>(rng() % 32));
        const auto grid = VelocityGrid::uniform_symmetric(nu, n_v);
        for (int j = 0; j < grid.size(); ++j) {
            CHECK(std::abs(grid.node(j)) <= nu);
            CHECK(grid.weight(j) > 0.0);
            const int k = grid.pair(j);
            CHECK(grid.node(k) == -grid.node(j));
            CHECK(grid.weight(k) == grid.weight(j));
        }
        CHECK(grid.max_speed() <= nu);
    }
}

TEST_CASE("moment examples") {
    const auto grid2 = VelocityGrid::uniform_symmetric(1.0, 2);
    const std::vector<double> ones2(2, 1.0);
    CHECK(grid2.moment(ones2, 0) == 2.0);
    CHECK(grid2.moment(ones2, 1) == 0.0);

    const auto grid4 = VelocityGrid::uniform_symmetric(1.0, 4);
    std::vector<double> v_profile(grid4.nodes().begin(), grid4.nodes().end());
    CHECK(grid4.moment(v_profile, 1) == 0.625);
}

TEST_CASE("moment rejects bad input") {
    const auto grid = VelocityGrid::uniform_symmetric(1.0, 4);
    const std::vector<double> wrong(3, 1.0);
    const std::vector<double> fine(4, 1.0);
    CHECK_THROWS_AS(grid.moment(wrong, 0), std::invalid_argument);
    CHECK_THROWS_AS(grid.moment(fine, 3), std::invalid_argument);
    CHECK_THROWS_AS(grid.moment(fine, -1), std::invalid_argument);
}

TEST_CASE("odd moments of even profiles cancel bitwise") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-5.0, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n_v = 2 * (1 + static_cast<int>(rng() % 16));
        const auto grid = VelocityGrid::uniform_symmetric(1.0 + 0.01 * trial, n_v);
        std::vector<double> even(n_v);
        for (int j = 0; j < n_v / 2; ++j) {
            even[j] = dist(rng);
            even[grid.pair(j)] = even[j];
        }
        CHECK(grid.moment(even, 1) == 0.0);
    }
}

TEST_CASE("gamma_sq closes the second-moment identity to one ulp") {
    for (int n_v : {2, 4, 8, 16, 32, 64}) {
        const auto grid = VelocityGrid::uniform_symmetric(1.0, n_v);
        std::vector<double> v_profile(grid.nodes().begin(), grid.nodes().end());
        const double second = grid.moment(v_profile, 1);
        const double product = grid.gamma_sq() * second;
        CHECK(std::abs(product - grid.measure()) <= kUlp * grid.measure());
    }
}

TEST_CASE("gamma_sq converges monotonically to the continuum value 3") {
    // continuum: |V| / integral of v^2 over [-1,1] = 2 / (2/3) = 3
    double previous = std::numeric_limits<double>::infinity();
    for (int n_v = 4; n_v <= 64; n_v *= 2) {
        const auto grid = VelocityGrid::uniform_symmetric(1.0, n_v);
        const double err = std::abs(grid.gamma_sq() - 3.0);
        CHECK(err < previous);
        previous = err;
    }
    CHECK(previous < 1e-3); // 3/(64^2 - 1) ~ 7.3e-4
}
