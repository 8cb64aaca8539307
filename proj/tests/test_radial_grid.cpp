#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "logistic/radial_grid.hpp"

using namespace logistic;
constexpr double pi = std::numbers::pi;

TEST_CASE("build_grid basic layout") {
    const auto g = build_grid(3, 1.0, 3);
    CHECK(g.spacing == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g.nodes[0] == doctest::Approx(0.25));
    CHECK(g.nodes[1] == doctest::Approx(0.50));
    CHECK(g.nodes[2] == doctest::Approx(0.75));
    CHECK(g.sphere_area == doctest::Approx(4.0 * pi).epsilon(1e-14));
    for (double w : g.quad_weights) CHECK(w > 0.0);
}

TEST_CASE("build_grid rejects bad arguments") {
    CHECK_THROWS_AS(build_grid(4, 2.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(2, 1.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(3, -1.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(3, 0.0, 8), std::invalid_argument);
}

TEST_CASE("quadrature converges to the ball volume") {
    // The half-cell at the boundary is dropped, so a nonvanishing integrand
    // converges at first order; integrands vanishing at R get second order.
    const double vol = 4.0 * pi / 3.0;
    double prev_err = 0.0;
    for (int M : {256, 512, 1024}) {
        const auto g = build_grid(3, 1.0, M);
        std::vector<double> ones(M, 1.0);
        const double err = std::fabs(integrate(g, ones) - vol);
        CHECK(err < 7.0 * g.spacing);
        if (prev_err > 0.0) CHECK(prev_err / err == doctest::Approx(2.0).epsilon(0.15));
        prev_err = err;
    }

    // int (1 - r^2) over B_1 = 4 pi (1/3 - 1/5) = 8 pi / 15.
    const double exact = 8.0 * pi / 15.0;
    prev_err = 0.0;
    for (int M : {256, 512, 1024}) {
        const auto g = build_grid(3, 1.0, M);
        std::vector<double> v(M);
        for (int i = 0; i < M; ++i) v[i] = 1.0 - g.nodes[i] * g.nodes[i];
        const double err = std::fabs(integrate(g, v) - exact);
        if (prev_err > 0.0) CHECK(prev_err / err > 3.0);
        prev_err = err;
    }
}

TEST_CASE("integrate examples") {
    const int M = 2048;
    const auto g = build_grid(3, 1.0, M);

    std::vector<double> ones(M, 1.0);
    CHECK(integrate(g, ones) ==
          doctest::Approx(4.0 * pi / 3.0).epsilon(5e-3));

    std::vector<double> zeros(M, 0.0);
    CHECK(integrate(g, zeros) == 0.0);

    std::vector<double> r2(M);
    for (int i = 0; i < M; ++i) r2[i] = g.nodes[i] * g.nodes[i];
    CHECK(integrate(g, r2) == doctest::Approx(4.0 * pi / 5.0).epsilon(5e-3));

    std::vector<double> wrong(M - 1, 1.0);
    CHECK_THROWS_AS(integrate(g, wrong), std::invalid_argument);
}

TEST_CASE("integrate_within truncates at the requested radius") {
    const auto g = build_grid(3, 2.0, 1023);
    std::vector<double> ones(1023, 1.0);
    const double inner = integrate_within(g, ones, 1.0);
    CHECK(inner == doctest::Approx(4.0 * pi / 3.0).epsilon(5e-3));
    CHECK(integrate_within(g, ones, 2.0) == doctest::Approx(integrate(g, ones)));
}

TEST_CASE("apply_stiffness on zero input") {
    const auto g = build_grid(3, 1.0, 64);
    const auto form = build_stiffness(g);
    std::vector<double> zeros(64, 0.0);
    for (double y : apply_stiffness(form, zeros)) CHECK(y == 0.0);
    std::vector<double> wrong(63, 0.0);
    CHECK_THROWS_AS(apply_stiffness(form, wrong), std::invalid_argument);
}

TEST_CASE("apply_stiffness reproduces -Lap(R^2 - r^2) = 2N at second order") {
    // The origin closure carries an O(1) relative defect at the first node
    // only (with O(h^N) weight); nodes i >= 2 see the full scheme order.
    for (int dim : {3, 5}) {
        double prev = 0.0;
        for (int M : {128, 256, 512}) {
            const auto g = build_grid(dim, 1.0, M);
            const auto form = build_stiffness(g);
            std::vector<double> u(M);
            for (int i = 0; i < M; ++i) u[i] = 1.0 - g.nodes[i] * g.nodes[i];
            const auto Au = apply_stiffness(form, u);
            double err = 0.0;
            for (int i = 1; i < M; ++i)
                err = std::max(err,
                               std::fabs(Au[i] / g.quad_weights[i] - 2.0 * dim));
            if (prev > 0.0) CHECK(prev / err > 3.0);
            prev = err;
        }
    }
}

TEST_CASE("harmonic function r^{2-N} is in the stiffness kernel away from 0") {
    double prev = 0.0;
    for (int M : {255, 511, 1023}) {
        const auto g = build_grid(3, 1.0, M);
        const auto form = build_stiffness(g);
        std::vector<double> u(M, 0.0);
        for (int i = 0; i < M; ++i)
            if (g.nodes[i] >= 0.5) u[i] = 1.0 / g.nodes[i];
        const auto Au = apply_stiffness(form, u);
        double err = 0.0;
        for (int i = 0; i < M; ++i) {
            const double r = g.nodes[i];
            if (r < 0.5 + 3.5 * g.spacing || r > 1.0 - 1.5 * g.spacing) continue;
            err = std::max(err, std::fabs(Au[i] / g.quad_weights[i]));
        }
        if (prev > 0.0) CHECK(prev / err > 3.0);
        prev = err;
    }
}

TEST_CASE("form symmetry and positivity on random vectors") {
    const int M = 200;
    const auto g = build_grid(4, 2.5, M);
    const auto form = build_stiffness(g);
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> u(M), v(M);
        for (auto& x : u) x = uni(rng);
        for (auto& x : v) x = uni(rng);
        const double auv = bilinear(form, u, v);
        const double avu = bilinear(form, v, u);
        CHECK(std::fabs(auv - avu) <= 1e-12 * std::max(1.0, std::fabs(auv)));
        CHECK(bilinear(form, u, u) > 0.0);

        // bilinear against the assembled action
        const auto Au = apply_stiffness(form, u);
        double dot = 0.0;
        for (int i = 0; i < M; ++i) dot += Au[i] * v[i];
        CHECK(dot == doctest::Approx(auv).epsilon(1e-11));
    }
}
