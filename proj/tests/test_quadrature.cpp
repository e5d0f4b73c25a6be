#include <cmath>
#include <vector>

#include "doctest.h"
#include "hsurf/errors.hpp"
#include "hsurf/quadrature.hpp"

using namespace hsurf;

TEST_CASE("gauss-legendre rule integrates polynomials exactly") {
    const GlRule& rule = gl_rule(16);
    REQUIRE(rule.nodes.size() == 16);
    double wsum = 0;
    for (double w : rule.weights) wsum += w;
    CHECK(std::abs(wsum - 2.0) < 1e-14);
    // degree 2n-1 = 31 exactness on [-1,1]
    for (int k = 0; k <= 30; k += 2) {
        double acc = 0;
        for (size_t i = 0; i < rule.nodes.size(); ++i)
            acc += rule.weights[i] * std::pow(rule.nodes[i], k);
        CHECK(std::abs(acc - 2.0 / (k + 1)) < 1e-13 * (k + 1));
    }
}

TEST_CASE("adaptive integration reproduces closed forms") {
    QuadOptions opt;
    opt.rel_tol = 1e-12;
    CHECK(std::abs(integrate<double>([](double x) { return x * x; }, 0, 1, opt) - 1.0 / 3) < 1e-13);
    CHECK(std::abs(integrate<double>([](double x) { return std::sin(x); }, 0, M_PI, opt) - 2.0) <
          1e-12);
    CHECK(std::abs(integrate<double>([](double x) { return std::exp(-x); }, 0, 10, opt) -
                   (1.0 - std::exp(-10.0))) < 1e-12);
    // oscillatory: exact antiderivative sin(7x)/7
    CHECK(std::abs(integrate<double>([](double x) { return std::cos(7 * x); }, 0, 20, opt) -
                   std::sin(140.0) / 7.0) < 1e-11);
}

TEST_CASE("integration budget failure reports both estimates") {
    QuadOptions opt;
    opt.rel_tol = 1e-14;
    opt.max_nodes = 64;
    auto f = [](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3) + 1e-300); };
    CHECK_THROWS_AS(integrate<double>(f, 0, 1, opt), NumericError);
    try {
        integrate<double>(f, 0, 1, opt);
    } catch (const NumericError& e) {
        CHECK(std::isfinite(e.last_estimate));
        CHECK(std::isfinite(e.previous_estimate));
        CHECK(e.last_estimate > 0);
    }
}

TEST_CASE("absolute scale suppresses chasing a negligible integrand") {
    QuadOptions opt;
    opt.rel_tol = 1e-10;
    opt.abs_scale = 1.0;
    opt.max_nodes = 1 << 12;
    double v = integrate<double>([](double x) { return 1e-18 * std::sin(100 * x); }, 0, 3, opt);
    CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("chebyshev series matches smooth functions to near machine precision") {
    ChebSeries c([](double x) { return 1.0 / std::cosh(x); }, 0.0, 8.0);
    CHECK(c.max_abs() == doctest::Approx(1.0).epsilon(1e-6));
    double worst = 0;
    for (int i = 0; i <= 2000; ++i) {
        double x = 8.0 * i / 2000.0;
        worst = std::max(worst, std::abs(c(x) - 1.0 / std::cosh(x)));
    }
    CHECK(worst < 1e-12);
    CHECK_THROWS_AS(ChebSeries([](double x) { return x; }, 1.0, 1.0), PreconditionError);
}
