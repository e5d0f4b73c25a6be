#include <cmath>
#include <complex>

#include "doctest.h"
#include "hsurf/kernel_ops.hpp"

using namespace hsurf;

using cd = std::complex<double>;

TEST_CASE("band-limited multipliers match their closed forms") {
    CHECK(eval_h(1.0, {0, 0}).real() == doctest::Approx(1.0));
    CHECK(std::abs(eval_h(1.0, {0.5, 0}).real() -
                   std::cos(0.5) / std::cosh(M_PI * 0.25)) < 1e-15);
    CHECK(std::abs(eval_j(2.0, {1.5, 0}).real() -
                   std::cos(3.0) / std::sqrt(std::cosh(M_PI * 0.75))) < 1e-15);
    // |h_t| <= 1 on the real axis
    for (double r = 0; r < 20; r += 0.37) CHECK(std::abs(eval_h(3.0, {r, 0})) <= 1.0 + 1e-15);
    CHECK(h_multiplier(2.0).is_even);
    CHECK(std::abs(h_multiplier(2.0).eval({1.2, 0}) - eval_h(2.0, {1.2, 0})) == 0.0);
}

TEST_CASE("imaginary-axis evaluation avoids complex cancellation") {
    // at r = ib the value is cosh(bt)/cos(pi b/2), exactly real
    cd v = eval_h(2.0, {0.0, 0.3});
    CHECK(v.imag() == 0.0);
    CHECK(std::abs(v.real() - std::cosh(0.6) / std::cos(0.15 * M_PI)) < 1e-15);
    cd j = eval_j(2.0, {0.0, 0.3});
    CHECK(j.imag() == 0.0);
    CHECK(std::abs(j.real() - std::cosh(0.6) / std::sqrt(std::cos(0.15 * M_PI))) < 1e-15);
    // strip gate: |Im r| <= 1/2 + band
    CHECK_THROWS_AS(eval_h(1.0, {0.0, 1.1}), PreconditionError);
    CHECK_NOTHROW(eval_h(1.0, {0.0, 0.98}));
}

TEST_CASE("product linearisation is exact on a sample grid") {
    for (double t : {0.4, 1.0, 2.3})
        for (double s : {0.0, 0.7, 1.9}) {
            for (double r : {0.0, 0.8, 4.0})
                CHECK(linearisation_residual(t, s, {r, 0}) <= 1e-12);
            CHECK(linearisation_residual(t, s, {0.0, 0.3}) <= 1e-12);
        }
}

TEST_CASE("band-limited kernel decay ratios are finite and stable") {
    KernelCheckRow row = bl_kernel_check(1.0);
    CHECK(row.t == 1.0);
    CHECK(row.sup_ratio > 0);
    CHECK(row.tail_ratio > 0);
    auto rows = bl_kernel_checks({1.0, 2.0});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].sup_ratio == doctest::Approx(row.sup_ratio));
    CHECK(rows[1].sup_ratio / rows[0].sup_ratio < 100.0);
    CHECK(rows[0].sup_ratio / rows[1].sup_ratio < 100.0);
}

TEST_CASE("block and packet norm bounds follow the documented arithmetic") {
    OperatorBoundInputs in;
    in.C_of_X = 2;
    in.R = 8;
    in.T = 1;
    in.p = 6;
    in.delta = 0.05;
    in.bl_sup_const = 1.3;
    CHECK(in.alpha_p() == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(std::abs(qt_norm_bound(1.0, in, 0.1) - 1.9914136797480866) < 1e-12);
    CHECK(std::abs(w_norm_bound(in) - 5.8878405775518979) < 1e-12);
    // block scale gate t <= R/4 and packet gate T <= R/8
    CHECK_THROWS_AS(qt_norm_bound(2.5, in, 0.1), PreconditionError);
    OperatorBoundInputs late = in;
    late.T = 1.5;
    CHECK_THROWS_AS(w_norm_bound(late), PreconditionError);
}

TEST_CASE("spectral action of the time average has the right limits") {
    EigenvalueParams base = EigenvalueParams::from_lambda(0.25);
    CHECK(w_spectral_action(5.0, base) == doctest::Approx(5.0));
    EigenvalueParams r1 = EigenvalueParams::from_lambda(1.25);
    CHECK(r1.tempered());
    CHECK(r1.r_real() == doctest::Approx(1.0));
    CHECK(std::abs(w_spectral_action(4.0, r1) - 1.4187403485677914) < 1e-12);
    // action/T tends to (1/2)/sqrt(cosh(pi r/2))
    double lim = 0.5 / std::sqrt(std::cosh(M_PI / 2));
    CHECK(std::abs(w_spectral_action(1000.0, r1) / 1000.0 - lim) < 1e-2 * lim);
    EigenvalueParams small = EigenvalueParams::from_lambda(0.16);
    CHECK_FALSE(small.tempered());
    CHECK(small.gap_s() == doctest::Approx(0.3));
    CHECK_THROWS_AS(w_spectral_action(4.0, small), PreconditionError);
}

TEST_CASE("ball kernel transform matches reference values") {
    RadialKernel k = ball_kernel(2.0);
    REQUIRE(k.breakpoints.size() == 1);
    CHECK(k.breakpoints[0] == 2.0);
    CHECK(std::abs(k.eval(1.9) - 1.0 / std::sqrt(std::cosh(2.0))) < 1e-15);
    CHECK(k.eval(2.1) == 0.0);
    CHECK_THROWS_AS(ball_kernel(0.0), PreconditionError);
    CHECK(std::abs(ball_transform(2.0, {1.3, 0}).real() - 2.7069294262912689) < 1e-10);
    CHECK(std::abs(ball_transform(1.0, {0.0, 0}).real() - 2.6620466951419696) < 1e-10);
    CHECK(std::abs(ball_transform(4.0, {3.0, 0}).real() - -0.89615797580327308) < 1e-10);
    // untempered endpoint r = i/2: area of the ball over sqrt(cosh t)
    for (double t : {1.0, 2.0, 4.0}) {
        double expect = 2 * M_PI * (std::cosh(t) - 1.0) / std::sqrt(std::cosh(t));
        CHECK(std::abs(ball_transform(t, {0.0, 0.5}).real() - expect) < 1e-10);
    }
}

TEST_CASE("ball transform lower bound is certified at the gap point") {
    double v = ball_lower_bound(3.0, 0.2);
    CHECK(std::abs(v - 2.4391237016517584) < 1e-12);
    CHECK(v >= std::sinh(3.0 * std::sqrt(0.2)));
    CHECK_THROWS_AS(ball_lower_bound(2.0, 0.2), PreconditionError);
    CHECK_THROWS_AS(ball_lower_bound(3.0, 0.0), PreconditionError);
    CHECK_THROWS_AS(ball_lower_bound(3.0, 1.5), PreconditionError);
}

TEST_CASE("periodized ball operator applied to the constant recovers the area factor") {
    SurfaceGroup g = load_surface_spec(HSURF_DATA_DIR "/bolza.surface");
    RadialKernel k = ball_kernel(2.5);
    double got = apply_automorphic(k, g, [](Point) { return 1.0; }, g.base_point, 2.5, 48);
    CHECK(std::abs(got - 13.022059895947514) < 0.10 * 13.022059895947514);
}
