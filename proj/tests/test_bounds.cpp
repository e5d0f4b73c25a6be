#include <cmath>
#include <limits>

#include "doctest.h"
#include "hsurf/bounds.hpp"

using namespace hsurf;

namespace {

OperatorBoundInputs base_inputs(double R) {
    OperatorBoundInputs in;
    in.C_of_X = 1;
    in.R = R;
    in.T = R / 8;
    in.p = 6;
    in.delta = 0.05;
    in.bl_sup_const = 1;
    in.bl_tail_const = 1;
    return in;
}

} // namespace

TEST_CASE("tempered report multiplies out to its bound value") {
    EigenvalueParams ev = EigenvalueParams::from_lambda(1.25, 0.1);
    BoundReport rep = tempered_bound(base_inputs(64), ev, 6.0);
    CHECK(rep.regime == "tempered");
    CHECK(rep.bound_value > 0);
    REQUIRE(rep.factors.size() >= 3);
    CHECK(std::abs(rep.product() - rep.bound_value) <= 1e-12 * rep.bound_value);
    for (const auto& f : rep.factors) {
        CHECK(std::isfinite(f.value));
        CHECK_FALSE(f.name.empty());
        CHECK_FALSE(f.note.empty());
    }
}

TEST_CASE("tempered gates reject boundary violations strictly") {
    EigenvalueParams ev = EigenvalueParams::from_lambda(1.25, 0.1);
    // p must exceed 2 + 4 beta = 2.4
    CHECK_THROWS_AS(tempered_bound(base_inputs(64), ev, 2.4), PreconditionError);
    CHECK_NOTHROW(tempered_bound(base_inputs(64), ev, 2.4 + 1e-6));
    EigenvalueParams small = EigenvalueParams::from_lambda(0.2, 0.0, 0.04);
    CHECK_THROWS_AS(tempered_bound(base_inputs(64), small, 6.0), PreconditionError);
}

TEST_CASE("tempered bound halves when the scale quadruples") {
    EigenvalueParams ev = EigenvalueParams::from_lambda(1.25, 0.1);
    BoundReport r64 = tempered_bound(base_inputs(64), ev, 6.0);
    BoundReport r256 = tempered_bound(base_inputs(256), ev, 6.0);
    double ratio = r256.bound_value / r64.bound_value;
    CHECK(std::abs(ratio - 0.484044682117) < 1e-9);
    CHECK(ratio > 0.475);
    CHECK(ratio < 0.525);
}

TEST_CASE("untempered report reproduces the worked example") {
    EigenvalueParams ev = EigenvalueParams::from_lambda(0.2, 0.0, 0.04);
    OperatorBoundInputs in = base_inputs(20);
    in.C_of_X = 3;
    BoundReport rep = untempered_bound(in, ev, 4.0, 0.1);
    CHECK(rep.regime == "untempered");
    CHECK_FALSE(rep.degenerate);
    CHECK(std::abs(rep.bound_value - 0.68523932187885785) < 1e-12);
    CHECK(std::abs(rep.product() - rep.bound_value) <= 1e-12 * rep.bound_value);
}

TEST_CASE("untempered gates hold at their exact boundaries") {
    OperatorBoundInputs in = base_inputs(20);
    EigenvalueParams at_gap = EigenvalueParams::from_lambda(0.25 - 0.04 + 1e-6, 0.0, 0.04);
    CHECK_THROWS_AS(untempered_bound(in, at_gap, 4.0, 0.1), PreconditionError);
    EigenvalueParams ev = EigenvalueParams::from_lambda(0.2, 0.0, 0.04);
    OperatorBoundInputs shallow = base_inputs(2.9);
    CHECK_THROWS_AS(untempered_bound(shallow, ev, 4.0, 0.1), PreconditionError);
    // delta must stay below sqrt(epsilon) = 0.2
    CHECK_THROWS_AS(untempered_bound(in, ev, 4.0, 0.25), PreconditionError);
    CHECK_THROWS_AS(untempered_bound(in, ev, 1.5, 0.1), PreconditionError);
    EigenvalueParams no_gap = EigenvalueParams::from_lambda(0.2, 0.0, 0.0);
    CHECK_THROWS_AS(untempered_bound(in, no_gap, 4.0, 0.0), PreconditionError);
}

TEST_CASE("p = 2 collapses the untempered bound to the degenerate one") {
    EigenvalueParams ev = EigenvalueParams::from_lambda(0.2, 0.0, 0.04);
    OperatorBoundInputs in = base_inputs(20);
    in.C_of_X = 3;
    BoundReport rep = untempered_bound(in, ev, 2.0, 0.1);
    CHECK(rep.degenerate);
    CHECK(rep.bound_value == doctest::Approx(1.0));
}

TEST_CASE("random-surface report assembles scale, counting, and probability") {
    EigenvalueParams ev = EigenvalueParams::from_lambda(1.25, 0.1);
    RandomSurfaceReport rep = random_surface_report(1e6, 0.1, 0.05, ev, 6.0);
    CHECK(std::abs(rep.injrad - std::pow(1e6, -0.1)) < 1e-12);
    CHECK(std::abs(rep.R - 0.05 * std::log(1e6)) < 1e-12);
    CHECK(rep.report.regime == "tempered");
    CHECK(rep.report.bound_value > 0);
    CHECK(std::abs(rep.report.product() - rep.report.bound_value) <=
          1e-12 * rep.report.bound_value);
    CHECK(rep.probability > 0);
    CHECK(rep.probability < 1);
}

TEST_CASE("random-surface tempered bound scales like 1/sqrt(log g) at fixed width") {
    EigenvalueParams ev = EigenvalueParams::from_lambda(25.25, 0.1);
    RandomSurfaceReport a = random_surface_report(1e6, 0.0, 2.0, ev, 6.0);
    RandomSurfaceReport b = random_surface_report(1e12, 0.0, 2.0, ev, 6.0);
    CHECK(std::abs(b.report.bound_value / a.report.bound_value - 0.7078745217884015) < 1e-9);
}

TEST_CASE("random-surface untempered bound counts through the genus power") {
    EigenvalueParams ev = EigenvalueParams::from_lambda(0.2, 0.0, 0.04);
    RandomSurfaceReport rep = random_surface_report(1e10, 0.25, 0.5, ev, 4.0);
    CHECK(rep.report.regime == "untempered");
    // C = g^{1/4}, denominator g^{c sqrt(eps)} - 1 = 9, exponent 1/2
    CHECK(std::abs(rep.report.bound_value - 105.40925533894598) < 1e-9 * 105.40925533894598);
    CHECK(std::abs(rep.report.product() - rep.report.bound_value) <=
          1e-12 * rep.report.bound_value);
}

TEST_CASE("multiplicity bound squares the sup-norm report") {
    EigenvalueParams ev = EigenvalueParams::from_lambda(1.25, 0.0);
    double inf = std::numeric_limits<double>::infinity();
    double m = multiplicity_bound(1e6, ev, 0.0, 0.05);
    RandomSurfaceReport rep = random_surface_report(1e6, 0.25, 0.05, ev, inf);
    CHECK(m == doctest::Approx(rep.report.bound_value * rep.report.bound_value).epsilon(1e-12));
    CHECK(m > 0);
    // log-power injectivity profile stays finite and positive
    double mlog = multiplicity_bound(1e6, ev, 0.9, 0.05);
    CHECK(mlog > 0);
    CHECK(std::isfinite(mlog));
}
