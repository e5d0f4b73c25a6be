#pragma once

#include <string>
#include <vector>

#include "hsurf/kernel_ops.hpp"
#include "hsurf/multicurve.hpp"

namespace hsurf {

// One multiplicative piece of an assembled bound, with a note naming the
// estimate it came from.
struct BoundFactor {
    std::string name;
    double value = 1;
    std::string note;
};

// Assembled norm bound: bound_value is exactly the product of the factor
// values, so every constant in the estimate has a named provenance row.
struct BoundReport {
    std::string regime;
    double p = 0;
    EigenvalueParams lambda;
    OperatorBoundInputs inputs;
    double bound_value = 0;
    bool degenerate = false;
    std::vector<BoundFactor> factors;

    double product() const;
};

// Wave-packet route for tempered eigenvalues: requires p > 2 + 4 beta and
// lambda >= 1/4; uses T = R/8.
BoundReport tempered_bound(const OperatorBoundInputs& inputs, const EigenvalueParams& params,
                           double p);

// Ball-averaging route for small eigenvalues lambda <= 1/4 - epsilon:
// (C / (e^{(sqrt(eps)-delta) R} - 1))^{1-2/p}, needing R >= 3.  p = 2 is
// accepted but flagged degenerate (the bound collapses to 1).
BoundReport untempered_bound(const OperatorBoundInputs& inputs, const EigenvalueParams& params,
                             double p, double delta);

// Bound for a random surface of genus g: R = c log g and C = 1/InjRad with
// InjRad = g^{-b}, or (log g)^{-alpha} when alpha > 0.  Attaches the failure
// probability of the injectivity-radius event.
struct RandomSurfaceReport {
    BoundReport report;
    double probability = 0;
    double injrad = 0;
    double R = 0;
};
RandomSurfaceReport random_surface_report(double g, double b, double c,
                                          const EigenvalueParams& params, double p,
                                          double alpha = 0, double delta = 0.05,
                                          double delta_univ = 1.0);

// Eigenvalue multiplicity per genus: the square of the sup-norm report with
// InjRad = (log g)^{-alpha} and length coefficient d_const; alpha = 0 falls
// back to the default injectivity-radius event (InjRad = g^{-1/4}), so the
// squared report carries the 1/InjRad^2 factor explicitly.
double multiplicity_bound(double g, const EigenvalueParams& params, double alpha,
                          double d_const);

} // namespace hsurf
