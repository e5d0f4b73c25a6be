#pragma once

#include <vector>

#include "hsurf/wp_volumes.hpp"

namespace hsurf {

// Topological class of a two-piece separating multicurve on a closed genus-g
// surface: k components, piece genera (g1, g2) with g1 + g2 + k - 1 = g,
// symmetry order k!, and the handle-separating count used only through the
// bound 2^{-M} <= 1.
struct MulticurveClass {
    int k = 1;
    int g1 = 0, g2 = 0;
    double sym_order = 1;
    int m_gamma = 0;
};

// Parameter block for the probability bounds: genus g, injectivity-radius
// exponent b in (0, 1/2), length coefficient c > 0, component exponent
// d = 2b + slack, the component cap K(g) = ceil(kappa c^2 g^{2b} (log g)^2),
// the fitted envelope constants, and the total-length cap L = 4c log g.
struct ProbabilityParams {
    double g = 0;
    double b = 0.1;
    double c = 0.01;
    double d = 0.2;
    long long K_of_g = 0;
    double delta_univ = 1.0;
    double D = 1.0;
    double L = 0;
    double kappa = 16.0;
    bool tight_measure = false;  // simplex volume L^k/k! instead of L^k

    static ProbabilityParams make(double g, double b, double c, double slack = 0,
                                  double kappa = 16.0);
};

// Component cap formula ceil(kappa c^2 g^{2b} (log g)^2).
long long component_cap(double c, double b, double g, double kappa = 16.0);

// Intersection-number cap ceil(2 len_a / injrad) * ceil(2 len_b / injrad).
long long intersection_bound(double len_a, double len_b, double injrad);

// Any filling pair of loops carries at least 2g + n - 2 self/cross
// intersections.
int filling_lower_bound(int g, int n);

// Component and length budget of the short separating multicurve found on a
// surface of injectivity radius >= g^{-b}: K_max = I + 2 with I the
// intersection budget of two loops of length c log g, L_max = 4 c log g.
// `forced` records whether the filling contradiction 2g - 2 > I applies.
struct SeparatingProfile {
    long long K_max = 0;
    double L_max = 0;
    long long intersection_budget = 0;
    bool forced = false;
};
SeparatingProfile separating_multicurve_profile(double c, double b, double g, double injrad);

// All ordered (g1, g2) with g1 + g2 = g + 1 - k and both pieces admissible.
std::vector<MulticurveClass> genus_splittings(int g, int k);

// Expected-count bound for short separating multicurves, in log domain:
// the explicit sum over component counts and splittings, next to the
// closed-form envelope g^{delta (c+d) - 1/2}.
struct MulticurveBound {
    double explicit_log = 0;
    double envelope_log = 0;
    bool empty = true;
    bool used_asymptotic = false;
};
MulticurveBound expected_multicurve_bound(const ProbabilityParams& params,
                                          const VolumeTable& table);

// Smallest delta making the envelope dominate the explicit sum across the
// table's genus range for these (c, d); clamped below at 1e-6.
double fit_delta(const VolumeTable& table, double b, double c, double slack = 0,
                 double kappa = 16.0);

// Failure-probability envelope g^{-1/2 + delta (c+b)} + g^{-2b}.
double final_probability_bound(const ProbabilityParams& params);
double probability_exponent(const ProbabilityParams& params);

// Gap of the component-sum envelope at total length L:
// cosh(sqrt(e) L) - 1 - sum_k L^{2k}/(k! k^k) >= 0.
double cosh_envelope_gap(double L);

} // namespace hsurf
