#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "hsurf/quadrature.hpp"

namespace hsurf {

// Radial kernel k(rho) on hyperbolic distance, with decay metadata:
// |k(rho)| = O(e^{-(1+decay_delta) rho}).  breakpoints lists jump locations
// (a compactly supported kernel ends with one) so quadrature can split there.
struct RadialKernel {
    std::function<double(double)> eval;
    double support_hint = 10;
    double decay_delta = 0.5;
    std::vector<double> breakpoints;
};

// Even spectral multiplier h(r), analytic on |Im r| <= 1/2 + band_epsilon
// and decaying like (1+|r|^2)^{-1-band_epsilon} on the real axis.
struct SpectralMultiplier {
    std::function<std::complex<double>(std::complex<double>)> eval;
    double band_epsilon = 0.49;
    bool is_even = true;
};

// Intermediate even function g(u) of the pair: an Abel average of k along
// distance level sets.  Exposed because closed forms for it make good tests.
double abel_average(const RadialKernel& k, double u, double rho_stop);

// Largest rho where |k| still clears 1e-15 of its peak (capped scan).
double kernel_effective_support(const RadialKernel& k);

// k -> h: Abel average with the cosh-shift substitution that removes the
// inverse-square-root singularity, then a cosine transform in panels of one
// oscillation period each.
SpectralMultiplier forward_transform(const RadialKernel& k);

// h -> k: differentiated cosine transform for g', then the reverse Abel
// integral, returned as a cached piecewise-Chebyshev kernel with
// decay_delta = band_epsilon.
RadialKernel inverse_transform(const SpectralMultiplier& h);

// max |h(r) - h(-r)| over a fixed real grid (evenness diagnostic).
double evenness_residual(const SpectralMultiplier& h);

// max |k(rho)| e^{(1+delta) rho} over a fixed grid (decay diagnostic).
double kernel_decay_bound(const RadialKernel& k);

} // namespace hsurf
