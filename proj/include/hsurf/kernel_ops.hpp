#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "hsurf/lattice.hpp"
#include "hsurf/selberg.hpp"

namespace hsurf {

// Spectral bookkeeping for an eigenvalue lambda = 1/4 + r^2.  Tempered
// eigenvalues have real r; small eigenvalues sit at r = i s with s in (0,1/2].
// beta measures how far the surrounding spectrum may be from tempered;
// epsilon is the spectral-gap margin used by the untempered bounds.
struct EigenvalueParams {
    double lambda = 0.25;
    std::complex<double> r{0.0, 0.0};
    double beta = 0;
    double epsilon = 0;
    bool tempered() const { return lambda >= 0.25; }
    double r_real() const { return tempered() ? std::sqrt(lambda - 0.25) : 0.0; }
    double gap_s() const { return tempered() ? 0.0 : std::sqrt(0.25 - lambda); }
    static EigenvalueParams from_lambda(double lambda, double beta = 0, double epsilon = 0);
};

// Shared inputs for the operator-norm estimates: C_of_X is the local counting
// constant of the surface (1/InjRad), R the injectivity-radius scale the
// kernels must respect, T the wave-packet length, p the target exponent,
// delta the decay slack, and bl_* the frozen constants from the band-limited
// kernel checks.
struct OperatorBoundInputs {
    double C_of_X = 1;
    double R = 8;
    double T = 1;
    double p = 6;
    double delta = 0.05;
    double bl_sup_const = 1;
    double bl_tail_const = 1;
    double alpha_p() const { return (0.5 - delta) * (1.0 - 2.0 / p); }
};

// Square-root-weighted and plain band-limited multiplier families.  Both are
// analytic for |Im r| <= 1/2 + band; evaluation outside that strip throws.
std::complex<double> eval_j(double t, std::complex<double> r, double band = 0.49);
std::complex<double> eval_h(double t, std::complex<double> r, double band = 0.49);

// |j_t j_s - (h_{t+s} + h_{|t-s|})/2| at r; exactly zero in exact arithmetic.
double linearisation_residual(double t, double s, std::complex<double> r);

SpectralMultiplier h_multiplier(double t, double band = 0.49);

// Geometric-side kernel of h_t via the inverse transform.
RadialKernel build_bl_kernel(double t);

// Decay certificates for the band-limited kernels: the sup of |k_t| against
// e^{-t/2} and the mass of |k_t(rho)| sinh(rho) beyond rho = 4t against
// e^{-t}.  Both ratios stay within a fixed window as t grows.
struct KernelCheckRow {
    double t;
    double sup_ratio;
    double tail_ratio;
};
KernelCheckRow bl_kernel_check(double t);
std::vector<KernelCheckRow> bl_kernel_checks(const std::vector<double>& t_grid);

// Operator-norm bound for the single band-limited block q_t on the scale-R
// surface; requires t <= R/4.
double qt_norm_bound(double t, const OperatorBoundInputs& in, double beta);

// Norm bound for the time-averaged wave packet W_T; requires T <= R/8.
double w_norm_bound(const OperatorBoundInputs& in);

// Spectral action of W_T on a tempered eigenfunction: the time average of
// cos^2(rt) with the multiplier weight, tending to T as r -> 0.
double w_spectral_action(double T, const EigenvalueParams& params);

// Normalized indicator kernel of a distance ball, its transform, and the
// sinh-based lower bound for the transform at the untempered point
// r = i sqrt(epsilon) (valid once t >= 3, certified at runtime).
RadialKernel ball_kernel(double t);
std::complex<double> ball_transform(double t, std::complex<double> r);
double ball_lower_bound(double t, double epsilon);

// Applies the group-periodized kernel operator to a sampled function: a
// midpoint-rule integral over a fundamental-domain grid, summing the kernel
// over group translates within the given radius.  Smoke-test accuracy.
double apply_automorphic(const RadialKernel& k, const SurfaceGroup& group,
                         const std::function<double(Point)>& f, Point z,
                         double radius, int grid = 48);

} // namespace hsurf
