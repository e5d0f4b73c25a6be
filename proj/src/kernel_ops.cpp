#include "hsurf/kernel_ops.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hsurf {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

void check_band(std::complex<double> r, double band) {
    if (std::abs(r.imag()) > 0.5 + band + 1e-12)
        throw PreconditionError("spectral argument outside the analyticity band");
}

} // namespace

EigenvalueParams EigenvalueParams::from_lambda(double lambda, double beta, double epsilon) {
    EigenvalueParams p;
    p.lambda = lambda;
    p.beta = beta;
    p.epsilon = epsilon;
    if (lambda >= 0.25)
        p.r = {std::sqrt(lambda - 0.25), 0.0};
    else
        p.r = {0.0, std::sqrt(0.25 - lambda)};
    return p;
}

std::complex<double> eval_h(double t, std::complex<double> r, double band) {
    check_band(r, band);
    if (r.real() == 0.0) {
        // Imaginary axis evaluated in reals: cosh growth over a cos that
        // stays positive inside the band.
        const double b = r.imag();
        return std::cosh(b * t) / std::cos(M_PI * b / 2.0);
    }
    return std::cos(r * t) / std::cosh(M_PI * r / 2.0);
}

std::complex<double> eval_j(double t, std::complex<double> r, double band) {
    check_band(r, band);
    if (r.real() == 0.0) {
        const double b = r.imag();
        return std::cosh(b * t) / std::sqrt(std::cos(M_PI * b / 2.0));
    }
    // Re cosh(pi r / 2) > 0 inside the band, so the principal root is smooth.
    return std::cos(r * t) / std::sqrt(std::cosh(M_PI * r / 2.0));
}

double linearisation_residual(double t, double s, std::complex<double> r) {
    auto lhs = eval_j(t, r) * eval_j(s, r);
    auto rhs = 0.5 * (eval_h(t + s, r) + eval_h(std::abs(t - s), r));
    return std::abs(lhs - rhs);
}

SpectralMultiplier h_multiplier(double t, double band) {
    SpectralMultiplier h;
    h.band_epsilon = band;
    h.is_even = true;
    h.eval = [t, band](std::complex<double> r) { return eval_h(t, r, band); };
    return h;
}

RadialKernel build_bl_kernel(double t) { return inverse_transform(h_multiplier(t)); }

KernelCheckRow bl_kernel_check(double t) {
    RadialKernel k = build_bl_kernel(t);

    double sup = 0;
    const double hi = 4 * t + 8;
    for (double rho = 0; rho <= hi; rho += 0.02)
        sup = std::max(sup, std::abs(k.eval(rho)));

    // Tail mass beyond 4t in 2-wide windows, stopped once a window falls
    // three decades below the accumulated mass (the quadrature noise floor
    // in the kernel sits well below that threshold).
    QuadOptions opt;
    opt.rel_tol = 1e-6;
    opt.abs_scale = sup;
    std::function<double(double)> f = [&k](double rho) {
        return std::abs(k.eval(rho)) * std::sinh(rho);
    };
    double tail = 0;
    int windows = 0;
    for (double lo = 4 * t; lo < 4 * t + 20; lo += 2.0, ++windows) {
        double part = integrate<double>(f, lo, lo + 2.0, opt);
        tail += part;
        if (windows >= 2 && part < 1e-3 * tail) break;
    }
    return {t, sup * std::exp(t / 2.0), tail * std::exp(t)};
}

std::vector<KernelCheckRow> bl_kernel_checks(const std::vector<double>& t_grid) {
    std::vector<KernelCheckRow> rows;
    rows.reserve(t_grid.size());
    for (double t : t_grid) rows.push_back(bl_kernel_check(t));
    return rows;
}

double qt_norm_bound(double t, const OperatorBoundInputs& in, double beta) {
    if (t > in.R / 4.0 + 1e-12)
        throw PreconditionError("band-limited block scale exceeds R/4");
    const double expo = 0.5 - in.delta - 1.0 / in.p + 2.0 * in.delta / in.p - 2.0 * beta / in.p;
    return in.bl_sup_const * in.C_of_X * std::exp(-t * expo);
}

double w_norm_bound(const OperatorBoundInputs& in) {
    if (in.T > in.R / 8.0 + 1e-12)
        throw PreconditionError("wave-packet length exceeds R/8");
    if (!(in.alpha_p() > 0))
        throw PreconditionError("exponent must exceed 2 for a positive decay rate");
    // Double-integral envelope of the packet: 2T / alpha_p from the block
    // sum, with an extra factor 2 absorbing the diagonal terms.
    return std::sqrt(in.C_of_X * in.T * 2.0 * in.bl_sup_const / in.alpha_p() * 2.0);
}

double w_spectral_action(double T, const EigenvalueParams& params) {
    if (!params.tempered())
        throw PreconditionError("spectral action formula requires a tempered eigenvalue");
    const double r = params.r_real();
    if (r < 1e-12) return T;
    return (T / 2.0 + std::sin(2.0 * r * T) / (4.0 * r)) / std::sqrt(std::cosh(M_PI * r / 2.0));
}

RadialKernel ball_kernel(double t) {
    if (!(t > 0)) throw PreconditionError("ball radius must be positive");
    const double inv = 1.0 / std::sqrt(std::cosh(t));
    RadialKernel k;
    k.eval = [t, inv](double rho) { return rho <= t ? inv : 0.0; };
    k.support_hint = t;
    k.decay_delta = 1.0;
    k.breakpoints = {t};
    return k;
}

std::complex<double> ball_transform(double t, std::complex<double> r) {
    if (!(t > 0)) return {};
    const double ct = std::cosh(t);
    // Substituting u = t - w^2 removes the square-root edge at u = t.
    std::function<std::complex<double>(double)> f = [t, ct, r](double w) {
        const double u = t - w * w;
        const double edge = std::max(0.0, 1.0 - std::cosh(u) / ct);
        return std::cos(r * u) * std::sqrt(edge) * 2.0 * w;
    };
    QuadOptions opt;
    opt.rel_tol = 1e-12;
    return 4.0 * kSqrt2 * integrate<std::complex<double>>(f, 0.0, std::sqrt(t), opt);
}

double ball_lower_bound(double t, double epsilon) {
    if (t < 3.0 - 1e-12)
        throw PreconditionError("ball transform lower bound needs t >= 3");
    if (!(epsilon > 0) || !(epsilon < 1))
        throw PreconditionError("epsilon must lie in (0,1)");
    const double se = std::sqrt(epsilon);
    auto quot = [t](double x) { return std::abs(x) < 1e-12 ? t : std::sinh(x * t) / x; };
    const double value = quot(se) - 0.5 * (quot(se + 1.0) + quot(se - 1.0)) / std::cosh(t);
    const double floor = std::sinh(se * t);
    if (value < floor * (1.0 - 1e-12)) {
        std::ostringstream w;
        w << "t=" << t << " epsilon=" << epsilon << " value=" << value << " floor=" << floor;
        throw CertificateError("ball transform dropped below its sinh floor", w.str());
    }
    return value;
}

double apply_automorphic(const RadialKernel& k, const SurfaceGroup& group,
                         const std::function<double(Point)>& f, Point z,
                         double radius, int grid) {
    if (grid < 4) throw PreconditionError("fundamental-domain grid too coarse");
    const Point z0 = group.base_point;
    const double dom_r = 0.5 * group.domain_diameter + 0.1;

    // Every group element that moves some domain point within `radius` of z
    // moves the base point within radius + dom_r of it.
    EnumOptions opt;
    auto ball = enumerate_ball(group, z, z0, radius + dom_r, opt);
    auto translates = enumerate_ball(group, z0, z0, 2.0 * dom_r + 0.2, opt);

    // Polar cells about the base point: w = (z0 - conj(z0) zeta)/(1 - zeta)
    // with zeta = tanh(rho/2) e^{i theta} keeps d(w, z0) = rho exactly, so the
    // cells stay hyperbolically uniform and each band's mass
    // (cosh rho_hi - cosh rho_lo) dtheta is exact.
    const std::complex<double> zc(z0.x, z0.y), zbar(z0.x, -z0.y);
    const double dtheta = 2.0 * M_PI / grid;
    double acc = 0;
    for (int i = 0; i < grid; ++i) {
        const double rho_lo = dom_r * i / grid, rho_hi = dom_r * (i + 1) / grid;
        const double band = std::cosh(rho_hi) - std::cosh(rho_lo);
        const double tr = std::tanh(0.25 * (rho_lo + rho_hi));
        for (int j = 0; j < grid; ++j) {
            const std::complex<double> zeta = tr * std::polar(1.0, dtheta * (j + 0.5));
            const std::complex<double> wc = (zc - zbar * zeta) / (1.0 - zeta);
            const Point w{wc.real(), wc.imag()};
            const double d0 = distance(w, z0);
            bool inside = true;
            for (const auto& e : translates.elements) {
                if (e.word.empty()) continue;
                if (distance(w, apply(e.m, z0)) < d0 - 1e-12) {
                    inside = false;
                    break;
                }
            }
            if (!inside) continue;
            double ksum = 0;
            for (const auto& e : ball.elements) ksum += k.eval(distance(z, apply(e.m, w)));
            acc += band * dtheta * f(w) * ksum;
        }
    }
    return acc;
}

} // namespace hsurf
