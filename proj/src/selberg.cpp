#include "hsurf/selberg.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace hsurf {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// Level-set coordinate: the point at Abel parameter v above base height u
// sits at distance rho with cosh(rho) = cosh(u) + v^2.
double rho_of(double u, double v) { return std::acosh(std::cosh(u) + v * v); }

double real_axis(const SpectralMultiplier& h, double s) {
    return h.eval(std::complex<double>(s, 0.0)).real();
}

// Splits [0, vmax] at the level sets of the kernel's breakpoints, then
// geometrically; each piece is handled adaptively.
double abel_integral(const std::function<double(double)>& f, double vmax,
                     const std::vector<double>& extra_cuts, double abs_scale = 0.0) {
    if (!(vmax > 0)) return 0.0;
    std::vector<double> cuts{0.0};
    for (double c : extra_cuts)
        if (c > 0 && c < vmax) cuts.push_back(c);
    for (double v = 1.0; v < vmax; v *= 2) cuts.push_back(v);
    cuts.push_back(vmax);
    std::sort(cuts.begin(), cuts.end());
    QuadOptions opt;
    opt.rel_tol = 1e-11;
    opt.abs_scale = abs_scale;
    double acc = 0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        if (cuts[i + 1] > cuts[i]) acc += integrate<double>(f, cuts[i], cuts[i + 1], opt);
    return acc;
}

} // namespace

double kernel_effective_support(const RadialKernel& k) {
    double cap = k.support_hint;
    for (double bp : k.breakpoints) cap = std::max(cap, bp);
    cap += 60.0;
    const double step = 0.25;
    double kscale = 0;
    std::vector<double> mags;
    for (double rho = 0; rho <= cap; rho += step) {
        mags.push_back(std::abs(k.eval(rho)));
        kscale = std::max(kscale, mags.back());
    }
    if (kscale == 0) return 1.0;
    size_t last = 0;
    for (size_t i = 0; i < mags.size(); ++i)
        if (mags[i] >= 1e-15 * kscale) last = i;
    return std::min(cap, (last + 1) * step);
}

double abel_average(const RadialKernel& k, double u, double rho_stop) {
    if (u >= rho_stop) return 0.0;
    const double base = std::cosh(u);
    const double vmax = std::sqrt(std::cosh(rho_stop) - base);
    std::vector<double> cuts;
    for (double bp : k.breakpoints)
        if (bp > u) cuts.push_back(std::sqrt(std::cosh(bp) - base));
    std::function<double(double)> f = [&](double v) { return k.eval(rho_of(u, v)); };
    return 2.0 * kSqrt2 * abel_integral(f, vmax, cuts);
}

SpectralMultiplier forward_transform(const RadialKernel& k) {
    const double rho_stop = kernel_effective_support(k);
    auto kernel = std::make_shared<RadialKernel>(k);

    // Smooth kernels get a cached interpolant of the Abel average; kernels
    // with jumps are averaged directly so the square-root edge stays exact.
    std::shared_ptr<ChebSeries> cache;
    if (kernel->breakpoints.empty())
        cache = std::make_shared<ChebSeries>(
            [&](double u) { return abel_average(*kernel, u, rho_stop); }, 0.0, rho_stop);

    double g_scale = 0;
    if (cache) {
        g_scale = cache->max_abs();
    } else {
        for (int i = 0; i <= 32; ++i)
            g_scale = std::max(g_scale, std::abs(abel_average(*kernel, rho_stop * i / 32.0, rho_stop)));
    }

    auto g_eval = [cache, kernel, rho_stop](double u) -> double {
        if (u >= rho_stop) return 0.0;
        if (cache) return (*cache)(u);
        return abel_average(*kernel, u, rho_stop);
    };

    SpectralMultiplier out;
    out.band_epsilon = kernel->decay_delta;
    out.is_even = true;
    out.eval = [g_eval, rho_stop, g_scale](std::complex<double> r) -> std::complex<double> {
        // Cosine transform in panels of one oscillation period.
        const double step = M_PI / std::max(1.0, std::abs(r.real()));
        QuadOptions opt;
        opt.rel_tol = 1e-11;
        opt.abs_scale = g_scale;
        std::complex<double> acc{};
        std::function<std::complex<double>(double)> f = [&](double u) {
            return std::cos(r * u) * g_eval(u);
        };
        for (double a = 0; a < rho_stop; a += step)
            acc += integrate<std::complex<double>>(f, a, std::min(a + step, rho_stop), opt);
        return 2.0 * acc;
    };
    return out;
}

double evenness_residual(const SpectralMultiplier& h) {
    const double grid[] = {0.17, 0.7, 1.3, 2.9, 5.1, 8.3};
    double res = 0;
    for (double s : grid)
        res = std::max(res, std::abs(h.eval(std::complex<double>(s, 0.0)) -
                                     h.eval(std::complex<double>(-s, 0.0))));
    return res;
}

double kernel_decay_bound(const RadialKernel& k) {
    double bound = 0;
    const double hi = std::max(4.0, k.support_hint);
    for (double rho = 0; rho <= hi; rho += 0.5)
        bound = std::max(bound, std::abs(k.eval(rho)) * std::exp((1.0 + k.decay_delta) * rho));
    return bound;
}

RadialKernel inverse_transform(const SpectralMultiplier& h) {
    double hscale = 0;
    for (double s = 0; s <= 8.0; s += 0.25)
        hscale = std::max(hscale, std::abs(real_axis(h, s)));
    if (evenness_residual(h) > 1e-10 * std::max(1.0, hscale))
        throw PreconditionError("spectral multiplier must be even in r");
    try {
        auto probe = h.eval(std::complex<double>(0.0, 0.5 + 0.999 * h.band_epsilon));
        if (!std::isfinite(probe.real()) || !std::isfinite(probe.imag()))
            throw PreconditionError("spectral multiplier is not finite across its band");
    } catch (const PreconditionError&) {
        throw;
    } catch (const std::exception&) {
        throw PreconditionError("spectral multiplier is not evaluable across its band");
    }

    // Truncation point for the s-integrals: doubling blocks until the block
    // bound on |s h(s)| integrates below 1e-17 of the head scale.
    const double head_scale = std::max(1e-300, hscale * 8.0);
    double s_max = 0, prev_bound = 0;
    for (double lo = 8.0; lo <= 16384.0; lo *= 2) {
        double mx = 0;
        for (int i = 0; i <= 16; ++i) mx = std::max(mx, std::abs(real_axis(h, lo + lo * i / 16.0)));
        double block = mx * 1.5 * lo * lo;
        if (block < 1e-17 * head_scale) { s_max = 2 * lo; break; }
        prev_bound = block;
        if (2 * lo > 16384.0)
            throw NumericError("spectral multiplier decays too slowly for kernel recovery",
                               prev_bound, block);
    }

    QuadOptions sopt;
    sopt.rel_tol = 1e-11;
    sopt.abs_scale = hscale;

    // g'(u) by the differentiated cosine transform, in one-period panels.
    auto gprime = [&h, s_max, sopt](double u) -> double {
        const double step = M_PI / std::max(1.0, u);
        std::function<double(double)> f = [&h, u](double s) {
            return s * std::sin(s * u) * real_axis(h, s);
        };
        double acc = 0;
        for (double a = 0; a < s_max; a += step)
            acc += integrate<double>(f, a, std::min(a + step, s_max), sopt);
        return -acc / M_PI;
    };

    // g''(0), the regularized value of g'(u)/sinh(u) at u = 0.
    double g2_0 = 0;
    {
        std::function<double(double)> f = [&h](double s) { return s * s * real_axis(h, s); };
        double acc = 0;
        for (double a = 0; a < s_max; a += M_PI)
            acc += integrate<double>(f, a, std::min(a + M_PI, s_max), sopt);
        g2_0 = -acc / M_PI;
    }

    double gscale = 0;
    for (double u : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0})
        gscale = std::max(gscale, std::abs(gprime(u)));
    gscale = std::max(gscale, std::abs(g2_0));

    // Effective support of g': past it the quadrature floor dominates and the
    // tail's contribution to the kernel is below the working accuracy.
    double u_g = 120.0;
    double prev = gscale;
    for (double u = 10.0; u <= 118.0; u += 2.0) {
        double cur = std::abs(gprime(u));
        if (cur < 1e-15 * gscale && prev < 1e-15 * gscale) { u_g = u; break; }
        prev = cur;
    }
    u_g = std::max(u_g, 10.0);

    auto gcheb = std::make_shared<ChebSeries>(
        [&](double u) { return u < 1e-6 ? g2_0 : gprime(u) / std::sinh(u); }, 0.0, u_g);

    const double rho_max = std::max(40.0, u_g + 8.0);
    const double cosh_ug = std::cosh(u_g);
    // The geometric tail blocks integrate interpolation noise far below the
    // kernel's own magnitude; anchoring the tolerance at gscale stops the
    // adaptive bisection from chasing that noise.
    auto k_node = [gcheb, u_g, cosh_ug, gscale](double rho) -> double {
        if (rho >= u_g) return 0.0;
        const double base = std::cosh(rho);
        std::function<double(double)> f = [&](double v) { return (*gcheb)(rho_of(rho, v)); };
        return -(kSqrt2 / M_PI) * abel_integral(f, std::sqrt(cosh_ug - base), {}, gscale);
    };
    auto kcheb = std::make_shared<ChebSeries>(k_node, 0.0, rho_max);

    double kmax = kcheb->max_abs();
    double support = 1.0;
    for (double rho = 0; rho <= rho_max; rho += 0.5)
        if (std::abs((*kcheb)(rho)) >= 1e-14 * kmax) support = rho + 0.5;

    RadialKernel out;
    out.support_hint = std::min(support, rho_max);
    out.decay_delta = h.band_epsilon;
    out.eval = [kcheb, rho_max](double rho) -> double {
        rho = std::abs(rho);
        if (rho >= rho_max) return 0.0;
        return (*kcheb)(rho);
    };
    return out;
}

} // namespace hsurf
