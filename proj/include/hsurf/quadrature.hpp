#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "hsurf/errors.hpp"

namespace hsurf {

// Gauss-Legendre rule on [-1,1]; nodes/weights computed once and cached.
struct GlRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GlRule& gl_rule(int n);

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_scale = 0.0;  // extra additive scale for the acceptance test
    int max_nodes = 1 << 16;
};

namespace detail {

template <typename T>
T gl_panel(const std::function<T(double)>& f, double a, double b, const GlRule& rule) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    T acc{};
    for (size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * acc;
}

} // namespace detail

// Adaptive panel integration: bisect until the embedded 16/32-point estimates
// agree to rel_tol (relative to the whole-interval scale, distributed by panel
// width).  Throws NumericError carrying the last two whole-interval estimates
// if the node budget runs out.
template <typename T = double>
T integrate(const std::function<T(double)>& f, double a, double b, QuadOptions opt = {}) {
    if (a == b) return T{};
    const GlRule& coarse = gl_rule(16);
    const GlRule& fine = gl_rule(32);
    const double width = b - a;
    const double scale = std::abs(detail::gl_panel(f, a, b, fine)) + opt.abs_scale;

    struct Panel { double a, b; T coarse_val, fine_val; };
    std::vector<Panel> pending;
    auto make = [&](double lo, double hi) {
        return Panel{lo, hi, detail::gl_panel(f, lo, hi, coarse), detail::gl_panel(f, lo, hi, fine)};
    };
    pending.push_back(make(a, b));
    long nodes = 48 * 2;
    T accepted{};
    T accepted_coarse{};
    while (!pending.empty()) {
        Panel p = pending.back();
        pending.pop_back();
        double err = std::abs(p.fine_val - p.coarse_val);
        double tol = opt.rel_tol * (scale * std::abs((p.b - p.a) / width) + std::abs(p.fine_val));
        if (err <= tol || std::abs(p.b - p.a) < 1e-14 * std::abs(width)) {
            accepted += p.fine_val;
            accepted_coarse += p.coarse_val;
            continue;
        }
        if (nodes + 96 > opt.max_nodes) {
            T rest{}, rest_c{};
            for (const Panel& q : pending) { rest += q.fine_val; rest_c += q.coarse_val; }
            double prev = std::abs(accepted_coarse + rest_c + p.coarse_val);
            double last = std::abs(accepted + rest + p.fine_val);
            throw NumericError("adaptive quadrature exhausted its node budget", prev, last);
        }
        double m = 0.5 * (p.a + p.b);
        pending.push_back(make(p.a, m));
        pending.push_back(make(m, p.b));
        nodes += 96;
    }
    return accepted;
}

// Piecewise-Chebyshev interpolant on [lo,hi]: uniform panels of at most
// panel_width, Chebyshev-Lobatto nodes of the given degree per panel.
// Intended for smooth (analytic away from the complex plane) functions where
// a fixed degree reaches ~1e-15; it deliberately does not refine adaptively,
// so it will not chase quadrature noise in its input.
class ChebSeries {
  public:
    ChebSeries() = default;
    ChebSeries(const std::function<double(double)>& f, double lo, double hi,
               double panel_width = 1.0, int degree = 20);
    double operator()(double x) const;
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double max_abs() const { return maxabs_; }
    bool empty() const { return coef_.empty(); }

  private:
    double lo_ = 0, hi_ = 0, w_ = 1;
    int deg_ = 0;
    std::vector<std::vector<double>> coef_;
    double maxabs_ = 0;
};

} // namespace hsurf
