#include "hsurf/quadrature.hpp"

#include <map>
#include <mutex>

namespace hsurf {

static GlRule compute_gl(int n) {
    GlRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Newton on the Legendre polynomial from the usual cosine initial guess
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

const GlRule& gl_rule(int n) {
    static std::map<int, GlRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gl(n)).first;
    return it->second;
}

ChebSeries::ChebSeries(const std::function<double(double)>& f, double lo, double hi,
                       double panel_width, int degree)
    : lo_(lo), hi_(hi), deg_(degree) {
    if (!(hi > lo) || degree < 2) throw PreconditionError("ChebSeries: bad range or degree");
    int n_panels = std::max(1, (int)std::ceil((hi - lo) / panel_width));
    w_ = (hi - lo) / n_panels;
    const int m = degree;
    std::vector<double> vals(m + 1);
    coef_.resize(n_panels);
    for (int p = 0; p < n_panels; ++p) {
        double a = lo + p * w_, b = a + w_;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int j = 0; j <= m; ++j) {
            double x = mid + half * std::cos(j * M_PI / m);
            vals[j] = f(x);
            maxabs_ = std::max(maxabs_, std::abs(vals[j]));
        }
        std::vector<double>& c = coef_[p];
        c.assign(m + 1, 0.0);
        for (int k = 0; k <= m; ++k) {
            double acc = 0.5 * (vals[0] + (k % 2 ? -vals[m] : vals[m]));
            for (int j = 1; j < m; ++j) acc += vals[j] * std::cos(k * j * M_PI / m);
            c[k] = 2.0 * acc / m;
        }
        c[0] *= 0.5;
        c[m] *= 0.5;
    }
}

double ChebSeries::operator()(double x) const {
    if (coef_.empty()) throw PreconditionError("ChebSeries: evaluating empty series");
    if (x < lo_) x = lo_;
    if (x > hi_) x = hi_;
    int p = std::min((int)coef_.size() - 1, (int)((x - lo_) / w_));
    double a = lo_ + p * w_;
    double y = 2.0 * (x - a) / w_ - 1.0;
    // Clenshaw
    const std::vector<double>& c = coef_[p];
    double b1 = 0, b2 = 0;
    for (int k = (int)c.size() - 1; k >= 1; --k) {
        double b0 = 2.0 * y * b1 - b2 + c[k];
        b2 = b1;
        b1 = b0;
    }
    return y * b1 - b2 + c[0];
}

} // namespace hsurf
