#include "hsurf/multicurve.hpp"

#include <cmath>

namespace hsurf {

namespace {

double log_add(double a, double b) {
    if (a == -INFINITY) return b;
    if (b == -INFINITY) return a;
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

} // namespace

long long component_cap(double c, double b, double g, double kappa) {
    if (!(g > 1) || !(c > 0) || !(b > 0) || !(kappa > 0))
        throw PreconditionError("component cap needs g > 1, c > 0, b > 0, kappa > 0");
    const double lg = std::log(g);
    return (long long)std::ceil(kappa * c * c * std::pow(g, 2.0 * b) * lg * lg);
}

ProbabilityParams ProbabilityParams::make(double g, double b, double c, double slack,
                                          double kappa) {
    if (!(g > 1)) throw PreconditionError("genus must exceed 1");
    if (!(b > 0) || !(b < 0.5)) throw PreconditionError("b must lie in (0, 1/2)");
    if (!(c > 0)) throw PreconditionError("c must be positive");
    ProbabilityParams p;
    p.g = g;
    p.b = b;
    p.c = c;
    p.d = 2.0 * b + slack;
    p.kappa = kappa;
    p.K_of_g = component_cap(c, b, g, kappa);
    p.L = 4.0 * c * std::log(g);
    return p;
}

long long intersection_bound(double len_a, double len_b, double injrad) {
    if (!(injrad > 0)) throw PreconditionError("injectivity radius must be positive");
    if (len_a < 0 || len_b < 0) throw PreconditionError("lengths must be nonnegative");
    return (long long)std::ceil(2.0 * len_a / injrad) *
           (long long)std::ceil(2.0 * len_b / injrad);
}

int filling_lower_bound(int g, int n) {
    if (2 * g - 2 + n < 0) throw PreconditionError("need 2g - 2 + n >= 0");
    return 2 * g + n - 2;
}

SeparatingProfile separating_multicurve_profile(double c, double b, double g, double injrad) {
    if (!(g > 1) || !(c > 0) || !(b > 0))
        throw PreconditionError("profile needs g > 1, c > 0, b > 0");
    if (injrad < std::pow(g, -b) * (1.0 - 1e-12))
        throw PreconditionError("injectivity radius below the g^{-b} hypothesis");
    SeparatingProfile out;
    const double ell = c * std::log(g);
    out.intersection_budget = intersection_bound(ell, ell, injrad);
    out.K_max = out.intersection_budget + 2;
    out.L_max = 4.0 * ell;
    out.forced = 2.0 * g - 2.0 > (double)out.intersection_budget;
    return out;
}

std::vector<MulticurveClass> genus_splittings(int g, int k) {
    if (k < 1) throw PreconditionError("component count must be at least 1");
    std::vector<MulticurveClass> out;
    const int total = g + 1 - k;
    // Both pieces carry k boundary circles, so genus floor (3-k)/2.
    const int lo = std::max(0, (int)std::ceil((3.0 - k) / 2.0));
    double sym = std::tgamma(k + 1.0);
    for (int g1 = lo; g1 <= total - lo; ++g1) {
        MulticurveClass c;
        c.k = k;
        c.g1 = g1;
        c.g2 = total - g1;
        c.sym_order = sym;
        c.m_gamma = (k == 1 && std::min(c.g1, c.g2) == 1) ? 1 : 0;
        out.push_back(c);
    }
    return out;
}

MulticurveBound expected_multicurve_bound(const ProbabilityParams& params,
                                          const VolumeTable& table) {
    const int g = (int)params.g;
    if (g < 2 || std::abs(params.g - g) > 0)
        throw PreconditionError("table-backed bound needs an integer genus >= 2");
    if (params.K_of_g != component_cap(params.c, params.b, params.g, params.kappa))
        throw PreconditionError("component cap inconsistent with its formula");
    const double log_vg = table.log_value(g, 0);
    const double L = params.L;
    MulticurveBound out;
    double lse = -INFINITY;
    for (long long k = 1; k <= params.K_of_g; ++k) {
        auto splits = genus_splittings(g, (int)k);
        if (splits.empty()) continue;
        double split_lse = -INFINITY;
        for (const auto& s : splits) {
            double term;
            if (table.has(s.g1, s.k) && table.has(s.g2, s.k)) {
                term = table.log_value(s.g1, s.k) + table.log_value(s.g2, s.k);
            } else {
                const double C = table.fitted_C > 0 ? table.fitted_C : 1.0;
                term = mz_asymptotic_log(std::max(1, s.g1), s.k, C) +
                       mz_asymptotic_log(std::max(1, s.g2), s.k, C);
                out.used_asymptotic = true;
            }
            split_lse = log_add(split_lse, term);
        }
        // e^L L^{2k} / (k! k^k), with the optional tighter simplex measure.
        double weight = L + 2.0 * k * std::log(L) - std::lgamma(k + 1.0) - k * std::log((double)k);
        if (params.tight_measure) weight -= std::lgamma(k + 1.0);
        lse = log_add(lse, weight + split_lse - log_vg);
        out.empty = false;
    }
    out.explicit_log = lse;
    out.envelope_log = (params.delta_univ * (params.c + params.d) - 0.5) * std::log(params.g);
    return out;
}

double fit_delta(const VolumeTable& table, double b, double c, double slack, double kappa) {
    double delta = 1e-6;
    for (int g = 2; g <= table.max_genus; ++g) {
        if (!table.has(g, 0)) continue;
        auto params = ProbabilityParams::make(g, b, c, slack, kappa);
        auto bound = expected_multicurve_bound(params, table);
        if (bound.empty) continue;
        // envelope_log >= explicit_log iff delta >= (explicit/log g + 1/2)/(c+d)
        double need = (bound.explicit_log / std::log((double)g) + 0.5) / (params.c + params.d);
        delta = std::max(delta, need);
    }
    return delta;
}

double probability_exponent(const ProbabilityParams& params) {
    return -0.5 + params.delta_univ * (params.c + params.b);
}

double final_probability_bound(const ProbabilityParams& params) {
    if (!(params.g > 1)) throw PreconditionError("genus must exceed 1");
    const double lg = std::log(params.g);
    return std::exp(probability_exponent(params) * lg) + std::exp(-2.0 * params.b * lg);
}

double cosh_envelope_gap(double L) {
    if (!(L > 0)) throw PreconditionError("length must be positive");
    const double rhs = std::cosh(std::sqrt(M_E) * L) - 1.0;
    // Sum in log domain until terms fall 25 decades below the envelope.
    double sum = 0;
    const double log_rhs = std::log(rhs);
    for (long long k = 1; k <= 4000; ++k) {
        double lt = 2.0 * k * std::log(L) - std::lgamma(k + 1.0) - k * std::log((double)k);
        if (k > 2 * L && lt < log_rhs - 25.0 * M_LN10) break;
        sum += std::exp(lt);
    }
    return rhs - sum;
}

} // namespace hsurf
