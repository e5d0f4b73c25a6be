#include "hsurf/bounds.hpp"

#include <cmath>
#include <sstream>

namespace hsurf {

double BoundReport::product() const {
    double acc = 1;
    for (const auto& f : factors) acc *= f.value;
    return acc;
}

BoundReport tempered_bound(const OperatorBoundInputs& inputs, const EigenvalueParams& params,
                           double p) {
    const double threshold = 2.0 + 4.0 * params.beta;
    if (!(p > threshold)) {
        std::ostringstream msg;
        msg << "tempered bound needs p > 2 + 4 beta = " << threshold;
        throw PreconditionError(msg.str());
    }
    if (!params.tempered())
        throw PreconditionError("tempered bound needs lambda >= 1/4");

    OperatorBoundInputs in = inputs;
    in.p = p;
    in.T = in.R / 8.0;

    BoundReport rep;
    rep.regime = "tempered";
    rep.p = p;
    rep.lambda = params;
    rep.inputs = in;

    const double r = params.r_real();
    const double action_core = r < 1e-12 ? in.T
                                         : in.T / 2.0 + std::sin(2.0 * r * in.T) / (4.0 * r);
    rep.factors = {
        {"packet_mass", std::sqrt(in.C_of_X * in.T * 4.0 * in.bl_sup_const),
         "square root of C T with the block-sum envelope constant (factor-2 slack)"},
        {"alpha_p_rate", 1.0 / std::sqrt(in.alpha_p()),
         "inverse square root of the block decay rate (1/2 - delta)(1 - 2/p)"},
        {"spectral_weight", std::sqrt(std::cosh(M_PI * r / 2.0)),
         "multiplier weight at the eigenvalue"},
        {"time_average_inv", 1.0 / action_core,
         "reciprocal time average of the squared cosine wave"},
    };
    rep.bound_value = w_norm_bound(in) / w_spectral_action(in.T, params);
    return rep;
}

BoundReport untempered_bound(const OperatorBoundInputs& inputs, const EigenvalueParams& params,
                             double p, double delta) {
    if (!(params.epsilon > 0))
        throw PreconditionError("untempered bound needs a positive spectral gap epsilon");
    if (params.lambda > 0.25 - params.epsilon) {
        std::ostringstream msg;
        msg << "untempered bound needs lambda <= 1/4 - epsilon = " << 0.25 - params.epsilon;
        throw PreconditionError(msg.str());
    }
    if (inputs.R < 3.0)
        throw PreconditionError("untempered bound needs R >= 3 for the ball minorant");
    if (p < 2.0 - 1e-9) throw PreconditionError("untempered bound needs p >= 2");
    const double se = std::sqrt(params.epsilon);
    if (!(se > delta))
        throw PreconditionError("decay slack delta must stay below sqrt(epsilon)");

    BoundReport rep;
    rep.regime = "untempered";
    rep.p = p;
    rep.lambda = params;
    rep.inputs = inputs;
    rep.inputs.p = p;
    rep.degenerate = std::abs(p - 2.0) <= 1e-9;

    const double expo = 1.0 - 2.0 / p;
    const double denom = std::expm1((se - delta) * inputs.R);
    rep.factors = {
        {"count_factor", std::pow(inputs.C_of_X, expo),
         "local counting constant from the short-element bound"},
        {"ball_minorant_inv", std::pow(denom, -expo),
         "sinh minorant of the ball transform at the gap point"},
    };
    rep.bound_value = std::pow(inputs.C_of_X / denom, expo);
    return rep;
}

RandomSurfaceReport random_surface_report(double g, double b, double c,
                                          const EigenvalueParams& params, double p,
                                          double alpha, double delta, double delta_univ) {
    if (!(g > 1)) throw PreconditionError("genus must exceed 1");
    if (!(c > 0)) throw PreconditionError("length coefficient c must be positive");
    const double lg = std::log(g);
    RandomSurfaceReport out;
    out.injrad = alpha > 0 ? std::pow(lg, -alpha) : std::pow(g, -b);
    out.R = c * lg;

    OperatorBoundInputs in;
    in.C_of_X = 1.0 / out.injrad;
    in.R = out.R;
    in.T = out.R / 8.0;
    in.delta = delta;

    if (params.tempered()) {
        out.report = tempered_bound(in, params, p);
    } else {
        // Direct genus form of the ball route: the decay slack is already
        // absorbed, the denominator depends on g alone.
        if (!(params.epsilon > 0))
            throw PreconditionError("untempered report needs a positive spectral gap epsilon");
        if (params.lambda > 0.25 - params.epsilon)
            throw PreconditionError("untempered report needs lambda <= 1/4 - epsilon");
        if (!(p >= 2.0 - 1e-9)) throw PreconditionError("need p >= 2");
        BoundReport rep;
        rep.regime = "untempered";
        rep.p = p;
        rep.lambda = params;
        rep.inputs = in;
        rep.inputs.p = p;
        rep.degenerate = std::abs(p - 2.0) <= 1e-9;
        const double expo = 1.0 - 2.0 / p;
        const double denom = std::pow(g, c * std::sqrt(params.epsilon)) - 1.0;
        if (!(denom > 0))
            throw PreconditionError("spectral-gap denominator vanishes: g^{c sqrt(eps)} <= 1");
        rep.factors = {
            {"injrad_inverse", in.C_of_X, "local counting constant 1/InjRad"},
            {"gap_denominator_inv", std::pow(denom, -expo),
             "genus-power denominator from the ball transform at the gap point"},
        };
        rep.bound_value = in.C_of_X * std::pow(denom, -expo);
        out.report = rep;
    }

    if (b > 0 && b < 0.5) {
        auto pp = ProbabilityParams::make(g, b, c);
        pp.delta_univ = delta_univ;
        out.probability = final_probability_bound(pp);
    } else {
        out.probability = 1.0;  // no injectivity-radius event to condition on
    }
    return out;
}

double multiplicity_bound(double g, const EigenvalueParams& params, double alpha,
                          double d_const) {
    auto rep = random_surface_report(g, 0.25, d_const, params, INFINITY, alpha);
    return rep.report.bound_value * rep.report.bound_value;
}

} // namespace hsurf
