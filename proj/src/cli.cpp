#include "hsurf/cli.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>

#include "hsurf/bounds.hpp"
#include "hsurf/kernel_ops.hpp"
#include "hsurf/lattice.hpp"
#include "hsurf/multicurve.hpp"
#include "hsurf/selberg.hpp"
#include "hsurf/wp_volumes.hpp"

namespace hsurf {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_int(long long v) { return std::to_string(v); }

// Output sink: path "-" means stdout.
struct Sink {
    std::ofstream file;
    std::ostream* os = nullptr;
    explicit Sink(const std::string& path) {
        if (path == "-") {
            os = &std::cout;
        } else {
            file.open(path);
            if (!file) throw ConfigError("cannot open output file: " + path);
            os = &file;
        }
    }
    std::ostream& out() { return *os; }
};

using KvList = std::vector<std::pair<std::string, std::string>>;

void write_header(std::ostream& os, const std::string& sub, KvList kv) {
    os << "# " << kArtifactVersion << "\n";
    os << "# subcommand " << sub << "\n";
    std::sort(kv.begin(), kv.end());
    for (const auto& [k, v] : kv) os << "# " << k << "=" << v << "\n";
}

std::vector<double> parse_grid(const std::string& spec) {
    auto fail = [&] { throw ConfigError("bad grid '" + spec + "': want lo:hi:step"); };
    double lo, hi, step;
    char c1, c2;
    std::istringstream in(spec);
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':') fail();
    if (!(step > 0) || hi < lo) fail();
    std::vector<double> out;
    for (double v = lo; v <= hi + 1e-12 * std::max(1.0, std::abs(hi)); v += step)
        out.push_back(v);
    return out;
}

std::vector<double> parse_list(const std::string& spec) {
    std::vector<double> out;
    std::istringstream in(spec);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw ConfigError("bad numeric list entry '" + tok + "'");
        }
    }
    if (out.empty()) throw ConfigError("empty numeric list");
    return out;
}

std::string word_str(const std::vector<int>& w) {
    if (w.empty()) return "id";
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += '-';
        s += std::to_string(w[i]);
    }
    return s;
}

Point point_from(const std::vector<double>& v, Point fallback) {
    if (v.empty()) return fallback;
    if (v.size() != 2 || !(v[1] > 0))
        throw ConfigError("points take two values x y with y > 0");
    return {v[0], v[1]};
}

double uniform01(std::mt19937_64& rng) { return std::ldexp((double)(rng() >> 11), -53); }

Point random_point(std::mt19937_64& rng, const SurfaceGroup& g) {
    // Uniform in a small box around the base point, well inside the domain.
    const Point b = g.base_point;
    const double x = b.x + b.y * (uniform01(rng) - 0.5);
    const double y = b.y * std::exp(0.8 * (uniform01(rng) - 0.5));
    return {x, y};
}

// ---- subcommand bodies ----------------------------------------------------

struct CommonOpts {
    std::string out = "-";
    int workers = 0;
    long long seed = 1;
};

int run_lattice_ball(const CommonOpts& co, const std::string& surface, double r,
                     const std::vector<double>& zv, const std::vector<double>& wv,
                     long long budget) {
    auto g = load_surface_spec(surface);
    const Point z = point_from(zv, g.base_point);
    const Point w = point_from(wv, g.base_point);
    EnumOptions eo;
    eo.budget = budget;
    eo.workers = co.workers;
    auto res = enumerate_ball(g, z, w, r, eo);
    Sink sink(co.out);
    write_header(sink.out(), "lattice-ball",
                 {{"surface", surface},
                  {"r", fmt(r)},
                  {"z", fmt(z.x) + " " + fmt(z.y)},
                  {"w", fmt(w.x) + " " + fmt(w.y)},
                  {"budget", fmt_int(budget)},
                  {"count", fmt_int((long long)res.elements.size())},
                  {"visited", fmt_int(res.visited)}});
    sink.out() << "a,b,c,d,dist,word\n";
    for (const auto& e : res.elements)
        sink.out() << fmt(e.m.a) << ',' << fmt(e.m.b) << ',' << fmt(e.m.c) << ','
                   << fmt(e.m.d) << ',' << fmt(e.dist) << ',' << word_str(e.word) << "\n";
    return 0;
}

int run_loop_census(const CommonOpts& co, const std::string& surface, double length,
                    const std::vector<double>& zv) {
    auto g = load_surface_spec(surface);
    const Point z = point_from(zv, g.base_point);
    EnumOptions eo;
    eo.workers = co.workers;
    auto census = loop_census(g, z, length, eo);
    Sink sink(co.out);
    write_header(sink.out(), "loop-census",
                 {{"surface", surface},
                  {"length", fmt(length)},
                  {"z", fmt(z.x) + " " + fmt(z.y)},
                  {"primitive_count", fmt_int(census.count())}});
    sink.out() << "length,a,b,c,d,word\n";
    for (const auto& loop : census.primitive_loops)
        sink.out() << fmt(loop.length) << ',' << fmt(loop.element.a) << ','
                   << fmt(loop.element.b) << ',' << fmt(loop.element.c) << ','
                   << fmt(loop.element.d) << ',' << word_str(loop.word) << "\n";
    return 0;
}

int run_certify_growth(const CommonOpts& co, const std::string& surface, double radius,
                       const std::string& deltas, int samples) {
    auto g = load_surface_spec(surface);
    auto delta_grid = parse_list(deltas);
    std::vector<std::pair<Point, Point>> sample{{g.base_point, g.base_point}};
    std::mt19937_64 rng((unsigned long long)co.seed);
    for (int i = 0; i < samples; ++i)
        sample.push_back({random_point(rng, g), random_point(rng, g)});
    EnumOptions eo;
    eo.workers = co.workers;
    auto cert = certify_growth(g, radius, delta_grid, sample, eo);
    Sink sink(co.out);
    write_header(sink.out(), "certify-growth",
                 {{"surface", surface},
                  {"radius", fmt(radius)},
                  {"deltas", deltas},
                  {"samples", fmt_int(samples)},
                  {"seed", fmt_int(co.seed)},
                  {"injrad_estimate", fmt(cert.injrad_estimate)},
                  {"C_of_X", fmt(cert.C_of_X)},
                  {"loop_count_cap", fmt_int(cert.loop_count_cap)}});
    sink.out() << "pair,r,count,count_half,lemma_rhs\n";
    for (const auto& row : cert.rows)
        sink.out() << row.pair_index << ',' << fmt(row.r) << ',' << row.count << ','
                   << row.count_half << ',' << fmt(row.lemma_rhs) << "\n";
    for (const auto& [d, c0] : cert.C0_of_delta)
        sink.out() << "# C0 delta=" << fmt(d) << " value=" << fmt(c0) << "\n";
    return 0;
}

int run_selberg(const CommonOpts& co, double t, const std::string& kernel,
                const std::string& mode, const std::string& grid) {
    auto pts = parse_grid(grid);
    Sink sink(co.out);
    write_header(sink.out(), "selberg",
                 {{"t", fmt(t)}, {"kernel", kernel}, {"mode", mode}, {"grid", grid}});
    if (kernel == "bl" && mode == "inverse") {
        auto k = build_bl_kernel(t);
        sink.out() << "rho,k\n";
        for (double rho : pts) sink.out() << fmt(rho) << ',' << fmt(k.eval(rho)) << "\n";
        return 0;
    }
    if (kernel == "bl" && mode == "roundtrip") {
        auto fwd = forward_transform(build_bl_kernel(t));
        sink.out() << "r,h,h_roundtrip,abs_err\n";
        for (double r : pts) {
            const double want = eval_h(t, {r, 0.0}).real();
            const double got = fwd.eval({r, 0.0}).real();
            sink.out() << fmt(r) << ',' << fmt(want) << ',' << fmt(got) << ','
                       << fmt(std::abs(want - got)) << "\n";
        }
        return 0;
    }
    if (kernel == "ball" && mode == "forward") {
        auto fwd = forward_transform(ball_kernel(t));
        sink.out() << "r,h_pipeline,h_closed,abs_err\n";
        for (double r : pts) {
            const double got = fwd.eval({r, 0.0}).real();
            const double want = ball_transform(t, {r, 0.0}).real();
            sink.out() << fmt(r) << ',' << fmt(got) << ',' << fmt(want) << ','
                       << fmt(std::abs(want - got)) << "\n";
        }
        return 0;
    }
    throw ConfigError("supported combinations: --kernel bl --mode inverse|roundtrip, "
                      "--kernel ball --mode forward");
}

int run_kernel_check(const CommonOpts& co, const std::string& t_grid, const std::string& mode) {
    Sink sink(co.out);
    write_header(sink.out(), "kernel-check", {{"t-grid", t_grid}, {"mode", mode}});
    if (mode == "ratios") {
        auto rows = bl_kernel_checks(parse_grid(t_grid));
        sink.out() << "t,ratio_sup,ratio_tail\n";
        for (const auto& row : rows)
            sink.out() << fmt(row.t) << ',' << fmt(row.sup_ratio) << ','
                       << fmt(row.tail_ratio) << "\n";
        return 0;
    }
    if (mode == "linearisation") {
        const double ts[] = {0, 0.7, 1.3, 2, 5};
        std::vector<std::complex<double>> rs;
        for (double r : {0.0, 0.5, 1.0, 3.0, 8.0}) rs.push_back({r, 0.0});
        for (double b : {0.1, 0.3, 0.5}) rs.push_back({0.0, b});
        sink.out() << "t,s,r_re,r_im,residual\n";
        for (double t : ts)
            for (double s : ts)
                for (auto r : rs)
                    sink.out() << fmt(t) << ',' << fmt(s) << ',' << fmt(r.real()) << ','
                               << fmt(r.imag()) << ',' << fmt(linearisation_residual(t, s, r))
                               << "\n";
        return 0;
    }
    throw ConfigError("--mode must be ratios or linearisation");
}

int run_wp_check(const CommonOpts& co, const std::string& table_path) {
    auto table = load_volume_table(table_path);
    struct Row {
        std::string check, detail;
        double value;
        bool ok;
    };
    std::vector<Row> rows;

    // Boundary-length estimate on every stored polynomial, several L fills.
    for (const auto& [key, poly] : table.polynomials) {
        (void)poly;
        const auto [g, n] = key;
        std::vector<std::pair<std::string, std::vector<double>>> fills;
        fills.push_back({"zeros", std::vector<double>(n, 0.0)});
        fills.push_back({"ones", std::vector<double>(n, 1.0)});
        fills.push_back({"threes", std::vector<double>(n, 3.0)});
        std::vector<double> stagger(n);
        for (int i = 0; i < n; ++i) stagger[i] = 0.5 * (i + 1);
        fills.push_back({"stagger", stagger});
        for (const auto& [name, L] : fills) {
            auto c = boundary_length_estimate(table, g, n, L);
            std::ostringstream d;
            d << "g=" << g << " n=" << n << " L=" << name;
            rows.push_back({"boundary_estimate", d.str(), c.lhs / c.rhs, c.holds});
        }
    }

    // Handle-trading ratios, reported against their own maximum.
    double max_ratio = 0;
    std::vector<Row> ratio_rows;
    for (const auto& [key, lv] : table.log_values) {
        (void)lv;
        const auto [g, n] = key;
        for (int i = 1; 2 * i <= n; ++i) {
            if (!table.has(g + i, n - 2 * i)) continue;
            double ratio = volume_relation_check(table, g, n, i);
            std::ostringstream d;
            d << "g=" << g << " n=" << n << " i=" << i;
            ratio_rows.push_back({"handle_trade_ratio", d.str(), ratio, std::isfinite(ratio)});
            max_ratio = std::max(max_ratio, ratio);
        }
    }
    for (auto& r : ratio_rows) {
        r.ok = r.ok && r.value <= max_ratio * (1.0 + 1e-12);
        rows.push_back(r);
    }
    rows.push_back({"handle_trade_max", "sweep", max_ratio, std::isfinite(max_ratio)});

    auto [C, dev] = fit_universal_constant(table);
    rows.push_back({"factorial_fit_C", "top-half", C, std::isfinite(C) && C > 0});
    rows.push_back({"factorial_fit_dev", "top-half", dev, dev < 0.2});

    double lo = INFINITY, hi = -INFINITY;
    const int g_lo = std::max(2, (table.max_genus + 2) / 2);
    for (int g = g_lo; g <= table.max_genus; ++g) {
        if (!table.has(g, 0)) continue;
        double v = std::exp(mz_ratio_log(table, g));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    rows.push_back({"factorial_ratio_variation", "top-half", hi / lo - 1.0, hi / lo - 1.0 < 0.2});

    double D = fit_sum_volume_constant(table);
    rows.push_back({"product_sum_fit_D", "k<=3", D, std::isfinite(D) && D > 0});

    Sink sink(co.out);
    write_header(sink.out(), "wp-check",
                 {{"table", table_path},
                  {"convention", table.convention},
                  {"fitted_C", fmt(table.fitted_C)},
                  {"fitted_D", fmt(table.fitted_D)}});
    sink.out() << "check,detail,value,status\n";
    bool all_ok = true;
    std::string witness;
    for (const auto& r : rows) {
        sink.out() << r.check << ',' << r.detail << ',' << fmt(r.value) << ','
                   << (r.ok ? "ok" : "FAIL") << "\n";
        if (!r.ok && all_ok) {
            all_ok = false;
            witness = r.check + " " + r.detail + " value=" + fmt(r.value);
        }
    }
    if (!all_ok) throw CertificateError("volume inequality check failed", witness);
    return 0;
}

int run_multicurve_prob(const CommonOpts& co, const std::string& table_path, double c,
                        double b, double slack, double kappa, double delta_univ,
                        const std::string& g_grid) {
    auto table = load_volume_table(table_path);
    fit_universal_constant(table);
    const double D = fit_sum_volume_constant(table);
    const bool fitted = delta_univ <= 0;
    const double delta = fitted ? fit_delta(table, b, c, slack, kappa) : delta_univ;

    std::vector<int> gs;
    if (g_grid.empty()) {
        for (int g = 2; g <= table.max_genus; ++g)
            if (table.has(g, 0)) gs.push_back(g);
    } else {
        for (double v : parse_grid(g_grid)) gs.push_back((int)v);
    }

    Sink sink(co.out);
    write_header(sink.out(), "multicurve-prob",
                 {{"table", table_path},
                  {"c", fmt(c)},
                  {"b", fmt(b)},
                  {"slack", fmt(slack)},
                  {"kappa", fmt(kappa)},
                  {"delta_univ", fmt(delta)},
                  {"delta_fitted", fitted ? "yes" : "no"},
                  {"D", fmt(D)}});
    sink.out() << "g,explicit_log,envelope_log,final_probability\n";
    std::string witness;
    for (int g : gs) {
        auto params = ProbabilityParams::make(g, b, c, slack, kappa);
        params.delta_univ = delta;
        params.D = D;
        auto bound = expected_multicurve_bound(params, table);
        const double prob = final_probability_bound(params);
        sink.out() << g << ',' << fmt(bound.explicit_log) << ',' << fmt(bound.envelope_log)
                   << ',' << fmt(prob) << "\n";
        if (!bound.empty && bound.explicit_log > bound.envelope_log && witness.empty())
            witness = "g=" + std::to_string(g) + " explicit_log=" + fmt(bound.explicit_log) +
                      " envelope_log=" + fmt(bound.envelope_log);
    }
    if (!witness.empty())
        throw CertificateError("explicit multicurve sum exceeded its envelope", witness);
    return 0;
}

int run_lp_bound(const CommonOpts& co, const std::string& regime, double p, double lambda,
                 double beta, double epsilon, double R, double C, double delta,
                 double bl_sup, double bl_tail, double g, double b, double c, double alpha,
                 double delta_univ, const std::string& csv_path) {
    auto params = EigenvalueParams::from_lambda(lambda, beta, epsilon);
    BoundReport rep;
    double probability = -1;
    if (g > 1) {
        auto rs = random_surface_report(g, b, c, params, p, alpha, delta, delta_univ);
        rep = rs.report;
        probability = rs.probability;
    } else if (regime == "tempered") {
        OperatorBoundInputs in{C, R, R / 8.0, p, delta, bl_sup, bl_tail};
        rep = tempered_bound(in, params, p);
    } else {
        OperatorBoundInputs in{C, R, R / 8.0, p, delta, bl_sup, bl_tail};
        rep = untempered_bound(in, params, p, delta);
    }
    if (rep.regime != regime)
        throw ConfigError("requested regime '" + regime + "' but the eigenvalue is " +
                          rep.regime);

    Sink sink(co.out);
    auto& os = sink.out();
    os << "# " << kArtifactVersion << "\n";
    os << "regime           " << rep.regime << (rep.degenerate ? " (degenerate)" : "") << "\n";
    os << "p                " << fmt(rep.p) << "\n";
    os << "lambda           " << fmt(rep.lambda.lambda) << "\n";
    os << "beta             " << fmt(rep.lambda.beta) << "\n";
    os << "epsilon          " << fmt(rep.lambda.epsilon) << "\n";
    os << "R                " << fmt(rep.inputs.R) << "\n";
    os << "C_of_X           " << fmt(rep.inputs.C_of_X) << "\n";
    os << "factors:\n";
    for (const auto& f : rep.factors) {
        os << "  " << f.name;
        for (size_t i = f.name.size(); i < 22; ++i) os << ' ';
        os << fmt(f.value) << "  # " << f.note << "\n";
    }
    os << "bound_value      " << fmt(rep.bound_value) << "\n";
    os << "factor_product   " << fmt(rep.product()) << "\n";
    if (probability >= 0) os << "probability      " << fmt(probability) << "\n";

    if (!csv_path.empty()) {
        Sink csv(csv_path);
        write_header(csv.out(), "lp-bound",
                     {{"regime", rep.regime},
                      {"p", fmt(rep.p)},
                      {"lambda", fmt(rep.lambda.lambda)},
                      {"bound_value", fmt(rep.bound_value)}});
        csv.out() << "name,value,note\n";
        for (const auto& f : rep.factors)
            csv.out() << f.name << ',' << fmt(f.value) << ',' << f.note << "\n";
    }
    return 0;
}

} // namespace

int run_cli(std::vector<std::string> args) {
    CLI::App app{"hyperbolic-surface spectral bound toolkit"};
    app.set_version_flag("--version", std::string(kArtifactVersion));
    app.set_config("--config", "", "flat key=value config file (subcommand.flag=value)");
    app.allow_config_extras(false);
    app.require_subcommand(0, 1);

    CommonOpts co;
    app.add_option("--out", co.out, "output path, - for stdout")->capture_default_str();
    app.add_option("--workers", co.workers, "worker threads, 0 = auto")->capture_default_str();
    app.add_option("--seed", co.seed, "seed for randomized sampling")->capture_default_str();
    app.fallthrough();

    int rc = 0;

    // lattice-ball
    auto lb = std::make_shared<std::tuple<std::string, double, std::vector<double>,
                                          std::vector<double>, long long>>();
    {
        auto* sub = app.add_subcommand("lattice-ball",
                                       "enumerate group elements moving w within r of z");
        sub->configurable();
        std::get<1>(*lb) = 3.0;
        std::get<4>(*lb) = 10'000'000;
        sub->add_option("--surface", std::get<0>(*lb), "surface spec file")->required();
        sub->add_option("--r", std::get<1>(*lb), "ball radius")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        sub->add_option("--z", std::get<2>(*lb), "center point x y")->expected(2);
        sub->add_option("--w", std::get<3>(*lb), "orbit point x y")->expected(2);
        sub->add_option("--budget", std::get<4>(*lb), "enumeration budget")
            ->capture_default_str();
        sub->callback([&, lb] {
            rc = run_lattice_ball(co, std::get<0>(*lb), std::get<1>(*lb), std::get<2>(*lb),
                                  std::get<3>(*lb), std::get<4>(*lb));
        });
    }

    // loop-census
    auto lc = std::make_shared<std::tuple<std::string, double, std::vector<double>>>();
    {
        auto* sub = app.add_subcommand("loop-census",
                                       "primitive geodesic loops through a point");
        sub->configurable();
        std::get<1>(*lc) = 3.1;
        sub->add_option("--surface", std::get<0>(*lc), "surface spec file")->required();
        sub->add_option("--length", std::get<1>(*lc), "length cap")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        sub->add_option("--z", std::get<2>(*lc), "point x y")->expected(2);
        sub->callback([&, lc] {
            rc = run_loop_census(co, std::get<0>(*lc), std::get<1>(*lc), std::get<2>(*lc));
        });
    }

    // certify-growth
    auto cg = std::make_shared<std::tuple<std::string, double, std::string, int>>();
    {
        auto* sub = app.add_subcommand("certify-growth",
                                       "fit and certify the orbit growth condition");
        sub->configurable();
        std::get<1>(*cg) = 4.0;
        std::get<2>(*cg) = "0.1,0.25,0.5";
        std::get<3>(*cg) = 2;
        sub->add_option("--surface", std::get<0>(*cg), "surface spec file")->required();
        sub->add_option("--radius", std::get<1>(*cg), "certification radius R")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--deltas", std::get<2>(*cg), "comma list of decay rates")
            ->capture_default_str();
        sub->add_option("--samples", std::get<3>(*cg), "extra random point pairs")
            ->check(CLI::NonNegativeNumber)
            ->capture_default_str();
        sub->callback([&, cg] {
            rc = run_certify_growth(co, std::get<0>(*cg), std::get<1>(*cg), std::get<2>(*cg),
                                    std::get<3>(*cg));
        });
    }

    // selberg
    auto se = std::make_shared<std::tuple<double, std::string, std::string, std::string>>();
    {
        auto* sub = app.add_subcommand("selberg", "sample the transform pair on a grid");
        sub->configurable();
        *se = {2.0, "bl", "roundtrip", "0:10:0.5"};
        sub->add_option("--t", std::get<0>(*se), "family parameter")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--kernel", std::get<1>(*se), "kernel family: bl or ball")
            ->check(CLI::IsMember({"bl", "ball"}))
            ->capture_default_str();
        sub->add_option("--mode", std::get<2>(*se), "inverse, roundtrip, or forward")
            ->check(CLI::IsMember({"inverse", "roundtrip", "forward"}))
            ->capture_default_str();
        sub->add_option("--grid", std::get<3>(*se), "sample grid lo:hi:step")
            ->capture_default_str();
        sub->callback([&, se] {
            rc = run_selberg(co, std::get<0>(*se), std::get<1>(*se), std::get<2>(*se),
                             std::get<3>(*se));
        });
    }

    // kernel-check
    auto kc = std::make_shared<std::tuple<std::string, std::string>>();
    {
        auto* sub = app.add_subcommand("kernel-check",
                                       "decay ratios and linearisation residuals");
        sub->configurable();
        *kc = {"1:8:1", "ratios"};
        sub->add_option("--t-grid", std::get<0>(*kc), "t grid lo:hi:step")
            ->capture_default_str();
        sub->add_option("--mode", std::get<1>(*kc), "ratios or linearisation")
            ->check(CLI::IsMember({"ratios", "linearisation"}))
            ->capture_default_str();
        sub->callback([&, kc] { rc = run_kernel_check(co, std::get<0>(*kc), std::get<1>(*kc)); });
    }

    // wp-check
    auto wp = std::make_shared<std::string>();
    {
        auto* sub = app.add_subcommand("wp-check", "volume-table inequality sweep");
        sub->configurable();
        sub->add_option("--table", *wp, "volume table CSV")->required();
        sub->callback([&, wp] { rc = run_wp_check(co, *wp); });
    }

    // multicurve-prob
    auto mc = std::make_shared<
        std::tuple<std::string, double, double, double, double, double, std::string>>();
    {
        auto* sub = app.add_subcommand("multicurve-prob",
                                       "expected-count and probability bounds over a genus grid");
        sub->configurable();
        *mc = {"", 0.01, 0.005, 0.0, 16.0, 0.0, ""};
        sub->add_option("--table", std::get<0>(*mc), "volume table CSV")->required();
        sub->add_option("--c", std::get<1>(*mc), "length coefficient")->capture_default_str();
        sub->add_option("--b", std::get<2>(*mc), "injectivity-radius exponent")
            ->capture_default_str();
        sub->add_option("--slack", std::get<3>(*mc), "d = 2b + slack")->capture_default_str();
        sub->add_option("--kappa", std::get<4>(*mc), "component-cap constant")
            ->capture_default_str();
        sub->add_option("--delta-univ", std::get<5>(*mc), "envelope exponent, 0 = fit")
            ->capture_default_str();
        sub->add_option("--g-grid", std::get<6>(*mc), "genus grid lo:hi:step, empty = table")
            ->capture_default_str();
        sub->callback([&, mc] {
            rc = run_multicurve_prob(co, std::get<0>(*mc), std::get<1>(*mc), std::get<2>(*mc),
                                     std::get<3>(*mc), std::get<4>(*mc), std::get<5>(*mc),
                                     std::get<6>(*mc));
        });
    }

    // lp-bound
    struct LpOpts {
        std::string regime = "tempered";
        double p = 6, lambda = 0.3, beta = 0, epsilon = 0, R = 8, C = 1, delta = 0.05;
        double bl_sup = 1, bl_tail = 1, g = 0, b = 0.1, c = 0.1, alpha = 0, delta_univ = 1;
        std::string csv;
    };
    auto lp = std::make_shared<LpOpts>();
    {
        auto* sub = app.add_subcommand("lp-bound", "assembled norm-bound report");
        sub->configurable();
        sub->add_option("--regime", lp->regime, "tempered or untempered")
            ->check(CLI::IsMember({"tempered", "untempered"}))
            ->capture_default_str();
        sub->add_option("--p", lp->p, "target exponent (inf allowed)")->capture_default_str();
        sub->add_option("--lambda", lp->lambda, "eigenvalue")->capture_default_str();
        sub->add_option("--beta", lp->beta, "ambient untempered exponent")
            ->capture_default_str();
        sub->add_option("--epsilon", lp->epsilon, "spectral gap for untempered")
            ->capture_default_str();
        sub->add_option("--R", lp->R, "injectivity scale")->capture_default_str();
        sub->add_option("--C", lp->C, "counting constant C(X)")->capture_default_str();
        sub->add_option("--delta", lp->delta, "decay slack")->capture_default_str();
        sub->add_option("--bl-sup", lp->bl_sup, "sup-norm constant")->capture_default_str();
        sub->add_option("--bl-tail", lp->bl_tail, "tail constant")->capture_default_str();
        sub->add_option("--g", lp->g, "genus for random-surface mode, 0 = direct")
            ->capture_default_str();
        sub->add_option("--b", lp->b, "injectivity-radius exponent")->capture_default_str();
        sub->add_option("--c", lp->c, "length coefficient")->capture_default_str();
        sub->add_option("--alpha", lp->alpha, "log-power injectivity mode")
            ->capture_default_str();
        sub->add_option("--delta-univ", lp->delta_univ, "probability envelope exponent")
            ->capture_default_str();
        sub->add_option("--csv", lp->csv, "also write the factor table CSV here");
        sub->callback([&, lp] {
            rc = run_lp_bound(co, lp->regime, lp->p, lp->lambda, lp->beta, lp->epsilon, lp->R,
                              lp->C, lp->delta, lp->bl_sup, lp->bl_tail, lp->g, lp->b, lp->c,
                              lp->alpha, lp->delta_univ, lp->csv);
        });
    }

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
        if (app.get_subcommands().empty()) {
            std::cout << app.help();
            return 0;
        }
        return rc;
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        std::cout << kArtifactVersion << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const CertificateError& e) {
        std::cerr << "certificate violation: " << e.what() << "\n";
        std::cerr << "witness: " << e.witness << "\n";
        return 4;
    } catch (const BudgetError& e) {
        std::cerr << "numeric failure: " << e.what() << " (visited " << e.visited
                  << ", retained " << e.retained << ")\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace hsurf
