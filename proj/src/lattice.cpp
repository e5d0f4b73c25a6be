#include "hsurf/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "hsurf/parallel.hpp"

namespace hsurf {

double SurfaceGroup::min_translation_length() const {
    double best = 0;
    bool first = true;
    for (const Moebius& m : generators) {
        Classification c = classify(m);
        if (c.type != MoebiusClass::hyperbolic) continue;
        if (first || c.translation_length < best) best = c.translation_length;
        first = false;
    }
    return best;
}

double relation_residual(const SurfaceGroup& g) {
    double worst = 0;
    for (const auto& word : g.relations) {
        Moebius prod;  // identity
        for (int idx : word) {
            if (idx < 0 || idx >= (int)g.generators.size())
                throw ConfigError("relation references generator " + std::to_string(idx));
            prod = compose(prod, g.generators[idx]);
        }
        double res = std::max({std::abs(prod.a - 1.0), std::abs(prod.b),
                               std::abs(prod.c), std::abs(prod.d - 1.0)});
        worst = std::max(worst, res);
    }
    return worst;
}

// --- MatrixSet -------------------------------------------------------------

std::pair<std::uint32_t, bool> MatrixSet::insert(const Moebius& m) {
    std::uint32_t hit = find(m, tol_);
    if (hit != npos) return {hit, false};
    Key k{(std::int64_t)std::floor(m.a / grid_), (std::int64_t)std::floor(m.b / grid_),
          (std::int64_t)std::floor(m.c / grid_), (std::int64_t)std::floor(m.d / grid_)};
    std::uint32_t idx = (std::uint32_t)elems_.size();
    elems_.push_back(m);
    buckets_[k].push_back(idx);
    return {idx, true};
}

std::uint32_t MatrixSet::find(const Moebius& m, double tol) const {
    const double x[4] = {m.a, m.b, m.c, m.d};
    std::int64_t lo[4], hi[4];
    for (int i = 0; i < 4; ++i) {
        lo[i] = (std::int64_t)std::floor((x[i] - tol) / grid_);
        hi[i] = (std::int64_t)std::floor((x[i] + tol) / grid_);
    }
    Key k;
    for (std::int64_t ka = lo[0]; ka <= hi[0]; ++ka)
        for (std::int64_t kb = lo[1]; kb <= hi[1]; ++kb)
            for (std::int64_t kc = lo[2]; kc <= hi[2]; ++kc)
                for (std::int64_t kd = lo[3]; kd <= hi[3]; ++kd) {
                    k = {ka, kb, kc, kd};
                    auto it = buckets_.find(k);
                    if (it == buckets_.end()) continue;
                    for (std::uint32_t idx : it->second)
                        if (same_element(elems_[idx], m, tol)) return idx;
                }
    return npos;
}

// --- ball enumeration ------------------------------------------------------

LatticeBallResult enumerate_ball(const SurfaceGroup& g, Point z, Point w, double r,
                                 const EnumOptions& opt) {
    if (r < 0) throw PreconditionError("enumerate_ball: negative radius");
    const double cutoff = r + 2.0 * g.domain_diameter;
    const int workers = opt.workers > 0 ? opt.workers : default_workers();

    LatticeBallResult out;
    out.center_z = z;
    out.center_w = w;
    out.radius = r;

    MatrixSet seen;
    std::vector<BallElement> all;  // aligned with seen's indices
    std::vector<std::uint32_t> frontier;

    Moebius id;
    seen.insert(id);
    all.push_back({{}, id, distance(z, apply(id, w))});
    out.visited = 1;
    frontier.push_back(0);

    struct Candidate {
        Moebius m;
        double dist;
        std::uint32_t parent;
        int gen;
    };

    while (!frontier.empty()) {
        const std::size_t nf = frontier.size();
        const std::size_t ng = g.generators.size();
        std::vector<Candidate> cand(nf * ng);
        parallel_chunks(nf, workers, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                const Moebius& parent = all[frontier[i]].m;
                for (std::size_t s = 0; s < ng; ++s) {
                    Candidate& c = cand[i * ng + s];
                    c.m = compose(parent, g.generators[s]);
                    c.dist = distance(z, apply(c.m, w));
                    c.parent = frontier[i];
                    c.gen = (int)s;
                }
            }
        });
        std::vector<std::uint32_t> next;
        for (const Candidate& c : cand) {
            if (c.dist > cutoff) continue;
            auto [idx, inserted] = seen.insert(c.m);
            if (!inserted) continue;
            if (++out.visited > opt.budget) {
                long long retained = 0;
                for (const BallElement& e : all)
                    if (e.dist <= r) ++retained;
                throw BudgetError("enumeration budget exceeded at radius " + std::to_string(r),
                                  out.visited, retained);
            }
            std::vector<int> word = all[c.parent].word;
            word.push_back(c.gen);
            all.push_back({std::move(word), c.m, c.dist});
            next.push_back(idx);
        }
        frontier = std::move(next);
    }

    for (BallElement& e : all)
        if (e.dist <= r) out.elements.push_back(std::move(e));
    std::sort(out.elements.begin(), out.elements.end(),
              [](const BallElement& p, const BallElement& q) {
                  if (p.dist != q.dist) return p.dist < q.dist;
                  if (p.m.a != q.m.a) return p.m.a < q.m.a;
                  if (p.m.b != q.m.b) return p.m.b < q.m.b;
                  if (p.m.c != q.m.c) return p.m.c < q.m.c;
                  return p.m.d < q.m.d;
              });
    return out;
}

static bool is_identity(const Moebius& m) {
    return same_element(m, Moebius{}, 1e-9);
}

double injectivity_radius_at(const SurfaceGroup& g, Point z, const EnumOptions& opt) {
    for (double r = 1.0; r <= 512.0; r *= 2.0) {
        LatticeBallResult res = enumerate_ball(g, z, z, r, opt);
        double best = -1;
        for (const BallElement& e : res.elements) {
            if (is_identity(e.m)) continue;
            if (best < 0 || e.dist < best) best = e.dist;
        }
        if (best > 0) return 0.5 * best;
    }
    throw NumericError("no non-identity element found within radius 512");
}

double injectivity_radius(const SurfaceGroup& g, const std::vector<Point>& sample,
                          const EnumOptions& opt) {
    if (sample.empty()) throw PreconditionError("injectivity_radius: empty sample");
    double best = -1;
    for (const Point& p : sample) {
        // duplicates cost time but cannot change the minimum
        double v = injectivity_radius_at(g, p, opt);
        if (best < 0 || v < best) best = v;
    }
    return best;
}

// --- loop census -----------------------------------------------------------

static Moebius mat_pow(Moebius m, int e) {
    Moebius acc;
    for (int i = 0; i < e; ++i) acc = compose(acc, m);
    return acc;
}

// Real m-th root of a hyperbolic element, through its eigenbasis.
static std::optional<Moebius> mth_root(Moebius m, int e) {
    if (m.a + m.d < 0) m = {-m.a, -m.b, -m.c, -m.d};
    double tr = m.a + m.d;
    double disc = tr * tr - 4.0;
    if (disc <= 0) return std::nullopt;
    double mu = 0.5 * (tr + std::sqrt(disc));
    double nu = 1.0 / mu;
    auto eigvec = [&](double lam, double& vx, double& vy) {
        // (A - lam I) v = 0; pick the better-conditioned row
        if (std::abs(m.b) + std::abs(lam - m.a) >= std::abs(lam - m.d) + std::abs(m.c)) {
            vx = m.b;
            vy = lam - m.a;
        } else {
            vx = lam - m.d;
            vy = m.c;
        }
        double n = std::hypot(vx, vy);
        if (n == 0) return false;
        vx /= n;
        vy /= n;
        return true;
    };
    double v1x, v1y, v2x, v2y;
    if (!eigvec(mu, v1x, v1y) || !eigvec(nu, v2x, v2y)) return std::nullopt;
    double det = v1x * v2y - v2x * v1y;
    if (std::abs(det) < 1e-12) return std::nullopt;
    double rm = std::pow(mu, 1.0 / e), ri = 1.0 / rm;
    Moebius root{(rm * v1x * v2y - ri * v2x * v1y) / det, v1x * v2x * (ri - rm) / det,
                 v1y * v2y * (rm - ri) / det, (ri * v1x * v2y - rm * v1y * v2x) / det};
    try {
        return normalize(root, 1e-9);
    } catch (const NumericError&) {
        return std::nullopt;
    }
}

LoopCensus loop_census(const SurfaceGroup& g, Point z, double L, const EnumOptions& opt) {
    if (L < 0) throw PreconditionError("loop_census: negative length cap");
    LoopCensus census;
    census.point = z;
    census.length_cap = L;
    LatticeBallResult ball = enumerate_ball(g, z, z, L, opt);

    std::vector<const BallElement*> loops;
    MatrixSet members(1e-8);
    double min_disp = -1;
    for (const BallElement& e : ball.elements) {
        if (is_identity(e.m)) continue;
        members.insert(e.m);
        loops.push_back(&e);
        if (min_disp < 0 || e.dist < min_disp) min_disp = e.dist;
    }
    if (loops.empty()) return census;

    double injrad = 0.5 * min_disp;  // the ball already witnesses the infimum at z
    int m_max = (int)std::floor(L / (2.0 * injrad));

    auto lex_less = [](const Moebius& p, const Moebius& q) {
        const double pp[4] = {p.a, p.b, p.c, p.d};
        const double qq[4] = {q.a, q.b, q.c, q.d};
        for (int i = 0; i < 4; ++i) {
            if (std::abs(pp[i] - qq[i]) > 1e-9) return pp[i] < qq[i];
        }
        return false;
    };

    for (const BallElement* e : loops) {
        Moebius inv = inverse(e->m);
        if (lex_less(inv, e->m)) continue;  // keep one representative per {gamma, gamma^-1}
        bool primitive = true;
        for (int m = 2; m <= m_max && primitive; ++m) {
            auto root = mth_root(e->m, m);
            if (!root) continue;
            std::uint32_t idx = members.find(*root, 1e-6);
            if (idx == MatrixSet::npos) continue;
            if (same_element(mat_pow(members[idx], m), canonical_sign(e->m), 1e-6))
                primitive = false;
        }
        if (primitive) census.primitive_loops.push_back({e->m, e->dist, e->word});
    }
    std::sort(census.primitive_loops.begin(), census.primitive_loops.end(),
              [](const Loop& p, const Loop& q) {
                  if (p.length != q.length) return p.length < q.length;
                  if (p.element.a != q.element.a) return p.element.a < q.element.a;
                  return p.element.b < q.element.b;
              });
    return census;
}

// --- growth certificate ----------------------------------------------------

GrowthCertificate certify_growth(const SurfaceGroup& g, double R,
                                 const std::vector<double>& delta_grid,
                                 const std::vector<std::pair<Point, Point>>& sample,
                                 const EnumOptions& opt) {
    if (R < 0) throw PreconditionError("certify_growth: negative R");
    GrowthCertificate cert;
    cert.R = R;
    cert.delta_grid = delta_grid;
    cert.witness_points = sample;

    // distinct sampled points (both slots), for the injectivity/census data
    std::vector<Point> pts;
    for (const auto& [z, w] : sample) {
        for (const Point& p : {z, w}) {
            bool dup = false;
            for (const Point& q : pts)
                if (std::abs(p.x - q.x) < 1e-12 && std::abs(p.y - q.y) < 1e-12) dup = true;
            if (!dup) pts.push_back(p);
        }
    }
    if (pts.empty()) throw PreconditionError("certify_growth: empty sample");

    cert.injrad_estimate = injectivity_radius(g, pts, opt);
    cert.C_of_X = 1.0 / cert.injrad_estimate;
    for (const Point& p : pts)
        cert.loop_count_cap = std::max(cert.loop_count_cap, loop_census(g, p, R, opt).count());

    const int grid_steps = 16;
    for (int pi = 0; pi < (int)sample.size(); ++pi) {
        if (R == 0) break;
        LatticeBallResult ball = enumerate_ball(g, sample[pi].first, sample[pi].second, R, opt);
        for (int j = 1; j <= grid_steps; ++j) {
            double r = R * j / grid_steps;
            long long count = 0, count_half = 0;
            for (const BallElement& e : ball.elements) {
                if (e.dist <= r) ++count;
                if (e.dist <= 0.5 * r) ++count_half;
            }
            double rhs = 2.0 * cert.loop_count_cap * r / cert.injrad_estimate + 2.0;
            cert.rows.push_back({pi, r, count, count_half, rhs});
            if ((double)count_half > rhs + 1e-9) {
                char buf[160];
                std::snprintf(buf, sizeof buf,
                              "z=(%.6g,%.6g) w=(%.6g,%.6g) r=%.6g count=%lld rhs=%.6g",
                              sample[pi].first.x, sample[pi].first.y, sample[pi].second.x,
                              sample[pi].second.y, r, count_half, rhs);
                throw CertificateError("loop-count inequality violated", buf);
            }
        }
    }
    for (double delta : delta_grid) {
        double c0 = 0;
        for (const auto& row : cert.rows)
            c0 = std::max(c0, (double)row.count / (cert.C_of_X * std::exp(delta * row.r)));
        cert.C0_of_delta[delta] = c0;
    }
    return cert;
}

// --- surface-spec loading --------------------------------------------------

// Dirichlet-domain vertex scan: march rays from the base point until they
// cross a bisector of some short group element; the diameter is twice the
// largest crossing distance.
static double dirichlet_diameter(const SurfaceGroup& g) {
    const Point z0 = g.base_point;
    // images of z0 under words of length <= 3
    MatrixSet seen;
    std::vector<Moebius> words{Moebius{}};
    seen.insert(Moebius{});
    std::size_t lo = 0;
    for (int len = 1; len <= 3; ++len) {
        std::size_t hi = words.size();
        for (std::size_t i = lo; i < hi; ++i)
            for (const Moebius& s : g.generators) {
                Moebius m = compose(words[i], s);
                if (seen.insert(m).second) words.push_back(m);
            }
        lo = hi;
    }
    std::vector<Point> images;
    for (std::size_t i = 1; i < words.size(); ++i) images.push_back(apply(words[i], z0));

    // isometry sending i to z0 (for launching unit-speed rays)
    double sq = std::sqrt(z0.y);
    Moebius to_base{sq, z0.x / sq, 0, 1.0 / sq};

    const int n_dirs = 720;
    const double s_max = 12.0;
    double radius = 0;
    for (int k = 0; k < n_dirs; ++k) {
        double phi = M_PI * k / n_dirs;  // rotation by phi covers tangents mod 2 phi
        double cs = std::cos(phi), sn = std::sin(phi);
        Moebius ray = compose(to_base, Moebius{cs, sn, -sn, cs});
        auto point_at = [&](double s) { return apply(ray, Point{0, std::exp(s)}); };
        auto inside = [&](double s) {
            Point p = point_at(s);
            for (const Point& q : images)
                if (distance(p, q) < s - 1e-12) return false;
            return true;
        };
        double a = 0, b = s_max;
        if (inside(b)) {
            radius = std::max(radius, b);
            continue;
        }
        for (int it = 0; it < 50; ++it) {
            double m = 0.5 * (a + b);
            (inside(m) ? a : b) = m;
        }
        radius = std::max(radius, b);
        // the mirrored direction, exp(-s) down the ray
        auto inside_neg = [&](double s) {
            Point p = apply(ray, Point{0, std::exp(-s)});
            for (const Point& q : images)
                if (distance(p, q) < s - 1e-12) return false;
            return true;
        };
        a = 0;
        b = s_max;
        if (inside_neg(b)) {
            radius = std::max(radius, b);
            continue;
        }
        for (int it = 0; it < 50; ++it) {
            double m = 0.5 * (a + b);
            (inside_neg(m) ? a : b) = m;
        }
        radius = std::max(radius, b);
    }
    return 2.0 * radius + 1e-6;
}

SurfaceGroup load_surface_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open surface spec: " + path);
    SurfaceGroup g;
    g.label = path;
    g.domain_diameter = -1;
    bool have_genus = false, have_base = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        std::string key;
        if (!(ss >> key) || key[0] == '#') continue;
        auto fail = [&](const std::string& msg) {
            throw ConfigError("parse error at " + path + ":" + std::to_string(lineno) + ": " + msg);
        };
        if (key == "genus") {
            if (!(ss >> g.genus)) fail("genus wants an integer");
            have_genus = true;
        } else if (key == "domain_diameter") {
            if (!(ss >> g.domain_diameter)) fail("domain_diameter wants a number");
        } else if (key == "base_point") {
            if (!(ss >> g.base_point.x >> g.base_point.y)) fail("base_point wants x y");
            have_base = true;
        } else if (key == "generator") {
            Moebius m;
            if (!(ss >> m.a >> m.b >> m.c >> m.d)) fail("generator wants 4 entries");
            g.generators.push_back(m);
        } else if (key == "relation") {
            std::vector<int> word;
            int idx;
            while (ss >> idx) word.push_back(idx);
            if (word.empty()) fail("empty relation");
            g.relations.push_back(std::move(word));
        } else {
            fail("unknown keyword '" + key + "'");
        }
    }
    if (g.generators.empty()) throw ConfigError("parse error: " + path + " lists no generators");
    if (!have_genus || g.genus < 2)
        throw ConfigError("parse error: " + path + " needs genus >= 2");
    if (have_base && !(g.base_point.y > 0))
        throw ConfigError("parse error: " + path + " base point must have y > 0");

    for (std::size_t i = 0; i < g.generators.size(); ++i) {
        try {
            g.generators[i] = normalize(g.generators[i]);
        } catch (const NumericError& e) {
            throw ConfigError("generator " + std::to_string(i) + " in " + path + ": " + e.what());
        }
        Classification c = classify(g.generators[i]);
        if (c.type != MoebiusClass::hyperbolic)
            throw ConfigError("non-hyperbolic generator " + std::to_string(i) + " in " + path);
    }
    double res = relation_residual(g);
    if (res > 1e-8)
        throw ConfigError("relation violated in " + path + ": max residual " +
                          std::to_string(res));
    if (g.domain_diameter < 0)
        g.domain_diameter = dirichlet_diameter(g);
    if (!(g.domain_diameter > 0))
        throw ConfigError("parse error: " + path + " needs domain_diameter > 0");
    return g;
}

} // namespace hsurf
