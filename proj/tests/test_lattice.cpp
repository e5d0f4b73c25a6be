#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "hsurf/lattice.hpp"

using namespace hsurf;

namespace {

const char* kSurfacePath = HSURF_DATA_DIR "/bolza.surface";

// Independent oracle: all group elements reachable by words of length <=
// max_len, deduplicated mod +-I, filtered to d(z, gamma w) <= r.  Complete
// for r <= 4 because any ball element has a word no longer than
// ceil((r + 2 diam)/systole) + 1 = 6.
std::vector<Moebius> word_ball_oracle(const SurfaceGroup& g, Point z, Point w, double r,
                                      int max_len) {
    MatrixSet seen(1e-8);
    std::vector<Moebius> frontier{Moebius{}};
    seen.insert(Moebius{});
    std::vector<Moebius> all{Moebius{}};
    for (int len = 0; len < max_len; ++len) {
        std::vector<Moebius> next;
        for (const Moebius& m : frontier)
            for (const Moebius& gen : g.generators) {
                Moebius p = normalize(compose(gen, m), 1e-6);
                if (seen.insert(p).second) {
                    next.push_back(p);
                    all.push_back(p);
                }
            }
        frontier = std::move(next);
    }
    std::vector<Moebius> kept;
    for (const Moebius& m : all)
        if (distance(z, apply(m, w)) <= r) kept.push_back(m);
    return kept;
}

} // namespace

TEST_CASE("bolza surface spec loads with the advertised geometry") {
    SurfaceGroup g = load_surface_spec(kSurfacePath);
    CHECK(g.genus == 2);
    CHECK(g.generators.size() == 8);
    CHECK(relation_residual(g) < 1e-10);
    // systole 2 arccosh(1 + sqrt 2)
    CHECK(std::abs(g.min_translation_length() - 3.0571418389619963) < 1e-10);
    CHECK(std::abs(g.domain_diameter - 4.896904895356152) < 1e-9);
    CHECK(g.base_point.y > 0);
    CHECK_THROWS_AS(load_surface_spec("/nonexistent/file.surface"), ConfigError);
}

TEST_CASE("matrix set deduplicates mod sign and tolerance") {
    MatrixSet s(1e-8);
    Moebius m{2.0, 0.5, 0.5, 0.625};  // det = 1
    auto [i0, fresh0] = s.insert(canonical_sign(m));
    CHECK(fresh0);
    auto [i1, fresh1] = s.insert(canonical_sign(m));
    CHECK_FALSE(fresh1);
    CHECK(i0 == i1);
    CHECK(s.size() == 1);
    CHECK(s.find(canonical_sign(m), 1e-8) == i0);
    Moebius far{2.0, 0.5, 0.5, 0.7};
    CHECK(s.find(canonical_sign(far), 1e-8) == MatrixSet::npos);
}

TEST_CASE("lattice ball matches the frozen shell structure at the center") {
    SurfaceGroup g = load_surface_spec(kSurfacePath);
    Point z = g.base_point;
    long long counts[5];
    int i = 0;
    for (double r : {1.0, 2.0, 3.0, 4.0, 4.5}) {
        auto res = enumerate_ball(g, z, z, r);
        counts[i++] = (long long)res.elements.size();
        CHECK(res.visited >= (long long)res.elements.size());
        CHECK(std::is_sorted(res.elements.begin(), res.elements.end(),
                             [](const BallElement& a, const BallElement& b) {
                                 return a.dist < b.dist;
                             }));
    }
    CHECK(counts[0] == 1);
    CHECK(counts[1] == 1);
    CHECK(counts[2] == 1);
    CHECK(counts[3] == 9);
    CHECK(counts[4] == 25);
    auto res = enumerate_ball(g, z, z, 4.5);
    CHECK(res.elements[0].dist == 0.0);
    CHECK(res.elements[0].word.empty());
    for (int j = 1; j <= 8; ++j)
        CHECK(std::abs(res.elements[j].dist - 3.0571418389619963) < 1e-9);
    for (int j = 9; j < 25; ++j)
        CHECK(std::abs(res.elements[j].dist - 4.2184248202619030) < 1e-8);
}

TEST_CASE("lattice ball equals the word-enumeration oracle") {
    SurfaceGroup g = load_surface_spec(kSurfacePath);
    struct Case {
        Point z, w;
        double r;
    };
    const std::vector<Case> cases{
        {{0, 1}, {0, 1}, 3.5}, {{0.1, 0.9}, {0, 1}, 3.0}, {{0.3, 1.2}, {-0.2, 0.8}, 2.5}};
    for (const Case& cs : cases) {
        auto res = enumerate_ball(g, cs.z, cs.w, cs.r);
        auto oracle = word_ball_oracle(g, cs.z, cs.w, cs.r, 6);
        REQUIRE(res.elements.size() == oracle.size());
        MatrixSet oset(1e-8);
        for (const Moebius& m : oracle) oset.insert(m);
        for (const BallElement& e : res.elements)
            CHECK(oset.find(canonical_sign(e.m), 1e-6) != MatrixSet::npos);
    }
}

TEST_CASE("lattice ball is deterministic across runs and worker counts") {
    SurfaceGroup g = load_surface_spec(kSurfacePath);
    EnumOptions serial;
    serial.workers = 1;
    EnumOptions parallel;
    parallel.workers = 4;
    auto a = enumerate_ball(g, g.base_point, g.base_point, 4.0, serial);
    auto b = enumerate_ball(g, g.base_point, g.base_point, 4.0, parallel);
    REQUIRE(a.elements.size() == b.elements.size());
    for (size_t i = 0; i < a.elements.size(); ++i) {
        CHECK(a.elements[i].dist == b.elements[i].dist);
        CHECK(a.elements[i].word == b.elements[i].word);
    }
}

TEST_CASE("lattice ball rejects bad inputs and tight budgets") {
    SurfaceGroup g = load_surface_spec(kSurfacePath);
    CHECK_THROWS_AS(enumerate_ball(g, g.base_point, g.base_point, -1.0), PreconditionError);
    EnumOptions tiny;
    tiny.budget = 10;
    CHECK_THROWS_AS(enumerate_ball(g, g.base_point, g.base_point, 4.0, tiny), BudgetError);
}

TEST_CASE("injectivity radius at the octagon center is half the systole") {
    SurfaceGroup g = load_surface_spec(kSurfacePath);
    double r = injectivity_radius_at(g, g.base_point);
    CHECK(std::abs(r - 1.5285709194809982) < 1e-6);
    // the center sits on every systole axis, so it is a local minimum of the
    // displacement function: nearby points can only do better or equal
    double off = injectivity_radius_at(g, {0.25, 1.1});
    CHECK(off >= r - 1e-9);
    CHECK(off < r + 0.5);
    double surf = injectivity_radius(g, {{0, 1}, {0.25, 1.1}});
    CHECK(surf == doctest::Approx(std::min(r, off)));
    CHECK_THROWS_AS(injectivity_radius(g, {}), PreconditionError);
}

TEST_CASE("loop census counts primitive loops through the center") {
    SurfaceGroup g = load_surface_spec(kSurfacePath);
    LoopCensus c = loop_census(g, g.base_point, 3.1);
    CHECK(c.count() == 4);
    for (const Loop& l : c.primitive_loops) {
        CHECK(std::abs(l.length - 3.0571418389619963) < 1e-9);
        CHECK_FALSE(l.word.empty());
    }
    CHECK(loop_census(g, g.base_point, 2.9).count() == 0);
    // next shell (16 elements): 8 + 16 displacements, 12 inverse pairs
    CHECK(loop_census(g, g.base_point, 4.3).count() == 12);
    CHECK_THROWS_AS(loop_census(g, g.base_point, -0.5), PreconditionError);
}

TEST_CASE("growth certificate fits constants and verifies the loop count cap") {
    SurfaceGroup g = load_surface_spec(kSurfacePath);
    std::vector<std::pair<Point, Point>> sample{{{0, 1}, {0, 1}}, {{0.3, 0.8}, {0.3, 0.8}}};
    GrowthCertificate cert = certify_growth(g, 3.5, {0.5, 1.0}, sample);
    CHECK(cert.R == 3.5);
    CHECK(cert.C_of_X > 0);
    CHECK(cert.injrad_estimate > 0);
    REQUIRE(cert.C0_of_delta.size() == 2);
    for (auto& [delta, c0] : cert.C0_of_delta) CHECK(c0 > 0);
    CHECK_FALSE(cert.rows.empty());
    for (const auto& row : cert.rows) {
        CHECK(row.count >= 1);  // identity always inside
        CHECK(double(row.count_half) <= row.lemma_rhs + 1e-9);
    }
    // fitted constants actually dominate the recorded counts
    for (const auto& row : cert.rows)
        for (auto& [delta, c0] : cert.C0_of_delta)
            CHECK(double(row.count) <= cert.C_of_X * c0 * std::exp(delta * row.r) * (1 + 1e-9));
    CHECK_THROWS_AS(certify_growth(g, -1.0, {0.5}, sample), PreconditionError);
    CHECK_THROWS_AS(certify_growth(g, 3.0, {0.5}, {}), PreconditionError);
}
