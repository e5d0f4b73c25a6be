#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hsurf/halfplane.hpp"

namespace hsurf {

// Cocompact Fuchsian group given by explicit generators (closed under the
// listed inverses) plus fundamental-domain metadata at base_point.
struct SurfaceGroup {
    std::vector<Moebius> generators;
    int genus = 0;
    Point base_point{0, 1};
    double domain_diameter = 0;
    std::string label;
    std::vector<std::vector<int>> relations;  // generator-index words

    double min_translation_length() const;
};

// Structured-text loader: header lines `genus`, `domain_diameter`,
// `base_point x y`; `generator a b c d` per generator; optional `relation`
// index words.  domain_diameter is computed by a Dirichlet-domain vertex
// scan when the file omits it.
SurfaceGroup load_surface_spec(const std::string& path);

// Verifies every stated relation multiplies to +-I; returns max residual.
double relation_residual(const SurfaceGroup& g);

// Hash set of canonical-sign matrices, bucketed on a coarse grid so that
// lookups only probe the corner-adjacent buckets; membership means entrywise
// agreement within tol.
class MatrixSet {
  public:
    explicit MatrixSet(double tol = 1e-8) : tol_(tol) {}
    // Inserts unless an element within tol already exists; returns the index
    // of the stored representative and whether insertion happened.
    std::pair<std::uint32_t, bool> insert(const Moebius& m);
    // Index of a stored element within tol of m, or npos.
    std::uint32_t find(const Moebius& m, double tol) const;
    std::size_t size() const { return elems_.size(); }
    const Moebius& operator[](std::uint32_t i) const { return elems_[i]; }
    static constexpr std::uint32_t npos = ~0u;

  private:
    using Key = std::array<std::int64_t, 4>;
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::size_t h = 1469598103934665603ull;
            for (auto v : k) {
                h ^= (std::size_t)v;
                h *= 1099511628211ull;
            }
            return h;
        }
    };
    static constexpr double grid_ = 1e-6;
    double tol_;
    std::vector<Moebius> elems_;
    std::unordered_map<Key, std::vector<std::uint32_t>, KeyHash> buckets_;
};

struct BallElement {
    std::vector<int> word;  // generator indices, identity = empty
    Moebius m;
    double dist;
};

struct LatticeBallResult {
    std::vector<BallElement> elements;  // sorted by (dist, entries)
    Point center_z, center_w;
    double radius = 0;
    long long visited = 0;  // elements explored inside the frontier cutoff
};

struct EnumOptions {
    long long budget = 10'000'000;
    int workers = 0;  // 0 = default_workers()
};

// All gamma with d(z, gamma w) <= r, by breadth-first search over the tiling
// adjacency with frontier cutoff r + 2 * domain_diameter.
LatticeBallResult enumerate_ball(const SurfaceGroup& g, Point z, Point w, double r,
                                 const EnumOptions& opt = {});

// Half the minimal displacement d(z, gamma z) over non-identity gamma,
// found with an adaptively doubled enumeration radius.
double injectivity_radius_at(const SurfaceGroup& g, Point z, const EnumOptions& opt = {});

// Minimum of the pointwise value over the sample: a certified upper bound
// for the surface-wide injectivity radius.
double injectivity_radius(const SurfaceGroup& g, const std::vector<Point>& sample,
                          const EnumOptions& opt = {});

struct Loop {
    Moebius element;  // one of the pair {gamma, gamma^-1}
    double length;
    std::vector<int> word;
};

struct LoopCensus {
    Point point;
    double length_cap = 0;
    std::vector<Loop> primitive_loops;
    int count() const { return (int)primitive_loops.size(); }
};

// Primitive geodesic loops through z of length <= L; gamma and gamma^-1
// count as one loop.  Primitivity is decided by the m-th-root membership
// test over the enumerated ball.
LoopCensus loop_census(const SurfaceGroup& g, Point z, double L, const EnumOptions& opt = {});

struct GrowthCertificate {
    double R = 0;
    std::vector<double> delta_grid;
    double C_of_X = 0;
    std::map<double, double> C0_of_delta;  // smallest valid constant per delta
    std::vector<std::pair<Point, Point>> witness_points;
    double injrad_estimate = 0;
    int loop_count_cap = 0;  // sup over sampled points of the census count at R
    // per (pair, r): counts at radius r and r/2
    struct Row {
        int pair_index;
        double r;
        long long count;
        long long count_half;
        double lemma_rhs;
    };
    std::vector<Row> rows;
};

// Records ball counts on an r-grid for each sampled (z, w), fits the
// smallest C0(delta) making count <= C_of_X * C0 * e^{delta r}, and checks
// the loop-count inequality count(r/2) <= 2 n r / injrad + 2.  Throws
// CertificateError with a witness if the inequality fails.
GrowthCertificate certify_growth(const SurfaceGroup& g, double R,
                                 const std::vector<double>& delta_grid,
                                 const std::vector<std::pair<Point, Point>>& sample,
                                 const EnumOptions& opt = {});

} // namespace hsurf
