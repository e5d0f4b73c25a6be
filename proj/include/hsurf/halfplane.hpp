#pragma once

#include <cmath>
#include <string>

#include "hsurf/errors.hpp"

namespace hsurf {

// z = x + iy in the upper half-plane, y > 0.
struct Point {
    double x = 0;
    double y = 1;
};

// Real 2x2 matrix of determinant 1 modulo sign.  Kept in a canonical-sign
// representative (first entry exceeding 1e-9 in magnitude is positive) so
// that equality mod +-I is plain entrywise comparison.
struct Moebius {
    double a = 1, b = 0, c = 0, d = 1;
};

inline constexpr double kDetTol = 1e-12;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kSignTol = 1e-9;

// arccosh(1+u) for u >= 0, stable near u = 0.
inline double acosh1p(double u) {
    if (u < 0) u = 0;
    return std::log1p(u + std::sqrt(u * (u + 2.0)));
}

// Flip to the canonical sign representative (in place convention: returns m).
Moebius canonical_sign(Moebius m);

// Rescale to determinant 1 and canonical sign; rejects det <= 0 or a
// normalized determinant farther than tol_det from 1.
Moebius normalize(Moebius m, double tol_det = kDetTol);

Point apply(const Moebius& m, Point z);
double distance(Point z, Point w);
Moebius compose(const Moebius& m1, const Moebius& m2);
Moebius inverse(const Moebius& m);

enum class MoebiusClass { identity, elliptic, parabolic, hyperbolic };

struct Classification {
    MoebiusClass type;
    double translation_length = 0;  // > 0 only for hyperbolic
};

Classification classify(const Moebius& m, double tol_trace = kTraceTol);

inline bool same_element(const Moebius& p, const Moebius& q, double tol = 1e-8) {
    return std::abs(p.a - q.a) <= tol && std::abs(p.b - q.b) <= tol &&
           std::abs(p.c - q.c) <= tol && std::abs(p.d - q.d) <= tol;
}

std::string to_string(const Moebius& m);

} // namespace hsurf
