#include "hsurf/halfplane.hpp"

#include <cstdio>

namespace hsurf {

Moebius canonical_sign(Moebius m) {
    double lead = 0;
    for (double v : {m.a, m.b, m.c, m.d}) {
        if (std::abs(v) > kSignTol) {
            lead = v;
            break;
        }
    }
    if (lead < 0) return {-m.a, -m.b, -m.c, -m.d};
    return m;
}

Moebius normalize(Moebius m, double tol_det) {
    double det = m.a * m.d - m.b * m.c;
    if (!(det > 0) || !std::isfinite(det))
        throw NumericError("degenerate transform: determinant " + std::to_string(det));
    double s = 1.0 / std::sqrt(det);
    m = {m.a * s, m.b * s, m.c * s, m.d * s};
    double det1 = m.a * m.d - m.b * m.c;
    if (std::abs(det1 - 1.0) > tol_det)
        throw NumericError("transform failed to normalize: |det-1| = " +
                           std::to_string(std::abs(det1 - 1.0)));
    return canonical_sign(m);
}

Point apply(const Moebius& m, Point z) {
    double den_re = m.c * z.x + m.d, den_im = m.c * z.y;
    double den2 = den_re * den_re + den_im * den_im;
    double num_re = m.a * z.x + m.b;
    double det = m.a * m.d - m.b * m.c;
    Point w;
    w.x = (num_re * den_re + m.a * z.y * den_im) / den2;
    w.y = z.y * det / den2;
    if (!std::isfinite(w.x) || !std::isfinite(w.y) || !(w.y > 0))
        throw NumericError("degenerate transform: image left the half-plane");
    return w;
}

double distance(Point z, Point w) {
    double dx = z.x - w.x, dy = z.y - w.y;
    double u = (dx * dx + dy * dy) / (2.0 * z.y * w.y);
    return acosh1p(u);
}

Moebius compose(const Moebius& m, const Moebius& n) {
    Moebius r{m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
              m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    return canonical_sign(r);
}

Moebius inverse(const Moebius& m) {
    return canonical_sign({m.d, -m.b, -m.c, m.a});
}

Classification classify(const Moebius& m, double tol_trace) {
    double tr = std::abs(m.a + m.d);
    if (tr > 2.0 + tol_trace) {
        double l = 2.0 * acosh1p(0.5 * tr - 1.0);
        return {MoebiusClass::hyperbolic, l};
    }
    if (tr >= 2.0 - tol_trace) {
        // identity iff off-diagonal vanishes and diagonal entries agree
        if (std::abs(m.b) <= tol_trace && std::abs(m.c) <= tol_trace &&
            std::abs(m.a - m.d) <= tol_trace)
            return {MoebiusClass::identity, 0};
        return {MoebiusClass::parabolic, 0};
    }
    return {MoebiusClass::elliptic, 0};
}

std::string to_string(const Moebius& m) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "[%.12g %.12g; %.12g %.12g]", m.a, m.b, m.c, m.d);
    return buf;
}

} // namespace hsurf
