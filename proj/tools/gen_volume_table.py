#!/usr/bin/env python3
"""Generate data/volumes.csv: Weil-Petersson volumes V_{g,n} via Mirzakhani's
recursion, in exact rational arithmetic over powers of pi^2.

Convention: V_{1,1}(L) = (L^2 + 4 pi^2)/48, i.e. the moduli space M_{1,1} is
treated as the quotient by the elliptic involution.  With this normalisation
the recursion needs no special case at (1,1).

We only ever need restrictions V_{g,n}(x_1,...,x_k, 0,...,0) with k tracked
boundary lengths.  A restricted polynomial is stored as a map
    signature -> coefficient,
where the signature is the sorted tuple of the nonzero exponents of the
squared variables of one monomial, and the coefficient is the coefficient of
each individual monomial with that signature (the polynomials are symmetric).

Recursion (d/dx1)(x1 V_{g,n}) = A_con + A_dcon + B with kernel
H(x,y) = 1/(1+e^{(y+x)/2}) + 1/(1+e^{(y-x)/2}) and the classical moment
identities
    F_{2k+1}(t)   = int_0^oo x^{2k+1} H(x,t) dx
                  = (2k+1)! sum_{i=0}^{k+1} zeta(2i)(2^{2i+1}-4) t^{2k+2-2i}/(2k+2-2i)!
    int int x^{2a+1} y^{2b+1} H(x+y,t) dx dy
                  = (2a+1)!(2b+1)!/(2a+2b+3)! * F_{2a+2b+3}(t).

Cross-checks performed: the string and dilaton identities
    V_{g,n+1}(L, 2 pi i) = 0,
    dV_{g,n+1}/dL_{n+1}(L, 2 pi i) = 2 pi i (2g-2+n) V_{g,n}(L),
plus pinned values V_{0,3}=1, V_{0,4}(0)=2 pi^2, V_{1,1}(0)=pi^2/12,
V_{1,2}(0)=pi^4/4, V_{2,0}=43 pi^6/2160.
"""

import argparse
import math
import sys
from gmpy2 import mpq
import mpmath

mpmath.mp.dps = 60


# ---------------------------------------------------------------------------
# coefficient ring: finite sums  sum_j q_j * pi^(2j),  q_j rational

class PiPoly:
    __slots__ = ("c",)

    def __init__(self, c=None):
        self.c = c or {}

    def __bool__(self):
        return bool(self.c)

    def __add__(self, other):
        out = dict(self.c)
        for j, q in other.c.items():
            s = out.get(j)
            s = q if s is None else s + q
            if s:
                out[j] = s
            elif j in out:
                del out[j]
        return PiPoly(out)

    def __mul__(self, other):
        if isinstance(other, PiPoly):
            out = {}
            for j1, q1 in self.c.items():
                for j2, q2 in other.c.items():
                    j = j1 + j2
                    s = out.get(j)
                    p = q1 * q2
                    s = p if s is None else s + p
                    if s:
                        out[j] = s
                    elif j in out:
                        del out[j]
            return PiPoly(out)
        # rational / int scalar
        if not other:
            return PiPoly()
        return PiPoly({j: q * other for j, q in self.c.items()})

    __rmul__ = __mul__

    def to_mpf(self):
        pi2 = mpmath.pi ** 2
        tot = mpmath.mpf(0)
        for j, q in sorted(self.c.items()):
            tot += mpmath.mpf(q.numerator) / mpmath.mpf(q.denominator) * pi2 ** j
        return tot

    def __repr__(self):
        return "PiPoly(%r)" % (self.c,)


def pp(q, j=0):
    q = mpq(q)
    return PiPoly({j: q}) if q else PiPoly()


ZERO = PiPoly()
ONE = pp(1)


# ---------------------------------------------------------------------------
# Bernoulli numbers, zeta(2i)/pi^(2i), F-polynomial coefficient tables

def bernoulli_numbers(m):
    bern = [mpq(1)]
    for n in range(1, m + 1):
        s = mpq(0)
        for j in range(n):
            s += mpq(math.comb(n + 1, j)) * bern[j]
        bern.append(-s / (n + 1))
    return bern


_FC_CACHE = {}
_BERN = None


def f_coeffs(K):
    """Coefficients of F_{2K+1}(t) as a polynomial in t^2: list over m of the
    coefficient of t^(2m), m = 0..K+1, entries PiPoly."""
    global _BERN
    if K in _FC_CACHE:
        return _FC_CACHE[K]
    if _BERN is None:
        _BERN = bernoulli_numbers(120)
    out = [ZERO] * (K + 2)
    fct = mpq(math.factorial(2 * K + 1))
    for i in range(K + 2):
        m = K + 1 - i
        if i == 0:
            zr = mpq(-1, 2)       # zeta(0)
        else:
            zr = (-1) ** (i + 1) * _BERN[2 * i] * mpq(4 ** i) / (2 * math.factorial(2 * i))
        q = fct * zr * (2 ** (2 * i + 1) - 4) / math.factorial(2 * m)
        out[m] = pp(q, i)
    _FC_CACHE[K] = out
    return out


_BETA_CACHE = {}


def beta(a, b):
    key = (a, b)
    if key not in _BETA_CACHE:
        _BETA_CACHE[key] = mpq(math.factorial(2 * a + 1) * math.factorial(2 * b + 1),
                               math.factorial(2 * a + 2 * b + 3))
    return _BETA_CACHE[key]


# ---------------------------------------------------------------------------
# restricted volume polynomials

_P_CACHE = {}
_LIST_CACHE = {}


def sig_remove(sig, v):
    lst = list(sig)
    lst.remove(v)
    return tuple(lst)


def sig_insert(sig, v):
    if v == 0:
        return sig
    lst = sorted(sig + (v,), reverse=True)
    return tuple(lst)


def stable(g, n):
    return 2 * g - 2 + n >= 1


def designated(g, n, k):
    """List of (a, nu, coeff): decompositions of the monomials of W^k_{g,n}
    by the exponent a of one designated tracked variable; nu is the signature
    of the remaining k-1 tracked variables."""
    key = (g, n, k)
    if key in _LIST_CACHE:
        return _LIST_CACHE[key]
    out = []
    for sig, c in volume_poly(g, n, k).items():
        vals = set(sig)
        if len(sig) < k:
            vals.add(0)
        for a in vals:
            nu = sig if a == 0 else sig_remove(sig, a)
            out.append((a, nu, c))
    _LIST_CACHE[key] = out
    return out


def volume_poly(g, n, k):
    """W^k_{g,n} = V_{g,n}(x_1..x_k, 0...): dict signature -> coefficient."""
    assert 1 <= k <= n and stable(g, n)
    key = (g, n, k)
    if key in _P_CACHE:
        return _P_CACHE[key]
    if (g, n) == (0, 3):
        res = {(): ONE}
        _P_CACHE[key] = res
        return res
    if (g, n) == (1, 1):
        res = {(): pp(mpq(1, 12), 1), (1,): pp(mpq(1, 48))}
        _P_CACHE[key] = res
        return res

    q_acc = {}

    def add(m, mu, val):
        kk = (m, mu)
        s = q_acc.get(kk)
        q_acc[kk] = val if s is None else s + val

    # A_con: half-int int xy H(x+y, x1) V_{g-1,n+1}(x, y, x2..xk)
    if g >= 1 and stable(g - 1, n + 1):
        w = volume_poly(g - 1, n + 1, k + 1)
        for sig, c in w.items():
            vals1 = set(sig)
            if len(sig) < k + 1:
                vals1.add(0)
            for a in vals1:
                r1 = sig if a == 0 else sig_remove(sig, a)
                vals2 = set(r1)
                if len(r1) < k:
                    vals2.add(0)
                for b in vals2:
                    nu = r1 if b == 0 else sig_remove(r1, b)
                    if len(nu) > k - 1:
                        continue
                    fac = beta(a, b) * mpq(1, 2)
                    fc = f_coeffs(a + b + 1)
                    for m, fm in enumerate(fc):
                        if fm:
                            add(m, nu, (c * fm) * fac)

    # A_dcon: ordered stable splittings (g1, I) (g2, J) of (g, {2..n})
    nzero = n - k
    for g1 in range(g + 1):
        g2 = g - g1
        for k1 in range(1, k + 1):
            k2 = k - k1 + 1
            for z1 in range(nzero + 1):
                n1 = k1 + z1
                n2 = n - k1 - z1 + 1
                if not (stable(g1, n1) and stable(g2, n2)):
                    continue
                cnz = mpq(math.comb(nzero, z1), 2)
                l1 = designated(g1, n1, k1)
                l2 = designated(g2, n2, k2)
                for a, nu1, c1 in l1:
                    for b, nu2, c2 in l2:
                        mu = tuple(sorted(nu1 + nu2, reverse=True))
                        if len(mu) > k - 1:
                            continue
                        # labelled subsets of the k-1 passthrough slots
                        ways = math.comb((k - 1) - len(mu), (k1 - 1) - len(nu1))
                        if ways == 0:
                            continue
                        for v in set(nu1):
                            ways *= math.comb(mu.count(v), nu1.count(v))
                        cc = (c1 * c2) * (beta(a, b) * cnz * ways)
                        fc = f_coeffs(a + b + 1)
                        for m, fm in enumerate(fc):
                            if fm:
                                add(m, mu, cc * fm)

    # B over tracked boundary slots, via the canonical monomial's exponents.
    # For an output monomial x1^{2m} prod x_j^{2 mu_j} the slot j with
    # exponent e contributes coeff(a, rest) * f^{(2a+1)}_{m+e} * C(2(m+e), 2e).
    if stable(g, n - 1):
        deg_in = 3 * g - 3 + (n - 1)
        if k >= 2 and n - 1 >= k - 1:
            w_in = volume_poly(g, n - 1, k - 1)
            # iterate over output (m, mu) indirectly: scatter from input
            for sig, c in w_in.items():
                vals = set(sig)
                if len(sig) < k - 1:
                    vals.add(0)
                for a in vals:
                    nu = sig if a == 0 else sig_remove(sig, a)
                    if len(nu) > k - 2:
                        continue
                    fc = f_coeffs(a)
                    for p, fp in enumerate(fc):
                        if not fp:
                            continue
                        for e in range(p + 1):
                            m = p - e
                            mu = sig_insert(nu, e)
                            if len(mu) > k - 1:
                                continue
                            # every tracked slot of the output carrying
                            # exponent e pairs with this input monomial
                            if e > 0:
                                slots = nu.count(e) + 1
                            else:
                                slots = (k - 1) - len(nu)
                            add(m, mu, (c * fp) * (math.comb(2 * p, 2 * e) * slots))
        if n - 1 >= k and nzero >= 1:
            w_in = volume_poly(g, n - 1, k)
            for sig, c in w_in.items():
                vals = set(sig)
                if len(sig) < k:
                    vals.add(0)
                for a in vals:
                    nu = sig if a == 0 else sig_remove(sig, a)
                    if len(nu) > k - 1:
                        continue
                    fc = f_coeffs(a)
                    for m, fm in enumerate(fc):
                        if fm:
                            add(m, nu, (c * fm) * nzero)

    # integrate: coefficient of x1^{2m} in V is Q[(m, mu)]/(2m+1); the result
    # must be symmetric, which we assert by checking collisions agree.
    res = {}
    for (m, mu), val in q_acc.items():
        sig = sig_insert(mu, m)
        coeff = val * mpq(1, 2 * m + 1)
        if sig in res:
            diff = res[sig] + coeff * -1
            if diff.c:
                raise AssertionError("symmetry violated at %r %r" % ((g, n, k), sig))
        else:
            res[sig] = coeff
    _P_CACHE[key] = res
    return res


def volume_scalar(g, n):
    """V_{g,n}(0,...,0) as a PiPoly; n = 0 via the dilaton identity applied
    to V_{g,1}."""
    if n >= 1:
        return volume_poly(g, n, 1).get((), ZERO)
    # V'_{g,1}(2 pi i) = 2 pi i (2g-2) V_{g,0}
    w = volume_poly(g, 1, 1)
    tot = ZERO
    for sig, c in w.items():
        if not sig:
            continue
        kk = sig[0]
        # d/dL L^{2k} at L = 2 pi i gives 2k (2 pi i)^{2k-1}; dividing by
        # 2 pi i leaves 2k (-4 pi^2)^{k-1}
        tot = tot + c * mpq(2 * kk) * pp(mpq((-4) ** (kk - 1)), kk - 1)
    return tot * mpq(1, 2 * g - 2)


# ---------------------------------------------------------------------------
# checks

def check_pinned():
    p2 = mpmath.pi ** 2
    tests = [
        (volume_scalar(0, 3), mpmath.mpf(1)),
        (volume_scalar(0, 4), 2 * p2),
        (volume_scalar(1, 1), p2 / 12),
        (volume_scalar(1, 2), p2 ** 2 / 4),
        (volume_scalar(2, 0), 43 * p2 ** 3 / 2160),
    ]
    for got, want in tests:
        gv = got.to_mpf() if isinstance(got, PiPoly) else got
        assert mpmath.fabs(gv - want) <= 1e-40 * mpmath.fabs(want), (gv, want)
    print("pinned values ok")


def check_string_dilaton(gmax_chi):
    worst_s = worst_d = mpmath.mpf(0)
    for g in range(0, 6):
        for n in range(1, 8):
            if not stable(g, n) or 2 * g - 2 + (n + 1) > gmax_chi:
                continue
            if n + 1 < 2 or not stable(g, n + 1):
                continue
            w2 = volume_poly(g, n + 1, 2) if n + 1 >= 2 else None
            w1 = volume_poly(g, n, 1)
            degm = 3 * g - 3 + n + 1
            scale = volume_scalar(g, n + 1).to_mpf()
            for m in range(degm + 1):
                s_acc = mpmath.mpf(0)
                d_acc = mpmath.mpf(0)
                for e in range(degm + 1):
                    c = w2.get(sig_insert(sig_insert((), m), e))
                    if c is None:
                        continue
                    cv = c.to_mpf()
                    s_acc += cv * (-4 * mpmath.pi ** 2) ** e
                    if e >= 1:
                        d_acc += cv * 2 * e * (-4 * mpmath.pi ** 2) ** (e - 1)
                a_m = w1.get(sig_insert((), m), ZERO).to_mpf()
                # string: V(L, 2pi i) = int_0^L y V_{g,n}(y) dy, so the
                # x^{2m} coefficient is a_{m-1}/(2m)
                if m == 0:
                    s_want = mpmath.mpf(0)
                else:
                    s_want = w1.get(sig_insert((), m - 1), ZERO).to_mpf() / (2 * m)
                worst_s = max(worst_s, mpmath.fabs(s_acc - s_want) / scale)
                worst_d = max(worst_d, mpmath.fabs(d_acc - (2 * g - 2 + n) * a_m) / scale)
    print("string residual %.3e  dilaton residual %.3e" % (worst_s, worst_d))
    assert worst_s < mpmath.mpf("1e-40") and worst_d < mpmath.mpf("1e-40")


def check_k_consistency():
    """The same restriction computed through different tracked-variable counts
    must agree."""
    for g, n in [(0, 5), (0, 6), (1, 3), (1, 4), (2, 2), (3, 1)]:
        kk = min(n, 4)
        p1 = volume_poly(g, n, 1)
        pk = {sig: c for sig, c in volume_poly(g, n, kk).items() if len(sig) <= 1}
        assert set(p1.keys()) == set(pk.keys()), (g, n)
        for sig, c in p1.items():
            diff = c + pk[sig] * -1
            assert not diff.c, (g, n, sig)
    print("restriction consistency ok")


# ---------------------------------------------------------------------------

def fmt(x):
    return repr(float(x))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-chi", type=int, default=20,
                    help="include all (g,n) with 2g-2+n <= this")
    ap.add_argument("--poly-chi", type=int, default=8,
                    help="bundle full polynomials for 2g-2+n <= this")
    ap.add_argument("--extra-genus", type=int, default=0,
                    help="additional closed-surface rows beyond the chi cap")
    ap.add_argument("-o", "--out", default="data/volumes.csv")
    args = ap.parse_args()

    check_pinned()
    check_string_dilaton(10)
    check_k_consistency()

    rows = []
    for g in range(0, args.max_chi // 2 + 2):
        for n in range(0, args.max_chi + 3):
            chi = 2 * g - 2 + n
            if chi < 1 or chi > args.max_chi:
                continue
            if g == 0 and n < 3:
                continue
            rows.append((g, n))
    gmax = max(g for g, n in rows if n == 0)
    for g in range(gmax + 1, gmax + 1 + args.extra_genus):
        rows.append((g, 0))
    rows.sort()

    vals = {}
    for g, n in rows:
        vals[(g, n)] = volume_scalar(g, n).to_mpf()
        sys.stderr.write("V_{%d,%d} done\n" % (g, n))

    # Mirzakhani-Zograf ratio diagnostics for the closed-surface rows
    print("MZ ratios V_g sqrt(g) / ((2g-3)! (4 pi^2)^(2g-3)):")
    for g, n in rows:
        if n == 0:
            r = vals[(g, n)] * mpmath.sqrt(g) / (mpmath.factorial(2 * g - 3)
                                                 * (4 * mpmath.pi ** 2) ** (2 * g - 3))
            print("  g=%2d  %.10f" % (g, float(r)))

    lines = []
    lines.append("# weil-petersson volume table")
    lines.append("# v11_convention=pi^2/12")
    lines.append("# columns: g,n,value_log (natural log of V_{g,n} at zero boundary length)")
    lines.append("# poly rows: poly,g,n,<sig>:<coeff>;... where sig lists the nonzero")
    lines.append("#   exponents of the squared boundary lengths of one monomial (dot-separated)")
    lines.append("#   and coeff is the coefficient of every monomial with that signature")
    lines.append("g,n,value_log")
    for g, n in rows:
        lines.append("%d,%d,%s" % (g, n, fmt(mpmath.log(vals[(g, n)]))))
    for g, n in rows:
        chi = 2 * g - 2 + n
        if n >= 1 and chi <= args.poly_chi:
            poly = volume_poly(g, n, n)
            items = []
            for sig in sorted(poly.keys()):
                items.append("%s:%s" % (".".join(str(s) for s in sig),
                                        fmt(poly[sig].to_mpf())))
            lines.append("poly,%d,%d,%s" % (g, n, ";".join(items)))

    with open(args.out, "w") as f:
        f.write("\n".join(lines) + "\n")
    print("wrote %s (%d scalar rows)" % (args.out, len(rows)))


if __name__ == "__main__":
    main()
