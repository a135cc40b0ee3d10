"""Independent reference computations for the test-suite.

None of these touch the Smith normal form code; they brute force small
cases instead.
"""

from fractions import Fraction
from itertools import combinations, product
from math import gcd


def det_fraction(rows):
    """Determinant by Gaussian elimination over the rationals."""
    n = len(rows)
    m = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            for j in range(c, n):
                m[i][j] -= f * m[c][j]
    return int(det)


def determinantal_invariant_factors(rows, ncols):
    """Invariant factors from gcds of k x k minors: d_1...d_k = D_k."""
    nrows = len(rows)
    divisors = [1]
    for k in range(1, min(nrows, ncols) + 1):
        g = 0
        for ri in combinations(range(nrows), k):
            for ci in combinations(range(ncols), k):
                g = gcd(g, det_fraction([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[i] // divisors[i - 1] for i in range(1, len(divisors))]


def rank_mod_p(rows, ncols, p=2):
    m = [[x % p for x in r] for r in rows]
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], -1, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def mod2_betti(c):
    """dim H_j(C; F_2) by linear algebra over the field with two elements."""
    out = {}
    for j in range(c.top_degree + 1):
        dj, dj1 = c.d(j), c.d(j + 1)
        rk_j = rank_mod_p(dj.tolist(), dj.cols) if dj.rows and dj.cols else 0
        rk_j1 = rank_mod_p(dj1.tolist(), dj1.cols) if dj1.rows and dj1.cols else 0
        b = c.rank(j) - rk_j - rk_j1
        if b:
            out[j] = b
    return out


def _apply_mod(m, v, q):
    return tuple(sum(m[i, j] * v[j] for j in range(m.cols)) % q for i in range(m.rows))


def brute_cohomology_counts(c, j, q):
    """For each divisor e of q, count classes x in H^j(C; Z/q) with e x == 0."""
    r = c.rank(j)
    delta, prev = c.coboundary(j), c.coboundary(j - 1)
    cocycles = [v for v in product(range(q), repeat=r) if not any(_apply_mod(delta, v, q))]
    bounds = {_apply_mod(prev, v, q) for v in product(range(q), repeat=prev.cols)} if r else {()}
    classes = {}
    for v in cocycles:
        key = min(tuple((a - b) % q for a, b in zip(v, w)) for w in bounds)
        classes[key] = v
    counts = {}
    for e in (d for d in range(1, q + 1) if q % d == 0):
        n = 0
        for v in classes.values():
            ev = tuple(e * x % q for x in v)
            if any(all((a - b) % q == 0 for a, b in zip(ev, w)) for w in bounds):
                n += 1
        counts[e] = n
    return counts


def group_counts(g, q):
    """Same count for a FinAbGroup that is killed by q."""
    out = {}
    for e in (d for d in range(1, q + 1) if q % d == 0):
        n = 1
        for t in g.torsion:
            n *= gcd(e, t)
        out[e] = n
    return out


def phi_enumerate(m, n):
    return sum(1 for s in range(n + 1, m + 1) if s % 8 in (0, 1, 2, 4))


def kunneth(ha, hb):
    """Homology of a tensor product of free complexes from the factors' homology."""
    from ptriv.exact_linalg import FinAbGroup

    out = {}
    top = max(ha, default=0) + max(hb, default=0) + 1
    for n in range(top + 1):
        orders, free = [], 0
        for i in range(n + 1):
            a, b = ha[i], hb[n - i]
            free += a.free_rank * b.free_rank
            orders += [t for t in a.torsion for _ in range(b.free_rank)]
            orders += [t for t in b.torsion for _ in range(a.free_rank)]
            orders += [gcd(s, t) for s in a.torsion for t in b.torsion]
        for i in range(n):
            a, b = ha[i], hb[n - 1 - i]
            orders += [gcd(s, t) for s in a.torsion for t in b.torsion]
        g = FinAbGroup.from_orders(free, orders)
        if not g.is_trivial:
            out[n] = g
    return out
