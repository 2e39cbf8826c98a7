"""The Farey graph of slopes: exact distances, geodesics, and slope charts.

Curve graphs of the two complexity-one surfaces (the once-punctured torus
and the four-punctured sphere) are Farey graphs: vertices are slopes p/q and
two slopes are adjacent when |ps - qr| = 1.  Intersection numbers are
|ps - qr| on the torus and 2|ps - qr| on the sphere.  Distances are computed
by a continued-fraction descent and cross-checked against breadth-first
search in the tests.

A SlopeChart fixes three pairwise-minimally-intersecting reference curves on
a concrete surface and assigns each curve its slope from the three intersection
numbers; the chart is exact and deterministic.
"""

import itertools
from math import gcd


def normalize_slope(s):
    p, q = s
    assert p or q
    g = gcd(p, q)
    p, q = p // g, q // g
    if q < 0 or (q == 0 and p < 0):
        p, q = -p, -q
    return (p, q)


def slope_det(a, b):
    return a[0] * b[1] - a[1] * b[0]


def farey_adjacent(a, b):
    return abs(slope_det(normalize_slope(a), normalize_slope(b))) == 1


def _dist_to_inf(p, q, memo):
    """Farey distance from p/q to 1/0, with the geodesic's next vertex."""
    if q < 0:
        p, q = -p, -q
    if q == 0:
        return 0, None
    if q == 1:
        return 1, (1, 0)
    key = (p, q)
    if key in memo:
        return memo[key]
    n = p // q                  # translate to (0, 1); translation fixes 1/0
    p0 = p - n * q
    # a geodesic to 1/0 from the interval (n, n+1) leaves through one of its
    # endpoints, the two integer neighbors of 1/0 bounding the interval
    d0, _ = _dist_to_inf(-q, p0, memo)
    d1, _ = _dist_to_inf(p0, p0 - q, memo)
    if d0 <= d1:
        memo[key] = (1 + d0, (n, 1))
    else:
        memo[key] = (1 + d1, (n + 1, 1))
    return memo[key]


_MEMO = {}


def _to_inf_matrix(b):
    """A determinant-one integer matrix sending slope b to 1/0."""
    p, q = b
    # extended gcd: a*p + c*q == 1
    a, c = _xgcd(p, q)
    return ((a, c), (-q, p))


def _xgcd(p, q):
    old_r, r = p, q
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_s, s = s, old_s - k * s
        old_t, t = t, old_t - k * t
    assert old_r == 1, "slope not in lowest terms"
    return old_s, old_t


def _apply(M, s):
    (a, b), (c, d) = M
    return (a * s[0] + b * s[1], c * s[0] + d * s[1])


def farey_distance(a, b):
    a = normalize_slope(a)
    b = normalize_slope(b)
    if a == b:
        return 0
    M = _to_inf_matrix(b)
    p, q = _apply(M, a)
    d, _ = _dist_to_inf(p, q, _MEMO)
    return d


def farey_geodesic(a, b):
    """One geodesic slope sequence from a to b.

    Built back to front: the continued-fraction descent names the
    second-to-last vertex of a geodesic from a to b, and the prefix is
    found recursively.
    """
    a = normalize_slope(a)
    b = normalize_slope(b)
    if a == b:
        return [a]
    if abs(slope_det(a, b)) == 1:
        return [a, b]
    M = _to_inf_matrix(b)
    (ma, mb), (mc, md) = M
    inv = ((md, -mb), (-mc, ma))
    p, q = _apply(M, a)
    if q < 0:
        p, q = -p, -q
    _, nxt = _dist_to_inf(p, q, _MEMO)
    assert nxt is not None and normalize_slope(nxt) != normalize_slope((p, q))
    v = normalize_slope(_apply(inv, nxt))
    path = farey_geodesic(a, v) + [b]
    assert len(path) - 1 == farey_distance(a, b)
    return path


def farey_distance_bfs(a, b, bound=12):
    """Exhaustive reference distance over slopes with |p|, |q| <= bound."""
    a = normalize_slope(a)
    b = normalize_slope(b)
    verts = {normalize_slope((p, q))
             for p in range(-bound, bound + 1)
             for q in range(-bound, bound + 1) if p or q}
    assert a in verts and b in verts
    frontier = {a}
    seen = {a}
    d = 0
    while frontier:
        if b in frontier:
            return d
        frontier = {v for u in frontier for v in verts
                    if v not in seen and farey_adjacent(u, v)}
        seen |= frontier
        d += 1
    raise AssertionError("bound too small for BFS")


class SlopeChart:
    """Slope coordinates on a complexity-one surface.

    Three reference curves A, B, C with pairwise intersection delta (1 on
    the torus, 2 on the sphere) are chosen deterministically; A carries
    slope 0/1, B slope 1/0, C slope 1/1, and every other curve's slope is
    read off from its intersection numbers with the references.
    """

    def __init__(self, surface, candidates=None, delta=None):
        if delta is None:
            assert surface.type.complexity == 1
            delta = 1 if surface.type.genus == 1 else 2
        self.surface = surface
        self.delta = delta
        cands = list(candidates) if candidates is not None \
            else surface.short_simple_words(3)
        cands.sort(key=lambda c: (sum(c.weights), c.weights))
        refs = self._pick_refs(cands)
        assert refs is not None, "no reference triple in the candidate set"
        self.refs = refs
        self._slopes = {refs[0].weights: (0, 1),
                        refs[1].weights: (1, 0),
                        refs[2].weights: (1, 1)}

    def _pick_refs(self, cands):
        d = self.delta
        for a, b in itertools.combinations(cands, 2):
            if self.surface.intersection_number(a, b) != d:
                continue
            for c in cands:
                if c.weights in (a.weights, b.weights):
                    continue
                if self.surface.intersection_number(a, c) == d \
                        and self.surface.intersection_number(b, c) == d:
                    return (a, b, c)
        return None

    def slope_of(self, curve):
        if curve.weights in self._slopes:
            return self._slopes[curve.weights]
        a, b, c = self.refs
        i = self.surface.intersection_number
        p = i(curve, a)
        q = i(curve, b)
        r = i(curve, c)
        assert p % self.delta == 0 and q % self.delta == 0 \
            and r % self.delta == 0
        p, q, r = p // self.delta, q // self.delta, r // self.delta
        assert gcd(p, q) == 1, "intersection pattern is not a slope"
        if abs(p - q) == r:
            s = (p, q)
        else:
            assert abs(-p - q) == r, "no sign choice matches the chart"
            s = (-p, q)
        s = normalize_slope(s)
        self._slopes[curve.weights] = s
        return s

    def predicted_intersection(self, x, y):
        return self.delta * abs(slope_det(self.slope_of(x), self.slope_of(y)))
