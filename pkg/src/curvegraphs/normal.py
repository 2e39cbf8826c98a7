"""Normal coordinates of multicurves with respect to an ideal triangulation.

The weight vector of a multicurve assigns to each edge the number of its
transverse intersections with a minimal-position representative.  Inside each
triangle the strands resolve into corner arcs: the count at corner c is
(w_{c+1} + w_{c+2} - w_c) / 2 in terms of the side weights, which must be a
nonnegative integer (the matching condition).  Tracing the corner arcs across
the gluings splits the multicurve into components and recovers the
free-homotopy word of each one.
"""

from collections import defaultdict

from . import words as W


class MatchingViolation(ValueError):
    """Weight vector fails the triangle matching conditions."""


class PeripheralComponent(ValueError):
    """Multicurve contains a puncture-parallel component."""


def corner_counts(tri, weights):
    """Per-triangle corner arc counts [t][c], raising MatchingViolation."""
    assert len(weights) == tri.n_edges
    if any(w < 0 for w in weights):
        raise MatchingViolation("negative weight")
    out = []
    for t in range(tri.n_tri):
        w = [weights[tri.edge_of[(t, k)]] for k in range(3)]
        row = []
        for c in range(3):
            v = w[(c + 1) % 3] + w[(c + 2) % 3] - w[c]
            if v < 0 or v % 2:
                raise MatchingViolation(
                    "corner count %r at (%d, %d)" % (v, t, c))
            row.append(v // 2)
        out.append(row)
    return out


def _positions(tri, weights):
    """Corner arc at position p on side (t, k): the first n_{k+1} positions
    (counted from corner k+1) belong to corner k+1, the last n_{k+2} to
    corner k+2.  Returns {(t, k): (n_first, n_last, w)} with consistency
    asserted."""
    cc = corner_counts(tri, weights)
    out = {}
    for t in range(tri.n_tri):
        for k in range(3):
            w = weights[tri.edge_of[(t, k)]]
            a = cc[t][(k + 1) % 3]
            b = cc[t][(k + 2) % 3]
            assert a + b == w
            out[(t, k)] = (a, b, w)
    return out


def trace_components(tri, weights):
    """Split a weight vector into components.

    Returns a list of (weights, word) pairs, one per component, where word is
    the free-homotopy class read from the crossed sides.  Raises
    MatchingViolation on inconsistent weights.
    """
    pos = _positions(tri, weights)
    # points: (t, k, p) with p in 1..w counted from corner k+1; the glued
    # partner of (t, k, p) is (t2, k2, w + 1 - p)
    seen = set()
    comps = []
    for t0 in range(tri.n_tri):
        for k0 in range(3):
            w0 = pos[(t0, k0)][2]
            for p0 in range(1, w0 + 1):
                if (t0, k0, p0) in seen:
                    continue
                comp_w = [0] * tri.n_edges
                letters = []
                t, k, p = t0, k0, p0
                while (t, k, p) not in seen:
                    seen.add((t, k, p))
                    # cross the edge
                    comp_w[tri.edge_of[(t, k)]] += 1
                    g = tri.gen_of_side.get((t, k))
                    if g is not None:
                        letters.append((g[0] + 1) * g[1])
                    t2, k2 = tri.glue[(t, k)]
                    w = pos[(t2, k2)][2]
                    p2 = w + 1 - p
                    seen.add((t2, k2, p2))
                    # resolve the corner arc inside t2 at entry position p2
                    a, b, _ = pos[(t2, k2)]
                    if p2 <= a:
                        c = (k2 + 1) % 3
                    else:
                        c = (k2 + 2) % 3
                    k3 = (c + 1) % 3 if (c + 2) % 3 == k2 else (c + 2) % 3
                    assert k3 != k2
                    # position on the new side, counted from corner k3+1:
                    # arcs around corner c nest; innermost is closest to c.
                    a3, b3, w3 = pos[(t2, k3)]
                    if p2 <= a:
                        depth = p2           # 1 = innermost at corner k2+1
                    else:
                        depth = w + 1 - p2
                    if (k3 + 1) % 3 == c:
                        p3 = depth
                    else:
                        assert (k3 + 2) % 3 == c
                        p3 = w3 + 1 - depth
                    t, k, p = t2, k3, p3
                comps.append((comp_w, W.canonical_cyclic(tuple(letters))))
    return comps
