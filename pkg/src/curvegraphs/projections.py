"""Subsurface projections and the coarse-geometry audit machinery.

The projection of a multicurve to an essential non-annular subsurface X is
the multicurve formed by the components already lying in X together with
the boundary surgeries of its essential intersection arcs with X.  Surgery
classes are assembled algebraically: each arc contributes words built from
the loop words of the boundary components at its endpoints conjugated by
the path word along the arc, and the candidates are certified by
embeddedness and disjointness from the input and from the boundary.

Distances between projections are measured in the curve graph of X, by the
continued-fraction argument when X has complexity one and by pool search
otherwise.
"""

from collections import defaultdict

from . import words as W
from .neighborhoods import Network
from .farey import farey_distance, SlopeChart
from .surface import Multicurve


class AnnularTarget(ValueError):
    """Projection to an annulus is not supported by this machinery."""


class TiePoint(RuntimeError):
    """A crossing of the input with the boundary sits exactly on a
    triangulation edge; the sample should be retried or skipped."""


class Disjoint(ValueError):
    """Boundary projection between disjoint non-overlapping subsurfaces."""


class UncertifiedGeodesic(ValueError):
    """The path handed to the geodesic-image audit is not certified."""


def _letters(item, idxs):
    out = []
    for e in idxs:
        g = item.events[e].gen
        if g is not None:
            out.append((g[0] + 1) * g[1])
    return tuple(out)


def _inv(word):
    return tuple(-x for x in reversed(word))


class _CrossingData:
    """Ordered crossing data of a union of curves with a disjoint carrier
    multicurve, with word extraction for loops and connecting paths."""

    def __init__(self, surface, movers, carrier):
        self.surface = surface
        self.movers = list(movers)
        self.carrier = list(carrier)
        items = [c.item for c in self.movers] + [c.item for c in self.carrier]
        self.net = Network(surface.dev, items)
        if self.net.tie_vids:
            raise TiePoint("crossing on a triangulation edge")
        self.n_movers = len(self.movers)
        self.seqs = {}
        self.chord_of = defaultdict(dict)   # vid -> {item_index: chord}
        for i in range(len(items)):
            seq = self.net._item_sequence(i)
            self.seqs[i] = seq
            for ci, vid in seq:
                self.chord_of[vid][i] = ci

    def crossing_sign(self, vid):
        return self.net.vertex_items[vid][2]

    def other_item(self, vid, i):
        a, b, _s = self.net.vertex_items[vid]
        assert i in (a, b)
        return b if i == a else a

    def _step_spans(self, i):
        """Event counts between consecutive crossings along item i,
        cyclically (the wrap step covers the remaining events)."""
        seq = self.seqs[i]
        n = len(self.movers[i].item.events) if i < self.n_movers else \
            len(self.carrier[i - self.n_movers].item.events)
        spans = []
        for p in range(len(seq)):
            c_here = seq[p][0]
            c_next = seq[(p + 1) % len(seq)][0]
            s = (c_next - c_here) % n
            if p == len(seq) - 1:
                s = ((c_next - c_here - 1) % n) + 1
            spans.append(s)
        return spans, n

    def path_word(self, i, pos_a, pos_b):
        """Letters along item i from crossing at sequence position pos_a
        forward to the crossing at position pos_b."""
        seq = self.seqs[i]
        item = (self.movers[i] if i < self.n_movers
                else self.carrier[i - self.n_movers]).item
        spans, n = self._step_spans(i)
        cur = seq[pos_a][0]
        idxs = []
        p = pos_a
        while p != pos_b:
            s = spans[p]
            idxs.extend((cur + k) % n for k in range(s))
            cur = (cur + s) % n
            p = (p + 1) % len(seq)
        return _letters(item, idxs)

    def loop_word(self, i, pos):
        """The full loop word of item i based at the crossing at sequence
        position pos."""
        item = (self.movers[i] if i < self.n_movers
                else self.carrier[i - self.n_movers]).item
        c = self.seqs[i][pos][0]
        n = len(item.events)
        return _letters(item, [(c + k) % n for k in range(n)])

    def pos_on(self, vid, i):
        for p, (_ci, v) in enumerate(self.seqs[i]):
            if v == vid:
                return p
        raise AssertionError("crossing not on item")


def _surgery_words(cd, i):
    """Candidate surgery words for every complementary arc of mover i."""
    seq = cd.seqs[i]
    out = []
    m = len(seq)
    for p in range(m):
        q = (p + 1) % m
        vid_a = seq[p][1]
        vid_b = seq[q][1]
        P = cd.path_word(i, p, q)
        j1 = cd.other_item(vid_a, i)
        j2 = cd.other_item(vid_b, i)
        if j1 != j2:
            # pair-of-pants surgery: both boundary loops oriented with the
            # surface orientation (counterclockwise), as read off from the
            # crossing signs
            U1 = cd.loop_word(j1, cd.pos_on(vid_a, j1))
            U2 = cd.loop_word(j2, cd.pos_on(vid_b, j2))
            s1 = cd.crossing_sign(vid_a)
            s2 = cd.crossing_sign(vid_b)
            L1 = U1 if s1 > 0 else _inv(U1)
            L2 = U2 if s2 < 0 else _inv(U2)
            cands = [L1 + P + L2 + _inv(P)]
        else:
            pa = cd.pos_on(vid_a, j1)
            pb = cd.pos_on(vid_b, j1)
            D2 = cd.path_word(j1, pa, pb)       # endpoint a forward to b
            D1 = cd.path_word(j1, pb, pa)       # endpoint b forward to a
            s1 = cd.crossing_sign(vid_a)
            s2 = cd.crossing_sign(vid_b)
            if s1 * s2 < 0:
                # the arc returns to the same side: pants case, the two
                # new boundary circles are arc-plus-segment curves
                cands = [P + D1, P + _inv(D2)]
            else:
                # the arc returns from the opposite side: one-holed torus
                # case, a single new boundary circle traversing the arc
                # twice
                cands = [P + D1 + P + _inv(D2)]
        out.append([W.cyclic_reduce(w) for w in cands])
    return out


def _certify_candidates(surface, cands, carrier_mc):
    """The candidate classes that are embedded essential curves disjoint
    from the carrier (surgeries may cross other arcs of the input, so no
    disjointness from the input is required)."""
    good = {}
    for w in cands:
        if not w:
            continue
        if surface.dev.element_type(w) != "hyperbolic":
            continue
        try:
            c = surface.curve_from_word(w)
        except AssertionError:
            continue
        if surface.intersection_number(c, carrier_mc) != 0:
            continue
        if c.weights in {d.weights for d in carrier_mc.curves}:
            continue
        good[c.weights] = c
    return good


class SubsurfaceOracle:
    """Curve-graph distances inside one non-annular piece X, measured with
    ambient intersection numbers (which realize intrinsic minimal position
    for geodesic representatives).

    Complexity-one pieces get exact continued-fraction distances through a
    slope chart with reference curves found inside X; larger pieces fall
    back to breadth-first search over the curves of the pool lying in X.
    """

    def __init__(self, surface, X, candidates, crossing=()):
        self.surface = surface
        self.X = X
        self.xi = X.type.complexity
        assert self.xi >= 1
        bw = {d.weights for d in X.carrier.curves}
        self.pool = []
        crossers = []
        seen = set()
        for c in candidates:
            if c.weights in seen or c.weights in bw:
                continue
            seen.add(c.weights)
            if surface.intersection_number(c, X.carrier) == 0:
                if surface.piece_of(X, c):
                    self.pool.append(c)
            else:
                crossers.append(c)
        crossers.extend(c for c in crossing if c.weights not in seen)
        self.chart = None
        if self.xi == 1:
            delta = 1 if X.genus == 1 else 2
            self.chart = self._build_chart(delta, crossers)

    def _build_chart(self, delta, crossers):
        """A slope chart for X, enriching the in-piece pool by twists and
        by projections of ambient crossing curves until a reference triple
        exists."""
        cands = {c.weights: c for c in self.pool}
        for a in list(cands.values()):
            for b in list(cands.values()):
                if b.weights <= a.weights:
                    continue
                if self.surface.intersection_number(a, b) == delta:
                    for p in (1, -1):
                        t = self.surface.twist_about(b, a, p)
                        cands.setdefault(t.weights, t)
        for d in [None] + crossers:
            if d is not None:
                try:
                    for c in project(self.surface, self.X, d):
                        cands.setdefault(c.weights, c)
                except TiePoint:
                    continue
            ordered = sorted(cands.values(),
                             key=lambda c: (sum(c.weights), c.weights))
            try:
                return SlopeChart(self.surface, candidates=ordered,
                                  delta=delta)
            except AssertionError:
                continue
        raise PoolTooThin("no slope reference triple inside the piece")

    def adjacency_number(self):
        if self.xi > 1:
            return 0
        return 1 if self.X.genus == 1 else 2

    def distance(self, x, y):
        if x.weights == y.weights:
            return 0
        if self.chart is not None:
            return farey_distance(self.chart.slope_of(x),
                                  self.chart.slope_of(y))
        adj = self.adjacency_number()
        i = self.surface.intersection_number
        if i(x, y) == adj:
            return 1
        frontier = {x.weights}
        dist = {x.weights: 0}
        by_w = {c.weights: c for c in self.pool}
        by_w[x.weights] = x
        by_w[y.weights] = y
        d = 0
        while frontier:
            d += 1
            nxt = set()
            for wv in frontier:
                v = by_w[wv]
                for c in by_w.values():
                    if c.weights in dist:
                        continue
                    if i(v, c) == adj:
                        if c.weights == y.weights:
                            return d
                        dist[c.weights] = d
                        nxt.add(c.weights)
            frontier = nxt
        raise PoolDisconnected("no pool path inside the piece")

    def diameter(self, curves):
        cs = {c.weights: c for c in curves}
        cs = [cs[k] for k in sorted(cs)]
        dm = 0
        for i in range(len(cs)):
            for j in range(i + 1, len(cs)):
                dm = max(dm, self.distance(cs[i], cs[j]))
        return dm


class PoolDisconnected(RuntimeError):
    """The pool subgraph inside the piece does not connect the inputs."""


class PoolTooThin(RuntimeError):
    """The candidate curves inside the piece do not support a slope
    chart."""


def oracle_for(surface, X, candidates):
    """A SubsurfaceOracle for X, cached per carrier and piece (the slope
    chart of a complexity-one piece is expensive to build and reusable)."""
    cache = getattr(surface, "_proj_oracles", None)
    if cache is None:
        cache = surface._proj_oracles = {}
    key = (X.carrier.key, X.index)
    o = cache.get(key)
    if o is None:
        o = SubsurfaceOracle(surface, X, candidates)
        cache[key] = o
    elif o.xi > 1:
        known = {c.weights for c in o.pool}
        for c in candidates:
            if c.weights in known:
                continue
            if surface.intersection_number(c, X.carrier) == 0 \
                    and c.weights not in {d.weights
                                          for d in X.carrier.curves} \
                    and surface.piece_of(X, c):
                o.pool.append(c)
                known.add(c.weights)
    return o


def proj_distance(surface, X, a, b, pool=None):
    """Coarse distance between the projections of two multicurves to X:
    the diameter of the union of the two projection sets in the curve
    graph of X (so d(a, a) is the diameter of one projection)."""
    pa = project(surface, X, a)
    pb = project(surface, X, b)
    if not pa or not pb:
        return {"distance": None, "proj_a": pa, "proj_b": pb,
                "empty": True}
    cands = list(pa) + list(pb) + (list(pool) if pool else [])
    oracle = oracle_for(surface, X, cands)
    d = oracle.diameter(list(pa) + list(pb))
    return {"distance": d, "proj_a": pa, "proj_b": pb, "empty": False}


def project(surface, X, m):
    """The subsurface projection of a multicurve to a non-annular piece X
    of a cut of the surface: the sorted list of ambient curves lying in X
    formed by the components of m in X and the boundary surgeries of its
    intersection arcs with X (empty when m can be isotoped off X).

    Surgeries of distinct arcs may cross, so the result is a list, not a
    multicurve."""
    if getattr(X, "is_annular", False):
        raise AnnularTarget("projection target is an annulus")
    assert X.type.complexity >= 1, "projection target has no curves"
    m = m if isinstance(m, Multicurve) else surface.multicurve([m])
    carrier = X.carrier
    bweights = {c.weights for c in carrier.curves}
    inside = {}
    movers = []
    for c in m.curves:
        if c.weights in bweights:
            continue
        if surface.intersection_number(c, carrier) == 0:
            if surface.piece_of(X, c):
                inside[c.weights] = c
            continue
        movers.append(c)
    if movers:
        cd = _CrossingData(surface, movers,
                           [d for d in carrier.curves])
        for i in range(len(movers)):
            for cands in _surgery_words(cd, i):
                good = _certify_candidates(surface, cands, carrier)
                for wts, c in good.items():
                    if surface.piece_of(X, c) and wts not in bweights:
                        inside[wts] = c
    return [inside[k] for k in sorted(inside)]
