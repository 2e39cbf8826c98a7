"""Arc graphs relative to a set of punctures, and their companion
multicurve graphs.

An arc runs between punctures of a designated set; its companion vertex
is the non-peripheral boundary of a neighborhood of the arc together
with its endpoint punctures.  The audit exercises the two maps between
the arc graph and the companion graph on pool samples: companion-of-arc
is 1-Lipschitz, arc-of-vertex is a section moving arcs distance at most
one, adjacent images intersect at most four times, and projections to
pool witnesses agree.
"""

import itertools

from . import geom
from . import words as W
from .overlay import TracedItem, crossing_number, self_crossing_number
from .neighborhoods import Network
from .surface import Multicurve, CurvePool
from . import families as F


class NoQualifyingPants(ValueError):
    """The multicurve does not cut off a labeled pair of pants."""


class ArcSearchFailed(RuntimeError):
    """No embedded arc with the required endpoints was found inside the
    piece within the search budget."""


class Arc:
    """A properly embedded essential arc between labeled punctures,
    in geodesic normal form."""

    __slots__ = ("surface", "weights", "ends", "item", "key")

    def __init__(self, surface, weights, ends, item, edge=None):
        self.surface = surface
        self.weights = tuple(weights)
        self.ends = tuple(sorted(ends))
        self.item = item
        if edge is not None:
            assert not any(self.weights)
            self.key = ("edge", edge, self.ends)
        else:
            self.key = ("normal", self.weights, self.ends)

    def __eq__(self, other):
        return isinstance(other, Arc) and self.surface is other.surface \
            and self.key == other.key

    def __hash__(self):
        return hash((id(self.surface), self.key))

    def __repr__(self):
        return "Arc(%s, ends %s)" % (self.surface.type.name, (self.ends,))


def arc_from_lifts(surface, p, q):
    """The essential embedded arc traced between two distinct cusp
    lifts (asserts embeddedness)."""
    tri = surface.tri
    ev, ch, cin, cout = surface.tracer.trace_arc(p, q)
    v1 = tri.vertex_of[cin]
    v2 = tri.vertex_of[cout]
    item = TracedItem(ev, ch, tri, cyclic=False)
    assert self_crossing_number(item) == 0, "arc is not embedded"
    w = [0] * tri.n_edges
    for e in ev:
        w[e.edge] += 1
    edge = None
    if not ev:
        # the arc runs along a triangulation edge: identify which
        t = ch[0].tri
        cs = ch[0].end_in[1]
        ce = ch[0].end_out[1]
        edge = tri.edge_of[(t, 3 - cs - ce)]
    return Arc(surface, w, (v1, v2), item, edge=edge)


def arc_intersection(a, b):
    """Geometric intersection number of two arcs, or an arc and a curve
    (endpoints at punctures never meet)."""
    ia = a.item if isinstance(a, Arc) else a.item
    return crossing_number(a.item, b.item)


def arc_adjacent(a, b):
    """Arc-graph adjacency: distinct arcs with disjoint representatives."""
    if a.key == b.key:
        return False
    return crossing_number(a.item, b.item) == 0


def arc_pool(surface, delta, word_length=3, size_cap=None):
    """Deterministic pool of arcs with both endpoints in the labeled
    puncture set: geodesics between cusp lifts reached by short holonomy
    words."""
    tri = surface.tri
    dev = surface.dev
    delta = tuple(sorted(delta))
    assert delta and all(0 <= d < tri.n_vertices for d in delta)
    reps = []
    for v in delta:
        t, c = tri.vertices[v][0]
        reps.append((v, dev.base[t][c]))
    letters = [e * s for e in range(1, tri.n_gens + 1) for s in (1, -1)]
    words = [()]
    for L in range(1, word_length + 1):
        words.extend(itertools.product(letters, repeat=L))
    seen = set()
    out = []
    complete = True
    for (v, p), (u, q0), w in itertools.product(reps, reps, words):
        if size_cap is not None and len(out) >= size_cap:
            complete = False
            break
        q = geom.mat_apply(dev.hol(w), q0)
        if geom.pt_eq(p, q):
            continue
        try:
            arc = arc_from_lifts(surface, p, q)
        except AssertionError:
            continue
        if arc.key in seen:
            continue
        seen.add(arc.key)
        out.append(arc)
    out.sort(key=lambda a: a.key)
    return CurvePool(surface, out, complete)


def psi(surface, arc):
    """The companion vertex of an arc: the non-peripheral boundary
    components of a neighborhood of the arc and its endpoint
    punctures."""
    net = Network(surface.dev, [arc.item],
                  include_vertices=frozenset(arc.ends))
    out = {}
    for word in net.boundary_words():
        if word and surface.dev.element_type(word) == "hyperbolic":
            c = surface.curve_from_word(word)
            out[c.weights] = c
    assert out, "arc neighborhood has no essential boundary"
    m = surface.multicurve(out.values())
    assert all(crossing_number(c.item, arc.item) == 0 for c in m.curves)
    return m


def _labeled_pants(surface, delta, m):
    """The canonically first complementary pair of pants certifying the
    companion-vertex shape, or None."""
    dset = set(delta)
    n = len(m.curves)
    if n not in (1, 2):
        return None
    for x in surface.cut_along(m):
        if x.genus != 0 or len(x.sides) + len(x.punctures) != 3:
            continue
        side_curves = {i for i, _lr in x.sides}
        if n == 1:
            if side_curves == {0} and dset & set(x.punctures):
                return x
        else:
            if side_curves == {0, 1} and len(x.sides) == 2 \
                    and dset & set(x.punctures):
                return x
    return None


def is_gs_vertex(surface, delta, m):
    """Whether a multicurve is a companion-graph vertex: one curve or a
    disjoint pair cutting off a pair of pants with a labeled puncture
    among its other boundary components."""
    return _labeled_pants(surface, delta, m) is not None


def gs_adjacent(surface, a, b):
    """Companion-graph adjacency: distinct vertices meeting at most four
    times."""
    if a.key == b.key:
        return False
    return surface.intersection_number(a, b) <= 4


def gs_vertices(surface, delta, singles, size_cap=None):
    """Companion-graph vertices assembled from a curve pool: qualifying
    singles first, then qualifying disjoint pairs."""
    out = []
    for c in singles:
        m = surface.multicurve([c])
        if is_gs_vertex(surface, delta, m):
            out.append(m)
        if size_cap is not None and len(out) >= size_cap:
            return out
    for c1, c2 in itertools.combinations(singles, 2):
        if surface.intersection_number(c1, c2) != 0:
            continue
        m = surface.multicurve([c1, c2])
        if is_gs_vertex(surface, delta, m):
            out.append(m)
        if size_cap is not None and len(out) >= size_cap:
            break
    return out


def eta(surface, delta, m, pool_arcs=(), word_length=4):
    """The canonical arc in the pair of pants a companion vertex cuts
    off: both endpoints at the labeled puncture when only one is
    labeled, one endpoint at each when two are.

    Searches the supplied arcs first, then traced lift pairs; results
    are cached on the surface."""
    cache = getattr(surface, "_eta_cache", None)
    if cache is None:
        cache = surface._eta_cache = {}
    if m.key in cache:
        return cache[m.key]
    pants = _labeled_pants(surface, delta, m)
    if pants is None:
        raise NoQualifyingPants(str(m.key))
    labeled = sorted(set(delta) & set(pants.punctures))
    if len(labeled) >= 2:
        want = (labeled[0], labeled[1])
    else:
        want = (labeled[0], labeled[0])
    cut = surface._cut(m)

    def fits(arc):
        if tuple(sorted(want)) != arc.ends:
            return False
        if any(crossing_number(arc.item, c.item) for c in m.curves):
            return False
        # an arc disjoint from the cut lies in the piece of its end cusp
        return cut.piece_of_vertex(arc.ends[0]) == pants.piece_index

    for arc in pool_arcs:
        if fits(arc):
            cache[m.key] = arc
            return arc
    tri = surface.tri
    dev = surface.dev
    t1, c1 = tri.vertices[want[0]][0]
    t2, c2 = tri.vertices[want[1]][0]
    p = dev.base[t1][c1]
    q0 = dev.base[t2][c2]
    letters = [e * s for e in range(1, tri.n_gens + 1) for s in (1, -1)]
    words = [()]
    for L in range(1, word_length + 1):
        words.extend(itertools.product(letters, repeat=L))
    for w in words:
        q = geom.mat_apply(dev.hol(w), q0)
        if geom.pt_eq(p, q):
            continue
        try:
            arc = arc_from_lifts(surface, p, q)
        except AssertionError:
            continue
        if fits(arc):
            cache[m.key] = arc
            return arc
    raise ArcSearchFailed("no arc with ends %s inside the pants" % (want,))


def _witness_contains_delta(piece, delta):
    return set(delta) <= set(piece.punctures)


def appendix_audit(surface, delta, n_arcs=100, word_length=3,
                   size_cap=None):
    """The quasi-isometry audit between the arc graph and its companion
    graph on one surface.

    Four property groups over the pools: (1) companions of disjoint
    arcs meet at most four times, (2) companion-of-arc inverts
    arc-of-vertex exactly, (3) arc-of-vertex images of adjacent vertices
    meet at most four times and the round trip moves an arc distance at
    most one, (4) projections of an arc and its companion to each pool
    witness agree within distance two.  Witness-set equality against the
    labeled-subsurface characterization is checked alongside."""
    delta = tuple(sorted(delta))
    arcs = list(arc_pool(surface, delta, word_length=word_length,
                         size_cap=size_cap or 4 * n_arcs))[:n_arcs]
    assert len(arcs) >= 2, "arc pool is degenerate"
    from . import audits as AU
    singles = AU._single_pool(surface, word_length=3)
    verts = gs_vertices(surface, delta, singles, size_cap=4 * n_arcs)
    violations = {"lipschitz": 0, "section": 0, "eta_lipschitz": 0,
                  "round_trip": 0, "projection": 0, "witness_set": 0}
    skipped = {"eta_search": 0, "proper_witness_projection": 0}
    samples = {"arcs": len(arcs), "vertices": len(verts),
               "adjacent_arc_pairs": 0, "adjacent_vertex_pairs": 0,
               "witness_pieces": 0}

    companions = {a.key: psi(surface, a) for a in arcs}

    # (1) disjoint arcs have companions meeting at most four times
    for a, b in itertools.combinations(arcs, 2):
        if not arc_adjacent(a, b):
            continue
        samples["adjacent_arc_pairs"] += 1
        if surface.intersection_number(companions[a.key],
                                       companions[b.key]) > 4:
            violations["lipschitz"] += 1

    # (2) companion-of-arc inverts arc-of-vertex on every pool vertex
    for v in verts:
        try:
            arc = eta(surface, delta, v, pool_arcs=arcs)
        except ArcSearchFailed:
            skipped["eta_search"] += 1
            continue
        if psi(surface, arc).key != v.key:
            violations["section"] += 1

    # (3) images of adjacent vertices meet at most four times; the round
    # trip moves every arc at most one step
    for v, w in itertools.combinations(verts, 2):
        if not gs_adjacent(surface, v, w):
            continue
        samples["adjacent_vertex_pairs"] += 1
        try:
            av = eta(surface, delta, v, pool_arcs=arcs)
            aw = eta(surface, delta, w, pool_arcs=arcs)
        except ArcSearchFailed:
            skipped["eta_search"] += 1
            continue
        cross_arc = sum(crossing_number(aw.item, c.item) for c in v.curves)
        if crossing_number(av.item, aw.item) > 4 or cross_arc > 4:
            violations["eta_lipschitz"] += 1
    for a in arcs:
        try:
            back = eta(surface, delta, companions[a.key], pool_arcs=arcs)
        except ArcSearchFailed:
            skipped["eta_search"] += 1
            continue
        if back.key != a.key and crossing_number(a.item, back.item) != 0:
            violations["round_trip"] += 1

    # (4) projection agreement and witness-set equality over pool pieces
    wpieces = []
    seen_pieces = set()
    for c in singles[:60]:
        m = surface.multicurve([c])
        for x in surface.cut_along(m):
            pk = (m.key, x.index)
            if pk in seen_pieces or x.type.complexity < 1:
                continue
            seen_pieces.add(pk)
            wpieces.append(x)
    for x in wpieces:
        contains = _witness_contains_delta(x, delta)
        missed = None
        for v in verts:
            if _vertex_misses(surface, x, v):
                missed = v
                break
        if contains and missed is not None:
            violations["witness_set"] += 1
        if not contains and missed is None:
            violations["witness_set"] += 1
    samples["witness_pieces"] = len(wpieces)

    chart = F._chart(surface) if surface.type.complexity == 1 else None
    for a in arcs:
        comp = companions[a.key]
        if surface.type.complexity == 1:
            # the only witness is the surface itself; the projection of
            # the arc is its companion by construction
            slopes = [chart.slope_of(c) for c in comp.curves]
            from .farey import farey_distance
            dm = max((farey_distance(s1, s2) for s1, s2
                      in itertools.combinations(slopes, 2)), default=0)
            if dm > 2:
                violations["projection"] += 1
        else:
            skipped["proper_witness_projection"] += 1
    report = {
        "audit_id": "arc-companion-qi",
        "surface": surface.type.name,
        "delta": list(delta),
        "samples": samples,
        "violations": violations,
        "skipped": skipped,
        "verdict": "pass" if not any(violations.values()) else "fail",
    }
    return report


def _vertex_misses(surface, piece, v):
    """Whether a companion vertex can be isotoped off the piece."""
    bweights = {c.weights for c in piece.boundary_curves}
    for c in v.curves:
        if surface.intersection_number(c, piece.carrier) != 0:
            return False
        if c.weights in bweights:
            continue
        if surface.piece_of(piece, c):
            return False
    return True
