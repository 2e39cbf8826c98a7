"""Multicurve-graph families: membership, adjacency, balls and distances.

A GraphSpec packages one family of graphs-of-multicurves on a fixed
surface: the curve graph, the separating and non-separating curve graphs,
the pants graph, the cut-system graph, and the augmented graph k_of(G) whose
vertices are multicurves with no witness component in their complement and
whose edges are add/remove and flip moves.

Vertex sets are infinite, so balls and distances are always computed
relative to an explicit finite pool and carry completeness flags; exactness
is certified only by the continued-fraction Farey argument (complexity-one
curve graphs) or by a recorded pool-saturation criterion.
"""

import itertools
from collections import deque

from . import witnesses
from .farey import SlopeChart, farey_distance
from .surface import as_multicurve, Multicurve


class PoolTooSmall(RuntimeError):
    """The pool gives a vertex no neighbors although some must exist."""


class Disconnected(RuntimeError):
    """Endpoints not connected within the explored pool subgraph."""


class SpanDegenerate(ValueError):
    """A tightening step found a filling pair where the input path claimed
    non-adjacency; the input was not geodesic."""


class CompletionFailed(RuntimeError):
    """The pool was exhausted before a pants decomposition was reached."""


def _mc(surface, x):
    if hasattr(x, "curves"):
        return x
    return surface.multicurve([x])


def _is_separating(surface, curve):
    if surface.is_closed:
        return curve.kind == "sep"
    return len(surface.cut_along(_mc(surface, curve))) == 2


def min_sep_intersection(surface, pool=None):
    """Smallest positive intersection number between separating curves;
    the sporadic adjacency threshold, found by pool minimization."""
    if surface.is_closed:
        return surface.min_sep_intersection()
    if getattr(surface, "_min_sep", None) is None:
        if pool is None:
            pool = surface.generate_pool(surface.seeds, word_length=3)
        seps = [m.curves[0] for m in pool
                if len(m.curves) == 1 and _is_separating(surface, m.curves[0])]
        best = None
        for a, b in itertools.combinations(seps, 2):
            n = surface.intersection_number(a, b)
            if n > 0 and (best is None or n < best):
                best = n
        assert best is not None, "no intersecting separating pair in pool"
        surface._min_sep = best
    return surface._min_sep


# sep graphs on these types use the minimal-intersection adjacency
SPORADIC_SEP = ((1, 2), (2, 0), (2, 1))


class GraphSpec:
    """One graph-of-multicurves family on one surface."""

    def __init__(self, surface, family_id, base=None, vertex_predicate=None,
                 adjacency_rule=None, intersection_bound=None):
        self.surface = surface
        self.family_id = family_id
        self.base = base
        self._vertex = vertex_predicate
        self._adjacent = adjacency_rule
        self.intersection_bound = intersection_bound

    @property
    def witness_family(self):
        return witnesses.base_family(
            self.base.family_id if self.base else self.family_id)

    def is_vertex(self, m):
        m = _mc(self.surface, m)
        if self._vertex is not None:
            return self._vertex(m)
        return is_vertex(self, m)

    def adjacent(self, a, b):
        a = _mc(self.surface, a)
        b = _mc(self.surface, b)
        if self._adjacent is not None:
            return self._adjacent(a, b)
        return adjacent(self, a, b)

    def __repr__(self):
        return "GraphSpec(%s on %s)" % (self.family_id,
                                        self.surface.type.name)


def curve_graph(surface):
    r = 1 if surface.type == (1, 1) else (2 if surface.type == (0, 4) else 0)
    return GraphSpec(surface, "curve_graph", intersection_bound=r)


def sep_graph(surface):
    r = min_sep_intersection(surface) \
        if tuple(surface.type) in SPORADIC_SEP else 0
    return GraphSpec(surface, "sep", intersection_bound=r)


def nonsep_graph(surface):
    r = 1 if surface.type.genus == 1 else 0
    return GraphSpec(surface, "nonsep", intersection_bound=r)


def pants_graph(surface):
    return GraphSpec(surface, "pants", intersection_bound=2)


def cut_system_graph(surface):
    return GraphSpec(surface, "cut_system", intersection_bound=1)


def k_of(base_spec):
    return GraphSpec(base_spec.surface, "k_of:" + base_spec.family_id,
                     base=base_spec, intersection_bound=2)


def is_vertex(spec, m):
    """Family membership of a multicurve."""
    surface = spec.surface
    m = _mc(surface, m)
    if len(m.curves) == 0:
        return False
    fam = spec.family_id
    if fam == "curve_graph":
        return len(m.curves) == 1
    if fam == "sep":
        return len(m.curves) == 1 and _is_separating(surface, m.curves[0])
    if fam == "nonsep":
        return len(m.curves) == 1 \
            and not _is_separating(surface, m.curves[0])
    if fam == "pants":
        return len(m.curves) == surface.type.complexity
    if fam == "cut_system":
        if len(m.curves) != surface.type.genus:
            return False
        pieces = surface.cut_along(m)
        return len(pieces) == 1 and pieces[0].genus == 0
    if fam.startswith("k_of:"):
        for x in surface.cut_along(m):
            if witnesses.is_witness(spec.witness_family, surface, x):
                return False
        return True
    raise ValueError("unknown family %r" % fam)


def _piece_containing(surface, shared, curve):
    """The complementary component of the multicurve `shared` in which the
    curve lives (shared may be empty: the whole surface, returned as
    None)."""
    if len(shared.curves) == 0:
        return None
    for x in surface.cut_along(shared):
        if surface.piece_of(x, curve):
            return x
    raise AssertionError("curve lies in no component")


def _adjacent_in_piece(surface, piece, a, b):
    """Adjacency of two curves in the curve graph of a complementary
    component (minimal position inside the piece equals ambient minimal
    position)."""
    if a.key == b.key:
        return False
    i = surface.intersection_number(a, b)
    if piece is None:
        xi = surface.type.complexity
        genus = surface.type.genus
    else:
        xi = piece.type.complexity
        genus = piece.genus
    if xi == 1:
        return i == (1 if genus >= 1 else 2)
    return i == 0


def adjacent(spec, a, b):
    """Family adjacency rule."""
    surface = spec.surface
    a = _mc(surface, a)
    b = _mc(surface, b)
    if a == b or not (spec.is_vertex(a) and spec.is_vertex(b)):
        return False
    fam = spec.family_id
    if fam in ("curve_graph", "sep", "nonsep"):
        i = surface.intersection_number(a, b)
        if fam == "curve_graph" and surface.type.complexity == 1:
            return i == (1 if surface.type.genus == 1 else 2)
        if fam == "sep" and tuple(surface.type) in SPORADIC_SEP:
            return i == min_sep_intersection(surface)
        if fam == "nonsep" and surface.type.genus == 1:
            return i <= 1
        return i == 0
    if fam in ("pants", "cut_system"):
        ka = {c.key for c in a.curves}
        kb = {c.key for c in b.curves}
        if len(ka - kb) != 1 or len(kb - ka) != 1:
            return False
        ca = next(c for c in a.curves if c.key in ka - kb)
        cb = next(c for c in b.curves if c.key in kb - ka)
        shared = surface.multicurve([c for c in a.curves if c.key in kb])
        if fam == "cut_system":
            return surface.intersection_number(ca, cb) == 1
        piece = _piece_containing(surface, shared, ca)
        return _adjacent_in_piece(surface, piece, ca, cb)
    if fam.startswith("k_of:"):
        ka = {c.key for c in a.curves}
        kb = {c.key for c in b.curves}
        if ka == kb:
            return False
        if ka < kb and len(kb - ka) == 1:
            return True
        if kb < ka and len(ka - kb) == 1:
            return True
        if len(ka - kb) == 1 and len(kb - ka) == 1:
            ca = next(c for c in a.curves if c.key in ka - kb)
            cb = next(c for c in b.curves if c.key in kb - ka)
            shared = surface.multicurve([c for c in a.curves if c.key in kb])
            piece = _piece_containing(surface, shared, ca)
            return _adjacent_in_piece(surface, piece, ca, cb)
        return False
    raise ValueError("unknown family %r" % fam)


def flip_neighbors(spec, a, pool):
    """All pool neighbors of a k_of vertex: add-curve, remove-curve and
    flip moves."""
    surface = spec.surface
    assert spec.family_id.startswith("k_of:")
    a = _mc(surface, a)
    assert spec.is_vertex(a)
    keys = {c.key for c in a.curves}
    singles = _pool_curves(pool)
    out = {}
    # add moves: always give another vertex
    for c in singles:
        if c.key in keys or surface.intersection_number(c, a) != 0:
            continue
        n = surface.multicurve(list(a.curves) + [c])
        out[n.key] = n
    # remove moves: only when no witness component appears
    if len(a.curves) > 1:
        for c in a.curves:
            rest = surface.multicurve([d for d in a.curves
                                       if d.key != c.key])
            if spec.is_vertex(rest):
                out[rest.key] = rest
    # flip moves
    for c in a.curves:
        rest = [d for d in a.curves if d.key != c.key]
        shared = surface.multicurve(rest) if rest else None
        piece = None
        if shared is not None:
            piece = _piece_containing(surface, shared, c)
        for c2 in singles:
            if c2.key in keys:
                continue
            if rest and surface.intersection_number(
                    c2, surface.multicurve(rest)) != 0:
                continue
            if piece is not None and not surface.piece_of(piece, c2):
                continue
            if not _adjacent_in_piece(surface, piece, c, c2):
                continue
            n = surface.multicurve(rest + [c2])
            if spec.is_vertex(n):
                out[n.key] = n
    return [out[k] for k in sorted(out)]


def _pool_curves(pool):
    """The distinct single curves occurring in a pool of multicurves."""
    seen = {}
    for m in pool:
        for c in (m.curves if hasattr(m, "curves") else [m]):
            seen[c.key] = c
    return [seen[k] for k in sorted(seen)]


class Ball:
    """A pool-restricted BFS ball: distances exact within the explored
    subgraph, upper bounds for the true graph."""

    def __init__(self, spec, center, radius, pool, vertices, edges, dist,
                 complete):
        self.spec = spec
        self.center = center
        self.radius = radius
        self.pool = pool
        self.vertices = vertices
        self.edges = edges
        self.dist = dist
        self.complete = complete

    def __len__(self):
        return len(self.vertices)


def _move_neighbors(spec, v, pool):
    """Elementary-move neighbors of a pants or cut-system vertex built
    from pool curves (such vertices are not pool members themselves)."""
    surface = spec.surface
    singles = _pool_curves(pool)
    keys = {c.key for c in v.curves}
    out = {}
    for c in v.curves:
        rest = [d for d in v.curves if d.key != c.key]
        shared = surface.multicurve(rest) if rest else None
        piece = None
        if shared is not None:
            piece = _piece_containing(surface, shared, c)
        for c2 in singles:
            if c2.key in keys:
                continue
            if shared is not None and \
                    surface.intersection_number(c2, shared) != 0:
                continue
            if spec.family_id == "cut_system":
                if surface.intersection_number(c, c2) != 1:
                    continue
            else:
                if piece is not None and not surface.piece_of(piece, c2):
                    continue
                if not _adjacent_in_piece(surface, piece, c, c2):
                    continue
            n = surface.multicurve(rest + [c2])
            if spec.is_vertex(n):
                out[n.key] = n
    return [out[k] for k in sorted(out)]


def neighbors_in_pool(spec, v, pool, members=None):
    if spec.family_id.startswith("k_of:"):
        return flip_neighbors(spec, v, pool)
    if spec.family_id in ("pants", "cut_system"):
        return _move_neighbors(spec, v, pool)
    members = members if members is not None else \
        [m for m in pool if spec.is_vertex(m)]
    return [w for w in members if spec.adjacent(v, w)]


def ball(spec, center, radius, pool):
    """Deterministic BFS ball around a vertex in the pool subgraph."""
    center = _mc(spec.surface, center)
    assert spec.is_vertex(center)
    members = None
    if not spec.family_id.startswith("k_of:") \
            and spec.family_id not in ("pants", "cut_system"):
        members = [_mc(spec.surface, m) for m in pool]
        members = [m for m in members if spec.is_vertex(m)]
    dist = {center.key: 0}
    verts = {center.key: center}
    edges = set()
    frontier = [center]
    for d in range(1, radius + 1):
        nxt = []
        for v in frontier:
            for w in neighbors_in_pool(spec, v, pool, members):
                edges.add(tuple(sorted((v.key, w.key))))
                if w.key not in dist:
                    dist[w.key] = d
                    verts[w.key] = w
                    nxt.append(w)
        frontier = sorted(nxt, key=lambda m: m.key)
    complete = getattr(pool, "complete", False)
    return Ball(spec, center, radius, pool, verts, edges, dist, complete)


def distance(spec, a, b, pool, limit=None):
    """Pool-restricted distance with a certified-exactness flag.

    Exact on complexity-one curve graphs (continued fractions); otherwise
    the result is an upper bound unless the caller certifies saturation
    through certified_distance.  A depth limit makes the search raise
    Disconnected beyond that radius.
    """
    surface = spec.surface
    a = _mc(surface, a)
    b = _mc(surface, b)
    assert spec.is_vertex(a) and spec.is_vertex(b)
    if a == b:
        return {"upper_bound": 0, "exact": True, "path": [a],
                "method": "equal"}
    if spec.family_id == "curve_graph" and surface.type.complexity == 1 \
            and not surface.is_closed:
        chart = _chart(surface)
        d = farey_distance(chart.slope_of(a.curves[0]),
                           chart.slope_of(b.curves[0]))
        path = _bfs_path(spec, a, b, pool)
        if path is not None and len(path) - 1 == d:
            return {"upper_bound": d, "exact": True, "path": path,
                    "method": "farey"}
        return {"upper_bound": d, "exact": True, "path": None,
                "method": "farey"}
    path = _bfs_path(spec, a, b, pool, limit=limit)
    if path is None:
        raise Disconnected("no pool path between the endpoints")
    return {"upper_bound": len(path) - 1, "exact": False, "path": path,
            "method": "pool-bfs"}


def _chart(surface):
    if getattr(surface, "_slope_chart", None) is None:
        surface._slope_chart = SlopeChart(surface)
    return surface._slope_chart


def _bfs_path(spec, a, b, pool, limit=None):
    """Bidirectional breadth-first path search in the pool subgraph
    (returns None when the endpoints are not connected within the pool, or
    when the search depth exceeds the limit)."""
    if a.key == b.key:
        return [a]
    members = None
    if not spec.family_id.startswith("k_of:") \
            and spec.family_id not in ("pants", "cut_system"):
        members = [m for m in (_mc(spec.surface, x) for x in pool)
                   if spec.is_vertex(m)]
        keys = {m.key for m in members}
        for v in (a, b):
            if v.key not in keys:
                members.append(v)
    prev_a = {a.key: None}
    prev_b = {b.key: None}
    verts = {a.key: a, b.key: b}
    frontier_a = [a]
    frontier_b = [b]
    depth = 0

    def _unwind(meet_key):
        left = []
        k = meet_key
        while k is not None:
            left.append(verts[k])
            k = prev_a[k]
        left.reverse()
        k = prev_b[meet_key]
        while k is not None:
            left.append(verts[k])
            k = prev_b[k]
        return left

    while frontier_a and frontier_b:
        if limit is not None and depth >= limit:
            return None
        depth += 1
        fwd = len(frontier_a) <= len(frontier_b)
        frontier = frontier_a if fwd else frontier_b
        prev = prev_a if fwd else prev_b
        other = prev_b if fwd else prev_a
        nxt = []
        meet = None
        for v in frontier:
            for w in neighbors_in_pool(spec, v, pool, members):
                if w.key not in prev:
                    prev[w.key] = v.key
                    verts[w.key] = w
                    nxt.append(w)
                    if w.key in other:
                        meet = w.key
            if meet is not None:
                break
        if meet is not None:
            return _unwind(meet)
        if fwd:
            frontier_a = sorted(nxt, key=lambda m: m.key)
        else:
            frontier_b = sorted(nxt, key=lambda m: m.key)
    return None


def certified_distance(spec, a, b, budgets):
    """Distance with the saturation criterion: the value must survive two
    successive pool enlargements unchanged to be flagged heuristic-exact.

    budgets is an iterable of pools, coarse to fine.
    """
    values = []
    result = None
    for pool in budgets:
        try:
            result = distance(spec, a, b, pool)
        except Disconnected:
            values.append(None)
            continue
        if result["exact"]:
            return result
        values.append(result["upper_bound"])
        if len(values) >= 3 and values[-1] == values[-2] == values[-3] \
                and values[-1] is not None:
            result["exact"] = True
            result["method"] = "saturation"
            return result
    if result is None:
        raise Disconnected("no pool connected the endpoints")
    return result


class TightGeodesic:
    """A geodesic of multicurves with the spanning condition on interior
    vertices."""

    def __init__(self, vertices):
        self.vertices = tuple(vertices)
        assert self.vertices

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)


def tighten(surface, path):
    """Replace interior path vertices by the boundary of the subsurface
    spanned by their neighbors; on complexity-one surfaces a geodesic is
    already tight."""
    path = [_mc(surface, v) for v in path]
    if surface.type.complexity == 1 or len(path) <= 2:
        return TightGeodesic(path)
    for u, v in zip(path, path[1:]):
        assert surface.intersection_number(u, v) == 0, \
            "consecutive path terms must be disjoint"
    out = [path[0]]
    for i in range(1, len(path) - 1):
        try:
            span = surface.spanned_subsurface([path[i - 1], path[i + 1]])
        except Exception as e:
            raise SpanDegenerate(str(e))
        out.append(span)
    out.append(path[-1])
    for u, v in zip(out, out[1:]):
        assert surface.intersection_number(u, v) == 0
    return TightGeodesic(out)


def pants_completion(m, pool):
    """Extend a multicurve to a pants decomposition using pool curves."""
    surface = m.surface if hasattr(m, "surface") else m.curves[0].surface
    m = _mc(surface, m)
    comps = list(m.curves)
    keys = {c.key for c in comps}
    xi = surface.type.complexity
    for c in _pool_curves(pool):
        if len(comps) == xi:
            break
        if c.key in keys:
            continue
        if all(surface.intersection_number(c, d) == 0 for d in comps):
            comps.append(c)
            keys.add(c.key)
    if len(comps) != xi:
        raise CompletionFailed("pool exhausted at %d of %d curves"
                               % (len(comps), xi))
    out = surface.multicurve(comps)
    if not surface.is_closed:
        assert all(x.type.complexity == 0 for x in surface.cut_along(out))
    return out
