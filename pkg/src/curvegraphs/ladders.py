"""The combinatorial path machine for augmented multicurve graphs.

A vertical annulus system over the surface is recorded ordinally: a
totally ordered list of events stands in for the interval points where
cross-sections change, and each annulus is a base curve together with a
start and an end event.  Cross-sections between consecutive events are
multicurves; complementary components that persist across a span of
cross-sections are bricks.  Inserting tight ladders into non-small
witness bricks drives the complexity count to zero, after which the
cross-section sequence reads off a path in the augmented graph.
"""

import itertools

from .surface import Multicurve, as_multicurve
from . import families as F
from . import projections as PJ
from . import witnesses as WT


class NotMaximalComplexity(ValueError):
    """Ladder insertion targeted a brick that is not of maximal complexity
    among the non-small witness bricks."""


class EndpointMismatch(ValueError):
    """The supplied geodesic does not run between the brick's crossing
    curves."""


class Type2PlacementViolation(RuntimeError):
    """A skipped cross-section's neighbors are not adjacent, so the
    extracted sequence is not a path."""


class OracleFailure(RuntimeError):
    """The geodesic oracle could not produce a certified path within its
    budget."""


BOT = "bot"
TOP = "top"


class AnnulusSystem:
    """A generic annulus system over a surface, with an ordinal event
    list in place of interval endpoints.

    events is the ordered tuple of event ids (BOT first, TOP last); each
    interior event is the endpoint of exactly one annulus.  annuli is a
    tuple of (base curve, start event, end event).
    """

    __slots__ = ("surface", "family", "events", "annuli", "_gaps",
                 "_next_id")

    def __init__(self, surface, family, events, annuli, next_id):
        self.surface = surface
        self.family = family
        self.events = tuple(events)
        self.annuli = tuple(annuli)
        self._next_id = next_id
        self._gaps = None
        self._validate()

    def _validate(self):
        assert self.events[0] == BOT and self.events[-1] == TOP
        pos = {e: i for i, e in enumerate(self.events)}
        assert len(pos) == len(self.events), "duplicate event id"
        owners = {}
        for curve, s, e in self.annuli:
            assert pos[s] < pos[e], "degenerate annulus interval"
            for ev in (s, e):
                if ev in (BOT, TOP):
                    continue
                assert ev not in owners, "interior event shared: %r" % ev
                owners[ev] = curve
        for ev in self.events[1:-1]:
            assert ev in owners, "event %r has no annulus endpoint" % ev

    def event_position(self, ev):
        return self.events.index(ev)

    def gaps(self):
        """The cross-section multicurves, one per gap between consecutive
        events (pairwise disjointness of the active base curves is
        asserted by the multicurve constructor)."""
        if self._gaps is None:
            pos = {e: i for i, e in enumerate(self.events)}
            spans = [(pos[s], pos[e], c) for c, s, e in self.annuli]
            out = []
            for j in range(len(self.events) - 1):
                active = [c for (ps, pe, c) in spans if ps <= j < pe]
                out.append(self.surface.multicurve(active))
            self._gaps = out
        return self._gaps

    def sequence_length(self):
        """Length of the multicurve sequence (the gap count)."""
        return len(self.events) - 1

    def event_curve(self, ev):
        """The base curve whose annulus starts or ends at an interior
        event."""
        for curve, s, e in self.annuli:
            if ev in (s, e):
                return curve
        raise KeyError(ev)

    def fresh_id(self):
        self._next_id += 1
        return self._next_id - 1

    def __repr__(self):
        return "AnnulusSystem(%s, %d events, %d annuli)" % (
            self.surface.type.name, len(self.events), len(self.annuli))


NOT_SMALL = "not-small"
TYPE1 = "type1"
TYPE2 = "type2"


class Brick:
    """A complementary component persisting over a span of gaps.

    base_first and base_last are the component as a piece of the first
    and last cross-section of the span (the same region of the surface,
    cut along different multicurves).  start_event and end_event are the
    bounding events, None at the bottom or top of the system.
    """

    __slots__ = ("base_first", "base_last", "gap_range", "start_event",
                 "end_event", "smallness", "crossing_start",
                 "crossing_end")

    def __init__(self, base_first, base_last, gap_range, start_event,
                 end_event):
        self.base_first = base_first
        self.base_last = base_last
        self.gap_range = gap_range
        self.start_event = start_event
        self.end_event = end_event
        self.smallness = None
        self.crossing_start = None
        self.crossing_end = None

    @property
    def complexity(self):
        return self.base_first.type.complexity

    def __repr__(self):
        return "Brick(%s, gaps %s, %s)" % (self.base_first.type.name,
                                           self.gap_range, self.smallness)


def _side_keys(piece):
    return {(piece.carrier.curves[i].weights, lr) for i, lr in piece.sides}


def _persistence(fine_pieces, coarse_pieces, gamma):
    """Match pieces across one event: a piece of the finer cut (the side
    containing gamma) persists iff gamma misses its boundary, and its
    coarse twin is the unique piece sharing a boundary side or a label."""
    coarse_by_side = {}
    coarse_by_label = {}
    for p in coarse_pieces:
        for sk in _side_keys(p):
            coarse_by_side[sk] = p
        for lab in p.punctures:
            coarse_by_label[lab] = p
    out = {}
    for p in fine_pieces:
        sides = _side_keys(p)
        if any(w == gamma.weights for w, _lr in sides):
            continue
        twins = {id(coarse_by_side[sk]): coarse_by_side[sk]
                 for sk in sides if sk in coarse_by_side}
        for lab in p.punctures:
            if lab in coarse_by_label:
                q = coarse_by_label[lab]
                twins[id(q)] = q
        assert len(twins) == 1, "ambiguous piece persistence"
        out[p] = next(iter(twins.values()))
    return out


def _interior_curve(surface, piece, curve):
    """Whether the curve lies in the piece and is not one of its boundary
    sides."""
    if curve.weights in {c.weights for c in piece.boundary_curves}:
        return False
    return surface.piece_of(piece, curve)


def bricks(system):
    """The bricks of the system, smallness classified against its witness
    family.

    A brick is Type 1 small when its base is not a witness; Type 2 small
    when the base is a complexity-one witness spanning a single gap whose
    two crossing curves are interior and adjacent in the base's curve
    graph.  Complexity-one witness bricks failing the single-gap
    placement are left non-small, so a length-respecting ladder will
    rebuild them in place."""
    surface = system.surface
    gaps = system.gaps()
    per_gap = [surface.cut_along(m) for m in gaps]
    open_bricks = {}
    done = []
    for p in per_gap[0]:
        open_bricks[id(p)] = Brick(p, p, [0, 0], None, None)
    for j in range(len(gaps) - 1):
        ev = system.events[j + 1]
        gamma = system.event_curve(ev)
        added = len(gaps[j + 1].curves) > len(gaps[j].curves)
        if added:
            fine, coarse = per_gap[j + 1], per_gap[j]
            match = _persistence(fine, coarse, gamma)
            fwd = {id(c): f for f, c in match.items()}
        else:
            fine, coarse = per_gap[j], per_gap[j + 1]
            match = _persistence(fine, coarse, gamma)
            fwd = {id(f): c for f, c in match.items()}
        nxt = {}
        matched_next = set()
        for pid, brick in open_bricks.items():
            q = fwd.get(pid)
            if q is None:
                brick.end_event = ev
                done.append(brick)
            else:
                brick.base_last = q
                brick.gap_range[1] = j + 1
                nxt[id(q)] = brick
                matched_next.add(id(q))
        for p in per_gap[j + 1]:
            if id(p) not in matched_next:
                nxt[id(p)] = Brick(p, p, [j + 1, j + 1], ev, None)
        open_bricks = nxt
    done.extend(open_bricks.values())
    for b in done:
        _classify(system, b)
    done.sort(key=lambda b: (b.gap_range[0], b.base_first.sort_key()))
    return done


def _classify(system, brick):
    surface = system.surface
    x = brick.base_first
    if brick.start_event is not None:
        c = system.event_curve(brick.start_event)
        if _interior_curve(surface, x, c):
            brick.crossing_start = c
    if brick.end_event is not None:
        c = system.event_curve(brick.end_event)
        if _interior_curve(surface, brick.base_last, c):
            brick.crossing_end = c
    if not WT.is_witness(system.family, surface, x):
        brick.smallness = TYPE1
        return
    if x.type.complexity == 1 \
            and brick.gap_range[0] == brick.gap_range[1] \
            and brick.crossing_start is not None \
            and brick.crossing_end is not None \
            and F._adjacent_in_piece(surface, x, brick.crossing_start,
                                     brick.crossing_end):
        brick.smallness = TYPE2
        return
    brick.smallness = NOT_SMALL


class KComplexity:
    """Counts of non-small witness bricks by base complexity, highest
    complexity first, compared lexicographically."""

    __slots__ = ("counts",)

    def __init__(self, counts):
        self.counts = tuple(counts)

    @classmethod
    def of(cls, system, brick_list=None):
        bl = bricks(system) if brick_list is None else brick_list
        xi = system.surface.type.complexity
        counts = [0] * xi
        for b in bl:
            if b.smallness == NOT_SMALL \
                    and WT.is_witness(system.family, system.surface,
                                      b.base_first):
                counts[xi - b.complexity] += 1
        return cls(counts)

    @property
    def is_zero(self):
        return not any(self.counts)

    def __lt__(self, other):
        return self.counts < other.counts

    def __eq__(self, other):
        return isinstance(other, KComplexity) \
            and self.counts == other.counts

    def __repr__(self):
        return "KComplexity%s" % (self.counts,)


def k_complexity(system):
    return KComplexity.of(system)


def initial_system(surface, family, a, b):
    """The starting system: each curve of a anchored at the bottom, each
    curve of b at the top, with all a-annuli ending before any b-annulus
    starts."""
    a = as_multicurve(surface, a)
    b = as_multicurve(surface, b)
    events = [BOT]
    annuli = []
    nid = 0
    for c in sorted(a.curves, key=lambda c: c.weights):
        events.append(nid)
        annuli.append((c, BOT, nid))
        nid += 1
    for c in sorted(b.curves, key=lambda c: c.weights):
        events.append(nid)
        annuli.append((c, nid, TOP))
        nid += 1
    events.append(TOP)
    return AnnulusSystem(surface, family, events, annuli, nid)


def _ladder_vertices(surface, geodesic):
    vs = [as_multicurve(surface, v) for v in geodesic]
    assert len(vs) >= 1
    assert len(vs[0].curves) == 1 and len(vs[-1].curves) == 1, \
        "ladder endpoints must be single curves"
    return vs


def insert_ladder(system, brick, geodesic):
    """A new system containing the old one plus a tight ladder filling
    the brick.

    The brick's crossing annuli are extended into the brick (their old
    endpoint events are reused as the outermost ladder events), interior
    ladder vertices get fresh annuli, and the whole ladder block is
    inserted contiguously.  The sequence-length increase is checked
    against 2n xi(Y) - 2 for a ladder of length n."""
    surface = system.surface
    all_bricks = bricks(system)
    if brick.smallness != NOT_SMALL \
            or not WT.is_witness(system.family, surface, brick.base_first):
        raise NotMaximalComplexity("brick is not a non-small witness brick")
    top = max(b.complexity for b in all_bricks
              if b.smallness == NOT_SMALL
              and WT.is_witness(system.family, surface, b.base_first))
    if brick.complexity != top:
        raise NotMaximalComplexity("brick complexity %d < maximal %d"
                                   % (brick.complexity, top))
    assert brick.start_event is not None and brick.end_event is not None, \
        "a non-small witness brick cannot touch the system boundary"
    gm = brick.crossing_start
    gp = brick.crossing_end
    assert gm is not None and gp is not None, \
        "crossing curves are peripheral in the brick"
    vs = _ladder_vertices(surface, geodesic)
    if vs[0].curves[0].weights != gm.weights \
            or vs[-1].curves[0].weights != gp.weights:
        raise EndpointMismatch("geodesic runs %r -> %r, brick crosses "
                               "%r -> %r" % (vs[0].key, vs[-1].key,
                                             (gm.weights,), (gp.weights,)))
    xi_y = brick.base_first.type.complexity
    n = len(vs) - 1
    events = list(system.events)
    annuli = list(system.annuli)
    nid = system._next_id
    pos_minus = events.index(brick.start_event)
    pos_plus = events.index(brick.end_event)
    assert pos_minus < pos_plus

    ai_minus = next(i for i, (c, s, e) in enumerate(annuli)
                    if e == brick.start_event)
    ai_plus = next(i for i, (c, s, e) in enumerate(annuli)
                   if s == brick.end_event)
    old_len = system.sequence_length()

    if n == 0:
        # the two crossing annuli share a base curve: merge them
        c, s, _e = annuli[ai_minus]
        _c2, _s2, e2 = annuli[ai_plus]
        assert c.weights == _c2.weights
        annuli[ai_minus] = (c, s, e2)
        del annuli[ai_plus]
        events.remove(brick.start_event)
        events.remove(brick.end_event)
        out = AnnulusSystem(surface, system.family, events, annuli, nid)
        assert out.sequence_length() - old_len <= -2
        return out

    # fresh ids for every ladder endpoint: interior vertices get start and
    # end events, the crossing annuli get one repositioned endpoint each
    starts = {}
    ends = {}
    for i, v in enumerate(vs):
        for c in v.curves:
            if i > 0:
                starts[(i, c.weights)] = nid
                nid += 1
            if i < n:
                ends[(i, c.weights)] = nid
                nid += 1
    block = []
    if xi_y >= 2:
        for i in range(n):
            for c in sorted(vs[i + 1].curves, key=lambda c: c.weights):
                block.append(starts[(i + 1, c.weights)])
            for c in sorted(vs[i].curves, key=lambda c: c.weights):
                block.append(ends[(i, c.weights)])
    else:
        for i in range(n):
            block.append(ends[(i, vs[i].curves[0].weights)])
            block.append(starts[(i + 1, vs[i + 1].curves[0].weights)])

    c, s, _e = annuli[ai_minus]
    annuli[ai_minus] = (c, s, ends[(0, c.weights)])
    c, _s, e = annuli[ai_plus]
    annuli[ai_plus] = (c, starts[(n, c.weights)], e)
    for i in range(1, n):
        for c in vs[i].curves:
            annuli.append((c, starts[(i, c.weights)],
                           ends[(i, c.weights)]))

    del events[pos_plus]
    del events[pos_minus]
    events[pos_minus:pos_minus] = block
    out = AnnulusSystem(surface, system.family, events, annuli, nid)
    increase = out.sequence_length() - old_len
    assert increase <= 2 * n * xi_y - 2, \
        "ladder increase %d exceeds %d" % (increase, 2 * n * xi_y - 2)
    return out


def extract_path(system):
    """The vertex sequence the system realizes in the augmented graph.

    Requires every brick small.  Cross-sections whose complement still
    contains a witness (the Type 2 skips) are dropped; every surviving
    consecutive pair is re-verified against the augmented adjacency
    rule."""
    surface = system.surface
    bl = bricks(system)
    kc = KComplexity.of(system, bl)
    assert kc.is_zero, "system has non-small witness bricks: %r" % kc
    kspec = _kspec(surface, system.family)
    seq = system.gaps()
    kept = []
    dropped_runs = 0
    for m in seq:
        if kspec.is_vertex(m):
            kept.append(m)
            dropped_runs = 0
        else:
            dropped_runs += 1
            if dropped_runs > 1:
                raise Type2PlacementViolation(
                    "two consecutive skipped cross-sections")
    assert kept, "no augmented-graph vertices in the sequence"
    out = [kept[0]]
    for m in kept[1:]:
        if m == out[-1]:
            continue
        if not F.adjacent(kspec, out[-1], m):
            raise Type2PlacementViolation(
                "consecutive sequence terms are not adjacent")
        out.append(m)
    return out


def _kspec(surface, family):
    builders = {"curve_graph": F.curve_graph, "sep": F.sep_graph,
                "nonsep": F.nonsep_graph, "pants": F.pants_graph,
                "cut_system": F.cut_system_graph}
    return F.k_of(builders[family](surface))


def recursion_bounds(K, xi, M):
    """The termination table (T_i, L_i): T_i bounds the multicurve
    sequence length once every non-small brick has complexity below i,
    and L_i bounds the stage count to get there."""
    assert K >= 1 and xi >= 1 and M >= 1
    T = {xi: (2 * K + 2) * xi}
    L = {xi: 1}
    for i in range(xi - 1, 0, -1):
        T[i] = T[i + 1] + 4 * T[i + 1] * (K + 2 * M * L[i + 1]) * xi \
            + 8 * M * T[i + 1] ** 2 * xi
        L[i] = L[i + 1] + 2 * T[i + 1]
    out = {}
    for i in T:
        out["T_%d" % i] = T[i]
        out["L_%d" % i] = L[i]
    return out


def default_geodesic_oracle(surface, pool):
    """A pool-backed geodesic oracle: whole-surface requests go through
    the curve-graph machinery with tightening; complexity-one pieces are
    searched over the in-piece pool enriched by twist images of the
    endpoints, with the slope-chart distance as an exactness check when
    one is available."""
    singles = F._pool_curves(pool)

    def oracle(piece, gm, gp):
        if gm.weights == gp.weights:
            return [as_multicurve(surface, gm)], "equal"
        if len(piece.carrier.curves) == 0:
            cspec = F.curve_graph(surface)
            res = F.distance(cspec, gm, gp, pool)
            if res["path"] is None:
                raise OracleFailure("no pool geodesic on the surface")
            tg = F.tighten(surface, res["path"])
            return list(tg), res["method"]
        cands = {}
        for c in singles:
            if surface.intersection_number(c, piece.carrier) == 0 \
                    and _interior_curve(surface, piece, c):
                cands[c.weights] = c
        for x, y in ((gm, gp), (gp, gm)):
            for k in (1, -1, 2, -2, 3, -3):
                t = surface.twist_about(y, x, power=k)
                cands[t.weights] = t
        cands[gm.weights] = gm
        cands[gp.weights] = gp
        path = _piece_bfs(surface, piece, gm, gp, list(cands.values()))
        if path is None:
            raise OracleFailure("no in-piece path between the crossing "
                                "curves")
        method = "pool-upper"
        if piece.type.complexity == 1:
            try:
                o = PJ.oracle_for(surface, piece, list(cands.values()))
                if o.distance(gm, gp) == len(path) - 1:
                    method = "exact"
            except (PJ.PoolTooThin, PJ.TiePoint, PJ.PoolDisconnected):
                pass
        return [as_multicurve(surface, c) for c in path], method

    return oracle


def _piece_bfs(surface, piece, src, dst, cands):
    """Shortest path from src to dst under curve-graph adjacency inside
    the piece, over the candidate curves."""
    prev = {src.weights: None}
    by_w = {c.weights: c for c in cands}
    by_w[src.weights] = src
    by_w[dst.weights] = dst
    frontier = [src]
    while frontier:
        nxt = []
        for v in frontier:
            for c in by_w.values():
                if c.weights in prev:
                    continue
                if F._adjacent_in_piece(surface, piece, v, c):
                    prev[c.weights] = v.weights
                    if c.weights == dst.weights:
                        path = [c]
                        w = v.weights
                        while w is not None:
                            path.append(by_w[w])
                            w = prev[w]
                        return path[::-1]
                    nxt.append(c)
        frontier = nxt
    return None


def build_path(surface, family, a, b, K, pool, bgi_constant=1,
               oracle=None, check_projections=True):
    """A certified path between two augmented-graph vertices.

    Repeatedly fills the maximal-complexity non-small witness brick with
    a tight ladder until every brick is small, then extracts the path.
    The certificate records, per stage, the ladder length, the
    sequence-length increase against its bound, the complexity count
    before and after, the brick-count bound, and (optionally) the
    projection diameter of the accumulated base curves over a pool of
    witness pieces against K + 2 M k."""
    a = as_multicurve(surface, a)
    b = as_multicurve(surface, b)
    kspec = _kspec(surface, family)
    assert kspec.is_vertex(a) and kspec.is_vertex(b), \
        "endpoints must be augmented-graph vertices"
    xi = surface.type.complexity
    table = recursion_bounds(K, xi, bgi_constant)
    cert = {"K": K, "bgi_constant": bgi_constant, "bounds": table,
            "stages": [], "checks_passed": True}
    if a == b:
        cert["path_length"] = 0
        return {"path": [a], "certificate": cert}
    if oracle is None:
        oracle = default_geodesic_oracle(surface, pool)

    watch = []
    if check_projections:
        watch = _projection_watch(surface, a, b)
    proj_sets = [dict() for _x in watch]

    sys0 = initial_system(surface, family, a, b)
    _feed_projections(surface, watch, proj_sets,
                      [c for c, _s, _e in sys0.annuli])
    system = sys0
    kc = KComplexity.of(system)
    stage = 0
    while not kc.is_zero:
        if stage >= table["L_1"]:
            raise OracleFailure("stage count exceeded L_1 = %d"
                               % table["L_1"])
        bl = bricks(system)
        cand = [x for x in bl if x.smallness == NOT_SMALL
                and WT.is_witness(family, surface, x.base_first)]
        top = max(x.complexity for x in cand)
        brick = min((x for x in cand if x.complexity == top),
                    key=lambda x: (x.gap_range[0],
                                   x.base_first.sort_key()))
        gm, gp = brick.crossing_start, brick.crossing_end
        assert gm is not None and gp is not None
        geodesic, method = oracle(brick.base_first, gm, gp)
        n = len(geodesic) - 1
        before = system.sequence_length()
        nxt = insert_ladder(system, brick, geodesic)
        kc2 = KComplexity.of(nxt)
        entry = {
            "stage": stage,
            "brick": {"base": brick.base_first.type.name,
                      "complexity": brick.complexity,
                      "gaps": list(brick.gap_range)},
            "ladder_length": n,
            "geodesic_method": method,
            "increase": nxt.sequence_length() - before,
            "increase_bound": 2 * n * brick.complexity - 2,
            "k_complexity_before": list(kc.counts),
            "k_complexity_after": list(kc2.counts),
        }
        assert entry["increase"] <= entry["increase_bound"]
        assert kc2 < kc, "complexity did not decrease"
        seq_len = nxt.sequence_length()
        brick_count = len(bricks(nxt))
        entry["brick_count"] = brick_count
        entry["brick_count_bound"] = 1.5 * seq_len + xi
        assert brick_count <= entry["brick_count_bound"]
        if watch:
            new_curves = [c for i, v in enumerate(geodesic) if 0 < i < n
                          for c in v.curves]
            _feed_projections(surface, watch, proj_sets, new_curves)
            diams = _projection_diameters(surface, watch, proj_sets)
            bound = K + 2 * bgi_constant * (stage + 1)
            entry["projection_diameters"] = diams
            entry["projection_bound"] = bound
            if any(d is not None and d > bound for d in diams):
                cert["checks_passed"] = False
        cert["stages"].append(entry)
        system, kc = nxt, kc2
        stage += 1
    path = extract_path(system)
    assert path[0] == a and path[-1] == b
    cert["path_length"] = len(path) - 1
    cert["length_bound"] = table["T_1"]
    assert cert["path_length"] <= table["T_1"], \
        "path length %d exceeds T_1 = %d" % (cert["path_length"],
                                             table["T_1"])
    return {"path": path, "certificate": cert}


def _projection_watch(surface, a, b):
    """Complexity-ge-1 witness-candidate pieces cut off by curves built
    from the endpoints, used for the per-stage projection-growth
    check."""
    carriers = {}
    for c in itertools.chain(a.curves, b.curves):
        carriers[(c.weights,)] = surface.multicurve([c])
    pieces = []
    for m in carriers.values():
        for x in surface.cut_along(m):
            if x.type.complexity >= 1:
                pieces.append(x)
    return pieces[:8]


def _feed_projections(surface, watch, proj_sets, curves):
    for x, acc in zip(watch, proj_sets):
        for c in curves:
            try:
                for p in PJ.project(surface, x, surface.multicurve([c])):
                    acc[p.weights] = p
            except (PJ.TiePoint, AssertionError):
                continue


def _projection_diameters(surface, watch, proj_sets):
    out = []
    for x, acc in zip(watch, proj_sets):
        if len(acc) < 2:
            out.append(0 if acc else None)
            continue
        try:
            o = PJ.oracle_for(surface, x, list(acc.values()))
            out.append(o.diameter(list(acc.values())))
        except (PJ.PoolTooThin, PJ.TiePoint, PJ.PoolDisconnected):
            out.append(None)
    return out
