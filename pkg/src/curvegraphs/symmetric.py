"""Closed surfaces through the hyperelliptic double cover.

A closed surface S_g is the double cover of a sphere with 2g + 2 punctures,
branched over the punctures.  Every isotopy class of essential simple closed
curve admits a symmetric representative, and the symmetric classes are
dictionary-coded downstairs:

  * separating curve upstairs  <->  downstairs curve enclosing an odd number
    of branch punctures (at least 3);
  * non-separating curve upstairs  <->  embedded downstairs arc joining two
    distinct branch punctures.

Intersection numbers upstairs reduce to exact downstairs counts: each
interior crossing downstairs has two preimages, and two arcs sharing an
endpoint contribute one crossing at the branch point.  Curves enclosing an
even number of punctures lift to pairs of curves isotopic to arc lifts, so
the two families above already carry every symmetric class.
"""

import itertools

from . import geom
from .overlay import TracedItem, crossing_number, self_crossing_number
from .arrangement import Cut
from .neighborhoods import Network
from .surface import Surface, SurfaceType, CurvePool


class CCurve:
    """A symmetric simple closed curve on a closed surface.

    kind is "sep" (carried by a downstairs odd-enclosure curve) or "nonsep"
    (carried by a downstairs arc between two distinct branch punctures).
    """

    __slots__ = ("surface", "kind", "dcurve", "ends", "weights", "item")

    def __init__(self, surface, kind, dcurve=None, ends=None, weights=None,
                 item=None):
        self.surface = surface
        self.kind = kind
        self.dcurve = dcurve
        self.ends = ends
        self.weights = weights
        self.item = item

    @property
    def key(self):
        if self.kind == "sep":
            return ("s", self.dcurve.weights)
        return ("n",) + self.ends + (self.weights,)

    def __eq__(self, other):
        return (isinstance(other, CCurve)
                and self.surface is other.surface and self.key == other.key)

    def __hash__(self):
        return hash((id(self.surface), self.key))

    def __repr__(self):
        return "CCurve(%s, %s)" % (self.surface.type.name, self.kind)


class CMulticurve:
    """Pairwise-disjoint, pairwise-distinct symmetric curves."""

    __slots__ = ("surface", "curves")

    def __init__(self, surface, curves):
        cs = sorted(curves, key=lambda c: c.key)
        assert all(c.surface is surface for c in cs)
        assert len({c.key for c in cs}) == len(cs), "repeated component"
        self.surface = surface
        self.curves = tuple(cs)

    @property
    def key(self):
        return tuple(c.key for c in self.curves)

    def __len__(self):
        return len(self.curves)

    def __iter__(self):
        return iter(self.curves)

    def __eq__(self, other):
        return (isinstance(other, CMulticurve)
                and self.surface is other.surface and self.key == other.key)

    def __hash__(self):
        return hash((id(self.surface), self.key))

    def __repr__(self):
        return "CMulticurve(%s, %d comps)" % (self.surface.type.name,
                                              len(self.curves))


class ClosedSubsurface:
    """A complementary component of a symmetric multicurve upstairs.

    sides lists the carrier component index under each boundary circle (a
    component index appears once per circle lying over it).
    """

    __slots__ = ("surface", "carrier", "genus", "sides", "index", "dpiece",
                 "copy")

    def __init__(self, surface, carrier, genus, sides, dpiece, copy=0):
        self.surface = surface
        self.carrier = carrier
        self.genus = genus
        self.sides = tuple(sides)
        self.dpiece = dpiece
        self.copy = copy
        self.index = None

    punctures = ()

    @property
    def top_type(self):
        return (self.genus, len(self.sides), 0)

    @property
    def type(self):
        return SurfaceType(self.genus, len(self.sides))

    @property
    def boundary_labels(self):
        return ()

    @property
    def boundary_curves(self):
        return tuple(self.carrier.curves[i] for i in self.sides)

    def sort_key(self):
        return (self.top_type,
                tuple(sorted(self.carrier.curves[i].key for i in self.sides)),
                self.copy)

    def __eq__(self, other):
        return (isinstance(other, ClosedSubsurface)
                and self.surface is other.surface
                and self.carrier == other.carrier
                and self.index == other.index)

    def __hash__(self):
        return hash((id(self.surface), self.carrier.key, self.index))

    def __repr__(self):
        return "ClosedSubsurface(%s #%s in %s)" % (
            self.type.name, self.index, self.surface.type.name)


class ClosedSurface:
    """A closed surface S_g backed by its branched double cover model."""

    is_closed = True

    def __init__(self, genus):
        assert genus >= 2
        self.type = SurfaceType(genus, 0)
        self.genus = genus
        self.down = Surface(0, 2 * genus + 2)
        assert self.down.tri.n_vertices == 2 * genus + 2
        self._parity = {}
        self._enc = {}
        self._cut_cache = {}
        self._by_key = {}
        self._min_sep = None
        self._icache = {}

    # -- curve classes -----------------------------------------------------

    def sep_from_down(self, dcurve):
        """The separating curve lying over an odd-enclosure downstairs
        curve."""
        assert self.enclosure_parity(dcurve) == 1, "curve is not odd"
        c = CCurve(self, "sep", dcurve=dcurve)
        return self._by_key.setdefault(c.key, c)

    def enclosure_parity(self, dcurve):
        """Parity of the branch punctures on either side of a downstairs
        curve."""
        if dcurve.weights not in self._parity:
            pieces = self.down.cut_along(dcurve)
            assert len(pieces) == 2
            self._parity[dcurve.weights] = len(pieces[0].punctures) % 2
        return self._parity[dcurve.weights]

    def arc_from_lifts(self, p, q):
        """The non-separating curve lying over the downstairs geodesic arc
        between two distinct branch-puncture lifts."""
        tr = self.down.tracer
        ev, ch, cin, cout = tr.trace_arc(p, q)
        v1 = self.down.tri.vertex_of[cin]
        v2 = self.down.tri.vertex_of[cout]
        assert v1 != v2, "self-arcs do not carry symmetric classes"
        item = TracedItem(ev, ch, self.down.tri, cyclic=False)
        assert self_crossing_number(item) == 0, "arc is not embedded"
        w = [0] * self.down.tri.n_edges
        for e in ev:
            w[e.edge] += 1
        c = CCurve(self, "nonsep", ends=(min(v1, v2), max(v1, v2)),
                   weights=tuple(w), item=item)
        return self._by_key.setdefault(c.key, c)

    # -- intersections -----------------------------------------------------

    def _pair_intersection(self, a, b):
        if a.key == b.key:
            return 0
        k = (a.key, b.key) if a.key < b.key else (b.key, a.key)
        n = self._icache.get(k)
        if n is None:
            n = self._pair_intersection_raw(a, b)
            self._icache[k] = n
        return n

    def _pair_intersection_raw(self, a, b):
        if a.kind == "sep" and b.kind == "sep":
            return 2 * crossing_number(a.dcurve.item, b.dcurve.item)
        if a.kind == "sep":
            return 2 * crossing_number(a.dcurve.item, b.item)
        if b.kind == "sep":
            return 2 * crossing_number(b.dcurve.item, a.item)
        shared = len(set(a.ends) & set(b.ends))
        return 2 * crossing_number(a.item, b.item) + shared

    def intersection_number(self, a, b):
        ca = a.curves if isinstance(a, CMulticurve) else (a,)
        cb = b.curves if isinstance(b, CMulticurve) else (b,)
        return sum(self._pair_intersection(x, y) for x in ca for y in cb)

    def multicurve(self, curves):
        cs = list(curves)
        for x, y in itertools.combinations(cs, 2):
            assert self.intersection_number(x, y) == 0, "components cross"
        return CMulticurve(self, cs)

    # -- cutting -----------------------------------------------------------

    def _enclosure_curve(self, arc):
        """Boundary of a neighborhood of the arc and its two endpoint
        punctures: the even downstairs curve bounding the arc's disk."""
        if arc.key not in self._enc:
            net = Network(self.down.dev, [arc.item],
                          include_vertices=frozenset(arc.ends))
            ws = [w for w in net.boundary_words()
                  if w and self.down.dev.element_type(w) == "hyperbolic"]
            assert len(ws) == 1, "arc neighborhood should have one boundary"
            self._enc[arc.key] = self.down.curve_from_word(ws[0])
        return self._enc[arc.key]

    def cut_along(self, m):
        """Complementary subsurfaces of a symmetric multicurve.

        Computed downstairs: arcs are replaced by their enclosure curves and
        each piece is lifted through the branched cover (a piece with branch
        punctures or an odd boundary circle lifts connectedly; a piece with
        trivial monodromy lifts to two copies).
        """
        if not isinstance(m, CMulticurve):
            m = CMulticurve(self, [m] if isinstance(m, CCurve) else list(m))
        if m.key in self._cut_cache:
            return self._cut_cache[m.key]
        down_items = []
        arc_vertices = {}
        for i, c in enumerate(m.curves):
            if c.kind == "sep":
                down_items.append(c.dcurve.item)
            else:
                down_items.append(self._enclosure_curve(c).item)
                arc_vertices[c.ends[0]] = i
                arc_vertices[c.ends[1]] = i
        cut = Cut(self.down.tri, down_items)
        subs = []
        for piece in cut.pieces:
            if piece.punctures and piece.punctures[0] in arc_vertices \
                    and len(piece.sides) == 1 and len(piece.punctures) == 2:
                i = arc_vertices[piece.punctures[0]]
                if m.curves[i].kind == "nonsep" \
                        and set(piece.punctures) == set(m.curves[i].ends):
                    continue        # the arc's own disk: lifts to the annulus
            mp = len(piece.punctures)
            sides_up = []
            has_odd = False
            for item_idx, _lr in piece.sides:
                if m.curves[item_idx].kind == "sep":
                    sides_up.append(item_idx)
                    has_odd = True
                else:
                    sides_up.extend((item_idx, item_idx))
            if mp > 0 or has_odd:
                chi = 2 * (2 - len(piece.sides)) - mp
                b = len(sides_up)
                g2 = 2 - chi - b
                assert g2 >= 0 and g2 % 2 == 0
                subs.append(ClosedSubsurface(self, m, g2 // 2,
                                             sorted(sides_up), piece.index))
            else:
                one_each = sorted(i for i, _lr in piece.sides)
                subs.append(ClosedSubsurface(self, m, 0, one_each,
                                             piece.index, copy=0))
                subs.append(ClosedSubsurface(self, m, 0, one_each,
                                             piece.index, copy=1))
        total_chi = sum(2 - 2 * s.genus - len(s.sides) for s in subs)
        assert total_chi == 2 - 2 * self.genus
        subs.sort(key=lambda s: s.sort_key())
        for i, s in enumerate(subs):
            s.index = i
        self._cut_cache[m.key] = subs
        self._down_cut_of = getattr(self, "_down_cut_of", {})
        self._down_cut_of[m.key] = cut
        return subs

    def piece_of(self, subsurface, curve):
        """Whether a curve disjoint from the carrier lies in the
        component."""
        m = subsurface.carrier
        if curve.key in {c.key for c in m.curves}:
            return curve.key in {c.key for c in subsurface.boundary_curves}
        self.cut_along(m)
        cut = self._down_cut_of[m.key]
        if curve.kind == "nonsep":
            dp = cut.piece_of_vertex(curve.ends[0])
        else:
            dp = cut.piece_of_item(curve.dcurve.item)
        return subsurface.dpiece == dp

    # -- pools -------------------------------------------------------------

    def sep_pool(self, word_length=3, size_cap=None):
        """Deterministic pool of separating curves: odd-enclosure downstairs
        curves from the twist closure of the downstairs generators."""
        base = self.down.generate_pool(self.down.twist_generators,
                                       word_length=word_length,
                                       size_cap=size_cap)
        out = []
        for mc in base:
            if len(mc.curves) != 1:
                continue
            d = mc.curves[0]
            if self.enclosure_parity(d) == 1:
                out.append(self.sep_from_down(d))
        out.sort(key=lambda c: c.key)
        return CurvePool(self, out, base.complete)

    def arc_pool(self, word_length=2, size_cap=None):
        """Deterministic pool of non-separating curves: downstairs geodesic
        arcs between branch-puncture lifts reached by short deck words."""
        tri = self.down.tri
        dev = self.down.dev
        reps = []
        for v in range(tri.n_vertices):
            t, c = tri.vertices[v][0]
            reps.append((v, dev.base[t][c]))
        letters = [e * s for e in range(1, tri.n_gens + 1) for s in (1, -1)]
        seen = set()
        out = []
        complete = True
        words = [()]
        for L in range(1, word_length + 1):
            words.extend(itertools.product(letters, repeat=L))
        for (v, p), (u, q0), w in itertools.product(reps, reps, words):
            if v == u:
                continue
            if size_cap is not None and len(out) >= size_cap:
                complete = False
                break
            q = geom.mat_apply(dev.hol(w), q0)
            if geom.pt_eq(p, q):
                continue
            try:
                arc = self.arc_from_lifts(p, q)
            except AssertionError:
                continue
            if arc.key in seen:
                continue
            seen.add(arc.key)
            out.append(arc)
        out.sort(key=lambda c: c.key)
        return CurvePool(self, out, complete)

    def curve_pool(self, sep_words=3, arc_words=2, size_cap=None):
        a = self.sep_pool(word_length=sep_words, size_cap=size_cap)
        b = self.arc_pool(word_length=arc_words, size_cap=size_cap)
        members = sorted(set(a) | set(b), key=lambda c: c.key)
        return CurvePool(self, members, a.complete and b.complete)

    def min_sep_intersection(self, pool=None):
        """Smallest positive intersection number between separating curves,
        minimized over a pool."""
        if self._min_sep is None:
            pool = pool or self.sep_pool()
            best = None
            for a, b in itertools.combinations(pool, 2):
                n = self.intersection_number(a, b)
                if n > 0 and (best is None or n < best):
                    best = n
            assert best is not None
            self._min_sep = best
        return self._min_sep
