"""Public surface API: curves, multicurves, subsurfaces and their operations.

A surface of finite type is backed by an ideal triangulation of the punctured
model together with its exact hyperbolic developing map.  Boundary components
are modeled as labeled punctures.  A curve is stored by its normal
coordinates (the canonical class key), its free-homotopy word, and its traced
geodesic; all queries (intersection numbers, cutting, twisting, neighborhood
boundaries) reduce to exact rational computations on the traced
representatives.

Closed surfaces are handled by the hyperelliptic double cover backend in
symmetric.py and are constructed through the same get_surface entry point.
"""

import itertools

from . import words as W
from . import normal
from .normal import MatchingViolation, PeripheralComponent
from .triangulation import build_atlas_triangulation, Triangulation
from .developing import Developing
from .tracing import Tracer
from .overlay import TracedItem, crossing_number, self_crossing_number
from .arrangement import Cut
from .neighborhoods import Network


class FillsSurface(ValueError):
    """The given curves fill; their neighborhood boundary is empty."""


class UnknownGenerator(KeyError):
    """A twist word names a generator outside the surface's atlas."""


class BudgetExceeded(RuntimeError):
    """An enumeration could not finish within the given budgets."""


ATLAS_TYPES = ((0, 4), (0, 5), (0, 6), (1, 1), (1, 2), (1, 3),
               (2, 0), (2, 1), (2, 2), (3, 0))


class SurfaceType(tuple):
    """(genus, boundary_count) with the standard naming S<g>,<b>."""

    def __new__(cls, genus, boundary):
        assert genus >= 0 and boundary >= 0
        return super().__new__(cls, (genus, boundary))

    genus = property(lambda self: self[0])
    boundary = property(lambda self: self[1])

    @property
    def complexity(self):
        return 3 * self.genus - 3 + self[1]

    @property
    def name(self):
        return "S%d,%d" % self

    @classmethod
    def parse(cls, s):
        s = s.strip().lstrip("S")
        g, b = s.split(",")
        return cls(int(g), int(b))

    def __repr__(self):
        return "SurfaceType(%d, %d)" % self


def complexity(genus, boundary):
    return 3 * genus - 3 + boundary


class Curve:
    """An essential simple closed curve, keyed by its normal coordinates."""

    __slots__ = ("surface", "weights", "word", "item")

    def __init__(self, surface, weights, word, item):
        self.surface = surface
        self.weights = tuple(weights)
        self.word = word
        self.item = item

    @property
    def key(self):
        return (self.weights,)

    def __eq__(self, other):
        return (isinstance(other, Curve)
                and self.surface is other.surface
                and self.weights == other.weights)

    def __hash__(self):
        return hash((id(self.surface), self.weights))

    def __repr__(self):
        return "Curve(%s, %r)" % (self.surface.type.name, self.weights)


class Multicurve:
    """A multicurve: pairwise-disjoint, pairwise-distinct essential curves."""

    __slots__ = ("surface", "curves", "weights")

    def __init__(self, surface, curves):
        cs = sorted(curves, key=lambda c: c.weights)
        assert all(c.surface is surface for c in cs)
        assert len({c.weights for c in cs}) == len(cs), "repeated component"
        self.surface = surface
        self.curves = tuple(cs)
        w = [0] * surface.edge_count
        for c in cs:
            for e, x in enumerate(c.weights):
                w[e] += x
        self.weights = tuple(w)

    @property
    def key(self):
        return tuple(c.weights for c in self.curves)

    def __len__(self):
        return len(self.curves)

    def __iter__(self):
        return iter(self.curves)

    def __eq__(self, other):
        return (isinstance(other, Multicurve)
                and self.surface is other.surface
                and self.key == other.key)

    def __hash__(self):
        return hash((id(self.surface), self.key))

    def __repr__(self):
        return "Multicurve(%s, %d comps)" % (self.surface.type.name,
                                             len(self.curves))


def as_multicurve(surface, x):
    if isinstance(x, Multicurve):
        return x
    if isinstance(x, Curve):
        return Multicurve(surface, [x])
    return Multicurve(surface, list(x))


class Subsurface:
    """A complementary component of a cutting multicurve.

    top_type is (genus, internal boundary count, peripheral boundary count);
    the canonical index orders the components of one cut by (top_type,
    sorted incident carrier keys, sorted labels).
    """

    __slots__ = ("surface", "carrier", "genus", "punctures", "sides",
                 "index", "piece_index")

    def __init__(self, surface, carrier, piece, index=None):
        self.surface = surface
        self.carrier = carrier
        self.genus = piece.genus
        self.punctures = piece.punctures
        self.sides = piece.sides
        self.index = index
        self.piece_index = piece.index

    @property
    def top_type(self):
        return (self.genus, len(self.sides), len(self.punctures))

    @property
    def type(self):
        return SurfaceType(self.genus, len(self.sides) + len(self.punctures))

    @property
    def boundary_labels(self):
        return self.punctures

    @property
    def boundary_curves(self):
        """Incident carrier curves, one entry per internal boundary side."""
        return tuple(self.carrier.curves[i] for i, _lr in self.sides)

    def sort_key(self):
        return (self.top_type,
                tuple(sorted(self.carrier.curves[i].weights
                             for i, _lr in self.sides)),
                tuple(sorted(self.punctures)))

    def __eq__(self, other):
        return (isinstance(other, Subsurface)
                and self.surface is other.surface
                and self.carrier == other.carrier
                and self.index == other.index)

    def __hash__(self):
        return hash((id(self.surface), self.carrier.key, self.index))

    def __repr__(self):
        return "Subsurface(%s #%s in %s)" % (self.type.name, self.index,
                                             self.surface.type.name)


class CurvePool:
    """A deterministic finite window into a family's vertex set."""

    __slots__ = ("surface", "members", "complete")

    def __init__(self, surface, members, complete):
        self.surface = surface
        self.members = tuple(members)
        self.complete = complete

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def fingerprint(self):
        import hashlib
        h = hashlib.sha256()
        h.update(self.surface.type.name.encode())
        for m in self.members:
            h.update(repr(m.key).encode())
        return h.hexdigest()[:16]


class Surface:
    """A punctured surface with its exact geodesic kernel."""

    is_closed = False

    def __init__(self, genus, punctures, tri=None):
        assert punctures > 0
        self.type = SurfaceType(genus, punctures)
        self.tri = tri or build_atlas_triangulation(genus, punctures)
        self.dev = Developing(self.tri)
        self.tracer = Tracer(self.dev)
        self.edge_count = self.tri.n_edges
        self._by_weights = {}
        self._cut_cache = {}
        self._twist_gens = None
        self._icache = None
        self._min_sep = None
        self._slope_chart = None

    # -- construction ------------------------------------------------------

    def curve_from_word(self, word):
        """The essential simple closed curve of the given free-homotopy word
        (asserts the class is hyperbolic and embedded)."""
        for x in word:
            if not (1 <= abs(x) <= self.tri.n_gens):
                raise UnknownGenerator(x)
        cw = W.canonical_cyclic(tuple(word))
        ty = self.dev.element_type(cw)
        assert ty == "hyperbolic", "word is %s, not a curve class" % ty
        ev, ch = self.tracer.trace_curve(self.dev.hol(cw))
        item = TracedItem(ev, ch, self.tri, cyclic=True)
        assert self_crossing_number(item) == 0, "word is not simple"
        wts = [0] * self.tri.n_edges
        for e in ev:
            wts[e.edge] += 1
        return self._intern(Curve(self, wts, cw, item))

    def _intern(self, curve):
        return self._by_weights.setdefault(curve.weights, curve)

    def curve_from_weights(self, weights):
        """The curve with the given normal coordinates (must be connected)."""
        weights = tuple(weights)
        if weights in self._by_weights:
            return self._by_weights[weights]
        comps = normal.trace_components(self.tri, list(weights))
        assert len(comps) == 1, "weights describe %d components" % len(comps)
        c = self.curve_from_word(comps[0][1])
        assert c.weights == weights, "weights are not in minimal position"
        return c

    def multicurve(self, curves):
        cs = list(curves)
        for a, b in itertools.combinations(cs, 2):
            assert self.intersection_number(a, b) == 0, "components cross"
        return Multicurve(self, cs)

    def validate_multicurve(self, weights):
        """Split a weight vector into its component curves.

        Raises MatchingViolation on inconsistent or empty weights and
        PeripheralComponent if any component is puncture-parallel.
        """
        weights = list(weights)
        if not any(weights):
            raise MatchingViolation("empty multicurve")
        comps = normal.trace_components(self.tri, weights)
        out = []
        for _cw, word in comps:
            ty = self.dev.element_type(word)
            if ty != "hyperbolic":
                raise PeripheralComponent(word)
            out.append(self.curve_from_word(word))
        return Multicurve(self, set(out))

    def components(self, m):
        """Component curves of a multicurve or weight vector."""
        if isinstance(m, Multicurve):
            return list(m.curves)
        return [self.curve_from_word(word)
                for _cw, word in normal.trace_components(self.tri, list(m))]

    # -- elementary queries ------------------------------------------------

    def intersection_number(self, a, b):
        """Geometric intersection number of curves or multicurves."""
        ca = a.curves if isinstance(a, Multicurve) else (a,)
        cb = b.curves if isinstance(b, Multicurve) else (b,)
        if self._icache is None:
            self._icache = {}
        total = 0
        for x in ca:
            for y in cb:
                if x.weights == y.weights:
                    continue
                k = (x.weights, y.weights) if x.weights < y.weights \
                    else (y.weights, x.weights)
                n = self._icache.get(k)
                if n is None:
                    n = crossing_number(x.item, y.item)
                    self._icache[k] = n
                total += n
        return total

    # -- cutting -----------------------------------------------------------

    def _cut(self, multicurve):
        key = multicurve.key
        if key not in self._cut_cache:
            self._cut_cache[key] = Cut(self.tri,
                                       [c.item for c in multicurve.curves])
        return self._cut_cache[key]

    def cut_along(self, m):
        """Complementary subsurfaces of a multicurve, canonically indexed."""
        m = as_multicurve(self, m)
        cut = self._cut(m)
        subs = [Subsurface(self, m, p) for p in cut.pieces]
        subs.sort(key=lambda s: s.sort_key())
        for i, s in enumerate(subs):
            s.index = i
        return subs

    def boundary_of(self, subsurface):
        """The multicurve ∂ of a complementary component (excluding labels).
        Empty components list means the component was all of S."""
        curves = set(subsurface.boundary_curves)
        if not curves:
            return Multicurve(self, [])
        return Multicurve(self, curves)

    def piece_of(self, subsurface, curve):
        """Whether the curve lies inside the component (boundary-parallel
        counts as inside only when it is one of the component's sides)."""
        if curve.weights in {c.weights for c in subsurface.boundary_curves}:
            return True
        if curve.weights in {c.weights for c in subsurface.carrier.curves}:
            return False
        cut = self._cut(subsurface.carrier)
        return cut.piece_of_item(curve.item) == subsurface.piece_index

    def spanned_subsurface(self, curves):
        """∂ of a regular neighborhood of the union of the given curves,
        trivial and peripheral components discarded.  Raises FillsSurface
        when the set fills."""
        cs = []
        for c in curves:
            cs.extend(c.curves if isinstance(c, Multicurve) else [c])
        assert cs
        dedup = {}
        for c in cs:
            dedup[c.weights] = c
        cs = sorted(dedup.values(), key=lambda c: c.weights)
        out = {}
        for cl in _crossing_clusters(self, cs):
            if len(cl) == 1:
                out[cl[0].weights] = cl[0]
                continue
            net = Network(self.dev, [c.item for c in cl])
            for word in net.boundary_words():
                if word and self.dev.element_type(word) == "hyperbolic":
                    c = self.curve_from_word(word)
                    out[c.weights] = c
        if not out:
            raise FillsSurface([c.weights for c in cs])
        return Multicurve(self, out.values())

    # -- twisting ----------------------------------------------------------

    @property
    def twist_generators(self):
        """The fixed list of twist generator curves of this surface."""
        if self._twist_gens is None:
            self._twist_gens = _default_twist_generators(self)
        return tuple(self._twist_gens)

    def set_twist_generators(self, curves):
        self._twist_gens = list(curves)

    def twist_about(self, curve, about, power=1):
        """Image of curve under the Dehn twist about another curve."""
        assert isinstance(curve, Curve) and isinstance(about, Curve)
        if power == 0 or curve.weights == about.weights:
            return curve
        word = curve.word
        for _ in range(abs(power)):
            word = _twist_word(self, word, about, power > 0)
        return self.curve_from_word(word)

    def apply_twist(self, twist_word, m):
        """Image of a curve or multicurve under a word in the surface's
        twist generators (letter k = k-th generator, negative = inverse)."""
        gens = self.twist_generators
        single = isinstance(m, Curve)
        comps = [m] if single else list(m.curves)
        for x in reversed(twist_word):
            if not (1 <= abs(x) <= len(gens)):
                raise UnknownGenerator(x)
            about = gens[abs(x) - 1]
            comps = [self.twist_about(c, about, 1 if x > 0 else -1)
                     for c in comps]
        if single:
            return comps[0]
        return Multicurve(self, comps)

    # -- pools -------------------------------------------------------------

    def short_simple_words(self, max_len, cap=None):
        """Deterministic enumeration of simple curves from short words."""
        out = []
        seen = set()
        gens = [e * s for e in range(1, self.tri.n_gens + 1) for s in (1, -1)]
        n = 0
        for L in range(1, max_len + 1):
            for w in itertools.product(gens, repeat=L):
                n += 1
                if cap is not None and n > cap:
                    return out
                cw = W.canonical_cyclic(w)
                k = min(cw, W.canonical_cyclic(W.inverse(cw)))
                if k in seen:
                    continue
                seen.add(k)
                if W.is_power(cw):
                    continue
                if self.dev.element_type(cw) != "hyperbolic":
                    continue
                try:
                    out.append(self.curve_from_word(cw))
                except AssertionError:
                    continue
        return out

    def generate_pool(self, seeds, word_length=0, intersection_cap=None,
                      size_cap=None):
        """Close the seed set under the twist generator moves.

        Applies every generator twist (and inverse) up to word_length times,
        breadth first and deterministically.  Members violating the
        intersection cap against the seed union are dropped.  When size_cap
        is hit the pool is returned with complete=False.
        """
        seeds = [as_multicurve(self, s) for s in seeds]
        members = {}
        frontier = []
        for s in seeds:
            if s.key not in members:
                members[s.key] = s
                frontier.append(s)
        complete = True
        letters = [e * s for e in range(1, len(self.twist_generators) + 1)
                   for s in (1, -1)]

        def admissible(m):
            if intersection_cap is None:
                return True
            return all(self.intersection_number(m, s) <= intersection_cap
                       for s in seeds)

        for _ in range(word_length):
            if size_cap is not None and len(members) >= size_cap:
                complete = False
                break
            nxt = []
            for m in frontier:
                for x in letters:
                    if size_cap is not None and len(members) >= size_cap:
                        complete = False
                        break
                    try:
                        im = self.apply_twist((x,), m)
                    except AssertionError:
                        continue
                    im = as_multicurve(self, im)
                    if im.key in members or not admissible(im):
                        continue
                    members[im.key] = im
                    nxt.append(im)
                else:
                    continue
                break
            frontier = nxt
            if not frontier:
                break
        out = sorted(members.values(), key=lambda m: m.key)
        return CurvePool(self, out, complete)


_SURFACES = {}


def load_atlas_record(genus, punctures):
    """The frozen atlas record for the given surface type."""
    import importlib.resources
    import json
    assert (genus, punctures) in ATLAS_TYPES, \
        "S%d,%d is not an atlas surface" % (genus, punctures)
    ref = importlib.resources.files(__package__).joinpath(
        "atlas", "S%d_%d.json" % (genus, punctures))
    return json.loads(ref.read_text())


def get_surface(name):
    """The shared atlas surface of the given type (e.g. "S1,2" or (1, 2)).

    Punctured types come with the frozen triangulation and twist generator
    system of the atlas; closed types are backed by the hyperelliptic double
    cover.  Instances are cached per process.
    """
    ty = SurfaceType.parse(name) if isinstance(name, str) else SurfaceType(*name)
    if ty in _SURFACES:
        return _SURFACES[ty]
    data = load_atlas_record(ty.genus, ty.boundary)
    from . import ATLAS_VERSION
    assert data["version"] == ATLAS_VERSION
    if data["closed"]:
        from .symmetric import ClosedSurface
        s = ClosedSurface(ty.genus)
    else:
        s = Surface(ty.genus, ty.boundary,
                    tri=Triangulation.from_json(data["triangulation"]))
        s.set_twist_generators([s.curve_from_word(tuple(w))
                                for w in data["twist_generators"]])
        s.seeds = tuple(s.curve_from_word(tuple(w)) for w in data["seeds"])
    _SURFACES[ty] = s
    return s


def _crossing_clusters(surface, curves):
    """Partition curves into connected clusters of the crossing graph."""
    n = len(curves)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            if surface.intersection_number(curves[i], curves[j]) > 0:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(curves[i])
    return [groups[k] for k in sorted(groups)]


def _default_twist_generators(surface):
    """A deterministic small system of twisting curves: shortest simple
    curves that pairwise intersect within a chain."""
    cands = surface.short_simple_words(2)
    if not cands:
        cands = surface.short_simple_words(3)
    cands.sort(key=lambda c: (sum(c.weights), c.weights))
    chosen = []
    for c in cands:
        if len(chosen) >= max(4, 2 * surface.type.complexity):
            break
        if any(c.weights == d.weights for d in chosen):
            continue
        chosen.append(c)
    assert chosen, "no twist generators found"
    return chosen


def _event_letters(item):
    out = []
    for e in item.events:
        if e.gen is not None:
            out.append((e.gen[0] + 1) * e.gen[1])
    return tuple(out)


def _twist_word(surface, word, about, positive):
    """One Dehn twist of the class word about the given curve.

    At each geometric crossing, a copy of the twisting curve's word (rotated
    to start at the crossing and oriented by the local crossing sign) is
    inserted into the traversal of the curve being twisted.
    """
    a = surface.curve_from_word(word)
    g = about
    if surface.intersection_number(a, g) == 0:
        return a.word
    net = Network(surface.dev, [a.item, g.item])
    gword = _event_letters(g.item)
    assert gword
    # letter rotation of g at each vertex: letters strictly before the
    # crossing along g's traversal
    g_letters_before = []
    cnt = 0
    for e in g.item.events:
        g_letters_before.append(cnt)
        if e.gen is not None:
            cnt += 1
    # A crossing on chord ci sits just before event ci of the item.  On-edge
    # crossings are perturbed into the near triangle of the curve being
    # twisted; the inserted copy of g starts after its own edge crossing
    # exactly when g's near side differs from a's near side there.
    rot_of_vid = {}
    for (ci, vid) in net._item_sequence(1):
        before = g_letters_before[ci]
        if vid in net.tie_vids \
                and net.tie_side[(vid, 1)][0] != net.tie_side[(vid, 0)][0]:
            if g.item.events[ci].gen is not None:
                before += 1
        rot_of_vid[vid] = before % cnt
    n_ev_a = len(a.item.events)
    by_slot = {}
    for (ci, vid) in net._item_sequence(0):
        sign = net.vertex_items[vid][2]
        by_slot.setdefault(ci, []).append((rot_of_vid[vid], sign))
    out = []
    for i in range(n_ev_a):
        for rot, sign in by_slot.get(i, []):
            ins = gword[rot:] + gword[:rot]
            if (sign > 0) != positive:
                ins = tuple(-x for x in reversed(ins))
            out.extend(ins)
        e = a.item.events[i].gen
        if e is not None:
            out.append((e[0] + 1) * e[1])
    return W.canonical_cyclic(W.reduce_word(tuple(out)))
