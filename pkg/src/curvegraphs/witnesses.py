"""Witness subsurfaces of multicurve-graph families.

A witness of a graph family is a subsurface that every vertex of the family
must intersect.  The predicates here are purely topological: they look at a
subsurface's type and at the components of its complement.  Two views are
provided: a geometric one over the complementary pieces of an actual cut,
and an abstract one over symbolic decompositions of a surface type, which
makes the search for pairwise-disjoint witness configurations exhaustive and
finite.  The rank of a family is the largest number of pairwise-disjoint
witnesses; rank one is the hyperbolicity criterion.
"""

import functools
import itertools

from .surface import SurfaceType


FAMILIES = ("curve_graph", "sep", "nonsep", "pants", "cut_system")


def base_family(family):
    """k_of(G) has the same witnesses as G."""
    if family.startswith("k_of:"):
        return family[len("k_of:"):]
    return family


def _predicate(family, stype, piece, complement, delta=()):
    """The family rule for one piece given its assembled complement
    components.  piece is (genus, n_boundary, labels); complement is a list
    of (genus, n_boundary, labels)."""
    family = base_family(family)
    g, b, labels = piece
    xi = 3 * g - 3 + b
    if xi < 1:
        return False            # annuli and pants are never witnesses
    if family == "curve_graph":
        return not complement and b == len(labels)
    if family == "sep":
        return all(cg == 0 and len(cl) <= 1 for cg, _cb, cl in complement)
    if family == "nonsep":
        return g == stype.genus
    if family == "pants":
        return True
    if family == "cut_system":
        return g >= 1
    if family.startswith("arc_companion"):
        return set(delta) <= set(labels)
    raise ValueError("unknown family %r" % family)


# -- geometric view ---------------------------------------------------------


def _side_comp(side):
    return side[0] if isinstance(side, tuple) else side


def complement_components(surface, pieces, x):
    """Assembled components of the complement of one cut piece.

    Returns a list of (genus, n_boundary, labels) triples, one per component
    of S minus the piece, computed by regluing the other pieces along every
    carrier curve not adjacent to x.
    """
    others = [p for p in pieces if p is not x]
    slot_at = {}                # comp id -> list of piece positions
    for p in pieces:
        for s in p.sides:
            slot_at.setdefault(_side_comp(s), []).append(p)
    parent = {id(p): p for p in others}

    def find(p):
        while parent[id(p)] is not p:
            parent[id(p)] = parent[id(parent[id(p)])]
            p = parent[id(p)]
        return p

    boundary_of = {id(p): 0 for p in others}
    for comp_id, ps in slot_at.items():
        assert len(ps) == 2, "each cut curve has exactly two sides"
        a, b = ps
        if a is x and b is x:
            continue
        if a is x or b is x:
            other = b if a is x else a
            boundary_of[id(other)] += 1
            continue
        parent[id(find(a))] = find(b)
    out = []
    for root in {id(find(p)) for p in others}:
        members = [p for p in others if id(find(p)) == root]
        chi = sum(2 - 2 * p.genus - (len(p.sides) + len(p.punctures))
                  for p in members)
        labels = tuple(sorted(l for p in members for l in p.punctures))
        b = sum(boundary_of[id(p)] for p in members) + len(labels)
        g2 = 2 - chi - b
        assert g2 >= 0 and g2 % 2 == 0
        out.append((g2 // 2, b, labels))
    return out


def is_witness(family, surface, x, delta=()):
    """Whether a complementary piece of a cut is a witness of the family."""
    pieces = surface.cut_along(x.carrier)
    me = next(p for p in pieces if p.index == x.index)
    piece = (me.genus, len(me.sides) + len(me.punctures),
             tuple(me.punctures))
    comp = complement_components(surface, pieces, me)
    return _predicate(family, surface.type, piece, comp, delta=delta)


def whole_surface_is_witness(family, stype, labels=None, delta=()):
    """Every family has the full surface as its maximal witness."""
    labels = tuple(range(stype.boundary)) if labels is None else labels
    return _predicate(family, stype, (stype.genus, stype.boundary, labels),
                      [], delta=delta)


# -- abstract decompositions ------------------------------------------------


class AbstractDecomposition:
    """A symbolic decomposition of a surface type along a multicurve.

    pieces: tuple of (genus, n_boundary, labels); gluing: tuple of slot
    pairs ((piece, slot), (piece, slot)); witness_flags: which pieces
    satisfy the family predicate.
    """

    def __init__(self, stype, pieces, gluing, witness_flags):
        self.stype = stype
        self.pieces = tuple(pieces)
        self.gluing = tuple(gluing)
        self.witness_flags = tuple(witness_flags)

    def to_json(self):
        return {"surface": self.stype.name,
                "pieces": [list(p[:2]) + [list(p[2])] for p in self.pieces],
                "gluing": [[list(a), list(b)] for a, b in self.gluing],
                "witness_flags": list(self.witness_flags)}

    def __repr__(self):
        return "AbstractDecomposition(%s, %d pieces, %d witnesses)" % (
            self.stype.name, len(self.pieces), sum(self.witness_flags))


def _assembled_complement(pieces, gluing, idx):
    """Complement components of piece idx inside an abstract decomposition,
    as (genus, n_boundary, labels) triples."""
    others = [i for i in range(len(pieces)) if i != idx]
    parent = {i: i for i in others}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    boundary = {i: 0 for i in others}
    for (pa, _sa), (pb, _sb) in gluing:
        if pa == idx and pb == idx:
            continue
        if pa == idx or pb == idx:
            boundary[pb if pa == idx else pa] += 1
            continue
        parent[find(pa)] = find(pb)
    out = []
    for root in {find(i) for i in others}:
        members = [i for i in others if find(i) == root]
        chi = sum(2 - 2 * pieces[i][0] - pieces[i][1] for i in members)
        labels = tuple(sorted(l for i in members for l in pieces[i][2]))
        b = sum(boundary[i] for i in members) + len(labels)
        g2 = 2 - chi - b
        if g2 < 0 or g2 % 2:
            return None
        out.append((g2 // 2, b, labels))
    return out


def _matchings(slots):
    """All perfect matchings of a list of slot ids (including same-piece
    pairs)."""
    if not slots:
        yield ()
        return
    first = slots[0]
    for j in range(1, len(slots)):
        rest = slots[1:j] + slots[j + 1:]
        for m in _matchings(rest):
            yield ((first, slots[j]),) + m


def _connected(n, gluing):
    if n == 1:
        return True
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for (pa, _), (pb, _) in gluing:
        parent[find(pa)] = find(pb)
    return len({find(i) for i in range(n)}) == 1


def disjoint_witness_configs(family, stype, k, delta=()):
    """All abstract decompositions of the surface type carrying at least k
    pairwise-disjoint witness pieces, deduplicated by canonical form.  An
    empty list is a proof of non-existence: the search space is the finite
    set of chi-additive decompositions.
    """
    assert k >= 1
    stype = SurfaceType(*stype)
    chi = 2 - 2 * stype.genus - stype.boundary
    assert chi <= -1, "surface admits no essential decomposition"
    labels_all = tuple(range(stype.boundary))
    out = []
    seen = set()

    for n in range(max(1, k), -chi + 1):
        for chis in _compositions(-chi, n):
            piece_opts = []
            for c in chis:
                opts = [(g, 2 + c - 2 * g)
                        for g in range(0, (2 + c) // 2 + 1)
                        if 2 + c - 2 * g >= 0]
                piece_opts.append(opts)
            for shape in itertools.product(*piece_opts):
                for assign in itertools.product(range(n),
                                                repeat=len(labels_all)):
                    labels = [tuple(l for l in labels_all
                                    if assign[l] == i) for i in range(n)]
                    if any(len(labels[i]) > shape[i][1] for i in range(n)):
                        continue
                    pieces = [(shape[i][0], shape[i][1], labels[i])
                              for i in range(n)]
                    slots = [(i, s) for i in range(n)
                             for s in range(shape[i][1] - len(labels[i]))]
                    if len(slots) % 2:
                        continue
                    for gluing in _matchings(slots):
                        if not _connected(n, gluing):
                            continue
                        dec = _flagged(family, stype, pieces, gluing, delta)
                        if dec is None or sum(dec.witness_flags) < k:
                            continue
                        key = _canonical_key(dec)
                        if key in seen:
                            continue
                        seen.add(key)
                        out.append(dec)
    return out


def _compositions(total, n):
    """Multisets of n positive integers summing to total, nondecreasing."""
    if n == 1:
        yield (total,)
        return
    for first in range(1, total - n + 2):
        for rest in _compositions(total - first, n - 1):
            if rest[0] >= first:
                yield (first,) + rest


def _flagged(family, stype, pieces, gluing, delta):
    flags = []
    for i, p in enumerate(pieces):
        comp = _assembled_complement(pieces, gluing, i)
        if comp is None:
            return None
        flags.append(_predicate(family, stype, p, comp, delta=delta))
    return AbstractDecomposition(stype, pieces, gluing, flags)


def _canonical_key(dec):
    """Lexicographic minimum of the serialized decomposition over piece
    relabelings; slot identities within a piece are interchangeable, so the
    gluing is kept as a multiset of unordered piece-index pairs."""
    n = len(dec.pieces)
    best = None
    for perm in itertools.permutations(range(n)):
        inv = sorted(range(n), key=lambda j: perm[j])
        pieces = tuple(dec.pieces[j] for j in inv)
        flags = tuple(dec.witness_flags[j] for j in inv)
        glue = tuple(sorted(tuple(sorted((perm[pa], perm[pb])))
                            for (pa, _), (pb, _) in dec.gluing))
        key = (pieces, glue, flags)
        if best is None or key < best:
            best = key
    return best


@functools.lru_cache(maxsize=None)
def rank(family, stype, delta=()):
    """Largest number of pairwise-disjoint witnesses of the family."""
    stype = SurfaceType(*stype)
    k = 0
    while True:
        if not disjoint_witness_configs(family, stype, k + 1, delta=delta):
            return k
        k += 1
        assert k <= 3 * stype.genus + stype.boundary, "runaway rank search"


@functools.lru_cache(maxsize=None)
def proper_witness_exists(family, stype, delta=()):
    """Whether the family has a witness that is a proper subsurface (a
    configuration with more than one piece, or one piece reglued to itself
    along a nonempty multicurve)."""
    stype = SurfaceType(*stype)
    for dec in disjoint_witness_configs(family, stype, 1, delta=delta):
        if len(dec.pieces) > 1 or dec.gluing:
            return True
    return False


@functools.lru_cache(maxsize=None)
def hyperbolicity_criterion(family, stype, delta=()):
    """True when no two disjoint witnesses exist; by the rank-one criterion
    the family graph is then Gromov hyperbolic."""
    stype = SurfaceType(*stype)
    assert rank(family, stype, delta=delta) >= 1, "degenerate family"
    return not disjoint_witness_configs(family, stype, 2, delta=delta)
