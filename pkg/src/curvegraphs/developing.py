"""Hyperbolic realization of a triangulated surface with punctures.

The ideal triangulation is developed into the upper half-plane with all shear
parameters zero: the base triangle goes to (0, 1, oo) and every neighbor is
the half-turn image of the developed triangle across the shared edge.  This
keeps all triangle vertices in P^1(Q) and makes the holonomy representation
integral, so the whole kernel runs in exact arithmetic.  The vanishing shear
sums around each puncture force parabolic cusp holonomy, hence a complete
finite-area structure and a discrete faithful representation.
"""

from . import geom
from .geom import EXACT, INF, ID
from . import words as W


def shear0_apex(a, b, c):
    """Apex of the zero-shear neighbor across edge (a, b), from apex c:
    the fourth point with cross-ratio (a, b; c, s) = -1."""
    (p1, q1), (p2, q2), (p3, q3) = a, b, c
    ca = p3 * q1 - p1 * q3
    cb = p3 * q2 - p2 * q3
    return geom.pt(ca * p2 + cb * p1, ca * q2 + cb * q1)


class Developing:
    """Developed lifts, holonomy generators and boundary words for an ideal
    triangulation of a punctured surface."""

    def __init__(self, tri):
        assert not tri.closed
        self.tri = tri
        self.sc = EXACT
        self._develop_base()
        self._generator_matrices()
        self._puncture_words()

    # -- developing --------------------------------------------------------

    def neighbor(self, t, verts, k):
        """Develop across side k of triangle t with lift verts."""
        a = verts[(k + 1) % 3]
        b = verts[(k + 2) % 3]
        c = verts[k]
        s = shear0_apex(a, b, c)
        t2, k2 = self.tri.glue[(t, k)]
        lift = [None] * 3
        lift[k2] = s
        lift[(k2 + 1) % 3] = b
        lift[(k2 + 2) % 3] = a
        return t2, tuple(lift)

    def _develop_base(self):
        base = {self.tri.dev_order[0]: ((0, 1), (1, 1), INF)}
        placed = {self.tri.dev_order[0]}
        # walk the dual spanning tree in BFS order
        changed = True
        while changed:
            changed = False
            for t in list(placed):
                for k in range(3):
                    if (t, k) not in self.tri.tree_sides:
                        continue
                    t2, _ = self.tri.glue[(t, k)]
                    if t2 in placed:
                        continue
                    t2b, lift = self.neighbor(t, base[t], k)
                    assert t2b == t2
                    base[t2] = lift
                    placed.add(t2)
                    changed = True
        assert len(base) == self.tri.n_tri
        self.base = base

    def _generator_matrices(self):
        """Holonomy of each spine generator: crossing the non-tree side (t, k)
        from the base lift of t lands on a lift of t2; the generator is the
        deck matrix taking t2's base lift there."""
        mats = [None] * self.tri.n_gens
        for (t, k), (g, e) in self.tri.gen_of_side.items():
            if e != 1:
                continue
            t2, lift = self.neighbor(t, self.base[t], k)
            M = geom.mat_from_3pts(self.base[t2], lift)
            assert geom.mat_det(M) > 0, M
            mats[g] = M
        self.gen_mats = mats
        self.gen_mats_inv = [geom.mat_inv(M) for M in mats]

    def hol(self, word):
        """Holonomy matrix of a spine word."""
        M = ID
        for x in word:
            M = geom.mat_mul(M, self.gen_mats[x - 1] if x > 0
                             else self.gen_mats_inv[-x - 1])
        return geom.mat_norm(M)

    # -- punctures ---------------------------------------------------------

    def _puncture_words(self):
        """Boundary word at each vertex (puncture), read from the corner walk;
        verifies the structure is complete (parabolic cusps)."""
        out = []
        for cyc in self.tri.vertices:
            w = []
            for (t, c) in cyc:
                s = (t, (c + 2) % 3)
                if s in self.tri.gen_of_side:
                    g, e = self.tri.gen_of_side[s]
                    w.append((g + 1) * e)
            w = W.reduce_word(tuple(w))
            M = self.hol(w)
            tr2 = geom.mat_trace(M) ** 2
            det = geom.mat_det(M)
            assert tr2 == 4 * det, "cusp holonomy not parabolic"
            assert tuple(M) not in (ID, (-1, 0, 0, -1)), "trivial cusp word"
            out.append(w)
        self.puncture_words = out

    # -- classification ----------------------------------------------------

    def element_type(self, word):
        """'trivial', 'peripheral' or 'hyperbolic' for a spine word."""
        w = W.cyclic_reduce(word)
        if not w:
            return "trivial"
        M = self.hol(w)
        tr2 = geom.mat_trace(M) ** 2
        det = geom.mat_det(M)
        assert det > 0, det
        if tr2 < 4 * det:
            raise AssertionError("elliptic element in torsion-free group")
        if tr2 == 4 * det:
            return "peripheral"
        return "hyperbolic"

    def peripheral_vertex(self, word):
        """Which puncture a peripheral word winds around, and the winding:
        returns (vertex, k) with word conjugate to (puncture word)^{+-k}.
        Purely combinatorial: conjugacy in a free group is cyclic-word
        equality."""
        w = W.cyclic_reduce(word)
        key = W.canonical_cyclic(w)
        for v, p in enumerate(self.puncture_words):
            p = W.cyclic_reduce(p)
            if not p or len(w) % len(p):
                continue
            k = len(w) // len(p)
            if W.canonical_cyclic(W.power(p, k)) == key:
                return v, k
        raise AssertionError("peripheral word matches no cusp")
