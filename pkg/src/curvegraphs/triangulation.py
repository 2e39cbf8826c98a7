"""Combinatorial (ideal) triangulations of surfaces.

A triangulation is a set of oriented triangles with a fixed-point-free
involution pairing their sides.  Side ``k`` of a triangle joins corners
``k+1`` and ``k+2`` (mod 3); gluing side ``(t, k)`` to ``(t', k')``
identifies corner ``k+1`` with ``k'+2`` and ``k+2`` with ``k'+1``, which is
the orientation-compatible convention (all triangles counterclockwise).

For surfaces with punctures the triangulation is ideal: the vertices are the
punctures.  Closed surfaces use a one-vertex triangulation obtained from the
standard 4g-gon with diagonals.
"""

import json
import random


class Triangulation:
    def __init__(self, n_tri, glue, closed=False):
        self.n_tri = n_tri
        self.glue = dict(glue)
        self.closed = closed
        assert len(self.glue) == 3 * n_tri
        for s, s2 in self.glue.items():
            assert s != s2 and self.glue[s2] == s
        self._build()

    def _build(self):
        # edges
        self.edges = []
        self.edge_of = {}
        for t in range(self.n_tri):
            for k in range(3):
                s = (t, k)
                if s in self.edge_of:
                    continue
                e = len(self.edges)
                s2 = self.glue[s]
                self.edges.append((s, s2))
                self.edge_of[s] = e
                self.edge_of[s2] = e
        self.n_edges = len(self.edges)
        # vertex cycles: iterate corner -> cross side (corner+2) -> corner k'+2
        nxt = {}
        for t in range(self.n_tri):
            for c in range(3):
                t2, k2 = self.glue[(t, (c + 2) % 3)]
                nxt[(t, c)] = (t2, (k2 + 2) % 3)
        seen = set()
        self.vertices = []
        self.vertex_of = {}
        for start in sorted(nxt):
            if start in seen:
                continue
            cyc = []
            cur = start
            while cur not in seen:
                seen.add(cur)
                cyc.append(cur)
                cur = nxt[cur]
            for c in cyc:
                self.vertex_of[c] = len(self.vertices)
            self.vertices.append(cyc)
        self.n_vertices = len(self.vertices)
        # dual graph spanning tree and generator assignment
        self._dual_tree()

    def _dual_tree(self):
        tree_sides = set()
        visited = {0}
        order = [0]
        frontier = [0]
        while frontier:
            t = frontier.pop(0)
            for k in range(3):
                t2, k2 = self.glue[(t, k)]
                if t2 not in visited:
                    visited.add(t2)
                    order.append(t2)
                    tree_sides.add((t, k))
                    tree_sides.add((t2, k2))
                    frontier.append(t2)
        assert len(visited) == self.n_tri, "dual graph not connected"
        self.tree_sides = tree_sides
        self.dev_order = order
        # non-tree edges carry the free generators of the spine group
        self.gen_of_side = {}
        gen = 0
        for e, (s1, s2) in enumerate(self.edges):
            if s1 in tree_sides:
                continue
            self.gen_of_side[s1] = (gen, 1)
            self.gen_of_side[s2] = (gen, -1)
            gen += 1
        self.n_gens = gen

    # -- topology ----------------------------------------------------------

    def euler_surface(self):
        """Euler characteristic of the surface (punctures removed if ideal)."""
        if self.closed:
            return self.n_vertices - self.n_edges + self.n_tri
        return self.n_tri - self.n_edges

    def signature(self):
        """(genus, punctures) of the underlying surface."""
        if self.closed:
            chi = self.euler_surface()
            assert self.n_vertices == 1
            g, r = divmod(2 - chi, 2)
            assert r == 0
            return g, 0
        b = self.n_vertices
        chi = self.euler_surface()
        g, r = divmod(2 - b - chi, 2)
        assert r == 0
        return g, b

    # -- serialization -----------------------------------------------------

    def to_json(self):
        pairs = sorted({tuple(sorted((s, s2))) for s, s2 in self.glue.items()})
        return {
            "n_tri": self.n_tri,
            "closed": self.closed,
            "glue": [[list(a), list(b)] for a, b in pairs],
        }

    @classmethod
    def from_json(cls, data):
        glue = {}
        for a, b in data["glue"]:
            a, b = tuple(a), tuple(b)
            glue[a] = b
            glue[b] = a
        return cls(data["n_tri"], glue, closed=data["closed"])


def search_ideal(genus, punctures, seed=0, max_tries=100000):
    """Find an ideal triangulation of S_{genus, punctures} by seeded search.

    Sides are paired at random (never two sides of the same triangle); a
    candidate is accepted when the dual graph is connected and the number of
    vertex cycles equals the number of punctures, which pins down the genus
    through the Euler characteristic.
    """
    chi = 2 - 2 * genus - punctures
    assert chi < 0 and punctures > 0
    n_tri = -2 * chi
    rng = random.Random(seed)
    sides = [(t, k) for t in range(n_tri) for k in range(3)]
    for _ in range(max_tries):
        pool = sides[:]
        rng.shuffle(pool)
        glue = {}
        ok = True
        while pool:
            a = pool.pop()
            choices = [i for i, s in enumerate(pool) if s[0] != a[0]]
            if not choices:
                ok = False
                break
            i = choices[rng.randrange(len(choices))]
            b = pool.pop(i)
            glue[a] = b
            glue[b] = a
        if not ok:
            continue
        try:
            tri = Triangulation(n_tri, glue, closed=False)
        except AssertionError:
            continue
        if tri.n_vertices == punctures:
            assert tri.signature() == (genus, punctures)
            return tri
    raise RuntimeError(f"no triangulation found for S_{genus},{punctures}")


def polygon_closed(genus):
    """One-vertex triangulation of the closed genus-g surface from the
    standard 4g-gon (boundary word prod [a_i, b_i]) with diagonals from
    corner 0."""
    assert genus >= 2
    n = 4 * genus
    n_tri = n - 2
    glue = {}
    # internal diagonals
    for i in range(n_tri - 1):
        glue[(i, 1)] = (i + 1, 2)
        glue[(i + 1, 2)] = (i, 1)
    # boundary side j of the polygon as a (triangle, side) slot
    def boundary(j):
        if j == 0:
            return (0, 2)
        if j == n - 1:
            return (n_tri - 1, 1)
        return (j - 1, 0)

    for i in range(genus):
        for off in (0, 1):
            j1 = 4 * i + off
            j2 = 4 * i + off + 2
            a, b = boundary(j1), boundary(j2)
            glue[a] = b
            glue[b] = a
    tri = Triangulation(n_tri, glue, closed=True)
    assert tri.n_vertices == 1, tri.n_vertices
    assert tri.signature() == (genus, 0)
    return tri


ATLAS_SIGNATURES = [
    (0, 4), (0, 5), (0, 6),
    (1, 1), (1, 2), (1, 3),
    (2, 0), (2, 1), (2, 2),
    (3, 0),
]


def build_atlas_triangulation(genus, punctures, seed=0):
    if punctures == 0:
        return polygon_closed(genus)
    if (genus, punctures) == (1, 1):
        # the standard two-triangle punctured torus
        glue = {}
        for k in range(3):
            glue[(0, k)] = (1, k)
            glue[(1, k)] = (0, k)
        return Triangulation(2, glue, closed=False)
    return search_ideal(genus, punctures, seed=seed)
