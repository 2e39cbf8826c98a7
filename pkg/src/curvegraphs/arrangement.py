"""Cutting a surface along a disjoint system of traced curves.

The chords of a pairwise-disjoint curve system decompose each ideal triangle
into faces (non-crossing chords in a disk, so the face structure follows a
parenthesis walk around the boundary).  Faces glue across triangulation edges
along the intervals between crossing points, and the glued classes are the
complementary pieces of the cut.

Euler characteristic bookkeeping: chord copies and crossing-point copies
cancel in V - E + F, so chi(open piece) = (#faces) - (#glued interval pairs).
Punctures locate through corner/face incidence and boundary circles are
(curve component, side) pairs, which pins down the topological type.
"""

from dataclasses import dataclass, field
from collections import defaultdict


class _DSU:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        if p != x:
            p = self.parent[x] = self.find(p)
        return p

    def union(self, x, y):
        self.parent[self.find(x)] = self.find(y)


@dataclass
class Piece:
    """One complementary component of the cut."""
    index: int
    genus: int
    chi: int
    punctures: tuple          # sorted triangulation vertex ids inside
    sides: tuple              # sorted (item index, 'L'/'R') pairs adjacent
    faces: frozenset = field(repr=False, default=frozenset())

    @property
    def n_boundary(self):
        return len(self.sides)

    @property
    def top_type(self):
        """(genus, boundary circles from the cut, punctures)."""
        return (self.genus, len(self.sides), len(self.punctures))


class Cut:
    """The decomposition of the surface along a disjoint traced curve system.

    items must be cyclic TracedItems of pairwise disjoint, pairwise distinct
    simple closed geodesics.
    """

    def __init__(self, tri, items):
        self.tri = tri
        self.items = list(items)
        self._build_faces()
        self._glue()
        self._pieces()

    # -- per-triangle face decomposition -----------------------------------

    def _build_faces(self):
        tri = self.tri
        # side (t, k) -> sorted list of (pos, item, chord index)
        self.side_pts = defaultdict(list)
        for idx, it in enumerate(self.items):
            for ci, ch in enumerate(it.chords):
                for end in (ch.end_in, ch.end_out):
                    kind, k, pos = end
                    assert kind == "side", "cut items must be closed curves"
                    self.side_pts[(ch.tri, k)].append((pos, idx, ci))
        for key in self.side_pts:
            self.side_pts[key].sort(key=lambda r: r[0])
            positions = [r[0] for r in self.side_pts[key]]
            assert len(set(positions)) == len(positions), \
                "coincident crossing points: system not disjoint"

        self.n_faces = 0
        self.interval_face = {}    # (t, k) -> list of face ids, len = pts + 1
        self.corner_face = {}      # (t, c) -> face id
        self.chord_faces = {}      # (item, chord) -> (face_left, face_right)
        for t in range(tri.n_tri):
            self._faces_of_triangle(t)

    def _faces_of_triangle(self, t):
        nodes = []                 # ('corner', c) or ('side', k, pos, it, ci)
        for c in range(3):
            nodes.append(("corner", c))
            k = (c + 2) % 3        # side following corner c in circular order
            for (pos, idx, ci) in self.side_pts.get((t, k), []):
                nodes.append(("side", k, pos, idx, ci))

        f0 = self.n_faces
        self.n_faces += 1
        cur = f0
        stack = []
        open_chords = {}
        gap_face = []              # face of the gap after nodes[i]
        for nd in nodes:
            if nd[0] == "side":
                _, k, pos, idx, ci = nd
                key = (idx, ci)
                if key not in open_chords:
                    fnew = self.n_faces
                    self.n_faces += 1
                    open_chords[key] = (cur, fnew, (k, pos))
                    stack.append(cur)
                    cur = fnew
                else:
                    outer, inner, first_end = open_chords.pop(key)
                    assert cur == inner, "chord nesting violated"
                    cur = stack.pop()
                    assert cur == outer
                    ch = self.items[idx].chords[ci]
                    ein = (ch.end_in[1], ch.end_in[2])
                    if first_end == ein:
                        self.chord_faces[key] = (outer, inner)   # (L, R)
                    else:
                        self.chord_faces[key] = (inner, outer)
            else:
                self.corner_face[(t, nd[1])] = cur
            gap_face.append(cur)
        assert not stack and not open_chords and cur == f0

        # distribute gap faces to side intervals
        i = 0
        for c in range(3):
            k = (c + 2) % 3
            n = len(self.side_pts.get((t, k), []))
            self.interval_face[(t, k)] = gap_face[i:i + n + 1]
            i += n + 1

    # -- gluing across triangulation edges ---------------------------------

    def _glue(self):
        tri = self.tri
        canon = {}
        for it in self.items:
            canon.update(it.canon)
        self.dsu = _DSU()
        self.gluings = []
        for e, ((t1, k1), (t2, k2)) in enumerate(tri.edges):
            p1 = self.side_pts.get((t1, k1), [])
            p2 = self.side_pts.get((t2, k2), [])
            n = len(p1)
            assert len(p2) == n, "edge crossing counts disagree"
            for j in range(n):
                a = canon[(t1, k1, p1[j][0])]
                b = canon[(t2, k2, p2[n - 1 - j][0])]
                assert a == b, "edge positions misaligned across gluing"
            f1 = self.interval_face[(t1, k1)]
            f2 = self.interval_face[(t2, k2)]
            for j in range(n + 1):
                pair = (f1[j], f2[n - j])
                self.dsu.union(*pair)
                self.gluings.append(pair)

    # -- assembling pieces --------------------------------------------------

    def _pieces(self):
        tri = self.tri
        root_faces = defaultdict(set)
        for f in range(self.n_faces):
            root_faces[self.dsu.find(f)].add(f)
        roots = sorted(root_faces)
        root_index = {r: i for i, r in enumerate(roots)}

        n = len(roots)
        glue_count = [0] * n
        for (a, _b) in self.gluings:
            glue_count[root_index[self.dsu.find(a)]] += 1

        punctures = [set() for _ in range(n)]
        for v, cyc in enumerate(tri.vertices):
            corner_pieces = {root_index[self.dsu.find(self.corner_face[c])]
                             for c in cyc}
            assert len(corner_pieces) == 1, "puncture split by the cut"
            punctures[corner_pieces.pop()].add(v)

        sides = [set() for _ in range(n)]
        self.item_side_piece = {}
        for idx, it in enumerate(self.items):
            lefts = set()
            rights = set()
            for ci in range(len(it.chords)):
                fl, fr = self.chord_faces[(idx, ci)]
                lefts.add(root_index[self.dsu.find(fl)])
                rights.add(root_index[self.dsu.find(fr)])
            assert len(lefts) == 1 and len(rights) == 1, \
                "curve side changes piece along the curve"
            l, r = lefts.pop(), rights.pop()
            sides[l].add((idx, "L"))
            sides[r].add((idx, "R"))
            self.item_side_piece[(idx, "L")] = l
            self.item_side_piece[(idx, "R")] = r

        self.pieces = []
        for i, r in enumerate(roots):
            chi = len(root_faces[r]) - glue_count[i]
            b = len(sides[i])
            p = len(punctures[i])
            g2 = 2 - chi - b - p
            assert g2 >= 0 and g2 % 2 == 0, "bad Euler bookkeeping"
            self.pieces.append(Piece(i, g2 // 2, chi,
                                     tuple(sorted(punctures[i])),
                                     tuple(sorted(sides[i])),
                                     frozenset(root_faces[r])))
        self._root_index = root_index
        total = sum(p.chi for p in self.pieces)
        assert total == tri.euler_surface(), "chi not conserved by the cut"

    # -- queries ------------------------------------------------------------

    def piece_of_point(self, t, k, pos):
        """Piece containing a point of side (t, k) at the given position,
        which must not be a crossing point of the system."""
        pts = self.side_pts.get((t, k), [])
        j = 0
        for (p, _i, _c) in pts:
            assert p != pos, "query point lies on the cut"
            if p < pos:
                j += 1
        f = self.interval_face[(t, k)][j]
        return self._root_index[self.dsu.find(f)]

    def piece_of_item(self, item):
        """Piece containing a traced item disjoint from the system."""
        for ch in item.chords:
            for end in (ch.end_in, ch.end_out):
                if end[0] == "side":
                    return self.piece_of_point(ch.tri, end[1], end[2])
        raise AssertionError("item has no side points")

    def piece_of_vertex(self, v):
        """Piece whose interior contains triangulation vertex (puncture) v."""
        c = self.tri.vertices[v][0]
        return self._root_index[self.dsu.find(self.corner_face[c])]
