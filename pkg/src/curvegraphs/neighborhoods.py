"""Boundary of a regular neighborhood of a union of traced geodesics.

The union of the items (curves and arcs, possibly pairwise crossing, each
simple) is an embedded graph: crossings are 4-valent vertices, and punctures
named in include_vertices are vertices joining the arc ends that run into
them.  The boundary circles of a regular neighborhood of the union are the
faces of this embedded graph, so they are read off by standard face tracing
of the rotation system, and each circuit's free-homotopy class is the word
of triangulation sides it crosses.

All rotation data is exact: the x-coordinate of the intersection of two
geodesics A1(x^2+y^2)+B1x+C1 = A2(x^2+y^2)+B2x+C2 = 0 is the rational
radical-line solution, the tangent cross product at a common point has the
sign of A2*B1 - A1*B2, and cusp rotations follow the vertex corner cycles
(counterclockwise in the developed frame, descending within a corner wedge).

Triple points (three items through one point) are rejected by assertion;
callers retry after a generic twist.
"""

from fractions import Fraction
from collections import defaultdict

from . import geom
from . import words as W
from .tracing import chord_endpoints_cross, _circ_key


def x_of_cross(Q1, Q2):
    """Rational x-coordinate of the crossing of two distinct geodesics."""
    A1, B1, C1 = Q1
    A2, B2, C2 = Q2
    if A1 == 0 and A2 == 0:
        raise AssertionError("parallel vertical geodesics do not cross")
    if A1 == 0:
        return Fraction(-C1, B1)
    if A2 == 0:
        return Fraction(-C2, B2)
    d = A2 * B1 - A1 * B2
    assert d != 0, "concentric geodesics do not cross"
    return Fraction(A1 * C2 - A2 * C1, d)


def y2_at(x, Q):
    """Squared height of the point of the geodesic Q over x (Q not a line)."""
    A, B, C = Q
    assert A != 0
    return Fraction(-(A * x * x + B * x + C), A)


class Network:
    """The embedded graph of a union of traced items, with word extraction
    for the boundary circles of its regular neighborhood."""

    def __init__(self, dev, items, include_vertices=frozenset()):
        self.dev = dev
        self.tri = dev.tri
        self.items = list(items)
        self.include_vertices = frozenset(include_vertices)
        self._collect_crossings()
        self._build_strands()
        self._build_rotations()

    # -- geometry of one chord ---------------------------------------------

    def _end_key(self, chord, end):
        """Ordering key of a chord endpoint along the chord: x for circle
        chords, y^2 for vertical chords ((1,) is the point at infinity)."""
        Q = chord.quad
        base = self.dev.base[chord.tri]
        if end[0] == "corner":
            p, q = base[end[1]]
            if q == 0:
                assert Q[0] == 0, "corner at infinity on a circle chord"
                return (1,)
            if Q[0] == 0:
                return (0, Fraction(0))
            return (0, Fraction(p, q))
        _, k, _pos = end
        a, b = base[(k + 1) % 3], base[(k + 2) % 3]
        P = geom.side_quad(a, b, geom.EXACT)
        if Q[0] == 0:
            x0 = Fraction(-Q[2], Q[1])
            assert P[0] != 0, "vertical chord ending on a vertical side"
            return (0, y2_at(x0, P))
        return (0, x_of_cross(Q, P))

    def _cross_key(self, chord, other_quad):
        """Ordering key along chord of its crossing with other_quad."""
        Q = chord.quad
        if Q[0] == 0:
            x0 = Fraction(-Q[2], Q[1])
            assert other_quad[0] != 0
            return (0, y2_at(x0, other_quad))
        return (0, x_of_cross(Q, other_quad))

    def _chord_dir(self, it, ci):
        """+1 if the chord's traversal runs along increasing key."""
        ch = self.items[it].chords[ci]
        kin = self._end_key(ch, ch.end_in)
        kout = self._end_key(ch, ch.end_out)
        assert kin != kout
        return 1 if kout > kin else -1

    # -- crossing collection -----------------------------------------------

    def _rot_sign(self, Qi, di, Qj, dj):
        """Sign of the cross product of traversal tangents at a common point
        (positive: j's direction is counterclockwise from i's)."""
        Ai, Bi, _ = Qi
        Aj, Bj, _ = Qj
        if Ai != 0 and Aj != 0:
            s = (1 if Ai * Aj > 0 else -1) * geom.EXACT.sign(Aj * Bi - Ai * Bj)
        elif Ai != 0:
            s = 1                     # circle (inc-x) vs vertical (inc-y)
        else:
            s = -1                    # vertical vs circle
        assert s != 0, "tangent geodesics"
        return s * di * dj

    def _collect_crossings(self):
        self.on_chord = defaultdict(list)   # (item, ci) -> [(key, vid)]
        self.vertex_items = {}              # vid -> (item_i, item_j, sign)
        self.tie_side = {}                  # (vid, item) -> (near, far) sides
        n_v = 0
        tie_seen = {}
        by_tri = defaultdict(list)
        for i, it in enumerate(self.items):
            for ci, ch in enumerate(it.chords):
                by_tri[ch.tri].append((i, ci, ch))
        for t, lst in by_tri.items():
            for a in range(len(lst)):
                for b in range(a + 1, len(lst)):
                    i, ci, c1 = lst[a]
                    j, cj, c2 = lst[b]
                    if i == j:
                        continue
                    r = chord_endpoints_cross(c1, c2)
                    if r is False:
                        continue
                    di, dj = self._chord_dir(i, ci), self._chord_dir(j, cj)
                    s = self._rot_sign(c1.quad, di, c2.quad, dj)
                    if r is True:
                        vid = n_v
                        n_v += 1
                        self.vertex_items[vid] = (i, j, s)
                        self.on_chord[(i, ci)].append(
                            (self._cross_key(c1, c2.quad), vid))
                        self.on_chord[(j, cj)].append(
                            (self._cross_key(c2, c1.quad), vid))
                    else:
                        # crossing exactly on a triangulation edge: one vertex,
                        # recorded at the end of the exiting chords only
                        shared = [e1 for e1 in (c1.end_in, c1.end_out)
                                  if e1[0] == "side"
                                  and e1 in (c2.end_in, c2.end_out)]
                        assert len(shared) == 1
                        end = shared[0]
                        key = self.items[i].canon[(t, end[1], end[2])]
                        tk = (min(i, j), max(i, j)) + key
                        if tk in tie_seen:
                            vid = tie_seen[tk]
                        else:
                            vid = tie_seen[tk] = n_v
                            n_v += 1
                            self.vertex_items[vid] = (i, j, s)
                        here = (t, end[1])
                        there = self.tri.glue[here]
                        for (idx, ci_, ch_) in ((i, ci, c1), (j, cj, c2)):
                            if ch_.end_out == end:
                                self.on_chord[(idx, ci_)].append(
                                    (self._end_key(ch_, end), vid))
                                self.tie_side[(vid, idx)] = (here, there)
                            else:
                                self.tie_side[(vid, idx)] = (there, here)
        self.tie_vids = set(tie_seen.values())
        self.n_crossings = n_v

    # -- strands -------------------------------------------------------------

    def _item_sequence(self, i):
        """Ordered (chord_index, vid) along item i, including arc endpoints
        as puncture vertices where requested."""
        it = self.items[i]
        seq = []
        for ci in range(len(it.chords)):
            lst = self.on_chord.get((i, ci), [])
            keys = [k for k, _ in lst]
            assert len(set(keys)) == len(keys), "triple point in the union"
            lst.sort(key=lambda r: r[0], reverse=self._chord_dir(i, ci) < 0)
            seq.extend((ci, vid) for _k, vid in lst)
        if not it.cyclic:
            first = it.chords[0]
            last = it.chords[-1]
            assert first.end_in[0] == "corner" and last.end_out[0] == "corner"
            v_in = self.tri.vertex_of[(first.tri, first.end_in[1])]
            v_out = self.tri.vertex_of[(last.tri, last.end_out[1])]
            if v_in in self.include_vertices:
                seq.insert(0, (0, ("cusp", v_in, i, "start")))
            if v_out in self.include_vertices:
                seq.append((len(it.chords) - 1, ("cusp", v_out, i, "end")))
        return seq

    def _build_strands(self):
        self.strands = []          # dicts: item, u, v, letters
        self.out_at = defaultdict(list)   # vertex -> [(dart)] outgoing forward
        self.in_at = defaultdict(list)
        for i, it in enumerate(self.items):
            seq = self._item_sequence(i)
            assert seq, "item disjoint from the rest of the union"
            n_ev = len(it.events)
            pairs = [(p, q, False) for p, q in zip(seq, seq[1:])]
            if it.cyclic:
                pairs.append((seq[-1], seq[0], True))
            for (cu, u), (cv, v), is_wrap in pairs:
                # a crossing on a triangulation edge sits at the exit point of
                # its chord, so the chord's own event belongs to the vertex,
                # not to the departing strand
                u_tie = not isinstance(u, tuple) and u in self.tie_vids
                if it.cyclic:
                    start = (cu + 1) % n_ev if u_tie else cu
                    span = (cv - start) % n_ev
                    if span == 0 and is_wrap and not u_tie:
                        span = n_ev
                    ev_idx = [(start + s) % n_ev for s in range(span)]
                else:
                    if isinstance(u, tuple) and u[0] == "cusp" \
                            and u[3] == "start":
                        a = 0
                    else:
                        a = cu + 1 if u_tie else cu
                    b = n_ev if isinstance(v, tuple) and v[0] == "cusp" \
                        and v[3] == "end" else cv
                    ev_idx = list(range(a, b))
                letters = []
                for e in ev_idx:
                    g = it.events[e].gen
                    if g is not None:
                        letters.append((g[0] + 1) * g[1])
                sid = len(self.strands)
                self.strands.append({"item": i, "u": u, "v": v,
                                     "letters": tuple(letters)})
                self.out_at[u].append((sid, 1))
                self.in_at[v].append((sid, 1))

    # -- rotations -----------------------------------------------------------

    def _arc_end_slot(self, i, which):
        """(corner slot, far-end key) for an arc end of item i."""
        it = self.items[i]
        ch = it.chords[0] if which == "start" else it.chords[-1]
        end = ch.end_in if which == "start" else ch.end_out
        far = ch.end_out if which == "start" else ch.end_in
        t, c = ch.tri, end[1]
        fk = _circ_key(far)
        rel = ((fk[0] - 2 * c) % 6,) + tuple(fk[1:])
        return (t, c), rel

    def _build_rotations(self):
        self.rot = {}
        self.cusp_meta = {}
        # crossing vertices
        fwd_out = {}
        fwd_in = {}
        for sid, st in enumerate(self.strands):
            fwd_out[(st["u"], st["item"])] = (sid, 1)
            fwd_in[(st["v"], st["item"])] = (sid, 1)
        for vid, (i, j, s) in self.vertex_items.items():
            out_i, out_j = fwd_out[(vid, i)], fwd_out[(vid, j)]
            bwd_i = (fwd_in[(vid, i)][0], -1)
            bwd_j = (fwd_in[(vid, j)][0], -1)
            if s > 0:
                self.rot[vid] = [out_i, out_j, bwd_i, bwd_j]
            else:
                self.rot[vid] = [out_i, bwd_j, bwd_i, out_j]
        # cusp vertices
        cusp_darts = defaultdict(list)
        for sid, st in enumerate(self.strands):
            for node, dart in ((st["u"], (sid, 1)), (st["v"], (sid, -1))):
                if isinstance(node, tuple) and node[0] == "cusp":
                    _, v, i, which = node
                    slot, far = self._arc_end_slot(i, which)
                    cyc = self.tri.vertices[v]
                    cidx = cyc.index(slot)
                    cusp_darts[v].append(((cidx, _Desc(far)), dart, node))
        for v, lst in cusp_darts.items():
            lst.sort(key=lambda r: r[0])
            darts = [d for _p, d, _n in lst]
            poss = [p for p, _d, _n in lst]
            # all arc-end nodes at this puncture share one graph vertex
            key = ("cusp_v", v)
            self.rot[key] = darts
            self.cusp_meta[key] = (v, poss)
            for _p, d, node in lst:
                self._remap_node(node, key)

    def _remap_node(self, node, key):
        for st in self.strands:
            if st["u"] == node:
                st["u"] = key
            if st["v"] == node:
                st["v"] = key

    # -- face tracing --------------------------------------------------------

    def _dart_head(self, dart):
        sid, d = dart
        return self.strands[sid]["v" if d == 1 else "u"]

    def _dart_letters(self, dart):
        sid, d = dart
        letters = self.strands[sid]["letters"]
        if d == 1:
            return letters
        return tuple(-x for x in reversed(letters))

    def _tie_letter(self, head, d_in, d_out):
        """Letter emitted when the face turn at an on-edge crossing passes
        from one side of the edge to the other (None when it stays put)."""
        st_in = self.strands[d_in[0]]
        st_out = self.strands[d_out[0]]
        near_in, far_in = self.tie_side[(head, st_in["item"])]
        near_out, far_out = self.tie_side[(head, st_out["item"])]
        arrive = near_in if d_in[1] == 1 else far_in
        depart = far_out if d_out[1] == 1 else near_out
        if arrive == depart:
            return None
        g = self.tri.gen_of_side.get(arrive)
        if g is None:
            return None
        return (g[0] + 1) * g[1]

    def _cusp_letters(self, key, pos_from, pos_to, wrap):
        v, _ = self.cusp_meta[key]
        cyc = self.tri.vertices[v]
        L = len(cyc)
        a, b = pos_from[0], pos_to[0]
        steps = (b - a) % L
        if steps == 0 and wrap:
            steps = L
        out = []
        for s in range(steps):
            t, c = cyc[(a + s) % L]
            side = (t, (c + 2) % 3)
            if side in self.tri.gen_of_side:
                g, e = self.tri.gen_of_side[side]
                out.append((g + 1) * e)
        return tuple(out)

    def boundary_words(self):
        """Words of the boundary circles of a regular neighborhood of the
        union (one per face of the embedded graph), cyclically reduced."""
        seen = set()
        out = []
        all_darts = [(sid, d) for sid in range(len(self.strands))
                     for d in (1, -1)]
        for d0 in all_darts:
            if d0 in seen:
                continue
            word = []
            d = d0
            while True:
                seen.add(d)
                word.extend(self._dart_letters(d))
                head = self._dart_head(d)
                rot = self.rot[head]
                twin = (d[0], -d[1])
                idx = rot.index(twin)
                nxt = rot[(idx + 1) % len(rot)]
                if isinstance(head, tuple) and head[0] == "cusp_v":
                    _, poss = self.cusp_meta[head]
                    wrap = (idx + 1) >= len(rot) or \
                        poss[(idx + 1) % len(rot)] <= poss[idx]
                    word.extend(self._cusp_letters(
                        head, poss[idx], poss[(idx + 1) % len(rot)], wrap))
                elif head in self.tie_vids:
                    x = self._tie_letter(head, d, nxt)
                    if x is not None:
                        word.append(x)
                d = nxt
                if d == d0:
                    break
            out.append(W.cyclic_reduce(tuple(word)))
        return out


class _Desc:
    """Reverse-ordering wrapper (counterclockwise within a corner wedge is
    descending far-endpoint order)."""

    def __init__(self, val):
        self.val = val

    def __lt__(self, other):
        return other.val < self.val

    def __le__(self, other):
        return other.val <= self.val

    def __eq__(self, other):
        return self.val == other.val

    def __repr__(self):
        return "Desc(%r)" % (self.val,)
