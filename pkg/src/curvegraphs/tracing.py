"""Tracing geodesics through a developed ideal triangulation.

A closed geodesic is traced as the axis of its holonomy matrix: starting from
the base triangle we walk to a triangle the axis meets, then follow it in the
attracting direction for one full period (until the crossed edge lift is the
holonomy image of the first one).  A cusp-to-cusp geodesic (arc) is traced
between its two rational endpoints.

The trace is reported as a cyclic (resp. linear) sequence of crossing events
and per-triangle chords in the coordinates of each triangle's base lift, so
traces of different geodesics can be overlaid exactly.
"""

from dataclasses import dataclass
from typing import Optional

from . import geom
from .geom import EXACT


@dataclass(frozen=True)
class Event:
    """One crossing of a triangulation edge."""
    edge: int
    exit_side: tuple          # (t, k) crossed, seen from the exited triangle
    pos_exit: object          # position on side k in t's base frame
    pos_enter: object         # position on glued side in neighbor's base frame
    edge_pos: object          # position in the canonical frame of the edge
    gen: Optional[tuple]      # (gen index, exponent) if the side is non-tree


@dataclass(frozen=True)
class Chord:
    """Segment of a geodesic inside one triangle (base-frame coordinates).

    Endpoints are ('side', k, pos) or ('corner', c) for arc ends at cusps.
    quad is the geodesic's quadric in the triangle's base frame; it lets
    downstream code order crossing points along the chord exactly.
    """
    tri: int
    end_in: tuple
    end_out: tuple
    quad: Optional[tuple] = None


def _circ_key(end):
    """Position of a chord endpoint in the cyclic boundary order of an ideal
    triangle: corner 0, side 2, corner 1, side 0, corner 2, side 1."""
    if end[0] == "corner":
        return (2 * end[1],)
    _, k, pos = end
    return ((2 * k + 3) % 6, pos)


def chord_endpoints_cross(c1, c2):
    """True / False / None (None: the chords share a boundary point on a side,
    i.e. the geodesics cross exactly on an edge; shared corners do not
    cross)."""
    a1, a2 = _circ_key(c1.end_in), _circ_key(c1.end_out)
    b1, b2 = _circ_key(c2.end_in), _circ_key(c2.end_out)
    shared_side_pt = False
    for x in (b1, b2):
        if x in (a1, a2):
            if len(x) == 1:
                return False          # shared cusp: no crossing there
            shared_side_pt = True
    if shared_side_pt:
        return None

    def between(x, lo, hi):
        if lo < hi:
            return lo < x < hi
        return x > lo or x < hi

    return between(b1, a1, a2) != between(b2, a1, a2)


class Tracer:
    def __init__(self, dev):
        self.dev = dev
        self.tri = dev.tri
        self.sc = dev.sc

    # -- elementary predicates --------------------------------------------

    def _side_pts(self, verts, k):
        return verts[(k + 1) % 3], verts[(k + 2) % 3]

    def _crossed_sides(self, Q, verts):
        sc = self.sc
        out = []
        for k in range(3):
            a, b = self._side_pts(verts, k)
            if sc.sign(geom.quad_eval(Q, a)) * sc.sign(geom.quad_eval(Q, b)) < 0:
                out.append(k)
        return out

    def _walk_to(self, Q, beyond_sign):
        """Walk from the base triangle to a triangle met by the geodesic Q.

        beyond_sign(P_side, s_apex) must return True when the whole geodesic
        is (weakly) on the far side of the side's geodesic from the apex.
        Returns (t, verts).
        """
        t, verts = self.tri.dev_order[0], self.dev.base[self.tri.dev_order[0]]
        guard = 0
        while True:
            guard += 1
            assert guard < 100000, "runaway walk"
            if self._crossed_sides(Q, verts):
                return t, verts
            moved = False
            for k in range(3):
                a, b = self._side_pts(verts, k)
                P = geom.side_quad(a, b, self.sc)
                s_c = self.sc.sign(geom.quad_eval(P, verts[k]))
                if beyond_sign(P, s_c):
                    t, verts = self.dev.neighbor(t, verts, k)
                    moved = True
                    break
            if not moved:
                # the geodesic meets no side strictly and cannot be pushed
                # further: it must share endpoints with this triangle's corners
                return t, verts

    # -- closed geodesics --------------------------------------------------

    def trace_curve(self, M):
        """One period of the axis of the hyperbolic matrix M.

        Returns (events, chords): cyclic lists of equal length n, where
        chords[i] lies in the triangle between events[i-1] and events[i].
        """
        sc = self.sc
        Q = geom.axis_quad(M, sc)
        att_plus = geom.attracting_sign(M, sc) > 0

        def axis_beyond(P, s_c):
            sm, sp = geom.signs_at_roots(P, Q, sc)
            return sm == sp == -s_c and s_c != 0

        def attract_beyond(P, s_c):
            sm, sp = geom.signs_at_roots(P, Q, sc)
            s_beta = sp if att_plus else sm
            return s_beta == -s_c and s_c != 0

        t, verts = self._walk_to(Q, axis_beyond)
        crossed = self._crossed_sides(Q, verts)
        assert len(crossed) == 2, "axis must cross the met triangle"

        exit_k = None
        for k in crossed:
            a, b = self._side_pts(verts, k)
            P = geom.side_quad(a, b, sc)
            s_c = sc.sign(geom.quad_eval(P, verts[k]))
            if attract_beyond(P, s_c):
                exit_k = k
                break
        assert exit_k is not None

        raw = []  # (t, exit_k, verts)
        start = target = None
        guard = 0
        while True:
            guard += 1
            assert guard < 200000, "runaway trace"
            a, b = self._side_pts(verts, exit_k)
            cur = frozenset((a, b))
            if start is None:
                start = cur
                target = frozenset((geom.mat_apply(M, a, sc),
                                    geom.mat_apply(M, b, sc)))
            raw.append((t, exit_k, verts))
            t, verts = self.dev.neighbor(t, verts, exit_k)
            crossed = self._crossed_sides(Q, verts)
            assert len(crossed) == 2, "axis lost during trace"
            nxt = [k for k in crossed
                   if frozenset(self._side_pts(verts, k)) != cur]
            assert len(nxt) == 1
            exit_k = nxt[0]
            if frozenset(self._side_pts(verts, exit_k)) == target:
                break

        return self._assemble_cyclic(raw, Q)

    def _event_of(self, t, k, verts, Q):
        """Build the Event for crossing side (t, k) from lift verts."""
        sc = self.sc
        H_exit = geom.mat_from_3pts(self.dev.base[t], verts, sc)
        Qn_exit = geom.quad_transform(Q, H_exit, sc)
        a, b = self._side_pts(self.dev.base[t], k)
        pos_exit = geom.cross_pos(Qn_exit, a, b, sc)

        t2, verts2 = self.dev.neighbor(t, verts, k)
        k2 = self.tri.glue[(t, k)][1]
        H_ent = geom.mat_from_3pts(self.dev.base[t2], verts2, sc)
        Qn_ent = geom.quad_transform(Q, H_ent, sc)
        a2, b2 = self._side_pts(self.dev.base[t2], k2)
        pos_enter = geom.cross_pos(Qn_ent, a2, b2, sc)

        e = self.tri.edge_of[(t, k)]
        canon = self.tri.edges[e][0]
        edge_pos = pos_exit if canon == (t, k) else pos_enter
        gen = self.tri.gen_of_side.get((t, k))
        return Event(e, (t, k), pos_exit, pos_enter, edge_pos, gen), Qn_exit, Qn_ent

    def _assemble_cyclic(self, raw, Q):
        n = len(raw)
        events = []
        enter_data = []
        for (t, k, verts) in raw:
            ev, Qn_exit, Qn_ent = self._event_of(t, k, verts, Q)
            events.append(ev)
            enter_data.append((Qn_exit, Qn_ent))
        chords = []
        for i in range(n):
            t, k_out, _ = raw[i]
            pt_out = ("side", k_out, events[i].pos_exit)
            pe, ke = raw[i - 1][0], raw[i - 1][1]
            t_prev_gl, k_in = self.tri.glue[(pe, ke)]
            assert t_prev_gl == t
            pt_in = ("side", k_in, events[i - 1].pos_enter)
            chords.append(Chord(t, pt_in, pt_out, enter_data[i][0]))
        return events, chords

    # -- cusp-to-cusp geodesics (arcs) -------------------------------------

    def trace_arc(self, p, q):
        """Trace the geodesic from cusp lift p to cusp lift q (projective
        rational points).  Returns (events, chords, corner_in, corner_out)
        where chords has len(events) + 1 entries and the first/last chords end
        at ('corner', c) points; corner_in/out are (t, c) corner slots of the
        base frames.

        For the degenerate case (the arc is a lift of a triangulation edge)
        events is empty and a single corner-to-corner chord is returned.
        """
        sc = self.sc
        assert not geom.pt_eq(p, q, sc)
        Q = geom.side_quad(p, q, sc)

        def arc_beyond(P, s_c):
            if s_c == 0:
                return False
            sp_ = sc.sign(geom.quad_eval(P, p))
            sq_ = sc.sign(geom.quad_eval(P, q))
            return (sp_ == -s_c or sp_ == 0) and (sq_ == -s_c or sq_ == 0) \
                and not (sp_ == 0 and sq_ == 0)

        t, verts = self._walk_to(Q, arc_beyond)
        crossed = self._crossed_sides(Q, verts)

        if not crossed:
            # degenerate: both endpoints are corners of this triangle
            cs = [c for c in range(3) if geom.pt_eq(verts[c], p, sc)]
            ce = [c for c in range(3) if geom.pt_eq(verts[c], q, sc)]
            assert cs and ce, "arc walk stalled away from the arc"
            H = geom.mat_from_3pts(self.dev.base[t], verts, sc)
            chord = Chord(t, ("corner", cs[0]), ("corner", ce[0]),
                          geom.quad_transform(Q, H, sc))
            return [], [chord], (t, cs[0]), (t, ce[0])

        # walk backward to the triangle where the arc starts at corner p
        tb, vb = t, verts
        guard = 0
        while True:
            guard += 1
            assert guard < 100000
            exit_back = None
            for k in self._crossed_sides(Q, vb):
                a, b = self._side_pts(vb, k)
                P = geom.side_quad(a, b, sc)
                s_c = sc.sign(geom.quad_eval(P, vb[k]))
                if sc.sign(geom.quad_eval(P, p)) == -s_c:
                    exit_back = k
                    break
            if exit_back is None:
                break
            tb, vb = self.dev.neighbor(tb, vb, exit_back)
        # now p is a corner of (tb, vb)
        c_in = [c for c in range(3) if geom.pt_eq(vb[c], p, sc)]
        assert c_in, "backward arc walk lost the start cusp"

        # forward pass from the start triangle
        raw = []
        tf, vf = tb, vb
        guard = 0
        while True:
            guard += 1
            assert guard < 100000
            exit_fwd = None
            for k in self._crossed_sides(Q, vf):
                a, b = self._side_pts(vf, k)
                P = geom.side_quad(a, b, sc)
                s_c = sc.sign(geom.quad_eval(P, vf[k]))
                if sc.sign(geom.quad_eval(P, q)) == -s_c:
                    exit_fwd = k
                    break
            if exit_fwd is None:
                break
            raw.append((tf, exit_fwd, vf))
            tf, vf = self.dev.neighbor(tf, vf, exit_fwd)
        c_out = [c for c in range(3) if geom.pt_eq(vf[c], q, sc)]
        assert c_out, "forward arc walk lost the end cusp"

        events = []
        quads = []
        for (t_, k_, verts_) in raw:
            ev, Qn_exit, _ = self._event_of(t_, k_, verts_, Q)
            events.append(ev)
            quads.append(Qn_exit)
        H_last = geom.mat_from_3pts(self.dev.base[tf], vf, sc)
        quads.append(geom.quad_transform(Q, H_last, sc))
        chords = []
        n = len(raw)
        for i in range(n + 1):
            if i == 0:
                pt_in = ("corner", c_in[0])
                t_cur = raw[0][0] if raw else tb
            else:
                pe, ke = raw[i - 1][0], raw[i - 1][1]
                t_cur, k_in = self.tri.glue[(pe, ke)]
                pt_in = ("side", k_in, events[i - 1].pos_enter)
            if i == n:
                pt_out = ("corner", c_out[0])
            else:
                assert raw[i][0] == t_cur
                pt_out = ("side", raw[i][1], events[i].pos_exit)
            chords.append(Chord(t_cur, pt_in, pt_out, quads[i]))
        return events, chords, (tb, c_in[0]), (tf, c_out[0])
