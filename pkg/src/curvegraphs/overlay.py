"""Overlaying traced geodesics: exact crossing counts.

All geodesics are in minimal position simultaneously, so geometric
intersection numbers are literal crossing counts.  Crossings in the interior
of a triangle show up as strictly interleaved chord endpoints; crossings that
happen to lie exactly on a triangulation edge show up as a shared endpoint in
both adjacent triangles and are deduplicated through a canonical per-edge
position key.
"""

from collections import defaultdict

from .tracing import _circ_key


class TracedItem:
    """A traced geodesic ready for overlay: per-triangle chords plus the map
    from side points to canonical edge positions."""

    def __init__(self, events, chords, tri, cyclic):
        self.events = events
        self.chords = chords
        self.cyclic = cyclic
        self.by_tri = defaultdict(list)
        for i, ch in enumerate(chords):
            self.by_tri[ch.tri].append((i, ch))
        self.keys = [(_int_key(_circ_key(ch.end_in)),
                      _int_key(_circ_key(ch.end_out))) for ch in chords]
        # (tri, k, pos) -> (edge, edge_pos)
        self.canon = {}
        for ev in events:
            t, k = ev.exit_side
            t2, k2 = tri.glue[(t, k)]
            self.canon[(t, k, ev.pos_exit)] = (ev.edge, ev.edge_pos)
            self.canon[(t2, k2, ev.pos_enter)] = (ev.edge, ev.edge_pos)

    def n_chords(self):
        return len(self.chords)

    def consecutive(self, i, j):
        if abs(i - j) == 1:
            return True
        if self.cyclic and {i, j} == {0, len(self.chords) - 1} and len(self.chords) > 1:
            return True
        return False


def _int_key(key):
    """Flatten a circular boundary key to plain integers: (slot,) for a
    corner, (slot, numerator, denominator) for a side point."""
    if len(key) == 1:
        return key
    slot, pos = key
    if isinstance(pos, int):
        return (slot, pos, 1)
    return (slot, pos.numerator, pos.denominator)


def _key_order(k):
    """Sort wrapper giving numeric order of flattened keys.  Corner and side
    slots never coincide, so only same-slot side keys need the rational
    comparison."""
    if len(k) == 1:
        return (k[0], _Frac0)
    return (k[0], _FracCmp(k[1], k[2]))


class _FracCmp:
    __slots__ = ("n", "d")

    def __init__(self, n, d):
        self.n = n
        self.d = d

    def __lt__(self, other):
        return self.n * other.d < other.n * self.d

    def __eq__(self, other):
        return self.n * other.d == other.n * self.d


_Frac0 = _FracCmp(0, 1)


def _rank_map(item1, lst1, item2, lst2):
    """Integer ranks of all chord-endpoint keys in one triangle, in circular
    boundary order; comparisons afterwards are pure int work."""
    keys = set()
    for i, _c in lst1:
        keys.update(item1.keys[i])
    for i, _c in lst2:
        keys.update(item2.keys[i])
    return {k: r for r, k in enumerate(sorted(keys, key=_key_order))}


def _ranked_cross(a1, a2, b1, b2, corner):
    """Crossing test on integer ranks; None flags a shared side point."""
    shared_side_pt = False
    for x in (b1, b2):
        if x == a1 or x == a2:
            if corner[x]:
                return False          # shared cusp: no crossing there
            shared_side_pt = True
    if shared_side_pt:
        return None
    if a1 < a2:
        in1 = a1 < b1 < a2
        in2 = a1 < b2 < a2
    else:
        in1 = b1 > a1 or b1 < a2
        in2 = b2 > a1 or b2 < a2
    return in1 != in2


def crossing_number(item1, item2):
    """Exact number of transverse crossings between two traced geodesics
    (which must be distinct, non-isotopic geodesics)."""
    total = 0
    tie_keys = set()
    for t, lst1 in item1.by_tri.items():
        lst2 = item2.by_tri.get(t)
        if not lst2:
            continue
        rank = _rank_map(item1, lst1, item2, lst2)
        corner = {r: len(k) == 1 for k, r in rank.items()}
        for i, c1 in lst1:
            a1, a2 = rank[item1.keys[i][0]], rank[item1.keys[i][1]]
            for j, c2 in lst2:
                b1, b2 = rank[item2.keys[j][0]], rank[item2.keys[j][1]]
                r = _ranked_cross(a1, a2, b1, b2, corner)
                if r is True:
                    total += 1
                elif r is None:
                    for end in (c1.end_in, c1.end_out):
                        if end[0] == "side" and end in (c2.end_in, c2.end_out):
                            key = item1.canon[(t, end[1], end[2])]
                            tie_keys.add(key)
    return total + len(tie_keys)


def self_crossing_number(item):
    """Exact self-intersection number of one traced geodesic."""
    total = 0
    tie_keys = set()
    for t, lst in item.by_tri.items():
        rank = _rank_map(item, lst, item, lst)
        corner = {r: len(k) == 1 for k, r in rank.items()}
        for a in range(len(lst)):
            for b in range(a + 1, len(lst)):
                i, c1 = lst[a]
                j, c2 = lst[b]
                if item.consecutive(i, j):
                    continue
                r = _ranked_cross(rank[item.keys[i][0]],
                                  rank[item.keys[i][1]],
                                  rank[item.keys[j][0]],
                                  rank[item.keys[j][1]], corner)
                if r is True:
                    total += 1
                elif r is None:
                    for end in (c1.end_in, c1.end_out):
                        if end[0] == "side" and end in (c2.end_in, c2.end_out):
                            key = item.canon[(t, end[1], end[2])]
                            tie_keys.add(key)
    return total + len(tie_keys)
