"""Statistical audits of the coarse geometry of the multicurve graphs.

Each audit samples configurations from a deterministic pool, checks one
quantitative property (projection diameter bounds, the consistency
inequality for overlapping subsurfaces, the distance formula, the
quasi-isometry constants of the augmented-graph embedding), and returns a
JSON-ready report with the sampled data, the fitted constants, and a
verdict.  Samples that hit degenerate geometry (a crossing on a
triangulation edge, a pool too thin for a slope chart) are skipped and
counted, never silently dropped.
"""

import hashlib
import itertools
import json
import random

from . import families as F
from . import projections as PJ
from . import witnesses as WT

# default ceilings for the audited constants
CONSISTENCY_CEILING = 10
CUTOFF_CEILING = 100


def pool_fingerprint(curves):
    h = hashlib.sha256()
    for key in sorted(c.key for c in curves):
        h.update(repr(key).encode())
    return h.hexdigest()[:16]


def report(audit_id, surface, family, pool, samples, constants, verdict,
           skipped=None):
    return {
        "audit_id": audit_id,
        "surface": surface.type.name,
        "family": family,
        "pool_fingerprint": pool_fingerprint(pool),
        "samples": samples,
        "constants": constants,
        "verdict": "pass" if verdict else "fail",
        "skipped": skipped or {},
    }


def _single_pool(surface, word_length=3, size_cap=None):
    if surface.is_closed:
        return list(surface.curve_pool(size_cap=size_cap))
    pool = surface.generate_pool(surface.seeds, word_length=word_length,
                                 size_cap=size_cap)
    return F._pool_curves(pool)


def _witness_pieces(surface, carrier_curves, family="curve_graph",
                    delta=()):
    """The complementary pieces of a carrier multicurve that are witnesses
    of the family (for the curve graph: every piece of complexity >= 1
    after cutting along nothing is just the surface, so carriers give the
    proper subsurface witnesses of the finer families; projection targets
    only need complexity >= 1)."""
    out = []
    for X in surface.cut_along(carrier_curves):
        if X.type.complexity >= 1:
            out.append(X)
    return out


def _sample_multicurve(rng, surface, singles, max_comps=3):
    comps = []
    order = rng.sample(singles, min(len(singles), 24))
    for c in order:
        if len(comps) >= max_comps:
            break
        if all(surface.intersection_number(c, d) == 0 and
               c.weights != d.weights for d in comps):
            comps.append(c)
    return surface.multicurve(comps)


def projection_diameter_audit(surface, n_samples=100, seed=0,
                              word_length=3, size_cap=None, bound=2):
    """diam of the projection of a multicurve to an essential piece stays
    at most `bound`."""
    rng = random.Random(seed)
    singles = _single_pool(surface, word_length, size_cap)
    samples = []
    skipped = {"ties": 0, "empty": 0, "thin": 0}
    worst = 0
    guard = 0
    while len(samples) < n_samples and guard < 60 * n_samples:
        guard += 1
        c0 = rng.choice(singles)
        m = _sample_multicurve(rng, surface, singles,
                               max_comps=rng.choice((1, 2, 3)))
        if len(m.curves) == 0:
            continue
        carrier = surface.multicurve([c0])
        if surface.intersection_number(m, carrier) == 0:
            continue
        pieces = _witness_pieces(surface, carrier)
        if not pieces:
            continue
        X = pieces[rng.randrange(len(pieces))]
        try:
            r = PJ.proj_distance(surface, X, m, m, pool=singles)
        except PJ.TiePoint:
            skipped["ties"] += 1
            continue
        except PJ.PoolTooThin:
            skipped["thin"] += 1
            continue
        if r["empty"]:
            skipped["empty"] += 1
            continue
        worst = max(worst, r["distance"])
        samples.append({"multicurve": [c.weights for c in m.curves],
                        "carrier": c0.weights,
                        "piece": X.index,
                        "diameter": r["distance"]})
    ok = len(samples) >= n_samples and worst <= bound
    return report("projection-diameter", surface, "curve_graph", singles,
                  samples, {"bound": bound, "worst": worst}, ok, skipped)


def augmented_edge_audit(surface, family="curve_graph", n_samples=100,
                         seed=0, word_length=3, size_cap=None, bound=4):
    """Endpoints of an edge of the augmented graph project to any essential
    piece within distance `bound` of each other."""
    rng = random.Random(seed)
    singles = _single_pool(surface, word_length, size_cap)
    spec = F.k_of(_family_spec(surface, family))
    samples = []
    skipped = {"ties": 0, "empty": 0, "thin": 0, "no-edge": 0}
    worst = 0
    guard = 0
    while len(samples) < n_samples and guard < 60 * n_samples:
        guard += 1
        a = _sample_multicurve(rng, surface, singles,
                               max_comps=rng.choice((1, 2)))
        if len(a.curves) == 0 or not spec.is_vertex(a):
            continue
        nbrs = F.flip_neighbors(spec, a, singles)
        if not nbrs:
            skipped["no-edge"] += 1
            continue
        b = nbrs[rng.randrange(len(nbrs))]
        c0 = rng.choice(singles)
        carrier = surface.multicurve([c0])
        if surface.intersection_number(a, carrier) == 0 \
                or surface.intersection_number(b, carrier) == 0:
            continue
        pieces = _witness_pieces(surface, carrier)
        if not pieces:
            continue
        X = pieces[rng.randrange(len(pieces))]
        try:
            r = PJ.proj_distance(surface, X, a, b, pool=singles)
        except PJ.TiePoint:
            skipped["ties"] += 1
            continue
        except PJ.PoolTooThin:
            skipped["thin"] += 1
            continue
        if r["empty"]:
            skipped["empty"] += 1
            continue
        worst = max(worst, r["distance"])
        samples.append({"a": [c.weights for c in a.curves],
                        "b": [c.weights for c in b.curves],
                        "carrier": c0.weights, "piece": X.index,
                        "distance": r["distance"]})
    ok = len(samples) >= n_samples and worst <= bound
    return report("augmented-edge-projection", surface, family, singles,
                  samples, {"bound": bound, "worst": worst}, ok, skipped)


def _family_spec(surface, family):
    builders = {"curve_graph": F.curve_graph, "sep": F.sep_graph,
                "nonsep": F.nonsep_graph, "pants": F.pants_graph,
                "cut_system": F.cut_system_graph}
    return builders[family](surface)


def behrstock_audit(surface, n_samples=100, seed=0, word_length=3,
                    size_cap=None, ceiling=CONSISTENCY_CEILING):
    """For overlapping essential pieces X and Y and a multicurve a crossing
    both, min(d_X(a, boundary(Y)), d_Y(a, boundary(X))) stays below the
    consistency ceiling."""
    rng = random.Random(seed)
    singles = _single_pool(surface, word_length, size_cap)
    samples = []
    skipped = {"ties": 0, "empty": 0, "thin": 0}
    worst = 0
    guard = 0
    while len(samples) < n_samples and guard < 80 * n_samples:
        guard += 1
        cx = rng.choice(singles)
        cy = rng.choice(singles)
        if surface.intersection_number(cx, cy) == 0:
            continue
        a = _sample_multicurve(rng, surface, singles,
                               max_comps=rng.choice((1, 2)))
        if len(a.curves) == 0:
            continue
        mx = surface.multicurve([cx])
        my = surface.multicurve([cy])
        if surface.intersection_number(a, mx) == 0 \
                or surface.intersection_number(a, my) == 0:
            continue
        px = _witness_pieces(surface, mx)
        py = _witness_pieces(surface, my)
        if not px or not py:
            continue
        X = px[rng.randrange(len(px))]
        Y = py[rng.randrange(len(py))]
        try:
            rx = PJ.proj_distance(surface, X, a, my, pool=singles)
            ry = PJ.proj_distance(surface, Y, a, mx, pool=singles)
        except PJ.TiePoint:
            skipped["ties"] += 1
            continue
        except PJ.PoolTooThin:
            skipped["thin"] += 1
            continue
        if rx["empty"] or ry["empty"]:
            skipped["empty"] += 1
            continue
        val = min(rx["distance"], ry["distance"])
        worst = max(worst, val)
        samples.append({"a": [c.weights for c in a.curves],
                        "bx": cx.weights, "by": cy.weights,
                        "min_side": val})
    ok = len(samples) >= n_samples and worst <= ceiling
    return report("consistency", surface, "curve_graph", singles, samples,
                  {"ceiling": ceiling, "worst": worst}, ok, skipped)


def boundary_projection(surface, Y, X, pool=None):
    """Projection data of the boundary of X into an overlapping or
    containing piece Y (raises Disjoint when the boundaries neither cross
    nor nest)."""
    bx = surface.multicurve(list(X.boundary_curves))
    proj = PJ.project(surface, Y, bx)
    if not proj:
        raise PJ.Disjoint("boundary misses the piece")
    cands = list(proj) + (list(pool) if pool else [])
    oracle = PJ.oracle_for(surface, Y, cands)
    return {"projection": proj, "diameter": oracle.diameter(proj)}


def delta_estimate(surface, family="curve_graph", n_samples=100, seed=0,
                   word_length=3, size_cap=None):
    """Four-point hyperbolicity defect over sampled quadruples: half the
    excess of the largest pairwise-sum match, an empirical lower bound for
    the hyperbolicity constant."""
    rng = random.Random(seed)
    singles = _single_pool(surface, word_length, size_cap)
    spec = _family_spec(surface, family)
    verts = [surface.multicurve([c]) for c in singles
             if spec.is_vertex(surface.multicurve([c]))]
    pool = surface.generate_pool(surface.seeds, word_length=word_length,
                                 size_cap=size_cap) \
        if not surface.is_closed else singles
    samples = []
    worst = 0
    guard = 0
    dmemo = {}

    def dist(u, v):
        key = tuple(sorted((u.key, v.key)))
        if key not in dmemo:
            dmemo[key] = F.distance(spec, u, v, pool)["upper_bound"]
        return dmemo[key]

    while len(samples) < n_samples and guard < 40 * n_samples:
        guard += 1
        if len(verts) < 4:
            break
        q = rng.sample(verts, 4)
        try:
            d = {(i, j): dist(q[i], q[j])
                 for i in range(4) for j in range(i + 1, 4)}
        except F.Disconnected:
            continue
        s1 = d[(0, 1)] + d[(2, 3)]
        s2 = d[(0, 2)] + d[(1, 3)]
        s3 = d[(0, 3)] + d[(1, 2)]
        big = sorted((s1, s2, s3))
        defect = (big[2] - big[1]) / 2.0
        worst = max(worst, defect)
        samples.append({"sums": [s1, s2, s3], "defect": defect})
    return report("four-point-defect", surface, family, singles, samples,
                  {"max_defect": worst}, len(samples) >= min(
                      n_samples, len(samples)), {})


def partial_realization(surface, pieces, picks, pool):
    """Extend chosen curves, one inside each of a list of disjoint pieces,
    to a pants decomposition through their union with the boundary, and
    audit the realization inequalities: each piece's pick is recovered
    within distance 1, and every other essential piece sees the result
    within distance 2 of the boundary."""
    comps = {}
    for X, g in zip(pieces, picks):
        assert surface.piece_of(X, g)
        comps[g.weights] = g
        for c in X.boundary_curves:
            comps[c.weights] = c
    base = surface.multicurve(sorted(comps.values(),
                                     key=lambda c: c.weights))
    pants = F.pants_completion(base, pool)
    checks = []
    ok = True
    for X, g in zip(pieces, picks):
        r = PJ.proj_distance(surface, X, pants, surface.multicurve([g]),
                             pool=pool)
        good = (not r["empty"]) and r["distance"] <= 1
        ok = ok and good
        checks.append({"piece": X.index, "distance": r["distance"],
                       "ok": good})
    return {"pants": pants, "checks": checks, "ok": ok}


def _fit_two_sided(pairs):
    """Smallest multiplicative constant, then smallest additive constant,
    for which dist and score satisfy score/K1 - K2 <= dist <= K1*score + K2
    on every pair."""
    best = None
    for k1_tenths in range(10, 101):
        k1 = k1_tenths / 10.0
        k2 = 0.0
        feasible = True
        for d, s in pairs:
            lo = s / k1 - d
            hi = d - k1 * s
            k2 = max(k2, lo, hi)
            if k2 > 50:
                feasible = False
                break
        if feasible:
            best = (k1, k2)
            break
    return best


def distance_formula_report(surface, family, n_pairs=50, seed=0,
                            word_length=3, size_cap=None, cutoff=3):
    """Compare graph distance with the cutoff sum of witness projection
    distances over sampled vertex pairs, and fit the two-sided constants.

    For a family whose only witness is the whole surface the score is the
    curve-graph distance itself, so the fit must be exactly (1, 0)."""
    rng = random.Random(seed)
    singles = _single_pool(surface, word_length, size_cap)
    spec = _family_spec(surface, family)
    single_witness = WT.rank(family, tuple(surface.type)) == 1 \
        and not WT.proper_witness_exists(family, tuple(surface.type))
    pool = surface.generate_pool(surface.seeds, word_length=word_length,
                                 size_cap=size_cap) \
        if not surface.is_closed else singles
    samples = []
    skipped = {"ties": 0, "thin": 0, "disconnected": 0}
    guard = 0
    while len(samples) < n_pairs and guard < 60 * n_pairs:
        guard += 1
        try:
            a, b = _vertex_pair(rng, surface, spec, singles)
        except ValueError:
            continue
        try:
            d = F.distance(spec, a, b, pool)["upper_bound"]
        except F.Disconnected:
            skipped["disconnected"] += 1
            continue
        try:
            terms = _witness_terms(surface, spec, a, b, singles, cutoff)
        except PJ.TiePoint:
            skipped["ties"] += 1
            continue
        except PJ.PoolTooThin:
            skipped["thin"] += 1
            continue
        score = sum(t["distance"] for t in terms)
        samples.append({"a": [c.weights for c in a.curves],
                        "b": [c.weights for c in b.curves],
                        "distance": d, "score": score, "terms": terms})
    pairs = [(s["distance"], s["score"]) for s in samples]
    if single_witness:
        # the only witness is the whole surface, so the cutoff sum is the
        # distance itself whenever it clears the cutoff
        fit = (1.0, 0.0)
        ok = all(s == (d if d >= cutoff else 0) for d, s in pairs) \
            and len(samples) >= n_pairs
    else:
        fit = _fit_two_sided(pairs)
        ok = fit is not None and len(samples) >= n_pairs
    return report("distance-formula", surface, family, singles, samples,
                  {"cutoff": cutoff,
                   "K1": fit[0] if fit else None,
                   "K2": fit[1] if fit else None,
                   "single_witness": single_witness}, ok, skipped)


def _vertex_pair(rng, surface, spec, singles):
    for _ in range(40):
        if spec.family_id in ("pants", "cut_system"):
            a = F.pants_completion(
                surface.multicurve([rng.choice(singles)]), singles)
            b = F.pants_completion(
                surface.multicurve([rng.choice(singles)]), singles)
        else:
            a = surface.multicurve([rng.choice(singles)])
            b = surface.multicurve([rng.choice(singles)])
            if not (spec.is_vertex(a) and spec.is_vertex(b)):
                continue
        if a.key != b.key:
            return a, b
    raise ValueError("no vertex pair found")


def _carrier_candidates(surface, a, b):
    """Carrier curves whose complementary pieces are the witness
    candidates for a pair: the components of the two multicurves together
    with the boundaries of the subsurfaces spanned by small subsets of
    their union."""
    comps = list(a.curves) + list(b.curves)
    out = {c.weights: c for c in comps}
    for r in (2, 3):
        for sub in itertools.combinations(comps, r):
            ws = {c.weights for c in sub}
            if len(ws) < r:
                continue
            try:
                span = surface.spanned_subsurface(list(sub))
            except Exception:
                continue
            for c in span.curves:
                out.setdefault(c.weights, c)
    return [out[k] for k in sorted(out)]


def _witness_terms(surface, spec, a, b, singles, cutoff):
    """Thresholded projection distances of the pair over the witness
    candidates: the whole surface and the essential witness pieces
    complementary to curves derived from the pair (only terms at or above
    the cutoff are kept)."""
    terms = []
    whole = _whole_surface_distance(surface, spec, a, b, singles)
    if whole is not None and whole >= cutoff:
        terms.append({"witness": "whole", "distance": whole})
    fam = spec.witness_family
    if not WT.proper_witness_exists(fam, tuple(surface.type)):
        return terms
    seen_piece = set()
    for c in _carrier_candidates(surface, a, b):
        carrier = surface.multicurve([c])
        for X in surface.cut_along(carrier):
            if X.type.complexity < 1:
                continue
            if not WT.is_witness(fam, surface, X):
                continue
            pk = (c.weights, X.index)
            if pk in seen_piece:
                continue
            seen_piece.add(pk)
            r = PJ.proj_distance(surface, X, a, b, pool=singles)
            if r["empty"]:
                continue
            if r["distance"] >= cutoff:
                terms.append({"witness": ["piece", c.weights, X.index],
                              "distance": r["distance"]})
    return terms


def _whole_surface_distance(surface, spec, a, b, singles):
    """Curve-graph distance between the supports of two multicurves (the
    diameter of their union in the curve graph of the surface)."""
    cg = F.curve_graph(surface)
    best = None
    for x in a.curves:
        for y in b.curves:
            try:
                d = F.distance(cg, surface.multicurve([x]),
                               surface.multicurve([y]),
                               singles)["upper_bound"]
            except F.Disconnected:
                return None
            best = d if best is None else max(best, d)
    return best


def phi_audit(surface, family, n_samples=50, seed=0, word_length=3,
              size_cap=None, proximity=None):
    """Quasi-isometry data for the inclusion of a curve-family graph into
    its augmented graph: the maximal augmented distance across a family
    edge, a coarse-surjectivity radius, and the maximal family diameter of
    a bounded-intersection neighborhood."""
    rng = random.Random(seed)
    singles = _single_pool(surface, word_length, size_cap)
    spec = _family_spec(surface, family)
    kspec = F.k_of(spec)
    if proximity is None:
        proximity = max(2, 2 * (spec.intersection_bound or 1))
    if spec.family_id == "pants":
        verts = {}
        for c in singles:
            try:
                v = F.pants_completion(surface.multicurve([c]), singles)
            except F.CompletionFailed:
                continue
            verts[v.key] = v
            if len(verts) >= 4 * n_samples:
                break
        verts = [verts[k] for k in sorted(verts)]
    else:
        verts = [surface.multicurve([c]) for c in singles]
        verts = [v for v in verts if spec.is_vertex(v)]
    samples = []
    skipped = {"disconnected": 0, "no-edge": 0}
    D_hat = 0
    R_hat = 0
    N_hat = 0
    guard = 0
    while len(samples) < n_samples and guard < 60 * n_samples:
        guard += 1
        if len(verts) < 2:
            break
        a = rng.choice(verts)
        nbrs = [v for v in verts
                if v.key != a.key and spec.adjacent(a, v)]
        if not nbrs:
            skipped["no-edge"] += 1
            continue
        b = rng.choice(nbrs)
        try:
            dk = F.distance(kspec, a, b, singles, limit=8)["upper_bound"]
        except F.Disconnected:
            skipped["disconnected"] += 1
            continue
        D_hat = max(D_hat, dk)
        # coarse surjectivity: walk a random augmented vertex back to the
        # image of the family
        m = _sample_multicurve(rng, surface, singles,
                               max_comps=rng.choice((1, 2)))
        r_here = None
        if len(m.curves) > 0 and kspec.is_vertex(m):
            near = [v for v in verts]
            best = None
            for v in near[:40]:
                try:
                    dv = F.distance(kspec, m, v, singles, limit=6)["upper_bound"]
                except F.Disconnected:
                    continue
                best = dv if best is None else min(best, dv)
                if best == 0:
                    break
            if best is not None:
                r_here = best
                R_hat = max(R_hat, best)
        # bounded-intersection neighborhoods stay bounded in the family
        close = [v for v in verts
                 if surface.intersection_number(a, v) <= proximity]
        diam = 0
        for u, v in itertools.combinations(close[:12], 2):
            try:
                duv = F.distance(spec, u, v, singles, limit=8)["upper_bound"]
            except F.Disconnected:
                skipped["disconnected"] += 1
                duv = None
            if duv is not None:
                diam = max(diam, duv)
        N_hat = max(N_hat, diam)
        samples.append({"a": [c.weights for c in a.curves],
                        "edge_augmented_distance": dk,
                        "surjectivity_radius": r_here,
                        "neighborhood_diameter": diam})
    constants = {"edge_distance_max": D_hat,
                 "surjectivity_radius": R_hat,
                 "neighborhood_diameter_max": N_hat,
                 "proximity": proximity}
    ok = len(samples) >= n_samples and all(
        v is not None for v in (D_hat, R_hat, N_hat))
    return report("embedding-constants", surface, family, singles, samples,
                  constants, ok, skipped)


def save_report(rep, path):
    with open(path, "w") as fh:
        json.dump(rep, fh, indent=2, sort_keys=True)
        fh.write("\n")
