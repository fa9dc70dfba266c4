"""Independent brute-force oracles the tests compare the library against.

Each oracle deliberately avoids the code path it checks: geometry uses
floating-point chords on an honest circle, pseudo-intervals come from
exhaustive path enumeration, wall distances from full subset enumeration,
graph distances from a second BFS, and census balls from a separate
normal-form implementation with its own matrix arithmetic.
"""

from __future__ import annotations

import itertools
import math


# -- geometric chord oracle (regular leaves only) --------------------------------

def _coords(p):
    n = len(p.boundary)
    return {lab: (math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n))
            for i, lab in enumerate(p.boundary)}


def _seg_cross(a, b, c, d) -> bool:
    def orient(p, q, r):
        v = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
        return 0 if abs(v) < 1e-12 else (1 if v > 0 else -1)

    return (orient(a, b, c) * orient(a, b, d) < 0
            and orient(c, d, a) * orient(c, d, b) < 0)


def geometric_intersects(p, l1: str, l2: str) -> bool:
    xy = _coords(p)
    a, b = (xy[e] for e in p.leaves[l1].endpoints)
    c, d = (xy[e] for e in p.leaves[l2].endpoints)
    return _seg_cross(a, b, c, d)


def _side(xy, chord_eps, pt) -> int:
    a, b = chord_eps
    v = (b[0] - a[0]) * (pt[1] - a[1]) - (b[1] - a[1]) * (pt[0] - a[0])
    return 1 if v > 0 else -1


def geometric_separates_leaves(p, m: str, l1: str, l2: str) -> bool:
    xy = _coords(p)
    chord = tuple(xy[e] for e in p.leaves[m].endpoints)
    s1 = {_side(xy, chord, xy[e]) for e in p.leaves[l1].endpoints}
    s2 = {_side(xy, chord, xy[e]) for e in p.leaves[l2].endpoints}
    return s1 != s2


def _crossing_coords(p, plus: str, minus: str):
    xy = _coords(p)
    (x1, y1), (x2, y2) = (xy[e] for e in p.leaves[plus].endpoints)
    (x3, y3), (x4, y4) = (xy[e] for e in p.leaves[minus].endpoints)
    den = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4)
    t = ((x1 - x3) * (y3 - y4) - (y1 - y3) * (x3 - x4)) / den
    return (x1 + t * (x2 - x1), y1 + t * (y2 - y1))


def geometric_separates_point(p, leaf: str, pt_a, pt_b) -> bool:
    """Separation of two crossing points by a regular leaf, computed with
    float geometry and the on-leaf convention."""
    xy = _coords(p)
    on_a = leaf in (pt_a.plus_leaf, pt_a.minus_leaf)
    on_b = leaf in (pt_b.plus_leaf, pt_b.minus_leaf)
    if pt_a.key() == pt_b.key():
        return False
    if on_a and on_b:
        return False
    if on_a or on_b:
        return True
    chord = tuple(xy[e] for e in p.leaves[leaf].endpoints)
    ca = _crossing_coords(p, pt_a.plus_leaf, pt_a.minus_leaf)
    cb = _crossing_coords(p, pt_b.plus_leaf, pt_b.minus_leaf)
    return _side(xy, chord, ca) != _side(xy, chord, cb)


# -- pseudo-interval oracle --------------------------------------------------------

def _step_ok(p, a: str, b: str) -> bool:
    sign = p.leaves[a].sign
    return not any(p._separates(m, a, b)
                   for m in p.leaf_ids(sign) if m not in (a, b))


def all_monotone_paths(p, x: str, y: str, cap: int = 200_000):
    """All simple leaf paths from x to y whose consecutive steps jump over no
    same-family leaf."""
    sign = p.leaves[x].sign
    ids = p.leaf_ids(sign)
    paths = []
    stack = [(x, (x,))]
    count = 0
    while stack:
        cur, path = stack.pop()
        count += 1
        if count > cap:
            raise RuntimeError("path enumeration blew the cap")
        if cur == y:
            paths.append(path)
            continue
        for nxt in ids:
            if nxt in path:
                continue
            if _step_ok(p, cur, nxt):
                stack.append((nxt, path + (nxt,)))
    return paths


def oracle_pseudo_interval_set(p, x: str, y: str) -> set:
    if x == y:
        return {x}
    paths = all_monotone_paths(p, x, y)
    assert paths, f"no leaf path from {x} to {y}"
    out = set(paths[0])
    for path in paths[1:]:
        out &= set(path)
    return out


# -- wall distance oracle -----------------------------------------------------------

def oracle_wall_sup(p, x, y, kind: str) -> int:
    """Largest admissible separating family by full subset enumeration."""
    from bifol import walls as wl

    px, py = p.point(x), p.point(y)
    if px.key() == py.key():
        return 0
    seps = wl.separating_leaves(p, px, py, kind)
    best = 0
    for r in range(len(seps), 0, -1):
        if r <= best:
            break
        for combo in itertools.combinations(seps, r):
            ok = True
            for a, b in itertools.combinations(combo, 2):
                if p.intersects(a, b):
                    ok = False
                    break
                if kind in (wl.D_RPLUS, wl.D_RMINUS):
                    if not wl.reeb_separated(p, a, b):
                        ok = False
                        break
                else:
                    if not wl.aligned(p, a, b):
                        ok = False
                        break
            if ok:
                best = r
                break
    return best


# -- second BFS ---------------------------------------------------------------------

def oracle_bfs_distance(adj: dict, src: str, dst: str):
    frontier, dist, seen = [src], 0, {src}
    while frontier:
        if dst in frontier:
            return dist
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
        dist += 1
    return None


# -- census oracle --------------------------------------------------------------------

_A = ((2, 1), (1, 1))
_AINV = ((1, -1), (-1, 2))


def _apply(m, v):
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def _aff_mul(a, b):
    (k1, v1), (k2, v2) = a, b
    w = v2
    m = _A if k1 >= 0 else _AINV
    for _ in range(abs(k1)):
        w = _apply(m, w)
    return (k1 + k2, (v1[0] + w[0], v1[1] + w[1]))


def oracle_trivial_ball_sizes(nmax: int):
    """Hash-set BFS over the affine model with locally defined arithmetic."""
    gens = [(1, (0, 0)), (-1, (0, 0)), (0, (1, 0)), (0, (-1, 0)),
            (0, (0, 1)), (0, (0, -1))]
    ident = (0, (0, 0))
    seen = {ident}
    frontier = [ident]
    sizes = [1]
    for _ in range(nmax):
        nxt = []
        for w in frontier:
            for g in gens:
                c = _aff_mul(g, w)
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
        sizes.append(len(seen))
    return sizes
