"""Leaf graphs of a pattern: intersection graphs, the true-interval graphs,
distances, path projection, bottleneck certification and the inclusion
quasi-isometry check.

Five kinds are supported.  In the one-family graphs two leaves are adjacent
when a common nonsingular leaf of the other family crosses both; in the full
graph adjacency is crossing itself; in the true-interval graphs two leaves
are adjacent when nothing but an honest interval lies between them.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass

from .pattern import (
    PLUS, MINUS, FinitePattern, Mode, PreconditionError, UnknownIdError,
)

XPLUS, XMINUS, XFULL = "xplus", "xminus", "x"
GAMMAPLUS, GAMMAMINUS = "gammaplus", "gammaminus"
KINDS = (XPLUS, XMINUS, XFULL, GAMMAPLUS, GAMMAMINUS)

INF = math.inf


@dataclass(frozen=True)
class LeafGraph:
    kind: str
    vertices: tuple[str, ...]
    adj: dict  # vertex -> frozenset of neighbours

    def neighbours(self, v: str) -> frozenset:
        try:
            return self.adj[v]
        except KeyError:
            raise UnknownIdError(f"vertex {v!r} not in graph") from None

    def edges(self):
        return [(u, v) for u in self.vertices for v in self.adj[u] if u < v]

    def subgraph(self, keep) -> "LeafGraph":
        keep = set(keep)
        return LeafGraph(self.kind, tuple(v for v in self.vertices if v in keep),
                         {v: frozenset(self.adj[v] & keep)
                          for v in self.vertices if v in keep})


def _crossed_by_common_nonsingular(p: FinitePattern, sign: str, a: str, b: str) -> bool:
    other = MINUS if sign == PLUS else PLUS
    for t in p.leaf_ids(other):
        if p.leaf(t).is_singular:
            continue
        if p.intersects(t, a) and p.intersects(t, b):
            return True
    return False


def build_graph(p: FinitePattern, kind: str) -> LeafGraph:
    kind = kind.lower()
    if kind not in KINDS:
        raise PreconditionError(f"unknown graph kind {kind!r}")
    if kind == XFULL:
        verts = sorted(p.leaves)
        adj = {v: set() for v in verts}
        for a, b in itertools.combinations(verts, 2):
            if p.intersects(a, b):
                adj[a].add(b)
                adj[b].add(a)
    else:
        sign = PLUS if kind in (XPLUS, GAMMAPLUS) else MINUS
        verts = sorted(p.leaf_ids(sign))
        adj = {v: set() for v in verts}
        for a, b in itertools.combinations(verts, 2):
            if kind in (XPLUS, XMINUS):
                linked = _crossed_by_common_nonsingular(p, sign, a, b)
            else:
                linked = p.pseudo_interval(a, b, Mode.NONSEP).is_interval
            if linked:
                adj[a].add(b)
                adj[b].add(a)
    return LeafGraph(kind, tuple(verts), {v: frozenset(ns) for v, ns in adj.items()})


def distances_from(G: LeafGraph, src: str) -> dict:
    if src not in G.adj:
        raise UnknownIdError(f"vertex {src!r} not in graph")
    dist = {src: 0}
    q = deque([src])
    while q:
        u = q.popleft()
        for w in G.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def distance(G: LeafGraph, u: str, v: str):
    if v not in G.adj:
        raise UnknownIdError(f"vertex {v!r} not in graph")
    return distances_from(G, u).get(v, INF)


def diameter(G: LeafGraph):
    best = 0
    for v in G.vertices:
        d = distances_from(G, v)
        if len(d) < len(G.vertices):
            return INF
        best = max(best, max(d.values(), default=0))
    return best


def connected_components(G: LeafGraph) -> list[tuple[str, ...]]:
    seen, comps = set(), []
    for v in G.vertices:
        if v in seen:
            continue
        comp = set(distances_from(G, v))
        seen |= comp
        comps.append(tuple(sorted(comp)))
    return comps


def project_path(p: FinitePattern, G: LeafGraph, path) -> tuple[str, ...]:
    """Ordered union of the separator intervals spanned by the edges of a
    path in a one-family intersection graph.  Independent of how each edge is
    realized, because separator sets between adjacent leaves are canonical."""
    path = list(path)
    if not path:
        raise PreconditionError("empty path")
    for v in path:
        if v not in G.adj:
            raise UnknownIdError(f"vertex {v!r} not in graph")
    out = [path[0]]
    for u, v in zip(path, path[1:]):
        if v not in G.adj[u]:
            raise PreconditionError(f"{u} and {v} are not adjacent")
        seg = p.pseudo_interval(u, v, Mode.NONSEP).chain
        for leaf in seg[1:]:
            if leaf != out[-1]:
                out.append(leaf)
    return tuple(out)


@dataclass(frozen=True)
class BottleneckWitness:
    x: str
    y: str
    midpoint: str


@dataclass(frozen=True)
class BottleneckResult:
    passed: bool
    K: int
    pairs_checked: int
    witness: BottleneckWitness | None


def bottleneck_certify(G: LeafGraph, K: int) -> BottleneckResult:
    """Quasi-tree certificate: for every even geodesic pair and every geodesic
    midpoint v, removing the closed K-ball around v must disconnect the
    endpoints.  Exact equivalence with "every path meets the ball" holds on
    finite graphs."""
    if len(connected_components(G)) > 1:
        raise PreconditionError("bottleneck certification requires a connected graph")
    dist = {v: distances_from(G, v) for v in G.vertices}
    checked = 0
    for x, y in itertools.combinations(G.vertices, 2):
        dxy = dist[x][y]
        if dxy % 2 or dxy == 0:
            continue
        r = dxy // 2
        mids = [v for v in G.vertices
                if dist[x].get(v) == r and dist[y].get(v) == r]
        for v in mids:
            checked += 1
            ball = {w for w in G.vertices if dist[v][w] <= K}
            if x in ball or y in ball:
                continue
            H = G.subgraph(set(G.vertices) - ball)
            if dist[x][y] is not None and y in distances_from(H, x):
                return BottleneckResult(False, K, checked,
                                        BottleneckWitness(x, y, v))
    return BottleneckResult(True, K, checked, None)


def bottleneck_certify_components(p_or_graph, K: int) -> BottleneckResult:
    """Certify each connected component separately; disconnected windows are
    legal truncation artifacts."""
    G = p_or_graph
    checked = 0
    for comp in connected_components(G):
        res = bottleneck_certify(G.subgraph(comp), K)
        checked += res.pairs_checked
        if not res.passed:
            return BottleneckResult(False, K, checked, res.witness)
    return BottleneckResult(True, K, checked, None)


def minimal_bottleneck_constant(G: LeafGraph, K_max: int = 16):
    """Smallest K <= K_max for which every component certifies, or None."""
    for K in range(K_max + 1):
        if bottleneck_certify_components(G, K).passed:
            return K
    return None


@dataclass(frozen=True)
class InclusionReport:
    pairs_checked: int
    violations: tuple
    max_ratio: float  # max d_X / d_sign over finite pairs

    @property
    def ok(self):
        return not self.violations


def qi_inclusion_report(p: FinitePattern) -> InclusionReport:
    """Check d_sign(v,w) <= d_X(v,w) <= 2 d_sign(v,w) over all same-sign
    pairs, both signs."""
    GX = build_graph(p, XFULL)
    dX = {v: distances_from(GX, v) for v in GX.vertices}
    violations = []
    checked = 0
    max_ratio = 0.0
    for kind, sign in ((XPLUS, PLUS), (XMINUS, MINUS)):
        G = build_graph(p, kind)
        for v in G.vertices:
            dv = distances_from(G, v)
            for w in G.vertices:
                if w <= v:
                    continue
                checked += 1
                ds = dv.get(w, INF)
                dx = dX[v].get(w, INF)
                if ds == INF and dx == INF:
                    continue
                if not (ds <= dx <= 2 * ds):
                    violations.append((kind, v, w, ds, dx))
                elif ds > 0:
                    max_ratio = max(max_ratio, dx / ds)
    return InclusionReport(checked, tuple(violations), max_ratio)


def windowed_distance(pp, kind: str, u: str, v: str, window: tuple[int, int]):
    """Distance inside a materialized window, with a stability flag: True
    when doubling the window leaves the value unchanged.  Window values are
    upper bounds for the infinite pattern (distances are monotone
    non-increasing in the window)."""
    lo, hi = window
    d1 = distance(build_graph(pp.materialize_window(lo, hi), kind), u, v)
    d2 = distance(build_graph(pp.materialize_window(2 * lo, 2 * hi), kind), u, v)
    return d1, d1 == d2


def synthetic_cycle(n: int) -> LeafGraph:
    """Plain n-cycle, handy as a negative control for the bottleneck check."""
    verts = tuple(f"v{i}" for i in range(n))
    adj = {f"v{i}": frozenset({f"v{(i - 1) % n}", f"v{(i + 1) % n}"})
           for i in range(n)}
    return LeafGraph("x", verts, adj)
