"""Combinatorial model of a nodal curve and its dual graph.

A curve is a list of smooth components (each with a genus) and a list of
nodes.  A node joining two distinct components is an edge of the dual
graph; a node lying on a single component is a loop.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

from .errors import CurveError, EmptyBounds, InvalidComponentReference, MultidegreeLengthMismatch

Edge = tuple[int, int]


@dataclass(frozen=True)
class ComponentSpec:
    id: int
    genus: int

    def __post_init__(self):
        if self.genus < 0:
            raise CurveError(f"component {self.id}: genus must be >= 0, got {self.genus}")


@dataclass(frozen=True)
class NodeSpec:
    left: int
    right: int

    @property
    def is_loop(self) -> bool:
        return self.left == self.right

    def __str__(self):
        return f"{self.left}-{self.right}"


@dataclass(frozen=True)
class NodalCurve:
    components: tuple[ComponentSpec, ...]
    nodes: tuple[NodeSpec, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "nodes", tuple(self.nodes))
        if not self.components:
            raise CurveError("a curve needs at least one component")
        for i, comp in enumerate(self.components):
            if comp.id != i:
                raise CurveError(f"component ids must be 0..m-1 in order; position {i} has id {comp.id}")
        m = len(self.components)
        for node in self.nodes:
            for end in (node.left, node.right):
                if not 0 <= end < m:
                    raise InvalidComponentReference(
                        f"node ({node.left},{node.right}) references component {end}; curve has {m}"
                    )

    @classmethod
    def from_genera(cls, genera: Sequence[int], nodes: Sequence[Edge] = ()) -> NodalCurve:
        comps = tuple(ComponentSpec(i, g) for i, g in enumerate(genera))
        return cls(comps, tuple(NodeSpec(a, b) for a, b in nodes))

    @property
    def genera(self) -> tuple[int, ...]:
        return tuple(c.genus for c in self.components)

    @property
    def m(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class DualGraph:
    vertex_count: int
    edges: tuple[Edge, ...]
    connected_components: int

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def loop_count(self) -> int:
        return sum(1 for u, v in self.edges if u == v)


@dataclass(frozen=True)
class PicardProfile:
    """Ranks in the extension of Pic(C) by a torus: torus part and the 2g_i per component."""

    torus_rank: int
    abelian_dims: tuple[int, ...]


@dataclass(frozen=True)
class Witness:
    kind: str  # "disconnected" | "loop" | "cycle"
    edges: tuple[Edge, ...] = ()

    def __str__(self):
        if self.kind == "disconnected":
            return "disconnected"
        return self.kind + ":" + ",".join(f"{u}-{v}" for u, v in self.edges)


class CompactTypeResult(NamedTuple):
    compact: bool
    witness: Witness | None

    def __bool__(self):
        return self.compact


def _adjacency(n: int, edges: Sequence[Edge]) -> list[list[tuple[int, int]]]:
    """Neighbour lists of (vertex, edge index); a loop is listed once on its vertex."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for idx, (u, v) in enumerate(edges):
        adj[u].append((v, idx))
        if u != v:
            adj[v].append((u, idx))
    return adj


def count_components(n: int, edges: Sequence[Edge]) -> int:
    adj = _adjacency(n, edges)
    seen = [False] * n
    count = 0
    for start in range(n):
        if seen[start]:
            continue
        count += 1
        seen[start] = True
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y, _ in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
    return count


def dual_graph(curve: NodalCurve) -> DualGraph:
    edges = tuple((n.left, n.right) for n in curve.nodes)
    return DualGraph(curve.m, edges, count_components(curve.m, edges))


def first_betti(graph: DualGraph) -> int:
    return graph.edge_count - graph.vertex_count + graph.connected_components


def _find_cycle(n: int, edges: Sequence[Edge]) -> tuple[Edge, ...] | None:
    """Return the edges of some cycle, walked in order, or None for a forest."""
    forest: list[Edge] = []
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            forest.append((u, v))
            continue
        if u == v:
            return ((u, v),)
        # path v -> u inside the forest, closed up by the edge (u, v)
        adj = _adjacency(n, forest)
        prev: dict[int, tuple[int, int]] = {v: (-1, -1)}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            if x == u:
                break
            for y, idx in adj[x]:
                if y not in prev:
                    prev[y] = (x, idx)
                    queue.append(y)
        path: list[Edge] = []
        x = u
        while x != v:
            px, _ = prev[x]
            path.append((px, x))
            x = px
        path.reverse()
        return ((u, v), *path)
    return None


def is_compact_type(curve: NodalCurve) -> CompactTypeResult:
    graph = dual_graph(curve)
    if graph.connected_components != 1:
        return CompactTypeResult(False, Witness("disconnected"))
    if first_betti(graph) == 0:
        return CompactTypeResult(True, None)
    cycle = _find_cycle(graph.vertex_count, graph.edges)
    assert cycle is not None
    kind = "loop" if len(cycle) == 1 else "cycle"
    return CompactTypeResult(False, Witness(kind, cycle))


def picard_extension_profile(curve: NodalCurve) -> PicardProfile:
    return PicardProfile(
        torus_rank=first_betti(dual_graph(curve)),
        abelian_dims=tuple(2 * g for g in curve.genera),
    )


def _multidegrees(bounds: Sequence[tuple[int, int]], total: int) -> Iterator[tuple[int, ...]]:
    if not bounds:
        if total == 0:
            yield ()
        return
    (lo, hi), rest = bounds[0], bounds[1:]
    rest_min = sum(b[0] for b in rest)
    rest_max = sum(b[1] for b in rest)
    for d in range(max(lo, total - rest_max), min(hi, total - rest_min) + 1):
        for tail in _multidegrees(rest, total - d):
            yield (d, *tail)


def iter_multidegrees(curve: NodalCurve, total: int, bounds: Sequence[Sequence[int]]) -> Iterator[tuple[int, ...]]:
    """Lazy form of :func:`enumerate_multidegrees`."""
    if len(bounds) != curve.m:
        raise MultidegreeLengthMismatch(f"expected {curve.m} bounds, got {len(bounds)}")
    pairs = []
    for i, (lo, hi) in enumerate(bounds):
        if lo > hi:
            raise EmptyBounds(f"bounds for component {i} are empty: [{lo}, {hi}]")
        pairs.append((lo, hi))
    return _multidegrees(pairs, total)


def enumerate_multidegrees(curve: NodalCurve, total: int, bounds: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """All multidegrees within the inclusive ``bounds`` summing to ``total``, in lex order."""
    return list(iter_multidegrees(curve, total, bounds))
