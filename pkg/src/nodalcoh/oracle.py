"""Brute-force verifiers.

Nothing here imports the algebra engine or the graph routines it checks:
counts come from exhaustive enumeration, ranks from an explicit spanning
forest, separation from deleting each node and recounting.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

from .errors import CapTooSmall

MAX_ORACLE_ODD = 24


def enumerate_monomials_bruteforce(degrees: Sequence[int], k: int, even_cap: int) -> tuple[int, list[tuple[int, ...]]]:
    """Count monomials of total degree ``k`` in free generators of the given degrees.

    Odd-degree generators appear with exponent 0 or 1, even-degree ones with
    exponent 0..even_cap.  Returns the count and the exponent vectors (in the
    order of ``degrees``).
    """
    odd = [i for i, d in enumerate(degrees) if d % 2]
    even = [i for i, d in enumerate(degrees) if d % 2 == 0]
    if even and even_cap < k // min(degrees[i] for i in even):
        raise CapTooSmall(f"even_cap={even_cap} misses monomials of degree {k}")
    if len(odd) > MAX_ORACLE_ODD:
        raise CapTooSmall(f"{len(odd)} odd generators exceed the oracle limit of {MAX_ORACLE_ODD}")

    found = []
    for mask in range(1 << len(odd)):
        odd_deg = sum(degrees[odd[b]] for b in range(len(odd)) if mask >> b & 1)
        if odd_deg > k:
            continue
        for exps in product(range(even_cap + 1), repeat=len(even)):
            if odd_deg + sum(e * degrees[i] for e, i in zip(exps, even)) != k:
                continue
            vec = [0] * len(degrees)
            for b in range(len(odd)):
                if mask >> b & 1:
                    vec[odd[b]] = 1
            for e, i in zip(exps, even):
                vec[i] = e
            found.append(tuple(vec))
    return len(found), found


def block_dimension(degrees: Sequence[int], k: int) -> int:
    """Oracle dimension of one free block in degree ``k`` with a sufficient cap."""
    evens = [d for d in degrees if d % 2 == 0]
    cap = k // min(evens) if evens else 0
    return enumerate_monomials_bruteforce(degrees, k, cap)[0]


def betti_bruteforce(block_degrees: Sequence[Sequence[int]], n_max: int) -> list[int]:
    """Oracle Betti numbers b_0..b_n_max of a direct sum of free blocks.

    One exhaustive pass per block over every odd subset and every even
    exponent vector below the cap, binned by total degree.
    """
    counts = [0] * (n_max + 1)
    for degrees in block_degrees:
        odd = [d for d in degrees if d % 2]
        even = [d for d in degrees if d % 2 == 0]
        if len(odd) > MAX_ORACLE_ODD:
            raise CapTooSmall(f"{len(odd)} odd generators exceed the oracle limit of {MAX_ORACLE_ODD}")
        cap = n_max // min(even) if even else 0
        even_totals = [sum(e * d for e, d in zip(exps, even)) for exps in product(range(cap + 1), repeat=len(even))]
        for mask in range(1 << len(odd)):
            odd_deg = sum(odd[b] for b in range(len(odd)) if mask >> b & 1)
            for t in even_totals:
                if odd_deg + t <= n_max:
                    counts[odd_deg + t] += 1
    return counts


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (distinct entries), by bubble sort."""
    items = list(seq)
    swaps = 0
    for i in range(len(items)):
        for j in range(len(items) - 1 - i):
            if items[j] > items[j + 1]:
                items[j], items[j + 1] = items[j + 1], items[j]
                swaps += 1
    return -1 if swaps % 2 else 1


def spanning_forest_rank(graph) -> int:
    """Edges outside a DFS spanning forest; every loop counts as a cycle edge."""
    n = graph.vertex_count
    adj: dict[int, list[int]] = {v: [] for v in range(n)}
    for u, v in graph.edges:
        if u != v:
            adj[u].append(v)
            adj[v].append(u)
    visited = set()
    forest_edges = 0
    for root in range(n):
        if root in visited:
            continue
        visited.add(root)
        stack = [root]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in visited:
                    visited.add(y)
                    forest_edges += 1
                    stack.append(y)
    return len(graph.edges) - forest_edges


def _components(n: int, edges: Sequence[tuple[int, int]]) -> int:
    label = list(range(n))
    changed = True
    while changed:
        changed = False
        for u, v in edges:
            lo = min(label[u], label[v])
            if label[u] != lo or label[v] != lo:
                label[u] = label[v] = lo
                changed = True
    return len(set(label))


def separating_node_check(curve) -> bool:
    """True iff the curve is connected and normalizing any single node disconnects it more."""
    n = len(curve.components)
    edges = [(node.left, node.right) for node in curve.nodes]
    base = _components(n, edges)
    if base != 1:
        return False
    for i in range(len(edges)):
        if _components(n, edges[:i] + edges[i + 1:]) <= base:
            return False
    return True
