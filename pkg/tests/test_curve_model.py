import pytest
from hypothesis import given, settings, strategies as st

from nodalcoh.curve_model import (
    ComponentSpec,
    NodalCurve,
    dual_graph,
    enumerate_multidegrees,
    first_betti,
    is_compact_type,
    picard_extension_profile,
)
from nodalcoh.errors import CurveError, EmptyBounds, InvalidComponentReference, MultidegreeLengthMismatch
from nodalcoh.oracle import separating_node_check, spanning_forest_rank

from conftest import multigraph_curves

CHAIN3 = NodalCurve.from_genera([1, 2, 3], [(0, 1), (1, 2)])
LOOP = NodalCurve.from_genera([1], [(0, 0)])
TRIANGLE = NodalCurve.from_genera([2, 2, 2], [(0, 1), (1, 2), (2, 0)])


def test_dual_graph_examples():
    g = dual_graph(NodalCurve.from_genera([2]))
    assert (g.vertex_count, g.edge_count, g.connected_components) == (1, 0, 1)
    g = dual_graph(NodalCurve.from_genera([2, 3], [(0, 1)]))
    assert (g.vertex_count, g.edge_count, g.connected_components) == (2, 1, 1)
    g = dual_graph(LOOP)
    assert (g.vertex_count, g.edge_count, g.connected_components) == (1, 1, 1)
    assert g.loop_count == 1


def test_curve_invariants_enforced():
    with pytest.raises(CurveError):
        NodalCurve(())
    with pytest.raises(CurveError):
        ComponentSpec(0, -1)
    with pytest.raises(CurveError):
        NodalCurve((ComponentSpec(1, 0),))
    with pytest.raises(InvalidComponentReference):
        NodalCurve.from_genera([1, 1], [(0, 2)])


@pytest.mark.parametrize(
    "curve, expected",
    [
        (NodalCurve.from_genera([0]), 0),
        (TRIANGLE, 1),
        (NodalCurve.from_genera([0, 0], [(0, 1)]), 0),
        (NodalCurve.from_genera([0], [(0, 0), (0, 0)]), 2),
        (NodalCurve.from_genera([0, 0], [(0, 1), (0, 1)]), 1),
        (NodalCurve.from_genera([0, 0, 0]), 0),
    ],
)
def test_first_betti_examples(curve, expected):
    graph = dual_graph(curve)
    assert first_betti(graph) == expected
    assert spanning_forest_rank(graph) == expected


def test_compact_type_examples():
    assert is_compact_type(CHAIN3) == (True, None)

    verdict = is_compact_type(LOOP)
    assert not verdict.compact
    assert verdict.witness.kind == "loop" and verdict.witness.edges == ((0, 0),)

    verdict = is_compact_type(TRIANGLE)
    assert not verdict.compact and verdict.witness.kind == "cycle"
    assert sorted(tuple(sorted(e)) for e in verdict.witness.edges) == [(0, 1), (0, 2), (1, 2)]
    assert not separating_node_check(TRIANGLE)

    verdict = is_compact_type(NodalCurve.from_genera([2, 2]))
    assert str(verdict.witness) == "disconnected"


def test_parallel_edges_witness():
    verdict = is_compact_type(NodalCurve.from_genera([1, 1], [(0, 1), (1, 0)]))
    assert verdict.witness.kind == "cycle" and len(verdict.witness.edges) == 2


@given(multigraph_curves())
@settings(max_examples=300)
def test_betti_formula_matches_spanning_forest(curve):
    graph = dual_graph(curve)
    assert first_betti(graph) == spanning_forest_rank(graph)
    assert 1 <= graph.connected_components <= graph.vertex_count


@given(multigraph_curves())
@settings(max_examples=300)
def test_compact_type_matches_separating_nodes(curve):
    verdict = is_compact_type(curve)
    assert verdict.compact == separating_node_check(curve)


@given(multigraph_curves(), st.data())
def test_cycle_witness_is_a_closed_walk(curve, data):
    verdict = is_compact_type(curve)
    if verdict.witness is None or verdict.witness.kind == "disconnected":
        return
    edges = verdict.witness.edges
    pool = [(n.left, n.right) for n in curve.nodes]
    for e in edges:
        assert e in pool or e[::-1] in pool
    if len(edges) > 1:
        # consecutive edges share a vertex and the walk closes
        degree = {}
        for u, v in edges:
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
        assert all(d == 2 for d in degree.values())


@given(multigraph_curves())
def test_adding_a_loop_breaks_compact_type(curve):
    looped = NodalCurve.from_genera(curve.genera, [(n.left, n.right) for n in curve.nodes] + [(0, 0)])
    assert not is_compact_type(looped).compact


def test_picard_profile_examples():
    p = picard_extension_profile(NodalCurve.from_genera([2]))
    assert (p.torus_rank, p.abelian_dims) == (0, (4,))
    p = picard_extension_profile(NodalCurve.from_genera([1], [(0, 0)]))
    assert (p.torus_rank, p.abelian_dims) == (1, (2,))
    p = picard_extension_profile(NodalCurve.from_genera([2, 3], [(0, 1)]))
    assert (p.torus_rank, p.abelian_dims) == (0, (4, 6))


def test_enumerate_multidegrees_examples():
    two = NodalCurve.from_genera([2, 3], [(0, 1)])
    assert enumerate_multidegrees(two, 1, [(0, 1), (0, 1)]) == [(0, 1), (1, 0)]
    assert enumerate_multidegrees(two, 5, [(0, 1), (0, 1)]) == []
    one = NodalCurve.from_genera([2])
    assert enumerate_multidegrees(one, 7, [(7, 7)]) == [(7,)]
    with pytest.raises(EmptyBounds):
        enumerate_multidegrees(two, 1, [(1, 0), (0, 1)])
    with pytest.raises(MultidegreeLengthMismatch):
        enumerate_multidegrees(two, 1, [(0, 1)])


@given(
    st.lists(st.tuples(st.integers(-3, 3), st.integers(0, 4)), min_size=1, max_size=4),
    st.integers(-6, 10),
)
def test_enumerate_multidegrees_matches_nested_iteration(spans, total):
    bounds = [(lo, lo + w) for lo, w in spans]
    curve = NodalCurve.from_genera([0] * len(bounds), [(0, i) for i in range(1, len(bounds))])
    out = enumerate_multidegrees(curve, total, bounds)
    assert out == sorted(set(out))

    # nested iteration, no pruning
    from itertools import product

    brute = [d for d in product(*(range(lo, hi + 1) for lo, hi in bounds)) if sum(d) == total]
    assert out == brute
