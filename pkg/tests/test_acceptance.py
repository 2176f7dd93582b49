"""The ten acceptance criteria, each timed against its budget.

Run ``pytest tests/test_acceptance.py`` to see the PASS/FAIL summary lines.
Random inputs come from a seeded ``random.Random`` so the sample sizes are exact.
"""

import random
import time
from contextlib import contextmanager
from math import comb

import pytest

from nodalcoh import graded_algebra as ga
from nodalcoh import moduli_builder as mb
from nodalcoh import oracle
from nodalcoh.curve_model import NodalCurve, dual_graph, first_betti, is_compact_type
from nodalcoh.curve_parser import CurveDocument, ParseError, parse_curve, parse_curve_bytes, serialize_curve

from clirunner import CORPUS, CURVES, GOLDEN, run, transcript

SEED = 20261016


@contextmanager
def budget(note, seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    note(f"({elapsed:.2f}s of {seconds}s)")
    assert elapsed < seconds, f"took {elapsed:.2f}s, budget {seconds}s"


def chain23():
    return NodalCurve.from_genera([2, 3], [(0, 1)])


@pytest.mark.criterion("AC01 classifying stack")
def test_ac1_classifying_stack(criterion):
    with budget(criterion, 0.1):
        table = mb.betti_table(mb.classifying_stack(), 20)
    assert table == [1 - k % 2 for k in range(21)]


@pytest.mark.criterion("AC02 smooth moduli")
def test_ac2_smooth(criterion):
    with budget(criterion, 5):
        for g in range(6):
            table = mb.betti_table(mb.smooth_moduli(g), 20)
            assert table == oracle.betti_bruteforce([[1] * (2 * g) + [2]], 20)
            assert table == [sum(comb(2 * g, k - 2 * j) for j in range(k // 2 + 1)) for k in range(21)]


@pytest.mark.criterion("AC03 Jacobian")
def test_ac3_jacobian(criterion):
    with budget(criterion, 1):
        for g in range(6):
            alg = mb.jacobian(g).algebra
            assert [ga.dimension(alg, k) for k in range(2 * g + 3)] == [comb(2 * g, k) for k in range(2 * g + 3)]


@pytest.mark.criterion("AC04 chain (2,3) as stated")
def test_ac4_chain(criterion):
    with budget(criterion, 5):
        table = mb.betti_table(mb.nodal_moduli(chain23()), 12)
        expected = oracle.betti_bruteforce([[1] * 4 + [2], [1] * 6 + [2]], 12)
    assert table == expected
    assert expected[:3] == [2, 10, 23]


@pytest.mark.criterion("AC05 mode collapse")
def test_ac5_mode_collapse(criterion):
    with budget(criterion, 5):
        for g in range(6):
            curve = NodalCurve.from_genera([g], [])
            smooth = mb.betti_table(mb.smooth_moduli(g), 20)
            assert mb.betti_table(mb.nodal_moduli(curve, mb.Mode.AS_STATED), 20) == smooth
            assert mb.betti_table(mb.nodal_moduli(curve, mb.Mode.KUNNETH), 20) == smooth


def _random_curve(rng, connected):
    m = rng.randint(1, 8)
    edges = [(rng.randrange(m), rng.randrange(m)) for _ in range(rng.randint(0, 16))]
    if connected:
        tree = [(rng.randrange(v), v) for v in range(1, m)]
        # half the time keep a bare tree so compact curves are well represented
        edges = tree + (edges[: 16 - len(tree)] if rng.random() < 0.5 else [])
    return NodalCurve.from_genera([rng.randint(0, 3) for _ in range(m)], edges)


@pytest.mark.criterion("AC06 graph invariants")
def test_ac6_graph_invariants(criterion):
    rng = random.Random(SEED)
    compact_seen = 0
    with budget(criterion, 10):
        for _ in range(500):
            graph = dual_graph(_random_curve(rng, connected=False))
            assert first_betti(graph) == oracle.spanning_forest_rank(graph)
        for _ in range(500):
            curve = _random_curve(rng, connected=True)
            verdict = is_compact_type(curve).compact
            assert verdict == oracle.separating_node_check(curve)
            compact_seen += verdict
    assert 0 < compact_seen < 500


def _random_algebra(rng):
    blocks = []
    for _ in range(rng.randint(1, 3)):
        gens = [ga.GeneratorInfo(f"x{len(blocks)}_{i}", rng.choice([1, 1, 3, 2, 4])) for i in range(rng.randint(1, 5))]
        blocks.append(ga.Block(tuple(gens)))
    return ga.direct_sum([ga.AlgebraPresentation((b,)) for b in blocks])


def _random_monomial(rng, alg):
    b = rng.randrange(len(alg.blocks))
    blk = alg.blocks[b]
    odd = tuple(i for i in range(len(blk.odd)) if rng.random() < 0.5)
    even = tuple(rng.randint(0, 2) for _ in blk.even)
    return ga.Monomial(b, odd, even)


@pytest.mark.criterion("AC07 algebra laws")
def test_ac7_algebra_laws(criterion):
    rng = random.Random(SEED)
    violations = 0
    with budget(criterion, 10):
        for _ in range(1000):
            alg = _random_algebra(rng)
            xs = [_random_monomial(rng, alg) for _ in range(3)]
            x, y, z = (ga.Element.monomial(m) for m in xs)
            dx, dy = (ga.monomial_degree(alg, m) for m in xs[:2])
            xy = ga.multiply(alg, x, y)
            violations += ga.multiply(alg, xy, z) != ga.multiply(alg, x, ga.multiply(alg, y, z))
            violations += xy != ga.multiply(alg, y, x).scale((-1) ** (dx * dy))
            violations += any(ga.monomial_degree(alg, m) != dx + dy for m, _ in xy.terms)
            unit = ga.Element.monomial(alg.unit(xs[0].block))
            violations += ga.multiply(alg, unit, x) != x or ga.multiply(alg, x, unit) != x
    assert violations == 0


def _constructed_algebras():
    yield mb.classifying_stack()
    for g in range(6):
        yield mb.jacobian(g)
        yield mb.smooth_moduli(g)
    for name in CURVES:
        doc = parse_curve((CORPUS / f"{name}.json").read_text(encoding="utf-8"))
        if not is_compact_type(doc.curve).compact:
            continue
        it = doc.iter_multidegrees()
        degrees = None if it is None else list(it)
        for mode in mb.Mode:
            yield mb.nodal_moduli(doc.curve, mode, degrees)


@pytest.mark.criterion("AC08 series consistency")
def test_ac8_series_consistency(criterion):
    with budget(criterion, 5):
        count = 0
        for mc in _constructed_algebras():
            # betti_table raises on any disagreement, series_coefficients on a negative coefficient
            assert mb.betti_table(mc, 20) == [ga.dimension(mc.algebra, k) for k in range(21)]
            count += 1
    assert count >= 19


def _random_document(rng):
    m = rng.randint(1, 6)
    nodes = [(rng.randrange(m), rng.randrange(m)) for _ in range(rng.randint(0, 8))]
    curve = NodalCurve.from_genera([rng.choice([0, 1, 2, 7, 10**25]) for _ in range(m)], nodes)
    name = "".join(rng.choice('ab "\\\n\té∂😀/') for _ in range(rng.randint(0, 12)))
    shape = rng.choice(["none", "degree", "bounds", "multi"])
    degree = None if shape == "none" else rng.randint(-50, 50)
    bounds = multidegrees = None
    if shape == "bounds":
        bounds = tuple((lo, lo + rng.randint(0, 5)) for lo in (rng.randint(-9, 9) for _ in range(m)))
    elif shape == "multi":
        vecs = [[rng.randint(-9, 9) for _ in range(m - 1)] for _ in range(rng.randint(0, 4))]
        multidegrees = tuple(tuple(v + [degree - sum(v)]) for v in vecs)
    return CurveDocument(curve, degree, multidegrees, bounds, name)


def _fuzz_input(rng, seeds):
    roll = rng.random()
    if roll < 0.3:
        return bytes(rng.randrange(256) for _ in range(rng.randint(0, 120)))
    raw = bytearray(rng.choice(seeds))
    for _ in range(rng.randint(1, 5)):
        op = rng.random()
        i = rng.randrange(len(raw) + 1)
        if op < 0.4 and i < len(raw):
            raw[i] = rng.randrange(256)
        elif op < 0.7:
            raw[i:i] = bytes([rng.choice(b'{}[]:,"0-9eE. \n\\')])
        else:
            del raw[i:i + rng.randint(1, 4)]
    return bytes(raw)


@pytest.mark.criterion("AC09 parser round-trip and fuzz")
def test_ac9_parser(criterion):
    rng = random.Random(SEED)
    rejected = 0
    with budget(criterion, 30):
        seeds = []
        for _ in range(500):
            doc = _random_document(rng)
            text = serialize_curve(doc)
            assert parse_curve(text) == doc
            seeds.append(text.encode("utf-8"))
        for _ in range(10_000):
            try:
                parse_curve_bytes(_fuzz_input(rng, seeds))
            except ParseError as err:
                rejected += 1
                assert err.line >= 1 and err.column >= 1
                assert f"{err.line}:{err.column}:" in str(err)
    assert rejected > 5000


@pytest.mark.criterion("AC10 CLI golden files")
def test_ac10_cli_golden(criterion):
    with budget(criterion, 5):
        for name in CURVES:
            first = transcript(name)
            assert first == transcript(name)
            assert first == (GOLDEN / f"{name}.txt").read_text(encoding="utf-8")
        for name in ("loop", "cycle3", "disconnected"):
            for cmd in (["betti"], ["basis", "--degree", "1"], ["multiply", "c1", "c1"]):
                argv = [cmd[0], str(CORPUS / f"{name}.json"), *cmd[1:]]
                assert run(*argv)[0] == 2
