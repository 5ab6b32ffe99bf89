import pytest
from hypothesis import given, settings, strategies as st

from conftest import MAPS
from traintrack.graphs import rose_of
from traintrack.lamination import (CancellationError, count_reductions, decompose_occurrences, iterate_edge,
                                   occurrence_position, verify_loop_realization)
from traintrack.psa import EPath, build_psa, enumerate_paths, loops_up_to
from traintrack.words import BasisMorphism, Letter, Word

a, b, c = (Letter(i) for i in range(3))


def test_iterate_edge_bk():
    seg = iterate_edge(MAPS["bk"], a, 4)
    assert Word(seg.path) == Word.parse("caabbcaaacaaacaaa")
    assert seg.occurrences[c] == [0, 5, 9, 13]
    assert len(seg) == sum(len(v) for v in seg.occurrences.values())


def test_iterate_edge_depth_cap():
    with pytest.raises(ValueError):
        iterate_edge(MAPS["bk"], a, 9)
    assert len(iterate_edge(MAPS["tribonacci"], a, 8)) == 149
    assert len(iterate_edge(MAPS["tribonacci"], a, 9, max_depth=None)) == 274


def test_iterate_edge_rejects_cancellation():
    gm = rose_of(BasisMorphism.from_strings(["ab", "b'"]))
    with pytest.raises(CancellationError):
        iterate_edge(gm, a, 2)
    assert count_reductions(gm, (a,), 2) > 0


def test_train_tracks_never_reduce(gm):
    for e in gm.graph.oriented_edges():
        assert count_reductions(gm, (e,), 5) == 0


@pytest.mark.parametrize("name", ["bk", "tribonacci", "bk-inv", "tribonacci-inv"])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_decomposition_is_a_bijection(name, n):
    gm = MAPS[name]
    psa = build_psa(gm)
    for e in gm.graph.oriented_edges():
        mapping = decompose_occurrences(gm, e, n, psa)
        total = sum(iterate_edge(gm, h, n, None, False).occurrences.get(e, []).__len__()
                    for h in gm.graph.oriented_edges())
        assert len(mapping) == total == len(enumerate_paths(psa, e, n))
        for (host, pos), sigma in mapping.items():
            assert sigma.start == e and sigma.end == host
            assert iterate_edge(gm, host, n, None, False).path[pos] == e


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["bk", "tribonacci"]), st.integers(1, 5), st.data())
def test_random_path_lands_on_its_edge(name, n, data):
    gm = MAPS[name]
    psa = build_psa(gm)
    e = data.draw(st.sampled_from(gm.graph.oriented_edges()))
    sigma = data.draw(st.sampled_from(enumerate_paths(psa, e, n)))
    host = iterate_edge(gm, sigma.end, n, None, False).path
    assert host[occurrence_position(gm, sigma)] == e


@pytest.mark.parametrize("name", ["bk", "tribonacci"])
def test_short_loops_are_realised(name):
    gm = MAPS[name]
    for _, loop in loops_up_to(build_psa(gm), 3):
        cert = verify_loop_realization(gm, loop)
        assert cert.length == len(loop)
        assert list(cert.positions) == sorted(cert.positions)


def test_loop_realization_rejects_open_path():
    gm = MAPS["tribonacci"]
    psa = build_psa(gm)
    ab = next(x for x in psa.edges if x.source == a and x.target == b)
    with pytest.raises(ValueError):
        verify_loop_realization(gm, EPath(a, (ab,)))
