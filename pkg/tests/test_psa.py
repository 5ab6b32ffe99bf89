import numpy as np
import pytest

from conftest import MAPS
from traintrack.graphs import reverse_path
from traintrack.lamination import occurrence_position
from traintrack.psa import (EPath, NotATrainTrack, PreperiodicPath, build_psa, build_unoriented_psa,
                            count_paths, enumerate_paths, is_closed_component, loops_up_to,
                            positive_part, to_dot)
from traintrack.graphs import rose_of
from traintrack.words import BasisMorphism, Letter

a, b, c = (Letter(i) for i in range(3))


def test_arrow_labels_rebuild_images(gm):
    psa = build_psa(gm)
    for host in gm.graph.oriented_edges():
        for arrow in (x for x in psa.edges if x.target == host):
            assert arrow.prefix + (arrow.source,) + arrow.suffix == gm.image(host)


def test_arrow_count_is_total_image_length(gm):
    psa = build_psa(gm)
    assert len(psa.edges) == 2 * sum(len(img) for img in gm.edge_images)
    assert len(psa.vertices) == 2 * gm.graph.num_edges


def test_mirror_is_an_involution_without_fixed_arrows(gm):
    psa = build_psa(gm)
    present = set(psa.edges)
    for arrow in psa.edges:
        m = arrow.mirror()
        assert m in present and m != arrow and m.mirror() == arrow


def test_unoriented_counts():
    assert len(build_unoriented_psa(build_psa(MAPS["bk"])).edges) == 8
    assert len(build_unoriented_psa(build_psa(MAPS["tribonacci"])).edges) == 5
    u = build_unoriented_psa(build_psa(MAPS["tribonacci-inv"]))
    assert len(u.edges) == 6 and len(u.vertices) == 4


def test_positive_component():
    for name, n in (("bk", 8), ("tribonacci", 5)):
        psa = build_psa(MAPS[name])
        pos = positive_part(psa)
        assert len(pos.edges) == n
        assert is_closed_component(psa, pos)
    assert not is_closed_component(build_psa(MAPS["bk-inv"]), positive_part(build_psa(MAPS["bk-inv"])))


def test_tribonacci_positive_arrows():
    pos = positive_part(build_psa(MAPS["tribonacci"]))
    arrows = {(x.source, x.target, x.prefix, x.suffix) for x in pos.edges}
    assert arrows == {
        (a, a, (), (b,)), (b, a, (a,), ()),
        (a, b, (), (c,)), (c, b, (a,), ()),
        (a, c, (), ()),
    }


@pytest.mark.parametrize("n", range(7))
def test_path_count_identity(gm, n):
    psa = build_psa(gm)
    power = np.linalg.matrix_power(psa.adjacency().astype(object), n)
    for i, v in enumerate(psa.vertices):
        assert len(enumerate_paths(psa, v, n)) == sum(power[i]) == count_paths(psa, v, n)


def test_non_train_track_rejected():
    gm = rose_of(BasisMorphism.from_strings(["ab", "b'"]))
    with pytest.raises(NotATrainTrack):
        build_psa(gm)


def test_epath_composition():
    psa = build_psa(MAPS["tribonacci"])
    arrows = [x for x in psa.out_edges(a)]
    with pytest.raises(ValueError):
        EPath(b, (arrows[0],))
    p = EPath(a).extend(arrows[0])
    assert len(p) == 1 and p.vertices() == [a, arrows[0].target]


def test_loop_position_example():
    """Loop a -> b -> a in the Tribonacci automaton."""
    psa = build_psa(MAPS["tribonacci"])
    ab = next(x for x in psa.edges if x.source == a and x.target == b)
    ba = next(x for x in psa.edges if x.source == b and x.target == a)
    loop = EPath(a, (ab, ba))
    assert loop.is_loop()
    assert occurrence_position(MAPS["tribonacci"], loop) == 2


def test_loops_are_simple_and_bounded(gm):
    psa = build_psa(gm)
    loops = loops_up_to(psa, 3)
    assert loops
    for base, loop in loops:
        assert loop.is_loop() and loop.start == base and 1 <= len(loop) <= 3
        assert len(set(loop.vertices()[:-1])) == len(loop)


def test_preperiodic_truncate():
    psa = build_psa(MAPS["tribonacci"])
    aa = next(x for x in psa.edges if x.source == a and x.target == a)
    ab = next(x for x in psa.edges if x.source == a and x.target == b)
    ba = next(x for x in psa.edges if x.source == b and x.target == a)
    p = PreperiodicPath(EPath(a, (aa,)), EPath(a, (ab, ba)))
    assert p.truncate(4).edges == (aa, ab, ba, ab)


def test_dot_export():
    psa = positive_part(build_psa(MAPS["tribonacci"]))
    dot = to_dot(psa, "trib")
    assert dot.startswith("digraph trib {")
    assert dot.count("->") == 5
    assert '"a" -> "b" [label="ε | c"];' in dot


def test_reverse_path_is_involution(gm):
    for img in gm.edge_images:
        assert reverse_path(reverse_path(img)) == tuple(img)
