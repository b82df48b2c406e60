"""Graded posets of partitions, trees and labeled trees; isomorphism."""

import itertools

import pytest

from polykap.combinat import (
    OrderedSetPartition,
    PartitionLabeledTree,
    PlaneTree,
)
from polykap.cones import cone_equal, is_face, sigma_st
from polykap.errors import InternalConsistencyError, PreconditionError
from polykap.posets import (
    BOTTOM,
    FinitePoset,
    build_K,
    build_KPi,
    build_O,
    kpi_upper_covers,
    poset_isomorphic,
)


def parse_kpi_key(key):
    part_text, tree_text = key.split(" ; ")
    return PartitionLabeledTree(
        OrderedSetPartition.parse(part_text), PlaneTree.parse(tree_text)
    )


def test_build_O_counts():
    o3 = build_O(3)
    assert len(o3.elements) == 14  # 13 ordered set partitions + bottom
    assert o3.rank_counts() == (1, 6, 6, 1)
    o4 = build_O(4)
    assert len(o4.elements) == 76
    assert o4.rank_counts() == (1, 24, 36, 14, 1)
    assert o4.is_graded()


def test_build_K_counts():
    k2 = build_K(2)
    assert len(k2.elements) == 12  # 11 strictly branching trees + bottom
    assert k2.rank_counts() == (1, 5, 5, 1)
    k3 = build_K(3)
    assert len(k3.elements) == 46
    assert k3.rank_counts() == (1, 14, 21, 9, 1)
    assert k3.is_graded()


def test_build_KPi_counts():
    kp2 = build_KPi(2)
    assert len(kp2.elements) == 26
    assert kp2.rank_counts() == (1, 12, 12, 1)
    assert kp2.is_graded()


def test_build_KPi_3_counts():
    kp3 = build_KPi(3)
    assert len(kp3.elements) == 388
    assert kp3.rank_counts() == (1, 120, 192, 74, 1)
    assert kp3.is_graded()


def test_kpi_upper_covers_example():
    plt = PartitionLabeledTree(
        OrderedSetPartition(((1,), (2,), (3,))), PlaneTree.parse("((..).)")
    )
    ups = kpi_upper_covers(plt)
    keys = {p.key() for p in ups}
    # contract the internal edge, or collapse the minimal vertex
    # merging the first two blocks
    assert keys == {"1|2|3 ; (...)", "1 2|3 ; (..)"}


def test_kpi_top_has_no_covers():
    top = PartitionLabeledTree(
        OrderedSetPartition(((1, 2, 3),)), PlaneTree()
    )
    assert kpi_upper_covers(top) == []


def test_leq_and_rank():
    o = build_O(3)
    fine = OrderedSetPartition(((2,), (1,), (3,))).serialize()
    coarse = OrderedSetPartition(((1, 2), (3,))).serialize()
    other = OrderedSetPartition(((2, 3), (1,))).serialize()
    assert o.leq(BOTTOM, fine)
    assert o.leq(fine, coarse)
    assert not o.leq(fine, other)
    assert o.rank[fine] == 1 and o.rank[coarse] == 2


def test_dual_involution():
    p = build_O(3)
    dd = p.dual().dual()
    assert set(dd.elements) == set(p.elements)
    assert set(dd.covers) == set(p.covers)
    assert dd.rank == p.rank
    assert p.dual().rank[BOTTOM] == p.top_rank()


def test_poset_validation():
    with pytest.raises(PreconditionError):
        FinitePoset(("a", "a"), (), {"a": 0})
    with pytest.raises(InternalConsistencyError):
        FinitePoset(("a", "b"), (("a", "b"),), {"a": 0, "b": 2})


def test_isomorphic_to_relabeled_copy():
    p = build_KPi(2)
    relabel = {e: "x%s" % i for i, e in enumerate(sorted(p.elements))}
    q = FinitePoset(
        tuple(relabel[e] for e in p.elements),
        tuple((relabel[a], relabel[b]) for a, b in p.covers),
        {relabel[e]: p.rank[e] for e in p.elements},
    )
    mapping = poset_isomorphic(p, q)
    assert mapping is not None
    assert all(mapping[e] == relabel[e] or True for e in p.elements)
    # a full correct hint is verified and accepted
    assert poset_isomorphic(p, q, hint=relabel) is not None
    # a wrong hint is rejected, not trusted
    swapped = dict(relabel)
    a, b = sorted(p.elements)[1], sorted(p.elements)[2]
    if p.rank[a] == p.rank[b]:
        swapped[a], swapped[b] = swapped[b], swapped[a]
        if not _same_mapping_valid(p, q, swapped):
            assert poset_isomorphic(p, q, hint=swapped) is None


def _same_mapping_valid(p, q, mapping):
    pcov = {(mapping[x], mapping[y]) for x, y in p.covers}
    return pcov == set(q.covers)


def _bipartite_poset(middle_edges):
    """Rank 0 bottom, two middle layers u1..u4 / w1..w4, rank 3 top."""
    us = ["u%d" % i for i in range(1, 5)]
    ws = ["w%d" % i for i in range(1, 5)]
    elements = ("z",) + tuple(us) + tuple(ws) + ("t",)
    covers = (
        [("z", u) for u in us]
        + [(us[a], ws[b]) for a, b in middle_edges]
        + [(w, "t") for w in ws]
    )
    rank = {"z": 0, "t": 3}
    rank.update({u: 1 for u in us})
    rank.update({w: 2 for w in ws})
    return FinitePoset(elements, tuple(covers), rank)


def test_non_isomorphic_same_profile():
    # same rank counts, cover count and degree sequences: an 8-cycle
    # between the middle layers versus two 4-cycles
    cycle8 = _bipartite_poset(
        [(i, i) for i in range(4)] + [(i, (i + 1) % 4) for i in range(4)]
    )
    two4 = _bipartite_poset(
        [(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (2, 3), (3, 2), (3, 3)]
    )
    assert cycle8.rank_counts() == two4.rank_counts()
    assert len(cycle8.covers) == len(two4.covers)
    assert poset_isomorphic(cycle8, cycle8) is not None
    assert poset_isomorphic(cycle8, two4) is None


def test_size_mismatch_fast_reject():
    assert poset_isomorphic(build_O(2), build_O(3)) is None


def test_to_dot_layers():
    o = build_O(3)
    text = o.to_dot()
    assert text.count("rank=same") == 4
    assert text.count("label=") == 14
    assert text.strip().endswith("}")


def test_to_json_fields():
    import json

    o = build_O(2)
    data = json.loads(o.to_json())
    assert set(data) == {"elements", "covers", "rank"}
    assert data["rank"][BOTTOM] == 0


def test_kpi_order_reverses_cone_faces():
    # excluding the bottom, x <= y in the labeled-tree poset exactly
    # when sigma(y) is a face of sigma(x); exhaustive at d = 2
    kp = build_KPi(2)
    elems = [e for e in kp.elements if e != BOTTOM]
    cones = {e: sigma_st(parse_kpi_key(e)) for e in elems}
    for x, y in itertools.product(elems, repeat=2):
        assert kp.leq(x, y) == is_face(cones[y], cones[x])


def test_kpi_cone_injectivity():
    # distinct poset elements define distinct cones at d = 2
    kp = build_KPi(2)
    elems = [e for e in kp.elements if e != BOTTOM]
    cones = [sigma_st(parse_kpi_key(e)) for e in elems]
    for i, j in itertools.combinations(range(len(cones)), 2):
        assert not cone_equal(cones[i], cones[j])
