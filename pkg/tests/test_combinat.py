"""Permutations, ordered set partitions, plane trees and labelings."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polykap.caps import Caps
from polykap.combinat import (
    OrderedSetPartition,
    PartitionLabeledTree,
    Permutation,
    PlaneTree,
    bst_insert,
    contract_internal_edge,
    enumerate_ordered_partitions,
    enumerate_permutations,
    enumerate_trees,
    flip,
    identity_permutation,
    internal_edges,
    internal_labeling,
    labels_to_paths,
    linear_extensions,
    partition_of_permutation,
    partition_type,
    refines,
    subtree_labels,
    vertex_handle_paths,
)
from polykap.errors import PreconditionError, ResourceLimitError


def test_permutation_basics():
    pi = Permutation((2, 3, 1))
    assert pi(1) == 2 and pi(3) == 1
    inv = pi.inverse()
    assert all(inv(pi(i)) == i for i in (1, 2, 3))
    assert identity_permutation(4)(3) == 3
    assert len(enumerate_permutations(4)) == 24


def test_permutation_cap():
    with pytest.raises(ResourceLimitError):
        enumerate_permutations(9, Caps())


def test_osp_serialize_roundtrip():
    s = OrderedSetPartition(((3, 4, 7), (8, 9), (6,), (1,), (5,), (2,)))
    text = s.serialize()
    assert OrderedSetPartition.parse(text) == s
    # interior prefix sums t_1..t_{k-1} (t_0 = 0 and t_k = n are implicit)
    assert partition_type(s) == (3, 5, 6, 7, 8)


def test_osp_counts():
    # Fubini numbers: 13 ordered set partitions of [3], 75 of [4]
    assert len(enumerate_ordered_partitions(3, 1)) == 13
    assert len(enumerate_ordered_partitions(4, 1)) == 75
    assert len(enumerate_ordered_partitions(3, 2)) == 12
    assert len(enumerate_ordered_partitions(4, 2)) == 74


def test_refines_consecutive_unions():
    fine = OrderedSetPartition(((2,), (3,), (1,), (4,)))
    coarse = OrderedSetPartition(((2, 3), (1, 4)))
    assert refines(fine, coarse)
    other = OrderedSetPartition(((1, 2), (3, 4)))
    assert not refines(fine, other)  # blocks not consecutive unions
    assert refines(fine, fine)


def test_partition_of_permutation():
    pi = Permutation((2, 3, 1))
    s = partition_of_permutation(pi)
    assert s.blocks == ((3,), (1,), (2,))  # pi^-1(1), pi^-1(2), pi^-1(3)


def test_tree_counts():
    # complete binary: Catalan numbers
    assert len(enumerate_trees(3, 3)) == 5
    assert len(enumerate_trees(4, 4)) == 14
    # all strictly branching: little Schroeder numbers 3, 11, 45
    assert len(enumerate_trees(2)) == 3
    assert len(enumerate_trees(3)) == 11
    assert len(enumerate_trees(4)) == 45


def test_tree_serialize_roundtrip():
    for t in enumerate_trees(3):
        assert PlaneTree.parse(t.serialize()) == t


def test_internal_labeling_non_interval_class():
    # a vertex may carry a non-interval label set: here the root of the
    # left subtree is labeled {3,5}
    t = PlaneTree.parse("(((...)(..).).(..))")
    labeling = internal_labeling(t)
    classes = sorted(tuple(labs) for labs in labeling.values())
    assert classes == [(1, 2), (3, 5), (4,), (6, 7), (8,)]


def test_subtree_labels_are_intervals():
    for t in enumerate_trees(4):
        for path in internal_labeling(t):
            labs = subtree_labels(t, path)
            assert labs == tuple(range(labs[0], labs[-1] + 1))


def test_labels_to_paths_bijection():
    for t in enumerate_trees(4, 4):
        paths = labels_to_paths(t)
        assert sorted(paths) == [1, 2, 3, 4]
        labeling = internal_labeling(t)
        for lab, path in paths.items():
            assert lab in labeling[path]


def test_contract_and_flip():
    comb = PlaneTree.parse("((..).)")
    top = contract_internal_edge(comb, internal_edges(comb)[0])
    assert top.serialize() == "(...)"
    # flipping an edge keeps the tree binary and contracts identically
    for t in enumerate_trees(4, 4):
        for e in internal_edges(t):
            other = flip(t, e)
            assert other != t
            assert other.internal_count == t.internal_count
            assert any(
                contract_internal_edge(other, e2) == contract_internal_edge(t, e)
                for e2 in internal_edges(other)
            )


def test_flip_requires_binary():
    with pytest.raises(PreconditionError):
        flip(PlaneTree.parse("(...)"), 1)


def test_vertex_handles():
    t = PlaneTree.parse("(((...)(..).).(..))")
    handles = vertex_handle_paths(t)
    assert set(handles) == {1, 3, 4, 6, 8}


def test_linear_extensions_counts():
    # combs are chains (one extension); the balanced tree has two
    left = PlaneTree.parse("((..).)")
    assert len(linear_extensions(left)) == 1
    for t in enumerate_trees(3, 3):
        exts = linear_extensions(t)
        assert len(exts) >= 1
        for tau in exts:
            assert bst_insert(tau) == t


def test_bst_insert_identity_gives_left_comb():
    assert bst_insert(Permutation((1, 2, 3))).serialize() == "(((..).).)"
    assert bst_insert(Permutation((3, 2, 1))).serialize() == "(.(.(..)))"


def test_bst_insert_fibers():
    # fiber sizes over the 5 binary trees with 3 internal vertices
    fibers = {}
    for pi in enumerate_permutations(3):
        fibers.setdefault(bst_insert(pi), []).append(pi)
    assert sorted(len(v) for v in fibers.values()) == [1, 1, 1, 1, 2]
    for t, pis in fibers.items():
        assert set(pis) == set(linear_extensions(t))


@given(st.permutations(list(range(1, 6))))
@settings(max_examples=50, deadline=None)
def test_bst_insert_membership(images):
    pi = Permutation(tuple(images))
    t = bst_insert(pi)
    assert pi in linear_extensions(t)


def test_partition_labeled_tree_key():
    s = OrderedSetPartition(((1, 2), (3,)))
    t = PlaneTree.parse("(..)")
    plt = PartitionLabeledTree(s, t)
    assert plt.key() == "1 2|3 ; (..)"


def test_partition_labeled_tree_validation():
    s = OrderedSetPartition(((1, 2), (3,)))
    with pytest.raises(PreconditionError):
        PartitionLabeledTree(s, PlaneTree.parse("(...)"))  # 3 leaves, 2 blocks
