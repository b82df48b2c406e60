"""Combinatorial objects: permutations, ordered set partitions, plane trees.

Trees are strictly branching (every internal vertex has >= 2 children),
unlabeled, plane (children ordered).  T(n) denotes trees with n+1 leaves,
T(n,k) those with k internal vertices; T(n,n) are the complete binary
trees.  Internal vertices carry the canonical labeling: vertex v gets
label i when v is the closest common ancestor of leaves i and i+1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .caps import Caps, caps_from_env, check_cap
from .errors import PreconditionError


# ---------------------------------------------------------------------------
# permutations


@dataclass(frozen=True)
class Permutation:
    """Bijection on [n], stored as the image tuple (pi(1), ..., pi(n))."""

    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(x) for x in self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise PreconditionError("not a permutation of [n]: %r" % (self.images,))

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __len__(self) -> int:
        return len(self.images)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, v in enumerate(self.images, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.images)


def identity_permutation(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def enumerate_permutations(n: int, caps: Caps | None = None):
    """All permutations of [n] in lexicographic order of image tuples."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    caps = caps or caps_from_env()
    check_cap(n, caps.permutations, "permutation ground size")
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


# ---------------------------------------------------------------------------
# ordered set partitions


@dataclass(frozen=True)
class OrderedSetPartition:
    """Ordered list of disjoint nonempty blocks covering [n].

    Blocks are stored as sorted tuples; the block order is significant,
    the element order inside a block is not.
    """

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(x) for x in b)) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        seen = [x for b in blocks for x in b]
        if not blocks or any(not b for b in blocks):
            raise PreconditionError("blocks must be nonempty")
        if sorted(seen) != list(range(1, len(seen) + 1)):
            raise PreconditionError("blocks must partition [n]: %r" % (blocks,))

    @property
    def ground_size(self) -> int:
        return sum(len(b) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def serialize(self) -> str:
        return "|".join(" ".join(str(x) for x in b) for b in self.blocks)

    @staticmethod
    def parse(text: str) -> "OrderedSetPartition":
        blocks = [tuple(int(x) for x in part.split()) for part in text.split("|")]
        return OrderedSetPartition(tuple(blocks))

    def __str__(self) -> str:
        return self.serialize()


def partition_type(s: OrderedSetPartition) -> tuple:
    """Partial sums (t_1, ..., t_{k-1}) of the block sizes."""
    total = 0
    out = []
    for b in s.blocks[:-1]:
        total += len(b)
        out.append(total)
    return tuple(out)


def refines(s1: OrderedSetPartition, s2: OrderedSetPartition) -> bool:
    """True iff every block of s2 is a union of consecutive blocks of s1."""
    if s1.ground_size != s2.ground_size:
        raise PreconditionError("refines: different ground sets")
    i = 0
    for b2 in s2.blocks:
        merged = []
        while len(merged) < len(b2):
            if i >= len(s1.blocks):
                return False
            merged.extend(s1.blocks[i])
            i += 1
        if sorted(merged) != list(b2):
            return False
    return i == len(s1.blocks)


def partition_of_permutation(pi: Permutation) -> OrderedSetPartition:
    """The singleton partition ({pi^-1(1)}, {pi^-1(2)}, ...)."""
    inv = pi.inverse()
    return OrderedSetPartition(tuple((inv(i),) for i in range(1, len(pi) + 1)))


def enumerate_ordered_partitions(n: int, min_blocks: int = 1, caps: Caps | None = None):
    """All ordered set partitions of [n] with at least min_blocks blocks."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    caps = caps or caps_from_env()
    check_cap(n, caps.partitions, "partition ground size")

    def rec(remaining):
        if not remaining:
            yield ()
            return
        elems = sorted(remaining)
        # nonempty subsets of the remaining elements, deterministic order
        for mask in range(1, 1 << len(elems)):
            block = tuple(elems[i] for i in range(len(elems)) if mask >> i & 1)
            rest = remaining - set(block)
            for tail in rec(rest):
                yield (block,) + tail

    out = [OrderedSetPartition(b) for b in rec(set(range(1, n + 1)))]
    return [s for s in out if len(s) >= min_blocks]


# ---------------------------------------------------------------------------
# plane trees


class PlaneTree:
    """Strictly branching plane rooted tree; children == () means a leaf.

    Canonical serialization: "." for a leaf, "(" + children + ")" for an
    internal vertex, e.g. "((..).)" — tree equality is string equality.
    """

    __slots__ = ("children", "_string", "_leaves", "_internal")

    def __init__(self, children=()):
        children = tuple(children)
        if len(children) == 1:
            raise PreconditionError("internal vertices need >= 2 children")
        self.children = children
        if children:
            self._string = "(" + "".join(c._string for c in children) + ")"
            self._leaves = sum(c._leaves for c in children)
            self._internal = 1 + sum(c._internal for c in children)
        else:
            self._string = "."
            self._leaves = 1
            self._internal = 0

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def leaf_count(self) -> int:
        return self._leaves

    @property
    def internal_count(self) -> int:
        return self._internal

    def serialize(self) -> str:
        return self._string

    @staticmethod
    def parse(text: str) -> "PlaneTree":
        pos = 0

        def rec():
            nonlocal pos
            if pos >= len(text):
                raise PreconditionError("truncated tree string")
            ch = text[pos]
            if ch == ".":
                pos += 1
                return PlaneTree()
            if ch != "(":
                raise PreconditionError("bad tree character %r" % ch)
            pos += 1
            kids = []
            while pos < len(text) and text[pos] != ")":
                kids.append(rec())
            if pos >= len(text):
                raise PreconditionError("unbalanced tree string")
            pos += 1
            return PlaneTree(kids)

        t = rec()
        if pos != len(text):
            raise PreconditionError("trailing garbage in tree string")
        return t

    def subtree(self, path) -> "PlaneTree":
        node = self
        for idx in path:
            try:
                node = node.children[idx]
            except IndexError:
                raise PreconditionError("invalid subtree path %r" % (path,))
        return node

    def replace(self, path, new: "PlaneTree") -> "PlaneTree":
        if not path:
            return new
        idx = path[0]
        kids = list(self.children)
        kids[idx] = kids[idx].replace(path[1:], new)
        return PlaneTree(kids)

    def __eq__(self, other):
        return isinstance(other, PlaneTree) and self._string == other._string

    def __hash__(self):
        return hash(self._string)

    def __str__(self):
        return self._string

    def __repr__(self):
        return "PlaneTree(%r)" % self._string


def leaf() -> PlaneTree:
    return PlaneTree()


def node(*children) -> PlaneTree:
    return PlaneTree(children)


@lru_cache(maxsize=None)
def _subtrees_with_leaves(m: int):
    """All strictly branching trees with m leaves (a bare leaf iff m == 1)."""
    if m == 1:
        return (PlaneTree(),)
    out = []
    for c in range(2, m + 1):
        for comp in _compositions(m, c):
            for kids in itertools.product(*(_subtrees_with_leaves(p) for p in comp)):
                out.append(PlaneTree(kids))
    return tuple(out)


def _compositions(total: int, parts: int):
    """Compositions of total into `parts` positive parts, lex order."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def enumerate_trees(n: int, k: int | None = None, caps: Caps | None = None):
    """Trees in T(n) (n+1 leaves), optionally restricted to k internal vertices."""
    if n < 0:
        raise PreconditionError("n must be >= 0")
    if k is not None and not 0 <= k <= n:
        raise PreconditionError("need 0 <= k <= n")
    caps = caps or caps_from_env()
    check_cap(n, caps.trees, "tree size")
    if n == 0:
        out = [PlaneTree()]
    else:
        out = [t for t in _subtrees_with_leaves(n + 1) if not t.is_leaf]
    if k is not None:
        out = [t for t in out if t.internal_count == k]
    return out


# ---------------------------------------------------------------------------
# internal labeling


def internal_labeling(t: PlaneTree):
    """Map path -> tuple of labels of the internal vertex at that path.

    Vertex v is labeled i when v is the closest common ancestor of
    leaves i and i+1; equivalently a vertex's labels are the last-leaf
    indices of all its children but the rightmost.  The labels partition
    [n] where n+1 is the leaf count.
    """
    if t.is_leaf:
        raise PreconditionError("leaf-only tree has no internal labels")
    out = {}

    def rec(nd, path, start):
        if nd.is_leaf:
            return 1
        count = 0
        bounds = []
        for idx, ch in enumerate(nd.children):
            count += rec(ch, path + (idx,), start + count)
            bounds.append(start + count - 1)
        out[path] = tuple(bounds[:-1])
        return count

    rec(t, (), 1)
    return out


def labels_to_paths(t: PlaneTree):
    """Map label -> path of the internal vertex carrying it."""
    return {lab: path for path, labs in internal_labeling(t).items() for lab in labs}


def vertex_handle_paths(t: PlaneTree):
    """Map internal-vertex handle (minimal label) -> path."""
    return {min(labs): path for path, labs in internal_labeling(t).items()}


def _leaf_range(t: PlaneTree, path):
    start = 1
    node_ = t
    for idx in path:
        start += sum(node_.children[j].leaf_count for j in range(idx))
        node_ = node_.children[idx]
    return start, start + node_.leaf_count - 1


def subtree_labels(t: PlaneTree, path) -> tuple:
    """Internal labels of the subtree at `path`: the interval [a, b-1]
    when the subtree's leaves are leaves a..b of the whole tree."""
    a, b = _leaf_range(t, path)
    return tuple(range(a, b))


# ---------------------------------------------------------------------------
# contraction and flips


def _resolve_edge(t: PlaneTree, e):
    """An internal edge is named by the handle (minimal label) of its
    child endpoint; paths are accepted directly."""
    if isinstance(e, tuple):
        path = e
    else:
        handles = vertex_handle_paths(t)
        if e not in handles:
            raise PreconditionError("no internal vertex with handle %r" % (e,))
        path = handles[e]
    if not path:
        raise PreconditionError("the root has no parent edge")
    if t.subtree(path).is_leaf:
        raise PreconditionError("edge to a leaf is not internal")
    return path


def contract_internal_edge(t: PlaneTree, e) -> PlaneTree:
    """Contract the internal edge above the named internal vertex."""
    path = _resolve_edge(t, e)
    parent = t.subtree(path[:-1])
    idx = path[-1]
    child = parent.children[idx]
    kids = parent.children[:idx] + child.children + parent.children[idx + 1:]
    return t.replace(path[:-1], PlaneTree(kids))


def flip(t: PlaneTree, e) -> PlaneTree:
    """Flip an internal edge of a complete binary tree.

    The result is the unique other binary tree with an internal edge
    whose contraction agrees with contracting e in t (a tree rotation).
    """
    if t.internal_count + 1 != t.leaf_count:
        raise PreconditionError("flip requires a complete binary tree")
    path = _resolve_edge(t, e)
    parent = t.subtree(path[:-1])
    idx = path[-1]
    child = parent.children[idx]
    if idx == 0:
        new_parent = node(child.children[0], node(child.children[1], parent.children[1]))
    else:
        new_parent = node(node(parent.children[0], child.children[0]), child.children[1])
    return t.replace(path[:-1], new_parent)


def internal_edges(t: PlaneTree):
    """Handles (child minimal labels) of all internal edges of t."""
    labeling = internal_labeling(t)
    return sorted(min(labs) for path, labs in labeling.items() if path)


# ---------------------------------------------------------------------------
# linear extensions and the insertion map


def tree_label_covers(t: PlaneTree):
    """Cover pairs (child label class min-representative view).

    Returns (classes, covers) where classes maps each path to its label
    tuple and covers is a list of (lower_path, upper_path) with the
    parent above the child.
    """
    labeling = internal_labeling(t)
    covers = []
    for path in labeling:
        if path and path[:-1] in labeling:
            covers.append((path, path[:-1]))
        elif path:
            # parent might be an ancestor further up when intermediate
            # nodes are leaves; impossible: parents of internal nodes are
            # internal, so path[:-1] is always labeled
            raise AssertionError("unlabeled parent")
    return labeling, covers


def linear_extensions(t: PlaneTree, caps: Caps | None = None):
    """All linear extensions of the tree order on internal labels.

    Only complete binary trees induce a partial order (one label per
    vertex); other trees are rejected.
    """
    if t.internal_count + 1 != t.leaf_count:
        raise PreconditionError("linear extensions need a complete binary tree")
    n = t.internal_count
    paths = labels_to_paths(t)
    out = []

    def rec(order, used):
        if len(order) == n:
            images = [0] * n
            for value, label in enumerate(order, start=1):
                images[label - 1] = value
            out.append(Permutation(tuple(images)))
            return
        for i in range(1, n + 1):
            if i in used:
                continue
            # i may receive the next (smallest unused) value iff every
            # label strictly below i is already placed
            if all(j in used for j in strictly_below[i]):
                used.add(i)
                order.append(i)
                rec(order, used)
                order.pop()
                used.remove(i)

    # j is strictly below i iff path(i) is a proper prefix of path(j)
    strictly_below = {
        i: [j for j in range(1, n + 1) if j != i and paths[i] == paths[j][: len(paths[i])]]
        for i in range(1, n + 1)
    }
    rec([], set())
    return out


def bst_insert(pi: Permutation) -> PlaneTree:
    """The unique complete binary tree whose linear extensions contain pi.

    Built recursively: the label interval's root is the position of the
    largest value of pi on that interval.
    """
    n = len(pi)

    def build(lo, hi):
        if lo > hi:
            return leaf()
        m = max(range(lo, hi + 1), key=lambda i: pi(i))
        return node(build(lo, m - 1), build(m + 1, hi))

    return build(1, n)


# ---------------------------------------------------------------------------
# partition-labeled trees


@dataclass(frozen=True)
class PartitionLabeledTree:
    """A pair (S, T): ordered partition with k blocks labeling the k
    leaves of a strictly branching tree left to right."""

    partition: OrderedSetPartition
    tree: PlaneTree

    def __post_init__(self):
        if len(self.partition) != self.tree.leaf_count:
            raise PreconditionError(
                "block count %d != leaf count %d"
                % (len(self.partition), self.tree.leaf_count)
            )

    def key(self) -> str:
        return self.partition.serialize() + " ; " + self.tree.serialize()

    def __str__(self):
        return self.key()
