"""Finite graded posets: ordered-partition poset, tree poset, and the
poset of partition-labeled trees, with isomorphism testing.

Elements are strings (serialized combinatorial data) so posets dump to
JSON directly.  Every poset here has a unique minimum "0" at rank 0.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from .caps import Caps, caps_from_env, check_cap
from .combinat import (
    OrderedSetPartition,
    PartitionLabeledTree,
    PlaneTree,
    enumerate_ordered_partitions,
    enumerate_trees,
    internal_labeling,
    contract_internal_edge,
)
from .errors import InternalConsistencyError, PreconditionError

BOTTOM = "0"


@dataclass(frozen=True)
class FinitePoset:
    """A graded poset given by elements, cover pairs and a rank function."""

    elements: tuple  # tuple of string keys
    covers: tuple  # tuple of (lower, upper) pairs
    rank: dict = field(compare=False)

    def __post_init__(self):
        elems = set(self.elements)
        if len(elems) != len(self.elements):
            raise PreconditionError("duplicate poset elements")
        for lo, hi in self.covers:
            if lo not in elems or hi not in elems:
                raise PreconditionError("cover endpoint not an element")
            if self.rank[hi] != self.rank[lo] + 1:
                raise InternalConsistencyError(
                    "cover %r -> %r skips a rank" % (lo, hi)
                )

    def up(self):
        adj = {e: [] for e in self.elements}
        for lo, hi in self.covers:
            adj[lo].append(hi)
        return adj

    def down(self):
        adj = {e: [] for e in self.elements}
        for lo, hi in self.covers:
            adj[hi].append(lo)
        return adj

    def rank_counts(self):
        counts = {}
        for e in self.elements:
            counts[self.rank[e]] = counts.get(self.rank[e], 0) + 1
        return tuple(counts[r] for r in sorted(counts))

    def top_rank(self) -> int:
        return max(self.rank[e] for e in self.elements)

    def is_graded(self) -> bool:
        """Single minimum, single maximum, every element on a maximal
        chain: each non-max element is covered, each non-min covers."""
        ranks = self.rank
        mins = [e for e in self.elements if ranks[e] == 0]
        tops = [e for e in self.elements if ranks[e] == self.top_rank()]
        if len(mins) != 1 or len(tops) != 1:
            return False
        up, down = self.up(), self.down()
        for e in self.elements:
            if ranks[e] < self.top_rank() and not up[e]:
                return False
            if ranks[e] > 0 and not down[e]:
                return False
        return True

    def leq(self, a, b) -> bool:
        """a <= b via cover reachability."""
        if a == b:
            return True
        if self.rank[a] >= self.rank[b]:
            return False
        up = self.up()
        seen = {a}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            for y in up[x]:
                if y == b:
                    return True
                if y not in seen and self.rank[y] < self.rank[b]:
                    seen.add(y)
                    queue.append(y)
        return False

    def dual(self) -> "FinitePoset":
        top = self.top_rank()
        rank = {e: top - self.rank[e] for e in self.elements}
        covers = tuple((hi, lo) for lo, hi in self.covers)
        return FinitePoset(self.elements, covers, rank)

    def to_json(self) -> str:
        return json.dumps(
            {
                "elements": sorted(self.elements),
                "covers": sorted([lo, hi] for lo, hi in self.covers),
                "rank": {e: self.rank[e] for e in sorted(self.elements)},
            },
            indent=1,
        )

    def to_dot(self) -> str:
        """Hasse diagram, one layer per rank."""
        lines = ["digraph hasse {", "  rankdir=BT;", '  node [shape=box, fontsize=10];']
        ids = {e: "n%d" % i for i, e in enumerate(sorted(self.elements))}
        for r in range(self.top_rank() + 1):
            layer = sorted(e for e in self.elements if self.rank[e] == r)
            lines.append(
                "  { rank=same; %s }" % " ".join(ids[e] + ";" for e in layer)
            )
        for e in sorted(self.elements):
            lines.append('  %s [label="%s"];' % (ids[e], e.replace('"', "'")))
        for lo, hi in sorted(self.covers):
            lines.append("  %s -> %s;" % (ids[lo], ids[hi]))
        lines.append("}")
        return "\n".join(lines) + "\n"


def _require_graded(p: FinitePoset, what: str) -> FinitePoset:
    if not p.is_graded():
        raise InternalConsistencyError("%s is not graded" % what)
    return p


# ---------------------------------------------------------------------------
# the three named posets


def build_O(n: int, caps: Caps | None = None) -> FinitePoset:
    """Ordered set partitions of [n] under adjacent-block merging, with a
    bottom element below the one-element-per-block partitions.

    A partition with k blocks has rank n - k + 1; covers merge two
    consecutive blocks.
    """
    caps = caps or caps_from_env()
    check_cap(n, caps.partitions, "partition ground size")
    parts = enumerate_ordered_partitions(n, 1, caps)
    elements = [BOTTOM] + [s.serialize() for s in parts]
    rank = {BOTTOM: 0}
    covers = []
    for s in parts:
        key = s.serialize()
        rank[key] = n - len(s) + 1
        if len(s) == n:
            covers.append((BOTTOM, key))
        for i in range(len(s) - 1):
            merged = (
                s.blocks[:i]
                + (tuple(sorted(s.blocks[i] + s.blocks[i + 1])),)
                + s.blocks[i + 2:]
            )
            covers.append((key, OrderedSetPartition(merged).serialize()))
    return _require_graded(
        FinitePoset(tuple(elements), tuple(sorted(set(covers))), rank), "build_O"
    )


def _internal_edge_paths(t: PlaneTree):
    return [
        path
        for path in internal_labeling(t)
        if path  # skip the root: it has no parent edge
    ]


def build_K(d: int, caps: Caps | None = None) -> FinitePoset:
    """Strictly branching trees with d+2 leaves under internal-edge
    contraction, with a bottom element below the binary trees.

    A tree with i internal vertices has rank d + 2 - i; the corolla is
    the maximum.
    """
    caps = caps or caps_from_env()
    trees = enumerate_trees(d + 1, None, caps)
    elements = [BOTTOM] + [t.serialize() for t in trees]
    rank = {BOTTOM: 0}
    covers = []
    for t in trees:
        key = t.serialize()
        rank[key] = d + 2 - t.internal_count
        if t.internal_count == d + 1:
            covers.append((BOTTOM, key))
        for path in _internal_edge_paths(t):
            covers.append((key, contract_internal_edge(t, path).serialize()))
    return _require_graded(
        FinitePoset(tuple(elements), tuple(sorted(set(covers))), rank), "build_K"
    )


def _leaf_offsets(t: PlaneTree):
    """Map path of each vertex -> 1-based position of its leftmost leaf."""
    out = {}

    def walk(node, path, start):
        out[path] = start
        pos = start
        for i, c in enumerate(node.children):
            walk(c, path + (i,), pos)
            pos += c.leaf_count
        return pos

    walk(t, (), 1)
    return out


def _minimal_internal_paths(t: PlaneTree):
    out = []

    def walk(node, path):
        if node.is_leaf:
            return
        if all(c.is_leaf for c in node.children):
            out.append(path)
        for i, c in enumerate(node.children):
            walk(c, path + (i,))

    walk(t, ())
    return out


def kpi_upper_covers(plt: PartitionLabeledTree):
    """Upper covers of a partition-labeled tree: contract one internal
    edge keeping the partition, or collapse one minimal internal vertex
    merging the blocks under its leaves."""
    s, t = plt.partition, plt.tree
    if t.is_leaf:
        return []
    out = set()
    for path in _internal_edge_paths(t):
        out.add(PartitionLabeledTree(s, contract_internal_edge(t, path)))
    offsets = _leaf_offsets(t)
    for path in _minimal_internal_paths(t):
        node = t.subtree(path)
        j = offsets[path] - 1  # 0-based index of the first merged block
        c = len(node.children)
        merged = tuple(
            sorted(x for block in s.blocks[j : j + c] for x in block)
        )
        blocks = s.blocks[:j] + (merged,) + s.blocks[j + c :]
        out.add(
            PartitionLabeledTree(
                OrderedSetPartition(blocks), t.replace(path, PlaneTree())
            )
        )
    return sorted(out, key=lambda p: p.key())


def build_KPi(d: int, caps: Caps | None = None) -> FinitePoset:
    """Partition-labeled trees on [d+1]: pairs of an ordered partition
    with k blocks and a strictly branching tree with k leaves, under
    edge contraction and minimal-vertex collapse, with a bottom element.

    Graded of rank d+1; a pair with an i-internal-vertex tree has rank
    d - i + 1.
    """
    caps = caps or caps_from_env()
    check_cap(d + 1, caps.poset, "labeled-tree poset ground size")
    elements = [BOTTOM]
    rank = {BOTTOM: 0}
    covers = []
    for k in range(1, d + 2):
        trees = enumerate_trees(max(k - 1, 0), None, caps) if k > 1 else [PlaneTree()]
        for s in enumerate_ordered_partitions(d + 1, 1, caps):
            if len(s) != k:
                continue
            for t in trees:
                plt = PartitionLabeledTree(s, t)
                key = plt.key()
                elements.append(key)
                rank[key] = d - t.internal_count + 1
                if rank[key] == 1:
                    covers.append((BOTTOM, key))
                for upper in kpi_upper_covers(plt):
                    covers.append((key, upper.key()))
    return _require_graded(
        FinitePoset(tuple(elements), tuple(sorted(set(covers))), rank),
        "build_KPi",
    )


# ---------------------------------------------------------------------------
# isomorphism


def _refine(colors, up, down):
    """Stable coloring refinement by (color, up colors, down colors)."""
    while True:
        sig = {}
        for e, c in colors.items():
            sig[e] = (
                c,
                tuple(sorted(colors[x] for x in up[e])),
                tuple(sorted(colors[x] for x in down[e])),
            )
        palette = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        new = {e: palette[sig[e]] for e in colors}
        if new == colors:
            return colors
        colors = new


def _color_classes(colors):
    classes = {}
    for e, c in colors.items():
        classes.setdefault(c, []).append(e)
    return classes


def _class_profile(classes):
    return sorted((c, len(v)) for c, v in classes.items())


def _check_bijection(p: FinitePoset, q: FinitePoset, mapping) -> bool:
    if len(mapping) != len(p.elements):
        return False
    if set(mapping.values()) != set(q.elements):
        return False
    pcov = {(mapping[lo], mapping[hi]) for lo, hi in p.covers}
    return pcov == set(q.covers)


def poset_isomorphic(p: FinitePoset, q: FinitePoset, hint=None):
    """Isomorphism test; returns a mapping dict or None.

    `hint` is an optional partial mapping of p-elements to q-elements to
    seed the search (it is verified, not trusted).  The search refines a
    coloring by cover-degree signatures and backtracks over the smallest
    ambiguous color class.
    """
    if len(p.elements) != len(q.elements) or len(p.covers) != len(q.covers):
        return None
    if sorted(p.rank[e] for e in p.elements) != sorted(
        q.rank[e] for e in q.elements
    ):
        return None
    pu, pd, qu, qd = p.up(), p.down(), q.up(), q.down()
    pc = {e: p.rank[e] for e in p.elements}
    qc = {e: q.rank[e] for e in q.elements}
    if hint:
        base = max(p.top_rank(), q.top_rank()) + 1
        marks = {e: i for i, e in enumerate(sorted(hint))}
        for e, i in marks.items():
            pc[e] = base + i
            qc[hint[e]] = base + i

    def search(pcolors, qcolors):
        pcolors = _refine(pcolors, pu, pd)
        qcolors = _refine(qcolors, qu, qd)
        pcls, qcls = _color_classes(pcolors), _color_classes(qcolors)
        if _class_profile(pcls) != _class_profile(qcls):
            return None
        multi = [c for c, v in pcls.items() if len(v) > 1]
        if not multi:
            mapping = {}
            for c, v in pcls.items():
                mapping[v[0]] = qcls[c][0]
            return mapping if _check_bijection(p, q, mapping) else None
        c = min(multi, key=lambda c: len(pcls[c]))
        fresh = max(pcolors.values()) + 1
        a = sorted(pcls[c])[0]
        for b in sorted(qcls[c]):
            np_ = dict(pcolors)
            nq = dict(qcolors)
            np_[a] = fresh
            nq[b] = fresh
            found = search(np_, nq)
            if found is not None:
                return found
        return None

    return search(pc, qc)
