"""Preorders and polyhedral cones in the quotient space W_d.

W_d is R^{d+1} modulo the all-ones direction; points are represented by
the canonical sum-zero representative, so all cone normals have
coordinate sum zero and membership is a plain inequality check.

Cone families: preorder cones sigma_<=, braid cones sigma(pi), nested
braid cones sigma(pi, tau), tree cones sigma(T), and the cones
sigma(S, T) of partition-labeled trees built through the difference
transform D^pi.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .combinat import (
    PartitionLabeledTree,
    Permutation,
    PlaneTree,
    internal_labeling,
    partition_of_permutation,
    partition_type,
    refines,
)
from .errors import DimensionMismatchError, PreconditionError
from .exact import (
    as_vec,
    dot,
    null_space,
    matrix_rank,
    primitive_int,
    rref,
    vadd,
    vscale,
    vsub,
)


# ---------------------------------------------------------------------------
# preorders


@dataclass(frozen=True)
class Preorder:
    """Reflexive transitive relation on a finite ground set of ints.

    relation holds pairs (i, j) meaning i <= j, including all reflexive
    pairs; it is closed under transitivity on construction.
    """

    ground: tuple
    relation: frozenset

    @staticmethod
    def from_pairs(ground, pairs) -> "Preorder":
        ground = tuple(sorted(set(int(g) for g in ground)))
        rel = {(g, g) for g in ground}
        for a, b in pairs:
            if a not in ground or b not in ground:
                raise PreconditionError("relation pair outside ground set")
            rel.add((int(a), int(b)))
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in itertools.product(list(rel), list(rel)):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
        return Preorder(ground, frozenset(rel))

    def leq(self, a, b) -> bool:
        return (a, b) in self.relation

    def classes(self):
        """Equivalence classes (mutual relation), sorted by minimum."""
        seen = set()
        out = []
        for g in self.ground:
            if g in seen:
                continue
            cls = tuple(
                h for h in self.ground if self.leq(g, h) and self.leq(h, g)
            )
            seen.update(cls)
            out.append(cls)
        return out

    def class_of(self, a):
        for cls in self.classes():
            if a in cls:
                return cls
        raise PreconditionError("%r not in ground set" % (a,))

    def quotient_covers(self):
        """Cover pairs (lower_class, upper_class) of the class quotient."""
        classes = self.classes()
        strictly = {}
        for a, b in itertools.permutations(classes, 2):
            if self.leq(a[0], b[0]) and not self.leq(b[0], a[0]):
                strictly.setdefault(a, set()).add(b)
        covers = []
        for a in classes:
            for b in strictly.get(a, ()):
                if not any(
                    c in strictly.get(a, set()) and b in strictly.get(c, set())
                    for c in classes
                ):
                    covers.append((a, b))
        return covers

    def minimal_classes(self):
        classes = self.classes()
        return [
            c
            for c in classes
            if not any(
                self.leq(o[0], c[0]) and not self.leq(c[0], o[0]) for o in classes
            )
        ]

    def depths(self):
        """Longest-chain-below rank per class (minimal classes at 0)."""
        classes = self.classes()
        covers = self.quotient_covers()
        depth = {c: 0 for c in classes}
        changed = True
        while changed:
            changed = False
            for a, b in covers:
                if depth[b] < depth[a] + 1:
                    depth[b] = depth[a] + 1
                    changed = True
        return depth

    def contraction_moves(self):
        """All preorders obtained by contracting one Hasse edge."""
        out = []
        for a, b in self.quotient_covers():
            pairs = set(self.relation)
            pairs.add((b[0], a[0]))
            out.append(Preorder.from_pairs(self.ground, pairs))
        return out


def is_contraction(p1: Preorder, p2: Preorder) -> bool:
    """True iff p1's Hasse diagram arises from p2's by edge contractions."""
    if p1.ground != p2.ground:
        raise PreconditionError("is_contraction: ground sets differ")
    seen = {p2.relation}
    frontier = [p2]
    while frontier:
        cur = frontier.pop()
        if cur.relation == p1.relation:
            return True
        for nxt in cur.contraction_moves():
            if nxt.relation not in seen and nxt.relation <= p1.relation:
                seen.add(nxt.relation)
                frontier.append(nxt)
    return False


def tree_preorder(t: PlaneTree) -> Preorder:
    """The preorder on internal labels whose Hasse diagram is the
    internal-vertex tree: label i <= label j iff j's vertex is an
    ancestor of (or equal to) i's vertex."""
    if t.is_leaf:
        raise PreconditionError("leaf-only tree has no preorder")
    labeling = internal_labeling(t)
    n = t.leaf_count - 1
    pairs = []
    for path, labs in labeling.items():
        for anc_path, anc_labs in labeling.items():
            if anc_path == path[: len(anc_path)]:
                pairs.extend((i, j) for i in labs for j in anc_labs)
    return Preorder.from_pairs(range(1, n + 1), pairs)


def partition_tree_preorder(plt: PartitionLabeledTree) -> Preorder:
    """Preorder on Type(S): relabel internal label i of the tree to t_i."""
    if len(plt.partition) < 2:
        raise PreconditionError("single-block partition has no preorder")
    ts = partition_type(plt.partition)
    base = tree_preorder(plt.tree)
    relabel = {i: ts[i - 1] for i in base.ground}
    pairs = [(relabel[a], relabel[b]) for a, b in base.relation]
    return Preorder.from_pairs(ts, pairs)


# ---------------------------------------------------------------------------
# cones


@dataclass(frozen=True)
class HCone:
    """Homogeneous system in W_d: equalities <n, w> = 0 and inequalities
    <n, w> >= 0, all normals sum-zero, canonical and deduplicated."""

    dim: int
    equalities: tuple
    inequalities: tuple

    def __post_init__(self):
        eqs = set()
        for n in self.equalities:
            n = primitive_int(n, orient=False)
            if sum(n) != 0:
                raise PreconditionError("equality normal not sum-zero")
            if any(n):
                eqs.add(n)
        ineqs = set()
        for n in self.inequalities:
            n = primitive_int(n, orient=True)
            if sum(n) != 0:
                raise PreconditionError("inequality normal not sum-zero")
            if any(n):
                ineqs.add(n)
        object.__setattr__(self, "equalities", tuple(sorted(eqs)))
        object.__setattr__(self, "inequalities", tuple(sorted(ineqs)))
        for n in self.equalities + self.inequalities:
            if len(n) != self.dim:
                raise DimensionMismatchError("cone normal dimension")

    def to_json(self) -> str:
        def fmt(vec):
            return [str(Fraction(x)) for x in vec]

        return json.dumps(
            {
                "dim": self.dim,
                "equalities": [fmt(n) for n in self.equalities],
                "inequalities": [fmt(n) for n in self.inequalities],
            }
        )

    @staticmethod
    def from_json(text: str) -> "HCone":
        data = json.loads(text)
        return HCone(
            data["dim"],
            tuple(tuple(Fraction(x) for x in n) for n in data["equalities"]),
            tuple(tuple(Fraction(x) for x in n) for n in data["inequalities"]),
        )


def cone_contains(c: HCone, w, strict: bool = False) -> bool:
    """Weak membership, or relative-interior membership when strict
    (equalities exact, all inequalities strictly positive)."""
    w = as_vec(w)
    if len(w) != c.dim:
        raise DimensionMismatchError("cone_contains: %d vs %d" % (len(w), c.dim))
    for n in c.equalities:
        if dot(n, w) != 0:
            return False
    for n in c.inequalities:
        v = dot(n, w)
        if v < 0 or (strict and v == 0):
            return False
    return True


def _ones_row(dim):
    return (Fraction(1),) * dim


def cone_lineality(c: HCone):
    """Canonical basis of the lineality space (sum-zero representatives)."""
    rows = [_ones_row(c.dim)] + list(c.equalities) + list(c.inequalities)
    return null_space(rows, c.dim)


def cone_rays(c: HCone):
    """(lineality_basis, extreme_rays) of the cone.

    Extreme rays are of the pointed section by the orthogonal complement
    of the lineality space, as canonical primitive integer vectors.
    Brute force over active-constraint subsets; fine for dim <= 5.
    """
    eq_rows = [_ones_row(c.dim)] + list(c.equalities)
    lin = cone_lineality(c)
    section_rows = eq_rows + [l for l in lin]
    space = null_space(section_rows, c.dim)
    target = len(space)  # dimension of the pointed section
    rays = set()
    if target == 0:
        return lin, []
    ineqs = list(c.inequalities)
    for subset in itertools.combinations(range(len(ineqs)), target - 1):
        rows = section_rows + [ineqs[i] for i in subset]
        basis = null_space(rows, c.dim)
        if len(basis) != 1:
            continue
        v = basis[0]
        vals = [dot(n, v) for n in ineqs]
        if all(x >= 0 for x in vals):
            rays.add(primitive_int(v, orient=True))
        elif all(x <= 0 for x in vals):
            rays.add(primitive_int(vscale(-1, v), orient=True))
    return lin, sorted(rays)


def cone_dim(c: HCone) -> int:
    lin, rays = cone_rays(c)
    return len(lin) + matrix_rank(list(rays)) if rays else len(lin)


def cone_equal(c1: HCone, c2: HCone) -> bool:
    """Exact point-set equality, via canonical equality spaces, lineality
    spaces, and extreme-ray sets of the pointed sections."""
    if c1.dim != c2.dim:
        raise DimensionMismatchError("cone_equal: ambient mismatch")
    key1, _ = rref([_ones_row(c1.dim)] + list(c1.equalities))
    key2, _ = rref([_ones_row(c2.dim)] + list(c2.equalities))
    if key1 != key2:
        return False
    lin1 = rref(cone_lineality(c1))[0]
    lin2 = rref(cone_lineality(c2))[0]
    if lin1 != lin2:
        return False
    return cone_rays(c1)[1] == cone_rays(c2)[1]


def is_face(sub: HCone, sup: HCone) -> bool:
    """True iff sub is a face of sup (as point sets)."""
    if sub.dim != sup.dim:
        raise DimensionMismatchError("is_face: ambient mismatch")
    lin, rays = cone_rays(sub)
    gens = list(rays) + [tuple(l) for l in lin] + [tuple(vscale(-1, l)) for l in lin]
    for g in gens:
        if not cone_contains(sup, g):
            return False
    # relative interior point of sub: the sum of its extreme rays
    z = tuple(Fraction(0) for _ in range(sub.dim))
    for r in rays:
        z = vadd(z, as_vec(r))
    # the minimal face of sup containing z: tight inequalities become
    # equalities; sub is a face of sup exactly when it IS that face
    active = tuple(n for n in sup.inequalities if dot(n, z) == 0)
    inactive = tuple(n for n in sup.inequalities if dot(n, z) != 0)
    minimal_face = HCone(sup.dim, tuple(sup.equalities) + active, inactive)
    return cone_equal(sub, minimal_face)


# ---------------------------------------------------------------------------
# cone constructors


def preorder_cone(p: Preorder) -> HCone:
    """sigma_<= = {w in W_{n-1} : w_i <= w_j if i <= j}, in the
    irredundant facet form: equalities per class, inequalities per cover."""
    n = len(p.ground)
    if p.ground != tuple(range(1, n + 1)):
        raise PreconditionError("preorder_cone requires ground set [n]")

    def e(i):
        return tuple(Fraction(1 if j == i - 1 else 0) for j in range(n))

    eqs = []
    for cls in p.classes():
        for other in cls[1:]:
            eqs.append(vsub(e(other), e(cls[0])))
    ineqs = []
    for lower, upper in p.quotient_covers():
        ineqs.append(vsub(e(upper[0]), e(lower[0])))
    return HCone(n, tuple(eqs), tuple(ineqs))


def interior_point_preorder(p: Preorder):
    """Sum-zero representative in the relative interior of preorder_cone."""
    n = len(p.ground)
    depth = p.depths()
    w = [Fraction(0)] * n
    for cls, k in depth.items():
        for i in cls:
            w[i - 1] = Fraction(k)
    mean = sum(w, Fraction(0)) / n
    return tuple(x - mean for x in w)


@dataclass(frozen=True)
class DPiMap:
    """The difference transform D^pi: W_d -> R^d with rows
    f^pi_i = e_{pi^-1(i+1)} - e_{pi^-1(i)}."""

    pi: Permutation

    @property
    def dim(self) -> int:
        return len(self.pi)

    def row(self, i: int):
        d1 = len(self.pi)
        if not 1 <= i <= d1 - 1:
            raise PreconditionError("row index out of range")
        inv = self.pi.inverse()
        out = [Fraction(0)] * d1
        out[inv(i + 1) - 1] += 1
        out[inv(i) - 1] -= 1
        return tuple(out)

    @property
    def rows(self):
        return tuple(self.row(i) for i in range(1, len(self.pi)))

    def apply(self, w):
        w = as_vec(w)
        if len(w) != len(self.pi):
            raise DimensionMismatchError("DPiMap: dimension mismatch")
        return tuple(dot(r, w) for r in self.rows)


def dpi(pi: Permutation) -> DPiMap:
    return DPiMap(pi)


def braid_cone(pi: Permutation) -> HCone:
    """sigma(pi) = {w : w_{pi^-1(1)} <= ... <= w_{pi^-1(d+1)}}."""
    return HCone(len(pi), (), dpi(pi).rows)


def nested_braid_cone(pi: Permutation, tau: Permutation) -> HCone:
    """sigma(pi, tau): 0 <= D^pi_{tau^-1(1)} w <= ... <= D^pi_{tau^-1(d)} w."""
    d1 = len(pi)
    if len(tau) != d1 - 1:
        raise PreconditionError("tau must act on [d] for pi on [d+1]")
    D = dpi(pi)
    tinv = tau.inverse()
    chain = [D.row(tinv(i)) for i in range(1, d1)]
    ineqs = [chain[0]]
    for a, b in zip(chain, chain[1:]):
        ineqs.append(vsub(b, a))
    return HCone(d1, (), tuple(ineqs))


def sigma_tree(t: PlaneTree) -> HCone:
    """sigma(T) = preorder cone of the tree preorder."""
    return preorder_cone(tree_preorder(t))


def refining_permutation(s) -> Permutation:
    """A permutation pi with S(pi) refining S: concatenate the blocks in
    order, elements ascending inside each block."""
    seq = [x for b in s.blocks for x in b]
    images = [0] * len(seq)
    for pos, elem in enumerate(seq, start=1):
        images[elem - 1] = pos
    return Permutation(tuple(images))


def sigma_st(plt: PartitionLabeledTree, pi: Permutation | None = None) -> HCone:
    """The cone sigma(S, T) in facet-defining form.

    Equalities: w_i = w_j inside blocks of S (D^pi rows off Type(S)) and
    D^pi_i w = D^pi_j w inside classes of the preorder on Type(S);
    inequalities: covers of that preorder plus its minimal classes.
    Independent of the refining pi chosen.
    """
    s = plt.partition
    d1 = s.ground_size
    if pi is None:
        pi = refining_permutation(s)
    else:
        if not refines(partition_of_permutation(pi), s):
            raise PreconditionError("pi does not refine the partition")
    D = dpi(pi)
    ts = set(partition_type(s))
    eqs = [D.row(i) for i in range(1, d1) if i not in ts]
    ineqs = []
    if len(s) >= 2:
        q = partition_tree_preorder(plt)
        for cls in q.classes():
            for other in cls[1:]:
                eqs.append(vsub(D.row(other), D.row(cls[0])))
        for lower, upper in q.quotient_covers():
            ineqs.append(vsub(D.row(upper[0]), D.row(lower[0])))
        for cls in q.minimal_classes():
            ineqs.append(D.row(cls[0]))
    return HCone(d1, tuple(eqs), tuple(ineqs))


def sigma_pi_tree(pi: Permutation, t: PlaneTree) -> HCone:
    """sigma(pi, T) = sigma(S(pi), T) for T in T(d,d)."""
    if t.leaf_count != len(pi):
        raise PreconditionError("tree must have d+1 leaves for pi on [d+1]")
    return sigma_st(PartitionLabeledTree(partition_of_permutation(pi), t), pi)


def interior_point(plt: PartitionLabeledTree):
    """Relative interior point of sigma_st(plt), by the depth rule.

    Set u_l = 0 off Type(S) and u_{t_i} = d - k when the tree vertex
    labeled i sits at distance k from the root, then pull back through
    D^pi and normalize to coordinate sum zero.
    """
    s = plt.partition
    d1 = s.ground_size
    d = d1 - 1
    u = [Fraction(0)] * (d + 1)  # u[1..d]
    if len(s) >= 2:
        ts = partition_type(s)
        labeling = internal_labeling(plt.tree)
        for path, labs in labeling.items():
            for i in labs:
                u[ts[i - 1]] = Fraction(d - len(path))
    pi = refining_permutation(s)
    inv = pi.inverse()
    w = [Fraction(0)] * d1
    acc = Fraction(0)
    w[inv(1) - 1] = acc
    for i in range(1, d1):
        acc += u[i]
        w[inv(i + 1) - 1] = acc
    mean = sum(w, Fraction(0)) / d1
    out = tuple(x - mean for x in w)
    cone = sigma_st(plt, pi)
    if not cone_contains(cone, out, strict=True):
        raise AssertionError("depth-rule point not in the relative interior")
    return out
