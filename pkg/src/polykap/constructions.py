"""Explicit vertex and facet formulas for the four polytope families.

Perm(alpha): all coordinate permutations of a strictly increasing alpha.
LodAsso(alpha): Loday-style vertices indexed by complete binary trees.
Perm(alpha, beta): the nested permutohedron, vertices indexed by pairs
of permutations (pi, tau).
PermAsso(alpha, beta): the nested permuto-associahedron, vertices
indexed by pairs (pi, T) with T a complete binary tree.

All vertex clouds live in the affine slice with coordinate sum equal to
sum(alpha).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .caps import Caps, caps_from_env
from .combinat import (
    OrderedSetPartition,
    Permutation,
    PlaneTree,
    enumerate_ordered_partitions,
    enumerate_permutations,
    enumerate_trees,
    labels_to_paths,
    partition_type,
)
from .cones import dpi
from .errors import PreconditionError
from .exact import (
    Hyperplane,
    as_vec,
    sum_constraint_space,
    vadd,
    vscale,
)
from .geometry import HPolytope, VPolytope


@dataclass(frozen=True)
class AlphaBeta:
    """Parameter pair: alpha of length d+1 and beta of length d, both
    strictly increasing."""

    alpha: tuple
    beta: tuple

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_vec(self.alpha))
        object.__setattr__(self, "beta", as_vec(self.beta))
        if len(self.alpha) != len(self.beta) + 1:
            raise PreconditionError("alpha must be one entry longer than beta")
        for seq, name in ((self.alpha, "alpha"), (self.beta, "beta")):
            if any(a >= b for a, b in zip(seq, seq[1:])):
                raise PreconditionError("%s must be strictly increasing" % name)

    @property
    def d(self) -> int:
        return len(self.beta)


def _check_increasing(alpha):
    alpha = as_vec(alpha)
    if any(a >= b for a, b in zip(alpha, alpha[1:])):
        raise PreconditionError("alpha must be strictly increasing")
    return alpha


# ---------------------------------------------------------------------------
# Loday vertices


def val(alpha, subtree: PlaneTree) -> Fraction:
    """val(alpha, T) = sum_{k<=t} a_k - sum_{k<=a} a_k - sum_{k<=b} a_k
    for a binary subtree with t internal vertices whose left and right
    subtrees have a and b internal vertices (t = a + b + 1)."""
    if subtree.is_leaf or len(subtree.children) != 2:
        raise PreconditionError("val needs a binary subtree")
    t = subtree.internal_count
    a = subtree.children[0].internal_count
    b = subtree.children[1].internal_count
    return val_counts(alpha, t, a, b)


def val_counts(alpha, t: int, a: int, b: int) -> Fraction:
    alpha = as_vec(alpha)
    if t != a + b + 1:
        raise PreconditionError("need t = a + b + 1")
    if t > len(alpha):
        raise PreconditionError("subtree larger than alpha")

    def prefix(k):
        return sum(alpha[:k], Fraction(0))

    return prefix(t) - prefix(a) - prefix(b)


def loday_vertex(alpha, t: PlaneTree):
    """Vertex of LodAsso(alpha): coordinate i is val at the subtree
    rooted at the internal vertex labeled i."""
    alpha = _check_increasing(alpha)
    n = len(alpha)
    if t.internal_count != n or t.leaf_count != n + 1:
        raise PreconditionError("tree must be complete binary with n internal")
    paths = labels_to_paths(t)
    return tuple(val(alpha, t.subtree(paths[i])) for i in range(1, n + 1))


def loday_vertices(alpha, caps: Caps | None = None) -> VPolytope:
    alpha = _check_increasing(alpha)
    n = len(alpha)
    trees = enumerate_trees(n, n, caps)
    ambient = sum_constraint_space(n, sum(alpha, Fraction(0)))
    return VPolytope(ambient, tuple(loday_vertex(alpha, t) for t in trees))


def intervals(n: int):
    """Nonempty proper integer intervals of [n]."""
    out = []
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            if b - a + 1 < n:
                out.append(tuple(range(a, b + 1)))
    return out


def _e_set(s, dim):
    return tuple(Fraction(1 if i + 1 in set(s) else 0) for i in range(dim))


def loday_inequalities(alpha) -> HPolytope:
    """One inequality <e_{[n] minus I}, x> <= a_{|I|+1} + ... + a_n per
    nonempty proper interval I of [n]."""
    alpha = _check_increasing(alpha)
    n = len(alpha)
    ambient = sum_constraint_space(n, sum(alpha, Fraction(0)))
    facets = []
    for iv in intervals(n):
        comp = [i for i in range(1, n + 1) if i not in set(iv)]
        rhs = sum(alpha[len(iv):], Fraction(0))
        facets.append(Hyperplane(_e_set(comp, n), rhs))
    return HPolytope(ambient, tuple(facets))


# ---------------------------------------------------------------------------
# permutohedron


def perm_vertex(alpha, pi: Permutation):
    alpha = as_vec(alpha)
    return tuple(alpha[pi(i + 1) - 1] for i in range(len(alpha)))


def perm_vertices(alpha, caps: Caps | None = None) -> VPolytope:
    alpha = _check_increasing(alpha)
    n = len(alpha)
    ambient = sum_constraint_space(n, sum(alpha, Fraction(0)))
    pts = [perm_vertex(alpha, pi) for pi in enumerate_permutations(n, caps)]
    return VPolytope(ambient, tuple(pts))


def perm_inequalities(alpha) -> HPolytope:
    """<e_S, x> <= sum of the |S| largest alphas, all proper nonempty S."""
    alpha = _check_increasing(alpha)
    n = len(alpha)
    ambient = sum_constraint_space(n, sum(alpha, Fraction(0)))
    facets = []
    for size in range(1, n):
        rhs = sum(alpha[n - size:], Fraction(0))
        for s in itertools.combinations(range(1, n + 1), size):
            facets.append(Hyperplane(_e_set(s, n), rhs))
    return HPolytope(ambient, tuple(facets))


# ---------------------------------------------------------------------------
# nested permutohedron


def nested_perm_vertex(ab: AlphaBeta, pi: Permutation, tau: Permutation):
    """v = sum_i alpha_i e_{pi^-1(i)} + sum_i beta_i f^pi_{tau^-1(i)}."""
    d = ab.d
    if len(pi) != d + 1 or len(tau) != d:
        raise PreconditionError("pi must act on [d+1] and tau on [d]")
    if not is_appropriate(ab):
        raise PreconditionError("(alpha, beta) is not an appropriate pair")
    D = dpi(pi)
    tinv = tau.inverse()
    v = perm_vertex(ab.alpha, pi)
    for i in range(1, d + 1):
        v = vadd(v, vscale(ab.beta[i - 1], D.row(tinv(i))))
    return v


def nested_perm_vertices(ab: AlphaBeta, caps: Caps | None = None) -> VPolytope:
    d = ab.d
    ambient = sum_constraint_space(d + 1, sum(ab.alpha, Fraction(0)))
    pts = [
        nested_perm_vertex(ab, pi, tau)
        for pi in enumerate_permutations(d + 1, caps)
        for tau in enumerate_permutations(d, caps)
    ]
    return VPolytope(ambient, tuple(pts))


def e_S(s: OrderedSetPartition):
    """Block-weighted indicator sum_i i * e_{S_i}."""
    dim = s.ground_size
    out = [Fraction(0)] * dim
    for i, block in enumerate(s.blocks, start=1):
        for x in block:
            out[x - 1] = Fraction(i)
    return tuple(out)


def _alpha_block_term(ab: AlphaBeta, s: OrderedSetPartition) -> Fraction:
    """sum_{i=1}^k i * sum_{j=t_{i-1}+1}^{t_i} alpha_j."""
    total = Fraction(0)
    j = 0
    for i, block in enumerate(s.blocks, start=1):
        for _ in block:
            total += i * ab.alpha[j]
            j += 1
    return total


def nested_perm_rhs(ab: AlphaBeta, s: OrderedSetPartition) -> Fraction:
    """b_S = (alpha block term) + beta_{d+2-k} + ... + beta_d."""
    d = ab.d
    k = len(s)
    return _alpha_block_term(ab, s) + sum(ab.beta[d + 1 - k:], Fraction(0))


def permasso_rhs(ab: AlphaBeta, s: OrderedSetPartition) -> Fraction:
    """b_S = (alpha block term) + (sum beta - sum_i sum_{j<|S_i|} beta_j).

    The subtracted term for a block of size m is beta_1 + ... + beta_{m-1}:
    the tree weights over the m-leaf subtree spanning that block sum to
    the first m-1 entries of beta, one per internal vertex.
    """
    total = _alpha_block_term(ab, s) + sum(ab.beta, Fraction(0))
    for block in s.blocks:
        total -= sum(ab.beta[: len(block) - 1], Fraction(0))
    return total


def _partition_hpolytope(ab: AlphaBeta, rhs_fn, caps: Caps | None = None) -> HPolytope:
    d = ab.d
    ambient = sum_constraint_space(d + 1, sum(ab.alpha, Fraction(0)))
    facets = [
        Hyperplane(e_S(s), rhs_fn(ab, s))
        for s in enumerate_ordered_partitions(d + 1, 2, caps)
    ]
    return HPolytope(ambient, tuple(facets))


def nested_perm_inequalities(ab: AlphaBeta, caps: Caps | None = None) -> HPolytope:
    if not is_appropriate(ab):
        raise PreconditionError("(alpha, beta) is not an appropriate pair")
    return _partition_hpolytope(ab, nested_perm_rhs, caps)


def permasso_inequalities(ab: AlphaBeta, caps: Caps | None = None) -> HPolytope:
    if not is_t_appropriate(ab):
        raise PreconditionError("(alpha, beta) is not a T-appropriate pair")
    return _partition_hpolytope(ab, permasso_rhs, caps)


# ---------------------------------------------------------------------------
# nested permuto-associahedron


def beta_tree_weights(beta, t: PlaneTree):
    """(beta_{T,1}, ..., beta_{T,d}): val of beta at each labeled subtree."""
    beta = as_vec(beta)
    d = len(beta)
    if t.internal_count != d or t.leaf_count != d + 1:
        raise PreconditionError("tree must be complete binary in T(d,d)")
    paths = labels_to_paths(t)
    return tuple(val(beta, t.subtree(paths[i])) for i in range(1, d + 1))


def permasso_vertex(ab: AlphaBeta, pi: Permutation, t: PlaneTree):
    """v = sum_i alpha_i e_{pi^-1(i)} + sum_i beta_{T,i} f^pi_i."""
    d = ab.d
    if len(pi) != d + 1:
        raise PreconditionError("pi must act on [d+1]")
    if not is_t_appropriate(ab):
        raise PreconditionError("(alpha, beta) is not a T-appropriate pair")
    weights = beta_tree_weights(ab.beta, t)
    D = dpi(pi)
    v = perm_vertex(ab.alpha, pi)
    for i in range(1, d + 1):
        v = vadd(v, vscale(weights[i - 1], D.row(i)))
    return v


def permasso_vertices(ab: AlphaBeta, caps: Caps | None = None) -> VPolytope:
    d = ab.d
    ambient = sum_constraint_space(d + 1, sum(ab.alpha, Fraction(0)))
    pts = [
        permasso_vertex(ab, pi, t)
        for pi in enumerate_permutations(d + 1, caps)
        for t in enumerate_trees(d, d, caps)
    ]
    return VPolytope(ambient, tuple(pts))


# ---------------------------------------------------------------------------
# appropriateness


def _coefficients_increasing(ab: AlphaBeta, c) -> bool:
    """Check alpha_i + c_{i-1} - c_i strictly increasing (c_0 = c_{d+1} = 0)."""
    d = ab.d
    c = (Fraction(0),) + tuple(c) + (Fraction(0),)
    gamma = [ab.alpha[i - 1] + c[i - 1] - c[i] for i in range(1, d + 2)]
    return all(a < b for a, b in zip(gamma, gamma[1:]))


def is_appropriate(ab: AlphaBeta, caps: Caps | None = None) -> bool:
    """Vertex coefficients of the nested permutohedron increase strictly
    for every tau (the check is independent of pi)."""
    d = ab.d
    if d == 0:
        return True
    for tau in enumerate_permutations(d, caps):
        c = tuple(ab.beta[tau(j) - 1] for j in range(1, d + 1))
        if not _coefficients_increasing(ab, c):
            return False
    return True


def is_t_appropriate(ab: AlphaBeta, caps: Caps | None = None) -> bool:
    """Vertex coefficients of the permuto-associahedron increase strictly
    for every complete binary tree."""
    d = ab.d
    if d == 0:
        return True
    for t in enumerate_trees(d, d, caps):
        if not _coefficients_increasing(ab, beta_tree_weights(ab.beta, t)):
            return False
    return True


def scale_to_appropriate(ab: AlphaBeta, caps: Caps | None = None) -> AlphaBeta:
    """Smallest power-of-two scaling of alpha passing both predicates."""
    lam = 1
    while True:
        cand = AlphaBeta(vscale(lam, ab.alpha), ab.beta)
        if is_appropriate(cand, caps) and is_t_appropriate(cand, caps):
            return cand
        lam *= 2


def default_preset(d: int, caps: Caps | None = None) -> AlphaBeta:
    """Reproducible default: alpha = (0, M, 2M, ..., dM) with M = 1000,
    beta = (1, ..., d), defensively rescaled to pass both predicates."""
    M = 1000
    ab = AlphaBeta(tuple(i * M for i in range(d + 1)), tuple(range(1, d + 1)))
    return scale_to_appropriate(ab, caps)


# ---------------------------------------------------------------------------
# comparison data


def e_S_ray(s: OrderedSetPartition):
    """Our ray generator e_S as a sum-zero W_d representative."""
    if len(s) < 2:
        raise PreconditionError("trivial partition has no ray")
    v = e_S(s)
    mean = sum(v, Fraction(0)) / len(v)
    return tuple(x - mean for x in v)


def rz_ray(s: OrderedSetPartition):
    """Reiner-Ziegler ray sum_i (t_i + t_{i-1}) e_{S_i}, sum-zero form."""
    if len(s) < 2:
        raise PreconditionError("trivial partition has no ray")
    dim = s.ground_size
    ts = (0,) + partition_type(s) + (dim,)
    out = [Fraction(0)] * dim
    for i, block in enumerate(s.blocks, start=1):
        for x in block:
            out[x - 1] = Fraction(ts[i] + ts[i - 1])
    mean = sum(out, Fraction(0)) / dim
    return tuple(x - mean for x in out)


def gaiffi_rhs(epsilon, s: OrderedSetPartition) -> Fraction:
    """eps_d - (eps_{|S_1|} + ... + eps_{|S_k|}); depends only on the
    multiset of block sizes, unlike our right-hand sides."""
    epsilon = as_vec(epsilon)
    d = len(epsilon)
    for block in s.blocks:
        if len(block) > d:
            raise PreconditionError("block size %d exceeds d" % len(block))
    return epsilon[d - 1] - sum(
        (epsilon[len(b) - 1] for b in s.blocks), Fraction(0)
    )


def gaiffi_epsilon(ab: AlphaBeta):
    """The epsilon substitution used for the comparison report:
    eps_i = sum_{j<=i} (beta_j - alpha_j) for i < d, eps_d = sum beta."""
    d = ab.d
    out = []
    for i in range(1, d):
        out.append(sum((ab.beta[j] - ab.alpha[j] for j in range(i)), Fraction(0)))
    out.append(sum(ab.beta, Fraction(0)))
    return tuple(out)
