"""Exact rational linear algebra: vectors, hyperplanes, ranks, sides.

Scalars are `fractions.Fraction` (always lowest terms, positive
denominator).  Vectors are plain tuples of Fractions so they hash and
compare by value.  Everything here is a pure function over immutable
values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DimensionMismatchError, PreconditionError

Rat = Fraction
RatVec = tuple  # tuple of Fraction


def as_vec(entries) -> tuple:
    return tuple(Fraction(x) for x in entries)


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vscale(c, a):
    c = Fraction(c)
    return tuple(c * x for x in a)


def dot(a, b) -> Fraction:
    if len(a) != len(b):
        raise DimensionMismatchError("dot: %d vs %d" % (len(a), len(b)))
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def is_zero_vec(a) -> bool:
    return all(x == 0 for x in a)


def unit(i: int, dim: int) -> tuple:
    """Standard basis vector e_{i} with 1-based index i."""
    if not 1 <= i <= dim:
        raise PreconditionError("unit index %d out of range [1,%d]" % (i, dim))
    return tuple(Fraction(1 if j == i - 1 else 0) for j in range(dim))


def indicator(s, dim: int) -> tuple:
    """e_S = sum of e_i over i in s (1-based indices)."""
    s = set(s)
    return tuple(Fraction(1 if j + 1 in s else 0) for j in range(dim))


def primitive_int(vec, orient: bool = False):
    """Scale a rational vector to a primitive integer vector.

    With orient=False the sign is fixed so the first nonzero entry is
    positive (identity up to any scaling); with orient=True only positive
    scalings are applied (identity up to positive scaling).
    """
    denom = 1
    for x in vec:
        denom = denom * Fraction(x).denominator // gcd(denom, Fraction(x).denominator)
    ints = [int(Fraction(x) * denom) for x in vec]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g == 0:
        return tuple(0 for _ in ints)
    ints = [v // g for v in ints]
    if not orient:
        for v in ints:
            if v != 0:
                if v < 0:
                    ints = [-w for w in ints]
                break
    return tuple(ints)


def rref(rows):
    """Reduced row echelon form over Fractions.

    Returns (rref_rows_without_zero_rows, pivot_columns).
    """
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def matrix_rank(rows) -> int:
    return len(rref(rows)[0])


def row_space_key(rows, dim: int):
    """Canonical hashable key for the row space of a set of vectors."""
    if not rows:
        return ()
    reduced, _ = rref(rows)
    return tuple(reduced)


def null_space(rows, dim: int):
    """Basis of {x : <r, x> = 0 for all rows r}, canonical from RREF."""
    reduced, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * dim
        v[fc] = Fraction(1)
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[fc]
        basis.append(tuple(v))
    return basis


def solve_linear(rows, rhs):
    """One exact solution of rows @ x = rhs, or None if inconsistent."""
    if not rows:
        return ()
    ncols = len(rows[0])
    aug = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs, strict=True)]
    reduced, pivots = rref(aug)
    x = [Fraction(0)] * ncols
    for row, pc in zip(reduced, pivots):
        if pc == ncols:
            return None  # pivot in the augmented column: inconsistent
        x[pc] = row[ncols]
    return tuple(x)


def affine_rank(points) -> int:
    """Dimension of the affine hull of the given points."""
    pts = [as_vec(p) for p in points]
    if not pts:
        raise PreconditionError("affine_rank of empty point set")
    dim = len(pts[0])
    for p in pts:
        if len(p) != dim:
            raise DimensionMismatchError("affine_rank: mixed dimensions")
    diffs = [vsub(p, pts[0]) for p in pts[1:]]
    return matrix_rank(diffs)


@dataclass(frozen=True)
class Hyperplane:
    """Oriented hyperplane data <normal, x> (= or <=) offset."""

    normal: tuple
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "normal", as_vec(self.normal))
        object.__setattr__(self, "offset", Fraction(self.offset))
        if is_zero_vec(self.normal):
            raise PreconditionError("hyperplane with zero normal")

    def canonical(self) -> "Hyperplane":
        """Equality-canonical form: first nonzero normal entry is +1."""
        lead = next(x for x in self.normal if x != 0)
        return Hyperplane(vscale(1 / lead, self.normal), self.offset / lead)

    def same_flat(self, other: "Hyperplane") -> bool:
        return self.canonical() == other.canonical()


def side_of(h: Hyperplane, p) -> int:
    """Sign of <normal, p> - offset in {-1, 0, +1}."""
    p = as_vec(p)
    if len(p) != len(h.normal):
        raise DimensionMismatchError("side_of: %d vs %d" % (len(p), len(h.normal)))
    v = dot(h.normal, p) - h.offset
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class AffineSubspace:
    """Ambient affine subspace {x in R^dim : <c, x> = b for constraints}."""

    dim: int
    constraints: tuple  # tuple of Hyperplane

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for c in self.constraints:
            if len(c.normal) != self.dim:
                raise DimensionMismatchError("ambient constraint dimension")

    @property
    def subspace_dim(self) -> int:
        return self.dim - matrix_rank([c.normal for c in self.constraints])

    def contains(self, p) -> bool:
        return all(side_of(c, p) == 0 for c in self.constraints)

    def project_normal(self, n):
        """Orthogonal projection of a functional onto the direction space.

        The direction space is the common kernel of the constraint
        normals; the projection is the unique representative of n modulo
        the span of the constraint normals that lies in that kernel.
        """
        rows = [c.normal for c in self.constraints]
        if not rows:
            return as_vec(n)
        gram = [[dot(r, s) for s in rows] for r in rows]
        rhs = [dot(r, n) for r in rows]
        lam = solve_linear(gram, rhs)
        if lam is None:  # Gram system is always consistent
            raise AssertionError("inconsistent Gram system")
        out = as_vec(n)
        for coef, r in zip(lam, rows):
            out = vsub(out, vscale(coef, r))
        return out

    def reduce_inequality(self, normal, offset) -> Hyperplane:
        """Canonical oriented form of <normal, x> <= offset on this ambient.

        Projects the normal into the direction space (adjusting the
        offset by the constraint values) and scales by a positive factor
        to a primitive integer normal.
        """
        rows = [c.normal for c in self.constraints]
        proj = self.project_normal(normal)
        if is_zero_vec(proj):
            raise PreconditionError("inequality normal vanishes on the ambient")
        # offset correction: <n, x> = <proj, x> + sum lam_j * b_j on the ambient
        if rows:
            gram = [[dot(r, s) for s in rows] for r in rows]
            rhs = [dot(r, normal) for r in rows]
            lam = solve_linear(gram, rhs)
            off = Fraction(offset) - sum(
                (coef * c.offset for coef, c in zip(lam, self.constraints)), Fraction(0)
            )
        else:
            off = Fraction(offset)
        prim = primitive_int(proj, orient=True)
        # positive scale factor from proj to prim
        lead_idx = next(i for i, x in enumerate(proj) if x != 0)
        scale = Fraction(prim[lead_idx]) / proj[lead_idx]
        return Hyperplane(as_vec(prim), off * scale)


def full_space(dim: int) -> AffineSubspace:
    return AffineSubspace(dim, ())


def sum_constraint_space(dim: int, total) -> AffineSubspace:
    """The affine subspace {x : x_1 + ... + x_dim = total}."""
    return AffineSubspace(dim, (Hyperplane((Fraction(1),) * dim, Fraction(total)),))


def hyperplane_through(points, ambient: AffineSubspace):
    """Canonical hyperplane through the points inside the ambient.

    Returns None unless the points affinely span a codimension-1 flat of
    the ambient.  The normal is the canonical representative inside the
    ambient's direction space with first nonzero entry +1, so the result
    does not depend on the order of the points.
    """
    pts = [as_vec(p) for p in points]
    if not pts:
        return None
    for p in pts:
        if len(p) != ambient.dim:
            raise DimensionMismatchError("hyperplane_through: point dimension")
        if not ambient.contains(p):
            raise PreconditionError("point outside the ambient subspace")
    rows = [vsub(p, pts[0]) for p in pts[1:]]
    rows += [c.normal for c in ambient.constraints]
    basis = null_space(rows, ambient.dim)
    if len(basis) != 1:
        return None
    normal = basis[0]
    return Hyperplane(normal, dot(normal, pts[0])).canonical()
