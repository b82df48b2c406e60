"""Brute-force exact polytope oracle.

Certification layer, deliberately independent of the construction
formulas: facets are found by scanning all d-subsets of the vertex
cloud, keeping every hyperplane that supports the whole cloud.  The
scan is O(n^(d+1)) by design; caps keep it at desk scale (d <= 4,
n <= 2000).  An int64 numpy fast path accelerates the side checks with
exact overflow guards; the pure-Python fallback computes the identical
result.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .caps import Caps, caps_from_env, check_cap
from .errors import (
    DimensionMismatchError,
    InternalConsistencyError,
    PreconditionError,
)
from .exact import (
    AffineSubspace,
    Hyperplane,
    affine_rank,
    as_vec,
    matrix_rank,
    primitive_int,
    side_of,
    sum_constraint_space,
    vsub,
)
from .cones import HCone


@dataclass(frozen=True)
class VPolytope:
    """Vertex description: deduplicated points inside an affine ambient."""

    ambient: AffineSubspace
    points: tuple

    def __post_init__(self):
        pts = []
        seen = set()
        for p in self.points:
            p = as_vec(p)
            if len(p) != self.ambient.dim:
                raise DimensionMismatchError("point dimension vs ambient")
            if not self.ambient.contains(p):
                raise PreconditionError("point outside the ambient subspace")
            if p not in seen:
                seen.add(p)
                pts.append(p)
        object.__setattr__(self, "points", tuple(pts))

    @property
    def dim(self) -> int:
        return affine_rank(self.points)


@dataclass(frozen=True)
class HPolytope:
    """Facet description: canonical deduplicated inequalities <n,x> <= b."""

    ambient: AffineSubspace
    facets: tuple

    def __post_init__(self):
        canon = sorted(
            {
                self.ambient.reduce_inequality(f.normal, f.offset)
                for f in self.facets
            },
            key=lambda h: (h.normal, h.offset),
        )
        object.__setattr__(self, "facets", tuple(canon))


def _int_rows(vectors):
    """Clear denominators: scale each coordinate set by the common lcm."""
    denom = 1
    for v in vectors:
        for x in v:
            q = Fraction(x).denominator
            denom = denom * q // math.gcd(denom, q)
    return [tuple(int(Fraction(x) * denom) for x in v) for v in vectors], denom


def _det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )
    # cofactor expansion along the first row
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det(minor)
        total += term if j % 2 == 0 else -term
    return total


def _cross_normal(rows, dim):
    """Integer vector orthogonal to all rows (rows must be (dim-1) x dim)."""
    out = []
    for i in range(dim):
        minor = [r[:i] + r[i + 1:] for r in rows]
        val = _det(minor)
        out.append(val if i % 2 == 0 else -val)
    return tuple(out)


def facet_oracle(vp: VPolytope, caps: Caps | None = None) -> HPolytope:
    """All facets of the convex hull of the point cloud.

    Every affinely independent d-subset spans a candidate hyperplane
    (together with the ambient constraints); a candidate is a facet iff
    all points lie weakly on one side.  Facets are oriented so the
    polytope is on the <= side, canonicalized and deduplicated.
    """
    caps = caps or caps_from_env()
    pts = vp.points
    n = len(pts)
    d = vp.ambient.subspace_dim
    if affine_rank(pts) != d:
        raise DimensionMismatchError(
            "points span dimension %d, ambient has %d" % (affine_rank(pts), d)
        )
    check_cap(d, caps.hull_dim, "hull dimension")
    check_cap(n, caps.hull_points, "hull point count")
    crows = [primitive_int(c.normal) for c in vp.ambient.constraints]
    if matrix_rank(crows) != len(crows):
        raise PreconditionError("ambient constraints must be independent")
    ipts, denom = _int_rows(pts)
    facets = _facets_numpy(ipts, crows, vp.ambient.dim, d)
    if facets is None:
        candidates = set()
        for subset in itertools.combinations(range(n), d):
            base = ipts[subset[0]]
            rows = [
                tuple(a - b for a, b in zip(ipts[i], base)) for i in subset[1:]
            ] + crows
            normal = _cross_normal(rows, vp.ambient.dim)
            if not any(normal):
                continue
            key = primitive_int(normal)
            offset = sum(a * b for a, b in zip(key, base))
            candidates.add((key, offset))
        ptsmax = max((max(abs(v) for v in p) for p in ipts), default=0)
        facets = []
        for normal, offset in candidates:
            sides = _exact_sides(ipts, normal, offset, ptsmax)
            if all(s <= 0 for s in sides):
                facets.append((normal, offset))
            elif all(s >= 0 for s in sides):
                facets.append((tuple(-x for x in normal), -offset))
    # offsets are in the integer-scaled coordinates; normals are
    # scale-free, offsets divide back by the common denominator
    hps = [
        Hyperplane(as_vec(nrm), Fraction(off, denom)) for nrm, off in facets
    ]
    return HPolytope(vp.ambient, tuple(hps))


_INT64_LIMIT = 2 ** 62


def _batch_det(sub):
    """Determinants of a stack of k x k int64 matrices, k <= 3."""
    k = sub.shape[-1]
    if k == 1:
        return sub[:, 0, 0].copy()
    if k == 2:
        return sub[:, 0, 0] * sub[:, 1, 1] - sub[:, 0, 1] * sub[:, 1, 0]
    return (
        sub[:, 0, 0] * (sub[:, 1, 1] * sub[:, 2, 2] - sub[:, 1, 2] * sub[:, 2, 1])
        - sub[:, 0, 1] * (sub[:, 1, 0] * sub[:, 2, 2] - sub[:, 1, 2] * sub[:, 2, 0])
        + sub[:, 0, 2] * (sub[:, 1, 0] * sub[:, 2, 1] - sub[:, 1, 1] * sub[:, 2, 0])
    )


def _facets_numpy(ipts, crows, dim, d):
    """Vectorized facet scan over all d-subsets, or None when the
    dimension or the exact int64 overflow bound rules the path out."""
    k = dim - 1  # minor size
    if k > 3 or not ipts:
        return None
    m = max(max(abs(x) for x in p) for p in ipts)
    c = max((max(abs(x) for x in r) for r in crows), default=1)
    entry = max(2 * m, c)
    detmax = math.factorial(k) * entry**k
    if detmax * dim * m >= _INT64_LIMIT:
        return None
    pts = np.array(ipts, dtype=np.int64)
    idx = np.array(
        list(itertools.combinations(range(len(ipts)), d)), dtype=np.intp
    )
    base = pts[idx[:, 0]]
    rows = pts[idx[:, 1:]] - base[:, None, :]
    if crows:
        crow = np.array(crows, dtype=np.int64)
        rows = np.concatenate(
            [rows, np.broadcast_to(crow, (len(idx),) + crow.shape)], axis=1
        )
    normals = np.empty((len(idx), dim), dtype=np.int64)
    for i in range(dim):
        cols = [j for j in range(dim) if j != i]
        det = _batch_det(np.ascontiguousarray(rows[:, :, cols]))
        normals[:, i] = det if i % 2 == 0 else -det
    keep = normals.any(axis=1)
    normals, base = normals[keep], base[keep]
    g = np.gcd.reduce(np.abs(normals), axis=1)
    normals //= g[:, None]
    first = np.take_along_axis(
        normals, (normals != 0).argmax(axis=1)[:, None], axis=1
    )[:, 0]
    sign = np.where(first < 0, -1, 1)
    normals *= sign[:, None]
    offsets = (normals * base).sum(axis=1)
    stacked = np.unique(
        np.concatenate([normals, offsets[:, None]], axis=1), axis=0
    )
    facets = []
    ptsT = pts.T
    for start in range(0, len(stacked), 20000):
        chunk = stacked[start : start + 20000]
        vals = chunk[:, :-1] @ ptsT - chunk[:, -1:]
        neg = (vals <= 0).all(axis=1)
        pos = (vals >= 0).all(axis=1)
        for i in np.nonzero(neg)[0]:
            facets.append(
                (tuple(int(x) for x in chunk[i, :-1]), int(chunk[i, -1]))
            )
        for i in np.nonzero(pos & ~neg)[0]:
            facets.append(
                (tuple(-int(x) for x in chunk[i, :-1]), -int(chunk[i, -1]))
            )
    return facets


def _exact_sides(ipts, normal, offset, ptsmax):
    """Signs of <normal, p> - offset for all integer points, exactly."""
    bound = max(abs(x) for x in normal) * ptsmax * len(normal) + abs(offset)
    if bound < _INT64_LIMIT:
        arr = np.array(ipts, dtype=np.int64)
        vals = arr @ np.array(normal, dtype=np.int64) - np.int64(offset)
        return np.sign(vals).tolist()
    out = []
    for p in ipts:
        v = sum(a * b for a, b in zip(normal, p)) - offset
        out.append((v > 0) - (v < 0))
    return out


def incidence(hp: HPolytope, vp: VPolytope):
    """Vertex x facet boolean matrix; errors on strict violations."""
    matrix = []
    for p in vp.points:
        row = []
        for f in hp.facets:
            s = side_of(f, p)
            if s > 0:
                raise InternalConsistencyError(
                    "vertex %s strictly violates facet %s" % (p, f)
                )
            row.append(s == 0)
        matrix.append(tuple(row))
    return tuple(matrix)


@dataclass(frozen=True)
class FaceLattice:
    """All faces as vertex-index sets, graded, with covering pairs."""

    faces: tuple  # tuple of frozensets, sorted by (rank, vertex tuple)
    ranks: tuple  # rank per face, parallel to faces
    covers: tuple  # (lower_index, upper_index) pairs

    def rank_counts(self):
        out = {}
        for r in self.ranks:
            out[r] = out.get(r, 0) + 1
        return [out.get(r, 0) for r in range(max(self.ranks) + 1)]

    def to_json(self) -> str:
        return json.dumps(
            {
                "rank": list(self.ranks),
                "vertex_sets": [sorted(f) for f in self.faces],
                "covers": [list(c) for c in self.covers],
            }
        )


def face_lattice(inc, vp: VPolytope) -> FaceLattice:
    """Faces as intersections of facet vertex sets, graded by affine rank."""
    nverts = len(inc)
    nfacets = len(inc[0]) if nverts else 0
    facet_sets = [
        frozenset(v for v in range(nverts) if inc[v][f]) for f in range(nfacets)
    ]
    top = frozenset(range(nverts))
    known = {top}
    queue = [top]
    while queue:
        cur = queue.pop()
        for fs in facet_sets:
            nxt = cur & fs
            if nxt not in known:
                known.add(nxt)
                queue.append(nxt)
    known.add(frozenset())

    def rank_of(face):
        if not face:
            return 0
        return affine_rank([vp.points[i] for i in face]) + 1

    ranked = sorted((rank_of(f), tuple(sorted(f)), f) for f in known)
    faces = tuple(f for _, _, f in ranked)
    ranks = tuple(r for r, _, _ in ranked)
    covers = []
    for i, (ri, fi) in enumerate(zip(ranks, faces)):
        for j, (rj, fj) in enumerate(zip(ranks, faces)):
            if rj == ri + 1 and fi <= fj:
                covers.append((i, j))
    return FaceLattice(faces, ranks, tuple(covers))


def hull_vertices(inc, vp: VPolytope):
    """Indices of points that are hull vertices: a point is a vertex iff
    its incident facets intersect in that point alone."""
    nverts = len(inc)
    out = []
    for v in range(nverts):
        others = [
            u
            for u in range(nverts)
            if u != v
            and all(inc[u][f] for f in range(len(inc[v])) if inc[v][f])
        ]
        if not others:
            out.append(v)
    return out


def polytope_edges(inc, vp: VPolytope):
    """Vertex pairs forming edges, via shared-facet incidence."""
    d = vp.ambient.subspace_dim
    nverts = len(inc)
    nfacets = len(inc[0]) if nverts else 0
    vmask = [
        sum(1 << f for f in range(nfacets) if inc[v][f]) for v in range(nverts)
    ]
    fmask = [
        sum(1 << v for v in range(nverts) if inc[v][f]) for f in range(nfacets)
    ]
    edges = []
    for v, u in itertools.combinations(range(nverts), 2):
        common = vmask[v] & vmask[u]
        if bin(common).count("1") < d - 1:
            continue
        on_all = (1 << nverts) - 1
        for f in range(nfacets):
            if common >> f & 1:
                on_all &= fmask[f]
        if on_all == (1 << v) | (1 << u):
            edges.append((v, u))
    return edges


def normal_cone_at(hp: HPolytope, v: int, inc, vp: VPolytope) -> HCone:
    """Normal cone at vertex v: {w : <w, v> >= <w, u>} over edge
    neighbors u, one irredundant inequality per hull edge at v."""
    ineqs = []
    for a, b in polytope_edges(inc, vp):
        if a == v:
            ineqs.append(vsub(vp.points[a], vp.points[b]))
        elif b == v:
            ineqs.append(vsub(vp.points[b], vp.points[a]))
    return HCone(vp.ambient.dim, (), tuple(ineqs))


def minkowski_sum(summands, weights, caps: Caps | None = None) -> VPolytope:
    """Point cloud of all weighted sums, one point per summand."""
    caps = caps or caps_from_env()
    if len(summands) != len(weights):
        raise PreconditionError("one weight per summand")
    if not summands:
        raise PreconditionError("empty sum")
    dim = summands[0].ambient.dim
    total = 1
    for s in summands:
        if s.ambient.dim != dim:
            raise DimensionMismatchError("summand ambient dimensions differ")
        total *= len(s.points)
    check_cap(total, caps.minkowski_points, "minkowski combination count")
    weights = [Fraction(w) for w in weights]
    cloud = set()
    for combo in itertools.product(*(s.points for s in summands)):
        p = tuple(
            sum((w * x for w, x in zip(weights, col)), Fraction(0))
            for col in zip(*combo)
        )
        cloud.add(p)
    sums = {sum(p, Fraction(0)) for p in cloud}
    if len(sums) == 1:
        ambient = sum_constraint_space(dim, next(iter(sums)))
    else:
        ambient = AffineSubspace(dim, ())
    return VPolytope(ambient, tuple(sorted(cloud)))


def export_off(hp: HPolytope, vp: VPolytope, inc=None) -> str:
    """OFF mesh of a d=3 polytope, projected by dropping the last
    coordinate (the ambient fixes the coordinate sum)."""
    if vp.ambient.subspace_dim != 3:
        raise PreconditionError("OFF export requires a 3-dimensional polytope")
    if inc is None:
        inc = incidence(hp, vp)
    lattice = face_lattice(inc, vp)
    proj = [tuple(float(x) for x in p[:-1]) for p in vp.points]
    faces2 = [
        f for f, r in zip(lattice.faces, lattice.ranks) if r == 3
    ]
    ordered_faces = [_order_cycle(sorted(f), proj) for f in faces2]
    lines = ["OFF", "%d %d 0" % (len(proj), len(ordered_faces))]
    for p in proj:
        lines.append(" ".join(repr(x) for x in p))
    for face in ordered_faces:
        lines.append(" ".join(str(x) for x in [len(face)] + face))
    return "\n".join(lines) + "\n"


def _order_cycle(idxs, proj):
    """Cyclic vertex order of a planar face, for mesh export only."""
    pts = [proj[i] for i in idxs]
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    cz = sum(p[2] for p in pts) / len(pts)
    u = tuple(a - b for a, b in zip(pts[0], (cx, cy, cz)))
    # face normal from two spanning directions
    v0 = tuple(a - b for a, b in zip(pts[1], (cx, cy, cz)))
    nx = u[1] * v0[2] - u[2] * v0[1]
    ny = u[2] * v0[0] - u[0] * v0[2]
    nz = u[0] * v0[1] - u[1] * v0[0]
    # second in-plane axis
    vx = ny * u[2] - nz * u[1]
    vy = nz * u[0] - nx * u[2]
    vz = nx * u[1] - ny * u[0]

    def angle(i):
        p = proj[i]
        dxp = (p[0] - cx, p[1] - cy, p[2] - cz)
        a = sum(a * b for a, b in zip(dxp, u))
        b = sum(a * b for a, b in zip(dxp, (vx, vy, vz)))
        return math.atan2(b, a)

    return sorted(idxs, key=angle)
