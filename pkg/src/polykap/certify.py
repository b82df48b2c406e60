"""Verification suites certifying every construction against the
brute-force geometry oracle.

Each suite returns a list of CheckResult records; a suite passes when
every record does.  The suites never trust the construction formulas:
facet lists are recomputed from vertex clouds, normal cones from hull
edges, and face lattices from incidence closure.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .caps import Caps, caps_from_env
from .combinat import (
    OrderedSetPartition,
    PartitionLabeledTree,
    Permutation,
    enumerate_ordered_partitions,
    enumerate_permutations,
    enumerate_trees,
    linear_extensions,
    partition_of_permutation,
)
from .cones import (
    braid_cone,
    cone_contains,
    cone_equal,
    dpi,
    interior_point,
    interior_point_preorder,
    nested_braid_cone,
    sigma_pi_tree,
    sigma_tree,
    tree_preorder,
)
from .constructions import (
    AlphaBeta,
    default_preset,
    e_S_ray,
    gaiffi_epsilon,
    gaiffi_rhs,
    loday_inequalities,
    loday_vertex,
    loday_vertices,
    nested_perm_inequalities,
    nested_perm_vertex,
    nested_perm_vertices,
    perm_inequalities,
    perm_vertex,
    perm_vertices,
    permasso_inequalities,
    permasso_rhs,
    permasso_vertex,
    permasso_vertices,
    rz_ray,
)
from .errors import PreconditionError
from .exact import as_vec, dot, full_space, solve_linear, unit
from .geometry import (
    VPolytope,
    face_lattice,
    facet_oracle,
    hull_vertices,
    incidence,
    minkowski_sum,
    normal_cone_at,
)
from .posets import FinitePoset, build_K, build_KPi, build_O, poset_isomorphic

FAMILIES = ("perm", "lodasso", "nestedperm", "permasso")
SUITES = ("vertices", "facets", "normalfan", "lattice", "dissection", "minkowski", "all")


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed: float

    def line(self) -> str:
        return "%s %-40s %s (%.2fs)" % (
            "PASS" if self.passed else "FAIL",
            self.name,
            self.detail,
            self.elapsed,
        )


def _check(results, name, t0, passed, detail=""):
    results.append(CheckResult(name, bool(passed), detail, time.time() - t0))
    return passed


# ---------------------------------------------------------------------------
# family plumbing


class Family:
    """One polytope family at fixed parameters: vertex labels, vertex
    points, claimed cones and the expected abstract face poset."""

    def __init__(self, name, d, ab: AlphaBeta, caps: Caps | None = None):
        if name not in FAMILIES[:4]:
            raise PreconditionError("unknown family %r" % name)
        self.name = name
        self.d = d
        self.ab = ab
        self.caps = caps or caps_from_env()
        alpha = ab.alpha
        if name == "perm":
            self.labels = list(enumerate_permutations(d + 1, self.caps))
            self.vertex = lambda pi: perm_vertex(alpha, pi)
            self.cone = braid_cone
            self.vp = perm_vertices(alpha, self.caps)
            self.hp = perm_inequalities(alpha)
        elif name == "lodasso":
            self.labels = list(enumerate_trees(d + 1, d + 1, self.caps))
            self.vertex = lambda t: loday_vertex(alpha, t)
            self.cone = sigma_tree
            self.vp = loday_vertices(alpha, self.caps)
            self.hp = loday_inequalities(alpha)
        elif name == "nestedperm":
            self.labels = [
                (pi, tau)
                for pi in enumerate_permutations(d + 1, self.caps)
                for tau in enumerate_permutations(d, self.caps)
            ]
            self.vertex = lambda lab: nested_perm_vertex(ab, *lab)
            self.cone = lambda lab: nested_braid_cone(*lab)
            self.vp = nested_perm_vertices(ab, self.caps)
            self.hp = nested_perm_inequalities(ab, self.caps)
        else:
            self.labels = [
                (pi, t)
                for pi in enumerate_permutations(d + 1, self.caps)
                for t in enumerate_trees(d, d, self.caps)
            ]
            self.vertex = lambda lab: permasso_vertex(ab, *lab)
            self.cone = lambda lab: sigma_pi_tree(*lab)
            self.vp = permasso_vertices(ab, self.caps)
            self.hp = permasso_inequalities(ab, self.caps)

    def interior_point_of(self, lab):
        """Relative-interior point of the claimed cone at a labeled vertex."""
        if self.name == "perm":
            return interior_point_preorder(chain_preorder(lab))
        if self.name == "lodasso":
            return interior_point_preorder(tree_preorder(lab))
        if self.name == "nestedperm":
            pi, tau = lab
            d = self.d
            # pull the tau-chain point back through D^pi: successive
            # differences D^pi_{tau^-1(i)} w = i > 0, sum-zero.
            w = [Fraction(0)] * (d + 1)
            acc = Fraction(0)
            for i in range(1, d + 1):
                acc += tau(i)
                w[pi.inverse()(i + 1) - 1] = acc
            mean = sum(w, Fraction(0)) / (d + 1)
            return tuple(x - mean for x in w)
        pi, t = lab
        return interior_point(PartitionLabeledTree(partition_of_permutation(pi), t))


def chain_preorder(pi: Permutation):
    from .cones import Preorder

    n = len(pi)
    pairs = [(pi.inverse()(i), pi.inverse()(j)) for i in range(1, n + 1) for j in range(i, n + 1)]
    return Preorder.from_pairs(range(1, n + 1), pairs)


def make_family(name, d, alpha=None, beta=None, caps=None) -> Family:
    """Build a Family from explicit parameters or the default preset."""
    if alpha is None and beta is None:
        ab = default_preset(d, caps)
    else:
        if alpha is None or (beta is None and name in ("nestedperm", "permasso")):
            raise PreconditionError("alpha and beta must be given together")
        if beta is None:
            beta = tuple(range(1, len(as_vec(alpha))))
        ab = AlphaBeta(as_vec(alpha), as_vec(beta))
    if ab.d != d:
        raise PreconditionError(
            "parameter lengths disagree with d=%d (alpha needs %d entries)" % (d, d + 1)
        )
    return Family(name, d, ab, caps)


def expected_vertex_count(name, d):
    from math import comb, factorial

    catalan = comb(2 * d, d) // (d + 1)
    cat1 = comb(2 * (d + 1), d + 1) // (d + 2)
    return {
        "perm": factorial(d + 1),
        "lodasso": cat1,
        "nestedperm": factorial(d + 1) * factorial(d),
        "permasso": factorial(d + 1) * catalan,
    }[name]


def expected_facet_count(name, d):
    nontrivial_osp = len(enumerate_ordered_partitions(d + 1, 2))
    return {
        "perm": 2 ** (d + 1) - 2,
        "lodasso": (d + 1) * (d + 2) // 2 - 1,
        "nestedperm": nontrivial_osp,
        "permasso": nontrivial_osp,
    }[name]


# ---------------------------------------------------------------------------
# suites


def suite_vertices(fam: Family):
    results = []
    t0 = time.time()
    pts = [fam.vertex(lab) for lab in fam.labels]
    total = sum(fam.ab.alpha, Fraction(0))
    _check(
        results,
        "%s d=%d vertex formulas distinct" % (fam.name, fam.d),
        t0,
        len(set(pts)) == len(pts) == expected_vertex_count(fam.name, fam.d),
        "%d points" % len(set(pts)),
    )
    t0 = time.time()
    _check(
        results,
        "%s d=%d coordinate sums" % (fam.name, fam.d),
        t0,
        all(sum(p, Fraction(0)) == total for p in pts),
        "all equal %s" % total,
    )
    t0 = time.time()
    inc = incidence(fam.hp, fam.vp)
    hull = hull_vertices(inc, fam.vp)
    _check(
        results,
        "%s d=%d every point is a hull vertex" % (fam.name, fam.d),
        t0,
        sorted(hull) == list(range(len(fam.vp.points))),
        "%d hull vertices" % len(hull),
    )
    return results


def suite_facets(fam: Family):
    results = []
    t0 = time.time()
    oracle = facet_oracle(fam.vp, fam.caps)
    claimed = set(fam.hp.facets)
    found = set(oracle.facets)
    _check(
        results,
        "%s d=%d facet oracle = claimed list" % (fam.name, fam.d),
        t0,
        found == claimed,
        "%d oracle vs %d claimed (expected %d)"
        % (len(found), len(claimed), expected_facet_count(fam.name, fam.d)),
    )
    return results


def suite_normalfan(fam: Family):
    results = []
    inc = incidence(fam.hp, fam.vp)
    index = {p: i for i, p in enumerate(fam.vp.points)}
    t0 = time.time()
    ok = all(
        cone_equal(
            normal_cone_at(fam.hp, index[fam.vertex(lab)], inc, fam.vp),
            fam.cone(lab),
        )
        for lab in fam.labels
    )
    _check(
        results,
        "%s d=%d normal cones = claimed cones" % (fam.name, fam.d),
        t0,
        ok,
        "%d vertices" % len(fam.labels),
    )
    t0 = time.time()
    maximized = 0
    for lab in fam.labels:
        w = fam.interior_point_of(lab)
        v = fam.vertex(lab)
        best = dot(w, v)
        if all(dot(w, u) < best for u in fam.vp.points if u != v):
            maximized += 1
    _check(
        results,
        "%s d=%d interior points maximize" % (fam.name, fam.d),
        t0,
        maximized == len(fam.labels),
        "%d/%d strict maximizers" % (maximized, len(fam.labels)),
    )
    return results


def lattice_to_poset(fl) -> FinitePoset:
    """Face lattice as a FinitePoset keyed by sorted vertex-index sets."""
    keys = [" ".join(str(i) for i in sorted(f)) or "empty" for f in fl.faces]
    rank = {k: r for k, r in zip(keys, fl.ranks)}
    covers = tuple((keys[a], keys[b]) for a, b in fl.covers)
    return FinitePoset(tuple(keys), covers, rank)


def kpi_canonical_hint(fam: Family, kpi: FinitePoset):
    """The canonical face-to-element map: a face goes to the labeled
    tree whose order ideal of rank-1 elements matches the face's vertex
    set."""
    index = {p: i for i, p in enumerate(fam.vp.points)}
    vert_of_rank1 = {}
    for pi, t in fam.labels:
        key = PartitionLabeledTree(partition_of_permutation(pi), t).key()
        vert_of_rank1[key] = index[fam.vertex((pi, t))]
    down = kpi.down()
    order = sorted((e for e in kpi.elements), key=lambda e: kpi.rank[e])
    downset = {}
    for e in order:
        if kpi.rank[e] == 0:
            downset[e] = frozenset()
        elif kpi.rank[e] == 1:
            downset[e] = frozenset([vert_of_rank1[e]])
        else:
            acc = set()
            for lo in down[e]:
                acc |= downset[lo]
            downset[e] = frozenset(acc)
    hint = {}
    for e in order:
        face = " ".join(str(i) for i in sorted(downset[e])) or "empty"
        hint[face] = e
    return hint


def suite_lattice(fam: Family):
    results = []
    t0 = time.time()
    inc = incidence(fam.hp, fam.vp)
    fl = lattice_to_poset(face_lattice(inc, fam.vp))
    if fam.name == "perm":
        expected = build_O(fam.d + 1, fam.caps)
    elif fam.name == "lodasso":
        expected = build_K(fam.d, fam.caps)
    elif fam.name == "permasso":
        expected = build_KPi(fam.d, fam.caps)
    else:
        _check(
            results,
            "nestedperm d=%d lattice graded, simple" % fam.d,
            t0,
            fl.is_graded() and all(sum(row) == fam.d for row in inc),
            "rank counts %s" % (fl.rank_counts(),),
        )
        return results
    hint = kpi_canonical_hint(fam, expected) if fam.name == "permasso" else None
    iso = poset_isomorphic(fl, expected, hint=hint)
    _check(
        results,
        "%s d=%d face lattice isomorphism" % (fam.name, fam.d),
        t0,
        iso is not None,
        "rank counts %s%s"
        % (fl.rank_counts(), ", via canonical order-ideal map" if hint else ""),
    )
    if fam.name == "lodasso":
        t0 = time.time()
        _check(
            results,
            "lodasso d=%d simplicity" % fam.d,
            t0,
            all(sum(row) == fam.d for row in inc),
            "every vertex on exactly %d facets" % fam.d,
        )
    return results


# ---------------------------------------------------------------------------
# dissection


def sample_sum_zero(rng: random.Random, dim: int):
    """Random integer vector in [-10^6, 10^6]^dim scaled to sum zero:
    multiply by dim and subtract the coordinate sum from each entry."""
    raw = [rng.randint(-10**6, 10**6) for _ in range(dim)]
    s = sum(raw)
    return tuple(Fraction(dim * x - s) for x in raw)


def _dissection_run(cones, rng, dim, samples, redraw_cap=10):
    """Check each generic sample is in >= 1 closed cone and exactly 1
    open cone; boundary samples are redrawn.

    When every cone is equality-free with the same inequality count and
    all products stay below 2^62, the signs are computed in one exact
    int64 matrix product; otherwise the per-cone rational path is used.
    """
    import numpy as np

    stacked = None
    if all(not c.equalities and c.inequalities for c in cones):
        rows = [r for c in cones for r in c.inequalities]
        if all(x.denominator == 1 for r in rows for x in r):
            mat = np.array([[int(x) for x in r] for r in rows], dtype=np.int64)
            if np.abs(mat).max() * dim * (dim * 10**6) < 2**62:
                offsets = np.cumsum([0] + [len(c.inequalities) for c in cones[:-1]])
                stacked = (mat, offsets)

    def classify(w):
        if stacked is not None:
            mat, offsets = stacked
            vals = mat @ np.array([int(x) for x in w], dtype=np.int64)
            mins = np.minimum.reduceat(vals, offsets)
            closed = int((mins >= 0).sum())
            boundary = bool((mins == 0).any())
            return closed, boundary
        member = [c for c in cones if cone_contains(c, w)]
        boundary = any(not cone_contains(c, w, strict=True) for c in member)
        return len(member), boundary

    done = 0
    while done < samples:
        for _ in range(redraw_cap):
            w = sample_sum_zero(rng, dim)
            closed, boundary = classify(w)
            if not boundary:
                break
        else:
            return False, "redraw cap hit on sample %d" % done
        if closed != 1:
            return False, "sample in %d cone interiors" % closed
        done += 1
    return True, "%d samples" % samples


def suite_dissection(d: int, seed: int, caps: Caps | None = None, samples: int = 200):
    results = []
    caps = caps or caps_from_env()
    fans = {
        "braid {sigma(pi)}": [braid_cone(pi) for pi in enumerate_permutations(d + 1, caps)],
        "nested {sigma(pi,tau)}": [
            nested_braid_cone(pi, tau)
            for pi in enumerate_permutations(d + 1, caps)
            for tau in enumerate_permutations(d, caps)
        ],
        "tree {sigma(T)}": [sigma_tree(t) for t in enumerate_trees(d + 1, d + 1, caps)],
        "labeled {sigma(pi,T)}": [
            sigma_pi_tree(pi, t)
            for pi in enumerate_permutations(d + 1, caps)
            for t in enumerate_trees(d, d, caps)
        ],
    }
    for name, cones in fans.items():
        t0 = time.time()
        rng = random.Random(seed)
        ok, detail = _dissection_run(cones, rng, d + 1, samples)
        _check(results, "%s d=%d dissection" % (name, d), t0, ok, detail)
    return results


def suite_coarsening(d: int, caps: Caps | None = None):
    """sigma(pi,T) is exactly the union of sigma(pi,tau) over linear
    extensions tau of the tree order: containment of every extension
    cone, and rejection of every other tau's interior point."""
    results = []
    caps = caps or caps_from_env()
    t0 = time.time()
    ok = True
    for pi in enumerate_permutations(d + 1, caps):
        for t in enumerate_trees(d, d, caps):
            big = sigma_pi_tree(pi, t)
            ext = set(linear_extensions(t, caps))
            for tau in enumerate_permutations(d, caps):
                small = nested_braid_cone(pi, tau)
                w = interior_nested(pi, tau)
                if tau in ext:
                    if not (cone_contains(big, w, strict=True) and _subcone(small, big)):
                        ok = False
                elif cone_contains(big, w):
                    ok = False
    _check(
        results,
        "sigma(pi,T) = union of extension cones, d=%d" % d,
        t0,
        ok,
        "all pi, T, tau",
    )
    return results


def interior_nested(pi: Permutation, tau: Permutation):
    d = len(tau)
    w = [Fraction(0)] * (d + 1)
    acc = Fraction(0)
    for i in range(1, d + 1):
        acc += tau(i)
        w[pi.inverse()(i + 1) - 1] = acc
    mean = sum(w, Fraction(0)) / (d + 1)
    return tuple(x - mean for x in w)


def _subcone(small, big) -> bool:
    """small subset of big via ray and lineality containment."""
    from .cones import cone_rays

    lin, rays = cone_rays(small)
    for v in rays:
        if not cone_contains(big, v):
            return False
    for v in lin:
        if not (cone_contains(big, v) and cone_contains(big, tuple(-x for x in v))):
            return False
    return True


# ---------------------------------------------------------------------------
# minkowski


def simplex_cloud(indices, dim) -> VPolytope:
    return VPolytope(full_space(dim), tuple(unit(i, dim) for i in indices))


def minkowski_cloud(alpha, caps: Caps | None = None) -> VPolytope:
    """Weighted sum delta_{d+1} Simplex([d+1]) + sum_I delta_{|I|} Simplex(I)
    over proper intervals I, with delta_k = alpha_k - alpha_{k-1}."""
    from .constructions import intervals

    alpha = as_vec(alpha)
    n = len(alpha)
    alpha0 = (Fraction(0),) + alpha
    delta = [alpha0[k] - alpha0[k - 1] for k in range(1, n + 1)]
    summands = [simplex_cloud(range(1, n + 1), n)]
    weights = [delta[n - 1]]
    for iv in intervals(n):
        summands.append(simplex_cloud(iv, n))
        weights.append(delta[len(iv) - 1])
    return minkowski_sum(summands, weights, caps)


def suite_minkowski(d: int, alpha=None, caps: Caps | None = None):
    results = []
    caps = caps or caps_from_env()
    if alpha is None:
        alpha = default_preset(d, caps).alpha
    alpha = as_vec(alpha)
    t0 = time.time()
    cloud = minkowski_cloud(alpha, caps)
    oracle = facet_oracle(cloud, caps)
    claimed = loday_inequalities(alpha)
    _check(
        results,
        "minkowski sum = interval description, d=%d" % d,
        t0,
        set(oracle.facets) == set(claimed.facets),
        "%d cloud points, %d facets" % (len(cloud.points), len(oracle.facets)),
    )
    return results


# ---------------------------------------------------------------------------
# comparison report


def ray_linear_map_infeasible(d: int, caps: Caps | None = None) -> bool:
    """No single linear map sends every block-weighted ray generator to
    the corresponding staircase ray generator: the stacked linear system
    for the matrix entries is inconsistent."""
    n = d + 1
    rows = []
    rhs = []
    for s in enumerate_ordered_partitions(n, 2, caps):
        e = e_S_ray(s)
        r = rz_ray(s)
        for i in range(n):
            # row of L times e equals r_i: unknowns L[i][0..n-1]
            coeff = [Fraction(0)] * (n * n)
            for j in range(n):
                coeff[i * n + j] = e[j]
            rows.append(tuple(coeff))
            rhs.append(r[i])
    return solve_linear(rows, rhs) is None


def compare_report(d: int, ab: AlphaBeta | None = None, caps: Caps | None = None) -> str:
    """Per-partition table of the two ray generators and the two
    right-hand sides, plus the linear-equivalence infeasibility line and
    a block-order witness."""
    caps = caps or caps_from_env()
    if ab is None:
        ab = default_preset(d, caps)
    eps = gaiffi_epsilon(ab)
    lines = [
        "comparison report, d=%d" % d,
        "alpha=%s beta=%s" % (fmt_vec(ab.alpha), fmt_vec(ab.beta)),
        "epsilon substitution: %s" % fmt_vec(eps),
        "",
        "%-14s %-16s %-16s %12s %12s" % ("partition", "our ray", "staircase ray", "our rhs", "gaiffi rhs"),
    ]
    parts = enumerate_ordered_partitions(d + 1, 2, caps)
    our_rays = set()
    rz_rays = set()
    for s in parts:
        e = e_S_ray(s)
        r = rz_ray(s)
        our_rays.add(e)
        rz_rays.add(r)
        lines.append(
            "%-14s %-16s %-16s %12s %12s"
            % (s.serialize(), fmt_vec(e), fmt_vec(r), permasso_rhs(ab, s), gaiffi_rhs(eps, s))
        )
    lines.append("")
    lines.append("ray generator sets equal: %s" % (our_rays == rz_rays))
    lines.append(
        "single linear map between ray families: %s"
        % ("infeasible" if ray_linear_map_infeasible(d, caps) else "FOUND (unexpected)")
    )
    witness = block_order_witness(ab, caps)
    if witness:
        s1, s2 = witness
        lines.append(
            "block-order witness: %s vs %s -> our rhs %s vs %s, gaiffi rhs %s = %s"
            % (
                s1.serialize(),
                s2.serialize(),
                permasso_rhs(ab, s1),
                permasso_rhs(ab, s2),
                gaiffi_rhs(eps, s1),
                gaiffi_rhs(eps, s2),
            )
        )
    return "\n".join(lines) + "\n"


def block_order_witness(ab: AlphaBeta, caps: Caps | None = None):
    """A pair of partitions with the same blocks in different order where
    our right-hand sides differ (the size-only one cannot)."""
    eps = gaiffi_epsilon(ab)
    parts = enumerate_ordered_partitions(ab.d + 1, 2, caps)
    by_blockset = {}
    for s in parts:
        by_blockset.setdefault(frozenset(s.blocks), []).append(s)
    for group in by_blockset.values():
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                s1, s2 = group[i], group[j]
                if permasso_rhs(ab, s1) != permasso_rhs(ab, s2) and gaiffi_rhs(
                    eps, s1
                ) == gaiffi_rhs(eps, s2):
                    return s1, s2
    return None


def fmt_vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


# ---------------------------------------------------------------------------
# suite runner


def run_suite(family, d, suite, alpha=None, beta=None, seed=0, caps=None):
    """Run one named suite (or all) for a family; returns CheckResults."""
    caps = caps or caps_from_env()
    if suite not in SUITES:
        raise PreconditionError("unknown suite %r" % suite)
    results = []
    needs_family = suite in ("vertices", "facets", "normalfan", "lattice", "all")
    fam = make_family(family, d, alpha, beta, caps) if needs_family else None
    if suite in ("vertices", "all"):
        results += suite_vertices(fam)
    if suite in ("facets", "all"):
        results += suite_facets(fam)
    if suite in ("normalfan", "all"):
        results += suite_normalfan(fam)
    if suite in ("lattice", "all"):
        results += suite_lattice(fam)
    if suite in ("dissection", "all"):
        results += suite_dissection(d, seed, caps)
        if d <= 3:
            results += suite_coarsening(d, caps)
    if suite in ("minkowski", "all"):
        results += suite_minkowski(d, alpha, caps)
    return results


def appropriateness_report(d: int, caps: Caps | None = None) -> str:
    """Empirical comparison of the two coefficient predicates on a grid
    of small parameter pairs; disagreements are listed, never assumed
    away."""
    from .constructions import is_appropriate, is_t_appropriate

    caps = caps or caps_from_env()
    import itertools

    lines = ["appropriateness predicates, d=%d" % d]
    disagreements = 0
    total = 0
    rng = random.Random(0)
    seen = set()
    for _ in range(200):
        alpha = tuple(sorted(rng.sample(range(-20, 21), d + 1)))
        beta = tuple(sorted(rng.sample(range(-20, 21), d)))
        if (alpha, beta) in seen:
            continue
        seen.add((alpha, beta))
        ab = AlphaBeta(alpha, beta)
        a, t = is_appropriate(ab, caps), is_t_appropriate(ab, caps)
        total += 1
        if a != t:
            disagreements += 1
            if disagreements <= 10:
                lines.append(
                    "  alpha=%s beta=%s appropriate=%s tree-appropriate=%s"
                    % (alpha, beta, a, t)
                )
    lines.append(
        "%d sampled pairs, %d disagreements; tree-appropriate without appropriate: %d"
        % (
            total,
            disagreements,
            sum(
                1
                for alpha, beta in seen
                if is_t_appropriate(AlphaBeta(alpha, beta), caps)
                and not is_appropriate(AlphaBeta(alpha, beta), caps)
            ),
        )
    )
    return "\n".join(lines) + "\n"
