"""Hull oracle, incidence, face lattice, edges, normal cones, exports."""

from fractions import Fraction

import pytest

from polykap.caps import Caps
from polykap.cones import braid_cone, cone_contains, cone_equal
from polykap.combinat import Permutation, enumerate_permutations
from polykap.errors import (
    DimensionMismatchError,
    InternalConsistencyError,
    PreconditionError,
    ResourceLimitError,
)
from polykap.exact import (
    AffineSubspace,
    Hyperplane,
    dot,
    sum_constraint_space,
)
from polykap.geometry import (
    FaceLattice,
    HPolytope,
    VPolytope,
    export_off,
    face_lattice,
    facet_oracle,
    hull_vertices,
    incidence,
    minkowski_sum,
    normal_cone_at,
    polytope_edges,
)


def hexagon():
    """All permutations of (1, 2, 3): a hexagon in the sum-6 plane."""
    amb = sum_constraint_space(3, 6)
    pts = [
        (1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1)
    ]
    return VPolytope(amb, tuple(pts))


def square():
    amb = AffineSubspace(2, ())
    return VPolytope(amb, ((0, 0), (1, 0), (0, 1), (1, 1)))


def test_vpolytope_dedup_and_validation():
    amb = sum_constraint_space(3, 6)
    vp = VPolytope(amb, ((1, 2, 3), (1, 2, 3), (3, 2, 1)))
    assert len(vp.points) == 2
    with pytest.raises(PreconditionError):
        VPolytope(amb, ((1, 2, 4),))
    with pytest.raises(DimensionMismatchError):
        VPolytope(amb, ((1, 2),))


def test_hexagon_facets():
    vp = hexagon()
    hp = facet_oracle(vp)
    assert len(hp.facets) == 6
    inc = incidence(hp, vp)
    # every vertex lies on exactly 2 facets, every facet has 2 vertices
    assert all(sum(row) == 2 for row in inc)
    assert all(sum(col) == 2 for col in zip(*inc))
    lattice = face_lattice(inc, vp)
    assert lattice.rank_counts() == [1, 6, 6, 1]


def test_square_parallel_facets():
    # opposite parallel facets share a normal direction; both must be kept
    vp = square()
    hp = facet_oracle(vp)
    assert len(hp.facets) == 4
    normals = {f.normal for f in hp.facets}
    assert (1, 0) in normals and (-1, 0) in normals


def test_hull_vertices_drops_interior_point():
    amb = AffineSubspace(2, ())
    vp = VPolytope(
        amb,
        (
            (0, 0),
            (2, 0),
            (0, 2),
            (2, 2),
            (1, 1),       # interior
            (1, 0),       # on an edge, not a vertex
        ),
    )
    hp = facet_oracle(vp)
    inc = incidence(hp, vp)
    verts = hull_vertices(inc, vp)
    assert [vp.points[i] for i in verts] == [
        (0, 0), (2, 0), (0, 2), (2, 2)
    ]


def test_incidence_rejects_violating_point():
    vp = square()
    hp = facet_oracle(vp)
    bad = VPolytope(vp.ambient, vp.points + ((5, 5),))
    with pytest.raises(InternalConsistencyError):
        incidence(hp, bad)


def test_polytope_edges_hexagon():
    vp = hexagon()
    hp = facet_oracle(vp)
    inc = incidence(hp, vp)
    edges = polytope_edges(inc, vp)
    assert len(edges) == 6
    # each vertex has degree 2
    deg = {}
    for a, b in edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    assert all(v == 2 for v in deg.values())


def test_normal_cone_matches_braid_cone():
    # vertex of the hexagon maximizing in the cone of a permutation:
    # the normal cone at point (pi^-1 applied to (1,2,3)) is sigma(pi)
    vp = hexagon()
    hp = facet_oracle(vp)
    inc = incidence(hp, vp)
    for pi in enumerate_permutations(3):
        point = tuple(Fraction(pi(i)) for i in (1, 2, 3))
        v = vp.points.index(point)
        cone = normal_cone_at(hp, v, inc, vp)
        assert cone_equal(cone, braid_cone(pi))


def test_normal_cone_supports_vertex():
    # any w strictly inside the normal cone is maximized only at that vertex
    vp = hexagon()
    hp = facet_oracle(vp)
    inc = incidence(hp, vp)
    v = vp.points.index((3, 2, 1))
    cone = normal_cone_at(hp, v, inc, vp)
    w = (2, 0, -2)
    assert cone_contains(cone, w, strict=True)
    vals = [dot(w, p) for p in vp.points]
    assert vals[v] == max(vals)
    assert vals.count(max(vals)) == 1


def test_face_lattice_square():
    vp = square()
    hp = facet_oracle(vp)
    inc = incidence(hp, vp)
    lattice = face_lattice(inc, vp)
    assert lattice.rank_counts() == [1, 4, 4, 1]
    # covers go strictly up one rank
    for a, b in lattice.covers:
        assert lattice.ranks[b] == lattice.ranks[a] + 1
        assert lattice.faces[a] <= lattice.faces[b]
    assert FaceLattice(lattice.faces, lattice.ranks, lattice.covers)
    assert "vertex_sets" in lattice.to_json()


def test_minkowski_parallelogram():
    amb = AffineSubspace(2, ())
    seg1 = VPolytope(amb, ((0, 0), (1, 0)))
    seg2 = VPolytope(amb, ((0, 0), (0, 1)))
    cloud = minkowski_sum([seg1, seg2], [1, 2])
    assert set(cloud.points) == {(0, 0), (1, 0), (0, 2), (1, 2)}
    with pytest.raises(PreconditionError):
        minkowski_sum([], [])
    with pytest.raises(PreconditionError):
        minkowski_sum([seg1], [1, 2])


def test_minkowski_cap():
    amb = AffineSubspace(2, ())
    seg = VPolytope(amb, ((0, 0), (1, 0)))
    caps = Caps(minkowski_points=3)
    with pytest.raises(ResourceLimitError):
        minkowski_sum([seg, seg], [1, 1], caps)


def test_facet_oracle_caps_and_rank():
    vp = square()
    with pytest.raises(ResourceLimitError):
        facet_oracle(vp, Caps(hull_points=2))
    flat = VPolytope(AffineSubspace(2, ()), ((0, 0), (1, 1)))
    with pytest.raises(DimensionMismatchError):
        facet_oracle(flat)


def test_export_off_cube():
    amb = AffineSubspace(3, ())
    cube = VPolytope(
        amb,
        tuple((x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)),
    )
    hp = facet_oracle(cube)
    # ambient is full 3-space here, so build the OFF by slicing into a
    # sum-constrained copy instead: lift to 4 coordinates with sum 0
    lifted = VPolytope(
        sum_constraint_space(4, 0),
        tuple(p + (-sum(p),) for p in cube.points),
    )
    lhp = facet_oracle(lifted)
    text = export_off(lhp, lifted)
    lines = text.strip().split("\n")
    assert lines[0] == "OFF"
    nv, nf, _ = map(int, lines[1].split())
    assert nv == 8 and nf == 6
    # faces are quadrilaterals
    for face_line in lines[2 + nv:]:
        assert face_line.split()[0] == "4"


def test_export_off_requires_dim3():
    vp = square()
    hp = facet_oracle(vp)
    with pytest.raises(PreconditionError):
        export_off(hp, vp)


def test_rational_coordinates_exact():
    amb = AffineSubspace(2, ())
    vp = VPolytope(
        amb,
        (
            (Fraction(1, 3), 0),
            (0, Fraction(1, 7)),
            (Fraction(-1, 3), 0),
            (0, Fraction(-1, 7)),
        ),
    )
    hp = facet_oracle(vp)
    assert len(hp.facets) == 4
    for f in hp.facets:
        for p in vp.points:
            assert dot(f.normal, p) <= f.offset
