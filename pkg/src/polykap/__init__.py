"""Exact-arithmetic constructions of permutohedra, Loday associahedra,
nested permutohedra and nested permuto-associahedra, their normal fans
built from preorder cones, the poset of partition-labeled trees, and
brute-force certification of every claim at small dimension."""

from .caps import Caps, caps_from_env
from .combinat import (
    OrderedSetPartition,
    PartitionLabeledTree,
    Permutation,
    PlaneTree,
    bst_insert,
    enumerate_ordered_partitions,
    enumerate_permutations,
    enumerate_trees,
    linear_extensions,
)
from .cones import (
    HCone,
    Preorder,
    braid_cone,
    cone_contains,
    cone_equal,
    cone_rays,
    interior_point,
    is_contraction,
    is_face,
    nested_braid_cone,
    preorder_cone,
    sigma_pi_tree,
    sigma_st,
    sigma_tree,
)
from .constructions import (
    AlphaBeta,
    default_preset,
    is_appropriate,
    is_t_appropriate,
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
    permasso_vertex,
    permasso_vertices,
    scale_to_appropriate,
    val,
)
from .certify import (
    FAMILIES,
    SUITES,
    appropriateness_report,
    compare_report,
    make_family,
    run_suite,
)
from .errors import (
    DimensionMismatchError,
    InternalConsistencyError,
    PolykapError,
    PreconditionError,
    ResourceLimitError,
)
from .exact import AffineSubspace, Hyperplane, Rat, as_vec
from .geometry import (
    FaceLattice,
    HPolytope,
    VPolytope,
    face_lattice,
    facet_oracle,
    incidence,
    minkowski_sum,
    normal_cone_at,
)
from .posets import FinitePoset, build_K, build_KPi, build_O, poset_isomorphic

__version__ = "0.1.0"
