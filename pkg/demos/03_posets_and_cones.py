"""The three abstract posets and how cones reverse their order.

Run:  python3 demos/03_posets_and_cones.py
"""

from polykap import (
    OrderedSetPartition,
    PartitionLabeledTree,
    PlaneTree,
    build_K,
    build_KPi,
    build_O,
    is_face,
    sigma_st,
)

for label, poset in (
    ("ordered set partitions of [3]", build_O(3)),
    ("strictly branching trees, 4 leaves", build_K(2)),
    ("partition-labeled trees on [3]", build_KPi(2)),
):
    print("%-38s %3d elements, rank counts %s" % (label, len(poset.elements), poset.rank_counts()))
print()

# going up in the labeled-tree poset shrinks the cone: the upper
# element's cone is a face of the lower element's cone
lower = PartitionLabeledTree(
    OrderedSetPartition(((1,), (2,), (3,))), PlaneTree.parse("((..).)")
)
upper = PartitionLabeledTree(
    OrderedSetPartition(((1, 2), (3,))), PlaneTree.parse("(..)")
)
print("lower element:", lower.key())
print("upper element:", upper.key())
print(
    "sigma(upper) is a face of sigma(lower):",
    is_face(sigma_st(upper), sigma_st(lower)),
)
print(
    "sigma(lower) is a face of sigma(upper):",
    is_face(sigma_st(lower), sigma_st(upper)),
)
