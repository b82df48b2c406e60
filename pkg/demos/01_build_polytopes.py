"""Build the four polytope families at d = 2 and print what they are.

Run:  python3 demos/01_build_polytopes.py
"""

from polykap import (
    PlaneTree,
    default_preset,
    loday_vertex,
    make_family,
)

ab = default_preset(2)
print("parameters: alpha=%s beta=%s" % (ab.alpha, ab.beta))
print()

for name in ("perm", "lodasso", "nestedperm", "permasso"):
    fam = make_family(name, 2)
    print(
        "%-12s %3d vertices, %3d facets"
        % (name, len(fam.vp.points), len(fam.hp.facets))
    )
    for p in fam.vp.points[:3]:
        print("   vertex", tuple(str(x) for x in p))
print()

# a hand-checkable associahedron vertex: each coordinate is computed
# from the sizes of the subtree hanging at that internal vertex
alpha = (2, 5, 6, 14, 17, 21, 22, 24)
tree = PlaneTree.parse("((((..).)((..).))(.(..)))")
print("associahedron vertex for the 8-leaf tree above:")
print("  ", tuple(int(x) for x in loday_vertex(alpha, tree)))
