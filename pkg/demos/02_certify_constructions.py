"""Certify every construction against the brute-force oracle at d = 2.

The suites recompute facets from the vertex cloud, normal cones from
hull edges, and face lattices from incidence closure, then compare with
the explicit formulas.  Run:  python3 demos/02_certify_constructions.py
"""

from polykap import FAMILIES, run_suite

for family in FAMILIES:
    print("==", family)
    for r in run_suite(family, 2, "all"):
        print("  " + r.line())
    print()
