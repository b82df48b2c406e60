"""Acceptance gate: the ten headline criteria, one pass/fail line each.

Each test prints "PASS criterion N: ..." (or FAIL) with its elapsed time
and asserts both the mathematical claim and the stated time budget.
Run with `pytest -s tests/test_acceptance.py` to see the lines.
"""

import time

from polykap.certify import (
    FAMILIES,
    block_order_witness,
    compare_report,
    make_family,
    run_suite,
    suite_coarsening,
    suite_dissection,
    suite_facets,
    suite_lattice,
    suite_minkowski,
    suite_normalfan,
    suite_vertices,
)
from polykap.combinat import PlaneTree, enumerate_ordered_partitions, enumerate_trees
from polykap.constructions import (
    default_preset,
    e_S_ray,
    is_t_appropriate,
    loday_vertex,
    rz_ray,
)
from polykap.geometry import incidence
from polykap.posets import BOTTOM, build_KPi


def report(num, desc, t0, limit, ok=True):
    elapsed = time.time() - t0
    line = "%s criterion %2d: %s (%.2fs, limit %ds)" % (
        "PASS" if ok and elapsed < limit else "FAIL",
        num,
        desc,
        elapsed,
        limit,
    )
    print(line)
    assert ok, line
    assert elapsed < limit, line


def all_pass(results):
    for r in results:
        if not r.passed:
            return False
    return bool(results)


def test_criterion_1_worked_vertex():
    t0 = time.time()
    alpha = (2, 5, 6, 14, 17, 21, 22, 24)
    tree = PlaneTree.parse("((((..).)((..).))(.(..)))")
    ok = loday_vertex(alpha, tree) == (2, 5, 30, 2, 5, 60, 5, 2)
    report(1, "worked associahedron vertex = (2,5,30,2,5,60,5,2)", t0, 1, ok)


def test_criterion_2_permutohedron():
    t0 = time.time()
    ok = True
    for d in (1, 2, 3):
        fam = make_family("perm", d)
        ok = ok and all_pass(suite_facets(fam)) and all_pass(suite_lattice(fam))
        if d == 3:
            ok = ok and len(fam.vp.points) == 24 and len(fam.hp.facets) == 14
    report(2, "permutohedron facets + face lattice, d <= 3", t0, 10, ok)


def test_criterion_3_associahedron():
    t0 = time.time()
    ok = True
    for d in (1, 2, 3):
        fam = make_family("lodasso", d)
        ok = ok and all_pass(suite_facets(fam)) and all_pass(suite_lattice(fam))
        # minimality: every claimed inequality is tight at some vertex
        inc = incidence(fam.hp, fam.vp)
        ok = ok and all(any(col) for col in zip(*inc))
        if d == 3:
            ok = ok and len(fam.vp.points) == 14 and len(fam.hp.facets) == 9
    report(3, "associahedron facets minimal + lattice + simplicity, d <= 3", t0, 10, ok)


def test_criterion_4_minkowski():
    t0 = time.time()
    ok = all(all_pass(suite_minkowski(d)) for d in (1, 2, 3))
    report(4, "Minkowski sum of interval simplices = associahedron, d <= 3", t0, 30, ok)


def test_criterion_5_nested_permutohedron():
    t0 = time.time()
    ok = True
    for d in (1, 2, 3):
        fam = make_family("nestedperm", d)
        ok = ok and all_pass(suite_vertices(fam)) and all_pass(suite_facets(fam))
    report(5, "nested permutohedron hull = claimed facets, d <= 3", t0, 30, ok)


def test_criterion_6_permuto_associahedron():
    t0 = time.time()
    ok = True
    for d in (2, 3):
        ab = default_preset(d)
        ok = ok and is_t_appropriate(ab)
        fam = make_family("permasso", d)
        expected_v = {2: 12, 3: 120}[d]
        expected_f = {2: 12, 3: 74}[d]
        ok = ok and len(fam.vp.points) == expected_v
        ok = ok and len(fam.hp.facets) == expected_f
        ok = ok and all_pass(suite_facets(fam)) and all_pass(suite_lattice(fam))
        if d == 3:
            inc = incidence(fam.hp, fam.vp)
            ok = ok and any(sum(row) > 3 for row in inc)  # not simple
    report(6, "permuto-associahedron counts, facets, lattice, d = 2, 3", t0, 300, ok)


def test_criterion_7_normal_fans():
    t0 = time.time()
    ok = all(
        all_pass(suite_normalfan(make_family(name, d)))
        for name in FAMILIES
        for d in (1, 2, 3)
    )
    report(7, "normal cones = claimed cones, all families, d <= 3", t0, 120, ok)


def test_criterion_8_dissections():
    t0 = time.time()
    ok = all(all_pass(suite_dissection(d, seed=1)) for d in (1, 2, 3, 4))
    ok = ok and all(all_pass(suite_coarsening(d)) for d in (1, 2, 3))
    report(8, "conic dissections (200 samples, d <= 4) + coarsening", t0, 60, ok)


def test_criterion_9_labeled_tree_poset():
    t0 = time.time()
    kp = build_KPi(3)
    ok = kp.is_graded() and kp.top_rank() == 4
    ok = ok and kp.rank_counts() == (1, 120, 192, 74, 1)
    # rank formula d - i(T) + 1, exhaustively over all elements
    from polykap.combinat import OrderedSetPartition, PartitionLabeledTree

    for key in kp.elements:
        if key == BOTTOM:
            continue
        part_text, tree_text = key.split(" ; ")
        t = PlaneTree.parse(tree_text)
        ok = ok and kp.rank[key] == 3 - t.internal_count + 1
    report(9, "labeled-tree poset graded, rank counts (1,120,192,74,1)", t0, 60, ok)


def test_criterion_10_comparison():
    t0 = time.time()
    ab = default_preset(2)
    parts = enumerate_ordered_partitions(3, 2)
    ok = {e_S_ray(s) for s in parts} != {rz_ray(s) for s in parts}
    ok = ok and block_order_witness(ab) is not None
    text = compare_report(2)
    ok = ok and "infeasible" in text and "block-order witness" in text
    report(10, "ray sets differ; block-order witness found, d = 2", t0, 1, ok)
