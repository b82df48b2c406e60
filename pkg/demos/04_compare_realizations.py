"""Compare this realization with the two published alternatives at d = 2.

The report lists, per ordered set partition, our ray generator next to
the staircase ray, and our order-sensitive right-hand side next to the
size-only one, then certifies that no single linear map matches the two
ray families.  Run:  python3 demos/04_compare_realizations.py
"""

from polykap import appropriateness_report, compare_report

print(compare_report(2))
print(appropriateness_report(2))
