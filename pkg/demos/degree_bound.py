"""Scan the Euler-characteristic constraints that bound the degree H^2.

With chi standing in for h^0, the three inequalities chi(H) >= 6,
chi(2H) >= 19 and chi(3H) <= 55 are tested on all pairs (H^2, H.K).  The
scan shows how the maximum depends on which constraints are imposed.
"""

from cubicfold.hassett import degree_bound_scan

for label, kw in [
    ("all three", dict(min_chi1=6, min_chi2=19, max_chi3=55)),
    ("without chi(H) >= 6", dict(min_chi1=None, min_chi2=19, max_chi3=55)),
    ("without chi(3H) <= 55", dict(min_chi1=6, min_chi2=19, max_chi3=None)),
    ("infeasible", dict(min_chi1=6, min_chi2=19, max_chi3=5)),
]:
    s = degree_bound_scan(**kw)
    print(f"{label:24s} max H^2 = {s.max_H2}, witness (H^2, H.K) = {s.witness}, "
          f"unbounded = {s.unbounded}, claimed 15 agrees: {s.agrees}")
