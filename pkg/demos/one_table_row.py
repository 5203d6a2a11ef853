"""Verify a single table row end to end and print the report.

Usage: python3 demos/one_table_row.py [d] [p] [seed]
Defaults to the row d=12, p=7, whose printed divisor carries an erratum.
"""

import sys

from cubicfold.pipeline import Options, report_to_markdown, verify_row

d, p, seed = (int(x) for x in (sys.argv[1:] + ["12", "7", "0"][len(sys.argv) - 1 :])[:3])
rep = verify_row(d, p, seed=seed, options=Options(smoothness="jacobian"))
print(report_to_markdown([rep]))
print(f"seed {rep.seed}, attempts {rep.attempts}, generator degrees {rep.generator_degrees}")
print(f"S^2 = {rep.S2}, discriminant = {rep.discriminant}, smooth cubic: {rep.smooth}")
if rep.erratum:
    print("erratum:", rep.erratum)
print("timings:", rep.timings)
