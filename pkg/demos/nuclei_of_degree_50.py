"""
Nuclei of a normal rational curve of degree 50
==============================================

Over GF(128) the curve of degree 50 has 129 points. For each k we
intersect the 129 k-osculating subspaces and compare the result with
the dimension predicted by the binary digits of 51.
"""

import time

from veronucleus import base_p, nrc
from veronucleus.gf import make_field
from veronucleus.cli import nuclei_table

s = nrc.NrcSpec(50, make_field(2, 7))
print("b = n + 1 =", base_p.to_digits(51, 2).display())

start = time.perf_counter()
report = nrc.nucleus_report(s)
print(nuclei_table(report))
print(f"brute force for all k took {time.perf_counter() - start:.1f} s")

# the nuclei are spanned by base points; here are the ones for k = 31
print("k = 31 base points:", list(nrc.nucleus_basis_formula(s, 31).members))
