"""
Osculating hyperplanes of the cubic Veronese surface
====================================================

Intersect all osculating hyperplanes of V(2, 3) and compare with the
base points whose trinomial coefficient vanishes mod 2. Over GF(4) the
two agree; over GF(2) there are too few hyperplanes and the
intersection is larger.
"""

import warnings

from veronucleus import veronese
from veronucleus.gf import make_field
from veronucleus.nrc import OutOfHypothesisWarning

for e in (2, 1):
    s = veronese.VeroneseSpec(2, 3, make_field(2, e))
    brute = veronese.hyperplane_nucleus_bruteforce(s)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OutOfHypothesisWarning)
        formula = veronese.hyperplane_nucleus_dim(s)
    print(f"{s.field.name}: brute force {brute.projective_dim}, formula {formula}, "
          f"q >= t: {s.in_hypothesis}")

print("vanishing tuples:", veronese.hyperplane_nucleus_basis(s))

# dimensions of the osculating subspaces of the quadric Veronese variety V(3, 2)
for r in range(3):
    print(f"r = {r}:", [veronese.osculating_dim_formula(r, k, 3, 2) for k in range(-1, 2)])
