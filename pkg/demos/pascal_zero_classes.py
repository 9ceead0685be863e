"""
Zero entries of Pascal's triangle mod p
=======================================

Every vanishing entry C(n, j) mod p sits in a maximal triangle of zeros.
The triangle's size class can be read off the base-p digits of n and j,
and the number of zeros of each class in a row has a closed form.
"""

from collections import Counter

from veronucleus import base_p

p = 3
print(base_p.render_triangle(27, p))

# classify the zeros of one row and compare with the counting formula
n = 50
counts = Counter(base_p.zero_class(n, j, p).class_index
                 for j in range(n + 1) if base_p.binom_mod_p(n, j, p) == 0)
print(f"\nrow {n} = {base_p.to_digits(n, p).display()} in base {p}")
for i in sorted(counts):
    print(f"  class {i}: {counts[i]} zeros, formula {base_p.phi(i, n, p)}")
print(f"  all classes: {sum(counts.values())}, formula {base_p.sigma(1, n, p)}")

# the zeros of one class reach up to the top line of the triangle
b = n + 1
for i in sorted(counts):
    print(f"  class {i} triangle starts in row {base_p.top_line(i, b, p)}")
