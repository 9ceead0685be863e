"""
The nucleus of a conic in even characteristic
=============================================

Over GF(2^e) all tangent lines of a conic pass through one point. Adding
that point to the q + 1 points of the conic gives q + 2 points, no three
of which are collinear.
"""

from veronucleus.gf import make_field
from veronucleus import nrc

f = make_field(2, 3)
conic = nrc.NrcSpec(2, f)

tangents = [nrc.osculating_subspace(conic, u, 1) for u in nrc.parameters(conic)]
print(f"{len(tangents)} tangents over {f.name}")

nucleus = nrc.nucleus_bruteforce(conic, 1)
print("common point of all tangents:", nucleus.basis.tolist())
print("predicted index:", nrc.point_nucleus_predicate(conic))

points = nrc.point_set_with_nucleus(conic)
print(f"{points.shape[0]} points, every 3 independent:", nrc.is_arc(f, points, 3))

# in odd characteristic the tangents have no common point
g = make_field(3, 2)
print(f"over {g.name}:", nrc.nucleus_bruteforce(nrc.NrcSpec(2, g), 1).projective_dim)
