"""Representation varieties and the correspondences of simple cobordisms.

Run:  python3 demos/02_representation_varieties.py
"""

from floerkit.bordism import b_circle, canonical_circle
from floerkit.bordobjects import EMPTY, surface
from floerkit.groups import cyclic_group, symmetric_group
from floerkit.relcat import geometric_compose, is_embedded
from floerkit.repvar import (
    VarietyCache,
    relation_of_attach2,
    relation_of_attach2_direct,
    relation_of_cyl,
    repvariety,
)
from floerkit.words import dehn_twist_a, s_move

s3 = symmetric_group(3)
cache = VarietyCache(s3)

print("== varieties: conjugacy classes of surface-group representations ==")
for obj in (EMPTY, surface(0), surface(1), surface(2)):
    v = repvariety(s3, obj)
    print(f"M({obj}) over S3: {len(v)} points")
print("torus points:", repvariety(s3, surface(1)).points)

print()
print("== cylinders map to graphs of bijections ==")
t = dehn_twist_a(1)
graph = relation_of_cyl(s3, t, cache)
print("twist graph is a bijection of the 8 torus classes:",
      graph.is_graph_of_bijection())
s = s_move(1)
round_trip = geometric_compose(
    relation_of_cyl(s3, s, cache), relation_of_cyl(s3, s.inverse(), cache)
)
print("graph(S) o graph(S^-1) is the diagonal:",
      round_trip == relation_of_cyl(s3, s.then(s.inverse()), cache))

print()
print("== handle attachments cut out correspondences ==")
La = relation_of_attach2(s3, canonical_circle(1), cache)
print("killing a1 on the torus:", La, "=>", La.sorted_pairs())
Lb = relation_of_attach2(s3, b_circle(1), cache)
print("killing b1 instead:", Lb.sorted_pairs())

print()
print("== the two enumeration routes agree ==")
direct = relation_of_attach2_direct(s3, b_circle(1), cache)
print("transport parametrization == defining property:", Lb == direct)

print()
print("== embeddedness: unique intermediates ==")
flag, witness = is_embedded(La.transpose(), Lb)
print("1-handle along a1 then 2-handle along b1 is embedded:", flag)
comp = geometric_compose(La.transpose(), Lb)
print("and composes to the sphere diagonal:", comp.sorted_pairs())

flag, witness = is_embedded(La.transpose(), La)
print("1-handle then 2-handle along the SAME circle embedded:", flag)
print("witness (two intermediates for one composite pair):", witness)
