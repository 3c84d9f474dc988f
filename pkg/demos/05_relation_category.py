"""The set-level symplectic category: chains of relations, composition
moves, cyclic chains and their generator sets.

Run:  python3 demos/05_relation_category.py
"""

from floerkit.bordism import b_circle, canonical_circle
from floerkit.bordobjects import surface
from floerkit.groups import symmetric_group
from floerkit.relcat import (
    CyclicChain,
    FactorizationRegistry,
    chain_equivalent,
    composition_bijection,
    generator_set,
    relation_chain,
    rotation_bijection,
)
from floerkit.repvar import VarietyCache, diagonal_relation, relation_of_attach2, relation_of_cyl
from floerkit.words import s_move

s3 = symmetric_group(3)
cache = VarietyCache(s3)
La = relation_of_attach2(s3, canonical_circle(1), cache)
Lb = relation_of_attach2(s3, b_circle(1), cache)
D = diagonal_relation(cache.variety(surface(1)))

print("== rewriting chains of relations ==")
registry = FactorizationRegistry()
c1 = relation_chain([D, La])
c2 = relation_chain([registry.compose_and_record(D, La)])
print("(diagonal, L_a) ~ (L_a):", chain_equivalent(c1, c2, depth=2, registry=registry))
print("expanding back via the registry:",
      chain_equivalent(c2, c1, depth=2, registry=registry))

print()
print("== cyclic chains and generator sets ==")
cyc = CyclicChain((La, La.transpose()))
gens = generator_set(cyc)
print(f"cyclic (L_a, L_a^T): {len(gens)} generators")
for tup in gens.tuples:
    print("  ", tup)

rotated, mapping = rotation_bijection(gens, 1)
print("rotation relabels generators:", len(mapping), "tuples")

print()
print("== embedded contraction is a bijection with explicit inverse ==")
g = relation_of_cyl(s3, s_move(1), cache)
cyc3 = CyclicChain((D, g, g.transpose()))
contracted, fwd, inv = composition_bijection(cyc3, 1)
print(f"contracting the graph pair: {len(fwd)} generators stay in bijection")
sample = next(iter(fwd))
print(f"  {sample} -> {fwd[sample]} -> back: {inv[fwd[sample]]}")
