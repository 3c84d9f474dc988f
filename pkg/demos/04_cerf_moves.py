"""Cerf moves as chain rewrites: merges, absorptions, cancellations,
switches; bounded search; generator-set bijection certificates.

Run:  python3 demos/04_cerf_moves.py
"""

from floerkit.bordism import (
    attach1,
    attach2,
    b_circle,
    CAP0,
    CAP3,
    canonical_circle,
    cerf_connected,
    cerf_neighbors,
    chain,
    cyl,
)
from floerkit.fieldfun import (
    PartialFunctorSpec,
    closed_invariant,
    move_bijection_certificate,
    sphere_chain,
)
from floerkit.groups import symmetric_group
from floerkit.words import dehn_twist_a, identity_automorphism

print("== neighbors of a two-cylinder chain ==")
t = dehn_twist_a(1)
c = chain([cyl(t), cyl(t.inverse())])
for move, result in cerf_neighbors(c)[:6]:
    print(f"  {move}: -> {result}")

print()
print("== critical point cancellation ==")
cancel_me = chain([attach1(canonical_circle(1)), attach2(b_circle(1))])
for move, result in cerf_neighbors(cancel_me):
    if move.kind == "CritCancel":
        print(f"  {cancel_me}")
        print(f"  --{move}--> {result}")

print()
print("== the two genus-1 Heegaard presentations of S^3 are connected ==")
c1 = chain([CAP0, attach1(canonical_circle(1)), attach2(b_circle(1)), CAP3])
c2 = chain([CAP0, attach1(b_circle(1)), attach2(canonical_circle(1)), CAP3])
path = cerf_connected(c1, c2, depth=4)
print("move path:", [f"{m.kind}@{m.pos}" for m in path])

print()
print("== every move preserves the invariant via an explicit bijection ==")
spec = PartialFunctorSpec(symmetric_group(3))
c = sphere_chain()
gens, count = closed_invariant(spec, c)
print(f"S^3 over S3 has {count} generator")
for move, result in cerf_neighbors(c)[:4]:
    cert = move_bijection_certificate(spec, c, move, result)
    print(f"  {move}: bijection of size {len(cert['mapping'])} "
          f"(contracted on the {cert['side']} side at {cert['contract_at']})")
