"""Quilt diagrams: rotation systems, validation, evaluation, gluing,
strip shrinking, and the zigzag identity.

Run:  python3 demos/06_quilt_diagrams.py
"""

from floerkit.bordism import canonical_circle
from floerkit.groups import symmetric_group
from floerkit.quilt import (
    cap_diagram,
    cylinder_diagram,
    diagrams_isomorphic,
    evaluates_to_identity,
    export_dot,
    quilt_evaluate,
    quilt_glue,
    shrink_strip,
    snake_frame_diagram,
)
from floerkit.relcat import generator_set
from floerkit.repvar import VarietyCache, relation_of_attach2, relation_of_cyl
from floerkit.words import dehn_twist_a

s3 = symmetric_group(3)
cache = VarietyCache(s3)
Y = relation_of_attach2(s3, canonical_circle(1), cache)
G = relation_of_cyl(s3, dehn_twist_a(1), cache)

print("== the cylinder over (Y, Y^T) ==")
q = cylinder_diagram([Y, Y.transpose()])
report = q.validate()
print("validation:", all(e["status"] == "pass" for e in report),
      "| patches:", [e for e in report if e["check"] == "patch count"][0]["detail"])
print("cylinder axiom (identity on generators):", evaluates_to_identity(q, "in"))

print()
print("== cap: the set-level fundamental class ==")
cap = cap_diagram(Y)
cap_gens = generator_set(cap.end_cyclic_chain("out"))
print("cap(Y) with no inputs evaluates to all pairs of Y:",
      quilt_evaluate(cap, {}) == set(cap_gens.tuples),
      f"({len(cap_gens)} pairs)")

print()
print("== zigzag: cap glued into the snake frame ==")
frame = snake_frame_diagram(Y)
zig = quilt_glue(cap, frame, "aux")
print("the glued diagram is isomorphic to the identity cylinder:",
      diagrams_isomorphic(zig, cylinder_diagram([Y, Y.transpose()])))
print("and evaluates to the identity:", evaluates_to_identity(zig, ("R", "in")))

print()
print("== strip shrinking ==")
q3 = cylinder_diagram([G, Y, Y.transpose()])
patches = q3.surface.data()["patches"]
print("3-seam cylinder has patches:", patches)
shrunk = shrink_strip(q3, patches[1])
print("after shrinking one strip:", len(shrunk.surface.seams), "seams,",
      len(shrunk.surface.data()['patches']), "patches")

print()
print("== DOT export (first lines) ==")
print("\n".join(export_dot(q).splitlines()[:6]))
