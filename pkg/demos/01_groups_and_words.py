"""Finite groups, surface-group words, and mapping classes.

Run:  python3 demos/01_groups_and_words.py
"""

from floerkit.groups import cyclic_group, quaternion_group, symmetric_group
from floerkit.words import (
    Word,
    builtin_library,
    crossing_transport,
    dehn_twist_a,
    free_conjugate_test,
    handle_swap,
    s_move,
    surface_relator,
    surface_words_equal,
    word_eval,
)

print("== groups from multiplication tables ==")
for g in (cyclic_group(4), symmetric_group(3), quaternion_group()):
    print(f"{g.name}: order {g.order}, "
          f"{len(g.conjugacy_classes)} conjugacy classes, "
          f"abelian={g.is_abelian()}")

print()
print("== surface words ==")
r2 = surface_relator(2)
print("genus-2 relator:", r2, "length", len(r2))
w = Word((1, 2, -2, -1, 3), genus=2)
print("freely reduced (1,2,-2,-1,3) ->", w.letters)

s3 = symmetric_group(3)
assignment = (1, 3, 2, 4)  # images of a1, b1, a2, b2 in S3
val = word_eval(Word(r2, 2), assignment, s3)
print("relator evaluated at a random-ish assignment:", val,
      "(0 means the assignment is a surface-group representation)")

print()
print("== conjugacy of words in the free group ==")
u = (2, -1, -2, 1)          # [b, a^-1]
v = (1, 2, -1, -2)          # [a, b]
print(f"{u} ~ {v}:", free_conjugate_test(u, v))

print()
print("== the word problem in the surface group (Dehn's algorithm) ==")
print("relator == 1 in genus 2:", surface_words_equal(r2, (), 2))
print("[a1,b1] == 1 in genus 2:", surface_words_equal((1, 2, -1, -2), (), 2))
print("[a1,b1] == [a2,b2]^-1 in genus 2:",
      surface_words_equal((1, 2, -1, -2), (-4, -3, 4, 3), 2))

print()
print("== mapping classes ==")
s = s_move(1)
print("S-move sends a ->", s.apply((1,)), ", b ->", s.apply((2,)))
s4 = s.then(s).then(s).then(s)
print("S^4 is the identity mapping class:", s4.is_identity())

t = dehn_twist_a(1)
print("twist along a: b ->", t.apply((2,)))

swap = handle_swap(2, 1, 2)
print("genus-2 handle swap fixes the relator:",
      swap.apply(surface_relator(2)) == surface_relator(2))

rot = crossing_transport(2)
print("crossing transport sends a1 to a conjugate of b1:",
      free_conjugate_test(rot.apply((1,)), (2,)))

print()
print("registered library sizes:",
      {g: len(builtin_library(g)) for g in (1, 2, 3)})
