"""Finite, table-driven categories, functors, natural transformations,
bicategories, the Yoneda construction, and quotients by 2-isomorphisms.

Everything is exhaustively validated: a FinCategory checks identity and
associativity over all composable pairs and triples at construction, a
FinFunctor checks preservation on every morphism, a NatTransformation
checks every naturality square.  Composition is written diagrammatically
throughout: ``compose(f, g)`` means "f then g".
"""

from __future__ import annotations

import itertools

from .errors import (
    CategoryMismatch,
    IllFormedQuotient,
    InvalidObject,
    MiddleMismatch,
)


class FinCategory:
    """A finite category given by explicit tables.

    objects: sequence of hashable ids
    morphisms: mapping id -> (src, dst)
    comp: mapping (f, g) -> h defined exactly when dst(f) == src(g)
    identity: mapping obj -> morphism id
    """

    def __init__(self, objects, morphisms, comp, identity, name="C"):
        self.name = name
        self.objects = tuple(objects)
        self.morphisms = dict(morphisms)
        self.comp = dict(comp)
        self.identity = dict(identity)
        self.validate()

    def src(self, f):
        return self.morphisms[f][0]

    def dst(self, f):
        return self.morphisms[f][1]

    def compose(self, f, g):
        """f then g."""
        if self.dst(f) != self.src(g):
            raise CategoryMismatch(
                f"morphisms {f!r}, {g!r} are not composable", witness=(f, g)
            )
        return self.comp[(f, g)]

    def hom(self, x, y):
        return tuple(
            f for f, (s, d) in sorted(self.morphisms.items(), key=lambda kv: repr(kv))
            if s == x and d == y
        )

    def validate(self):
        objset = set(self.objects)
        if len(self.objects) != len(objset):
            raise CategoryMismatch("duplicate object ids")
        for f, (s, d) in self.morphisms.items():
            if s not in objset or d not in objset:
                raise CategoryMismatch(
                    f"morphism {f!r} has endpoints outside the object set",
                    witness=f,
                )
        for x in self.objects:
            i = self.identity.get(x)
            if i not in self.morphisms or self.morphisms[i] != (x, x):
                raise CategoryMismatch(
                    f"identity of {x!r} missing or not an endomorphism", witness=x
                )
        composable = {
            (f, g)
            for f in self.morphisms
            for g in self.morphisms
            if self.dst(f) == self.src(g)
        }
        if set(self.comp) != composable:
            extra = set(self.comp) - composable
            missing = composable - set(self.comp)
            raise CategoryMismatch(
                "composition table domain mismatch",
                witness={
                    "extra": sorted(extra, key=repr)[:3],
                    "missing": sorted(missing, key=repr)[:3],
                },
            )
        for (f, g), h in self.comp.items():
            if h not in self.morphisms:
                raise CategoryMismatch(f"composite {h!r} not a morphism", witness=(f, g))
            if self.morphisms[h] != (self.src(f), self.dst(g)):
                raise CategoryMismatch(
                    f"composite of {f!r}, {g!r} has wrong endpoints", witness=(f, g, h)
                )
        for f, (s, d) in self.morphisms.items():
            if self.comp[(self.identity[s], f)] != f:
                raise CategoryMismatch(
                    f"left identity law fails at {f!r}", witness=("left", f)
                )
            if self.comp[(f, self.identity[d])] != f:
                raise CategoryMismatch(
                    f"right identity law fails at {f!r}", witness=("right", f)
                )
        for f in self.morphisms:
            for g in self.morphisms:
                if self.dst(f) != self.src(g):
                    continue
                fg = self.comp[(f, g)]
                for h in self.morphisms:
                    if self.dst(g) != self.src(h):
                        continue
                    if self.comp[(fg, h)] != self.comp[(f, self.comp[(g, h)])]:
                        raise CategoryMismatch(
                            "associativity fails", witness=(f, g, h)
                        )

    def __repr__(self):
        return (
            f"FinCategory({self.name}: {len(self.objects)} objects, "
            f"{len(self.morphisms)} morphisms)"
        )

    def to_json(self):
        return {
            "name": self.name,
            "objects": list(self.objects),
            "morphisms": {str(f): [s, d] for f, (s, d) in self.morphisms.items()},
            "identity": {str(x): self.identity[x] for x in self.objects},
            "composition": [[f, g, h] for (f, g), h in self.comp.items()],
        }


def discrete_category(objects, name="discrete"):
    morphisms = {("id", x): (x, x) for x in objects}
    comp = {((("id", x)), ("id", x)): ("id", x) for x in objects}
    identity = {x: ("id", x) for x in objects}
    return FinCategory(objects, morphisms, comp, identity, name=name)


class FinFunctor:
    """A functor between finite categories, validated exhaustively."""

    def __init__(self, source, target, obj_map, mor_map, name="F"):
        self.source = source
        self.target = target
        self.obj_map = dict(obj_map)
        self.mor_map = dict(mor_map)
        self.name = name
        self.validate()

    def on_obj(self, x):
        return self.obj_map[x]

    def on_mor(self, f):
        return self.mor_map[f]

    def validate(self):
        C, D = self.source, self.target
        for x in C.objects:
            if self.obj_map.get(x) not in set(D.objects):
                raise CategoryMismatch(
                    f"functor drops object {x!r}", witness=x
                )
        for f, (s, d) in C.morphisms.items():
            g = self.mor_map.get(f)
            if g not in D.morphisms:
                raise CategoryMismatch(f"functor drops morphism {f!r}", witness=f)
            if D.morphisms[g] != (self.obj_map[s], self.obj_map[d]):
                raise CategoryMismatch(
                    f"functor breaks endpoints of {f!r}", witness=f
                )
        for x in C.objects:
            if self.mor_map[C.identity[x]] != D.identity[self.obj_map[x]]:
                raise CategoryMismatch(
                    f"functor breaks identity of {x!r}", witness=x
                )
        for (f, g), h in C.comp.items():
            if D.comp[(self.mor_map[f], self.mor_map[g])] != self.mor_map[h]:
                raise CategoryMismatch(
                    "functor breaks composition", witness=(f, g)
                )

    def then(self, other: "FinFunctor") -> "FinFunctor":
        if other.source is not self.target and other.source != self.target:
            raise CategoryMismatch("functors do not compose")
        return FinFunctor(
            self.source,
            other.target,
            {x: other.obj_map[y] for x, y in self.obj_map.items()},
            {f: other.mor_map[g] for f, g in self.mor_map.items()},
            name=f"{self.name};{other.name}",
        )

    def table(self):
        return (
            tuple(sorted(self.obj_map.items(), key=repr)),
            tuple(sorted(self.mor_map.items(), key=repr)),
        )

    def __eq__(self, other):
        return (
            isinstance(other, FinFunctor)
            and self.source == other.source
            and self.target == other.target
            and self.obj_map == other.obj_map
            and self.mor_map == other.mor_map
        )

    def __hash__(self):
        return hash(self.table())

    def __repr__(self):
        return f"FinFunctor({self.name}: {self.source.name} -> {self.target.name})"


def identity_functor(C):
    return FinFunctor(
        C, C, {x: x for x in C.objects}, {f: f for f in C.morphisms}, name=f"1_{C.name}"
    )


class NatTransformation:
    """eta: F => G, a morphism of the target category per source object."""

    def __init__(self, F: FinFunctor, G: FinFunctor, components, name="eta"):
        if F.source != G.source or F.target != G.target:
            raise CategoryMismatch("natural transformation needs parallel functors")
        self.F = F
        self.G = G
        self.components = dict(components)
        self.name = name
        self.validate()

    def at(self, x):
        return self.components[x]

    def validate(self):
        C, D = self.F.source, self.F.target
        for x in C.objects:
            m = self.components.get(x)
            if m not in D.morphisms or D.morphisms[m] != (
                self.F.obj_map[x],
                self.G.obj_map[x],
            ):
                raise CategoryMismatch(
                    f"component at {x!r} missing or mistyped", witness=x
                )
        for k, (x, y) in C.morphisms.items():
            lhs = D.comp[(self.F.mor_map[k], self.components[y])]
            rhs = D.comp[(self.components[x], self.G.mor_map[k])]
            if lhs != rhs:
                raise CategoryMismatch(
                    f"naturality square fails at morphism {k!r}", witness=k
                )

    def table(self):
        return tuple(sorted(self.components.items(), key=repr))

    def __eq__(self, other):
        return (
            isinstance(other, NatTransformation)
            and self.F == other.F
            and self.G == other.G
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.F, self.G, self.table()))

    def __repr__(self):
        return f"Nat({self.name}: {self.F.name} => {self.G.name})"


def identity_nat(F):
    D = F.target
    return NatTransformation(
        F, F, {x: D.identity[F.obj_map[x]] for x in F.source.objects}, name=f"id_{F.name}"
    )


def nat_vertical_compose(eta: NatTransformation, zeta: NatTransformation):
    """(eta o_v zeta)(x) = eta(x) then zeta(x); needs eta: F=>G, zeta: G=>H."""
    if eta.G != zeta.F:
        raise MiddleMismatch(
            f"middle functors disagree: {eta.G.name} vs {zeta.F.name}",
            witness=(eta.G.name, zeta.F.name),
        )
    D = eta.F.target
    comps = {
        x: D.comp[(eta.components[x], zeta.components[x])]
        for x in eta.F.source.objects
    }
    return NatTransformation(
        eta.F, zeta.G, comps, name=f"{eta.name}.{zeta.name}"
    )


def nat_horizontal_compose(eta01: NatTransformation, eta12: NatTransformation):
    """Horizontal composite (F01;F12) => (G01;G12).

    Computed by both standard formulas, which must agree:
      x -> eta12(F01 x) then G12(eta01 x)  ==  x -> F12(eta01 x) then eta12(G01 x)
    """
    if eta01.F.target != eta12.F.source:
        raise CategoryMismatch(
            "codomain of the first pair must equal the domain of the second",
            witness=(eta01.F.target.name, eta12.F.source.name),
        )
    C0 = eta01.F.source
    D = eta12.F.target
    comps = {}
    for x in C0.objects:
        first = D.comp[
            (eta12.components[eta01.F.obj_map[x]], eta12.G.mor_map[eta01.components[x]])
        ]
        second = D.comp[
            (eta12.F.mor_map[eta01.components[x]], eta12.components[eta01.G.obj_map[x]])
        ]
        if first != second:
            raise CategoryMismatch(
                f"horizontal composition formulas disagree at {x!r}", witness=x
            )
        comps[x] = first
    return NatTransformation(
        eta01.F.then(eta12.F),
        eta01.G.then(eta12.G),
        comps,
        name=f"{eta01.name}*{eta12.name}",
    )


# -- exhaustive enumeration of functors and transformations -----------------


def all_functors(C, D, limit=None):
    """Backtracking enumeration of all functors C -> D."""
    objs = list(C.objects)
    out = []

    def assign_mors(obj_map):
        mor_items = sorted(C.morphisms.items(), key=repr)

        def rec(i, mor_map):
            if limit is not None and len(out) >= limit:
                return
            if i == len(mor_items):
                try:
                    out.append(FinFunctor(C, D, obj_map, mor_map))
                except CategoryMismatch:
                    pass
                return
            f, (s, d) = mor_items[i]
            if f == C.identity[s] and s == d:
                rec(i + 1, {**mor_map, f: D.identity[obj_map[s]]})
                return
            for g, (gs, gd) in sorted(D.morphisms.items(), key=repr):
                if (gs, gd) != (obj_map[s], obj_map[d]):
                    continue
                mor_map[f] = g
                # partial composition check against already assigned
                ok = True
                for (a, b), c in C.comp.items():
                    if a in mor_map and b in mor_map and c in mor_map:
                        if D.comp[(mor_map[a], mor_map[b])] != mor_map[c]:
                            ok = False
                            break
                if ok:
                    rec(i + 1, dict(mor_map))
                del mor_map[f]

        rec(0, {})

    for values in itertools.product(D.objects, repeat=len(objs)):
        if limit is not None and len(out) >= limit:
            break
        assign_mors(dict(zip(objs, values)))
    return out


def all_nats(F, G):
    """All natural transformations F => G by componentwise backtracking."""
    C, D = F.source, F.target
    objs = sorted(C.objects, key=repr)
    out = []

    def rec(i, comps):
        if i == len(objs):
            try:
                out.append(NatTransformation(F, G, comps))
            except CategoryMismatch:
                pass
            return
        x = objs[i]
        for m, (s, d) in sorted(D.morphisms.items(), key=repr):
            if (s, d) == (F.obj_map[x], G.obj_map[x]):
                rec(i + 1, {**comps, x: m})

    rec(0, {})
    return out


def functor_category(C, D, functor_limit=None):
    """The category Fun(C, D) with functors as objects and natural
    transformations as morphisms, built by exhaustive enumeration."""
    functors = all_functors(C, D, limit=functor_limit)
    fid = {i: F for i, F in enumerate(functors)}
    rev = {F: i for i, F in fid.items()}
    morphisms = {}
    nat_by_id = {}
    for i, F in fid.items():
        for j, G in fid.items():
            for k, eta in enumerate(all_nats(F, G)):
                mid = (i, j, k)
                morphisms[mid] = (i, j)
                nat_by_id[mid] = eta
    comp = {}
    index = {}
    for mid, eta in nat_by_id.items():
        index[(mid[0], mid[1], eta.table())] = mid
    for m1, eta in nat_by_id.items():
        for m2, zeta in nat_by_id.items():
            if m1[1] != m2[0]:
                continue
            composite = nat_vertical_compose(eta, zeta)
            comp[(m1, m2)] = index[(m1[0], m2[1], composite.table())]
    identity = {}
    for i, F in fid.items():
        identity[i] = index[(i, i, identity_nat(F).table())]
    cat = FinCategory(
        tuple(fid), morphisms, comp, identity, name=f"Fun({C.name},{D.name})"
    )
    cat.functor_of = fid
    cat.nat_of = nat_by_id
    return cat


# -- finite bicategories ------------------------------------------------------


class FinBicategory:
    """Finite bicategory with explicit tables.

    one_morphisms: id -> (src_obj, dst_obj)
    two_morphisms: id -> (src_1mor, dst_1mor), parallel
    vcomp: (alpha, beta) -> gamma, diagrammatic
    id2: 1mor -> 2mor
    hcomp1: (f, g) -> h on composable 1-morphisms
    hcomp2: (alpha, beta) -> gamma, or None when the structure does not
        admit one (the quotient construction does not need it)
    weak_unit: obj -> 1mor, one designated unit per object
    """

    def __init__(self, objects, one_morphisms, two_morphisms, vcomp, id2,
                 hcomp1, hcomp2, weak_unit, name="B"):
        self.name = name
        self.objects = tuple(objects)
        self.one = dict(one_morphisms)
        self.two = dict(two_morphisms)
        self.vcomp = dict(vcomp)
        self.id2 = dict(id2)
        self.hcomp1 = dict(hcomp1)
        self.hcomp2 = dict(hcomp2) if hcomp2 is not None else None
        self.weak_unit = dict(weak_unit)
        self.validate_hom_categories()

    # hom-category structure ------------------------------------------------

    def validate_hom_categories(self):
        for f, (s, d) in self.one.items():
            if s not in self.objects or d not in self.objects:
                raise CategoryMismatch(f"1-morphism {f!r} mistyped", witness=f)
        for a, (f, g) in self.two.items():
            if f not in self.one or g not in self.one:
                raise CategoryMismatch(f"2-morphism {a!r} mistyped", witness=a)
            if self.one[f] != self.one[g]:
                raise CategoryMismatch(
                    f"2-morphism {a!r} is not between parallel 1-morphisms",
                    witness=a,
                )
        for f in self.one:
            i = self.id2.get(f)
            if i not in self.two or self.two[i] != (f, f):
                raise CategoryMismatch(f"missing identity 2-cell at {f!r}", witness=f)
        composable = {
            (a, b)
            for a in self.two
            for b in self.two
            if self.two[a][1] == self.two[b][0]
        }
        if set(self.vcomp) != composable:
            raise CategoryMismatch("vertical composition domain mismatch")
        for (a, b), c in self.vcomp.items():
            if self.two[c] != (self.two[a][0], self.two[b][1]):
                raise CategoryMismatch(
                    "vertical composite mistyped", witness=(a, b)
                )
        for a, (f, g) in self.two.items():
            if self.vcomp[(self.id2[f], a)] != a or self.vcomp[(a, self.id2[g])] != a:
                raise CategoryMismatch(
                    f"vertical identity law fails at {a!r}", witness=a
                )
        for a in self.two:
            for b in self.two:
                if self.two[a][1] != self.two[b][0]:
                    continue
                ab = self.vcomp[(a, b)]
                for c in self.two:
                    if self.two[b][1] != self.two[c][0]:
                        continue
                    if self.vcomp[(ab, c)] != self.vcomp[(a, self.vcomp[(b, c)])]:
                        raise CategoryMismatch(
                            "vertical associativity fails", witness=(a, b, c)
                        )
        for x in self.objects:
            u = self.weak_unit.get(x)
            if u not in self.one or self.one[u] != (x, x):
                raise CategoryMismatch(
                    f"weak unit of {x!r} missing or mistyped", witness=x
                )
        composable1 = {
            (f, g)
            for f in self.one
            for g in self.one
            if self.one[f][1] == self.one[g][0]
        }
        if set(self.hcomp1) != composable1:
            raise CategoryMismatch("horizontal 1-composition domain mismatch")
        for (f, g), h in self.hcomp1.items():
            if self.one[h] != (self.one[f][0], self.one[g][1]):
                raise CategoryMismatch(
                    "horizontal composite mistyped", witness=(f, g)
                )

    def two_isomorphic(self, f, g):
        """f ~ g via invertible vertical pairs."""
        if self.one[f] != self.one[g]:
            return False
        if f == g:
            return True
        for a, (s, d) in self.two.items():
            if (s, d) != (f, g):
                continue
            for b, (s2, d2) in self.two.items():
                if (s2, d2) != (g, f):
                    continue
                if (
                    self.vcomp[(a, b)] == self.id2[f]
                    and self.vcomp[(b, a)] == self.id2[g]
                ):
                    return True
        return False

    def validate_bicategory(self):
        """Full axioms: interchange, identity compatibility, horizontal
        associativity and unit laws up to 2-isomorphism."""
        if self.hcomp2 is None:
            raise CategoryMismatch(
                "structure has no horizontal 2-composition", witness=self.name
            )
        for a in self.two:
            for b in self.two:
                fa, ga = self.two[a]
                fb, gb = self.two[b]
                if self.one[fa][1] != self.one[fb][0]:
                    continue
                ab = self.hcomp2[(a, b)]
                if self.two[ab] != (self.hcomp1[(fa, fb)], self.hcomp1[(ga, gb)]):
                    raise CategoryMismatch(
                        "horizontal 2-composite mistyped", witness=(a, b)
                    )
        for f in self.one:
            for g in self.one:
                if self.one[f][1] != self.one[g][0]:
                    continue
                lhs = self.hcomp2[(self.id2[f], self.id2[g])]
                if lhs != self.id2[self.hcomp1[(f, g)]]:
                    raise CategoryMismatch(
                        "identity 2-cells not compatible with horizontal "
                        "composition",
                        witness=(f, g),
                    )
        # interchange on all composable 2x2 grids
        for a in self.two:
            for b in self.two:
                if self.two[a][1] != self.two[b][0]:
                    continue
                for c in self.two:
                    if self.one[self.two[a][0]][1] != self.one[self.two[c][0]][0]:
                        continue
                    for d in self.two:
                        if self.two[c][1] != self.two[d][0]:
                            continue
                        lhs = self.hcomp2[(self.vcomp[(a, b)], self.vcomp[(c, d)])]
                        rhs = self.vcomp[
                            (self.hcomp2[(a, c)], self.hcomp2[(b, d)])
                        ]
                        if lhs != rhs:
                            raise CategoryMismatch(
                                "interchange law fails", witness=(a, b, c, d)
                            )
        for f in self.one:
            for g in self.one:
                if self.one[f][1] != self.one[g][0]:
                    continue
                for h in self.one:
                    if self.one[g][1] != self.one[h][0]:
                        continue
                    left = self.hcomp1[(self.hcomp1[(f, g)], h)]
                    right = self.hcomp1[(f, self.hcomp1[(g, h)])]
                    if not self.two_isomorphic(left, right):
                        raise CategoryMismatch(
                            "horizontal associativity fails up to 2-isomorphism",
                            witness=(f, g, h),
                        )
        for x in self.objects:
            u = self.weak_unit[x]
            for f, (s, d) in self.one.items():
                if d == x and not self.two_isomorphic(self.hcomp1[(f, u)], f):
                    raise CategoryMismatch(
                        "weak unit fails on the right", witness=(x, f)
                    )
                if s == x and not self.two_isomorphic(self.hcomp1[(u, f)], f):
                    raise CategoryMismatch(
                        "weak unit fails on the left", witness=(x, f)
                    )

    def hom_category(self, x, y):
        """The category of 1-morphisms x -> y and 2-morphisms."""
        onemors = tuple(
            f for f, (s, d) in sorted(self.one.items(), key=repr) if (s, d) == (x, y)
        )
        twomors = {
            a: pair
            for a, pair in self.two.items()
            if pair[0] in set(onemors)
        }
        comp = {
            (a, b): c
            for (a, b), c in self.vcomp.items()
            if a in twomors and b in twomors
        }
        identity = {f: self.id2[f] for f in onemors}
        return FinCategory(
            onemors, twomors, comp, identity, name=f"Mor({x!r},{y!r})"
        )

    def __repr__(self):
        return (
            f"FinBicategory({self.name}: {len(self.objects)} objects, "
            f"{len(self.one)} 1-cells, {len(self.two)} 2-cells)"
        )


def quotient_by_2isos(B: FinBicategory) -> FinCategory:
    """Objects unchanged; morphisms are 2-isomorphism classes of
    1-morphisms.  Raises IllFormedQuotient with a witness pair when
    horizontal composition fails to descend to classes."""
    reps = {}
    classes = []
    for f in sorted(B.one, key=repr):
        placed = False
        for ci, members in enumerate(classes):
            if B.two_isomorphic(members[0], f):
                members.append(f)
                reps[f] = ci
                placed = True
                break
        if not placed:
            reps[f] = len(classes)
            classes.append([f])

    comp = {}
    for ci, members in enumerate(classes):
        for cj, members2 in enumerate(classes):
            if B.one[members[0]][1] != B.one[members2[0]][0]:
                continue
            targets = set()
            witness_pairs = []
            for f in members:
                for g in members2:
                    if B.one[f][1] != B.one[g][0]:
                        continue
                    h = B.hcomp1[(f, g)]
                    targets.add(reps[h])
                    witness_pairs.append(((f, g), h))
            if len(targets) > 1:
                by_class = {}
                for (f, g), h in witness_pairs:
                    by_class.setdefault(reps[h], ((f, g), h))
                picked = sorted(by_class.values(), key=repr)[:2]
                raise IllFormedQuotient(
                    "horizontal composition does not descend to "
                    "2-isomorphism classes",
                    witness={
                        "class_pair": (members[0], members2[0]),
                        "representative_composites": picked,
                    },
                )
            comp[(ci, cj)] = targets.pop()

    identity = {x: reps[B.weak_unit[x]] for x in B.objects}
    morphisms = {
        ci: (B.one[members[0]][0], B.one[members[0]][1])
        for ci, members in enumerate(classes)
    }
    cat = FinCategory(
        B.objects, morphisms, comp, identity, name=f"|{B.name}|"
    )
    cat.class_members = {ci: tuple(m) for ci, m in enumerate(classes)}
    cat.class_of = dict(reps)
    return cat


def yoneda(B: FinBicategory, x0):
    """The Yoneda data at a base object of a bicategory.

    Returns a dict with the hom-categories, the functors given by
    horizontal composition with each 1-morphism, and the natural
    transformations given by whiskering each 2-morphism; every piece is
    validated by the FinFunctor / NatTransformation constructors.
    """
    if x0 not in B.objects:
        raise InvalidObject(f"{x0!r} is not an object of {B.name}", witness=x0)
    if B.hcomp2 is None:
        raise CategoryMismatch("Yoneda needs horizontal 2-composition")
    categories = {x: B.hom_category(x0, x) for x in B.objects}
    functors = {}
    for f, (x1, x2) in B.one.items():
        C1, C2 = categories[x1], categories[x2]
        obj_map = {g: B.hcomp1[(g, f)] for g in C1.objects}
        mor_map = {a: B.hcomp2[(a, B.id2[f])] for a in C1.morphisms}
        functors[f] = FinFunctor(C1, C2, obj_map, mor_map, name=f"Y({f!r})")
    transformations = {}
    for beta, (g12, h12) in B.two.items():
        x1, x2 = B.one[g12]
        C1 = categories[x1]
        comps = {f01: B.hcomp2[(B.id2[f01], beta)] for f01 in C1.objects}
        transformations[beta] = NatTransformation(
            functors[g12], functors[h12], comps, name=f"Y({beta!r})"
        )
    return {
        "base": x0,
        "categories": categories,
        "functors": functors,
        "transformations": transformations,
    }


# -- concrete constructions ---------------------------------------------------


def bicategory_with_identity_2cells(C: FinCategory) -> FinBicategory:
    """Promote a category to a bicategory with only identity 2-cells."""
    two = {("id2", f): (f, f) for f in C.morphisms}
    vcomp = {((("id2", f)), ("id2", f)): ("id2", f) for f in C.morphisms}
    id2 = {f: ("id2", f) for f in C.morphisms}
    hcomp2 = {
        (("id2", f), ("id2", g)): ("id2", h) for (f, g), h in C.comp.items()
    }
    return FinBicategory(
        C.objects,
        dict(C.morphisms),
        two,
        vcomp,
        id2,
        dict(C.comp),
        hcomp2,
        {x: C.identity[x] for x in C.objects},
        name=f"{C.name}+id2",
    )


def conjugacy_nonexample(n=3):
    """Maps of an n-point set with conjugacy as 2-cells: hom-categories
    exist, but horizontal composition does not descend to classes, so the
    quotient construction must fail with a witness.

    The structure has no horizontal 2-composition (that is the point), so
    hcomp2 is None and only quotient_by_2isos may consume it.
    """
    points = tuple(range(n))
    maps = sorted(itertools.product(points, repeat=n))
    bijections = [m for m in maps if len(set(m)) == n]

    def compose_maps(f, g):
        # f then g
        return tuple(g[f[i]] for i in points)

    def invert(p):
        out = [0] * n
        for i, v in enumerate(p):
            out[v] = i
        return tuple(out)

    obj = "S"
    one = {m: (obj, obj) for m in maps}
    two = {}
    for f in maps:
        for p in bijections:
            # alpha: f => p^-1 f p, conjugation by p
            g = compose_maps(compose_maps(invert(p), f), p)
            two[(f, p)] = (f, g)
    vcomp = {}
    for (f, p), (_, g) in two.items():
        for (g2, q), (_, h) in two.items():
            if g2 != g:
                continue
            # conjugating by p then by q is conjugating by q o p
            vcomp[((f, p), (g, q))] = (f, compose_maps(p, q))
    id2 = {f: (f, tuple(points)) for f in maps}
    hcomp1 = {(f, g): compose_maps(f, g) for f in maps for g in maps}
    weak_unit = {obj: tuple(points)}
    return FinBicategory(
        (obj,), one, two, vcomp, id2, hcomp1, None, weak_unit,
        name=f"maps{n}+conjugacy",
    )
