import itertools

import pytest

from floerkit.catgen import (
    path_category,
    poset_category,
    random_category,
    relation_bicategory,
)
from floerkit.cats import (
    FinCategory,
    FinFunctor,
    all_functors,
    all_nats,
    bicategory_with_identity_2cells,
    conjugacy_nonexample,
    discrete_category,
    functor_category,
    identity_functor,
    identity_nat,
    nat_horizontal_compose,
    nat_vertical_compose,
    quotient_by_2isos,
    yoneda,
)
from floerkit.errors import (
    CategoryMismatch,
    IllFormedQuotient,
    InvalidObject,
    MiddleMismatch,
)
from floerkit.groups import cyclic_group


def two_chain():
    return poset_category(lambda x, y: x <= y, (0, 1), name="2chain")


def three_chain():
    return poset_category(lambda x, y: x <= y, (0, 1, 2), name="3chain")


def test_category_validation_catches_bad_tables():
    with pytest.raises(CategoryMismatch):
        FinCategory((0,), {"f": (0, 0)}, {}, {0: "f"})  # missing comp entry
    with pytest.raises(CategoryMismatch):
        FinCategory((0,), {"f": (0, 1)}, {("f", "f"): "f"}, {0: "f"})


def test_category_validation_catches_broken_associativity():
    # comp table with a deliberate associativity defect on a 3-element monoid
    mor = {"e": (0, 0), "a": (0, 0), "b": (0, 0)}
    comp = {}
    for x in mor:
        comp[("e", x)] = x
        comp[(x, "e")] = x
    comp[("a", "a")] = "b"
    comp[("a", "b")] = "e"
    comp[("b", "a")] = "b"   # broken: (a.a).a = b.a = b, a.(a.a) = a.b = e
    comp[("b", "b")] = "a"
    with pytest.raises(CategoryMismatch) as err:
        FinCategory((0,), mor, comp, {0: "e"})
    assert "associativity" in str(err.value) or "identity" in str(err.value)


def test_functor_validation():
    C = two_chain()
    ident = identity_functor(C)
    assert ident.on_obj(0) == 0
    with pytest.raises(CategoryMismatch):
        FinFunctor(C, C, {0: 0, 1: 0}, {f: f for f in C.morphisms})


def test_nat_vertical_compose_identity():
    C, D = two_chain(), three_chain()
    functors = all_functors(C, D)
    assert functors  # monotone maps exist
    F = functors[0]
    eta = identity_nat(F)
    assert nat_vertical_compose(eta, eta) == eta


def test_nat_vertical_middle_mismatch():
    C, D = two_chain(), three_chain()
    functors = all_functors(C, D)
    F, G = functors[0], functors[1]
    etas = all_nats(F, G)
    if not etas:
        pytest.skip("no transformation between the first two functors")
    with pytest.raises(MiddleMismatch):
        nat_vertical_compose(etas[0], etas[0])


def test_vertical_composition_componentwise():
    # two transformations between constant functors on a 2-object poset
    C = two_chain()
    D = three_chain()
    const0 = FinFunctor(C, D, {0: 0, 1: 0}, {f: D.identity[0] for f in C.morphisms})
    const1 = FinFunctor(C, D, {0: 1, 1: 1}, {f: D.identity[1] for f in C.morphisms})
    const2 = FinFunctor(C, D, {0: 2, 1: 2}, {f: D.identity[2] for f in C.morphisms})
    eta = all_nats(const0, const1)
    zeta = all_nats(const1, const2)
    assert len(eta) == 1 and len(zeta) == 1
    comp = nat_vertical_compose(eta[0], zeta[0])
    for x in C.objects:
        assert comp.at(x) == D.comp[(eta[0].at(x), zeta[0].at(x))]


def test_interchange_on_chain_categories():
    # exhaustive interchange over a 3-object chain: both bracketings agree
    C = two_chain()
    D = three_chain()
    E = three_chain()
    fun_cd = all_functors(C, D)
    fun_de = all_functors(D, E)
    checked = 0
    for F, G, H in itertools.product(fun_cd, repeat=3):
        for F2, G2, H2 in itertools.product(fun_de, repeat=3):
            for eta in all_nats(F, G):
                for zeta in all_nats(G, H):
                    for eta2 in all_nats(F2, G2):
                        for zeta2 in all_nats(G2, H2):
                            lhs = nat_horizontal_compose(
                                nat_vertical_compose(eta, zeta),
                                nat_vertical_compose(eta2, zeta2),
                            )
                            rhs = nat_vertical_compose(
                                nat_horizontal_compose(eta, eta2),
                                nat_horizontal_compose(zeta, zeta2),
                            )
                            assert lhs == rhs
                            checked += 1
                            if checked > 400:
                                return
    assert checked > 0


def test_horizontal_identity_whiskering():
    C, D = two_chain(), three_chain()
    functors = all_functors(C, D)
    F = functors[0]
    ident = identity_functor(C)
    eta = identity_nat(F)
    whisker = nat_horizontal_compose(identity_nat(ident), eta)
    assert whisker.components == {x: eta.at(x) for x in C.objects}


def test_horizontal_compose_category_mismatch():
    C, D = two_chain(), three_chain()
    F = all_functors(C, D)[0]
    with pytest.raises(CategoryMismatch):
        nat_horizontal_compose(identity_nat(F), identity_nat(F))


def test_functor_category_laws():
    C, D = two_chain(), two_chain()
    fun_cat = functor_category(C, D)
    # FinCategory construction validates unit and associativity laws
    assert len(fun_cat.objects) == 3  # monotone maps 2 -> 2
    assert all(
        fun_cat.morphisms[fun_cat.identity[x]] == (x, x) for x in fun_cat.objects
    )


def test_quotient_identity_2cells_recovers_category():
    C = three_chain()
    B = bicategory_with_identity_2cells(C)
    B.validate_bicategory()
    q = quotient_by_2isos(B)
    assert len(q.objects) == len(C.objects)
    assert len(q.morphisms) == len(C.morphisms)


def test_quotient_identifies_isomorphic_pair():
    # one nonidentity invertible 2-cell between parallel f, g
    objects = ("x", "y")
    one = {"f": ("x", "y"), "g": ("x", "y"), "ux": ("x", "x"), "uy": ("y", "y")}
    two = {
        "idf": ("f", "f"), "idg": ("g", "g"), "idux": ("ux", "ux"),
        "iduy": ("uy", "uy"), "a": ("f", "g"), "b": ("g", "f"),
    }
    vcomp = {}
    for m, (s, d) in two.items():
        vcomp[(f"id{s}", m)] = m
        vcomp[(m, f"id{d}")] = m
    vcomp[("a", "b")] = "idf"
    vcomp[("b", "a")] = "idg"
    # fix the double-keyed identity entries
    vcomp[("idf", "idf")] = "idf"
    vcomp[("idg", "idg")] = "idg"
    vcomp[("idux", "idux")] = "idux"
    vcomp[("iduy", "iduy")] = "iduy"
    vcomp[("idf", "a")] = "a"
    vcomp[("a", "idg")] = "a"
    vcomp[("idg", "b")] = "b"
    vcomp[("b", "idf")] = "b"
    id2 = {"f": "idf", "g": "idg", "ux": "idux", "uy": "iduy"}
    hcomp1 = {}
    for p in one:
        for q in one:
            if one[p][1] != one[q][0]:
                continue
            if p.startswith("u"):
                hcomp1[(p, q)] = q
            elif q.startswith("u"):
                hcomp1[(p, q)] = p
            else:
                hcomp1[(p, q)] = p
    from floerkit.cats import FinBicategory

    B = FinBicategory(
        objects, one, two, vcomp, id2, hcomp1, None,
        {"x": "ux", "y": "uy"}, name="pair",
    )
    q = quotient_by_2isos(B)
    assert len(q.morphisms) == 3  # [f]=[g], [ux], [uy]
    assert q.class_of["f"] == q.class_of["g"]


def test_conjugacy_nonexample_raises_with_witness():
    B = conjugacy_nonexample(3)
    with pytest.raises(IllFormedQuotient) as err:
        quotient_by_2isos(B)
    w = err.value.witness
    assert "class_pair" in w and len(w["representative_composites"]) == 2
    (pair1, h1), (pair2, h2) = w["representative_composites"]
    # the two composites really are inequivalent maps
    assert h1 != h2


def test_yoneda_trivial_bicategory():
    C = discrete_category(("x",))
    B = bicategory_with_identity_2cells(C)
    y = yoneda(B, "x")
    cat = y["categories"]["x"]
    assert len(cat.objects) == 1 and len(cat.morphisms) == 1


def test_yoneda_invalid_object():
    C = discrete_category(("x",))
    B = bicategory_with_identity_2cells(C)
    with pytest.raises(InvalidObject):
        yoneda(B, "zzz")


def test_yoneda_weak_unit_isomorphic_to_identity():
    B = relation_bicategory(cyclic_group(2))
    x = B.objects[1]  # the sphere object
    y = yoneda(B, B.objects[0])
    unit_functor = y["functors"][B.weak_unit[x]]
    cat = y["categories"][x]
    # composing with the weak unit fixes every object up to 2-isomorphism
    for g in cat.objects:
        assert B.two_isomorphic(unit_functor.on_obj(g), g)


def test_yoneda_relation_bicategory_matches_handlebodies():
    from floerkit.bordism import CAP0, attach1, canonical_circle, chain
    from floerkit.bordobjects import EMPTY, surface
    from floerkit.fieldfun import PartialFunctorSpec, functor_eval

    group = cyclic_group(2)
    B = relation_bicategory(group)
    y = yoneda(B, EMPTY)
    spec = PartialFunctorSpec(group)
    handlebody = chain([CAP0, attach1(canonical_circle(1))])
    value = functor_eval(spec, handlebody)
    torus_cat = y["categories"][surface(1)]
    chains_as_relations = [
        tuple(B.relation_of[i] for i in ch) for ch in torus_cat.objects
    ]
    assert tuple(value.chain.relations) in chains_as_relations


def test_relation_bicategory_quotient_composes_geometrically():
    from floerkit.relcat import geometric_compose, is_embedded

    B = relation_bicategory(cyclic_group(3))
    B.validate_bicategory()
    q = quotient_by_2isos(B)
    rel_of = B.relation_of
    # composition of classes equals the class of the geometric composition
    for f in B.one:
        for g in B.one:
            if B.one[f][1] != B.one[g][0]:
                continue
            a = B.chain_complete[f]
            b = B.chain_complete[g]
            flag, _ = is_embedded(rel_of[a], rel_of[b])
            if not flag:
                continue
            comp_class = q.comp[(q.class_of[f], q.class_of[g])]
            composite = geometric_compose(rel_of[a], rel_of[b])
            member = q.class_members[comp_class][0]
            assert rel_of[B.chain_complete[member]] == composite


def test_two_isomorphism_is_equivalence_random():
    import numpy as np

    B = relation_bicategory(cyclic_group(2))
    rng = np.random.default_rng(0)
    ones = sorted(B.one, key=repr)
    for _ in range(50):
        f, g, h = (ones[int(i)] for i in rng.integers(0, len(ones), size=3))
        assert B.two_isomorphic(f, f)
        if B.two_isomorphic(f, g):
            assert B.two_isomorphic(g, f)
            if B.two_isomorphic(g, h):
                assert B.two_isomorphic(f, h)


@pytest.mark.parametrize("seed", range(12))
def test_random_categories_are_valid(seed):
    cat = random_category(seed)
    assert len(cat.objects) <= 5
    assert len(cat.morphisms) <= 40


def test_path_category_composition():
    C = path_category((0, 1, 2), [(0, 1, "a"), (1, 2, "b")])
    paths = [f for f, (s, d) in C.morphisms.items() if (s, d) == (0, 2)]
    assert len(paths) == 1
