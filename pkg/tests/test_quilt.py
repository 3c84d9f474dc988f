import pytest

from floerkit.bordism import b_circle, canonical_circle
from floerkit.bordobjects import surface
from floerkit.errors import (
    CyclicMismatch,
    InputNotGenerator,
    InvalidEnd,
    LabelMismatch,
    NotAStrip,
    NotEmbedded,
)
from floerkit.groups import cyclic_group, symmetric_group
from floerkit.quilt import (
    GenericMorphism,
    QuiltDiagram,
    QuiltSurface,
    cap_diagram,
    cup_diagram,
    cylinder_diagram,
    diagrams_isomorphic,
    evaluates_to_identity,
    evaluation_map,
    export_dot,
    object_cylinder_diagram,
    quilt_evaluate,
    quilt_glue,
    quilt_validate,
    shrink_strip,
    snake_frame_diagram,
    string_diagram,
    vertical_composition_diagram,
)
from floerkit.relcat import generator_set, geometric_compose
from floerkit.repvar import (
    FiniteRelation,
    VarietyCache,
    diagonal_relation,
    relation_of_attach2,
    relation_of_cyl,
)
from floerkit.words import dehn_twist_a, s_move

S3 = symmetric_group(3)
Z3 = cyclic_group(3)


@pytest.fixture(scope="module")
def rels():
    cache = VarietyCache(S3)
    return {
        "cache": cache,
        "Y": relation_of_attach2(S3, canonical_circle(1), cache),
        "B": relation_of_attach2(S3, b_circle(1), cache),
        "G": relation_of_cyl(S3, dehn_twist_a(1), cache),
        "S": relation_of_cyl(S3, s_move(1), cache),
        "D": diagonal_relation(cache.variety(surface(1))),
    }


def test_sphere_no_seams_validates(rels):
    surf = QuiltSurface({"out": ()}, "out", {})
    q = QuiltDiagram(surf, {"f0": rels["cache"].variety(surface(1))}, {})
    report = quilt_validate(q)
    assert all(e["status"] == "pass" for e in report)
    # the end's cyclic morphism is the weak unit (diagonal)
    chain = q.end_cyclic_chain("out")
    assert chain.relations[0] == rels["D"]


def test_plane_with_two_parallel_seams_has_three_patches(rels):
    # one end at infinity, two seams looping through it
    Y = rels["Y"]
    surf = QuiltSurface(
        {"out": ("a0", "b0", "b1", "a1")},
        "out",
        {"sa": ("a0", "a1"), "sb": ("b0", "b1")},
    )
    data = surf.data()
    assert len(data["patches"]) == 3
    assert data["genus"] == 0


def test_seam_end_used_twice_reported():
    surf = QuiltSurface(
        {"e1": ("h0",), "e2": ("h0", "h1")}, "e1", {"s": ("h0", "h1")}
    )
    report, data = surf.analyze()
    bad = [e for e in report if e["status"] == "fail"]
    assert bad and bad[0]["check"] == "seam-ends attached once"
    assert data is None


def test_torus_quilt_genus():
    # one end, two loops interleaved: rotation (a, b, a', b') gives genus 1
    surf = QuiltSurface(
        {"out": ("a0", "b0", "a1", "b1")},
        "out",
        {"sa": ("a0", "a1"), "sb": ("b0", "b1")},
    )
    data = surf.data()
    assert data["genus"] == 1
    assert len(data["faces"]) == 1


def test_cylinder_diagram_structure(rels):
    q = cylinder_diagram([rels["Y"], rels["Y"].transpose()])
    assert q.is_valid()
    data = q.surface.data()
    assert len(data["patches"]) == 2
    labels = q.end_labels("out")
    assert labels[0] == rels["Y"] and labels[1] == rels["Y"].transpose()


def test_end_cyclic_rotation(rels):
    q = cylinder_diagram([rels["G"], rels["Y"], rels["Y"].transpose()])
    chain = q.end_cyclic_chain("in")
    rotated = chain.rotate(1)
    assert rotated.canonical_rotation().relations == chain.canonical_rotation().relations


def test_invalid_end_raises(rels):
    q = cylinder_diagram([rels["Y"], rels["Y"].transpose()])
    with pytest.raises(InvalidEnd):
        q.surface.end_sequence("nope")


def test_cylinder_axiom(rels):
    fixtures = [
        [rels["D"]],
        [rels["G"], rels["G"].transpose()],
        [rels["Y"], rels["Y"].transpose()],
        [rels["G"], rels["Y"], rels["Y"].transpose()],
        [rels["Y"], rels["B"].transpose(), rels["B"], rels["Y"].transpose()],
    ]
    for labels in fixtures:
        q = cylinder_diagram(labels)
        assert q.is_valid()
        assert evaluates_to_identity(q, "in"), labels


def test_object_cylinder_axiom(rels):
    q = object_cylinder_diagram(rels["cache"].variety(surface(1)))
    gens = generator_set(q.end_cyclic_chain("in"))
    assert all(quilt_evaluate(q, {"in": t}) == {t} for t in gens.tuples)


def test_cap_evaluates_to_all_pairs(rels):
    Y = rels["Y"]
    q = cap_diagram(Y)
    out = quilt_evaluate(q, {})
    gens = generator_set(q.end_cyclic_chain("out"))
    assert out == set(gens.tuples)
    assert len(out) == len(Y.pairs)


def test_input_validation(rels):
    q = cylinder_diagram([rels["Y"], rels["Y"].transpose()])
    with pytest.raises(InputNotGenerator):
        quilt_evaluate(q, {})
    with pytest.raises(InputNotGenerator):
        quilt_evaluate(q, {"in": ((0, 0),)})
    bad_pair = (((1, 1, 1)), ())  # not a generator tuple
    with pytest.raises(InputNotGenerator):
        quilt_evaluate(q, {"in": bad_pair})


def test_glue_cylinder_is_neutral(rels):
    Y = rels["Y"]
    c1 = cylinder_diagram([Y, Y.transpose()])
    c2 = cylinder_diagram([Y, Y.transpose()])
    glued = quilt_glue(c1, c2, "in")
    assert diagrams_isomorphic(glued, cylinder_diagram([Y, Y.transpose()]))
    assert evaluates_to_identity(glued, ("L", "in"))


def test_glue_mismatch_raises(rels):
    c1 = cylinder_diagram([rels["Y"], rels["Y"].transpose()])
    c2 = cylinder_diagram([rels["G"], rels["G"].transpose()])
    with pytest.raises(CyclicMismatch):
        quilt_glue(c1, c2, "in")
    with pytest.raises(InvalidEnd):
        quilt_glue(c1, c2, "out")


def test_glue_cap_into_frame_gives_zigzag(rels):
    Y = rels["Y"]
    zig = quilt_glue(cap_diagram(Y), snake_frame_diagram(Y), "aux")
    assert diagrams_isomorphic(zig, cylinder_diagram([Y, Y.transpose()]))
    assert evaluates_to_identity(zig, ("R", "in"))


def test_gluing_axiom_composition(rels):
    # Phi of the glued diagram equals the composition of the maps
    Y, G = rels["Y"], rels["G"]
    q1 = cap_diagram(Y)
    q2 = snake_frame_diagram(Y)
    glued = quilt_glue(q1, q2, "aux")
    offset = glued.glue_offset
    k = len(q2.surface.end_nodes("aux"))
    out1 = quilt_evaluate(q1, {})
    gens_in = generator_set(q2.end_cyclic_chain("in"))
    for t in gens_in.tuples:
        direct = quilt_evaluate(glued, {("R", "in"): t})
        composed = set()
        for y in out1:
            plugged = tuple(y[(j - offset) % k] for j in range(k))
            composed |= quilt_evaluate(q2, {"aux": plugged, "in": t})
        assert direct == composed


def test_gluing_axiom_cylinder_onto_cylinder(rels):
    Y, B = rels["Y"], rels["B"]
    q1 = cylinder_diagram([Y, Y.transpose()])
    q2 = cylinder_diagram([Y, Y.transpose()])
    glued = quilt_glue(q1, q2, "in")
    offset = glued.glue_offset
    k = 2
    gens = generator_set(q1.end_cyclic_chain("in"))
    for t in gens.tuples:
        direct = quilt_evaluate(glued, {("L", "in"): t})
        composed = set()
        for y in quilt_evaluate(q1, {"in": t}):
            plugged = tuple(y[(j - offset) % k] for j in range(k))
            composed |= quilt_evaluate(q2, {"in": plugged})
        assert direct == composed


def _aligned_contraction(diagram, shrunk, end, strip_patch):
    """Contraction bijection of the end chain, rotated to match the node
    order of the shrunk diagram's end sequence."""
    from floerkit.relcat import composition_bijection

    nodes = diagram.surface.end_nodes(end)
    j = nodes.index(strip_patch)
    k = len(nodes)
    i = (j - 1) % k
    chain = diagram.end_cyclic_chain(end)
    contracted, fwd, _ = composition_bijection(chain, i)
    target = shrunk.end_cyclic_chain(end)
    for r in range(len(contracted.relations)):
        if contracted.rotate(r).relations == target.relations:
            def rotated(t, r=r):
                out = fwd[t]
                return out[r:] + out[:r]

            return rotated
    raise AssertionError("shrunk end chain is not a rotation of the contraction")


def test_shrink_strip_axiom(rels):
    # shrinking a strip intertwines the maps through the contraction
    # bijections at both ends
    G, Y = rels["G"], rels["Y"]
    q = cylinder_diagram([G, Y, Y.transpose()])
    data = q.surface.data()
    tested = 0
    for p in data["patches"]:
        try:
            shrunk = shrink_strip(q, p)
        except (NotAStrip, NotEmbedded):
            continue
        in_nodes = q.surface.end_nodes("in")
        if p not in in_nodes or p not in q.surface.end_nodes("out"):
            continue
        map_in = _aligned_contraction(q, shrunk, "in", p)
        map_out = _aligned_contraction(q, shrunk, "out", p)
        chain_in = q.end_cyclic_chain("in")
        for t in generator_set(chain_in).tuples:
            before = quilt_evaluate(q, {"in": t})
            after = quilt_evaluate(shrunk, {"in": map_in(t)})
            assert {map_out(b) for b in before} == after
        tested += 1
    assert tested >= 1


def test_shrink_annulus(rels):
    # concentric circles: outer patch with the end, middle annulus, inner disk
    v = rels["cache"].variety(surface(1))
    surf = QuiltSurface(
        {"out": ()},
        "out",
        {},
        circle_seams={"c1": ("f0", "mid"), "c2": ("mid", "core")},
        end_patch={"out": "f0"},
    )
    G, S = rels["G"], rels["S"]
    q = QuiltDiagram(
        surf,
        {"f0": v, "mid": v, "core": v},
        {"c1": G, "c2": S},
    )
    assert q.is_valid()
    shrunk = shrink_strip(q, "mid")
    assert shrunk.is_valid()
    assert len(shrunk.surface.circle_seams) == 1
    merged = list(shrunk.seam_labels.values())[0]
    assert merged == geometric_compose(G, S)
    # evaluation unchanged: both are closed diagrams up to the bare end
    before = quilt_evaluate(q, {})
    after = quilt_evaluate(shrunk, {})
    assert before == after


def test_shrink_requires_embedded(rels):
    # doubled label: union of two graphs; its self-strip is not embedded
    f, g = rels["D"], rels["S"]
    doubled = FiniteRelation(f.source, f.target, f.pairs | g.pairs)
    q = cylinder_diagram([doubled, doubled.transpose()])
    data = q.surface.data()
    errors = 0
    for p in data["patches"]:
        try:
            shrink_strip(q, p)
        except NotEmbedded as err:
            errors += 1
            assert err.witness is not None
    assert errors == 2  # both strips fail


def test_non_embedded_contraction_changes_generator_count(rels):
    # necessity of the embeddedness hypothesis: composing the seams of the
    # doubled cylinder by hand changes the generator count
    f, g = rels["D"], rels["S"]
    doubled = FiniteRelation(f.source, f.target, f.pairs | g.pairs)
    q = cylinder_diagram([doubled, doubled.transpose()])
    before = generator_set(q.end_cyclic_chain("in"))
    collapsed = geometric_compose(doubled, doubled.transpose())
    q2 = cylinder_diagram([collapsed])
    after = generator_set(q2.end_cyclic_chain("in"))
    assert len(before) != len(after)


def test_deformation_axiom_renaming(rels):
    # pure renaming of ids: evaluation maps strictly equal
    Y = rels["Y"]
    q1 = cylinder_diagram([Y, Y.transpose()])
    s = q1.surface
    rename_se = {h: ("re", h) for order in s.ends.values() for h in order}
    ends = {e: tuple(rename_se[h] for h in order) for e, order in s.ends.items()}
    seams = {
        ("re", sid): (rename_se[a], rename_se[b]) for sid, (a, b) in s.seams.items()
    }
    s2 = QuiltSurface(ends, "out", seams)
    labels = {("re", sid): lab for sid, lab in q1.seam_labels.items()}
    q2 = QuiltDiagram(s2, dict(q1.patch_labels), labels)
    assert q2.is_valid()
    assert diagrams_isomorphic(q1, q2)
    assert evaluation_map(q1) == evaluation_map(q2)


def test_deformation_axiom_rotation(rels):
    # rotating the stored cyclic orders is an isomorphism; the maps agree
    # after transporting tuples through the induced end identification
    Y = rels["Y"]
    q1 = cylinder_diagram([Y, Y.transpose()])
    s = q1.surface
    ends = {
        "in": s.ends["in"][1:] + s.ends["in"][:1],
        "out": s.ends["out"][1:] + s.ends["out"][:1],
    }
    s2 = QuiltSurface(ends, "out", dict(s.seams))
    q2 = QuiltDiagram(s2, dict(q1.patch_labels), dict(q1.seam_labels))
    assert q2.is_valid()
    assert diagrams_isomorphic(q1, q2)
    # transport: match nodes by patch (all patches distinct in a cylinder)
    in1, in2 = q1.surface.end_nodes("in"), q2.surface.end_nodes("in")
    out1, out2 = q1.surface.end_nodes("out"), q2.surface.end_nodes("out")
    to2_in = tuple(in1.index(p) for p in in2)
    to2_out = tuple(out1.index(p) for p in out2)
    for t in generator_set(q1.end_cyclic_chain("in")).tuples:
        t2 = tuple(t[i] for i in to2_in)
        lhs = {
            tuple(o[i] for i in to2_out)
            for o in quilt_evaluate(q1, {"in": t})
        }
        assert lhs == quilt_evaluate(q2, {"in": t2})


def test_deformation_distinguishes_labels(rels):
    q1 = cylinder_diagram([rels["Y"], rels["Y"].transpose()])
    q2 = cylinder_diagram([rels["G"], rels["G"].transpose()])
    assert not diagrams_isomorphic(q1, q2)


def test_generic_labels_validate():
    M, N = "M", "N"
    Y = GenericMorphism("Y", M, N)
    q = cylinder_diagram([Y, Y.transpose()])
    assert q.is_valid()
    with pytest.raises(LabelMismatch):
        quilt_evaluate(q, {"in": ("x", "y")})


def test_vertical_diagram(rels):
    # 2-morphisms at set level are matched pairs: the vertical diagram
    # composes them when they agree
    D, S = rels["D"], rels["S"]
    q = vertical_composition_diagram(D, D, D)
    assert q.is_valid()
    gens1 = generator_set(q.end_cyclic_chain("e1"))
    table = evaluation_map(q)
    for combo, out in table.items():
        inputs = dict(combo)
        if inputs["e1"] == inputs["e2"]:
            assert out == {inputs["e1"]}
        else:
            assert out == set()


def test_string_diagram_kinds(rels):
    Y, G = rels["Y"], rels["G"]
    assert string_diagram("identity", Y).is_valid()
    assert string_diagram("cap", Y).is_valid()
    assert string_diagram("cup", Y).is_valid()
    assert string_diagram("horizontal", G, Y).is_valid()
    with pytest.raises(LabelMismatch):
        string_diagram("nonsense", Y)


def test_cup_is_cap_of_transpose(rels):
    Y = rels["Y"]
    assert diagrams_isomorphic(cup_diagram(Y), cap_diagram(Y.transpose()))


def test_export_dot(rels):
    q = cylinder_diagram([rels["Y"], rels["Y"].transpose()])
    dot = export_dot(q)
    assert dot.startswith("graph quilt {")
    assert "subgraph cluster_0" in dot
    assert dot.count("--") >= 2


def _bubble_pair(rels):
    """Two diagrams whose gluing welds a pair of matched loops into a
    closed curve: the result must carry it as a circle seam."""
    cache = rels["cache"]
    M = cache.variety(surface(1))
    D = diagonal_relation(M)
    G = rels["G"]
    s1 = QuiltSurface(
        {"out": ("g1", "g2", "g3", "g4"), "e1": ("x2", "x1")},
        "out",
        {"O1": ("x1", "g1"), "A": ("g2", "g3"), "O2": ("x2", "g4")},
    )
    q1 = QuiltDiagram(s1, {"f0": M, "f1": M, "f2": M}, {"O1": D, "A": G, "O2": D})
    s2 = QuiltSurface(
        {"ein": ("h1", "h2", "h3", "h4"), "out2": ("y2", "y1")},
        "out2",
        {"P1": ("h1", "y1"), "B": ("h2", "h3"), "P2": ("h4", "y2")},
    )
    q2 = QuiltDiagram(s2, {"f0": M, "f1": M, "f2": M}, {"P1": D, "B": G, "P2": D})
    return q1, q2


def test_glue_welds_matched_loops_into_circle_seam(rels):
    q1, q2 = _bubble_pair(rels)
    assert q1.is_valid() and q2.is_valid()
    glued = quilt_glue(q1, q2, "ein")
    assert glued.is_valid()
    assert len(glued.surface.circle_seams) == 1
    assert len(glued.surface.seams) == 2
    # the circle's constraint must survive: gluing axiom holds exactly
    gens_in = generator_set(q1.end_cyclic_chain("e1"))
    k, offset = 4, glued.glue_offset
    for t in gens_in.tuples:
        direct = quilt_evaluate(glued, {("L", "e1"): t})
        composed = set()
        for y in quilt_evaluate(q1, {"e1": t}):
            plugged = tuple(y[(j - offset) % k] for j in range(k))
            composed |= quilt_evaluate(q2, {"ein": plugged})
        assert direct == composed
