"""JSON (de)serialization for every file format the command line reads and
writes.  All dumps are deterministic: sorted keys, fixed separators, no
dependence on dict insertion order or worker count."""

from __future__ import annotations

import json

from .bordism import (
    CAP0,
    CAP3,
    AttachingCircle,
    CobordismChain,
    SimpleCobordism,
    attach1,
    attach2,
    chain,
    cyl,
)
from .bordobjects import bordobject_from_json
from .errors import FloerkitError
from .quilt import QuiltDiagram, QuiltSurface
from .repvar import FiniteRelation, RepVariety, VarietyCache, diagonal_relation
from .words import automorphism_from_json, identity_automorphism


def dumps(data):
    return json.dumps(data, sort_keys=True, separators=(",", ": "), indent=1) + "\n"


def load_json(path):
    with open(path) as fh:
        return json.load(fh)


# -- chains -------------------------------------------------------------------


def step_to_json(step: SimpleCobordism):
    if step.kind == "cyl":
        return {"kind": "cyl", "genus": step.phi.genus, "auto": step.phi.to_json()}
    if step.kind in ("attach2", "attach1"):
        return {
            "kind": step.kind,
            "genus": step.circle.genus,
            "auto": step.circle.psi.to_json(),
        }
    return {"kind": step.kind}


def step_from_json(data):
    kind = data["kind"]
    if kind == "cap3":
        return CAP3
    if kind == "cap0":
        return CAP0
    genus = data["genus"]
    auto = data.get("auto")
    phi = automorphism_from_json(auto) if auto else identity_automorphism(genus)
    if kind == "cyl":
        return cyl(phi)
    if kind == "attach2":
        return attach2(AttachingCircle(genus, phi))
    if kind == "attach1":
        return attach1(AttachingCircle(genus, phi))
    raise FloerkitError(f"unknown step kind {kind!r}")


def chain_to_json(c: CobordismChain):
    return [step_to_json(s) for s in c.steps]


def chain_from_json(data):
    if not isinstance(data, list) or not data:
        raise FloerkitError("a chain file is a non-empty JSON list of steps")
    return chain([step_from_json(s) for s in data])


# -- varieties and relations ----------------------------------------------------


def variety_from_json(group, data):
    obj = bordobject_from_json(data["object"])
    points = tuple(tuple(p) for p in data["points"])
    return RepVariety(group, obj, points)


def relation_to_json(rel: FiniteRelation):
    return rel.to_json()


def relation_from_json(group, data):
    src = variety_from_json(group, data["source"])
    dst = variety_from_json(group, data["target"])
    pairs = frozenset((tuple(x), tuple(y)) for x, y in data["pairs"])
    return FiniteRelation(src, dst, pairs)


# -- presentations ----------------------------------------------------------------


def presentation_from_json(data):
    n = data["generators"]
    relators = tuple(tuple(r) for r in data.get("relators", ()))
    for r in relators:
        for x in r:
            if x == 0 or abs(x) > n:
                raise FloerkitError(f"relator letter {x} outside alphabet 1..{n}")
    return n, relators


# -- quilt diagrams ----------------------------------------------------------------


def label_from_json(group, data, cache=None):
    """Label descriptors: diagonal / cyl / attach2 / attach1 / raw, each
    optionally wrapped in {"transpose": descriptor}."""
    from .repvar import relation_of_attach2, relation_of_cyl

    cache = cache or VarietyCache(group)
    if "transpose" in data:
        return label_from_json(group, data["transpose"], cache).transpose()
    kind = data["kind"]
    if kind == "diagonal":
        return diagonal_relation(cache.variety(bordobject_from_json(data["object"])))
    if kind == "cyl":
        return relation_of_cyl(group, automorphism_from_json(data["auto"]), cache)
    if kind in ("attach2", "attach1"):
        auto = data.get("auto")
        genus = data["genus"]
        phi = automorphism_from_json(auto) if auto else identity_automorphism(genus)
        rel = relation_of_attach2(group, AttachingCircle(genus, phi), cache)
        return rel if kind == "attach2" else rel.transpose()
    if kind == "raw":
        return relation_from_json(group, data)
    raise FloerkitError(f"unknown label kind {kind!r}")


def diagram_from_json(group, data):
    cache = VarietyCache(group)
    ends = {e: tuple(order) for e, order in data["ends"].items()}
    seams = {s: tuple(pair) for s, pair in data["seams"].items()}
    circle_seams = {
        c: tuple(sides) for c, sides in data.get("circle_seams", {}).items()
    }
    surface_obj = QuiltSurface(
        ends,
        data["outgoing"],
        seams,
        circle_seams=circle_seams,
        end_patch=dict(data.get("end_patch", {})),
    )
    patch_labels = {
        p: cache.variety(bordobject_from_json(obj))
        for p, obj in data["patch_labels"].items()
    }
    seam_labels = {
        s: label_from_json(group, lab, cache)
        for s, lab in data["seam_labels"].items()
    }
    return QuiltDiagram(surface_obj, patch_labels, seam_labels)


def diagram_to_json(q: QuiltDiagram):
    """Dump with stable renamed ids so that glued/shrunk diagrams stay
    serializable.  Traced-face patch references are rewritten to the face
    ids a reload will re-derive; circle regions get fresh r-prefixed ids.
    """
    s = q.surface
    end_ids = {e: f"e{i}" for i, e in enumerate(sorted(s.ends, key=repr))}
    seam_ids = {sid: f"s{i}" for i, sid in enumerate(sorted(s.seams, key=repr))}
    circle_ids = {
        cid: f"c{i}" for i, cid in enumerate(sorted(s.circle_seams, key=repr))
    }
    half_ids = {}
    for e in sorted(s.ends, key=repr):
        for h in s.ends[e]:
            half_ids[h] = f"h{len(half_ids)}"
    data_block = s.data()

    # predict the face ids of the renamed surface by probing it
    probe = QuiltSurface(
        {end_ids[e]: tuple(half_ids[h] for h in order) for e, order in s.ends.items()},
        end_ids[s.outgoing],
        {seam_ids[sid]: (half_ids[a], half_ids[b]) for sid, (a, b) in s.seams.items()},
    )
    probe_faces = probe.core_data()["face_of"]
    patch_ids = {}
    for h, hid in half_ids.items():
        patch_ids[data_block["face_of"][h]] = probe_faces[hid]
    fresh = 0
    for p in data_block["patches"]:
        if p not in patch_ids:
            if p in data_block["faces"]:
                patch_ids[p] = "f0"  # bare sphere face
            else:
                patch_ids[p] = f"r{fresh}"
                fresh += 1

    seam_labels = {}
    for sid, lab in q.seam_labels.items():
        key = seam_ids[sid] if sid in seam_ids else circle_ids[sid]
        seam_labels[key] = {"kind": "raw", **lab.to_json()}
    return {
        "ends": {
            end_ids[e]: [half_ids[h] for h in order]
            for e, order in s.ends.items()
        },
        "outgoing": end_ids[s.outgoing],
        "seams": {
            seam_ids[sid]: [half_ids[a], half_ids[b]]
            for sid, (a, b) in s.seams.items()
        },
        "circle_seams": {
            circle_ids[cid]: [patch_ids[pm], patch_ids[pp]]
            for cid, (pm, pp) in s.circle_seams.items()
        },
        "end_patch": {
            end_ids[e]: patch_ids[p] for e, p in s.end_patch.items()
        },
        "patch_labels": {
            patch_ids[p]: lab.obj.to_json() for p, lab in q.patch_labels.items()
        },
        "seam_labels": seam_labels,
    }


# -- finite categories ----------------------------------------------------------------


def category_from_json(data):
    from .cats import FinCategory

    objects = tuple(data["objects"])
    morphisms = {f: tuple(sd) for f, sd in data["morphisms"].items()}
    identity = dict(data["identity"])
    comp = {(f, g): h for f, g, h in data["composition"]}
    return FinCategory(
        objects, morphisms, comp, identity, name=data.get("name", "C")
    )


def category_to_json(cat):
    """Dump with stringified ids (JSON object keys are strings, so object
    and morphism ids are normalized on the way out)."""
    return {
        "name": cat.name,
        "objects": sorted(str(x) for x in cat.objects),
        "morphisms": {
            str(f): [str(s), str(d)]
            for f, (s, d) in sorted(cat.morphisms.items(), key=repr)
        },
        "identity": {str(x): str(cat.identity[x]) for x in cat.objects},
        "composition": sorted(
            [str(f), str(g), str(h)] for (f, g), h in cat.comp.items()
        ),
    }


def bicategory_to_json(B):
    """Explicit-table dump of a finite bicategory, ids stringified."""
    return {
        "name": B.name,
        "objects": sorted(str(x) for x in B.objects),
        "one_morphisms": {
            str(f): [str(s), str(d)] for f, (s, d) in sorted(B.one.items(), key=repr)
        },
        "two_morphisms": {
            str(a): [str(f), str(g)] for a, (f, g) in sorted(B.two.items(), key=repr)
        },
        "vertical_composition": sorted(
            [str(a), str(b), str(c)] for (a, b), c in B.vcomp.items()
        ),
        "identity_2cells": {str(f): str(a) for f, a in B.id2.items()},
        "horizontal_composition_1": sorted(
            [str(f), str(g), str(h)] for (f, g), h in B.hcomp1.items()
        ),
        "horizontal_composition_2": None
        if B.hcomp2 is None
        else sorted([str(a), str(b), str(c)] for (a, b), c in B.hcomp2.items()),
        "weak_units": {str(x): str(f) for x, f in B.weak_unit.items()},
    }


def bicategory_from_json(data):
    from .cats import FinBicategory

    h2 = data.get("horizontal_composition_2")
    return FinBicategory(
        tuple(data["objects"]),
        {f: tuple(sd) for f, sd in data["one_morphisms"].items()},
        {a: tuple(fg) for a, fg in data["two_morphisms"].items()},
        {(a, b): c for a, b, c in data["vertical_composition"]},
        dict(data["identity_2cells"]),
        {(f, g): h for f, g, h in data["horizontal_composition_1"]},
        None if h2 is None else {(a, b): c for a, b, c in h2},
        dict(data["weak_units"]),
        name=data.get("name", "B"),
    )
