"""Quilted surfaces as rotation systems, quilt diagrams, and their
relation-valued composition maps.

Encoding: ends are vertices carrying a counterclockwise cyclic order of
seam-ends; interval seams pair two seam-ends; faces (patches) are traced
as orbits of sigma o alpha.  Circle seams are invisible to face tracing,
so each one explicitly names its two adjacent patches; the circles inside
one traced face must form a tree of fresh patch regions hanging off the
face.  Ends without seams name their patch directly.

Orientation conventions, fixed once and used everywhere: a seam stored as
(a, b) is canonically oriented a -> b; the patch left of the traversal is
the face of a, the patch right is the face of b, and its label runs from
the right patch to the left patch.  Outgoing ends read their seams in
rotation order oriented into the end; incoming ends read in reversed
rotation order oriented away, which is what makes both cyclic label
sequences compose.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    CyclicMismatch,
    InputNotGenerator,
    InvalidEnd,
    LabelMismatch,
    NotAStrip,
    NotEmbedded,
    ResourceLimit,
)
from .relcat import CyclicChain, generator_set, geometric_compose, is_embedded


@dataclass(frozen=True)
class GenericMorphism:
    """An abstract 1-morphism label for diagram rewriting without
    relation semantics; transposes pair up by name."""

    name: str
    source: object
    target: object
    flipped: bool = False

    def transpose(self):
        return GenericMorphism(self.name, self.target, self.source, not self.flipped)

    def __repr__(self):
        return f"{self.name}^T" if self.flipped else self.name


class QuiltSurface:
    """Rotation-system presentation of a quilted surface.

    ends: mapping end id -> tuple of seam-end ids in counterclockwise order
    outgoing: the one outgoing end id
    seams: mapping seam id -> (seam-end, seam-end)
    circle_seams: mapping circle id -> (patch_minus, patch_plus)
    end_patch: patch assignment for ends with no seam-ends
    """

    def __init__(self, ends, outgoing, seams, circle_seams=None, end_patch=None):
        self.ends = {e: tuple(order) for e, order in ends.items()}
        self.outgoing = outgoing
        self.seams = {s: tuple(pair) for s, pair in seams.items()}
        self.circle_seams = dict(circle_seams or {})
        self.end_patch = dict(end_patch or {})
        self._analysis = None

    # -- structural analysis -------------------------------------------

    def analyze(self):
        """Check well-formedness; returns (report, data).  Report entries
        are dicts with check/status/detail; data holds the derived maps
        when the structure is sound enough to compute them."""
        if self._analysis is not None:
            return self._analysis
        report = []

        def check(name, ok, detail=None):
            entry = {"check": name, "status": "pass" if ok else "fail"}
            if detail is not None:
                entry["detail"] = detail
            report.append(entry)
            return ok

        owner = {}
        duplicates = []
        for e, order in self.ends.items():
            for idx, h in enumerate(order):
                if h in owner:
                    duplicates.append((h, owner[h][0], e))
                owner[h] = (e, idx)
        check("seam-ends attached once", not duplicates, duplicates or None)

        alpha = {}
        bad_seams = []
        for s, pair in self.seams.items():
            if len(pair) != 2 or pair[0] == pair[1]:
                bad_seams.append(s)
                continue
            a, b = pair
            if a not in owner or b not in owner:
                bad_seams.append(s)
                continue
            alpha[a] = b
            alpha[b] = a
        check("interval seams pair two attached seam-ends", not bad_seams, bad_seams or None)
        dangling = sorted(set(owner) - set(alpha), key=repr)
        check("every seam-end belongs to a seam", not dangling, dangling or None)

        outgoing_ok = self.outgoing in self.ends
        check("exactly one outgoing end", outgoing_ok, self.outgoing)

        if duplicates or bad_seams or dangling or not outgoing_ok:
            self._analysis = (report, None)
            return self._analysis

        # face tracing: orbits of sigma o alpha
        def sigma(h):
            e, idx = owner[h]
            order = self.ends[e]
            return order[(idx + 1) % len(order)]

        face_of = {}
        faces = {}
        for h in sorted(owner, key=repr):
            if h in face_of:
                continue
            fid = f"f{len(faces)}"
            orbit = []
            cur = h
            while cur not in face_of:
                face_of[cur] = fid
                orbit.append(cur)
                cur = sigma(alpha[cur])
            faces[fid] = tuple(orbit)
        if not faces:
            faces = {"f0": ()}

        # connectivity of the seamed-end graph (bare ends are exempt)
        seamed = [e for e, order in self.ends.items() if order]
        if seamed:
            reach = {seamed[0]}
            frontier = [seamed[0]]
            while frontier:
                e = frontier.pop()
                for h in self.ends[e]:
                    e2 = owner[alpha[h]][0]
                    if e2 not in reach:
                        reach.add(e2)
                        frontier.append(e2)
            check(
                "seamed ends form one connected component",
                set(seamed) <= reach,
                sorted(set(seamed) - reach, key=repr) or None,
            )

        n_half = len(owner)
        V = len(seamed)
        E = n_half // 2
        F = len(faces)
        if seamed:
            euler = V - E + F
        else:
            euler = 2  # bare sphere
        genus_ok = euler % 2 == 0 and euler <= 2
        genus = (2 - euler) // 2
        check("euler characteristic admits a genus", genus_ok, euler)

        # circle seams: per traced face, fresh regions must form a tree
        patch_face = {fid: fid for fid in faces}
        circle_ok = True
        adjacency = {}
        for cid, (pm, pp) in self.circle_seams.items():
            adjacency.setdefault(pm, []).append((cid, pp))
            adjacency.setdefault(pp, []).append((cid, pm))
        fresh = [p for p in adjacency if p not in faces]
        seen_fresh = set()
        for fid in faces:
            if fid not in adjacency:
                continue
            # BFS the component of this face through circle seams
            comp = {fid}
            frontier = [fid]
            edges_used = 0
            while frontier:
                p = frontier.pop()
                for cid, q in adjacency.get(p, ()):
                    edges_used += 1
                    if q not in comp:
                        comp.add(q)
                        frontier.append(q)
            edges_used //= 2
            inner = comp - {fid}
            seen_fresh |= inner
            if comp & set(faces) != {fid} or edges_used != len(inner):
                circle_ok = False
            for p in inner:
                patch_face[p] = fid
        if set(fresh) - seen_fresh:
            circle_ok = False
        check(
            "circle seams form trees of regions inside faces",
            circle_ok,
            None if circle_ok else sorted(fresh, key=repr),
        )

        patches = tuple(sorted(patch_face, key=repr))

        bare_ok = True
        bare_detail = []
        for e, order in self.ends.items():
            if order:
                continue
            if e in self.end_patch:
                if self.end_patch[e] not in patch_face:
                    bare_ok = False
                    bare_detail.append(e)
            elif len(patches) == 1:
                self.end_patch[e] = patches[0]
            else:
                bare_ok = False
                bare_detail.append(e)
        check("ends without seams name their patch", bare_ok, bare_detail or None)

        data = {
            "owner": owner,
            "alpha": alpha,
            "sigma": sigma,
            "face_of": face_of,
            "faces": faces,
            "patches": patches,
            "patch_face": patch_face,
            "euler": euler,
            "genus": genus,
        }
        self._core = data
        ok = all(entry["status"] == "pass" for entry in report)
        self._analysis = (report, data if ok else None)
        return self._analysis

    def data(self):
        report, data = self.analyze()
        if data is None:
            bad = [e for e in report if e["status"] == "fail"]
            raise InvalidEnd(f"malformed quilt surface: {bad}", witness=bad)
        return data

    def core_data(self):
        """Traced structure (faces, owners, alpha) even when the circle or
        bare-end bookkeeping is not settled yet; raises only when the
        rotation system itself is malformed."""
        report, data = self.analyze()
        core = getattr(self, "_core", None)
        if core is None:
            bad = [e for e in report if e["status"] == "fail"]
            raise InvalidEnd(f"malformed quilt surface: {bad}", witness=bad)
        return core

    # -- seam geometry ---------------------------------------------------

    def seam_sides(self, s):
        """(patch_minus, patch_plus) for the stored orientation of s."""
        if s in self.circle_seams:
            return self.circle_seams[s]
        d = self.data()
        a, b = self.seams[s]
        return d["face_of"][b], d["face_of"][a]

    def incoming_ends(self):
        return tuple(sorted((e for e in self.ends if e != self.outgoing), key=repr))

    def end_sequence(self, e):
        """The cyclic sequence of (seam, oriented_with_stored) at an end.

        Entries are (seam_id, +1) when the sequence orientation agrees
        with the stored orientation, (seam_id, -1) otherwise; outgoing
        ends are read in rotation order oriented into the end, incoming
        ends in reversed order oriented away from it.
        """
        if e not in self.ends:
            raise InvalidEnd(f"no end {e!r}", witness=e)
        d = self.data()
        owner = d["owner"]
        seam_of = {}
        for s, (a, b) in self.seams.items():
            seam_of[a] = (s, 0)
            seam_of[b] = (s, 1)
        out = []
        order = self.ends[e]
        if e == self.outgoing:
            for h in order:
                s, pos = seam_of[h]
                # oriented into the end: head at h, i.e. stored when h == b
                out.append((s, +1 if pos == 1 else -1))
        else:
            for h in reversed(order):
                s, pos = seam_of[h]
                # oriented away: tail at h, i.e. stored when h == a
                out.append((s, +1 if pos == 0 else -1))
        return tuple(out)

    def end_nodes(self, e):
        """Patch at each node of the end's cyclic sequence: node i is the
        source patch of the i-th oriented seam."""
        seq = self.end_sequence(e)
        nodes = []
        for s, direction in seq:
            pm, pp = self.seam_sides(s)
            nodes.append(pm if direction == +1 else pp)
        if not seq:
            nodes = [self.end_patch[e]]
        return tuple(nodes)


class QuiltDiagram:
    """A quilt surface with object labels on patches and 1-morphism labels
    on seams.  Each seam stores the label of its canonical orientation;
    the opposite orientation carries the transpose."""

    def __init__(self, surface: QuiltSurface, patch_labels, seam_labels):
        self.surface = surface
        self.patch_labels = dict(patch_labels)
        self.seam_labels = dict(seam_labels)

    def label(self, s, direction=+1):
        lab = self.seam_labels[s]
        return lab if direction == +1 else lab.transpose()

    def relation_mode(self):
        return all(hasattr(l, "pairs") for l in self.seam_labels.values())

    def validate(self):
        """Full report: surface structure plus label typing."""
        report, data = self.surface.analyze()
        report = list(report)
        if data is None:
            return report

        def check(name, ok, detail=None):
            entry = {"check": name, "status": "pass" if ok else "fail"}
            if detail is not None:
                entry["detail"] = detail
            report.append(entry)

        missing = [p for p in data["patches"] if p not in self.patch_labels]
        check("patches labeled by objects", not missing, missing or None)
        all_seams = set(self.surface.seams) | set(self.surface.circle_seams)
        missing = sorted(all_seams - set(self.seam_labels), key=repr)
        check("seams labeled by 1-morphisms", not missing, missing or None)
        if any(entry["status"] == "fail" for entry in report):
            return report

        mistyped = []
        for s in sorted(all_seams, key=repr):
            pm, pp = self.surface.seam_sides(s)
            lab = self.seam_labels[s]
            if lab.source != self.patch_labels[pm] or lab.target != self.patch_labels[pp]:
                mistyped.append(s)
        check("seam labels run from P- to P+", not mistyped, mistyped or None)

        bad_ends = []
        for e in self.surface.ends:
            try:
                self.end_cyclic_chain(e)
            except Exception:
                bad_ends.append(e)
        check("end sequences compose cyclically", not bad_ends, bad_ends or None)

        check("euler characteristic", True, data["euler"])
        check("genus", True, data["genus"])
        check("patch count", True, len(data["patches"]))
        return report

    def is_valid(self):
        return all(e["status"] == "pass" for e in self.validate())

    def end_labels(self, e):
        """Oriented labels along the end's cyclic sequence."""
        seq = self.surface.end_sequence(e)
        if not seq:
            lab = self.patch_labels[self.surface.end_patch[e]]
            return (_unit_label(lab),)
        return tuple(self.label(s, d) for s, d in seq)

    def end_cyclic_chain(self, e):
        """The cyclic chain of relations at an end (relation mode)."""
        return CyclicChain(self.end_labels(e))

    def __repr__(self):
        d = self.surface.analyze()[1]
        n = len(d["patches"]) if d else "?"
        return f"QuiltDiagram({len(self.surface.ends)} ends, {n} patches)"


def _unit_label(obj):
    """Weak unit at an object: the diagonal in relation mode."""
    from .repvar import RepVariety, diagonal_relation

    if isinstance(obj, RepVariety):
        return diagonal_relation(obj)
    return GenericMorphism(f"1_{obj}", obj, obj)


def quilt_validate(q: QuiltDiagram):
    return q.validate()


def end_cyclic_morphism(q: QuiltDiagram, e):
    return q.end_cyclic_chain(e)


# -- evaluation ----------------------------------------------------------------


def quilt_evaluate(q: QuiltDiagram, inputs, budget=None):
    """The quilted composition map: assignments of one point per patch
    satisfying every seam relation, filtered by the given generator tuple
    at each incoming end, restricted to the outgoing end.

    inputs: mapping incoming end id -> generator tuple (in the order of
    the end's cyclic sequence).  Returns the set of outgoing tuples.
    """
    if not q.relation_mode():
        raise LabelMismatch("evaluation needs relation labels")
    surface = q.surface
    data = surface.data()
    patches = data["patches"]
    incoming = surface.incoming_ends()
    if set(inputs) != set(incoming):
        raise InputNotGenerator(
            f"inputs must cover exactly the incoming ends {incoming}",
            witness=sorted(set(inputs) ^ set(incoming), key=repr),
        )

    # pin patch points from the input tuples, rejecting inconsistent pins
    pinned = {}
    for e in incoming:
        nodes = surface.end_nodes(e)
        tup = tuple(inputs[e])
        if len(tup) != len(nodes):
            raise InputNotGenerator(
                f"input at {e!r} has length {len(tup)}, end has {len(nodes)} nodes",
                witness=e,
            )
        gens = generator_set(q.end_cyclic_chain(e))
        if tup not in gens:
            raise InputNotGenerator(
                f"input at {e!r} is not a generator of the end", witness=(e, tup)
            )
        for p, x in zip(nodes, tup):
            if p in pinned and pinned[p] != x:
                return set()
            pinned[p] = x

    constraints = []
    for s in sorted(set(surface.seams) | set(surface.circle_seams), key=repr):
        pm, pp = surface.seam_sides(s)
        constraints.append((pm, pp, q.seam_labels[s]))

    if budget is not None:
        est = 1
        for p in patches:
            est *= max(len(self_points(q, p)), 1)
        if est > budget:
            raise ResourceLimit(f"assignment space of size {est}", witness=est)

    order = sorted(patches, key=lambda p: (p not in pinned, repr(p)))
    by_patch = {p: i for i, p in enumerate(order)}
    cons_by_latest = [[] for _ in order]
    for pm, pp, lab in constraints:
        latest = max(by_patch[pm], by_patch[pp])
        cons_by_latest[latest].append((by_patch[pm], by_patch[pp], lab))

    out_nodes = surface.end_nodes(surface.outgoing)
    results = set()

    def rec(i, assign):
        if i == len(order):
            results.add(tuple(assign[by_patch[p]] for p in out_nodes))
            return
        p = order[i]
        candidates = (pinned[p],) if p in pinned else self_points(q, p)
        for x in candidates:
            assign.append(x)
            ok = True
            for im, ip, lab in cons_by_latest[i]:
                if (assign[im], assign[ip]) not in lab.pairs:
                    ok = False
                    break
            if ok:
                rec(i + 1, assign)
            assign.pop()

    rec(0, [])
    return results


def self_points(q: QuiltDiagram, patch):
    return q.patch_labels[patch].points


def identity_alignment(q: QuiltDiagram, e_in):
    """For diagrams whose incoming and outgoing nodes visit the same
    patches exactly once each (cylinders, zigzags): the index map sending
    an input tuple to the output tuple of the identity composition map."""
    in_nodes = q.surface.end_nodes(e_in)
    out_nodes = q.surface.end_nodes(q.surface.outgoing)
    if len(set(in_nodes)) != len(in_nodes) or set(in_nodes) != set(out_nodes):
        raise InvalidEnd(
            "ends do not visit the same patches bijectively",
            witness=(in_nodes, out_nodes),
        )
    idx = {p: i for i, p in enumerate(in_nodes)}
    return tuple(idx[p] for p in out_nodes)


def evaluates_to_identity(q: QuiltDiagram, e_in):
    """Check the composition map is the patch-aligned identity."""
    align = identity_alignment(q, e_in)
    gens = generator_set(q.end_cyclic_chain(e_in))
    for t in gens.tuples:
        expected = tuple(t[i] for i in align)
        if quilt_evaluate(q, {e_in: t}) != {expected}:
            return False
    return True


def evaluation_map(q: QuiltDiagram, budget=None):
    """The full map: input combination -> output set, as a dict keyed by
    tuples of (end, generator tuple) pairs in sorted end order."""
    surface = q.surface
    incoming = surface.incoming_ends()
    spaces = []
    for e in incoming:
        gens = generator_set(q.end_cyclic_chain(e))
        spaces.append([(e, t) for t in gens.tuples])
    table = {}
    for combo in itertools.product(*spaces) if spaces else [()]:
        inputs = {e: t for e, t in combo}
        table[combo] = frozenset(quilt_evaluate(q, inputs, budget=budget))
    return table


# -- gluing --------------------------------------------------------------------


def _sequence_signature(q: QuiltDiagram, e):
    labels = q.end_labels(e)
    nodes_objs = tuple(
        q.patch_labels[p] for p in q.surface.end_nodes(e)
    )
    return labels, nodes_objs


def quilt_glue(q1: QuiltDiagram, q2: QuiltDiagram, e):
    """Glue the outgoing end of q1 into the incoming end e of q2.

    The cyclic sequences must match up to rotation (labels and objects);
    the matched seams are welded pairwise and the corner patches
    identified.
    """
    if e not in q2.surface.ends or e == q2.surface.outgoing:
        raise InvalidEnd(f"{e!r} is not an incoming end of the second diagram")
    labels1, objs1 = _sequence_signature(q1, q1.surface.outgoing)
    labels2, objs2 = _sequence_signature(q2, e)
    k = len(labels1)
    if len(labels2) != k:
        raise CyclicMismatch(
            f"end valences differ: {k} vs {len(labels2)}", witness=(k, len(labels2))
        )
    offset = None
    seq1_bare = not q1.surface.end_sequence(q1.surface.outgoing)
    for r in range(max(k, 1)):
        rot_labels = labels2[r:] + labels2[:r]
        rot_objs = objs2[r:] + objs2[:r]
        if rot_labels == labels1 and rot_objs == objs1:
            offset = r
            break
    if offset is None:
        first_bad = next(
            (i for i in range(k) if labels2[i] != labels1[i]), 0
        )
        raise CyclicMismatch(
            "end sequences do not match under any rotation",
            witness={"position": first_bad, "left": repr(labels1), "right": repr(labels2)},
        )

    s1 = q1.surface
    s2 = q2.surface

    def tag1(x):
        return ("L", x)

    def tag2(x):
        return ("R", x)

    d1, d2 = s1.data(), s2.data()

    # node-patch identification along the glued ends
    nodes1 = s1.end_nodes(s1.outgoing)
    nodes2 = s2.end_nodes(e)
    ident = {}  # tagged patch -> representative tagged patch

    def find(x):
        while ident.get(x, x) != x:
            x = ident[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            ident[ry] = rx

    for i in range(len(nodes1)):
        union(tag1(nodes1[i]), tag2(nodes2[(i + offset) % len(nodes2)]))

    if seq1_bare:
        # bare-into-bare gluing: only the patch identification happens
        pass

    # weld seams across the junction
    seq1 = s1.end_sequence(s1.outgoing)
    seq2 = s2.end_sequence(e)
    half1 = list(s1.ends[s1.outgoing])
    half2_rev = list(reversed(s2.ends[e]))  # incoming sequence order
    junction = {}
    for i in range(len(half1)):
        h1 = half1[i]
        h2 = half2_rev[(i + offset) % len(half2_rev)]
        junction[tag1(h1)] = tag2(h2)
        junction[tag2(h2)] = tag1(h1)

    alpha = {}
    for s, (a, b) in s1.seams.items():
        alpha[tag1(a)] = tag1(b)
        alpha[tag1(b)] = tag1(a)
    for s, (a, b) in s2.seams.items():
        alpha[tag2(a)] = tag2(b)
        alpha[tag2(b)] = tag2(a)

    # directed labels into each half-edge, for rebuilding welded labels
    directed = {}
    for q, tag, s_obj in ((q1, tag1, s1), (q2, tag2, s2)):
        for s, (a, b) in s_obj.seams.items():
            directed[tag(b)] = q.seam_labels[s]
            directed[tag(a)] = q.seam_labels[s].transpose()

    new_ends = {}
    for end_id, order in s1.ends.items():
        if end_id == s1.outgoing:
            continue
        new_ends[tag1(end_id)] = tuple(tag1(h) for h in order)
    for end_id, order in s2.ends.items():
        if end_id == e:
            continue
        new_ends[tag2(end_id)] = tuple(tag2(h) for h in order)

    surviving = {h for order in new_ends.values() for h in order}
    new_seams = {}
    new_labels = {}
    visited = set()
    idx = 0
    for h in sorted(surviving, key=repr):
        if h in visited:
            continue
        # follow alpha across junctions until landing on a surviving half-edge
        cur = alpha[h]
        while cur not in surviving:
            visited.add(cur)
            visited.add(junction[cur])
            cur = alpha[junction[cur]]
        if cur == h and h in visited:
            continue
        sid = ("s", idx)
        idx += 1
        new_seams[sid] = (h, cur)
        visited.add(h)
        visited.add(cur)
        new_labels[sid] = directed[cur]

    # matched loops can weld into closed curves that touch no surviving
    # seam-end; those become circle seams between the adjacent regions
    welded_circles = {}
    welded_circle_labels = {}
    for h in sorted(junction, key=repr):
        if h in visited:
            continue
        cycle = []
        cur = h
        while cur not in visited:
            visited.add(cur)
            visited.add(junction[cur])
            cycle.append(cur)
            cur = alpha[junction[cur]]
        if not cycle:
            continue
        side, raw = h
        if side == "L":
            face_of = d1["face_of"]
            seam_pairs = s1.seams
            labels_of = q1
        else:
            face_of = d2["face_of"]
            seam_pairs = s2.seams
            labels_of = q2
        seam_id = next(
            sid for sid, (a, b) in seam_pairs.items() if raw in (a, b)
        )
        a, b = seam_pairs[seam_id]
        cid = ("wc", idx)
        idx += 1
        tag = tag1 if side == "L" else tag2
        welded_circles[cid] = (find(tag(face_of[b])), find(tag(face_of[a])))
        welded_circle_labels[cid] = labels_of.seam_labels[seam_id]

    # patch labels and circle seams through the identification
    def mapped(tagged):
        return find(tagged)

    patch_labels = {}
    for p, lab in q1.patch_labels.items():
        patch_labels[mapped(tag1(p))] = lab
    for p, lab in q2.patch_labels.items():
        rep = mapped(tag2(p))
        if rep in patch_labels and patch_labels[rep] != lab:
            raise LabelMismatch(
                "glued patches carry different objects", witness=(p, repr(lab))
            )
        patch_labels[rep] = lab

    circle_seams = dict(welded_circles)
    circle_labels = dict(welded_circle_labels)
    for q, tag, s_obj in ((q1, tag1, s1), (q2, tag2, s2)):
        for cid, (pm, pp) in s_obj.circle_seams.items():
            circle_seams[tag(cid)] = (mapped(tag(pm)), mapped(tag(pp)))
            circle_labels[tag(cid)] = q.seam_labels[cid]

    end_patch = {}
    for end_id, order in s1.ends.items():
        if end_id != s1.outgoing and not order:
            end_patch[tag1(end_id)] = mapped(tag1(s1.end_patch[end_id]))
    for end_id, order in s2.ends.items():
        if end_id != e and not order:
            end_patch[tag2(end_id)] = mapped(tag2(s2.end_patch[end_id]))

    probe_surface = QuiltSurface(new_ends, tag2(s2.outgoing), new_seams)
    data = probe_surface.core_data()

    # the traced faces of the glued surface are unions of old patches;
    # rebuild patch labels by locating one old half-edge in each new face
    old_patch_of_half = {}
    for h in surviving:
        if h[0] == "L":
            old_patch_of_half[h] = mapped(tag1(d1["face_of"][h[1]]))
        else:
            old_patch_of_half[h] = mapped(tag2(d2["face_of"][h[1]]))
    final_patch_labels = {}
    rename = {}
    for fid, orbit in data["faces"].items():
        if orbit:
            old = old_patch_of_half[orbit[0]]
            final_patch_labels[fid] = patch_labels[old]
            rename[old] = fid
        else:
            # bare sphere face
            any_patch = next(iter(patch_labels))
            final_patch_labels[fid] = patch_labels[any_patch]
            rename[any_patch] = fid
    # circle regions keep their (mapped) ids
    for p, lab in patch_labels.items():
        if p not in rename:
            final_patch_labels[p] = lab
    fixed_circles = {
        cid: (rename.get(pm, pm), rename.get(pp, pp))
        for cid, (pm, pp) in circle_seams.items()
    }
    fixed_end_patch = {
        eid: rename.get(p, p) for eid, p in end_patch.items()
    }
    glued_surface = QuiltSurface(
        new_ends,
        tag2(s2.outgoing),
        new_seams,
        circle_seams=fixed_circles,
        end_patch=fixed_end_patch,
    )
    seam_labels = dict(new_labels)
    seam_labels.update(circle_labels)
    out = QuiltDiagram(glued_surface, final_patch_labels, seam_labels)
    if not out.is_valid():
        raise CyclicMismatch(
            "gluing produced an invalid diagram", witness=out.validate()
        )
    out.glue_offset = offset
    out.glue_end = e
    return out


# -- strip and annulus shrinking ------------------------------------------------


def shrink_strip(q: QuiltDiagram, p):
    """Remove a two-seam strip or annulus patch, merging its boundary
    seams into one labeled with the (embedded) geometric composition."""
    surface = q.surface
    data = surface.data()
    if p in data["faces"]:
        orbit = data["faces"][p]
        if len(orbit) != 2:
            raise NotAStrip(
                f"patch {p!r} has {len(orbit)} boundary seam-sides, need 2",
                witness=p,
            )
        h1, h2 = orbit
        seam_of = {}
        for s, (a, b) in surface.seams.items():
            seam_of[a] = s
            seam_of[b] = s
        s_a, s_b = seam_of[h1], seam_of[h2]
        if s_a == s_b:
            raise NotAStrip(
                f"patch {p!r} is bounded by one seam on both sides", witness=p
            )
        if any(surface.end_patch.get(e) == p for e in surface.ends):
            raise NotAStrip(f"patch {p!r} carries a bare end", witness=p)
        if any(p in sides for sides in surface.circle_seams.values()):
            raise NotAStrip(f"patch {p!r} touches circle seams", witness=p)
        alpha = data["alpha"]
        x, y = alpha[h1], alpha[h2]
        # crossing label from face(x) through the strip to face(y):
        # into h1 runs p -> face(x), so transpose; into h2 runs p -> face(y)
        lab_in = _oriented_label(q, s_a, head=h1).transpose()
        lab_out = _oriented_label(q, s_b, head=h2)
        flag, witness = is_embedded(lab_in, lab_out)
        if not flag:
            raise NotEmbedded(
                "strip labels do not compose embeddedly", witness=witness
            )
        composed = geometric_compose(lab_in, lab_out)

        new_ends = {}
        for e, order in surface.ends.items():
            new_ends[e] = tuple(h for h in order if h not in (h1, h2))
        new_seams = {
            s: pair for s, pair in surface.seams.items() if s not in (s_a, s_b)
        }
        sid = ("merge", s_a, s_b)
        new_seams[sid] = (y, x)
        new_surface = QuiltSurface(
            new_ends,
            surface.outgoing,
            new_seams,
            circle_seams=dict(surface.circle_seams),
            end_patch=dict(surface.end_patch),
        )
        new_data = new_surface.data()
        # rebuild patch labels by sampling a half-edge per face
        patch_labels = {}
        rename = {}
        for fid, orbit2 in new_data["faces"].items():
            if orbit2:
                old_face = data["face_of"][orbit2[0]]
                patch_labels[fid] = q.patch_labels[old_face]
                rename[old_face] = fid
        for old_p, lab in q.patch_labels.items():
            if old_p != p and old_p not in rename and old_p not in patch_labels:
                patch_labels[old_p] = lab
        seam_labels = {
            s: lab for s, lab in q.seam_labels.items() if s not in (s_a, s_b)
        }
        seam_labels[sid] = composed
        fixed_circles = {
            cid: (rename.get(pm, pm), rename.get(pp, pp))
            for cid, (pm, pp) in surface.circle_seams.items()
        }
        fixed_end_patch = {
            eid: rename.get(pt, pt) for eid, pt in surface.end_patch.items()
        }
        new_surface = QuiltSurface(
            new_ends,
            surface.outgoing,
            new_seams,
            circle_seams=fixed_circles,
            end_patch=fixed_end_patch,
        )
        out = QuiltDiagram(new_surface, patch_labels, seam_labels)
        if not out.is_valid():
            raise NotAStrip(
                "shrinking produced an invalid diagram", witness=out.validate()
            )
        return out

    # annulus bounded by two circle seams
    touching = [
        cid for cid, sides in surface.circle_seams.items() if p in sides
    ]
    if len(touching) != 2:
        raise NotAStrip(
            f"patch {p!r} touches {len(touching)} circle seams, need 2", witness=p
        )
    if any(surface.end_patch.get(e) == p for e in surface.ends):
        raise NotAStrip(f"patch {p!r} carries a bare end", witness=p)
    c1, c2 = sorted(touching, key=repr)
    lab1 = q.seam_labels[c1]
    pm1, pp1 = surface.circle_seams[c1]
    if pp1 != p:
        lab1 = lab1.transpose()
        pm1, pp1 = pp1, pm1
    lab2 = q.seam_labels[c2]
    pm2, pp2 = surface.circle_seams[c2]
    if pm2 != p:
        lab2 = lab2.transpose()
        pm2, pp2 = pp2, pm2
    flag, witness = is_embedded(lab1, lab2)
    if not flag:
        raise NotEmbedded("annulus labels do not compose embeddedly", witness=witness)
    composed = geometric_compose(lab1, lab2)
    cid = ("merge", c1, c2)
    circles = {
        c: sides for c, sides in surface.circle_seams.items() if c not in (c1, c2)
    }
    circles[cid] = (pm1, pp2)
    new_surface = QuiltSurface(
        dict(surface.ends),
        surface.outgoing,
        dict(surface.seams),
        circle_seams=circles,
        end_patch=dict(surface.end_patch),
    )
    patch_labels = {k: v for k, v in q.patch_labels.items() if k != p}
    seam_labels = {
        s: lab for s, lab in q.seam_labels.items() if s not in (c1, c2)
    }
    seam_labels[cid] = composed
    out = QuiltDiagram(new_surface, patch_labels, seam_labels)
    if not out.is_valid():
        raise NotAStrip(
            "shrinking produced an invalid diagram", witness=out.validate()
        )
    return out


def _oriented_label(q: QuiltDiagram, s, head=None, tail=None):
    """Label of seam s oriented with the given head (or tail) seam-end."""
    a, b = q.surface.seams[s]
    if head is not None:
        return q.seam_labels[s] if head == b else q.seam_labels[s].transpose()
    return q.seam_labels[s] if tail == a else q.seam_labels[s].transpose()


# -- canonical diagram constructors ----------------------------------------------


def cylinder_diagram(labels):
    """Parallel-seam cylinder: one incoming and one outgoing end joined by
    len(labels) seams; labels[i] is the oriented label of the i-th seam as
    read at the outgoing end."""
    k = len(labels)
    if k == 0:
        raise LabelMismatch("cylinder needs at least one seam")
    ends = {
        "in": tuple(("i", j) for j in range(k)),
        "out": tuple(("o", j) for j in reversed(range(k))),
    }
    seams = {("s", j): (("i", j), ("o", j)) for j in range(k)}
    surface = QuiltSurface(ends, "out", seams)
    data = surface.data()
    # outgoing sequence order and orientation fix the labels
    seq = surface.end_sequence("out")
    seam_labels = {}
    patch_labels = {}
    order = {s: i for i, (s, d) in enumerate(seq)}
    for s, d in seq:
        lab = labels[order[s]]
        seam_labels[s] = lab if d == +1 else lab.transpose()
    for i, (s, d) in enumerate(seq):
        pm, pp = surface.seam_sides(s)
        src = pm if d == +1 else pp
        patch_labels[src] = labels[i].source
    diagram = QuiltDiagram(surface, patch_labels, seam_labels)
    return diagram


def cap_diagram(label):
    """One outgoing end, one seam looping around it; the outgoing cyclic
    sequence reads (label, label^T)."""
    ends = {"out": (("h", 0), ("h", 1))}
    seams = {("s", 0): (("h", 0), ("h", 1))}
    surface = QuiltSurface(ends, "out", seams)
    seq = surface.end_sequence("out")
    # the stored-orientation entry carries the label
    seam_labels = {("s", 0): label}
    pm, pp = surface.seam_sides(("s", 0))
    patch_labels = {pm: label.source, pp: label.target}
    return QuiltDiagram(surface, patch_labels, seam_labels)


def cup_diagram(label):
    return cap_diagram(label.transpose())


def object_cylinder_diagram(obj):
    """Identity on an object: two bare ends separated by one circle seam
    labeled with the weak unit (the diagonal in relation mode)."""
    ends = {"in": (), "out": ()}
    surface = QuiltSurface(
        ends,
        "out",
        {},
        circle_seams={("c", 0): ("f0", "inner")},
        end_patch={"in": "inner", "out": "f0"},
    )
    unit = _unit_label(obj)
    return QuiltDiagram(
        surface, {"f0": obj, "inner": obj}, {("c", 0): unit}
    )


def snake_frame_diagram(label):
    """Three strands: in -> aux, aux -> out, in -> out; gluing a cap into
    the aux end turns it into the two-seam cylinder (the zigzag)."""
    Y = label
    ends = {
        "in": (("i", 0), ("i", 1)),
        "aux": (("a", 0), ("a", 1)),
        "out": (("o", 1), ("o", 0)),
    }
    seams = {
        ("u",): (("i", 0), ("a", 0)),
        ("v",): (("a", 1), ("o", 1)),
        ("w",): (("i", 1), ("o", 0)),
    }
    surface = QuiltSurface(ends, "out", seams)
    # two faces: the exterior (source side of Y) and the snake interior
    pm_u, pp_u = surface.seam_sides(("u",))
    patch_labels = {pp_u: Y.source, pm_u: Y.target}
    labels = {}
    for s in seams:
        pm, pp = surface.seam_sides(s)
        labels[s] = _typed(Y, patch_labels[pm], patch_labels[pp])
    return QuiltDiagram(surface, patch_labels, labels)


def _typed(Y, src_obj, dst_obj):
    if Y.source == src_obj and Y.target == dst_obj:
        return Y
    if Y.target == src_obj and Y.source == dst_obj:
        return Y.transpose()
    raise LabelMismatch(
        f"label does not fit between {src_obj!r} and {dst_obj!r}"
    )


def vertical_composition_diagram(f, g, h):
    """String diagram of vertical composition: two punctures on a strand
    pair, inputs in Mor(f, g) and Mor(g, h), output in Mor(f, h).

    At the relation level the 2-morphism spaces are intersections and the
    induced map is the matched-pair composition."""
    ends = {
        "e1": (("p", 0), ("p", 1)),
        "e2": (("q", 0), ("q", 1)),
        "out": (("r", 1), ("r", 0)),
    }
    seams = {
        ("a",): (("p", 0), ("r", 0)),
        ("b",): (("p", 1), ("q", 0)),
        ("c",): (("q", 1), ("r", 1)),
    }
    surface = QuiltSurface(ends, "out", seams)
    pm, pp = surface.seam_sides(("a",))
    patch_labels = {pm: f.source, pp: f.target}
    if len(set(surface.data()["patches"])) != 2:
        raise LabelMismatch("vertical diagram should have two patches")
    labels = {
        ("a",): _typed(f, *[patch_labels[x] for x in surface.seam_sides(("a",))]),
        ("b",): _typed(g, *[patch_labels[x] for x in surface.seam_sides(("b",))]),
        ("c",): _typed(h, *[patch_labels[x] for x in surface.seam_sides(("c",))]),
    }
    return QuiltDiagram(surface, patch_labels, labels)


def string_diagram(kind, *labels):
    """Canonical fixtures: identity, cap, cup, vertical, horizontal."""
    if kind == "identity":
        (Y,) = labels
        return cylinder_diagram([Y, Y.transpose()])
    if kind == "cap":
        (Y,) = labels
        return cap_diagram(Y)
    if kind == "cup":
        (Y,) = labels
        return cup_diagram(Y)
    if kind == "vertical":
        f, g, h = labels
        return vertical_composition_diagram(f, g, h)
    if kind == "horizontal":
        f, g = labels
        # two cylinders side by side: the 4-seam cylinder on (f, f^T, g, g^T)
        return cylinder_diagram([f, f.transpose(), g, g.transpose()])
    raise LabelMismatch(f"unknown string diagram kind {kind!r}")


# -- diagram isomorphism -----------------------------------------------------------


def diagrams_isomorphic(q1: QuiltDiagram, q2: QuiltDiagram):
    """Backtracking isomorphism of labeled rotation systems preserving the
    outgoing end and all labels (the combinatorial deformation relation)."""
    s1, s2 = q1.surface, q2.surface
    if len(s1.ends) != len(s2.ends) or len(s1.seams) != len(s2.seams):
        return False
    if len(s1.circle_seams) != len(s2.circle_seams):
        return False
    d1, d2 = s1.data(), s2.data()
    ends1 = sorted(s1.ends, key=repr)
    ends2 = sorted(s2.ends, key=repr)

    def end_profile(q, s_obj, e):
        incoming = e != s_obj.outgoing
        return (incoming, len(s_obj.ends[e]))

    def try_map(perm):
        # perm: end of q1 -> (end of q2, rotation)
        half_map = {}
        for e1, (e2, rot) in perm.items():
            o1, o2 = s1.ends[e1], s2.ends[e2]
            for i, h in enumerate(o1):
                half_map[h] = o2[(i + rot) % len(o2)]
        # seams must map to seams with equal labels
        seam_pairs = {}
        for s, (a, b) in s1.seams.items():
            img = (half_map[a], half_map[b])
            hit = None
            direction = None
            for s2id, (a2, b2) in s2.seams.items():
                if (a2, b2) == img:
                    hit, direction = s2id, +1
                elif (b2, a2) == img:
                    hit, direction = s2id, -1
            if hit is None:
                return False
            if q1.seam_labels[s] != q2.label(hit, direction):
                return False
            seam_pairs[s] = hit
        # patch labels must transport
        for h, h2 in half_map.items():
            p1 = d1["face_of"][h]
            p2 = d2["face_of"][h2]
            if q1.patch_labels[p1] != q2.patch_labels[p2]:
                return False
        return True

    def rec(i, perm, used):
        if i == len(ends1):
            return try_map(perm)
        e1 = ends1[i]
        for e2 in ends2:
            if e2 in used:
                continue
            if end_profile(q1, s1, e1) != end_profile(q2, s2, e2):
                continue
            if (e1 == s1.outgoing) != (e2 == s2.outgoing):
                continue
            k = max(len(s1.ends[e1]), 1)
            for rot in range(k):
                perm[e1] = (e2, rot)
                if rec(i + 1, perm, used | {e2}):
                    return True
            del perm[e1]
        return False

    if not s1.circle_seams and not s2.circle_seams:
        return rec(0, {}, set())
    # with circle seams, compare the labeled circle structure separately
    base = rec(0, {}, set())
    if not base:
        return False
    sig1 = sorted(
        (repr(q1.patch_labels[pm]), repr(q1.patch_labels[pp]), repr(q1.seam_labels[c]))
        for c, (pm, pp) in s1.circle_seams.items()
    )
    sig2 = sorted(
        (repr(q2.patch_labels[pm]), repr(q2.patch_labels[pp]), repr(q2.seam_labels[c]))
        for c, (pm, pp) in s2.circle_seams.items()
    )
    return sig1 == sig2


# -- DOT export --------------------------------------------------------------------


def export_dot(q: QuiltDiagram):
    """DOT graph: ends as nodes, seams as labeled edges, one cluster per
    patch listing its object label."""
    surface = q.surface
    data = surface.data()
    lines = ["graph quilt {"]
    owner = data["owner"]
    for i, p in enumerate(data["patches"]):
        lines.append(f'  subgraph cluster_{i} {{')
        lines.append(f'    label="{p}: {q.patch_labels.get(p)!r}";')
        lines.append(f'    "patch_{p}" [shape=point, style=invis];')
        lines.append("  }")
    for e in sorted(surface.ends, key=repr):
        shape = "doublecircle" if e == surface.outgoing else "circle"
        lines.append(f'  "{e}" [shape={shape}];')
    for s, (a, b) in sorted(surface.seams.items(), key=repr):
        e1 = owner[a][0]
        e2 = owner[b][0]
        lines.append(f'  "{e1}" -- "{e2}" [label="{q.seam_labels[s]!r}"];')
    for c, (pm, pp) in sorted(surface.circle_seams.items(), key=repr):
        lines.append(
            f'  "patch_{pm}" -- "patch_{pp}" [style=dashed, '
            f'label="{q.seam_labels[c]!r}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
