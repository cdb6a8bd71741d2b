"""Chain categories, zigzag-chain categories, and the retraction
certificate behind the fiber-square condition on the classification
nerve.

For a relative category (C, W):

* ``chain_category(rc, k)`` is the category A_k of k-chains of C with
  componentwise marked natural transformations; A_0 is the marked
  subcategory itself.
* ``zigzag_chain_category(rc, k)`` is the category B_k whose objects
  replace the first chain step by a five-term zigzag

      c0 --b1--> c1 --x--> c2 <--w-- c3 --y--> c4 --b2--> ... --bk-->

  with x, y, w marked.
* ``insert_identities(rc, k)`` is the embedding A_k -> B_k that fills
  the x, w, y slots with identities; its image is the full subcategory
  A'_k.
* ``build_retraction(pms, k)`` constructs the retraction
  r: B_k -> A'_k together with the zigzag of natural weak equivalences
  connecting i.r with the identity of B_k (four transformations through
  three auxiliary functors) and the two-step zigzag connecting r.i with
  the identity of A'_k, and certifies every single ingredient: every
  transformation component is marked, every naturality square commutes
  against every morphism, and every pushout/pullback witness re-passes
  its universal property.

The composites written with overlines in informal accounts of this
construction are read here as the recorded pushout/pullback legs and
their composites with the displayed maps; the certificate stores that
reading explicitly so it can be audited.
"""

from dataclasses import dataclass, field

from .fincat import (
    FinCategory, Functor, StructuralError, check_functor,
    strict_pullback_category, category_isomorphism,
)
from .relcat import restrict_to_weq
from .pmc import Calculus, CalculusError
from .sset import nerve, pi0, homology, _k_chains_with_objects, _row_transitions
from .hammock import check_saturation


def _tuple_id(parts):
    return "(" + ",".join(parts) + ")"


class DiagramCategory(FinCategory):
    """Category of shaped diagrams in a base category: objects carry an
    (objects, arrows) pair, morphisms a component tuple."""

    def __init__(self, k, objects, rows, identity, comp, diagrams, components):
        super().__init__(objects, rows, identity, comp)
        self.k = k
        self.diagrams = diagrams        # object id -> (objs, arrows)
        self.components = components    # morphism id -> component tuple
        self.morphism_by_parts = {}
        for m in self.morphisms:
            self.morphism_by_parts[(self.src[m], self.tgt[m], components[m])] = m

    def lookup(self, src_id, tgt_id, comps):
        return self.morphism_by_parts.get((src_id, tgt_id, tuple(comps)))


class ChainCategory(DiagramCategory):
    pass


class ZigzagChainCategory(DiagramCategory):
    pass


def _diagram_category(cls, k, rc, shapes, transitions):
    """Assemble a DiagramCategory from enumerated objects and morphisms.

    ``shapes``: list of (objs, arrows); ``transitions``: list of
    (src index, tgt index, component tuple)."""
    obj_ids = []
    diagrams = {}
    for objs, arrows in shapes:
        oid = _tuple_id(arrows) if arrows else objs[0]
        obj_ids.append(oid)
        diagrams[oid] = (objs, arrows)
    rows = []
    identity = {}
    components = {}
    cat = rc.cat
    for a, b, comps in transitions:
        sid, tid = obj_ids[a], obj_ids[b]
        if a == b and all(cat.is_identity(c) for c in comps):
            mid = f"id:{sid}"
            identity[sid] = mid
        else:
            mid = f"{_tuple_id(comps)}:{sid}=>{tid}"
        rows.append((mid, sid, tid))
        components[mid] = tuple(comps)
    src_of = {r[0]: r[1] for r in rows}
    tgt_of = {r[0]: r[2] for r in rows}
    lookup = {(src_of[m], tgt_of[m], c): m for m, c in components.items()}
    by_src = {}
    for m in components:
        by_src.setdefault(src_of[m], []).append(m)
    comp = {}
    for m1, c1 in components.items():
        for m2 in by_src.get(tgt_of[m1], ()):
            c2 = components[m2]
            comp[(m1, m2)] = lookup[
                (src_of[m1], tgt_of[m2], tuple(cat.comp[(x, y)] for x, y in zip(c1, c2)))]
    return cls(k, obj_ids, rows, identity, comp, diagrams, components)


def chain_category(rc, k):
    """The category of k-chains with marked componentwise maps.

    At k = 0 this is literally the marked subcategory (same object and
    morphism ids)."""
    if k < 0:
        raise StructuralError("chain length must be >= 0")
    cat = rc.cat
    if k == 0:
        sub = restrict_to_weq(rc).cat
        diagrams = {o: ((o,), ()) for o in sub.objects}
        components = {m: (m,) for m in sub.morphisms}
        out = ChainCategory.__new__(ChainCategory)
        FinCategory.__init__(out, sub.objects, sub.morphism_rows(), sub.identity, sub.comp)
        out.k = 0
        out.diagrams = diagrams
        out.components = components
        out.morphism_by_parts = {
            (sub.src[m], sub.tgt[m], (m,)): m for m in sub.morphisms}
        return out
    shapes = _k_chains_with_objects(cat, k)
    transitions = _row_transitions(rc, shapes)
    return _diagram_category(ChainCategory, k, rc, shapes, transitions)


def _zigzag_shapes(rc, k):
    """Objects of B_k: arrow tuples (b1, x, w, y, b2..bk) with x, y, w
    marked, plus their object tuples (c0..c_{k+3})."""
    cat = rc.cat
    shapes = []
    for b1 in cat.morphisms:
        c0, c1 = cat.src[b1], cat.tgt[b1]
        for x in (m for m in cat.out_of(c1) if rc.is_weq(m)):
            c2 = cat.tgt[x]
            for w in (m for m in cat.into(c2) if rc.is_weq(m)):
                c3 = cat.src[w]
                for y in (m for m in cat.out_of(c3) if rc.is_weq(m)):
                    c4 = cat.tgt[y]
                    prefix_objs = (c0, c1, c2, c3, c4)
                    prefix_arrows = (b1, x, w, y)
                    stack = [(prefix_objs, prefix_arrows)]
                    for _ in range(k - 1):
                        nxt = []
                        for objs, arrows in stack:
                            for b in cat.out_of(objs[-1]):
                                nxt.append((objs + (cat.tgt[b],), arrows + (b,)))
                        stack = nxt
                    shapes.extend(stack)
    return shapes


def _zigzag_transitions(rc, shapes):
    """Componentwise marked maps between zigzag shapes; the w slot is
    the only backward arrow (position 2 receives it)."""
    cat = rc.cat
    out = []
    for a, (objs1, arrows1) in enumerate(shapes):
        n = len(objs1)
        for b, (objs2, arrows2) in enumerate(shapes):
            found = []

            def extend(i, comps):
                if i == n:
                    found.append(tuple(comps))
                    return
                for m in rc.weq_hom(objs1[i], objs2[i]):
                    if i >= 1:
                        slot = i - 1
                        a1, a2 = arrows1[slot], arrows2[slot]
                        if slot == 2:  # backward arrow: positions 3 -> 2
                            if cat.comp[(a1, comps[2])] != cat.comp[(m, a2)]:
                                continue
                        else:
                            if cat.comp[(a1, m)] != cat.comp[(comps[i - 1], a2)]:
                                continue
                    comps.append(m)
                    extend(i + 1, comps)
                    comps.pop()

            extend(0, [])
            for comps in found:
                out.append((a, b, comps))
    return out


def zigzag_chain_category(rc, k):
    """Complete enumeration of B_k (k >= 2)."""
    if k < 2:
        raise StructuralError("zigzag chain categories need k >= 2")
    shapes = _zigzag_shapes(rc, k)
    transitions = _zigzag_transitions(rc, shapes)
    return _diagram_category(ZigzagChainCategory, k, rc, shapes, transitions)


def insert_identities(rc, k, a_k=None, b_k=None):
    """The embedding h: A_k -> B_k filling x, w, y with identities.

    Injective on objects and morphisms; its image spans the full
    subcategory A'_k (see :func:`embedding_parts` for the bundle)."""
    return embedding_parts(rc, k, a_k, b_k)[0]


def embedding_parts(rc, k, a_k=None, b_k=None):
    """(h, A_k, B_k, A'_k), with A'_k the full subcategory of B_k on the
    image objects (ids preserved)."""
    cat = rc.cat
    if a_k is None:
        a_k = chain_category(rc, k)
    if b_k is None:
        b_k = zigzag_chain_category(rc, k)
    obj_map = {}
    for oid, (objs, arrows) in a_k.diagrams.items():
        c1 = objs[1]
        i1 = cat.identity[c1]
        new_arrows = (arrows[0], i1, i1, i1) + arrows[1:]
        new_objs = (objs[0], c1, c1, c1, c1) + objs[2:]
        target = _tuple_id(new_arrows)
        if target not in b_k.diagrams:
            raise StructuralError(f"image of {oid} missing from B_{k}")
        assert b_k.diagrams[target] == (new_objs, new_arrows)
        obj_map[oid] = target
    mor_map = {}
    for m in a_k.morphisms:
        comps = a_k.components[m]
        new_comps = (comps[0], comps[1], comps[1], comps[1], comps[1]) + comps[2:]
        img = b_k.lookup(obj_map[a_k.src[m]], obj_map[a_k.tgt[m]], new_comps)
        if img is None:
            raise StructuralError(f"image of morphism {m} missing from B_{k}")
        mor_map[m] = img
    h = Functor(a_k, b_k, obj_map, mor_map)
    a_prime = b_k.full_subcategory(sorted(set(obj_map.values()),
                                          key=b_k.objects.index))
    return h, a_k, b_k, a_prime


@dataclass
class TransformationRecord:
    """One natural transformation in the certificate."""

    name: str
    source: str
    target: str
    components: dict              # object id -> component tuple
    unmarked: list = field(default_factory=list)
    missing: list = field(default_factory=list)       # objects whose component is not a morphism
    naturality_failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.unmarked and not self.missing and not self.naturality_failures


@dataclass
class SegalCertificate:
    """Everything build_retraction claims, with its evidence."""

    k: int
    object_rows: dict             # B_k object -> row-by-row instantiation
    transformations: list         # of TransformationRecord
    functor_reports: dict         # name -> ValidationReport
    witnesses: list               # (kind, f, g, apex, leg_f, leg_g, reverified)
    factorizations: dict          # w -> (u, mid, v)
    reading: str
    errors: list = field(default_factory=list)

    @property
    def valid(self):
        return (not self.errors
                and all(t.ok for t in self.transformations)
                and all(r.ok for r in self.functor_reports.values())
                and all(w[-1] for w in self.witnesses))

    def summary(self):
        lines = [f"retraction certificate k={self.k}: "
                 + ("VALID" if self.valid else "INVALID")]
        lines.append(f"  objects instantiated: {len(self.object_rows)}")
        for t in self.transformations:
            total = sum(len(c) for c in t.components.values())
            lines.append(
                f"  {t.name}: {len(t.components)} components ({total} entries), "
                f"{'all marked' if not t.unmarked else f'{len(t.unmarked)} unmarked'}, "
                f"{'natural' if not t.naturality_failures else f'{len(t.naturality_failures)} naturality failures'}")
        for name, rep in self.functor_reports.items():
            lines.append(f"  functor {name}: {'ok' if rep.ok else 'LAW FAILURE'}")
        lines.append(f"  pushout/pullback witnesses re-verified: "
                     f"{sum(1 for w in self.witnesses if w[-1])}/{len(self.witnesses)}")
        lines.append(f"  reading: {self.reading}")
        return "\n".join(lines)

    def to_dict(self, full=False):
        d = {
            "k": self.k,
            "valid": self.valid,
            "transformations": [
                {
                    "name": t.name, "source": t.source, "target": t.target,
                    "components": len(t.components),
                    "unmarked": t.unmarked, "missing": t.missing,
                    "naturality_failures": t.naturality_failures[:20],
                } for t in self.transformations],
            "functors": {n: r.ok for n, r in self.functor_reports.items()},
            "witnesses_reverified": sum(1 for w in self.witnesses if w[-1]),
            "witnesses_total": len(self.witnesses),
            "factorizations": {w: list(f) for w, f in self.factorizations.items()},
            "reading": self.reading,
            "errors": self.errors[:20],
        }
        if full:
            d["object_rows"] = {
                o: {name: {"objects": list(objs), "arrows": list(arrs)}
                    for name, (objs, arrs) in rows.items()}
                for o, rows in self.object_rows.items()}
            d["components"] = {
                t.name: {o: list(c) for o, c in t.components.items()}
                for t in self.transformations}
        return d


def build_retraction(pms, k, parts=None):
    """Construct and certify the retraction of B_k onto A'_k.

    Returns (r, certificate).  ``parts`` may carry a prebuilt
    (h, a_k, b_k, a_prime) tuple to avoid re-enumeration.
    """
    rc = pms.rc
    cat = rc.cat
    calc = Calculus(pms)
    if parts is None:
        parts = embedding_parts(rc, k)
    h, a_k, b_k, a_prime = parts

    errors = []
    witnesses = []
    seen_witness = {}

    def record_pushout(u, f):
        wit = calc.pushout(u, f)
        key = ("pushout", u, f)
        if key not in seen_witness:
            seen_witness[key] = wit
            witnesses.append(("pushout", u, f, wit.apex, wit.leg_f, wit.leg_g,
                              wit.verify(cat, u, f)))
        return wit

    def record_pullback(v, f):
        wit = calc.pullback(v, f)
        key = ("pullback", v, f)
        if key not in seen_witness:
            seen_witness[key] = wit
            witnesses.append(("pullback", v, f, wit.apex, wit.leg_f, wit.leg_g,
                              wit.verify(cat, v, f)))
        return wit

    # -- object-level data ---------------------------------------------------
    # For each object: the four functor values and the transformation
    # components, following the displayed rows:
    #   row1 = identity  -phi1->  row2 = T1  <-phi2-  row3 = T2
    #   row3 = T2        -phi3->  row4 = T3  <-phi4-  row5 = i.r
    data = {}
    object_rows = {}
    factorizations = {}
    for oid in b_k.objects:
        objs, arrows = b_k.diagrams[oid]
        b1, x, w, y = arrows[0], arrows[1], arrows[2], arrows[3]
        bs = arrows[4:]
        c = objs
        xb1 = cat.comp[(b1, x)]
        b2y = cat.comp[(y, bs[0])] if bs else None
        u1, m1_obj, v1 = calc.factor(w)
        factorizations.setdefault(w, (u1, m1_obj, v1))

        t1_arrows = (xb1, cat.identity[c[2]], w, y) + bs
        t1_objs = (c[0], c[2], c[2], c[3], c[4]) + c[5:]
        t2_arrows = (xb1, cat.identity[c[2]], w, cat.identity[c[3]],
                     b2y) + bs[1:]
        t2_objs = (c[0], c[2], c[2], c[3], c[3]) + c[5:]

        # iterated pushouts along the u's
        mids = [m1_obj]
        us = [u1]
        bars = []
        t2_tail = (b2y,) + bs[1:]
        for j, arrow in enumerate(t2_tail):
            wit = record_pushout(us[-1], arrow)
            bars.append(wit.leg_f)      # M_j -> M_{j+1}
            us.append(wit.leg_g)        # next u
            mids.append(wit.apex)
        t3_arrows = (xb1, cat.identity[c[2]], v1, cat.identity[m1_obj]) + tuple(bars)
        t3_objs = (c[0], c[2], c[2], m1_obj, m1_obj) + tuple(mids[1:])

        pb = record_pullback(v1, xb1)
        bar_xb1 = pb.leg_f              # P -> M1
        bar_v1 = pb.leg_g               # P -> c0
        p_obj = pb.apex
        r_arrows = (bar_xb1, cat.identity[m1_obj], cat.identity[m1_obj],
                    cat.identity[m1_obj]) + tuple(bars)
        r_objs = (p_obj, m1_obj, m1_obj, m1_obj, m1_obj) + tuple(mids[1:])

        ident = cat.identity
        data[oid] = {
            "t1": (t1_objs, t1_arrows),
            "t2": (t2_objs, t2_arrows),
            "t3": (t3_objs, t3_arrows),
            "r": (r_objs, r_arrows),
            "chain": (r_arrows[0],) + tuple(bars),
            "us": us, "mids": mids, "bars": bars,
            "u1": u1, "v1": v1, "m1": m1_obj,
            "bar_xb1": bar_xb1, "bar_v1": bar_v1,
            "phi1": (ident[c[0]], x, ident[c[2]], ident[c[3]], ident[c[4]]) + tuple(ident[o] for o in c[5:]),
            "phi2": (ident[c[0]], ident[c[2]], ident[c[2]], ident[c[3]], y) + tuple(ident[o] for o in c[5:]),
            "phi3": (ident[c[0]], ident[c[2]], ident[c[2]], u1, u1) + tuple(us[1:]),
            "phi4": (bar_v1, v1, v1, ident[m1_obj], ident[m1_obj]) + tuple(ident[o] for o in mids[1:]),
        }
        object_rows[oid] = {
            "row1:identity": (objs, arrows),
            "row2:compose-x": (t1_objs, t1_arrows),
            "row3:compose-y": (t2_objs, t2_arrows),
            "row4:factor-and-push": (t3_objs, t3_arrows),
            "row5:retract": (r_objs, r_arrows),
        }

    # -- functors on objects ---------------------------------------------------
    def functor_obj(name):
        out = {}
        for oid in b_k.objects:
            objs, arrows = data[oid][name]
            tid = _tuple_id(arrows)
            if tid not in b_k.diagrams:
                errors.append(f"{name}({oid}) is not an object of B_{k}")
            out[oid] = tid
        return out

    t1_obj = functor_obj("t1")
    t2_obj = functor_obj("t2")
    t3_obj = functor_obj("t3")
    r_obj = functor_obj("r")
    if errors:
        cert = SegalCertificate(k, object_rows, [], {}, witnesses,
                                factorizations, _READING, errors)
        return None, cert

    # -- functors on morphisms ---------------------------------------------------
    def comparison_from_cocone(wit, apex2, leg_m, leg_c):
        comp_map = dict(wit.comparisons)
        got = comp_map.get((apex2, leg_m, leg_c))
        if got is None:
            raise CalculusError("pushout comparison missing for recorded cocone")
        return got

    t1_mor, t2_mor, t3_mor, r_mor = {}, {}, {}, {}
    for m in b_k.morphisms:
        comps = b_k.components[m]
        src_o, tgt_o = b_k.src[m], b_k.tgt[m]
        d_s, d_t = data[src_o], data[tgt_o]
        t1_comps = (comps[0], comps[2], comps[2], comps[3], comps[4]) + comps[5:]
        t2_comps = (comps[0], comps[2], comps[2], comps[3], comps[3]) + comps[5:]
        w_s = b_k.diagrams[src_o][1][2]
        w_t = b_k.diagrams[tgt_o][1][2]
        square = (w_s, w_t, comps[3], comps[2])
        try:
            mu = [calc.middle(square)]
            # comparisons into the pushout tower of the target
            src_tail_arrows = d_s["t2"][1][4:]
            for j in range(len(src_tail_arrows)):
                wit_s = seen_witness[("pushout", d_s["us"][j], src_tail_arrows[j])]
                leg_m = cat.comp[(mu[-1], d_t["bars"][j])]
                leg_c = cat.comp[(comps[5 + j], d_t["us"][j + 1])]
                mu.append(comparison_from_cocone(wit_s, d_t["mids"][j + 1], leg_m, leg_c))
        except (CalculusError, KeyError) as e:
            errors.append(f"comparison data missing for morphism {m}: {e}")
            continue
        # express the source pullback cone as a competitor of the target one
        wit_t = seen_witness[("pullback", d_t["v1"], d_t["t1"][1][0])]
        comp_map_t = dict(wit_t.comparisons)
        leg_m1 = cat.comp[(d_s["bar_xb1"], mu[0])]
        leg_c0 = cat.comp[(d_s["bar_v1"], comps[0])]
        pi = comp_map_t.get((d_s["r"][0][0], leg_m1, leg_c0))
        if pi is None:
            errors.append(f"pullback comparison missing for morphism {m}")
            continue
        t1_mor[m] = b_k.lookup(t1_obj[src_o], t1_obj[tgt_o], t1_comps)
        t2_mor[m] = b_k.lookup(t2_obj[src_o], t2_obj[tgt_o], t2_comps)
        t3_comps = (comps[0], comps[2], comps[2], mu[0], mu[0]) + tuple(mu[1:])
        t3_mor[m] = b_k.lookup(t3_obj[src_o], t3_obj[tgt_o], t3_comps)
        r_comps = (pi, mu[0], mu[0], mu[0], mu[0]) + tuple(mu[1:])
        r_mor[m] = b_k.lookup(r_obj[src_o], r_obj[tgt_o], r_comps)
        for name, val in (("t1", t1_mor[m]), ("t2", t2_mor[m]),
                          ("t3", t3_mor[m]), ("r", r_mor[m])):
            if val is None:
                errors.append(
                    f"{name}({m}) has no matching morphism in B_{k} "
                    "(a component is unmarked or a square fails)")

    if errors:
        cert = SegalCertificate(k, object_rows, [], {}, witnesses,
                                factorizations, _READING, errors)
        return None, cert

    t1_f = Functor(b_k, b_k, t1_obj, t1_mor)
    t2_f = Functor(b_k, b_k, t2_obj, t2_mor)
    t3_f = Functor(b_k, b_k, t3_obj, t3_mor)
    r_f = Functor(b_k, a_prime, r_obj, r_mor)

    functor_reports = {
        "h": check_functor(h),
        "r": check_functor(r_f),
        "T1": check_functor(t1_f),
        "T2": check_functor(t2_f),
        "T3": check_functor(t3_f),
    }

    # -- transformations and naturality -----------------------------------------
    identity_f = Functor.identity(b_k)
    ir_obj = {o: r_obj[o] for o in b_k.objects}
    ir_mor = {m: r_mor[m] for m in b_k.morphisms}
    ir_f = Functor(b_k, b_k, ir_obj, ir_mor)

    def make_record(name, src_f, tgt_f, comp_table):
        rec = TransformationRecord(name, src_f, tgt_f, dict(comp_table))
        for oid, comps in comp_table.items():
            for c in comps:
                if not rc.is_weq(c):
                    rec.unmarked.append((oid, c))
        return rec

    def check_naturality(rec, src_functor, tgt_functor, comp_table,
                         domain_morphisms):
        for m in domain_morphisms:
            src_o = b_k.src[m]
            tgt_o = b_k.tgt[m]
            f_m = b_k.components[src_functor.mor_map[m]]
            g_m = b_k.components[tgt_functor.mor_map[m]]
            left = comp_table[src_o]
            right = comp_table[tgt_o]
            for i in range(len(f_m)):
                if cat.comp[(left[i], g_m[i])] != cat.comp[(f_m[i], right[i])]:
                    rec.naturality_failures.append((m, i))
                    break

    phi1 = {o: data[o]["phi1"] for o in b_k.objects}
    phi2 = {o: data[o]["phi2"] for o in b_k.objects}
    phi3 = {o: data[o]["phi3"] for o in b_k.objects}
    phi4 = {o: data[o]["phi4"] for o in b_k.objects}

    rec1 = make_record("phi1: 1 => T1", "1", "T1", phi1)
    check_naturality(rec1, identity_f, t1_f, phi1, b_k.morphisms)
    rec2 = make_record("phi2: T2 => T1", "T2", "T1", phi2)
    check_naturality(rec2, t2_f, t1_f, phi2, b_k.morphisms)
    rec3 = make_record("phi3: T2 => T3", "T2", "T3", phi3)
    check_naturality(rec3, t2_f, t3_f, phi3, b_k.morphisms)
    rec4 = make_record("phi4: i.r => T3", "i.r", "T3", phi4)
    check_naturality(rec4, ir_f, t3_f, phi4, b_k.morphisms)

    # -- the A'_k side -----------------------------------------------------------
    # On image objects the w slot is an identity; the composite of its
    # factorization is the identity, and pushing the top row out along
    # it recovers the top row, yielding tau: T3|A' => 1 with components
    # (id, id, id, v1, v1, v2, ..., vk).
    a_objects = a_prime.objects
    a_morphisms = a_prime.morphisms
    tau = {}
    psi4 = {}
    psi = {}
    ident = cat.identity
    for oid in a_objects:
        d = data[oid]
        objs, arrows = b_k.diagrams[oid]
        vs = [d["v1"]]
        tail = (d["t2"][1][4],) + d["t2"][1][5:]
        ok = True
        for j in range(len(tail)):
            wit = seen_witness[("pushout", d["us"][j], tail[j])]
            comp_map = dict(wit.comparisons)
            apex2 = objs[5 + j]
            leg_m = cat.comp[(vs[-1], tail[j])]
            leg_c = ident[apex2]
            got = comp_map.get((apex2, leg_m, leg_c))
            if got is None:
                errors.append(f"push-down comparison missing at {oid} stage {j}")
                ok = False
                break
            vs.append(got)
        if not ok:
            continue
        tau[oid] = (ident[objs[0]], ident[objs[1]], ident[objs[2]],
                    vs[0], vs[0]) + tuple(vs[1:])
        psi4[oid] = data[oid]["phi4"]
        psi[oid] = tuple(cat.comp[(a, b)] for a, b in zip(psi4[oid], tau[oid]))

    rec5 = make_record("phi4|A': i.r => T3 (restricted)", "i.r|A'", "T3|A'", psi4)
    check_naturality(rec5, ir_f, t3_f, phi4, a_morphisms)
    rec6 = make_record("tau: T3|A' => 1", "T3|A'", "1|A'", tau)
    rec7 = make_record("psi = tau . phi4: r.i => 1 (on A')", "r.i", "1|A'", psi)
    # naturality of tau and psi over A'_k
    for rec, table, src_f, tgt_f in ((rec6, tau, t3_f, identity_f),
                                     (rec7, psi, ir_f, identity_f)):
        for m in a_morphisms:
            src_o, tgt_o = b_k.src[m], b_k.tgt[m]
            f_m = b_k.components[src_f.mor_map[m]]
            g_m = b_k.components[m]
            left = table.get(src_o)
            right = table.get(tgt_o)
            if left is None or right is None:
                rec.missing.append(m)
                continue
            for i in range(len(g_m)):
                if cat.comp[(left[i], g_m[i])] != cat.comp[(f_m[i], right[i])]:
                    rec.naturality_failures.append((m, i))
                    break

    cert = SegalCertificate(
        k, object_rows,
        [rec1, rec2, rec3, rec4, rec5, rec6, rec7],
        functor_reports, witnesses, factorizations, _READING, errors)
    return r_f, cert


_READING = ("overline composites are the recorded pushout/pullback legs; "
            "the retracted chain is (pullback leg of the v-part along the "
            "composed first map, then the pushed-forward tail arrows)")


# -- the fiber-square report ---------------------------------------------------

@dataclass
class SegalReport:
    """Per-k verdicts for the fiber-square condition inputs."""

    k_results: dict
    saturation_passed: bool
    boundary_statement: str

    @property
    def passed(self):
        return self.saturation_passed and all(
            r["strict_identity"] and r["certificate_valid"]
            and not r["corroboration_failures"]
            for r in self.k_results.values())

    def to_dict(self):
        return {
            "passed": self.passed,
            "saturation": self.saturation_passed,
            "k": {str(k): r for k, r in self.k_results.items()},
            "boundary": self.boundary_statement,
        }

    def describe(self):
        lines = [f"fiber-square inputs: {'pass' if self.passed else 'FAIL'}"]
        for k, r in sorted(self.k_results.items()):
            lines.append(
                f"  k={k}: strict identity {'ok' if r['strict_identity'] else 'FAIL'}; "
                f"certificate {'valid' if r['certificate_valid'] else 'INVALID'}; "
                f"nerve agreement dims {r['homology_dims_compared']} "
                + ("ok" if not r["corroboration_failures"]
                   else f"FAIL {r['corroboration_failures']}")
                + (f" (skipped dims {r['skipped_dims']}: size)" if r["skipped_dims"] else ""))
        lines.append(f"  saturation: {'pass' if self.saturation_passed else 'FAIL'}")
        lines.append(f"  note: {self.boundary_statement}")
        return "\n".join(lines)


_BOUNDARY = (
    "this report certifies the strict fiber identity, the retraction "
    "zigzags, and the saturation of the marking; promoting these to the "
    "homotopy fiber-square condition on the classification nerve uses an "
    "external homotopy-pullback criterion that is not re-verified here")


def _count_chains(cat, n):
    """Number of n-chains of morphisms (including identities) without
    materializing them."""
    if n == 0:
        return len(cat.objects)
    counts = {o: 1 for o in cat.objects}
    for _ in range(n):
        nxt = {o: 0 for o in cat.objects}
        for m in cat.morphisms:
            nxt[cat.tgt[m]] += counts[cat.src[m]]
        counts = nxt
    return sum(counts.values())


def segal_projections(rc, k, a_k_minus=None, a_1=None, a_0=None):
    """The two functors of the strict fiber square: last-object from
    A_{k-1} and source-object from A_1, both into A_0."""
    a_k_minus = a_k_minus if a_k_minus is not None else chain_category(rc, k - 1)
    a_1 = a_1 if a_1 is not None else chain_category(rc, 1)
    a_0 = a_0 if a_0 is not None else chain_category(rc, 0)
    f_obj = {oid: a_k_minus.diagrams[oid][0][-1] for oid in a_k_minus.objects}
    f_mor = {m: a_k_minus.components[m][-1] for m in a_k_minus.morphisms}
    g_obj = {oid: a_1.diagrams[oid][0][0] for oid in a_1.objects}
    g_mor = {m: a_1.components[m][0] for m in a_1.morphisms}
    return (Functor(a_k_minus, a_0, f_obj, f_mor),
            Functor(a_1, a_0, g_obj, g_mor))


def check_strict_segal_identity(rc, k, cache=None):
    """A_k is isomorphic, as a category, to the strict fiber product of
    A_{k-1} and A_1 over A_0."""
    cache = cache if cache is not None else {}

    def ak(i):
        if i not in cache:
            cache[i] = chain_category(rc, i)
        return cache[i]

    F, G = segal_projections(rc, k, a_k_minus=ak(k - 1), a_1=ak(1), a_0=ak(0))
    pb = strict_pullback_category(F, G)
    return category_isomorphism(ak(k), pb) is not None


def verify_segal(pms, k_range=(2, 3), sset_dims=2, cell_budget=200_000,
                 allow_large=False):
    """The full per-k pipeline: strict fiber identity, retraction
    certificate, nerve-level corroboration, saturation proxy.

    Homology comparisons whose chain groups would exceed ``cell_budget``
    simplices in some needed dimension are skipped and reported as
    skipped, never silently dropped.  k >= 5 needs ``allow_large``.
    """
    rc = pms.rc
    if any(k >= 5 for k in k_range) and not allow_large:
        raise StructuralError("k >= 5 grows as |Mor|^(k+3); pass allow_large=True")
    cache = {}
    k_results = {}
    for k in sorted(k_range):
        parts = embedding_parts(rc, k)
        h, a_k, b_k, a_prime = parts
        cache[k] = a_k
        strict_ok = check_strict_segal_identity(rc, k, cache)
        r_f, cert = build_retraction(pms, k, parts)
        # corroboration: nerve-level invariants of A'_k versus B_k
        dims_done = []
        skipped = []
        failures = []
        budget_dim = sset_dims
        for d in range(sset_dims + 1):
            needed = d + 1
            if (_count_chains(a_prime, needed) > cell_budget
                    or _count_chains(b_k, needed) > cell_budget):
                budget_dim = d - 1
                break
        dims = [d for d in range(min(sset_dims, budget_dim) + 1)]
        skipped = [d for d in range(sset_dims + 1) if d not in dims]
        trunc = (max(dims) + 1) if dims else 1
        nerve_a = nerve(a_prime, trunc)
        nerve_b = nerve(b_k, trunc)
        pi_a, pi_b = len(pi0(nerve_a)), len(pi0(nerve_b))
        if pi_a != pi_b:
            failures.append(f"pi0 {pi_a} != {pi_b}")
        if dims:
            h_a = homology(nerve_a, max(dims))
            h_b = homology(nerve_b, max(dims))
            for d in dims:
                if h_a[d] != h_b[d]:
                    failures.append(f"H_{d}: {h_a[d]} != {h_b[d]}")
        k_results[k] = {
            "strict_identity": strict_ok,
            "certificate_valid": cert.valid,
            "certificate": cert,
            "pi0": (pi_a, pi_b),
            "homology_dims_compared": dims,
            "skipped_dims": skipped,
            "corroboration_failures": failures,
        }
    saturation = check_saturation(pms)
    return SegalReport(k_results, saturation.passed, _BOUNDARY)
