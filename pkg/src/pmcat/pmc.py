"""Weak-equivalence calculus structures and their axioms.

A structure here is a relative category together with two marked
subcategories U and V of the weak equivalences and a factorization
table splitting every weak equivalence as w = v.u with u in U and
v in V.  The axioms verified exhaustively:

(a)   the underlying data is a relative category;
(b)   two-out-of-six;
(c-i) every u in U has a pushout along every morphism out of its
      source, and the pushed-out leg is again in U;
(c-ii) dually for V and pullbacks;
(c-iii) the factorization is total, correct, and functorial: every
      commutative square between weak equivalences (with weak
      equivalence legs) carries a recorded middle map making both
      sub-squares commute, respecting identities and pasting.

Factorizations and middle maps are supplied as data and verified,
never synthesized.  The one convenience constructor installs the
trivial factorization w = id.w (U = W, V = identities), whose middle
maps are forced.
"""

from dataclasses import dataclass

from .fincat import StructuralError, Violation, find_pushout, find_pullback
from .relcat import validate_relative, check_two_of_six, PropertyReport


class CalculusError(ValueError):
    """A pushout, pullback, factorization or middle map needed by a
    calculus move is missing.  Unreachable on verified structures."""


class PartialModelStructure:
    """Relative category plus (U, V, factorization, middle maps)."""

    def __init__(self, rc, u_sub, v_sub, factorization, middle):
        cat = rc.cat
        for name, sub in (("u", u_sub), ("v", v_sub)):
            unknown = [m for m in sub if m not in cat.src]
            if unknown:
                raise StructuralError(f"{name}-morphisms not in category: {unknown}")
        self.rc = rc
        marked_u = set(u_sub) | {cat.identity[o] for o in cat.objects}
        marked_v = set(v_sub) | {cat.identity[o] for o in cat.objects}
        self.u_sub = tuple(m for m in cat.morphisms if m in marked_u)
        self.v_sub = tuple(m for m in cat.morphisms if m in marked_v)
        self._u_set = frozenset(self.u_sub)
        self._v_set = frozenset(self.v_sub)
        self.factorization = dict(factorization)   # w -> (u, mid object, v)
        self.middle = dict(middle)                 # (w, w2, a, b) -> m

    def in_u(self, m):
        return m in self._u_set

    def in_v(self, m):
        return m in self._v_set

    def factor(self, w):
        try:
            return self.factorization[w]
        except KeyError:
            raise CalculusError(f"no factorization recorded for {w}") from None


def trivial_partial_model_structure(rc, v_sub=()):
    """U = W, V = identities (or the given v_sub), w = id.w, middle map
    of a square = its target leg.  Whether the axioms hold still depends
    on rc (pushout closure of W is a real condition); verify separately.

    V = identities works on posets, where chosen pullbacks are unique on
    the nose.  Categories with non-identity isomorphisms usually need
    ``v_sub=rc.weq`` because the deterministically chosen pullback leg
    of an identity may be a mere isomorphism.
    """
    cat = rc.cat
    factorization = {w: (w, cat.tgt[w], cat.identity[cat.tgt[w]]) for w in rc.weq}
    middle = {sq: sq[3] for sq in weq_squares(rc)}
    return PartialModelStructure(rc, rc.weq, v_sub, factorization, middle)


def weq_squares(rc):
    """All morphisms of the arrow category of the marked subcategory:
    tuples (w, w2, a, b) with everything marked and b.w = w2.a."""
    cat = rc.cat
    out = []
    for w in rc.weq:
        for w2 in rc.weq:
            for a in rc.weq_hom(cat.src[w], cat.src[w2]):
                for b in rc.weq_hom(cat.tgt[w], cat.tgt[w2]):
                    if cat.comp[(w, b)] == cat.comp[(a, w2)]:
                        out.append((w, w2, a, b))
    return out


@dataclass
class AxiomReport:
    """One verdict per axiom; passes iff every verdict passes."""

    structural: list
    verdicts: list  # of (axiom name, PropertyReport)

    @property
    def passed(self):
        return not self.structural and all(r.passed for _, r in self.verdicts)

    def verdict(self, name):
        for n, r in self.verdicts:
            if n == name:
                return r
        raise KeyError(name)

    def to_dict(self):
        return {
            "passed": self.passed,
            "structural": [v.to_dict() for v in self.structural],
            "axioms": {n: r.to_dict() for n, r in self.verdicts},
        }

    def describe(self):
        lines = [f"axioms: {'pass' if self.passed else 'FAIL'}"]
        for n, r in self.verdicts:
            lines.append(f"  ({n}) {'pass' if r.passed else 'FAIL'}"
                         + (f" witnesses {r.witnesses[:3]}" if r.witnesses else ""))
        return "\n".join(lines)


def _subcategory_report(name, cat, members):
    witnesses = []
    member_set = set(members)
    for f in members:
        for g in members:
            if cat.composable(f, g) and cat.comp[(f, g)] not in member_set:
                witnesses.append((f, g))
    return witnesses


def verify_partial_model(pms):
    """Exhaustively verify every axiom.  Structural problems (unknown
    ids, mistyped factorization entries) are reported separately from
    genuine axiom failures."""
    rc = pms.rc
    cat = rc.cat
    structural = []
    verdicts = []

    cat_report = cat.validate()
    rel_report = validate_relative(rc)
    verdicts.append(("a:relative-category", PropertyReport(
        "relative-category",
        cat_report.ok and rel_report.ok,
        [v.witness for v in cat_report.violations + rel_report.violations],
        [])))
    structural.extend(cat_report.structural)

    verdicts.append(("b:two-of-six", check_two_of_six(rc)))

    # (c-i) U is a subcategory of W, closed under pushout along everything
    u_wit = []
    u_notes = []
    u_wit += [(f, g) for f, g in _subcategory_report("u", cat, pms.u_sub)]
    u_wit += [(u,) for u in pms.u_sub if not rc.is_weq(u)]
    for u in pms.u_sub:
        for f in cat.out_of(cat.src[u]):
            wit = find_pushout(cat, u, f)
            if wit is None:
                u_wit.append((u, f, "no pushout"))
            elif not pms.in_u(wit.leg_g):
                u_wit.append((u, f, f"pushed-out leg {wit.leg_g} not in U"))
    verdicts.append(("c-i:u-pushout-closure", PropertyReport(
        "u-pushout-closure", not u_wit, u_wit, u_notes)))

    # (c-ii) dual closure for V
    v_wit = []
    v_wit += [(f, g) for f, g in _subcategory_report("v", cat, pms.v_sub)]
    v_wit += [(v,) for v in pms.v_sub if not rc.is_weq(v)]
    for v in pms.v_sub:
        for f in cat.into(cat.tgt[v]):
            wit = find_pullback(cat, v, f)
            if wit is None:
                v_wit.append((v, f, "no pullback"))
            elif not pms.in_v(wit.leg_g):
                v_wit.append((v, f, f"pulled-back leg {wit.leg_g} not in V"))
    verdicts.append(("c-ii:v-pullback-closure", PropertyReport(
        "v-pullback-closure", not v_wit, v_wit, [])))

    # (c-iii) factorization: totality, correctness, functoriality
    f_wit = []
    for w in rc.weq:
        entry = pms.factorization.get(w)
        if entry is None:
            f_wit.append((w, "no factorization"))
            continue
        u, mid, v = entry
        if u not in cat.src or v not in cat.src or mid not in set(cat.objects):
            structural.append(Violation("factorization-ids", (w, u, mid, v), "unknown id"))
            continue
        if not (cat.src[u] == cat.src[w] and cat.tgt[u] == mid
                and cat.src[v] == mid and cat.tgt[v] == cat.tgt[w]):
            f_wit.append((w, "factorization mistyped"))
            continue
        if cat.comp[(u, v)] != w:
            f_wit.append((w, f"composite v.u = {cat.comp[(u, v)]} differs from w"))
        if not pms.in_u(u):
            f_wit.append((w, f"factor {u} not in U"))
        if not pms.in_v(v):
            f_wit.append((w, f"factor {v} not in V"))

    squares = weq_squares(rc)
    square_set = set(squares)
    mid_of = {w: pms.factorization[w][1] for w in rc.weq if w in pms.factorization}
    for sq in squares:
        w, w2, a, b = sq
        if w not in pms.factorization or w2 not in pms.factorization:
            continue
        m = pms.middle.get(sq)
        u1, mid1, v1 = pms.factorization[w]
        u2, mid2, v2 = pms.factorization[w2]
        if m is None:
            f_wit.append((sq, "no middle map"))
            continue
        if m not in cat.src or cat.src[m] != mid1 or cat.tgt[m] != mid2:
            f_wit.append((sq, f"middle map {m} mistyped"))
            continue
        if cat.comp[(u1, m)] != cat.comp[(a, u2)]:
            f_wit.append((sq, "top sub-square does not commute"))
        if cat.comp[(v1, b)] != cat.comp[(m, v2)]:
            f_wit.append((sq, "bottom sub-square does not commute"))
    # identity and pasting laws of the middle assignment
    for w in rc.weq:
        if w not in pms.factorization:
            continue
        sq = (w, w, cat.identity[cat.src[w]], cat.identity[cat.tgt[w]])
        if sq in square_set:
            m = pms.middle.get(sq)
            if m is not None and m != cat.identity[mid_of[w]]:
                f_wit.append((sq, f"identity square has middle {m}"))
    for sq1 in squares:
        w, w2, a, b = sq1
        for sq2 in squares:
            if sq2[0] != w2:
                continue
            _, w3, a2, b2 = sq2
            pasted = (w, w3, cat.comp[(a, a2)], cat.comp[(b, b2)])
            m1, m2, m12 = pms.middle.get(sq1), pms.middle.get(sq2), pms.middle.get(pasted)
            if None in (m1, m2, m12):
                continue
            if (m1, m2) not in cat.comp:
                # mistyped middles are witnessed by the per-square check
                continue
            if cat.comp[(m1, m2)] != m12:
                f_wit.append((sq1, sq2, "middle maps do not paste"))
    verdicts.append(("c-iii:functorial-factorization", PropertyReport(
        "functorial-factorization", not f_wit, f_wit, [])))

    return AxiomReport(structural, verdicts)


def factorization_middle_map(pms, square):
    """Retrieve the recorded middle map of a commutative square between
    weak equivalences and re-verify both sub-squares.

    ``square`` is (w, w2, a, b) with b.w = w2.a and all four marked.
    """
    cat = pms.rc.cat
    w, w2, a, b = square
    for m in square:
        if m not in cat.src:
            raise StructuralError(f"unknown morphism {m}")
    if not all(pms.rc.is_weq(m) for m in square):
        raise StructuralError(f"square {square} is not a square of weak equivalences")
    if (cat.src[a] != cat.src[w] or cat.tgt[a] != cat.src[w2]
            or cat.src[b] != cat.tgt[w] or cat.tgt[b] != cat.tgt[w2]
            or cat.comp[(w, b)] != cat.comp[(a, w2)]):
        raise StructuralError(f"square {square} does not commute")
    m = pms.middle.get(square)
    if m is None:
        raise CalculusError(f"no middle map recorded for {square}")
    u1, mid1, v1 = pms.factor(w)
    u2, mid2, v2 = pms.factor(w2)
    if cat.comp[(u1, m)] != cat.comp[(a, u2)] or cat.comp[(v1, b)] != cat.comp[(m, v2)]:
        raise CalculusError(f"recorded middle map {m} does not commute for {square}")
    return m


class Calculus:
    """Cached access to the moves a verified structure guarantees:
    factorizations, middle maps, pushouts of U-maps, pullbacks of
    V-maps.  A missing ingredient raises CalculusError, which is
    unreachable once verify_partial_model has passed."""

    def __init__(self, pms):
        self.pms = pms
        self.cat = pms.rc.cat
        self._pushouts = {}
        self._pullbacks = {}

    def factor(self, w):
        return self.pms.factor(w)

    def middle(self, square):
        m = self.pms.middle.get(square)
        if m is None:
            raise CalculusError(f"no middle map recorded for {square}")
        return m

    def pushout(self, u, f):
        key = (u, f)
        wit = self._pushouts.get(key)
        if wit is None:
            wit = find_pushout(self.cat, u, f)
            if wit is None:
                raise CalculusError(f"no pushout of {u} along {f}")
            self._pushouts[key] = wit
        return wit

    def pullback(self, v, f):
        key = (v, f)
        wit = self._pullbacks.get(key)
        if wit is None:
            wit = find_pullback(self.cat, v, f)
            if wit is None:
                raise CalculusError(f"no pullback of {v} along {f}")
            self._pullbacks[key] = wit
        return wit


def weq_restriction_diagnostic(pms):
    """Try inheriting (U, V, factorization) along the restriction to the
    marked subcategory and report whether the axioms survive.

    Diagnostic only: the restricted pair is expected to carry *some*
    partial model structure, but nothing prescribes that it is this one.
    """
    from .relcat import restrict_to_weq
    rcw = restrict_to_weq(pms.rc)
    restricted = PartialModelStructure(
        rcw, pms.u_sub, pms.v_sub, pms.factorization, pms.middle)
    report = verify_partial_model(restricted)
    return restricted, report
