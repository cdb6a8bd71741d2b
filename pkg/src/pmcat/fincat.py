"""Finite categories as explicit composition tables.

A category here is a finite list of objects, a finite list of morphisms
with source/target, an identity morphism per object, and a *total*
composition table over composable pairs.  Nothing is presented by
generators: the table is the category, and every law (identity,
associativity, typing) is checked by brute force.  Pushouts and
pullbacks are found by exhaustive search over all candidate cocones and
cones, and universality is certified against every competitor.

All values are immutable after construction; every operation is a pure
function of its inputs, and ties are broken by input order, never by
iteration order of sets.
"""

from dataclasses import dataclass

ID_PREFIX = "id:"


class StructuralError(ValueError):
    """Raw data references an unknown object or morphism id."""


class CategoryLawError(ValueError):
    """Construction was asked for a category but the laws fail."""

    def __init__(self, report):
        self.report = report
        super().__init__("not a category:\n" + report.describe())


@dataclass(frozen=True)
class Violation:
    """One failed law with a concrete witness."""

    law: str
    witness: tuple
    detail: str

    def to_dict(self):
        return {"law": self.law, "witness": list(self.witness), "detail": self.detail}


@dataclass
class ValidationReport:
    """Outcome of an exhaustive law check.

    ``structural`` lists malformed references (unknown ids, bad typing of
    the raw data itself); ``violations`` lists genuine law failures.  The
    input is a category iff both lists are empty.
    """

    structural: list
    violations: list

    @property
    def ok(self):
        return not self.structural and not self.violations

    def describe(self):
        lines = []
        for v in self.structural:
            lines.append(f"structural: {v.law} {v.witness}: {v.detail}")
        for v in self.violations:
            lines.append(f"violation: {v.law} {v.witness}: {v.detail}")
        return "\n".join(lines) if lines else "ok"

    def to_dict(self):
        return {
            "ok": self.ok,
            "structural": [v.to_dict() for v in self.structural],
            "violations": [v.to_dict() for v in self.violations],
        }


def validate_category(objects, morphisms, identity, comp):
    """Exhaustively check that raw data describes a category.

    ``objects``: list of ids.  ``morphisms``: list of (id, src, tgt).
    ``identity``: dict object -> morphism id.  ``comp``: dict
    (f, g) -> g.f for composable pairs (f first, then g).

    Returns a ValidationReport listing every violated law with a
    concrete witness; the report is empty iff the input is a category.
    """
    structural = []
    violations = []
    obj_set = set(objects)
    if len(obj_set) != len(objects):
        structural.append(Violation("duplicate-object", (), "object ids repeat"))
    mids = [m[0] for m in morphisms]
    if len(set(mids)) != len(mids):
        structural.append(Violation("duplicate-morphism", (), "morphism ids repeat"))
    src, tgt = {}, {}
    for mid, s, t in morphisms:
        if s not in obj_set:
            structural.append(Violation("unknown-object", (mid, s), "source not declared"))
        if t not in obj_set:
            structural.append(Violation("unknown-object", (mid, t), "target not declared"))
        src[mid], tgt[mid] = s, t
    for o in objects:
        i = identity.get(o)
        if i is None:
            structural.append(Violation("missing-identity", (o,), "no identity assigned"))
        elif i not in src:
            structural.append(Violation("unknown-morphism", (o, i), "identity id not declared"))
        elif not (src[i] == o and tgt[i] == o):
            structural.append(Violation("identity-typing", (o, i), "identity is not an endomorphism"))
    for (f, g), h in comp.items():
        for m in (f, g, h):
            if m not in src:
                structural.append(Violation("unknown-morphism", (f, g, h), f"{m} not declared"))
    if structural:
        return ValidationReport(structural, violations)

    # totality and typing of the table
    for f in mids:
        for g in mids:
            if tgt[f] == src[g]:
                h = comp.get((f, g))
                if h is None:
                    violations.append(Violation(
                        "missing-composite", (f, g), "no entry for composable pair"))
                elif not (src[h] == src[f] and tgt[h] == tgt[g]):
                    violations.append(Violation(
                        "composite-typing", (f, g, h), "composite has wrong source or target"))
            elif (f, g) in comp:
                violations.append(Violation(
                    "spurious-composite", (f, g), "entry for non-composable pair"))

    # identity laws
    for m in mids:
        i_s, i_t = identity[src[m]], identity[tgt[m]]
        if comp.get((i_s, m)) != m:
            violations.append(Violation(
                "identity-law", (i_s, m), f"{m}.{i_s} is {comp.get((i_s, m))}, expected {m}"))
        if comp.get((m, i_t)) != m:
            violations.append(Violation(
                "identity-law", (m, i_t), f"{i_t}.{m} is {comp.get((m, i_t))}, expected {m}"))

    # associativity over all composable triples
    by_src = {}
    for m in mids:
        by_src.setdefault(src[m], []).append(m)
    for f in mids:
        for g in by_src.get(tgt[f], ()):
            gf = comp.get((f, g))
            if gf is None:
                continue
            for h in by_src.get(tgt[g], ()):
                hg = comp.get((g, h))
                left = comp.get((gf, h))
                right = comp.get((f, hg)) if hg is not None else None
                if left != right or left is None:
                    violations.append(Violation(
                        "associativity", (f, g, h), f"h.(g.f) = {left} but (h.g).f = {right}"))
    return ValidationReport(structural, violations)


class FinCategory:
    """A finite category with a total composition table.

    >>> pt = FinCategory.build(["*"], [], {})
    >>> pt.morphisms
    ('id:*',)
    >>> pt.compose('id:*', 'id:*')
    'id:*'
    """

    def __init__(self, objects, morphisms, identity, comp):
        self.objects = tuple(objects)
        self.morphisms = tuple(m[0] for m in morphisms)
        self.src = {m[0]: m[1] for m in morphisms}
        self.tgt = {m[0]: m[2] for m in morphisms}
        self.identity = dict(identity)
        self.comp = dict(comp)
        self._identity_ids = set(self.identity.values())
        self._hom = {}
        for m in self.morphisms:
            self._hom.setdefault((self.src[m], self.tgt[m]), []).append(m)
        self._by_src = {}
        self._by_tgt = {}
        for m in self.morphisms:
            self._by_src.setdefault(self.src[m], []).append(m)
            self._by_tgt.setdefault(self.tgt[m], []).append(m)

    @classmethod
    def build(cls, objects, morphisms, comp, validate=True):
        """Assemble a category, auto-generating missing identities.

        ``morphisms`` lists non-identity (or explicitly given identity)
        morphisms as (id, src, tgt); ``comp`` gives (f, g) -> g.f for
        pairs of non-identity morphisms.  Identities get the reserved id
        ``id:<object>`` and their composites are filled in.  With
        ``validate`` the result is law-checked and CategoryLawError is
        raised on failure.
        """
        objects = list(objects)
        morphisms = [tuple(m) for m in morphisms]
        seen = {m[0] for m in morphisms}
        identity = {}
        ident_rows = []
        for o in objects:
            iid = ID_PREFIX + str(o)
            identity[o] = iid
            if iid not in seen:
                ident_rows.append((iid, o, o))
        morphisms = ident_rows + morphisms
        comp = dict(comp)
        src = {m[0]: m[1] for m in morphisms}
        tgt = {m[0]: m[2] for m in morphisms}
        for m, s, t in morphisms:
            if s in identity:
                comp.setdefault((identity[s], m), m)
            if t in identity:
                comp.setdefault((m, identity[t]), m)
        report = validate_category(objects, morphisms, identity, comp)
        if report.structural:
            raise StructuralError(report.describe())
        if validate and not report.ok:
            raise CategoryLawError(report)
        return cls(objects, morphisms, identity, comp)

    def validate(self):
        rows = [(m, self.src[m], self.tgt[m]) for m in self.morphisms]
        return validate_category(self.objects, rows, self.identity, self.comp)

    # -- accessors ---------------------------------------------------

    def morphism_rows(self):
        return [(m, self.src[m], self.tgt[m]) for m in self.morphisms]

    def hom(self, a, b):
        return tuple(self._hom.get((a, b), ()))

    def out_of(self, a):
        return tuple(self._by_src.get(a, ()))

    def into(self, b):
        return tuple(self._by_tgt.get(b, ()))

    def is_identity(self, m):
        return m in self._identity_ids

    def compose(self, g, f):
        """Classical order: ``compose(g, f)`` is g after f."""
        try:
            return self.comp[(f, g)]
        except KeyError:
            raise StructuralError(f"morphisms do not compose: {g} after {f}") from None

    def then(self, f, g):
        """Diagrammatic order: f followed by g."""
        return self.compose(g, f)

    def composable(self, f, g):
        """True when f can be followed by g."""
        return self.tgt[f] == self.src[g]

    def inverse(self, m):
        """Two-sided inverse of m, or None."""
        for g in self.hom(self.tgt[m], self.src[m]):
            if (self.comp[(m, g)] == self.identity[self.src[m]]
                    and self.comp[(g, m)] == self.identity[self.tgt[m]]):
                return g
        return None

    def is_iso(self, m):
        return self.inverse(m) is not None

    def isos(self):
        return tuple(m for m in self.morphisms if self.is_iso(m))

    def opposite(self):
        rows = [(m, self.tgt[m], self.src[m]) for m in self.morphisms]
        comp = {(g, f): h for (f, g), h in self.comp.items()}
        return FinCategory(self.objects, rows, self.identity, comp)

    def full_subcategory(self, objects):
        """Full subcategory on the listed objects, ids preserved."""
        keep = [o for o in self.objects if o in set(objects)]
        keep_set = set(keep)
        rows = [(m, self.src[m], self.tgt[m]) for m in self.morphisms
                if self.src[m] in keep_set and self.tgt[m] in keep_set]
        kept_mor = {r[0] for r in rows}
        comp = {pair: h for pair, h in self.comp.items()
                if pair[0] in kept_mor and pair[1] in kept_mor}
        identity = {o: self.identity[o] for o in keep}
        return FinCategory(keep, rows, identity, comp)

    def __repr__(self):
        return (f"FinCategory({len(self.objects)} objects, "
                f"{len(self.morphisms)} morphisms)")


class Functor:
    """A functor given by explicit object and morphism tables."""

    def __init__(self, source, target, obj_map, mor_map):
        self.source = source
        self.target = target
        self.obj_map = dict(obj_map)
        self.mor_map = dict(mor_map)

    def on_obj(self, o):
        return self.obj_map[o]

    def on_mor(self, m):
        return self.mor_map[m]

    @classmethod
    def identity(cls, cat):
        return cls(cat, cat, {o: o for o in cat.objects},
                   {m: m for m in cat.morphisms})

    @classmethod
    def constant(cls, source, target, obj):
        return cls(source, target, {o: obj for o in source.objects},
                   {m: target.identity[obj] for m in source.morphisms})

    def after(self, other):
        """self . other (apply other first)."""
        return Functor(other.source, self.target,
                       {o: self.obj_map[other.obj_map[o]] for o in other.source.objects},
                       {m: self.mor_map[other.mor_map[m]] for m in other.source.morphisms})

    def __repr__(self):
        return f"Functor({self.source!r} -> {self.target!r})"


def check_functor(F):
    """Exhaustively verify functor laws; empty report iff F is a functor."""
    structural = []
    violations = []
    src_cat, tgt_cat = F.source, F.target
    for o in src_cat.objects:
        if o not in F.obj_map:
            structural.append(Violation("missing-object-image", (o,), "object map not total"))
        elif F.obj_map[o] not in set(tgt_cat.objects):
            structural.append(Violation("unknown-object", (o, F.obj_map[o]), "image object unknown"))
    for m in src_cat.morphisms:
        if m not in F.mor_map:
            structural.append(Violation("missing-morphism-image", (m,), "morphism map not total"))
        elif F.mor_map[m] not in tgt_cat.src:
            structural.append(Violation("unknown-morphism", (m, F.mor_map[m]), "image morphism unknown"))
    if structural:
        return ValidationReport(structural, violations)

    for m in src_cat.morphisms:
        fm = F.mor_map[m]
        if tgt_cat.src[fm] != F.obj_map[src_cat.src[m]] or tgt_cat.tgt[fm] != F.obj_map[src_cat.tgt[m]]:
            violations.append(Violation(
                "source-target", (m, fm), "image does not match mapped endpoints"))
    for o in src_cat.objects:
        if F.mor_map[src_cat.identity[o]] != tgt_cat.identity[F.obj_map[o]]:
            violations.append(Violation(
                "identity", (o,), "identity not preserved"))
    for (f, g), h in src_cat.comp.items():
        ff, fg = F.mor_map[f], F.mor_map[g]
        image = tgt_cat.comp.get((ff, fg))
        if image != F.mor_map[h]:
            violations.append(Violation(
                "composition", (f, g), f"F(g.f) = {F.mor_map[h]} but F(g).F(f) = {image}"))
    return ValidationReport(structural, violations)


@dataclass(frozen=True)
class CoconeWitness:
    """A verified pushout: apex, both legs, and one comparison morphism
    per competing cocone (keyed by (apex', leg_f', leg_g'))."""

    apex: str
    leg_f: str  # out of tgt(f)
    leg_g: str  # out of tgt(g)
    comparisons: tuple  # of ((apex', p', q'), h)

    def verify(self, cat, f, g):
        """Independent re-check of commutativity and universality."""
        if cat.src[f] != cat.src[g]:
            return False
        if cat.comp[(f, self.leg_f)] != cat.comp[(g, self.leg_g)]:
            return False
        stored = dict(self.comparisons)
        for apex2, p2, q2 in _cocones(cat, f, g):
            hs = [h for h in cat.hom(self.apex, apex2)
                  if cat.comp[(self.leg_f, h)] == p2 and cat.comp[(self.leg_g, h)] == q2]
            if len(hs) != 1 or stored.get((apex2, p2, q2)) != hs[0]:
                return False
        return True


@dataclass(frozen=True)
class ConeWitness:
    """A verified pullback, dual bookkeeping to CoconeWitness."""

    apex: str
    leg_f: str  # into src(f)
    leg_g: str  # into src(g)
    comparisons: tuple

    def verify(self, cat, f, g):
        op = cat.opposite()
        co = CoconeWitness(self.apex, self.leg_f, self.leg_g, self.comparisons)
        return co.verify(op, f, g)


def _cocones(cat, f, g):
    """All cocones under the span of f and g, in deterministic order."""
    out = []
    for apex in cat.objects:
        for p in cat.hom(cat.tgt[f], apex):
            for q in cat.hom(cat.tgt[g], apex):
                if cat.comp[(f, p)] == cat.comp[(g, q)]:
                    out.append((apex, p, q))
    return out


def find_pushout(cat, f, g):
    """Pushout of the span tgt(f) <- src(f)=src(g) -> tgt(g).

    Returns a CoconeWitness verified against every competing cocone, or
    None when no universal cocone exists.  Among isomorphic pushouts the
    one whose apex comes first in the category's object order wins, and
    within an apex legs are scanned in morphism input order.
    """
    if cat.src[f] != cat.src[g]:
        raise StructuralError(f"not a span: {f}, {g} have different sources")
    competitors = _cocones(cat, f, g)
    for apex, p, q in competitors:
        comparisons = []
        universal = True
        for apex2, p2, q2 in competitors:
            hs = [h for h in cat.hom(apex, apex2)
                  if cat.comp[(p, h)] == p2 and cat.comp[(q, h)] == q2]
            if len(hs) != 1:
                universal = False
                break
            comparisons.append(((apex2, p2, q2), hs[0]))
        if universal:
            return CoconeWitness(apex, p, q, tuple(comparisons))
    return None


def find_pullback(cat, f, g):
    """Pullback of the cospan src(f) -> tgt(f)=tgt(g) <- src(g); dual to
    find_pushout with the same tie-breaking."""
    if cat.tgt[f] != cat.tgt[g]:
        raise StructuralError(f"not a cospan: {f}, {g} have different targets")
    wit = find_pushout(cat.opposite(), f, g)
    if wit is None:
        return None
    return ConeWitness(wit.apex, wit.leg_f, wit.leg_g, wit.comparisons)


def pair_id(a, b):
    return f"({a}|{b})"


def strict_pullback_category(F, G):
    """Strict fiber product of two functors with a common target.

    Objects are pairs (x, y) with Fx = Gy, morphisms pairs of morphisms
    agreeing in the target, composition componentwise.  Pair ids are
    rendered ``(x|y)``.
    """
    if F.target is not G.target and F.target.morphisms != G.target.morphisms:
        raise StructuralError("functors do not share a target")
    X, Y = F.source, G.source
    objects = [pair_id(x, y) for x in X.objects for y in Y.objects
               if F.obj_map[x] == G.obj_map[y]]
    rows = []
    pairs = []
    for m in X.morphisms:
        for n in Y.morphisms:
            if F.mor_map[m] == G.mor_map[n]:
                rows.append((pair_id(m, n), pair_id(X.src[m], Y.src[n]),
                             pair_id(X.tgt[m], Y.tgt[n])))
                pairs.append((m, n))
    identity = {}
    for x in X.objects:
        for y in Y.objects:
            if F.obj_map[x] == G.obj_map[y]:
                identity[pair_id(x, y)] = pair_id(X.identity[x], Y.identity[y])
    comp = {}
    for m1, n1 in pairs:
        for m2, n2 in pairs:
            if X.tgt[m1] == X.src[m2] and Y.tgt[n1] == Y.src[n2]:
                comp[(pair_id(m1, n1), pair_id(m2, n2))] = pair_id(
                    X.comp[(m1, m2)], Y.comp[(n1, n2)])
    return FinCategory(objects, rows, identity, comp)


def _refine_colors(cat):
    """Iterated degree refinement; returns object -> color token."""
    color = {o: (len(cat.hom(o, o)),) for o in cat.objects}
    for _ in range(len(cat.objects)):
        nxt = {}
        for o in cat.objects:
            profile = sorted(
                (color[p], len(cat.hom(o, p)), len(cat.hom(p, o)))
                for p in cat.objects)
            nxt[o] = (color[o], tuple(profile))
        # compress tokens
        canon = {}
        for o in sorted(nxt, key=lambda o: repr(nxt[o])):
            canon.setdefault(repr(nxt[o]), len(canon))
        new = {o: canon[repr(nxt[o])] for o in cat.objects}
        if len(set(new.values())) == len(set(color.values())):
            return new
        color = {o: (new[o],) for o in cat.objects}
    return {o: color[o][0] for o in cat.objects}


def category_isomorphism(cat1, cat2):
    """Search for an isomorphism of categories.

    Returns (object bijection, morphism bijection) or None.  Backtracks
    over color-refined object classes, then matches hom-sets morphism by
    morphism subject to identity and composition constraints.
    Exponential in the worst case; intended for desk-scale diagnostics.
    """
    if len(cat1.objects) != len(cat2.objects) or len(cat1.morphisms) != len(cat2.morphisms):
        return None
    c1, c2 = _refine_colors(cat1), _refine_colors(cat2)
    from collections import Counter
    if Counter(c1.values()) != Counter(c2.values()):
        return None

    objs1 = sorted(cat1.objects, key=lambda o: (c1[o], cat1.objects.index(o)))
    used = set()
    obj_map = {}

    def extend_objects(i):
        if i == len(objs1):
            return match_morphisms()
        x = objs1[i]
        for y in cat2.objects:
            if y in used or c2[y] != c1[x]:
                continue
            ok = True
            for x0, y0 in obj_map.items():
                if (len(cat1.hom(x, x0)) != len(cat2.hom(y, y0))
                        or len(cat1.hom(x0, x)) != len(cat2.hom(y0, y))):
                    ok = False
                    break
            if not ok:
                continue
            obj_map[x] = y
            used.add(y)
            result = extend_objects(i + 1)
            if result is not None:
                return result
            del obj_map[x]
            used.remove(y)
        return None

    def match_morphisms():
        mor_map = {}
        for o in cat1.objects:
            mor_map[cat1.identity[o]] = cat2.identity[obj_map[o]]
        rest = [m for m in cat1.morphisms if not cat1.is_identity(m)]
        used_m = set(mor_map.values())

        def final_check():
            for (f, g), h in cat1.comp.items():
                if cat2.comp[(mor_map[f], mor_map[g])] != mor_map[h]:
                    return None
            return dict(obj_map), dict(mor_map)

        def local_ok(m, n):
            for m0, n0 in mor_map.items():
                if m0 == m:
                    continue
                if cat1.composable(m0, m):
                    h = cat1.comp[(m0, m)]
                    if h in mor_map and cat2.comp[(n0, n)] != mor_map[h]:
                        return False
                if cat1.composable(m, m0):
                    h = cat1.comp[(m, m0)]
                    if h in mor_map and cat2.comp[(n, n0)] != mor_map[h]:
                        return False
            return True

        if not rest:
            return final_check()

        def hom_iter(m):
            return iter(cat2.hom(obj_map[cat1.src[m]], obj_map[cat1.tgt[m]]))

        # explicit-stack backtracking; recursion depth would otherwise
        # scale with the number of morphisms
        stack = [hom_iter(rest[0])]
        while stack:
            depth = len(stack) - 1
            m = rest[depth]
            advanced = False
            for n in stack[-1]:
                if n in used_m:
                    continue
                mor_map[m] = n
                used_m.add(n)
                if local_ok(m, n):
                    if depth + 1 == len(rest):
                        result = final_check()
                        if result is not None:
                            return result
                    else:
                        stack.append(hom_iter(rest[depth + 1]))
                        advanced = True
                        break
                used_m.remove(n)
                del mor_map[m]
            if not advanced:
                stack.pop()
                if stack:
                    parent = rest[len(stack) - 1]
                    used_m.remove(mor_map[parent])
                    del mor_map[parent]
        return None

    return extend_objects(0)
