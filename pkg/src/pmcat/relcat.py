"""Relative categories and the two-out-of-three / two-out-of-six scans.

A relative category is a finite category with a marked wide subcategory
of weak equivalences: every identity is marked and marked morphisms are
closed under composition.  The property checkers scan every composable
pair (respectively triple) and return either a pass or a concrete
witness.
"""

from dataclasses import dataclass

from ._util import UnionFind
from .fincat import FinCategory, StructuralError, Violation, ValidationReport


class RelCategory:
    """A finite category together with its weak equivalences.

    ``weq`` is stored as a tuple in deterministic order (category
    morphism order).  By default identities are marked implicitly;
    passing ``add_identities=False`` keeps the marking exactly as given,
    which lets :func:`validate_relative` exhibit wideness violations.
    """

    def __init__(self, cat, weq, add_identities=True):
        unknown = [w for w in weq if w not in cat.src]
        if unknown:
            raise StructuralError(f"weak equivalences not in category: {unknown}")
        marked = set(weq)
        if add_identities:
            marked |= {cat.identity[o] for o in cat.objects}
        self.cat = cat
        self.weq = tuple(m for m in cat.morphisms if m in marked)
        self._weq_set = frozenset(self.weq)

    def is_weq(self, m):
        return m in self._weq_set

    def weq_hom(self, a, b):
        return tuple(m for m in self.cat.hom(a, b) if m in self._weq_set)

    def __repr__(self):
        return f"RelCategory({len(self.cat.objects)} objects, {len(self.weq)}/{len(self.cat.morphisms)} marked)"


def validate_relative(rc):
    """Check wideness and composition closure of the marked subcategory."""
    structural = []
    violations = []
    cat = rc.cat
    for o in cat.objects:
        if not rc.is_weq(cat.identity[o]):
            violations.append(Violation(
                "identity-not-marked", (o,), "identity missing from weak equivalences"))
    for f in rc.weq:
        for g in rc.weq:
            if cat.composable(f, g) and not rc.is_weq(cat.comp[(f, g)]):
                violations.append(Violation(
                    "not-closed", (f, g), f"composite {cat.comp[(f, g)]} is unmarked"))
    return ValidationReport(structural, violations)


@dataclass
class PropertyReport:
    """Pass/fail of a closure property, with witnesses when failing."""

    name: str
    passed: bool
    witnesses: list
    notes: list

    def to_dict(self):
        return {
            "property": self.name,
            "passed": self.passed,
            "witnesses": [list(w) for w in self.witnesses],
            "notes": list(self.notes),
        }


def check_two_of_three(rc):
    """Scan all composable pairs (r, s): if two of r, s, s.r are marked,
    the third must be.  Witness is the offending pair."""
    cat = rc.cat
    witnesses = []
    for r in cat.morphisms:
        for s in cat.out_of(cat.tgt[r]):
            sr = cat.comp[(r, s)]
            marks = (rc.is_weq(r), rc.is_weq(s), rc.is_weq(sr))
            if sum(marks) == 2:
                witnesses.append((r, s))
    return PropertyReport("two-of-three", not witnesses, witnesses, [])


def check_two_of_six(rc):
    """Scan all composable triples (r, s, t): if s.r and t.s are marked,
    then r, s, t and t.s.r must be.

    On a pass the two stated consequences are re-verified and recorded:
    two-of-three holds, and every isomorphism is marked.
    """
    cat = rc.cat
    witnesses = []
    for r in cat.morphisms:
        for s in cat.out_of(cat.tgt[r]):
            sr = cat.comp[(r, s)]
            if not rc.is_weq(sr):
                continue
            for t in cat.out_of(cat.tgt[s]):
                ts = cat.comp[(s, t)]
                if not rc.is_weq(ts):
                    continue
                tsr = cat.comp[(sr, t)]
                if not (rc.is_weq(r) and rc.is_weq(s) and rc.is_weq(t) and rc.is_weq(tsr)):
                    witnesses.append((r, s, t))
    notes = []
    if not witnesses:
        two_of_three = check_two_of_three(rc)
        notes.append(f"consequence two-of-three: {'pass' if two_of_three.passed else 'FAIL'}")
        unmarked_isos = [m for m in cat.isos() if not rc.is_weq(m)]
        notes.append("consequence isomorphisms marked: "
                     + ("pass" if not unmarked_isos else f"FAIL {unmarked_isos}"))
        if not two_of_three.passed or unmarked_isos:
            return PropertyReport("two-of-six", False, [], notes)
    return PropertyReport("two-of-six", not witnesses, witnesses, notes)


def homotopically_full_subcategory(rc, seed_objects):
    """Full relative subcategory on the closure of the seeds under
    zigzags of weak equivalences between objects."""
    cat = rc.cat
    unknown = [o for o in seed_objects if o not in set(cat.objects)]
    if unknown:
        raise StructuralError(f"unknown seed objects: {unknown}")
    uf = UnionFind(cat.objects)
    for w in rc.weq:
        uf.union(cat.src[w], cat.tgt[w])
    keep_roots = {uf.find(o) for o in seed_objects}
    keep = [o for o in cat.objects if uf.find(o) in keep_roots]
    sub = cat.full_subcategory(keep)
    return RelCategory(sub, [w for w in rc.weq if w in set(sub.morphisms)])


def restrict_to_weq(rc):
    """The wide subcategory of weak equivalences, all of them marked."""
    cat = rc.cat
    rows = [(m, cat.src[m], cat.tgt[m]) for m in rc.weq]
    comp = {(f, g): h for (f, g), h in cat.comp.items()
            if rc.is_weq(f) and rc.is_weq(g)}
    sub = FinCategory(cat.objects, rows, cat.identity, comp)
    return RelCategory(sub, sub.morphisms)


def _enumerate_functors(source, target):
    """All functors source -> target, deterministically ordered.

    Backtracks over object images first, then morphism images hom-set by
    hom-set with composition constraints checked incrementally.
    """
    src_objs = list(source.objects)
    non_id = [m for m in source.morphisms if not source.is_identity(m)]
    results = []

    def assign_mor(obj_map, j, mor_map):
        if j == len(non_id):
            for (f, g), h in source.comp.items():
                if target.comp[(mor_map[f], mor_map[g])] != mor_map[h]:
                    return
            results.append((dict(obj_map), dict(mor_map)))
            return
        m = non_id[j]
        a, b = obj_map[source.src[m]], obj_map[source.tgt[m]]
        for n in target.hom(a, b):
            mor_map[m] = n
            ok = True
            for m0, n0 in list(mor_map.items()):
                if source.composable(m0, m):
                    h = source.comp[(m0, m)]
                    if h in mor_map and target.comp[(n0, n)] != mor_map[h]:
                        ok = False
                        break
                if source.composable(m, m0):
                    h = source.comp[(m, m0)]
                    if h in mor_map and target.comp[(n, n0)] != mor_map[h]:
                        ok = False
                        break
            if ok:
                assign_mor(obj_map, j + 1, mor_map)
            del mor_map[m]

    def assign_obj(i, obj_map):
        if i == len(src_objs):
            mor_map = {source.identity[o]: target.identity[obj_map[o]] for o in src_objs}
            assign_mor(obj_map, 0, mor_map)
            return
        for t in target.objects:
            obj_map[src_objs[i]] = t
            assign_obj(i + 1, obj_map)
        del obj_map[src_objs[i]]

    assign_obj(0, {})
    return results


def _natural_transformations(source, target, F, G):
    """All natural transformations F => G as component dicts."""
    objs = list(source.objects)
    results = []

    def extend(i, components):
        if i == len(objs):
            results.append(dict(components))
            return
        o = objs[i]
        for c in target.hom(F[0][o], G[0][o]):
            components[o] = c
            ok = True
            for m in source.morphisms:
                a, b = source.src[m], source.tgt[m]
                if a in components and b in components:
                    if target.comp[(F[1][m], components[b])] != target.comp[(components[a], G[1][m])]:
                        ok = False
                        break
            if ok:
                extend(i + 1, components)
            del components[o]

    extend(0, {})
    return results


class RelFunctorCategory(RelCategory):
    """Relative category of relative functors; keeps the dictionaries
    behind the synthetic object/morphism ids."""

    def __init__(self, cat, weq, functors, transformations):
        super().__init__(cat, weq)
        self.functors = functors              # object id -> (obj_map, mor_map)
        self.transformations = transformations  # morphism id -> (src, tgt, components)


def relative_functor_category(target_rc, source_rc):
    """The relative category of relative functors source -> target.

    Objects are functors sending marked morphisms to marked morphisms,
    morphisms are all natural transformations, and a transformation is
    marked when every component is.  Objects are named F0, F1, ... in
    enumeration order and morphisms t0, t1, ...
    """
    src_cat, tgt_cat = source_rc.cat, target_rc.cat
    functors = [
        (om, mm) for om, mm in _enumerate_functors(src_cat, tgt_cat)
        if all(target_rc.is_weq(mm[w]) for w in source_rc.weq)
    ]
    obj_ids = [f"F{i}" for i in range(len(functors))]
    table = dict(zip(obj_ids, functors))
    rows = []
    trans = {}
    comp = {}
    counter = 0
    all_trans = {}
    for i, Fi in enumerate(functors):
        for j, Gj in enumerate(functors):
            for comps in _natural_transformations(src_cat, tgt_cat, Fi, Gj):
                is_id = i == j and all(
                    comps[o] == tgt_cat.identity[Fi[0][o]] for o in src_cat.objects)
                tid = f"id:F{i}" if is_id else f"t{counter}"
                if not is_id:
                    counter += 1
                rows.append((tid, obj_ids[i], obj_ids[j]))
                trans[tid] = (obj_ids[i], obj_ids[j], comps)
                all_trans.setdefault((i, j), []).append(tid)
    lookup = {}
    for tid, (a, b, comps) in trans.items():
        key = (a, b, tuple(comps[o] for o in src_cat.objects))
        lookup[key] = tid
    for tid1, (a1, b1, c1) in trans.items():
        for tid2, (a2, b2, c2) in trans.items():
            if b1 == a2:
                composite = tuple(tgt_cat.comp[(c1[o], c2[o])] for o in src_cat.objects)
                comp[(tid1, tid2)] = lookup[(a1, b2, composite)]
    identity = {f"F{i}": f"id:F{i}" for i in range(len(functors))}
    cat = FinCategory(obj_ids, rows, identity, comp)
    weq = [tid for tid, (_, _, comps) in trans.items()
           if all(target_rc.is_weq(c) for c in comps.values())]
    return RelFunctorCategory(cat, weq, table, trans)


def random_preorder_relcat(seed, max_objects=6, edge_p=0.35, weq_p=0.5):
    """Seeded random finite relative category for property testing.

    The category is a random preorder (so hom-sets are forced and the
    table is automatically lawful) and the marking is a random
    composition-closed subset.  Preorders allow genuine isomorphism
    cycles, which gives the two-out-of-six consequence checks teeth.
    """
    import random as _random
    rng = _random.Random(seed)
    n = rng.randint(1, max_objects)
    objs = [f"x{i}" for i in range(n)]
    rel = {(o, o) for o in objs}
    for a in objs:
        for b in objs:
            if a != b and rng.random() < edge_p:
                rel.add((a, b))
    # transitive closure
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c, d in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    mor = {}
    rows = []
    for a, b in sorted(rel):
        if a != b:
            mid = f"{a}<{b}"
            mor[(a, b)] = mid
            rows.append((mid, a, b))
    comp = {}
    for (a, b), f in mor.items():
        for (b2, c), g in mor.items():
            if b2 == b:
                comp[(f, g)] = mor[(a, c)] if a != c else "id:" + a
    cat = FinCategory.build(objs, rows, comp)
    # random marking, closed under composition
    marked = {cat.identity[o] for o in objs}
    for m in cat.morphisms:
        if not cat.is_identity(m) and rng.random() < weq_p:
            marked.add(m)
    changed = True
    while changed:
        changed = False
        for f in list(marked):
            for g in list(marked):
                if cat.composable(f, g):
                    h = cat.comp[(f, g)]
                    if h not in marked:
                        marked.add(h)
                        changed = True
    return RelCategory(cat, sorted(marked))
