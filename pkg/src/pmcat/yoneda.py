"""Finite evaluation of the mapping-space embedding.

An object A is sent to the presheaf whose value at B is the width-one
zigzag mapping space from B to A (the nerve of the zigzag category),
with the action of a *marked* map g: B' -> B given by precomposition
into the zigzag's left leg.  Only the marked part of the action is
materialized: the width-one model does not support precomposition along
arbitrary maps without further calculus moves, and the relative-functor
content only involves the marked maps.  Every report states this model
explicitly.

A marked map w: A -> A' induces, by precomposition into the right leg,
a map of presheaves; the verifier checks it is levelwise a bijection on
components and an isomorphism on homology up to the requested degree.
Homology isomorphy is certified through the algebraic mapping cone:
the cone complex must be acyclic one degree beyond the target range.
"""

from dataclasses import dataclass, field

from .fincat import Functor, StructuralError
from .sset import nerve, pi0, homology, normalized_boundaries, homology_of_boundaries
from .hammock import zigzag_category, bounded_localization_oracle, homotopy_category

MODEL_NOTE = ("width-one zigzag model; presheaf action materialized on marked "
              "maps only; agreement with wider hammocks beyond components and "
              "low homology is not decided by this tool")


class SSetMap:
    """A simplicial map between truncated simplicial sets, stored as
    index tables per dimension."""

    def __init__(self, source, target, tables):
        self.source = source
        self.target = target
        self.tables = {n: list(t) for n, t in tables.items()}

    def check_simplicial(self):
        """Commutation with every face and degeneracy inside the
        truncation; list of violations."""
        bad = []
        s, t = self.source, self.target
        for n in range(1, min(s.n_max, t.n_max) + 1):
            for i in range(n + 1):
                for x in range(s.size(n)):
                    if t.faces[(n, i)][self.tables[n][x]] != self.tables[n - 1][s.faces[(n, i)][x]]:
                        bad.append(f"face ({n},{i}) at {x}")
        for n in range(0, min(s.n_max, t.n_max)):
            for i in range(n + 1):
                for x in range(s.size(n)):
                    if t.degeneracies[(n, i)][self.tables[n][x]] != self.tables[n + 1][s.degeneracies[(n, i)][x]]:
                        bad.append(f"degeneracy ({n},{i}) at {x}")
        return bad

    def compose(self, other):
        """self after other."""
        tables = {n: [self.tables[n][v] for v in other.tables[n]]
                  for n in other.tables}
        return SSetMap(other.source, self.target, tables)

    def is_identity_map(self):
        return all(t == list(range(len(t))) for t in self.tables.values())


def _functor_nerve_map(F, nerve_src, nerve_tgt):
    """Simplicial map of nerves induced by a functor given on ids."""
    tables = {}
    n_max = min(nerve_src.n_max, nerve_tgt.n_max)
    tables[0] = [nerve_tgt.index[0][F.obj_map[o]] for o in nerve_src.simplices[0]]
    for n in range(1, n_max + 1):
        tables[n] = [
            nerve_tgt.index[n][tuple(F.mor_map[m] for m in chain)]
            for chain in nerve_src.simplices[n]]
    return SSetMap(nerve_src, nerve_tgt, tables)


@dataclass
class SimplicialPresheaf:
    """Value table of one object under the embedding."""

    source: str
    n_max: int
    values: dict           # object B -> TruncatedSimplicialSet
    zigzag_cats: dict      # object B -> ZigzagCategory
    action: dict           # marked g: B' -> B  ->  SSetMap value(B') -> value(B)
    model: str = MODEL_NOTE


def yoneda_object(rc, a, n_max):
    """The presheaf of zigzag mapping spaces into ``a``.

    The action table covers the marked morphisms: g: B' -> B acts by
    sending the left leg l: X -> B' to g.l.
    """
    cat = rc.cat
    if a not in set(cat.objects):
        raise StructuralError(f"unknown object {a}")
    zcs = {b: zigzag_category(rc, b, a) for b in cat.objects}
    values = {b: nerve(zcs[b], n_max) for b in cat.objects}
    action = {}
    for g in rc.weq:
        b_prime, b = cat.src[g], cat.tgt[g]
        src_zc, tgt_zc = zcs[b_prime], zcs[b]
        obj_map = {}
        for zid, z in src_zc.zigzags.items():
            image = tgt_zc.zigzags[
                f"{cat.comp[(z.left, g)]}|{z.mid}|{z.right}"]
            obj_map[zid] = image.key
        # morphisms keep their components
        mor_map = {}
        for m, (x, y) in src_zc.components.items():
            sid, tid = obj_map[src_zc.src[m]], obj_map[src_zc.tgt[m]]
            if sid == tid and cat.is_identity(x) and cat.is_identity(y):
                mor_map[m] = tgt_zc.identity[sid]
            else:
                mor_map[m] = f"[{x};{y}]{sid}=>{tid}"
        F = Functor(src_zc, tgt_zc, obj_map, mor_map)
        action[g] = _functor_nerve_map(F, values[b_prime], values[b])
    return SimplicialPresheaf(a, n_max, values, zcs, action)


def check_presheaf_action(rc, presheaf):
    """Functor laws of the action table over the marked subcategory."""
    cat = rc.cat
    bad = []
    for g, mp in presheaf.action.items():
        for msg in mp.check_simplicial():
            bad.append(f"action of {g} is not simplicial: {msg}")
        if cat.is_identity(g) and not mp.is_identity_map():
            bad.append(f"action of identity {g} is not the identity")
    for g1 in rc.weq:
        for g2 in rc.weq:
            if cat.composable(g1, g2):
                g21 = cat.comp[(g1, g2)]
                lhs = presheaf.action[g2].compose(presheaf.action[g1])
                rhs = presheaf.action[g21]
                if lhs.tables != rhs.tables:
                    bad.append(f"action of {g2}.{g1} differs from the composite")
    return bad


def weq_induced_presheaf_maps(rc, w, n_max):
    """The levelwise maps induced by a marked w: A -> A': at each B the
    zigzag right leg r: A' -> Y is precomposed to r.w."""
    cat = rc.cat
    if not rc.is_weq(w):
        raise StructuralError(f"{w} is not marked")
    a, a_prime = cat.src[w], cat.tgt[w]
    ya = yoneda_object(rc, a, n_max)
    ya_prime = yoneda_object(rc, a_prime, n_max)
    maps = {}
    for b in cat.objects:
        src_zc = ya_prime.zigzag_cats[b]
        tgt_zc = ya.zigzag_cats[b]
        obj_map = {}
        for zid, z in src_zc.zigzags.items():
            obj_map[zid] = f"{z.left}|{z.mid}|{cat.comp[(w, z.right)]}"
        mor_map = {}
        for m, (x, y) in src_zc.components.items():
            sid, tid = obj_map[src_zc.src[m]], obj_map[src_zc.tgt[m]]
            if sid == tid and cat.is_identity(x) and cat.is_identity(y):
                mor_map[m] = tgt_zc.identity[sid]
            else:
                mor_map[m] = f"[{x};{y}]{sid}=>{tid}"
        F = Functor(src_zc, tgt_zc, obj_map, mor_map)
        maps[b] = _functor_nerve_map(F, ya_prime.values[b], ya.values[b])
    return ya, ya_prime, maps


def _pi0_bijective(mp):
    src_classes = pi0(mp.source)
    tgt_classes = pi0(mp.target)
    if len(src_classes) != len(tgt_classes):
        return False
    tgt_class_of = {}
    for i, cls in enumerate(tgt_classes):
        for v in cls:
            tgt_class_of[v] = i
    images = set()
    for cls in src_classes:
        rep = cls[0]
        idx = mp.source.index[0][rep]
        img_val = mp.target.simplices[0][mp.tables[0][idx]]
        images.add(tgt_class_of[img_val])
    return len(images) == len(tgt_classes)


def _cone_acyclic(mp, up_to):
    """H_i of the algebraic mapping cone vanishes for 1 <= i <= up_to.

    The map is then an isomorphism on H_i for i < up_to (and injective
    at up_to); combined with equal invariants this certifies the range.
    """
    s, t = mp.source, mp.target
    depth = up_to + 1
    dims_s, bnd_s = normalized_boundaries(s, depth - 1)
    dims_t, bnd_t = normalized_boundaries(t, depth)
    nd_s = {n: s.nondegenerate(n) for n in range(depth)}
    nd_t = {n: t.nondegenerate(n) for n in range(depth + 1)}
    pos_t = {n: {idx: p for p, idx in enumerate(nd_t[n])} for n in nd_t}
    # chain map on normalized complexes: degenerate images die
    phi = {}
    for n in range(depth):
        table = []
        for idx in nd_s.get(n, ()):
            img = mp.tables[n][idx]
            table.append(pos_t[n].get(img))
        phi[n] = table
    cone_dims = []
    cone_bnds = {}
    for n in range(depth + 1):
        x_part = len(nd_s.get(n - 1, ())) if n >= 1 else 0
        y_part = len(nd_t.get(n, ()))
        cone_dims.append(x_part + y_part)
    for n in range(1, depth + 1):
        cols = []
        x_off_low = 0
        y_off_low = len(nd_s.get(n - 2, ())) if n >= 2 else 0
        for j in range(len(nd_s.get(n - 1, ()))):
            col = {}
            if n >= 2:
                for r, v in bnd_s[n - 1][j].items():
                    col[r] = -v
            img = phi[n - 1][j]
            if img is not None:
                col[y_off_low + img] = col.get(y_off_low + img, 0) + 1
            cols.append({r: v for r, v in col.items() if v})
        for j in range(len(nd_t.get(n, ()))):
            col = {}
            for r, v in bnd_t[n][j].items():
                col[y_off_low + r] = v
            cols.append(col)
        cone_bnds[n] = cols
    groups = homology_of_boundaries(cone_dims, cone_bnds, up_to)
    return all(g.rank == 0 and not g.torsion for g in groups[1:up_to + 1])


@dataclass
class YonedaReport:
    """Evidence that the embedding is a relative functor with marked
    maps inducing levelwise component bijections and homology
    isomorphisms, plus the component-level hom comparison."""

    n_dims: int
    failures: list = field(default_factory=list)
    checked_weqs: int = 0
    checked_pairs: int = 0
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def to_dict(self):
        return {
            "passed": self.passed,
            "dims": self.n_dims,
            "failures": [list(f) for f in self.failures],
            "weqs_checked": self.checked_weqs,
            "pairs_checked": self.checked_pairs,
            "notes": list(self.notes),
        }


def verify_yoneda_relative(rc, n_dims, pms=None, oracle_bound=7):
    """Levelwise component-bijection and homology-isomorphism checks for
    every marked map, plus the component-level hom comparison at every
    pair of objects.

    The hom comparison uses the homotopy category when a verified
    structure is supplied and the bounded word oracle otherwise.
    """
    cat = rc.cat
    report = YonedaReport(n_dims, notes=[MODEL_NOTE])
    trunc = n_dims + 2
    for w in rc.weq:
        if cat.is_identity(w):
            continue
        ya, ya_prime, maps = weq_induced_presheaf_maps(rc, w, trunc)
        report.checked_weqs += 1
        for b, mp in maps.items():
            bad = mp.check_simplicial()
            if bad:
                report.failures.append((w, b, "not simplicial", bad[0]))
                continue
            if not _pi0_bijective(mp):
                report.failures.append((w, b, "pi0", "not a bijection"))
            h_src = homology(mp.source, n_dims)
            h_tgt = homology(mp.target, n_dims)
            for i in range(n_dims + 1):
                if h_src[i] != h_tgt[i]:
                    report.failures.append((w, b, f"H_{i}", f"{h_src[i]} != {h_tgt[i]}"))
            if not _cone_acyclic(mp, n_dims + 1):
                report.failures.append((w, b, "cone", "mapping cone not acyclic"))

    ho = homotopy_category(pms) if pms is not None else None
    for a in cat.objects:
        for b in cat.objects:
            presheaf_classes = len(pi0(nerve(zigzag_category(rc, a, b), 1)))
            report.checked_pairs += 1
            if ho is not None:
                expected = len(ho.hom_classes(a, b))
                source = "homotopy category"
            else:
                orep = bounded_localization_oracle(rc, a, b, oracle_bound)
                if not orep.stable:
                    report.notes.append(
                        f"oracle unstable at ({a},{b}); comparison inconclusive")
                    continue
                expected = orep.count
                source = f"word oracle (bound {oracle_bound})"
            if presheaf_classes != expected:
                report.failures.append(
                    (a, b, "hom-comparison",
                     f"presheaf components {presheaf_classes} != {expected} ({source})"))
    return report
