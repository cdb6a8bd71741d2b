"""Three-arrow zigzag mapping spaces and the homotopy category.

A map from A to B in the localized category is modelled by a zigzag

    A <--l-- X --m--> Y <--r-- B

whose outer maps l and r are weak equivalences.  Zigzags with fixed
endpoints form a category (morphisms are componentwise weak
equivalences commuting with all structure maps), the mapping space is
its nerve, and hom-sets of the homotopy category are its connected
components.  Composition of classes is carried out by explicit calculus
moves: merge the wrong-way pair, factor it, pull the one middle map
back along the V-part and push the other forward along the U-part.

An independent cross-check is provided by a bounded word-rewriting
oracle over alternating zigzags of arbitrary length, quotiented by the
congruence generated by composing adjacent same-direction maps,
deleting identities, cancelling a marked map against its formal
inverse, and sliding a forward map across a commutative square of
marked maps.
"""

from dataclasses import dataclass

from ._util import UnionFind
from .fincat import FinCategory, StructuralError
from .pmc import Calculus, CalculusError
from .sset import nerve


@dataclass(frozen=True)
class Zigzag:
    """A <- X -> Y <- B with the outer maps marked.

    ``left``: X -> A in W, ``mid``: X -> Y arbitrary, ``right``: B -> Y
    in W.  Source and target objects are derivable but kept explicit.
    """

    source: str
    target: str
    left: str
    mid: str
    right: str

    @property
    def key(self):
        return f"{self.left}|{self.mid}|{self.right}"


def identity_zigzag(rc, a):
    i = rc.cat.identity[a]
    return Zigzag(a, a, i, i, i)


def zigzag_of_morphism(rc, f):
    cat = rc.cat
    return Zigzag(cat.src[f], cat.tgt[f],
                  cat.identity[cat.src[f]], f, cat.identity[cat.tgt[f]])


class ZigzagCategory(FinCategory):
    """Category of zigzags with fixed endpoints.

    ``zigzags`` maps object ids back to Zigzag values;
    ``components``` maps morphism ids to their (x, y) parts.
    """

    def __init__(self, endpoints, weq_components, objects, rows, identity, comp,
                 zigzags, components):
        super().__init__(objects, rows, identity, comp)
        self.endpoints = endpoints
        self.weq_components = weq_components
        self.zigzags = zigzags
        self.components = components


def zigzag_category(rc, a, b, weq_components=True):
    """Complete enumeration of zigzags a ~> b and their morphisms.

    With ``weq_components`` (the default convention) morphisms are pairs
    of weak equivalences; with it off, arbitrary commuting pairs.
    """
    cat = rc.cat
    if a not in set(cat.objects) or b not in set(cat.objects):
        raise StructuralError(f"unknown endpoints ({a}, {b})")
    zigzags = {}
    order = []
    for x in cat.objects:
        for left in rc.weq_hom(x, a):
            for y in cat.objects:
                for right in rc.weq_hom(b, y):
                    for mid in cat.hom(x, y):
                        z = Zigzag(a, b, left, mid, right)
                        zigzags[z.key] = z
                        order.append(z.key)
    rows = []
    identity = {}
    components = {}
    for zid in order:
        z = zigzags[zid]
        x_obj, y_obj = cat.src[z.left], cat.tgt[z.right]
        for zid2 in order:
            z2 = zigzags[zid2]
            x2, y2 = cat.src[z2.left], cat.tgt[z2.right]
            xs = rc.weq_hom(x_obj, x2) if weq_components else cat.hom(x_obj, x2)
            ys = rc.weq_hom(y_obj, y2) if weq_components else cat.hom(y_obj, y2)
            for xm in xs:
                if cat.comp[(xm, z2.left)] != z.left:
                    continue
                for ym in ys:
                    if (cat.comp[(z.mid, ym)] == cat.comp[(xm, z2.mid)]
                            and cat.comp[(z.right, ym)] == z2.right):
                        if zid == zid2 and cat.is_identity(xm) and cat.is_identity(ym):
                            mid_id = f"id:{zid}"
                            identity[zid] = mid_id
                        else:
                            mid_id = f"[{xm};{ym}]{zid}=>{zid2}"
                        rows.append((mid_id, zid, zid2))
                        components[mid_id] = (xm, ym)
    comp = {}
    src_of = {r[0]: r[1] for r in rows}
    tgt_of = {r[0]: r[2] for r in rows}
    lookup = {}
    for mid_id, (xm, ym) in components.items():
        lookup[(src_of[mid_id], tgt_of[mid_id], xm, ym)] = mid_id
    for m1, (x1, y1) in components.items():
        for m2, (x2, y2) in components.items():
            if tgt_of[m1] == src_of[m2]:
                key = (src_of[m1], tgt_of[m2],
                       cat.comp[(x1, x2)], cat.comp[(y1, y2)])
                comp[(m1, m2)] = lookup[key]
    return ZigzagCategory((a, b), weq_components, order, rows, identity, comp,
                          zigzags, components)


def mapping_space(rc, a, b, n_max, weq_components=True):
    """Nerve of the zigzag category."""
    return nerve(zigzag_category(rc, a, b, weq_components), n_max)


def ho_compose(pms, z1, z2, calculus=None):
    """Normalized composite of composable zigzags via calculus moves.

    Steps: (1) merge the two wrong-way maps through the shared endpoint
    into one backward marked map; (2) factor it as v.u; (3) pull the
    first middle map back along v and push the second forward along u;
    (4) compose the remaining same-direction maps.
    """
    if z1.target != z2.source:
        raise StructuralError(f"zigzags do not compose: {z1} then {z2}")
    calc = calculus if calculus is not None else Calculus(pms)
    cat = pms.rc.cat
    back = cat.comp[(z2.left, z1.right)]          # X2 -> Y1, marked
    u, mid_obj, v = calc.factor(back)
    pb = calc.pullback(v, z1.mid)                 # cospan Y1 <- M, X1 ->
    q, p = pb.leg_f, pb.leg_g                     # q: P -> M, p: P -> X1
    po = calc.pushout(u, z2.mid)                  # span M <- X2 -> Y2
    mq, uq = po.leg_f, po.leg_g                   # mq: M -> Q, uq: Y2 -> Q
    left = cat.comp[(p, z1.left)]
    mid = cat.comp[(q, mq)]
    right = cat.comp[(z2.right, uq)]
    out = Zigzag(z1.source, z2.target, left, mid, right)
    if not (pms.rc.is_weq(left) and pms.rc.is_weq(right)):
        raise CalculusError(f"composite zigzag has unmarked outer maps: {out}")
    return out


class HoCategory:
    """The homotopy category: hom-sets are zigzag components.

    ``cat`` is the class-level FinCategory (one morphism per component),
    ``members`` maps a class morphism id to the frozenset of zigzag keys
    it contains, and ``class_of`` maps (source, target, zigzag key) to
    the class morphism id.
    """

    def __init__(self, cat, members, class_of, zigzag_categories):
        self.cat = cat
        self.members = members
        self.class_of = class_of
        self.zigzag_categories = zigzag_categories

    def hom_classes(self, a, b):
        return self.cat.hom(a, b)

    def image_of_morphism(self, rc, f):
        z = zigzag_of_morphism(rc, f)
        return self.class_of[(z.source, z.target, z.key)]

    def is_iso(self, class_id):
        return self.cat.is_iso(class_id)


class HoConsistencyError(ValueError):
    """Class-level composition failed to be well defined or lawful."""


def homotopy_category(pms, weq_components=True):
    """Hom-sets, identities and composition of the homotopy category,
    with composition induced by ho_compose on every pair of
    representatives (well-definedness is asserted, not assumed) and the
    category laws re-verified exhaustively at class level."""
    rc = pms.rc
    cat = rc.cat
    calc = Calculus(pms)
    zigzag_cats = {}
    classes = {}          # (a, b) -> list of tuple of zigzag keys
    class_of = {}         # (a, b, key) -> class id
    members = {}
    for a in cat.objects:
        for b in cat.objects:
            zc = zigzag_category(rc, a, b, weq_components)
            zigzag_cats[(a, b)] = zc
            uf = UnionFind(zc.objects)
            for m in zc.morphisms:
                uf.union(zc.src[m], zc.tgt[m])
            cls = uf.classes()
            classes[(a, b)] = cls
            for i, group in enumerate(cls):
                cid = f"[{a}=>{b}#{i}]"
                members[cid] = frozenset(group)
                for key in group:
                    class_of[(a, b, key)] = cid
    objects = list(cat.objects)
    rows = []
    identity = {}
    for a in objects:
        for b in objects:
            for i in range(len(classes[(a, b)])):
                rows.append((f"[{a}=>{b}#{i}]", a, b))
    for a in objects:
        iz = identity_zigzag(rc, a)
        identity[a] = class_of[(a, a, iz.key)]
    comp = {}
    for a in objects:
        for b in objects:
            for c in objects:
                for i in range(len(classes[(a, b)])):
                    cid1 = f"[{a}=>{b}#{i}]"
                    for j in range(len(classes[(b, c)])):
                        cid2 = f"[{b}=>{c}#{j}]"
                        results = set()
                        for key1 in members[cid1]:
                            z1 = zigzag_cats[(a, b)].zigzags[key1]
                            for key2 in members[cid2]:
                                z2 = zigzag_cats[(b, c)].zigzags[key2]
                                out = ho_compose(pms, z1, z2, calc)
                                results.add(class_of[(a, c, out.key)])
                        if len(results) != 1:
                            raise HoConsistencyError(
                                f"composition of {cid1} and {cid2} is not "
                                f"well defined: {sorted(results)}")
                        comp[(cid1, cid2)] = results.pop()
    ho_cat = FinCategory(objects, rows, identity, comp)
    report = ho_cat.validate()
    if not report.ok:
        raise HoConsistencyError("class-level laws fail:\n" + report.describe())
    return HoCategory(ho_cat, members, class_of, zigzag_cats)


# -- bounded localization oracle ---------------------------------------------

FWD, BWD = 1, -1


@dataclass
class OracleReport:
    """Classes of bounded alternating zigzags between two objects.

    The congruence is saturated over all words up to ``bound`` but
    classes are counted on words of length at most ``bound - 2``: one
    rewrite changes length by at most two, so the outer collar absorbs
    detours and keeps window-edge words (whose reductions would need to
    leave the window) from polluting the count.
    """

    source: str
    target: str
    bound: int
    classes: tuple          # classes meeting the core window
    count: int
    count_at_smaller_bound: int
    stable: bool
    all_classes: tuple      # full partition of words up to the bound

    def class_of(self, word):
        for i, cls in enumerate(self.all_classes):
            if word in cls:
                return i
        return None


def _enumerate_words(rc, a, b, bound, cap=500_000):
    cat = rc.cat
    fwd_steps = {}
    bwd_steps = {}
    for o in cat.objects:
        fwd_steps[o] = [m for m in cat.out_of(o) if not cat.is_identity(m)]
        bwd_steps[o] = [m for m in cat.into(o)
                        if rc.is_weq(m) and not cat.is_identity(m)]
    words = []

    def dfs(at, word):
        if len(words) > cap:
            raise StructuralError("oracle word space exceeds cap")
        if at == b:
            words.append(tuple(word))
        if len(word) == bound:
            return
        for m in fwd_steps[at]:
            word.append((FWD, m))
            dfs(cat.tgt[m], word)
            word.pop()
        for m in bwd_steps[at]:
            word.append((BWD, m))
            dfs(cat.src[m], word)
            word.pop()

    dfs(a, [])
    return words


def _oracle_partition(rc, a, b, bound):
    """Union-find over bounded words under the rewriting congruence."""
    cat = rc.cat
    words = _enumerate_words(rc, a, b, bound)
    word_set = set(words)
    uf = UnionFind(words)

    non_id = [m for m in cat.morphisms if not cat.is_identity(m)]
    splits = {}
    for f in non_id:
        for g in non_id:
            if cat.composable(f, g):
                splits.setdefault(cat.comp[(f, g)], []).append((f, g))
    w_non_id = [m for m in non_id if rc.is_weq(m)]
    slides = {}
    slides_rev = {}
    for f in non_id:
        for w in w_non_id:
            if cat.tgt[f] != cat.tgt[w]:
                continue
            for v in w_non_id:
                if cat.tgt[v] != cat.src[f]:
                    continue
                for g in non_id:
                    if (cat.src[g] == cat.src[v] and cat.tgt[g] == cat.src[w]
                            and cat.comp[(v, f)] == cat.comp[(g, w)]):
                        slides.setdefault((f, w), []).append((v, g))
                        slides_rev.setdefault((v, g), []).append((f, w))

    def note(word, new):
        if new in word_set:
            uf.union(word, new)

    for word in words:
        n = len(word)
        # object path along the word
        path = [a]
        for d, m in word:
            path.append(cat.tgt[m] if d == FWD else cat.src[m])
        for i in range(n - 1):
            (d1, m1), (d2, m2) = word[i], word[i + 1]
            if d1 == d2 == FWD:
                c = cat.comp[(m1, m2)]
                mid = () if cat.is_identity(c) else ((FWD, c),)
                note(word, word[:i] + mid + word[i + 2:])
            elif d1 == d2 == BWD:
                c = cat.comp[(m2, m1)]
                mid = () if cat.is_identity(c) else ((BWD, c),)
                note(word, word[:i] + mid + word[i + 2:])
            elif d1 == FWD and d2 == BWD and m1 == m2 and rc.is_weq(m1):
                note(word, word[:i] + word[i + 2:])
            elif d1 == BWD and d2 == FWD and m1 == m2:
                note(word, word[:i] + word[i + 2:])
            if d1 == FWD and d2 == BWD and (m1, m2) in slides:
                for v, g in slides[(m1, m2)]:
                    note(word, word[:i] + ((BWD, v), (FWD, g)) + word[i + 2:])
            if d1 == BWD and d2 == FWD and (m1, m2) in slides_rev:
                for f, w in slides_rev[(m1, m2)]:
                    note(word, word[:i] + ((FWD, f), (BWD, w)) + word[i + 2:])
        if n + 1 <= bound:
            for i, (d, m) in enumerate(word):
                for f, g in splits.get(m, ()):
                    if d == FWD:
                        note(word, word[:i] + ((FWD, f), (FWD, g)) + word[i + 1:])
                    elif rc.is_weq(f) and rc.is_weq(g):
                        note(word, word[:i] + ((BWD, g), (BWD, f)) + word[i + 1:])
        if n + 2 <= bound:
            for i in range(n + 1):
                at = path[i]
                for m in w_non_id:
                    if cat.src[m] == at:
                        note(word, word[:i] + ((FWD, m), (BWD, m)) + word[i:])
                    if cat.tgt[m] == at:
                        note(word, word[:i] + ((BWD, m), (FWD, m)) + word[i:])
    return uf.classes()


def _core_classes(partition, core_len):
    return tuple(cls for cls in partition
                 if any(len(w) <= core_len for w in cls))


def bounded_localization_oracle(rc, a, b, length_bound):
    """Classes of alternating zigzags a ~> b under the rewrite
    congruence, saturated on words up to length_bound and counted on the
    core window (two shorter), with a stability flag comparing against
    the same computation at length_bound - 2."""
    if length_bound < 4:
        raise StructuralError("the oracle needs length_bound >= 4")
    full = _oracle_partition(rc, a, b, length_bound)
    classes = _core_classes(full, length_bound - 2)
    smaller_full = _oracle_partition(rc, a, b, length_bound - 2)
    smaller = _core_classes(smaller_full, length_bound - 4)
    return OracleReport(a, b, length_bound, classes, len(classes),
                        len(smaller), len(classes) == len(smaller), full)


@dataclass
class SaturationReport:
    """Which morphisms become invertible after localizing, versus the
    marking.  ``mode`` records how invertibility was decided."""

    mode: str
    convention: str
    verdict: str            # "pass" | "fail" | "inconclusive"
    iso_morphisms: tuple
    unmarked_but_iso: tuple
    marked_but_not_iso: tuple
    notes: list

    @property
    def passed(self):
        return self.verdict == "pass"

    def to_dict(self):
        return {
            "mode": self.mode,
            "zigzag_morphism_convention": self.convention,
            "verdict": self.verdict,
            "unmarked_but_iso": list(self.unmarked_but_iso),
            "marked_but_not_iso": list(self.marked_but_not_iso),
            "notes": list(self.notes),
        }


def check_saturation(pms, weq_components=True):
    """A map should be marked exactly when its class becomes invertible
    in the homotopy category.  Requires a verified structure; see
    diagnostic_saturation for the oracle-driven variant on a raw
    relative category."""
    rc = pms.rc
    ho = homotopy_category(pms, weq_components)
    isos = []
    for f in rc.cat.morphisms:
        cid = ho.image_of_morphism(rc, f)
        if ho.is_iso(cid):
            isos.append(f)
    iso_set = set(isos)
    unmarked = tuple(f for f in isos if not rc.is_weq(f))
    not_iso = tuple(f for f in rc.weq if f not in iso_set)
    verdict = "pass" if not unmarked and not not_iso else "fail"
    return SaturationReport(
        "verified-structure", "weq-components" if weq_components else "all-maps",
        verdict, tuple(isos), unmarked, not_iso,
        ["invertibility decided by exhaustive two-sided inverse search "
         "over homotopy-category classes"])


def diagnostic_saturation(rc, length_bound=7):
    """Oracle-mode saturation check on a raw relative category.

    A morphism counts as invertible when some bounded word composes
    with it to the empty class on both sides.  Any instability of the
    involved word spaces makes the verdict inconclusive, never a false
    pass.
    """
    cat = rc.cat
    partitions = {}
    stability = {}

    def classes_for(x, y):
        if (x, y) not in partitions:
            rep = bounded_localization_oracle(rc, x, y, length_bound)
            partitions[(x, y)] = rep
            stability[(x, y)] = rep.stable
        return partitions[(x, y)]

    def same_class(rep, w1, w2):
        c1, c2 = rep.class_of(w1), rep.class_of(w2)
        return c1 is not None and c1 == c2

    isos = []
    for f in cat.morphisms:
        a, b = cat.src[f], cat.tgt[f]
        if cat.is_identity(f):
            isos.append(f)
            continue
        loop_a = classes_for(a, a)
        loop_b = classes_for(b, b)
        f_word = ((FWD, f),)
        found = False
        for g in _enumerate_words(rc, b, a, length_bound - 1):
            if (same_class(loop_a, f_word + g, ())
                    and same_class(loop_b, g + f_word, ())):
                found = True
                break
        if found:
            isos.append(f)
    iso_set = set(isos)
    unmarked = tuple(f for f in isos if not rc.is_weq(f))
    not_iso = tuple(f for f in rc.weq if f not in iso_set)
    unstable = sorted(k for k, v in stability.items() if not v)
    if unstable and not unmarked and not not_iso:
        verdict = "inconclusive"
    else:
        verdict = "pass" if not unmarked and not not_iso else "fail"
    notes = [f"bound {length_bound}"]
    if unstable:
        notes.append(f"unstable word spaces: {unstable}")
    return SaturationReport("diagnostic-oracle", "words", verdict,
                            tuple(isos), unmarked, not_iso, notes)
