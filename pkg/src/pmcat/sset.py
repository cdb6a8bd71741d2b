"""Truncated simplicial and bisimplicial sets.

Simplex sets are stored per (bi)dimension up to a hard truncation bound,
with face and degeneracy operators as index tables into the adjacent
dimensions.  All simplicial identities among operators that stay inside
the truncation can be (and in the tests are) checked exhaustively.

Homology uses the normalized chain complex -- the quotient by degenerate
simplices -- with integer coefficients and Smith normal form.  Because
the complex is truncated at ``n_max``, homology is only trusted in
degrees strictly below ``n_max``, and the API refuses to go higher.
"""

from dataclasses import dataclass

from ._util import UnionFind
from .smith import smith_invariants


class TruncationError(ValueError):
    """An operator or degree outside the stored truncation was needed."""


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group: free rank plus invariant
    factors > 1 (each dividing the next)."""

    rank: int
    torsion: tuple = ()

    def __str__(self):
        parts = ["Z"] * self.rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_dict(self):
        return {"rank": self.rank, "torsion": list(self.torsion)}


class TruncatedSimplicialSet:
    """Simplex sets per dimension 0..n_max with operator index tables.

    ``simplices[n]`` lists canonical simplex values; ``faces[(n, i)]``
    and ``degeneracies[(n, i)]`` map the index of a simplex in dimension
    n to the index of its image.
    """

    def __init__(self, n_max, simplices, faces, degeneracies):
        self.n_max = n_max
        self.simplices = [list(s) for s in simplices]
        self.faces = {k: list(v) for k, v in faces.items()}
        self.degeneracies = {k: list(v) for k, v in degeneracies.items()}
        self.index = [{s: i for i, s in enumerate(level)} for level in self.simplices]

    def size(self, n):
        return len(self.simplices[n])

    def face(self, n, i, idx):
        return self.faces[(n, i)][idx]

    def degeneracy(self, n, i, idx):
        return self.degeneracies[(n, i)][idx]

    def validate_identities(self):
        """All simplicial identities among operators defined within the
        truncation; returns a list of violation strings (empty = pass)."""
        bad = []
        for n in range(2, self.n_max + 1):
            for j in range(n + 1):
                for i in range(j):
                    fj, fi = self.faces[(n, j)], self.faces[(n, i)]
                    gi, gj1 = self.faces[(n - 1, i)], self.faces[(n - 1, j - 1)]
                    for x in range(self.size(n)):
                        if gi[fj[x]] != gj1[fi[x]]:
                            bad.append(f"d{i} d{j} != d{j - 1} d{i} at dim {n} index {x}")
        for n in range(0, self.n_max - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    si, sj = self.degeneracies[(n, i)], self.degeneracies[(n, j)]
                    s2i, s2j1 = self.degeneracies[(n + 1, i)], self.degeneracies[(n + 1, j + 1)]
                    for x in range(self.size(n)):
                        if s2i[sj[x]] != s2j1[si[x]]:
                            bad.append(f"s{i} s{j} != s{j + 1} s{i} at dim {n} index {x}")
        for n in range(0, self.n_max):
            for j in range(n + 1):
                sj = self.degeneracies[(n, j)]
                for i in range(n + 2):
                    di = self.faces[(n + 1, i)]
                    for x in range(self.size(n)):
                        y = di[sj[x]]
                        if i == j or i == j + 1:
                            if y != x:
                                bad.append(f"d{i} s{j} != id at dim {n} index {x}")
                        elif i < j:
                            if n >= 1 and y != self.degeneracies[(n - 1, j - 1)][self.faces[(n, i)][x]]:
                                bad.append(f"d{i} s{j} != s{j - 1} d{i} at dim {n} index {x}")
                        else:
                            if n >= 1 and y != self.degeneracies[(n - 1, j)][self.faces[(n, i - 1)][x]]:
                                bad.append(f"d{i} s{j} != s{j} d{i - 1} at dim {n} index {x}")
        return bad

    def degenerate_indices(self, n):
        """Indices in dimension n that are images of a degeneracy."""
        if n == 0:
            return set()
        out = set()
        for i in range(n):
            out.update(self.degeneracies[(n - 1, i)])
        return out

    def nondegenerate(self, n):
        deg = self.degenerate_indices(n)
        return [i for i in range(self.size(n)) if i not in deg]


def pi0(s):
    """Connected components of the 0-simplices under 1-simplices.

    Returns the partition as a tuple of sorted tuples of simplex values.
    """
    if s.n_max < 1:
        raise TruncationError("pi0 needs 1-simplices")
    uf = UnionFind(range(s.size(0)))
    d0, d1 = s.faces[(1, 0)], s.faces[(1, 1)]
    for e in range(s.size(1)):
        uf.union(d0[e], d1[e])
    classes = uf.classes()
    vals = s.simplices[0]
    return tuple(tuple(vals[i] for i in cls) for cls in classes)


def normalized_boundaries(s, up_to):
    """Boundary matrices of the normalized chain complex.

    Returns (dims, boundaries): ``dims[n]`` is the number of
    nondegenerate n-simplices for n <= up_to, and ``boundaries[n]`` (for
    1 <= n <= up_to) the sparse columns of the boundary from degree n to
    n - 1, indexed by position within the nondegenerate lists.
    """
    if up_to > s.n_max:
        raise TruncationError(
            f"boundaries up to {up_to} need simplices beyond truncation {s.n_max}")
    nondeg = {n: s.nondegenerate(n) for n in range(up_to + 1)}
    pos = {n: {idx: p for p, idx in enumerate(nondeg[n])} for n in range(up_to + 1)}
    dims = [len(nondeg[n]) for n in range(up_to + 1)]
    boundaries = {}
    for n in range(1, up_to + 1):
        cols = []
        lower = pos[n - 1]
        for idx in nondeg[n]:
            col = {}
            for i in range(n + 1):
                f = s.faces[(n, i)][idx]
                p = lower.get(f)
                if p is None:
                    continue  # degenerate face dies in the quotient
                col[p] = col.get(p, 0) + (1 if i % 2 == 0 else -1)
            cols.append({r: v for r, v in col.items() if v})
        boundaries[n] = cols
    return dims, boundaries


def homology_of_boundaries(dims, boundaries, up_to):
    """Homology groups H_0..H_up_to of a chain complex given by sparse
    boundary columns; needs boundaries up to degree up_to + 1."""
    ranks = {}
    torsions = {}
    for n, cols in boundaries.items():
        inv = smith_invariants(cols, dims[n - 1] if n - 1 < len(dims) else 0)
        ranks[n] = len(inv)
        torsions[n] = tuple(d for d in inv if d != 1)
    out = []
    for i in range(up_to + 1):
        rank_d_i = ranks.get(i, 0)
        rank_d_next = ranks.get(i + 1, 0)
        free = dims[i] - rank_d_i - rank_d_next
        out.append(AbelianGroup(free, torsions.get(i + 1, ())))
    return out


def homology(s, up_to):
    """H_0 .. H_up_to of the normalized integral chain complex.

    Refuses degrees that the truncation cannot certify: needs
    ``up_to <= n_max - 1`` so every required boundary map exists.
    """
    if up_to > s.n_max - 1:
        raise TruncationError(
            f"homology up to degree {up_to} is not certified at truncation {s.n_max}")
    dims, boundaries = normalized_boundaries(s, up_to + 1)
    return homology_of_boundaries(dims, boundaries, up_to)


# -- nerves -----------------------------------------------------------------

def _chain_faces_degens(cat, n_max, chains):
    """Index tables for nerve-style chains.  ``chains[n]`` lists the
    dimension-n simplices: objects at n = 0, tuples of morphisms above."""
    index = [{s: i for i, s in enumerate(level)} for level in chains]
    faces = {}
    degeneracies = {}
    for n in range(1, n_max + 1):
        for i in range(n + 1):
            table = []
            for c in chains[n]:
                if n == 1:
                    val = cat.tgt[c[0]] if i == 0 else cat.src[c[0]]
                elif i == 0:
                    val = c[1:]
                elif i == n:
                    val = c[:-1]
                else:
                    val = c[:i - 1] + (cat.comp[(c[i - 1], c[i])],) + c[i + 1:]
                table.append(index[n - 1][val])
            faces[(n, i)] = table
    for n in range(0, n_max):
        for i in range(n + 1):
            table = []
            for c in chains[n]:
                if n == 0:
                    val = (cat.identity[c],)
                else:
                    vertex = cat.src[c[0]] if i == 0 else cat.tgt[c[i - 1]]
                    val = c[:i] + (cat.identity[vertex],) + c[i:]
                table.append(index[n + 1][val])
            degeneracies[(n, i)] = table
    return faces, degeneracies


def nerve(cat, n_max):
    """The nerve: n-simplices are composable n-chains of morphisms."""
    chains = [list(cat.objects)]
    for n in range(1, n_max + 1):
        level = []
        if n == 1:
            level = [(m,) for m in cat.morphisms]
        else:
            for c in chains[n - 1]:
                for m in cat.out_of(cat.tgt[c[-1]]):
                    level.append(c + (m,))
        chains.append(level)
    faces, degeneracies = _chain_faces_degens(cat, n_max, chains)
    return TruncatedSimplicialSet(n_max, chains, faces, degeneracies)


# -- bisimplicial sets --------------------------------------------------------

class TruncatedBisimplicialSet:
    """Simplex sets per bidegree (k, n) up to (k_max, n_max), with
    horizontal and vertical operator index tables."""

    def __init__(self, k_max, n_max, simplices, hfaces, vfaces, hdegens, vdegens):
        self.k_max = k_max
        self.n_max = n_max
        self.simplices = {kn: list(v) for kn, v in simplices.items()}
        self.hfaces = hfaces      # (k, n, i) -> indices into (k-1, n)
        self.vfaces = vfaces      # (k, n, j) -> indices into (k, n-1)
        self.hdegens = hdegens    # (k, n, i) -> indices into (k+1, n)
        self.vdegens = vdegens    # (k, n, j) -> indices into (k, n+1)
        self.index = {kn: {s: i for i, s in enumerate(v)}
                      for kn, v in self.simplices.items()}

    def size(self, k, n):
        return len(self.simplices[(k, n)])

    def validate_identities(self):
        """Horizontal and vertical simplicial identities plus the
        commutation of the two directions; list of violations."""
        bad = []

        def level_tables(direction, fixed):
            # view one direction as a simplicial set at the other fixed
            if direction == "h":
                sizes = [self.size(k, fixed) for k in range(self.k_max + 1)]
                faces = {(k, i): self.hfaces[(k, fixed, i)]
                         for k in range(1, self.k_max + 1) for i in range(k + 1)}
                degs = {(k, i): self.hdegens[(k, fixed, i)]
                        for k in range(0, self.k_max) for i in range(k + 1)}
                top = self.k_max
            else:
                sizes = [self.size(fixed, n) for n in range(self.n_max + 1)]
                faces = {(n, i): self.vfaces[(fixed, n, i)]
                         for n in range(1, self.n_max + 1) for i in range(n + 1)}
                degs = {(n, i): self.vdegens[(fixed, n, i)]
                        for n in range(0, self.n_max) for i in range(n + 1)}
                top = self.n_max
            return sizes, faces, degs, top

        for direction, other_top in (("h", self.n_max), ("v", self.k_max)):
            for fixed in range(other_top + 1):
                sizes, faces, degs, top = level_tables(direction, fixed)
                fake = TruncatedSimplicialSet.__new__(TruncatedSimplicialSet)
                fake.n_max = top
                fake.simplices = [list(range(sz)) for sz in sizes]
                fake.faces = faces
                fake.degeneracies = degs
                fake.index = None
                for msg in fake.validate_identities():
                    bad.append(f"{direction} at level {fixed}: {msg}")

        # the two directions commute
        for k in range(self.k_max + 1):
            for n in range(self.n_max + 1):
                cnt = self.size(k, n)
                for i in range(k + 1) if k >= 1 else ():
                    for j in range(n + 1) if n >= 1 else ():
                        hf = self.hfaces[(k, n, i)]
                        vf = self.vfaces[(k, n, j)]
                        vf2 = self.vfaces[(k - 1, n, j)]
                        hf2 = self.hfaces[(k, n - 1, i)]
                        for x in range(cnt):
                            if vf2[hf[x]] != hf2[vf[x]]:
                                bad.append(f"dh{i} dv{j} disagree at ({k},{n}) index {x}")
                if k < self.k_max and n >= 1:
                    for i in range(k + 1):
                        for j in range(n + 1):
                            hd = self.hdegens[(k, n, i)]
                            vf = self.vfaces[(k, n, j)]
                            vf2 = self.vfaces[(k + 1, n, j)]
                            hd2 = self.hdegens[(k, n - 1, i)]
                            for x in range(cnt):
                                if vf2[hd[x]] != hd2[vf[x]]:
                                    bad.append(f"sh{i} dv{j} disagree at ({k},{n}) index {x}")
                if n < self.n_max and k >= 1:
                    for i in range(k + 1):
                        for j in range(n + 1):
                            vd = self.vdegens[(k, n, j)]
                            hf = self.hfaces[(k, n, i)]
                            hf2 = self.hfaces[(k, n + 1, i)]
                            vd2 = self.vdegens[(k - 1, n, j)]
                            for x in range(cnt):
                                if hf2[vd[x]] != vd2[hf[x]]:
                                    bad.append(f"dh{i} sv{j} disagree at ({k},{n}) index {x}")
                if k < self.k_max and n < self.n_max:
                    for i in range(k + 1):
                        for j in range(n + 1):
                            hd = self.hdegens[(k, n, i)]
                            vd = self.vdegens[(k, n, j)]
                            vd2 = self.vdegens[(k + 1, n, j)]
                            hd2 = self.hdegens[(k, n + 1, i)]
                            for x in range(cnt):
                                if vd2[hd[x]] != hd2[vd[x]]:
                                    bad.append(f"sh{i} sv{j} disagree at ({k},{n}) index {x}")
        return bad


def _row_transitions(rc, rows):
    """For each pair of k-chains, the componentwise marked natural maps
    row -> row2; returns a list of (row_idx, row2_idx, step) tuples."""
    cat = rc.cat
    out = []
    for a, (objs1, arrows1) in enumerate(rows):
        for b, (objs2, arrows2) in enumerate(rows):
            k = len(arrows1)
            partial = []

            def extend(i, comps):
                if i == len(objs1):
                    partial.append(tuple(comps))
                    return
                for m in rc.weq_hom(objs1[i], objs2[i]):
                    if i >= 1:
                        if cat.comp[(comps[-1], arrows2[i - 1])] != cat.comp[(arrows1[i - 1], m)]:
                            continue
                    comps.append(m)
                    extend(i + 1, comps)
                    comps.pop()

            extend(0, [])
            for step in partial:
                out.append((a, b, step))
    return out


def _k_chains_with_objects(cat, k):
    """All k-chains as (object tuple, arrow tuple)."""
    if k == 0:
        return [((o,), ()) for o in cat.objects]
    rows = [((cat.src[m], cat.tgt[m]), (m,)) for m in cat.morphisms]
    for _ in range(k - 1):
        nxt = []
        for objs, arrows in rows:
            for m in cat.out_of(objs[-1]):
                nxt.append((objs + (cat.tgt[m],), arrows + (m,)))
        rows = nxt
    return rows


def rezk_nerve(rc, k_max=4, n_max=4):
    """The classification nerve of a relative category.

    The (k, n)-simplices are (k+1) x (n+1) grids of objects with k
    horizontal morphisms per row and n marked vertical morphisms per
    column, all squares commuting.  Levels: k = 0 is the nerve of the
    marked subcategory; n = 0 is the set of k-chains of the category.

    A grid is stored canonically as (object rows, horizontal arrow
    rows, vertical step rows).
    """
    cat = rc.cat
    simplices = {}
    rows_per_k = {}
    trans_per_k = {}
    for k in range(k_max + 1):
        rows = _k_chains_with_objects(cat, k)
        rows_per_k[k] = rows
        trans = {}
        for a, b, step in _row_transitions(rc, rows):
            trans.setdefault(a, []).append((b, step))
        trans_per_k[k] = trans
        # grids: sequences of n steps
        seqs = [((a,), ()) for a in range(len(rows))]
        for n in range(n_max + 1):
            level = []
            for row_idxs, steps in seqs:
                objs = tuple(rows_per_k[k][r][0] for r in row_idxs)
                hs = tuple(rows_per_k[k][r][1] for r in row_idxs)
                level.append((objs, hs, steps))
            simplices[(k, n)] = level
            if n < n_max:
                nxt = []
                for row_idxs, steps in seqs:
                    for b, step in trans.get(row_idxs[-1], ()):
                        nxt.append((row_idxs + (b,), steps + (step,)))
                seqs = nxt

    index = {kn: {s: i for i, s in enumerate(v)} for kn, v in simplices.items()}
    hfaces, vfaces, hdegens, vdegens = {}, {}, {}, {}

    def hface(grid, i, k):
        objs, hs, vs = grid
        new_objs = tuple(row[:i] + row[i + 1:] for row in objs)
        if k == 1:
            new_hs = tuple(() for _ in hs)
        elif i == 0:
            new_hs = tuple(row[1:] for row in hs)
        elif i == k:
            new_hs = tuple(row[:-1] for row in hs)
        else:
            new_hs = tuple(row[:i - 1] + (cat.comp[(row[i - 1], row[i])],) + row[i + 1:]
                           for row in hs)
        new_vs = tuple(step[:i] + step[i + 1:] for step in vs)
        return (new_objs, new_hs, new_vs)

    def hdegen(grid, i):
        objs, hs, vs = grid
        new_objs = tuple(row[:i + 1] + row[i:] for row in objs)
        new_hs = tuple(row[:i] + (cat.identity[objs[r][i]],) + row[i:]
                       for r, row in enumerate(hs))
        new_vs = tuple(step[:i + 1] + step[i:] for step in vs)
        return (new_objs, new_hs, new_vs)

    def vface(grid, j, n):
        objs, hs, vs = grid
        if j == 0:
            return (objs[1:], hs[1:], vs[1:])
        if j == n:
            return (objs[:-1], hs[:-1], vs[:-1])
        merged = tuple(cat.comp[(vs[j - 1][i], vs[j][i])] for i in range(len(vs[j])))
        return (objs[:j] + objs[j + 1:], hs[:j] + hs[j + 1:],
                vs[:j - 1] + (merged,) + vs[j + 1:])

    def vdegen(grid, j):
        objs, hs, vs = grid
        idstep = tuple(cat.identity[o] for o in objs[j])
        return (objs[:j + 1] + objs[j:], hs[:j + 1] + hs[j:],
                vs[:j] + (idstep,) + vs[j:])

    for (k, n), level in simplices.items():
        for i in range(k + 1) if k >= 1 else ():
            hfaces[(k, n, i)] = [index[(k - 1, n)][hface(g, i, k)] for g in level]
        for j in range(n + 1) if n >= 1 else ():
            vfaces[(k, n, j)] = [index[(k, n - 1)][vface(g, j, n)] for g in level]
        if k < k_max:
            for i in range(k + 1):
                hdegens[(k, n, i)] = [index[(k + 1, n)][hdegen(g, i)] for g in level]
        if n < n_max:
            for j in range(n + 1):
                vdegens[(k, n, j)] = [index[(k, n + 1)][vdegen(g, j)] for g in level]

    return TruncatedBisimplicialSet(k_max, n_max, simplices, hfaces, vfaces,
                                    hdegens, vdegens)


def diagonal(b):
    """Diagonal simplicial set of a bisimplicial set (square truncation
    required): n-simplices are the (n, n)-simplices, with operators
    applied in both directions."""
    if b.k_max != b.n_max:
        raise TruncationError("diagonal needs k_max == n_max")
    t = b.n_max
    simplices = [b.simplices[(n, n)] for n in range(t + 1)]
    faces = {}
    degeneracies = {}
    for n in range(1, t + 1):
        for i in range(n + 1):
            vf = b.vfaces[(n, n, i)]
            hf = b.hfaces[(n, n - 1, i)]
            faces[(n, i)] = [hf[vf[x]] for x in range(b.size(n, n))]
    for n in range(0, t):
        for i in range(n + 1):
            hd = b.hdegens[(n, n, i)]
            vd = b.vdegens[(n + 1, n, i)]
            degeneracies[(n, i)] = [vd[hd[x]] for x in range(b.size(n, n))]
    return TruncatedSimplicialSet(t, simplices, faces, degeneracies)
