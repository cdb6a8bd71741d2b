from itertools import product

import pytest

from pmcat.relcat import RelCategory, restrict_to_weq
from pmcat.sset import (
    TruncationError, AbelianGroup, nerve, rezk_nerve, diagonal, pi0, homology,
)
from conftest import chain_poset, boolean_lattice, walking_iso, terminal_category


def iw():
    cat = chain_poset(1)
    return RelCategory(cat, cat.morphisms)


def i1():
    return RelCategory(chain_poset(1), [])


# -- nerve ---------------------------------------------------------------

def test_nerve_point_counts():
    s = nerve(terminal_category(), 2)
    assert [s.size(n) for n in range(3)] == [1, 1, 1]


def test_nerve_interval_counts():
    s = nerve(chain_poset(1), 1)
    assert s.size(0) == 2 and s.size(1) == 3


def test_nerve_walking_iso_counts():
    # oracle: chains in the two-object category with all hom-sets
    # singletons: 2 objects, 4 morphisms, 4*2 composable pairs
    j = walking_iso()
    pairs = sum(1 for f in j.morphisms for g in j.morphisms if j.composable(f, g))
    s = nerve(j, 2)
    assert (s.size(0), s.size(1), s.size(2)) == (2, 4, pairs) == (2, 4, 8)


def test_nerve_identities_hold():
    for cat in (terminal_category(), chain_poset(1), chain_poset(3),
                boolean_lattice(), walking_iso()):
        assert nerve(cat, 3).validate_identities() == []


def test_pi0_point_and_discrete():
    assert len(pi0(nerve(terminal_category(), 1))) == 1
    from conftest import poset_category
    disc = poset_category(["x", "y"], lambda a, b: a == b)
    assert len(pi0(nerve(disc, 1))) == 2


def test_pi0_needs_edges():
    s = nerve(terminal_category(), 0)
    with pytest.raises(TruncationError):
        pi0(s)


# -- homology -------------------------------------------------------------

def sympy_nerve_homology(cat, n_max, up_to):
    """Independent oracle: build the normalized boundary matrices from
    scratch (raw chain enumeration, no library code) and hand them to
    sympy's Smith normal form."""
    from sympy import Matrix
    from sympy.matrices.normalforms import smith_normal_form

    chains = {0: [(o,) for o in cat.objects]}
    for n in range(1, n_max + 1):
        level = []
        for c in chains[n - 1]:
            if n == 1:
                level = [(m,) for m in cat.morphisms]
                break
            for m in cat.morphisms:
                if cat.src[m] == cat.tgt[c[-1]]:
                    level.append(c + (m,))
        chains[n] = level
    nondeg = {0: chains[0]}
    for n in range(1, n_max + 1):
        nondeg[n] = [c for c in chains[n] if not any(cat.is_identity(m) for m in c)]

    def face(c, i, n):
        if n == 1:
            return (cat.tgt[c[0]],) if i == 0 else (cat.src[c[0]],)
        if i == 0:
            return c[1:]
        if i == n:
            return c[:-1]
        return c[:i - 1] + (cat.comp[(c[i - 1], c[i])],) + c[i + 1:]

    def boundary(n):
        rows = {c: i for i, c in enumerate(nondeg[n - 1])}
        mat = [[0] * len(nondeg[n]) for _ in range(len(nondeg[n - 1]))]
        for j, c in enumerate(nondeg[n]):
            for i in range(n + 1):
                f = face(c, i, n)
                if f in rows:
                    mat[rows[f]][j] += (-1) ** i
        return mat

    def invariants(mat):
        if not mat or not mat[0]:
            return []
        snf = smith_normal_form(Matrix(mat))
        out = []
        for i in range(min(len(mat), len(mat[0]))):
            if snf[i, i]:
                out.append(abs(int(snf[i, i])))
        return out

    groups = []
    for i in range(up_to + 1):
        inv_i = invariants(boundary(i)) if i >= 1 else []
        inv_next = invariants(boundary(i + 1))
        rank = len(nondeg[i]) - len(inv_i) - len(inv_next)
        torsion = tuple(d for d in inv_next if d != 1)
        groups.append(AbelianGroup(rank, torsion))
    return groups


def test_homology_walking_iso_is_point():
    s = nerve(walking_iso(), 4)
    assert homology(s, 2) == [AbelianGroup(1), AbelianGroup(0), AbelianGroup(0)]


def test_homology_discrete_two_objects():
    from conftest import poset_category
    disc = poset_category(["x", "y"], lambda a, b: a == b)
    assert homology(nerve(disc, 2), 0) == [AbelianGroup(2)]


def test_homology_interval():
    s = nerve(chain_poset(1), 2)
    assert homology(s, 1) == [AbelianGroup(1), AbelianGroup(0)]


def test_homology_matches_independent_oracle():
    for cat in (chain_poset(2), boolean_lattice(), walking_iso()):
        mine = homology(nerve(cat, 3), 2)
        oracle = sympy_nerve_homology(cat, 3, 2)
        assert mine == oracle


def test_homology_equivalence_invariance():
    # the walking isomorphism is equivalent to the point
    h_j = homology(nerve(walking_iso(), 4), 2)
    h_pt = homology(nerve(terminal_category(), 4), 2)
    assert h_j == h_pt


def test_homology_refuses_uncertified_degree():
    s = nerve(chain_poset(1), 2)
    with pytest.raises(TruncationError):
        homology(s, 2)


def test_h0_rank_equals_pi0():
    for cat in (terminal_category(), chain_poset(2), walking_iso()):
        s = nerve(cat, 2)
        assert homology(s, 0)[0].rank == len(pi0(s))


# -- classification nerve ---------------------------------------------------

def count_interval_grids(k, n, weq_all):
    """Oracle: monotone (k+1) x (n+1) grids over the two-point chain,
    with vertical steps constrained to the marking."""
    cells = list(product((0, 1), repeat=(k + 1) * (n + 1)))
    count = 0
    for flat in cells:
        grid = [flat[r * (k + 1):(r + 1) * (k + 1)] for r in range(n + 1)]
        ok = all(grid[r][i] <= grid[r][i + 1] for r in range(n + 1) for i in range(k))
        if ok:
            for r in range(n):
                for i in range(k + 1):
                    if grid[r][i] > grid[r + 1][i]:
                        ok = False
                    elif not weq_all and grid[r][i] != grid[r + 1][i]:
                        ok = False
        if ok:
            count += 1
    return count


def test_rezk_nerve_interval_counts():
    b = rezk_nerve(iw(), 1, 1)
    assert b.size(0, 0) == 2
    assert b.size(1, 0) == 3
    assert b.size(0, 1) == 3
    for k in range(2):
        for n in range(2):
            assert b.size(k, n) == count_interval_grids(k, n, weq_all=True)


def test_rezk_nerve_rigid_level_zero_is_discrete():
    b = rezk_nerve(i1(), 0, 3)
    for n in range(4):
        assert b.size(0, n) == 2  # only identity columns


def test_rezk_bidegree_zero_is_object_set():
    for rc in (iw(), i1()):
        b = rezk_nerve(rc, 1, 1)
        assert b.size(0, 0) == len(rc.cat.objects)


def test_rezk_identities_hold():
    assert rezk_nerve(iw(), 2, 2).validate_identities() == []
    assert rezk_nerve(i1(), 2, 2).validate_identities() == []
    cat = chain_poset(3)
    p4 = RelCategory(cat, ["02", "13"])
    assert rezk_nerve(p4, 2, 2).validate_identities() == []


def test_rezk_level_zero_matches_nerve_of_marked_subcategory():
    for rc in (iw(), i1(), RelCategory(chain_poset(3), ["02", "13"])):
        b = rezk_nerve(rc, 2, 3)
        w_nerve = nerve(restrict_to_weq(rc).cat, 3)
        for n in range(4):
            assert b.size(0, n) == w_nerve.size(n)
        # explicit operator-respecting bijection: a (0, n)-grid is the
        # column of its vertical steps
        def as_chain(grid, n):
            objs, hs, vs = grid
            return objs[0][0] if n == 0 else tuple(step[0] for step in vs)
        for n in range(4):
            imgs = [as_chain(g, n) for g in b.simplices[(0, n)]]
            assert sorted(imgs) == sorted(
                w_nerve.simplices[n]) and len(set(imgs)) == len(imgs)
        for n in range(1, 4):
            for j in range(n + 1):
                for x, g in enumerate(b.simplices[(0, n)]):
                    lhs = as_chain(b.simplices[(0, n - 1)][b.vfaces[(0, n, j)][x]], n - 1)
                    rhs = w_nerve.simplices[n - 1][
                        w_nerve.faces[(n, j)][w_nerve.index[n][as_chain(g, n)]]]
                    assert lhs == rhs


# -- diagonal ----------------------------------------------------------------

def test_diagonal_requires_square_truncation():
    b = rezk_nerve(iw(), 1, 2)
    with pytest.raises(TruncationError):
        diagonal(b)


def test_diagonal_of_vertically_rigid_nerve_is_horizontal_nerve():
    # W = identities: the vertical direction is constant, so the
    # diagonal recovers the ordinary nerve
    d = diagonal(rezk_nerve(i1(), 2, 2))
    plain = nerve(chain_poset(1), 2)
    assert [d.size(n) for n in range(3)] == [plain.size(n) for n in range(3)]
    assert d.validate_identities() == []


def test_diagonal_rigid_zero_simplices():
    d = diagonal(rezk_nerve(i1(), 2, 2))
    assert d.size(0) == 2


def test_diagonal_interval_connected():
    d = diagonal(rezk_nerve(iw(), 1, 1))
    assert len(pi0(d)) == 1
    d2 = diagonal(rezk_nerve(iw(), 2, 2))
    assert len(pi0(d2)) == 1
    assert d2.validate_identities() == []
