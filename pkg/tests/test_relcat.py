import pytest
from hypothesis import given, settings, strategies as st

from pmcat.fincat import StructuralError
from pmcat.relcat import (
    RelCategory, validate_relative, check_two_of_three, check_two_of_six,
    homotopically_full_subcategory, relative_functor_category,
    restrict_to_weq, random_preorder_relcat,
)
from conftest import chain_poset, walking_iso, terminal_category


def iw():
    cat = chain_poset(1)
    return RelCategory(cat, cat.morphisms)


def i1():
    return RelCategory(chain_poset(1), [])


def p4():
    return RelCategory(chain_poset(3), ["02", "13"])


def test_validate_relative_iw():
    assert validate_relative(iw()).ok


def test_validate_relative_non_closed_pair_absent():
    # W = {ids, 01} on poset [2]: no two marked non-identities compose,
    # so closure holds.  Oracle: scan the marked set by hand.
    cat = chain_poset(2)
    rc = RelCategory(cat, ["01"])
    marked = set(rc.weq)
    assert not any(
        cat.composable(f, g) and not cat.is_identity(f) and not cat.is_identity(g)
        for f in marked for g in marked)
    assert validate_relative(rc).ok


def test_validate_relative_closure_violation():
    cat = chain_poset(2)
    rc = RelCategory(cat, ["01", "12"])  # composite 02 missing
    report = validate_relative(rc)
    assert not report.ok
    assert any(v.law == "not-closed" and v.witness == ("01", "12")
               for v in report.violations)


def test_validate_relative_missing_identity():
    cat = chain_poset(1)
    rc = RelCategory(cat, ["id:1", "01"], add_identities=False)
    report = validate_relative(rc)
    assert any(v.law == "identity-not-marked" and v.witness == ("0",)
               for v in report.violations)


def test_unknown_weq_id_is_structural():
    with pytest.raises(StructuralError):
        RelCategory(chain_poset(1), ["zz"])


# -- two-of-three ----------------------------------------------------------

def test_two_of_three_all_marked_passes():
    assert check_two_of_three(iw()).passed


def test_two_of_three_p4_passes():
    # Oracle: scan pairs by hand -- marked composable non-identity pairs
    # in W = {02, 13} do not exist, and no pair has exactly two of
    # {r, s, sr} marked.  The checker must agree.
    assert check_two_of_three(p4()).passed


def test_two_of_three_failure_witness():
    cat = chain_poset(2)
    rc = RelCategory(cat, ["01", "02"])
    report = check_two_of_three(rc)
    assert not report.passed
    assert ("01", "12") in report.witnesses


# -- two-of-six ------------------------------------------------------------

def test_two_of_six_p4_fails_with_expected_witness():
    report = check_two_of_six(p4())
    assert not report.passed
    assert report.witnesses[0] == ("01", "12", "23")


def test_two_of_six_iw_passes():
    report = check_two_of_six(iw())
    assert report.passed
    assert any("two-of-three: pass" in n for n in report.notes)
    assert any("isomorphisms marked: pass" in n for n in report.notes)


def test_two_of_six_identities_only_passes():
    assert check_two_of_six(i1()).passed


def test_two_of_six_walking_iso():
    j = walking_iso()
    assert check_two_of_six(RelCategory(j, j.morphisms)).passed
    # marking only identities fails iso-containment via the triple scan:
    # s, t, s gives ts = id and st = id marked, but s is not marked
    report = check_two_of_six(RelCategory(j, []))
    assert not report.passed
    assert ("s", "t", "s") in report.witnesses


# -- implications on random fixtures ----------------------------------------

@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_two_of_six_implies_two_of_three_and_isos(seed):
    rc = random_preorder_relcat(seed)
    assert validate_relative(rc).ok
    if check_two_of_six(rc).passed:
        assert check_two_of_three(rc).passed
        assert all(rc.is_weq(m) for m in rc.cat.isos())


# -- homotopically full subcategories ---------------------------------------

def test_homotopically_full_whole_category():
    rc = iw()
    sub = homotopically_full_subcategory(rc, ["0"])
    assert set(sub.cat.objects) == {"0", "1"}


def test_homotopically_full_single_component():
    rc = i1()
    sub = homotopically_full_subcategory(rc, ["0"])
    assert set(sub.cat.objects) == {"0"}


def test_homotopically_full_all_seeds_is_identity():
    rc = p4()
    sub = homotopically_full_subcategory(rc, rc.cat.objects)
    assert sub.cat.objects == rc.cat.objects
    assert sub.weq == rc.weq


def test_homotopically_full_idempotent_and_monotone():
    rc = p4()
    small = homotopically_full_subcategory(rc, ["0"])
    again = homotopically_full_subcategory(small, ["0"])
    assert small.cat.objects == again.cat.objects
    bigger = homotopically_full_subcategory(rc, ["0", "1"])
    assert set(small.cat.objects) <= set(bigger.cat.objects)


# -- relative functor categories --------------------------------------------

def test_functor_category_from_point_is_target():
    from pmcat.fincat import category_isomorphism
    pt = RelCategory(terminal_category(), [])
    for rc in (iw(), i1(), p4()):
        fc = relative_functor_category(rc, pt)
        iso = category_isomorphism(fc.cat, rc.cat)
        assert iso is not None
        obj_map, mor_map = iso
        # marked transformations correspond to marked morphisms
        assert {mor_map[m] for m in fc.weq} == set(rc.weq)


def test_functor_category_counts_interval():
    # functors [1] -> [1] are the monotone maps 00, 01, 11: three of them
    fc = relative_functor_category(iw(), i1())
    assert len(fc.cat.objects) == 3


def test_functor_category_walking_iso_to_rigid_interval():
    j = walking_iso()
    src = RelCategory(j, j.morphisms)
    fc = relative_functor_category(i1(), src)
    # the iso must land in W = identities, so only constant functors qualify
    assert len(fc.cat.objects) == 2


def test_functor_category_is_valid_relative_category():
    fc = relative_functor_category(iw(), i1())
    assert fc.cat.validate().ok
    assert validate_relative(fc).ok


# -- restriction to the marked subcategory -----------------------------------

def test_restrict_to_weq_iw_is_iw():
    rc = iw()
    sub = restrict_to_weq(rc)
    assert sub.cat.morphisms == rc.cat.morphisms
    assert sub.weq == sub.cat.morphisms


def test_restrict_to_weq_rigid_interval_is_discrete():
    sub = restrict_to_weq(i1())
    assert len(sub.cat.objects) == 2
    assert all(sub.cat.is_identity(m) for m in sub.cat.morphisms)


def test_restrict_to_weq_p4():
    sub = restrict_to_weq(p4())
    assert set(sub.cat.morphisms) == {"id:0", "id:1", "id:2", "id:3", "02", "13"}
    assert sub.cat.validate().ok
