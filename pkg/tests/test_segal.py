from itertools import product

import pytest

from pmcat.fincat import check_functor, StructuralError
from pmcat.relcat import RelCategory, restrict_to_weq
from pmcat.pmc import trivial_partial_model_structure
from pmcat.sset import nerve, pi0, homology
from pmcat.segal import (
    chain_category, zigzag_chain_category, embedding_parts, build_retraction,
    check_strict_segal_identity, verify_segal,
)
from conftest import chain_poset, boolean_lattice, walking_iso, terminal_category


def iw_rc():
    cat = chain_poset(1)
    return RelCategory(cat, cat.morphisms)


def i1_rc():
    return RelCategory(chain_poset(1), [])


def b2_rc():
    cat = boolean_lattice()
    return RelCategory(cat, cat.morphisms)


def j_rc():
    cat = walking_iso()
    return RelCategory(cat, cat.morphisms)


def p4_rc():
    return RelCategory(chain_poset(3), ["02", "13"])


# -- chain categories ---------------------------------------------------------

def test_chain_category_zero_is_marked_subcategory():
    for rc in (iw_rc(), i1_rc(), p4_rc()):
        a0 = chain_category(rc, 0)
        sub = restrict_to_weq(rc).cat
        assert a0.objects == sub.objects
        assert a0.morphisms == sub.morphisms
        assert a0.comp == sub.comp


def test_chain_category_interval_counts():
    # oracle: squares in [1] with all maps marked are pairs of chains
    # comparing pointwise; count = 6 for k = 1
    oracle = 0
    for c in product((0, 1), repeat=2):
        for c2 in product((0, 1), repeat=2):
            if c[0] <= c[1] and c2[0] <= c2[1] and c[0] <= c2[0] and c[1] <= c2[1]:
                oracle += 1
    a1 = chain_category(iw_rc(), 1)
    assert len(a1.objects) == 3
    assert len(a1.morphisms) == oracle == 6


def test_chain_category_interval_k2():
    a2 = chain_category(iw_rc(), 2)
    assert len(a2.objects) == 4  # 00.00, 00.01, 01.11, 11.11


def test_chain_categories_are_categories():
    for rc in (iw_rc(), i1_rc(), b2_rc()):
        for k in (1, 2):
            assert chain_category(rc, k).validate().ok


# -- zigzag chain categories -----------------------------------------------------

def count_interval_zigzags(k, weq_all):
    """Oracle: monotone assignments c0<=c1<=c2, c3<=c2, c3<=c4<=...<=c_{k+3}
    over {0,1}; rigid marking forces the three middle maps to be
    identities."""
    count = 0
    for tup in product((0, 1), repeat=k + 4):
        ok = tup[0] <= tup[1] <= tup[2] and tup[3] <= tup[2]
        ok = ok and all(tup[i] <= tup[i + 1] for i in range(3, k + 3))
        if ok and not weq_all:
            ok = tup[1] == tup[2] == tup[3] == tup[4]
        if ok:
            count += 1
    return count


def test_zigzag_chain_interval_counts():
    assert count_interval_zigzags(2, True) == 15
    b2 = zigzag_chain_category(iw_rc(), 2)
    assert len(b2.objects) == 15


def test_zigzag_chain_rigid_counts():
    # x, y, w forced identities: objects match composable pairs
    assert count_interval_zigzags(2, False) == 4
    b2 = zigzag_chain_category(i1_rc(), 2)
    assert len(b2.objects) == 4


def test_all_identity_zigzag_object_exists():
    b2 = zigzag_chain_category(iw_rc(), 2)
    for o in ("0", "1"):
        i = f"id:{o}"
        assert f"({i},{i},{i},{i},{i})" in b2.objects


def test_zigzag_chain_needs_k_at_least_two():
    with pytest.raises(StructuralError):
        zigzag_chain_category(iw_rc(), 1)


def test_zigzag_chain_is_category():
    assert zigzag_chain_category(iw_rc(), 2).validate().ok
    assert zigzag_chain_category(i1_rc(), 3).validate().ok


# -- the embedding ------------------------------------------------------------------

def test_insert_identities_returns_checked_functor():
    from pmcat.segal import insert_identities
    from pmcat.fincat import Functor
    h = insert_identities(iw_rc(), 2)
    assert isinstance(h, Functor)
    assert check_functor(h).ok


def test_insert_identities_image():
    rc = iw_rc()
    h, a2, b2, ap = embedding_parts(rc, 2)
    for oid in a2.objects:
        objs, arrows = a2.diagrams[oid]
        image = b2.diagrams[h.obj_map[oid]][1]
        assert image[0] == arrows[0]
        assert all(b2.diagrams[h.obj_map[oid]][0][i] == objs[1] for i in (1, 2, 3, 4))
        assert image[4:] == arrows[1:]


def test_insert_identities_injective_and_full():
    rc = iw_rc()
    h, a2, b2, ap = embedding_parts(rc, 2)
    assert len(set(h.obj_map.values())) == len(a2.objects) == 4
    assert len(set(h.mor_map.values())) == len(a2.morphisms)
    assert check_functor(h).ok
    # full onto the subcategory: morphism counts agree
    assert len(ap.morphisms) == len(a2.morphisms)


# -- the retraction certificate -------------------------------------------------------

def pms_of(rc, groupoid=False):
    return trivial_partial_model_structure(rc, v_sub=rc.weq if groupoid else ())


def test_retraction_interval_k2():
    r, cert = build_retraction(pms_of(iw_rc()), 2)
    assert cert.valid, cert.summary()
    assert all(t.ok for t in cert.transformations)


def test_retraction_rigid_k2_collapses_to_identity():
    pms = pms_of(i1_rc())
    r, cert = build_retraction(pms, 2)
    assert cert.valid
    # with the trivial factorization and identity w the retraction fixes
    # the image subcategory pointwise and the r.i zigzag components are
    # identities
    h, a2, b2, ap = embedding_parts(pms.rc, 2)
    for oid in ap.objects:
        assert r.obj_map[oid] == oid
    psi = next(t for t in cert.transformations if t.name.startswith("psi"))
    cat = pms.rc.cat
    for comps in psi.components.values():
        assert all(cat.is_identity(c) for c in comps)


def test_retraction_poset_fixtures_k2_k3():
    for rc in (iw_rc(), i1_rc(), b2_rc()):
        pms = pms_of(rc)
        for k in (2, 3):
            r, cert = build_retraction(pms, k)
            assert cert.valid, (k, cert.summary())
            assert check_functor(r).ok


def test_retraction_groupoid_k2():
    r, cert = build_retraction(pms_of(j_rc(), groupoid=True), 2)
    assert cert.valid, cert.summary()


def test_certificate_contents():
    r, cert = build_retraction(pms_of(iw_rc()), 2)
    assert len(cert.object_rows) == 15
    for rows in cert.object_rows.values():
        assert set(rows) == {"row1:identity", "row2:compose-x", "row3:compose-y",
                             "row4:factor-and-push", "row5:retract"}
    assert all(w[-1] for w in cert.witnesses)  # universal properties re-verified
    names = [t.name.split(":")[0] for t in cert.transformations]
    assert names == ["phi1", "phi2", "phi3", "phi4", "phi4|A'", "tau", "psi = tau . phi4"]
    d = cert.to_dict(full=True)
    assert d["valid"] and "object_rows" in d


def test_retraction_lands_in_image_subcategory():
    pms = pms_of(b2_rc())
    r, cert = build_retraction(pms, 2)
    h, a2, b2, ap = embedding_parts(pms.rc, 2)
    image = set(h.obj_map.values())
    for o, val in r.obj_map.items():
        assert val in image


def test_certificate_catches_sabotaged_calculus_data():
    # corrupting one middle map must fail the axioms and must not let a
    # certificate through
    from pmcat.pmc import PartialModelStructure, verify_partial_model
    base = pms_of(iw_rc(), groupoid=False)
    pms = trivial_partial_model_structure(base.rc, v_sub=base.rc.weq)
    middle = dict(pms.middle)
    middle[("id:0", "01", "id:0", "01")] = "id:1"
    bad = PartialModelStructure(pms.rc, pms.u_sub, pms.v_sub,
                                dict(pms.factorization), middle)
    report = verify_partial_model(bad)
    assert not report.passed
    r, cert = build_retraction(bad, 2)
    assert not cert.valid


# -- strict fiber identity ----------------------------------------------------------

def test_strict_identity_all_fixtures_up_to_four():
    for rc in (RelCategory(terminal_category(), []), iw_rc(), i1_rc(),
               b2_rc(), j_rc(), p4_rc()):
        cache = {}
        for k in (1, 2, 3, 4):
            assert check_strict_segal_identity(rc, k, cache), (rc, k)


# -- full pipeline -------------------------------------------------------------------

def test_verify_segal_interval():
    rep = verify_segal(pms_of(iw_rc()), (2, 3), 2)
    assert rep.passed, rep.describe()
    for k in (2, 3):
        assert rep.k_results[k]["homology_dims_compared"] == [0, 1, 2]
        assert rep.k_results[k]["skipped_dims"] == []


def test_verify_segal_boolean_lattice_reports_skips():
    rep = verify_segal(pms_of(b2_rc()), (2,), 2)
    assert rep.passed, rep.describe()
    r2 = rep.k_results[2]
    assert 0 in r2["homology_dims_compared"]
    assert r2["pi0"][0] == r2["pi0"][1]


def test_verify_segal_groupoid_low_dims():
    rep = verify_segal(pms_of(j_rc(), groupoid=True), (2,), 0)
    assert rep.passed, rep.describe()


def test_verify_segal_refuses_big_k():
    with pytest.raises(StructuralError):
        verify_segal(pms_of(iw_rc()), (5,), 0)


def test_nerve_corroboration_values_interval():
    # the two nerves are connected with trivial low homology on Iw
    rc = iw_rc()
    h, a2, b2, ap = embedding_parts(rc, 2)
    na, nb = nerve(ap, 3), nerve(b2, 3)
    assert len(pi0(na)) == len(pi0(nb)) == 1
    assert homology(na, 2) == homology(nb, 2)
