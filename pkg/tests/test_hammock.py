import pytest

from pmcat.fincat import category_isomorphism
from pmcat.relcat import RelCategory
from pmcat.pmc import trivial_partial_model_structure, verify_partial_model
from pmcat.sset import pi0
from pmcat.hammock import (
    Zigzag, identity_zigzag, zigzag_of_morphism, zigzag_category, mapping_space,
    ho_compose, homotopy_category, bounded_localization_oracle,
    check_saturation, diagnostic_saturation,
)
from conftest import chain_poset, boolean_lattice, walking_iso, terminal_category


def iw_pms():
    cat = chain_poset(1)
    return trivial_partial_model_structure(RelCategory(cat, cat.morphisms))


def i1_pms():
    return trivial_partial_model_structure(RelCategory(chain_poset(1), []))


def b2_pms():
    cat = boolean_lattice()
    return trivial_partial_model_structure(RelCategory(cat, cat.morphisms))


def j_pms():
    cat = walking_iso()
    rc = RelCategory(cat, cat.morphisms)
    return trivial_partial_model_structure(rc, v_sub=rc.weq)


def pt_pms():
    return trivial_partial_model_structure(
        RelCategory(terminal_category(), ["id:*"]))


def brute_zigzags(rc, a, b):
    """Oracle: enumerate zigzag triples directly from the raw tables."""
    cat = rc.cat
    out = set()
    for left in cat.morphisms:
        if cat.tgt[left] != a or not rc.is_weq(left):
            continue
        for right in cat.morphisms:
            if cat.src[right] != b or not rc.is_weq(right):
                continue
            for mid in cat.morphisms:
                if cat.src[mid] == cat.src[left] and cat.tgt[mid] == cat.tgt[right]:
                    out.add((left, mid, right))
    return out


# -- zigzag categories -------------------------------------------------------

def test_rigid_interval_has_one_zigzag_forward():
    rc = i1_pms().rc
    zc = zigzag_category(rc, "0", "1")
    assert len(zc.objects) == 1
    z = zc.zigzags[zc.objects[0]]
    assert (z.left, z.mid, z.right) == ("id:0", "01", "id:1")


def test_rigid_interval_reverse_is_empty():
    zc = zigzag_category(i1_pms().rc, "1", "0")
    assert len(zc.objects) == 0


def test_point_identity_hammock():
    zc = zigzag_category(pt_pms().rc, "*", "*")
    assert len(zc.objects) == 1


def test_enumeration_matches_brute_force():
    for pms in (iw_pms(), b2_pms(), j_pms()):
        rc = pms.rc
        for a in rc.cat.objects:
            for b in rc.cat.objects:
                zc = zigzag_category(rc, a, b)
                keys = {(z.left, z.mid, z.right) for z in zc.zigzags.values()}
                assert keys == brute_zigzags(rc, a, b)


def test_zigzag_category_is_category_with_marked_components():
    rc = iw_pms().rc
    zc = zigzag_category(rc, "1", "0")
    assert zc.validate().ok
    for m, (x, y) in zc.components.items():
        assert rc.is_weq(x) and rc.is_weq(y)


def test_all_maps_convention_flag():
    # the non-default convention admits at least the marked morphisms
    # and still forms a category
    rc = RelCategory(chain_poset(3), ["02", "13"])
    strict = zigzag_category(rc, "0", "3")
    loose = zigzag_category(rc, "0", "3", weq_components=False)
    assert set(strict.objects) == set(loose.objects)
    assert len(loose.morphisms) >= len(strict.morphisms)
    assert loose.validate().ok
    assert loose.weq_components is False and strict.weq_components is True


def test_oracle_rejects_tiny_bounds():
    with pytest.raises(Exception):
        bounded_localization_oracle(i1_pms().rc, "0", "1", 2)


def test_mapping_space_counts():
    assert mapping_space(i1_pms().rc, "0", "1", 1).size(0) == 1
    assert mapping_space(i1_pms().rc, "1", "0", 1).size(0) == 0
    ms = mapping_space(iw_pms().rc, "0", "1", 1)
    assert len(pi0(ms)) == 1


def test_mapping_space_contains_identity_component():
    for pms in (iw_pms(), b2_pms()):
        for a in pms.rc.cat.objects:
            ms = mapping_space(pms.rc, a, a, 1)
            iz = identity_zigzag(pms.rc, a)
            assert iz.key in ms.simplices[0]


# -- composition --------------------------------------------------------------

def test_compose_with_identity_stays_in_class():
    pms = iw_pms()
    ho = homotopy_category(pms)
    rc = pms.rc
    z = zigzag_of_morphism(rc, "01")
    out = ho_compose(pms, z, identity_zigzag(rc, "1"))
    assert (ho.class_of[("0", "1", out.key)]
            == ho.class_of[("0", "1", z.key)])
    out2 = ho_compose(pms, identity_zigzag(rc, "0"), z)
    assert (ho.class_of[("0", "1", out2.key)]
            == ho.class_of[("0", "1", z.key)])


def test_interval_inverse_composite_is_identity_class():
    pms = iw_pms()
    ho = homotopy_category(pms)
    rc = pms.rc
    forward = zigzag_of_morphism(rc, "01")          # 0 ~> 1
    backward = Zigzag("1", "0", "01", "id:0", "id:0")  # 1 <- 0 -> 0 <- 0
    out = ho_compose(pms, forward, backward)
    assert out.source == "0" and out.target == "0"
    iz = identity_zigzag(rc, "0")
    assert (ho.class_of[("0", "0", out.key)]
            == ho.class_of[("0", "0", iz.key)])


def test_boolean_lattice_composites_agree_with_poset_composition():
    pms = b2_pms()
    ho = homotopy_category(pms)
    cat = pms.rc.cat
    for f in cat.morphisms:
        for g in cat.out_of(cat.tgt[f]):
            zf = zigzag_of_morphism(pms.rc, f)
            zg = zigzag_of_morphism(pms.rc, g)
            out = ho_compose(pms, zf, zg)
            composite = cat.comp[(f, g)]
            zc = zigzag_of_morphism(pms.rc, composite)
            key = (cat.src[f], cat.tgt[g])
            assert (ho.class_of[key + (out.key,)]
                    == ho.class_of[key + (zc.key,)])


# -- homotopy categories -------------------------------------------------------

def test_ho_rigid_interval_is_interval():
    ho = homotopy_category(i1_pms())
    assert len(ho.hom_classes("0", "1")) == 1
    assert len(ho.hom_classes("1", "0")) == 0
    assert category_isomorphism(ho.cat, chain_poset(1)) is not None


def test_ho_interval_is_walking_iso():
    ho = homotopy_category(iw_pms())
    for a in ("0", "1"):
        for b in ("0", "1"):
            assert len(ho.hom_classes(a, b)) == 1
    assert category_isomorphism(ho.cat, walking_iso()) is not None


def test_ho_point_is_terminal():
    ho = homotopy_category(pt_pms())
    assert len(ho.cat.objects) == 1 and len(ho.cat.morphisms) == 1


def test_ho_boolean_lattice_is_indiscrete():
    ho = homotopy_category(b2_pms())
    for a in ho.cat.objects:
        for b in ho.cat.objects:
            assert len(ho.hom_classes(a, b)) == 1


def test_ho_class_level_laws_hold():
    for pms in (iw_pms(), i1_pms(), b2_pms(), j_pms()):
        ho = homotopy_category(pms)
        assert ho.cat.validate().ok


# -- bounded localization oracle ------------------------------------------------

def test_oracle_rigid_interval():
    rc = i1_pms().rc
    rep = bounded_localization_oracle(rc, "0", "1", 7)
    assert rep.count == 1 and rep.stable


def test_oracle_point():
    rep = bounded_localization_oracle(pt_pms().rc, "*", "*", 7)
    assert rep.count == 1 and rep.stable


def test_oracle_p4_connects_generator_to_single_class():
    rc = RelCategory(chain_poset(3), ["02", "13"])
    rep = bounded_localization_oracle(rc, "0", "1", 7)
    assert rep.count == 1 and rep.stable
    assert rep.class_of(((1, "01"),)) == 0


def test_oracle_agrees_with_homotopy_category():
    for pms in (pt_pms(), i1_pms(), iw_pms(), b2_pms()):
        ho = homotopy_category(pms)
        for a in pms.rc.cat.objects:
            for b in pms.rc.cat.objects:
                rep = bounded_localization_oracle(pms.rc, a, b, 7)
                assert rep.stable
                assert rep.count == len(ho.hom_classes(a, b)), (a, b)


# -- saturation ------------------------------------------------------------------

def test_saturation_on_verified_fixtures():
    for pms in (pt_pms(), i1_pms(), iw_pms(), b2_pms(), j_pms()):
        assert verify_partial_model(pms).passed
        report = check_saturation(pms)
        assert report.passed, report.to_dict()


def test_saturation_groupoid_marking_is_isos():
    # all maps of the walking iso are isomorphisms, so marking
    # everything is exactly marking the isomorphisms
    report = check_saturation(j_pms())
    assert report.passed
    assert set(report.iso_morphisms) == set(walking_iso().morphisms)


def test_diagnostic_flags_p4_unsaturated():
    rc = RelCategory(chain_poset(3), ["02", "13"])
    report = diagnostic_saturation(rc, 7)
    assert report.verdict == "fail"
    assert "01" in report.unmarked_but_iso


def test_diagnostic_agrees_on_saturated_fixture():
    report = diagnostic_saturation(iw_pms().rc, 7)
    assert report.verdict == "pass"
