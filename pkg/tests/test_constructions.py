import random

import pytest

from dmm.algebra import validate_dmm
from dmm.constructions import (NAMED_BASIC, UnknownName, canonical_form,
                               direct_product, e_free_reduct, homs,
                               hs_contains, is_isomorphic, is_named,
                               make_named, make_sugihara, rigorous_extension,
                               sg, subuniverse, zero_generated)


def test_named_validate(named):
    for nm in NAMED_BASIC:
        assert validate_dmm(named[nm]).ok


def test_unknown_name():
    with pytest.raises(UnknownName):
        make_named("Q7")
    assert is_named("S12") and is_named("C4ext_2") and not is_named("foo")


def test_s3_fusion_example(named):
    S3 = named["S3"]         # -1, 0, 1 as 0, 1, 2
    assert S3.fusion[0][2] == 0          # (-1) * 1 = -1
    assert S3.e == 1 and S3.f == 1       # odd


def test_c4_fusion_rigorous(named):
    C4 = named["C4"]
    assert C4.fusion[2][3] == 3          # f * f^2 = f^2
    assert C4.fusion[2][2] == 3          # f * f = f^2
    assert all(C4.fusion[0][a] == 0 for a in C4.elements)


def test_d4_diamond(named):
    D4 = named["D4"]
    assert D4.meet[1][2] == 0            # e /\ f = ~(f^2)
    assert D4.join[1][2] == 3
    assert not D4.leq(1, 2) and not D4.leq(2, 1)


def test_sugihara_even_odd_carriers():
    assert make_sugihara(6).size == 6
    S6 = make_named("S6")                # -3,-2,-1,1,2,3
    assert S6.e == 3                     # the element 1
    assert S6.f == 2                     # ~1 = -1
    S7 = make_named("S_7")
    assert S7.e == 3 and S7.f == 3       # odd: e = 0 = f


def test_sugihara_fusion_rule(named):
    S5 = named["S5"]                     # -2,-1,0,1,2
    # greater absolute value wins; ties go to the meet
    assert S5.fusion[0][3] == 0          # (-2) * 1 = -2
    assert S5.fusion[1][3] == 1          # (-1) * 1 = -1 (tie, min)
    assert S5.fusion[3][3] == 3
    assert S5.fusion[0][4] == 0          # (-2) * 2 = -2


def test_rigorous_extension_shape(named):
    E = rigorous_extension(named["C4"])
    assert E.size == 6 and validate_dmm(E).ok
    assert E.bottom == 0 and E.top == 5
    assert all(E.fusion[5][a] == 5 for a in E.elements if a != 0)
    assert all(E.fusion[0][a] == 0 for a in E.elements)


def test_c4ext_names(named):
    assert named["C4ext_1"].size == 6
    assert is_isomorphic(make_named("C4ext_0"), named["C4"])


def test_direct_product(named):
    T = make_named("S1")
    assert is_isomorphic(direct_product(named["2"], T), named["2"])
    P = direct_product(named["2"], named["2"])
    assert P.size == 4 and validate_dmm(P).ok
    P6 = direct_product(named["S3"], named["2"])
    assert P6.size == 6 and validate_dmm(P6).ok


def test_sg_examples(named):
    S5 = named["S5"]
    S, incl = sg(S5, {4})
    assert incl == [0, 2, 4]
    assert is_isomorphic(S, named["S3"])
    assert subuniverse(named["D4"], ()) == [0, 1, 2, 3]
    S, incl = sg(named["S3"], ())
    assert S.size == 1 and incl == [1]


def test_zero_generated(named):
    assert zero_generated(named["C4"])[0].size == 4
    assert zero_generated(named["D4"])[0].size == 4
    assert zero_generated(named["2"])[0].size == 2
    assert zero_generated(named["S5"])[0].size == 1


def test_homs_s4_s3(named):
    hs = homs(named["S4"], named["S3"])
    surj = [h for h in hs if h.surjective]
    assert len(surj) == 1
    assert surj[0].mapping == (0, 1, 1, 2)
    assert all(h.is_valid() for h in hs)


def test_homs_c4_to_2_empty(named):
    assert homs(named["C4"], named["2"]) == []


def test_homs_identity(named):
    for nm in ("S3", "D4"):
        A = named[nm]
        assert any(h.mapping == tuple(A.elements) for h in homs(A, A))


def test_homs_closed_under_automorphism_composition(named):
    for nm in NAMED_BASIC:
        A = named[nm]
        hs = {h.mapping for h in homs(A, A)}
        autos = [h for h in homs(A, A) if h.injective]
        for h in hs:
            for a in autos:
                assert tuple(a.mapping[h[i]] for i in A.elements) in hs


def test_canonical_form_invariant_under_relabeling(named):
    rng = random.Random(20260823)
    for nm in NAMED_BASIC:
        A = named[nm]
        cf = canonical_form(A)
        for _ in range(200):
            perm = list(range(A.size))
            rng.shuffle(perm)
            assert canonical_form(A.relabel(perm)) == cf


def test_is_isomorphic_examples(named):
    assert not is_isomorphic(named["C4"], named["D4"])
    assert not is_isomorphic(named["C4"], named["S4"])
    S4 = named["S4"]
    assert is_isomorphic(S4, S4.relabel([3, 0, 2, 1]))


def test_pairwise_non_isomorphic_basics(named):
    basics = [named[nm] for nm in NAMED_BASIC]
    for i, A in enumerate(basics):
        for B in basics[i + 1:]:
            assert not is_isomorphic(A, B)


def test_hs_contains(named):
    assert hs_contains(named["S4"], named["S3"])
    assert not hs_contains(named["D4"], named["2"])
    T = make_named("S1")
    for nm in NAMED_BASIC:
        assert hs_contains(named[nm], T)
    assert hs_contains(named["C4ext_1"], named["S3"])
    assert hs_contains(named["C4ext_1"], named["C4"])


def test_e_free_reduct_shape(named):
    R = e_free_reduct(named["C4"])
    assert R.to_dict()["signature"] == "RA"
    assert "e" not in R.to_dict()
    assert R.meet == named["C4"].meet
