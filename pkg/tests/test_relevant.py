import pytest

from dmm.constructions import e_free_reduct, make_named
from dmm.filters import classify, congruence_lattice
from dmm.relevant import (FiniteRA, TrivialAlgebra, contains_two_reduct,
                          dfg_oracle, dfg_ra, dfg_ra_set,
                          is_rigorously_compact_ra, meet_property_check,
                          ra_classify, ra_congruences, ra_deductive_filters,
                          reconstruct_neutral, to_irl, validate_ra)


@pytest.fixture(scope="module")
def reducts(named):
    return {nm: e_free_reduct(named[nm]) for nm in named}


def test_validate_ra_on_reducts(reducts):
    for nm, R in reducts.items():
        assert validate_ra(R).ok, nm


def test_validate_ra_catches_broken_fusion():
    R = e_free_reduct(make_named("2"))
    bad = [list(r) for r in R.fusion]
    bad[0][1] = 1            # makes fusion non-commutative: a*b != b*a
    B = FiniteRA.from_tables(R.size, R.meet, R.join, bad, R.neg)
    rep = validate_ra(B)
    assert not rep.ok
    assert any(v.law in ("fusion-commutative", "contraposition",
                         "square-increasing", "identity-bound")
               for v in rep.violations)


def test_dfg_ra_examples(reducts):
    S3 = reducts["S3"]                 # indices 0,1,2 for -1,0,1
    assert dfg_ra(S3, 2).sorted_members() == [1, 2]
    assert dfg_ra(S3, 0).sorted_members() == [0, 1, 2]
    two = reducts["2"]
    assert dfg_ra(two, two.top).sorted_members() == [1]


def test_dfg_ra_matches_fixpoint_oracle(reducts):
    for R in reducts.values():
        for a in R.elements:
            assert dfg_ra(R, a).members == dfg_oracle(R, {a}).members
        assert dfg_ra_set(R, set(R.elements)).members == \
            dfg_oracle(R, set(R.elements)).members


def test_meet_property(reducts):
    for nm, R in reducts.items():
        assert meet_property_check(R), nm


def test_reconstruct_neutral_recovers_e(named, reducts):
    for nm, R in reducts.items():
        assert reconstruct_neutral(R) == named[nm].e, nm


def test_to_irl_roundtrip(named, reducts):
    for nm, R in reducts.items():
        A = to_irl(R, reconstruct_neutral(R))
        assert A.tables_equal(named[nm])


def test_contains_two_reduct(reducts):
    assert contains_two_reduct(reducts["2"]) == (0, 1)
    assert contains_two_reduct(reducts["C4"]) == (0, 3)
    assert contains_two_reduct(reducts["D4"]) == (0, 3)
    assert contains_two_reduct(reducts["S5"]) == (0, 4)
    # the odd chain still has one: {-1, 1}
    assert contains_two_reduct(reducts["S3"]) == (0, 2)


def test_contains_two_reduct_trivial():
    T = FiniteRA.from_tables(1, [[0]], [[0]], [[0]], [0])
    with pytest.raises(TrivialAlgebra):
        contains_two_reduct(T)


def test_every_nontrivial_reduct_has_two(dmm_upto):
    for A in dmm_upto(6).algebras:
        if A.size > 1:
            assert contains_two_reduct(e_free_reduct(A)) is not None


def test_ra_classify(reducts):
    for nm in ("2", "S3", "C4", "D4"):
        c = ra_classify(reducts[nm])
        assert c.simple and c.si and c.fsi and not c.trivial
    c5 = ra_classify(reducts["S5"])
    assert c5.si and not c5.simple
    assert c5.filter_count == 3


def test_ra_congruences_match_pointed(named, reducts, dmm_upto):
    for nm in ("2", "S3", "C4", "D4", "S4", "S5"):
        pointed = {c.blocks for c in congruence_lattice(named[nm])}
        assert set(ra_congruences(reducts[nm])) == pointed
    for A in dmm_upto(5).algebras:
        pointed = {c.blocks for c in congruence_lattice(A)}
        assert set(ra_congruences(e_free_reduct(A))) == pointed


def test_filter_counts(reducts):
    assert len(ra_deductive_filters(reducts["C4"])) == 2
    assert len(ra_deductive_filters(reducts["S5"])) == 3


def test_rigorous_compactness_on_fsi(dmm_upto):
    for A in dmm_upto(6).algebras:
        if A.size > 1 and classify(A).fsi:
            assert is_rigorously_compact_ra(e_free_reduct(A)), A.name


def test_ra_json_format(reducts):
    d = reducts["C4"].to_dict()
    assert d["signature"] == "RA"
    assert "e" not in d
    back = FiniteRA.from_dict(d)
    assert back.fusion == reducts["C4"].fusion
