from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gdecomp.errors import CapExceeded, VerificationFailure
from gdecomp.subgroups import (congruence_hom, construct_finite_quotient,
                               euler_characteristic, expected_free_rank,
                               free_reduce, index_lower_bound,
                               index_upper_bound, invert_word, kernel_subgroup,
                               low_index_action, parse_word,
                               presentation_from_group, reidemeister_schreier,
                               render_word, verify_torsion_free)


def build_cert(group, hom=None):
    pres = presentation_from_group(group)
    hom = hom or construct_finite_quotient(group, pres)
    cert = kernel_subgroup(hom, pres)
    reidemeister_schreier(cert, pres)
    verify_torsion_free(cert, pres)
    return pres, cert


def test_presentation_extraction(sl2z, c2c3):
    pres = presentation_from_group(sl2z)
    assert [render_word(r) for r in pres.relators] \
        == ["S*S*S*S", "S*S*T'*S'*T'*S'*T'*S'"]
    assert [(render_word(w), n) for w, n in pres.subgroup_words] \
        == [("S", 4), ("S*T", 6)]
    pres2 = presentation_from_group(c2c3)
    assert [render_word(r) for r in pres2.relators] == ["x0*x0", "x1*x1*x1"]


def test_c2c3_certificate(c2c3):
    pres, cert = build_cert(c2c3)
    assert cert.hom.detail == {"degree": 3}
    assert cert.hom.order == 6  # onto S3
    assert cert.index == 6
    assert cert.rank == 2
    assert cert.torsion_free
    assert cert.evidence["free"]
    # prefix-closed Schreier transversal
    words = [render_word(w) for w in cert.transversal]
    assert words[0] == "1"
    assert all(w[: w.rfind("*")] in words or "*" not in w
               for w in words[1:])
    assert expected_free_rank(c2c3.gog, 6) == 2
    assert euler_characteristic(c2c3.gog) == Fraction(-1, 6)


def test_sl2z_congruence_certificate(sl2z):
    pres, cert = build_cert(sl2z)
    assert cert.hom.kind == "congruence"
    assert cert.hom.detail == {"modulus": 3}
    assert cert.index == 24
    assert cert.rank == 3  # 1 + 24/12
    assert cert.torsion_free


def test_sl2z_mod2_negative_control(sl2z):
    pres = presentation_from_group(sl2z)
    hom = congruence_hom(sl2z, 2, pres)
    assert hom.order == 6
    assert not hom.injective_on_subgroups(pres)
    cert = kernel_subgroup(hom, pres)
    assert cert.index == 6
    ok, witnesses = verify_torsion_free(cert, pres)
    assert not ok
    assert "S*S" in witnesses  # -I dies mod 2


def test_c4c2c6_certificate(c4c2c6):
    pres, cert = build_cert(c4c2c6)
    assert cert.hom.detail == {"degree": 8}
    assert cert.hom.order == 24  # SL(2,3) again
    assert cert.index == 24
    assert cert.rank == 3
    assert cert.torsion_free
    assert expected_free_rank(c4c2c6.gog, 24) == 3


def test_free_and_cyclic_certificates(f2, zgroup, z5):
    _, cert = build_cert(f2)
    assert cert.index == 1 and cert.rank == 2 and cert.torsion_free
    _, cert = build_cert(zgroup)
    assert cert.index == 1 and cert.rank == 1
    _, cert = build_cert(z5)
    assert cert.index == 5 and cert.rank == 0


def test_index_bounds():
    assert index_lower_bound(6, 6) == 1
    assert index_upper_bound(6, 2) == 518400
    assert index_lower_bound(6, 4) == 2
    assert index_lower_bound(7, 3) == 3
    assert index_upper_bound(3, 1) == 6
    with pytest.raises(ValueError):
        index_lower_bound(0, 1)


def test_expected_rank_rejects_bad_index(c2c3):
    with pytest.raises(VerificationFailure):
        expected_free_rank(c2c3.gog, 5)  # 5/6 is not an integer rank


def test_low_index_degree_cap(c2c3):
    pres = presentation_from_group(c2c3)
    with pytest.raises(CapExceeded):
        low_index_action(pres, max_degree=2)


def test_parse_render_roundtrip():
    w = parse_word(["S", "T'", "S^-1", "T"])
    assert w == (("S", 1), ("T", -1), ("S", -1), ("T", 1))
    assert render_word(w) == "S*T'*S'*T"
    assert render_word(()) == "1"


word_strategy = st.lists(
    st.tuples(st.sampled_from(["a", "b", "c"]), st.sampled_from([1, -1])),
    max_size=12).map(tuple)


@given(word_strategy)
def test_free_reduce_idempotent(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    # no adjacent cancelling pair survives
    assert all(not (r[i][0] == r[i + 1][0] and r[i][1] == -r[i + 1][1])
               for i in range(len(r) - 1))


@given(word_strategy)
def test_word_times_inverse_reduces_to_identity(w):
    assert free_reduce(w + invert_word(w)) == ()
