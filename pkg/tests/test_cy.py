from fractions import Fraction

import pytest

from quivercy.cy import (
    CyCertificate,
    check_twisted_cy,
    check_untwisted_cy,
    combine_cy,
    cy_dimension,
    find_twisted_cy,
)


def test_certificate_basics():
    c = CyCertificate(3, 1, twisted=True)
    assert cy_dimension(c) == Fraction(1, 3)
    d = c.to_dict()
    assert d["ell"] == 3 and d["m"] == 1 and d["twisted"]


def test_combine_cy():
    c1 = CyCertificate(3, 1, twisted=True)
    c2 = CyCertificate(2, 1, twisted=True)
    m, ell = combine_cy([c1, c2])
    assert (m, ell) == (5, 6)
    m, ell = combine_cy([c1, c1])
    assert Fraction(m, ell) == Fraction(2, 3)


def test_check_twisted_a2(a2):
    assert check_twisted_cy(a2, 3, 1)
    assert not check_twisted_cy(a2, 2, 1)
    assert not check_twisted_cy(a2, 3, 2)
    with pytest.raises(ValueError):
        check_twisted_cy(a2, 0, 0)


def test_check_twisted_stable_a3(a3_stable):
    assert check_twisted_cy(a3_stable, 2, 1)
    assert not check_twisted_cy(a3_stable, 2, 2)


def test_find_twisted_minimal_certificates(a2, a3_linear, a3_stable, a4_linear, d4):
    for alg, ell, m in [
        (a2, 3, 1),
        (a3_linear, 4, 2),
        (a3_stable, 2, 1),
        (a4_linear, 5, 3),
        (d4, 3, 2),
    ]:
        cert = find_twisted_cy(alg)
        assert cert is not None
        assert (cert.ell, cert.m) == (ell, m)
        assert cert.twisted


def test_find_twisted_none_for_kronecker_small_window(kronecker):
    # representation-infinite hereditary: no certificate in a small window
    assert find_twisted_cy(kronecker, ell_max=6, m_max=6) is None


def test_scaling_invariance(a2, a3_stable):
    for k in (2, 3):
        assert check_twisted_cy(a2, 3 * k, k)
        assert check_twisted_cy(a3_stable, 2 * k, k)


def test_untwisted_a2(a2):
    assert check_untwisted_cy(a2, 3, 1)
    assert not check_untwisted_cy(a2, 3, 2)


def test_twisted_but_not_untwisted(a3_stable):
    # the twist is a genuine diagram automorphism here
    assert check_twisted_cy(a3_stable, 2, 1)
    assert not check_untwisted_cy(a3_stable, 2, 1)
    assert check_untwisted_cy(a3_stable, 4, 2)


def test_untwisted_tensor_square(a2sq):
    assert check_untwisted_cy(a2sq, 3, 2)
