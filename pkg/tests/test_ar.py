import pytest

from quivercy.ar import (
    auslander_algebra,
    decide_nrf,
    ext_bimodule,
    homogeneity,
    nakayama_permutation,
    preprojective,
    recover_presentation,
    tau_n,
    tau_n_minus,
    tensor_nrf,
)
from quivercy.errors import UNDECIDED, FactorNotHomogeneous, NotNRF, NotSelfinjective
from quivercy.homology import dominant_dimension, global_dimension, is_selfinjective
from quivercy.module import injective_module, is_isomorphic, simple_module


def test_tau_on_a2(a2):
    S1 = simple_module(a2, 1)
    t = tau_n(S1, 1)
    assert t.dim_vector() == (0, 1)
    back = tau_n_minus(t, 1)
    assert is_isomorphic(back, S1)


def test_decide_nrf_a2(a2):
    rep = decide_nrf(a2, 1)
    assert rep.is_nrf is True
    assert rep.gl_dim == 1
    assert rep.a == 2 and rep.b == 3
    assert rep.ell == {1: 2, 2: 1}
    assert rep.sigma == {1: 2, 2: 1}
    assert rep.homogeneous is False
    assert homogeneity(rep) is False
    assert rep.ell_value() is None
    assert rep.ct_module.total_dim == sum(X.total_dim for X in rep.ct_summands)


def test_decide_nrf_linear_a3(a3_linear):
    rep = decide_nrf(a3_linear, 1)
    assert rep.is_nrf is True
    assert rep.ell == {1: 3, 2: 2, 3: 1}
    assert rep.sigma == {1: 3, 2: 2, 3: 1}
    assert rep.b == 6
    assert not rep.homogeneous


def test_decide_nrf_stable_a3(a3_stable):
    rep = decide_nrf(a3_stable, 1)
    assert rep.is_nrf is True
    assert rep.ell == {1: 2, 2: 2, 3: 2}
    assert rep.sigma == {1: 3, 2: 2, 3: 1}
    assert rep.homogeneous and homogeneity(rep)
    assert rep.ell_value() == 2
    # orbits start at the injectives
    for i in a3_stable.vertices:
        assert is_isomorphic(rep.orbit_table[i][0], injective_module(a3_stable, i))


def test_decide_nrf_d4(d4):
    rep = decide_nrf(d4, 1)
    assert rep.is_nrf is True
    assert rep.b == 12
    assert rep.ell_value() == 3
    assert rep.sigma == {1: 1, 2: 2, 3: 3, 4: 4}


def test_decide_nrf_negative(a2sq):
    rep = decide_nrf(a2sq, 2)
    assert rep.is_nrf is False
    assert "Ext" in rep.reason


def test_decide_nrf_wrong_degree(a2sq):
    # gl.dim 2 exceeds n = 1
    rep = decide_nrf(a2sq, 1)
    assert rep.is_nrf is False
    assert "gl.dim" in rep.reason


def test_decide_nrf_undecided(kronecker):
    rep = decide_nrf(kronecker, 1)
    assert rep.is_nrf is UNDECIDED
    assert rep.to_dict()["is_nrf"] == "undecided"


def test_homogeneity_requires_positive_report(kronecker):
    rep = decide_nrf(kronecker, 1)
    with pytest.raises(NotNRF):
        homogeneity(rep)


def test_ext_bimodule(a2, a3_stable):
    T = ext_bimodule(a2, 1)
    assert {k: v for k, v in T.dims.items() if v} == {(1, 2): 1}
    T3 = ext_bimodule(a3_stable, 1)
    assert sum(T3.dims.values()) == 5


def test_preprojective_a2(a2):
    pi = preprojective(a2, 1)
    assert pi.dim == 4
    assert pi.degree_dims == [3, 1]
    assert is_selfinjective(pi)
    assert nakayama_permutation(pi) == {1: 2, 2: 1}


def test_preprojective_a3_stable(a3_stable):
    pi = preprojective(a3_stable, 1)
    assert pi.dim == 10
    assert pi.degree_dims == [5, 5]
    assert nakayama_permutation(pi) == {1: 3, 2: 2, 3: 1}


def test_nakayama_permutation_rejects_non_selfinjective(a2):
    with pytest.raises(NotSelfinjective):
        nakayama_permutation(a2)


def test_auslander_algebra(a3_stable):
    rep = decide_nrf(a3_stable, 1)
    gamma = auslander_algebra(a3_stable, rep.ct_summands)
    assert gamma.dim == 15
    assert len(gamma.vertices) == 6
    assert global_dimension(gamma) == 2
    assert dominant_dimension(gamma) == 2


def test_recover_presentation(a3_stable):
    rep = decide_nrf(a3_stable, 1)
    gamma = auslander_algebra(a3_stable, rep.ct_summands)
    pres = recover_presentation(gamma)
    assert len(pres["arrows"]) == 6
    assert len(pres["relations"]) == 3
    assert all(r["degree"] == 2 for r in pres["relations"])


def test_recover_presentation_roundtrip(a2):
    pi = preprojective(a2, 1)
    pres = recover_presentation(pi)
    # the double quiver of A2 with both compositions zero
    assert len(pres["arrows"]) == 2
    assert len(pres["relations"]) == 2


def test_tensor_nrf_rejects_inhomogeneous(a2):
    with pytest.raises(FactorNotHomogeneous):
        tensor_nrf([(a2, 1), (a2, 1)], 2)


def test_tensor_nrf_square(a3_stable):
    prod, rep = tensor_nrf([(a3_stable, 1), (a3_stable, 1)], 2)
    assert prod.dim == 25
    assert rep.is_nrf is True
    assert rep.homogeneous and rep.ell_value() == 2
    assert len(rep.ct_summands) == 18
    assert is_isomorphic(rep.predicted_ct, rep.ct_module)
