from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from vertexlab.exact import scalar
from vertexlab.ops import vec_equal
from vertexlab.sov import (DegenerateError, check_eigenvector_properties, check_null_vector, component,
                           phi, psi_ad, sov_structure_checks, special_vector)
from vertexlab.transfer import (Inhom, check_fusion, float_hamiltonian, hamiltonian, magnetization_values,
                                spectrum_probe)
from vertexlab.vertex import ModelParams

P = ModelParams(3)
small_q = st.fractions(min_value=-9, max_value=9, max_denominator=9).filter(lambda f: f not in (0, 1, -1))


def test_magnetization_convention():
    assert magnetization_values(1) == [1, 0, -1]
    assert magnetization_values(2)[0] == 2 and magnetization_values(2)[-1] == -2


@pytest.mark.parametrize("twist", ["d", "ad"])
def test_fusion_two_sites(twist):
    assert check_fusion(scalar(5), twist, P, Inhom([2, "7/3"]))


@pytest.mark.parametrize("twist", ["d", "ad"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_null_vector(twist, n):
    inhom = Inhom([2, "7/3", -5][:n])
    vec = special_vector(twist, inhom, P)
    assert vec
    assert check_null_vector(twist, vec, inhom, P, scalar("11/4")) == {"t1_null": True, "t2_eigen": True}


@settings(max_examples=6)
@given(small_q, st.sampled_from(["d", "ad"]), st.integers(2, 4))
def test_hamiltonian_annihilates_zero_energy_state(q, twist, n):
    params = ModelParams(q)
    vec = {k: scalar(v) for k, v in phi(twist, n, params).items()}
    assert vec_equal(hamiltonian(n, params.x, twist) @ vec, {})


def test_hamiltonian_is_symmetric():
    h = float_hamiltonian(3, 0.7, "ad")
    assert np.allclose(h, h.T)


def test_sov_structure_two_sites():
    rep = sov_structure_checks(Inhom([2, "7/3"]), P, scalar(5))
    assert rep and all(rep.values())


def test_sov_reconstruction_matches_kernel():
    inhom = Inhom([2, "7/3", -5])
    assert vec_equal(psi_ad(inhom, P, method="sov"), psi_ad(inhom, P, method="kernel"))


def test_coinciding_inhomogeneities_are_degenerate_for_sov():
    with pytest.raises(DegenerateError):
        psi_ad(Inhom([1, 1]), P, method="sov")


@pytest.mark.parametrize("twist", ["d", "ad"])
def test_eigenvector_covariance(twist):
    rep = check_eigenvector_properties(twist, Inhom([2, "7/3"]), P)
    assert all(rep.values()), rep


def test_component_patterns():
    vec = phi("ad", 3, P)
    assert component(vec, "+0-") == component(vec, [0, 1, 2]) == component(vec, "⇑0⇓")
    assert component(vec, "+++") == 1


def test_diagonal_state_alternating_component():
    # N = 2n: the alternating component is the VS generating function at t = x^2
    assert component(phi("d", 2, ModelParams(2)), "+-") == 1
    assert component(phi("d", 4, ModelParams(2)), "+-+-") == Fraction(33, 4)


def test_phi_size_limit():
    with pytest.raises(ValueError):
        phi("d", 7, P)


def test_spectrum_probe_structure():
    r = spectrum_probe(3, Fraction(1), "ad")
    assert r.nonzero_parts_coincide
    assert r.special_sector_zero_degeneracy == 1
    d = r.to_dict()
    assert d["approximate"] is True
    assert {"sector", "eigenvalues", "zero_degeneracy", "min_eigenvalue"} <= set(d["sectors"][0])
    assert sum(len(s["eigenvalues"]) for s in d["sectors"]) == 27


def test_spectrum_probe_size_limit():
    with pytest.raises(ValueError):
        spectrum_probe(9, 1, "d")
