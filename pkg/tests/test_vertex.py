import itertools

import pytest
from hypothesis import given, strategies as st

from vertexlab.exact import scalar
from vertexlab.ops import embed
from vertexlab.vertex import (ModelParams, build_r, check_boundary_ybe_and_fish, check_inversion_crossing,
                              check_inversion_r22, check_projector_absorption, check_q_inversion,
                              check_yang_baxter, r22_weights)

P = ModelParams.from_s(3)
generic = st.fractions(min_value=-20, max_value=20, max_denominator=20).filter(lambda f: f not in (0, 1, -1))


@pytest.mark.parametrize("m,n,p", list(itertools.product((1, 2), repeat=3)))
def test_yang_baxter_all_spins(m, n, p):
    assert check_yang_baxter(m, n, p, scalar(5), scalar("7/3"), P)


def test_yang_baxter_detects_wrong_argument():
    # same products with the first factor at z*w instead of z/w must not commute through
    z, w = scalar(5), scalar("7/3")
    dims = (3, 3, 3)
    r12 = embed(build_r((2, 2), z * w, P, check=False), (0, 1), dims)
    r13 = embed(build_r((2, 2), z, P, check=False), (0, 2), dims)
    r23 = embed(build_r((2, 2), w, P, check=False), (1, 2), dims)
    assert (r12 @ r13 @ r23) != (r23 @ r13 @ r12)


@given(generic)
def test_inversion_and_crossing(z):
    assert check_inversion_crossing(P, z)
    assert check_inversion_r22(P, z)
    assert check_q_inversion(P, z)


@given(generic, generic, generic)
def test_boundary_relations(z, w, b):
    if z == w or z * w == 1:
        return
    for model in (1, 2):
        assert check_boundary_ybe_and_fish(model, z, w, b, P)


def test_projector_absorption():
    assert check_projector_absorption(scalar(5), scalar(7), scalar(2), P)


def test_spin_one_weight_count():
    # nineteen non-zero vertex weights at a generic point
    op = build_r((2, 2), scalar(5), P)
    assert sum(len(row) for row in op.data.values()) == 19
    assert len(r22_weights(scalar(5), P)) >= 7


@pytest.mark.parametrize("q", [0, 1, -1])
def test_params_reject_singular_q(q):
    with pytest.raises(ValueError):
        ModelParams(q)


def test_half_parameter():
    p = ModelParams.from_s(2)
    assert p.q == 4 and p.s == 2
    with pytest.raises(ValueError):
        ModelParams(5, 2)
