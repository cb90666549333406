import pytest
from hypothesis import assume, given, settings, strategies as st

from vertexlab.exact import scalar
from vertexlab.lattice import DomainTooLarge
from vertexlab.partition import (DomainSpec, SingularParameters, wheel_check, z_ad, z_ad_direct, z_bruteforce,
                                 z_cap, z_ht, z_ik, z_ik_recursion, z_mixed_all, z_qt_full, z_u, z_uu)
from vertexlab.transfer import Inhom
from vertexlab.vertex import ModelParams

P = ModelParams(2)
PS = ModelParams.from_s(2)
vals = st.fractions(min_value=-12, max_value=12, max_denominator=12).filter(lambda f: f not in (0, 1, -1))


def test_single_vertex():
    assert z_ik([3], [7], P) == scalar("15/4")
    assert z_bruteforce(DomainSpec("dwbc", [3], [7]), P) == scalar("15/4")


@settings(max_examples=10)
@given(st.lists(vals, min_size=4, max_size=4, unique=True))
def test_domain_wall_against_lattice(v):
    z, w = v[:2], v[2:]
    try:
        closed = z_ik(z, w, P)
    except SingularParameters:
        assume(False)
    assert closed == z_bruteforce(DomainSpec("dwbc", z, w), P)


def test_domain_wall_three_and_recursion():
    z, w = [3, 5, 13], [7, 11, 17]
    assert z_ik(z, w, P) == z_bruteforce(DomainSpec("dwbc", z, w), P)
    assert z_ik_recursion(z, w, P)["ok"]


def test_coinciding_parameters_are_reported():
    with pytest.raises(SingularParameters):
        z_ik([3, 3], [7, 11], P)


@pytest.mark.parametrize("sign,kind", [(1, "htplus"), (-1, "htminus")])
def test_half_turn(sign, kind):
    assert z_ht(sign, [3, 5], [7, 11], P) == z_bruteforce(DomainSpec(kind, [3, 5], [7, 11]), P)


def test_quarter_turn():
    assert z_qt_full([3, 5], P) == z_bruteforce(DomainSpec("qt", (), [3, 5]), P)


def test_u_turns():
    assert z_u([3], [5], 7, P) == z_bruteforce(DomainSpec("uturn", [3], [5], b=7), P)
    assert z_uu([3], [5], 7, 11, P) == z_bruteforce(DomainSpec("uuturn", [3], [5], b=7, c=11), P)


def test_cap_domain():
    assert z_cap([3], [5], 7, PS) == z_bruteforce(DomainSpec("zcap", [5], [3], b=7), PS)


def test_wheel_condition():
    assert wheel_check([3, 13], [5], 11, P)["ok"]


@settings(max_examples=8)
@given(st.lists(vals, min_size=3, max_size=3, unique=True), vals)
def test_sum_rule_determinant(w, y):
    inhom = Inhom(w)
    try:
        closed = z_ad(y, inhom, P)
    except SingularParameters:
        assume(False)
    assert closed == z_ad_direct(y, inhom, P)


def test_mixed_scalar_product_three_ways():
    out = z_mixed_all(Inhom([3, 5, 7, 11]), P)
    assert len(out) == 3 and len({str(v) for v in out.values()}) == 1


def test_mixed_scalar_product_vanishes_for_odd_length():
    assert not z_mixed_all(Inhom([3, 5, 7]), P)["direct"]


def test_lattice_size_limit():
    w = list(range(2, 8))
    with pytest.raises(DomainTooLarge):
        z_bruteforce(DomainSpec("dwbc", [v + 20 for v in w], w), P)
