import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from vertexlab import asm
from vertexlab.asm import (AsmKind, AsmMatrix, EnumerationTooLarge, T, closed_form, closed_form_for_class, count,
                           enumerate_asms, genfun, is_asm, l_matrix, l_matrix_checks, zad_hom)
from vertexlab.exact import GenPoly, det_exact

ENUMERABLE = [("plain", n) for n in range(1, 6)] + [("ht", 2), ("ht", 4), ("ht", 6), ("htminus", 4),
                                                      ("htminus", 8), ("qt", 4), ("qt", 8), ("vs", 3),
                                                      ("vs", 5), ("vs", 7), ("uu", 2), ("uu", 4), ("vhp", 5)]


def test_plain_counts():
    assert [count(AsmKind.PLAIN, n) for n in range(1, 6)] == [1, 2, 7, 42, 429]


def test_small_examples():
    assert len(enumerate_asms("plain", 3)) == 7
    assert genfun("plain", 3) == 6 + T
    assert len(enumerate_asms("vs", 5)) == 3
    assert genfun("vs", 5) == 2 + T
    assert len(enumerate_asms("vhp", 5)) == 1
    assert genfun("plain", 4).evaluate(t=1) == 42


@pytest.mark.parametrize("kind,size", ENUMERABLE)
def test_genfun_at_one_counts_matrices(kind, size):
    # the refined half-turn weight carries a sign (-1)^m; its unsigned count is the HT count
    p = genfun("ht" if kind == "htminus" else kind, size)
    assert p.evaluate(t=1, y=1, z=1) == count(kind, size) == len(enumerate_asms(kind, size))


@pytest.mark.parametrize("kind,size", [("plain", 4), ("ht", 4), ("qt", 8), ("vs", 7)])
def test_enumerated_matrices_are_asms(kind, size):
    mats = enumerate_asms(kind, size)
    assert all(is_asm(m.entries) for m in mats)
    assert len({tuple(map(tuple, m.entries)) for m in mats}) == len(mats)


def test_symmetries_of_classes():
    for m in enumerate_asms("ht", 6):
        e = m.entries
        assert all(e[i][j] == e[5 - i][5 - j] for i in range(6) for j in range(6))
    for m in enumerate_asms("vs", 5):
        assert all(row == row[::-1] for row in m.entries)


def test_size_limits():
    with pytest.raises(EnumerationTooLarge):
        enumerate_asms("plain", 7)
    with pytest.raises(ValueError):
        enumerate_asms("vs", 4)
    with pytest.raises(ValueError):
        AsmKind.parse("nonsense")


def test_parallel_genfun_matches_serial():
    assert genfun("plain", 5, jobs=2) == genfun("plain", 5)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_vertically_symmetric_closed_form(n):
    assert closed_form("av", n) == genfun("vs", 2 * n + 1)


def test_small_determinants():
    assert closed_form("av", 2) == 2 + T
    assert closed_form("auu2tilde", 2) == 1 + T
    assert closed_form("avhp2", 2) == 1 + 2 * T
    assert closed_form("auu2tilde", 1) == GenPoly.constant(1)


@pytest.mark.parametrize("kind,size", [("plain", 5), ("ht", 6), ("htminus", 8), ("qt", 8), ("uu", 4), ("vhp", 5)])
def test_closed_forms_match_enumeration(kind, size):
    assert closed_form_for_class(kind, size) == genfun(kind, size)


def test_quarter_turn_factorisation():
    assert genfun("qt", 8) == (3 + T) * (4 + 6 * T)


@pytest.mark.parametrize("N", range(1, 6))
def test_sum_rule_symmetric_in_y(N):
    p = zad_hom(N)
    assert p == GenPoly({(i, -j, k): c for (i, j, k), c in p.terms.items()})


UU_EXAMPLE = ((1, -1, 0, 1), (0, 1, 0, -1), (0, 0, 0, 0), (0, 0, 0, 1))
VHP_EXAMPLE = ((0, 0, 0, 1, 0, 0, 0), (0, 1, 0, -1, 0, 1, 0), (1, -1, 1, -1, 1, -1, 1),
               (0, 1, 0, -1, 0, 1, 0), (0, 0, 0, 1, 0, 0, 0))


def test_uu_weight_example():
    M = AsmMatrix([list(r) for r in UU_EXAMPLE], AsmKind.UU)
    assert M.counters() == {"k": 2, "m": 1, "m'": 1}
    assert any(tuple(map(tuple, m.entries)) == UU_EXAMPLE for m in enumerate_asms("uu", 4))


def test_simplest_perverse_matrix():
    (M,) = enumerate_asms("vhp", 5)
    assert tuple(map(tuple, M.entries)) == VHP_EXAMPLE
    assert M.weight() == GenPoly.constant(1)


nonzero = st.fractions(min_value=-9, max_value=9, max_denominator=9).filter(lambda f: f != 0)


@settings(max_examples=10)
@given(nonzero, nonzero, st.integers(1, 4))
def test_l_matrix_determinant(alpha, beta, N):
    a, b = mpq(alpha), mpq(beta)
    assert det_exact(l_matrix(a, b, N)) == (a * b) ** (N * (N - 1) // 2)


@settings(max_examples=4)
@given(nonzero, nonzero, nonzero, nonzero)
def test_l_matrix_identities(a, b, ap, bp):
    rep = l_matrix_checks(mpq(a), mpq(b), mpq(ap), mpq(bp), 3, q=mpq(2))
    assert all(rep.values()), rep


def test_l_matrix_example():
    assert det_exact(l_matrix(2, 3, 3)) == 6 ** 3


def test_baselines_and_identities():
    assert all(asm.enumeration_baselines().values())
    assert all(asm.sum_rule_identities(3).values())
    assert all(asm.closed_form_checks(2).values())


def test_links_small():
    rep = asm.check_kuperberg_links(max_N=3)
    assert rep and all(rep.values())
