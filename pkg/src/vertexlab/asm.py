"""Alternating sign matrices: symmetry classes, weighted enumeration and the
determinant / pfaffian generating functions that match them.

Sizes are matrix dimensions for enumeration (``plain 3`` is 3x3, ``ht 8`` is
8x8, ``vhp 5`` is the 5x7 family) and determinant/pfaffian dimensions for the
closed forms.
"""
from __future__ import annotations

import enum
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import sympy
from gmpy2 import mpq

from .exact import (GenPoly, LaurentPoly, I, T, Y, Z, binom, det_exact, identity, interpolate,
                    matmul, pfaffian, rat, scalar, transpose)


class EnumerationTooLarge(ValueError):
    pass


class AsmKind(enum.Enum):
    PLAIN = "plain"
    HT = "ht"
    HT_MINUS = "htminus"
    QT = "qt"
    VS = "vs"
    UU = "uu"
    VHP = "vhp"

    @classmethod
    def parse(cls, value) -> "AsmKind":
        if isinstance(value, cls):
            return value
        key = str(value).lower().replace("-", "").replace("_", "")
        for k in cls:
            if k.value == key:
                return k
        raise ValueError(f"unknown ASM class {value!r}")


# largest enumerable size per class (row count)
SIZE_LIMITS = {
    AsmKind.PLAIN: 6, AsmKind.HT: 8, AsmKind.HT_MINUS: 8, AsmKind.QT: 8,
    AsmKind.VS: 7, AsmKind.UU: 4, AsmKind.VHP: 5,
}


def check_size(kind, size: int) -> None:
    kind = AsmKind.parse(kind)
    if size < 1:
        raise ValueError("size must be positive")
    if kind in (AsmKind.HT, AsmKind.HT_MINUS, AsmKind.QT, AsmKind.UU) and size % 2:
        raise ValueError(f"{kind.value} matrices have even size")
    if kind is AsmKind.VS and size % 2 == 0:
        raise ValueError("vs matrices have odd size")
    if kind is AsmKind.VHP and size % 4 != 1:
        raise ValueError("vhp matrices have 4n+1 rows")
    if size > SIZE_LIMITS[kind]:
        raise EnumerationTooLarge(
            f"{kind.value} enumeration is limited to size {SIZE_LIMITS[kind]}")


@dataclass(frozen=True)
class AsmMatrix:
    entries: tuple
    kind: AsmKind

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def weight(self) -> GenPoly:
        return weight(self)

    def counters(self) -> dict:
        return counters(self)

    def __str__(self):
        sym = {1: "+", 0: "0", -1: "-"}
        return "\n".join(" ".join(sym[v] for v in r) for r in self.entries)


# --------------------------------------------------------------------------
# row and matrix validity

def is_alternating(seq) -> bool:
    """Non-zero entries alternate +, -, ..., + (so they sum to one)."""
    acc = 0
    for v in seq:
        acc += v
        if acc not in (0, 1):
            return False
    return acc == 1


def is_asm(A) -> bool:
    return (all(is_alternating(r) for r in A)
            and all(is_alternating(c) for c in zip(*A)))


@lru_cache(maxsize=None)
def alternating_rows(length: int) -> tuple:
    """Every row of an ASM of the given width."""
    out = []
    for k in range(1, length + 1, 2):
        for pos in itertools.combinations(range(length), k):
            row = [0] * length
            for idx, p in enumerate(pos):
                row[p] = 1 if idx % 2 == 0 else -1
            out.append(tuple(row))
    return tuple(out)


def _stack(depth: int, width: int, candidates, colsums=None, prefix=()):
    """Row stacks whose column partial sums stay in {0, 1}."""
    if colsums is None:
        colsums = (0,) * width
    if any(c not in (0, 1) for c in colsums):
        return
    if depth == 0:
        yield prefix, colsums
        return
    for row in candidates:
        new = tuple(c + v for c, v in zip(colsums, row))
        if all(s in (0, 1) for s in new):
            yield from _stack(depth - 1, width, candidates, new, prefix + (row,))


def _rot180(A):
    return tuple(tuple(reversed(r)) for r in reversed(A))


def _rot90(A):
    n = len(A)
    return tuple(tuple(A[n - 1 - j][i] for j in range(n)) for i in range(n))


# --------------------------------------------------------------------------
# enumeration per class; each generator takes an optional first-row filter

def _plain(size, first=None):
    cands = alternating_rows(size)
    for top in (cands if first is None else [first]):
        for rows, sums in _stack(size - 1, size, cands, top, (top,)):
            if all(s == 1 for s in sums):
                yield rows


def _half_turn(size, first=None):
    half = size // 2
    cands = alternating_rows(size)
    for top in (cands if first is None else [first]):
        for rows, sums in _stack(half - 1, size, cands, top, (top,)):
            if all(sums[j] + sums[size - 1 - j] == 1 for j in range(size)):
                yield rows + _rot180(rows)


def _quarter_turn(size, first=None):
    for A in _half_turn(size, first):
        if _rot90(A) == A:
            yield A


@lru_cache(maxsize=None)
def _symmetric_rows(length: int, middle=None) -> tuple:
    return tuple(r for r in alternating_rows(length)
                 if r == tuple(reversed(r)) and (middle is None or r[length // 2] == middle))


def _vertical(size, first=None):
    cands = _symmetric_rows(size)
    for top in (cands if first is None else [first]):
        for rows, sums in _stack(size - 1, size, cands, top, (top,)):
            if all(s == 1 for s in sums):
                yield rows


def _uturn_pairs(size, first=None):
    n = size // 2
    seqs = alternating_rows(2 * size)
    for pairs in itertools.product(seqs, repeat=n):
        if first is not None and pairs[0][:size] != first:
            continue
        A = []
        for s in pairs:
            A.append(s[:size])
            A.append(tuple(reversed(s[size:])))
        if _uu_columns_ok(A):
            yield tuple(A)


def _uu_columns_ok(A) -> bool:
    """Column pairs read upwards through the odd column, then down the even one."""
    size = len(A)
    for j in range(0, size, 2):
        up = [A[i][j] for i in reversed(range(size))]
        down = [A[i][j + 1] for i in range(size)]
        if not is_alternating(up + down):
            return False
    return True


def _perverse(size, first=None):
    n = (size - 1) // 4
    width = 4 * n + 3
    centre = 2 * n + 1
    median = tuple(1 if j % 2 == 0 else -1 for j in range(width))
    level = [_symmetric_rows(width, 1 if i % 2 == 0 else -1) for i in range(2 * n)]

    def grow(i, prefix):
        if i == 2 * n:
            yield prefix
            return
        for row in level[i]:
            if i == 0 and first is not None and row != first:
                continue
            yield from grow(i + 1, prefix + (row,))

    for top in grow(0, ()):
        A = top + (median,) + tuple(reversed(top))
        if not all(is_alternating(r) for r in A):
            continue
        ok = True
        for j in range(width):
            col = [A[i][j] for i in range(size)]
            if j == centre:
                col[2 * n] = 1       # the centre reads +1 vertically
            if not is_alternating(col):
                ok = False
                break
        if ok:
            yield A


_GENERATORS = {
    AsmKind.PLAIN: _plain, AsmKind.HT: _half_turn, AsmKind.HT_MINUS: _half_turn,
    AsmKind.QT: _quarter_turn, AsmKind.VS: _vertical, AsmKind.UU: _uturn_pairs,
    AsmKind.VHP: _perverse,
}


def _first_rows(kind: AsmKind, size: int):
    if kind is AsmKind.VS:
        return list(_symmetric_rows(size))
    if kind is AsmKind.VHP:
        return list(_symmetric_rows(4 * ((size - 1) // 4) + 3, 1))
    return list(alternating_rows(size))


def enumerate_asms(kind, size: int) -> list:
    """Complete, duplicate-free list of the class members of the given size."""
    kind = AsmKind.parse(kind)
    check_size(kind, size)
    return [AsmMatrix(A, kind) for A in _GENERATORS[kind](size)]


# --------------------------------------------------------------------------
# weights

def _negatives(A, rows=None, cols=None) -> int:
    rows = range(len(A)) if rows is None else rows
    cols = range(len(A[0])) if cols is None else cols
    return sum(1 for i in rows for j in cols if A[i][j] < 0)


def counters(M: AsmMatrix) -> dict:
    """Exponents (k, m, m') of the class weight."""
    A, kind = M.entries, M.kind
    size = len(A)
    if kind is AsmKind.PLAIN:
        return {"k": _negatives(A)}
    if kind is AsmKind.HT:
        return {"k": _negatives(A, cols=range(size // 2))}
    if kind is AsmKind.HT_MINUS:
        half = range(size // 2)
        m = sum(1 for i in half for j in half if A[i][j])
        return {"k": _negatives(A, cols=half), "m": m}
    if kind is AsmKind.QT:
        half = range(size // 2)
        return {"k": _negatives(A, rows=half, cols=half)}
    if kind is AsmKind.VS:
        return {"k": _negatives(A, cols=range(size // 2))}
    if kind is AsmKind.UU:
        m = sum(1 for i in range(0, size, 2) if sum(1 for v in A[i] if v) % 2)
        mp = sum(1 for j in range(1, size, 2) if sum(1 for i in range(size) if A[i][j]) % 2)
        return {"k": _negatives(A), "m": m, "m'": mp}
    if kind is AsmKind.VHP:
        n = (size - 1) // 4
        return {"k": _negatives(A, rows=range(2 * n), cols=range(2 * n + 1))}
    raise ValueError(kind)


def weight(M: AsmMatrix) -> GenPoly:
    c = counters(M)
    w = T ** c["k"]
    if M.kind is AsmKind.HT_MINUS:
        return -w if c["m"] % 2 else w
    if M.kind is AsmKind.UU:
        return w * Y ** c["m"] * Z ** c["m'"]
    return w


def _partial_genfun(args) -> GenPoly:
    kind, size, first = args
    total = GenPoly()
    for A in _GENERATORS[kind](size, first):
        total = total + weight(AsmMatrix(A, kind))
    return total


def genfun(kind, size: int, jobs: int = 1) -> GenPoly:
    """Sum of class weights; jobs > 1 splits the search over first rows."""
    kind = AsmKind.parse(kind)
    check_size(kind, size)
    if jobs <= 1:
        return _partial_genfun((kind, size, None))
    tasks = [(kind, size, r) for r in _first_rows(kind, size)]
    total = GenPoly()
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for part in pool.map(_partial_genfun, tasks):
            total = total + part
    return total


def count(kind, size: int) -> int:
    kind = AsmKind.parse(kind)
    check_size(kind, size)
    return sum(1 for _ in _GENERATORS[kind](size))


# --------------------------------------------------------------------------
# polynomial helpers

def specialise(p: GenPoly, y=None, z=None) -> GenPoly:
    """Set y and/or z to integers, keeping the other variables."""
    def power(v, e):
        if e < 0 and abs(v) != 1:
            raise ValueError("negative power at a non-unit")
        return v ** abs(e)        # for v = +-1, v^-e = v^e

    out = {}
    for (i, j, k), c in p.terms.items():
        if y is not None:
            c, j = c * power(y, j), 0
        if z is not None:
            c, k = c * power(z, k), 0
        out[(i, j, k)] = out.get((i, j, k), 0) + c
    return GenPoly(out)


def _x_to_t(p: GenPoly) -> GenPoly:
    """A polynomial in x stored on the t slot, rewritten in t = x^2."""
    out = {}
    for (i, j, k), c in p.terms.items():
        if i % 2 or j or k:
            raise ArithmeticError("not a polynomial in x^2")
        out[(i // 2, 0, 0)] = c
    return GenPoly(out)


def _q_to_t(p: GenPoly) -> GenPoly:
    """A Laurent polynomial in q (t slot) that is a polynomial in t = (q + 1/q)^2."""
    xsq = GenPoly({(2, 0, 0): 1, (0, 0, 0): 2, (-2, 0, 0): 1})
    rest = p
    out = GenPoly()
    while rest:
        d = max(e[0] for e in rest.terms)
        if d % 2 or d < 0 or any(e[1] or e[2] for e in rest.terms):
            raise ArithmeticError("not a polynomial in (q + 1/q)^2")
        c = rest.terms[(d, 0, 0)]
        out = out + GenPoly({(d // 2, 0, 0): c})
        rest = rest - c * xsq ** (d // 2)
    return out


def eval_t(p: GenPoly, t, y=None, z=None):
    """Evaluate at exact values (negative exponents of y and z allowed)."""
    total = 0
    for (i, j, k), c in p.terms.items():
        term = scalar(c) * scalar(t) ** i
        if j:
            term = term * scalar(y) ** j
        if k:
            term = term * scalar(z) ** k
        total = total + term
    return total


# --------------------------------------------------------------------------
# closed forms

def zad_hom(N: int) -> GenPoly:
    """det(y^-1 delta + y sum_k C(i,k) C(j,k) t^(j-k)) as a Laurent polynomial in y."""
    rows = []
    for i in range(N):
        row = []
        for j in range(N):
            s = GenPoly({(j - k, 0, 0): binom(i, k) * binom(j, k) for k in range(min(i, j) + 1)})
            row.append(s * Y ** 2 + (1 if i == j else 0))
        rows.append(row)
    return GenPoly.coerce(det_exact(rows) if N else 1).shift(y=-N)


def _det_t(n: int, entry) -> GenPoly:
    if n == 0:
        return GenPoly.constant(1)
    return det_exact([[entry(i, j) for j in range(n)] for i in range(n)])


def a_v(n: int) -> GenPoly:
    """Vertically symmetric ASMs of size 2n+1."""
    return _det_t(n, lambda i, j: GenPoly({(k, 0, 0): binom(i + j + 1, i + k + 1) * binom(i + k + 1, 2 * k + 1)
                                           for k in range(n)}))


def a_uu2_tilde(n: int) -> GenPoly:
    return _det_t(n, lambda i, j: GenPoly({(k, 0, 0): binom(i + j, i + k) * binom(i + k, 2 * k)
                                           for k in range(n)}))


def a_vhp2(n: int) -> GenPoly:
    return _det_t(n, lambda i, j: GenPoly({(k, 0, 0): binom(i + j, i + k) * binom(i + k + 1, 2 * k)
                                           for k in range(n)}))


def a_uu2(n: int) -> GenPoly:
    """Second factor of the double U-turn generating function, in t, y, z."""
    lead = T + (Y + 1) * (Z + 1)

    def entry(i, j):
        s = GenPoly()
        for k in range(n):
            s = s + lead * binom(i + j, i + k) * binom(i + k, 2 * k) * T ** k
            s = s + ((Z + 1) * binom(i + j, i + k) * binom(i + k, 2 * k + 1)
                     + (Y + 1) * binom(i + j, i + k + 1) * binom(i + k + 1, 2 * k + 1)) * T ** (k + 1)
        return s

    return _det_t(n, entry)


def aqt1_matrix(N: int, sign: int = -1):
    """Skew matrix in x (t slot) whose pfaffian is the first quarter-turn factor.

    ``sign=+1`` is the matrix as usually written; its pfaffian is -1 for N=2,
    so the default flips it.
    """
    x = GenPoly.var("t")
    M = [[GenPoly() for _ in range(N)] for _ in range(N)]
    for i in range(N):
        for j in range(N):
            e = GenPoly()
            if binom(j, i) and j - i - 1 >= 0:
                e = e + (-1) ** j * binom(j, i) * x ** (j - i - 1)
            if binom(i, j) and i - j - 1 >= 0:
                e = e - (-1) ** i * binom(i, j) * x ** (i - j - 1)
            M[i][j] = e * sign
    return M


def a_qt1(N: int, sign: int = -1) -> GenPoly:
    if N % 2:
        raise ValueError("pfaffian dimension must be even")
    return _x_to_t(GenPoly.coerce(pfaffian(aqt1_matrix(N, sign))))


def aqt2_matrix(N: int):
    q = GenPoly.var("t")
    qi = GenPoly.var("t", -1)

    def a(i, j):
        sgn = (-1) ** i
        c1 = binom(i + j - 1, i)
        c2 = binom(i + j - 1, j)
        return sgn * GenPoly.var("t", i - j) * (c1 * q + c2 * qi)

    return [[a(i, j) - a(j, i) for j in range(N)] for i in range(N)]


def a_qt2(N: int) -> GenPoly:
    """Second quarter-turn factor: pfaffian in q rewritten in t = (q + 1/q)^2."""
    if N % 2:
        raise ValueError("pfaffian dimension must be even")
    return _q_to_t(GenPoly.coerce(pfaffian(aqt2_matrix(N))))


CLOSED_FORMS = {
    "zadhom": zad_hom, "av": a_v, "aqt1": a_qt1, "aqt2": a_qt2,
    "auu2": a_uu2, "auu2tilde": a_uu2_tilde, "avhp2": a_vhp2,
}


def closed_form(name: str, size: int) -> GenPoly:
    key = name.lower().replace("_", "").replace("-", "")
    if key not in CLOSED_FORMS:
        raise ValueError(f"unknown closed form {name!r}; choose from {sorted(CLOSED_FORMS)}")
    return CLOSED_FORMS[key](size)


def a_plain(N: int) -> GenPoly:
    """A(N;t) read off the homogeneous sum rule: Z(q) / x^N interpolated in t = x^2."""
    if N == 0:
        return GenPoly.constant(1)
    zad = zad_hom(N)
    deg = (N - 1) * (N - 2) // 2
    points = []
    for q in default_qs(deg + 2):
        x = q + 1 / q
        points.append((x * x, eval_t(zad, x * x, y=q).to_rational() / x ** N))
    coeffs = interpolate(points)
    if any(c.denominator != 1 for c in coeffs) or any(coeffs[deg + 1:]):
        raise ArithmeticError("sum rule does not reduce to an integer polynomial")
    return GenPoly({(i, 0, 0): int(c) for i, c in enumerate(coeffs) if c})


def closed_form_for_class(kind, size: int) -> GenPoly:
    """The closed-form pipeline matching genfun(kind, size), where one exists."""
    kind = AsmKind.parse(kind)
    if kind is AsmKind.PLAIN:
        return a_plain(size)
    if kind is AsmKind.VS and size % 2:
        return a_v(size // 2)
    if kind is AsmKind.HT and size % 2 == 0:
        return a_plain(size // 2) * zad_at_one(size // 2)
    if kind is AsmKind.HT_MINUS and size % 4 == 0:
        N = size // 2
        return (-T) ** (N // 2) * a_plain(N) * a_qt1(N) ** 2
    if kind is AsmKind.QT and size % 4 == 0:
        return a_qt1(size // 2) * a_qt2(size // 2)
    if kind is AsmKind.UU and size % 2 == 0:
        return a_v(size // 2) * a_uu2(size // 2)
    if kind is AsmKind.VHP and size % 4 == 1:
        return a_v(size // 4) * a_vhp2(size // 4)
    raise ValueError(f"no closed form for {kind.value} at size {size}")


def vhp_limit(p: GenPoly, n: int) -> GenPoly:
    """lim_{y -> oo} y^-n p(t, y, 1/y)."""
    out = {}
    for (i, j, k), c in p.terms.items():
        e = j - k
        if e > n:
            raise ArithmeticError("limit diverges")
        if e == n:
            out[(i, 0, 0)] = out.get((i, 0, 0), 0) + c
    return GenPoly(out)


def uu_tilde_from_uu2(p: GenPoly, n: int) -> GenPoly:
    """t^-n p(t, -1, -1)."""
    return specialise(p, -1, -1).exact_div(T ** n)


# --------------------------------------------------------------------------
# enumeration versus closed forms

def _matches(label, lhs, rhs, report):
    report[label] = lhs == rhs


def closed_form_checks(max_n: int = 2) -> dict:
    """Closed forms against enumeration and against each other."""
    report: dict = {}
    for n in range(1, min(max_n, 3) + 1):
        _matches(f"av[{n}]=vs[{2 * n + 1}]", a_v(n), genfun(AsmKind.VS, 2 * n + 1), report)
    for n in range(1, min(max_n, 2) + 1):
        uu = genfun(AsmKind.UU, 2 * n)
        report[f"uu[{2 * n}]=av*auu2"] = uu == a_v(n) * a_uu2(n)
        report[f"auu2tilde[{n}]"] = uu_tilde_from_uu2(a_uu2(n), n) == a_uu2_tilde(n)
        report[f"avhp2[{n}]"] = vhp_limit(a_uu2(n), n) == a_vhp2(n)
    report["vhp[5]=av*avhp2"] = genfun(AsmKind.VHP, 5) == a_v(1) * a_vhp2(1)
    for N in (2, 4):
        if N // 2 > max_n:
            continue
        report[f"qt[{2 * N}]=aqt1*aqt2"] = genfun(AsmKind.QT, 2 * N) == a_qt1(N) * a_qt2(N)
        hm = genfun(AsmKind.HT_MINUS, 2 * N)
        report[f"htminus[{2 * N}]"] = hm == (-T) ** (N // 2) * genfun(AsmKind.PLAIN, N) * a_qt1(N) ** 2
        M = aqt1_matrix(N)
        for x in (2, 3):
            Mx = [[rat(e.evaluate(t=x)) for e in row] for row in M]
            report[f"aqt1 pf^2=det N={N} x={x}"] = pfaffian(Mx) ** 2 == det_exact(Mx)
        if N == 4 and max_n >= 2:
            # the tilde polynomial also enters the half-turn factorisation at n = 2
            lhs = genfun(AsmKind.HT, 8)
            rhs = genfun(AsmKind.PLAIN, 4) * specialise(a_uu2(2), 1, 1) * a_uu2_tilde(2)
            report["ht[8]=A(4)*auu2(1,1)*tilde"] = lhs == rhs
    report["ht[4]=A(2)*auu2(1,1)*tilde"] = (
        genfun(AsmKind.HT, 4) == genfun(AsmKind.PLAIN, 2) * specialise(a_uu2(1), 1, 1) * a_uu2_tilde(1))
    for N in range(1, max_n + 3):
        p = zad_hom(N)
        mirrored = GenPoly({(i, -j, k): c for (i, j, k), c in p.terms.items()})
        report[f"zadhom y->1/y N={N}"] = p == mirrored
    return report


def zad_at_one(N: int) -> GenPoly:
    return specialise(zad_hom(N), y=1)


def zad_at_i(N: int) -> GenPoly:
    """Z(i) = i^N det(S - 1); for even N this is a polynomial in t."""
    if N % 2:
        raise ValueError("Z(i) is a polynomial in t only for even N")
    rows = []
    for i in range(N):
        rows.append([GenPoly({(j - k, 0, 0): binom(i, k) * binom(j, k) for k in range(min(i, j) + 1)})
                     - (1 if i == j else 0) for j in range(N)])
    return det_exact(rows) * (-1) ** (N // 2)


def sum_rule_identities(max_N: int = 4) -> dict:
    """Polynomial identities between the homogeneous sum rule and enumeration."""
    report: dict = {}
    q = LaurentPoly.var()
    xq = q + LaurentPoly.monomial(mpq(1), -1)
    for N in range(1, max_N + 1):
        A = genfun(AsmKind.PLAIN, N)
        # Z(q) as a Laurent polynomial in q
        lhs = 0
        for (i, j, k), c in zad_hom(N).terms.items():
            lhs = lhs + (xq ** (2 * i)) * LaurentPoly.monomial(mpq(c), j)
        rhs = (xq ** N) * sum((xq ** (2 * i) * mpq(c) for (i, _, _), c in A.terms.items()),
                              LaurentPoly.constant(mpq(0)))
        report[f"Z(q)=x^N A N={N}"] = lhs == rhs
        if 2 * N <= SIZE_LIMITS[AsmKind.HT]:
            report[f"Z(1)A=Aht+ N={N}"] = zad_at_one(N) * A == genfun(AsmKind.HT, 2 * N)
        if N % 2 == 0 and 2 * N <= SIZE_LIMITS[AsmKind.HT_MINUS]:
            report[f"Z(i)A=i^N Aht- N={N}"] = (
                zad_at_i(N) * A == (-1) ** (N // 2) * genfun(AsmKind.HT_MINUS, 2 * N))
    return report


# --------------------------------------------------------------------------
# links with the spin-chain zero-energy states

def _xsq(params):
    x = params.x
    return x, x * x


def _pattern(ds):
    return "".join("+0-"[d] for d in ds)


def _interpolates(points, poly: GenPoly) -> bool:
    """The points lie on the single-variable polynomial and pin it down."""
    deg = poly.degree("t")
    if len(points) < deg + 2:
        raise ValueError("not enough points to pin down the polynomial")
    coeffs = interpolate(points)
    ref = [mpq(c) for c in poly.coefficients("t")] if poly else [mpq(0)]
    while len(ref) > 1 and not ref[-1]:
        ref.pop()
    return [mpq(c) for c in coeffs] == ref


def default_qs(count: int) -> list:
    """Rational q > 1 giving distinct t = (q + 1/q)^2."""
    return [mpq(k + 2, k + 1) for k in range(1, count + 1)]


SCALAR_LINKS = ("norm_d", "zq", "z1", "zi", "mixed")


def _link_targets(max_N: int, scalar_max_N: int) -> dict:
    """Polynomial in t expected for each spin-chain quantity, by label."""
    out = {}
    for N in range(1, max_N + 1):
        n, odd = divmod(N, 2)
        A = genfun(AsmKind.PLAIN, N)
        out[("norm_d", N)] = A
        out[("zq", N)] = A
        out[("z1", N)] = (genfun(AsmKind.HT, 2 * N) if 2 * N <= SIZE_LIMITS[AsmKind.HT]
                          else zad_at_one(N) * A)
        out[("simple_d", N)] = genfun(AsmKind.PLAIN, n) if n else GenPoly.constant(1)
        if odd:
            out[("zeros_d", N)] = a_v(n)
            out[("alt_ad_odd", N)] = a_uu2_tilde(n + 1)
        else:
            out[("zi", N)] = (genfun(AsmKind.HT_MINUS, 2 * N)
                              if 2 * N <= SIZE_LIMITS[AsmKind.HT_MINUS]
                              else (-T) ** n * A * a_qt1(N) ** 2)
            out[("mixed", N)] = (genfun(AsmKind.QT, 2 * N) if 2 * N <= SIZE_LIMITS[AsmKind.QT]
                                 else a_qt1(N) * a_qt2(N))
            out[("alt_d", N)] = a_v(n)
            out[("zeros_ad", N)] = a_uu2_tilde(n)
            out[("alt_ad", N)] = a_vhp2(n)
        if N > scalar_max_N:
            for key in SCALAR_LINKS:
                out.pop((key, N), None)
    return out


LINK_LABELS = {
    "norm_d": "|phi_d|^2 = A(N)",
    "zq": "Z(q) = x^N A(N)",
    "z1": "Z(1) A(N) = Aht+(2N)",
    "zi": "Z(i) A(N) = i^N Aht-(2N)",
    "mixed": "<phi_d|phi_ad> = Aqt(2N)",
    "simple_d": "phi_d up^n [0] down^n = A(n)",
    "alt_d": "phi_d up down .. = Av(2n+1)",
    "zeros_d": "phi_d 0..0 = x^n Av(2n+1)",
    "zeros_ad": "phi_ad 0..0 = (-x)^n tildeA(4n)",
    "alt_ad": "phi_ad up down .. = Avhp2(4n+2)",
    "alt_ad_odd": "phi_ad up down .. up = (-1)^n tildeA(4n+4)",
}


def link_values(N: int, params) -> dict:
    """The spin-chain side of every link at one rational q, divided so that
    each value should equal its target polynomial at t = x^2."""
    from .sov import component, phi
    from .transfer import magnetization_values

    q = params.q
    x, t = _xsq(params)
    n, odd = divmod(N, 2)
    A_t = None
    mags = magnetization_values(N)
    pd = phi("d", N, params)
    pa = phi("ad", N, params)
    vals = {"norm_d": sum(v * v for v in pd.values()),
            "zq": sum(v * v * q ** mags[k] for k, v in pa.items()) / x ** N,
            "z1": sum(v * v for v in pa.values()),
            "simple_d": component(pd, [0] * n + [1] * odd + [2] * n),
            "up_ad": component(pa, [0] * N)}
    if odd:
        vals["zeros_d"] = component(pd, [1] * N) / x ** n
        vals["alt_ad_odd"] = component(pa, [0, 2] * n + [0]) * (-1) ** n
    else:
        zi = sum((scalar(v * v) * I ** (mags[k] % 4) for k, v in pa.items()), scalar(0))
        vals["zi"] = (zi * (-1) ** n).to_rational()
        vals["mixed"] = sum(v * pa.get(k, 0) for k, v in pd.items())
        vals["alt_d"] = component(pd, [0, 2] * n)
        vals["zeros_ad"] = component(pa, [1] * N) / (-x) ** n
        vals["alt_ad"] = component(pa, [0, 2] * n)
    return vals


def check_kuperberg_links(max_N: int = 4, qs=None, n_interp: int = 5,
                          scalar_max_N: int = 4) -> dict:
    """Zero-energy-state components and scalar products against ASM enumeration.

    Every value comes from the spin-chain vectors at rational q.  Statements
    are polynomial identities in t = x^2, confirmed by interpolating through
    max(n_interp, degree + 2) values of q.  Sum rules at y = 1 and y = i are
    multiplied by A(N; t) on the chain side before comparison.  Norms, sum
    rules and the mixed scalar product are checked up to ``scalar_max_N``.
    """
    from .vertex import ModelParams

    targets = _link_targets(max_N, scalar_max_N)
    plain = {N: genfun(AsmKind.PLAIN, N) for N in range(1, max_N + 1)}
    need = n_interp
    for (key, N), poly in targets.items():
        deg = poly.degree("t") + 2
        if key in ("z1", "zi"):
            deg = max(deg, zad_hom(N).degree("t") + plain[N].degree("t") + 2)
        need = max(need, deg)
    qs = default_qs(need) if qs is None else [rat(q) for q in qs]
    series: dict = {}
    report: dict = {}
    for q in qs:
        params = ModelParams(q)
        t = params.x ** 2
        for N in range(1, max_N + 1):
            vals = link_values(N, params)
            label = f"phi_ad up..up = 1 N={N}"
            report[label] = report.get(label, True) and vals.pop("up_ad") == 1
            a_t = eval_t(plain[N], t).to_rational()
            for key in ("z1", "zi"):
                if key in vals:
                    vals[key] = vals[key] * a_t
            for key, v in vals.items():
                if (key, N) in targets:
                    series.setdefault((key, N), []).append((t, v))
    for (key, N), points in sorted(series.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        report[f"{LINK_LABELS[key]} N={N}"] = _interpolates(points, targets[(key, N)])
    return report


def enumeration_baselines() -> dict:
    counts = [genfun(AsmKind.PLAIN, n).evaluate() for n in range(1, 6)]
    return {
        "plain counts 1..5": counts == [1, 2, 7, 42, 429],
        "A(3;t) = 6 + t": genfun(AsmKind.PLAIN, 3) == T + 6,
        "Av(5;t) = 2 + t": genfun(AsmKind.VS, 5) == T + 2,
    }


# --------------------------------------------------------------------------
# the binomial matrices L(alpha, beta)

def l_matrix(alpha, beta, N: int):
    return [[binom(i, j) * rat(alpha) ** i * rat(beta) ** j for j in range(N)] for i in range(N)]


def _series_coefficients(alpha, beta, N: int):
    """{u^i v^j} of 1 / (1 - alpha (u + v) - alpha^2 (beta^2 - 1) u v)."""
    a, c = rat(alpha), rat(alpha) ** 2 * (rat(beta) ** 2 - 1)
    g = [[mpq(0)] * N for _ in range(N)]
    for i in range(N):
        for j in range(N):
            if i == j == 0:
                g[i][j] = mpq(1)
                continue
            v = mpq(0)
            if i:
                v += a * g[i - 1][j]
            if j:
                v += a * g[i][j - 1]
            if i and j:
                v += c * g[i - 1][j - 1]
            g[i][j] = v
    return g


def product_law_parameters(alpha_p, beta_p, alpha_m, beta_m):
    """(alpha0, beta0) with L(alpha+, beta+) L(alpha0, beta0) = L(alpha-, beta-)."""
    ap, bp, am, bm = map(rat, (alpha_p, beta_p, alpha_m, beta_m))
    return (am - ap) / (ap * bp), am * bm / (am - ap)


def divided_difference_check() -> bool:
    """Confluent divided difference of a two-variable rational function at N = 2."""
    u, v, h, r = sympy.symbols("u v h r")
    g = 1 / (1 - 2 * u - 3 * v + u * v * u)
    point = sympy.Rational(1, 5)
    us = [point + c * h for c in (0, 1)]
    vs = [point + c * h for c in (0, 2)]
    ok = True
    for i in range(2):
        for j in range(2):
            total = 0
            for m in range(i + 1):
                for nn in range(j + 1):
                    den = 1
                    for mm in range(i + 1):
                        if mm != m:
                            den *= us[m] - us[mm]
                    for kk in range(j + 1):
                        if kk != nn:
                            den *= vs[nn] - vs[kk]
                    total += g.subs({u: us[m], v: vs[nn]}) / den
            limit = sympy.cancel(sympy.together(total)).subs(h, 0)
            shifted = g.subs({u: u + point, v: v + point})
            coeff = sympy.diff(shifted, u, i, v, j).subs({u: 0, v: 0}) / (
                sympy.factorial(i) * sympy.factorial(j))
            ok = ok and sympy.simplify(limit - coeff) == 0
    return bool(ok)


def l_matrix_checks(alpha, beta, alpha_p, beta_p, N: int, q=None) -> dict:
    """Determinant, L L^t, product law and the divided-difference limit."""
    alpha, beta, alpha_p, beta_p = map(rat, (alpha, beta, alpha_p, beta_p))
    L = l_matrix(alpha, beta, N)
    report = {
        "det": det_exact(L) == (alpha * beta) ** (N * (N - 1) // 2),
    }
    LLt = matmul(L, transpose(L))
    series = _series_coefficients(alpha, beta, N)
    closed = [[alpha ** (i + j) * sum(binom(i, k) * binom(j, k) * beta ** (2 * k) for k in range(N))
               for j in range(N)] for i in range(N)]
    report["L L^t = series"] = LLt == series
    report["L L^t = binomial sum"] = LLt == closed
    a0, b0 = product_law_parameters(alpha, beta, alpha_p, beta_p)
    report["product law"] = matmul(L, l_matrix(a0, b0, N)) == l_matrix(alpha_p, beta_p, N)
    if q is not None:
        q = rat(q)
        x = q + 1 / q
        ap, am = 1 / (q ** 2 - 1), 1 / (q ** -2 - 1)
        a0, b0 = product_law_parameters(ap, q, am, 1 / q)
        report["alpha0 = -x, beta0 = 1/x"] = (a0, b0) == (-x, 1 / x)
        # only beta0^2 enters L L^t, so the sign of beta0 is immaterial there
        Lp, Lm = l_matrix(-x, 1 / x, N), l_matrix(-x, -1 / x, N)
        report["L L^t even in beta0"] = matmul(Lp, transpose(Lp)) == matmul(Lm, transpose(Lm))
        a1, b1 = product_law_parameters(ap, 1, am, 1)
        report["alpha0 = -q x, beta0 = q/x"] = (a1, b1) == (-q * x, q / x)
        # the homogeneous sum rule through L(alpha0, beta0)
        M = l_matrix(-x, -1 / x, N)
        y = mpq(3, 2)
        MMt = matmul(M, transpose(M))
        lhs = det_exact([[(1 / y if i == j else 0) + y * MMt[i][j] for j in range(N)]
                         for i in range(N)])
        report["sum rule via L"] = eval_t(zad_hom(N), x * x, y).to_rational() == lhs
    report["divided difference"] = divided_difference_check()
    return report


__all__ = [
    "AsmKind", "AsmMatrix", "CLOSED_FORMS", "a_plain", "closed_form_for_class", "EnumerationTooLarge", "SIZE_LIMITS",
    "a_qt1", "a_qt2", "a_uu2", "a_uu2_tilde", "a_v", "a_vhp2", "alternating_rows",
    "aqt1_matrix", "aqt2_matrix", "check_kuperberg_links", "check_size", "closed_form",
    "closed_form_checks", "counters", "default_qs", "divided_difference_check",
    "enumerate_asms", "enumeration_baselines", "eval_t", "genfun", "is_alternating", "is_asm",
    "l_matrix", "l_matrix_checks", "product_law_parameters", "specialise", "sum_rule_identities",
    "uu_tilde_from_uu2", "vhp_limit", "weight", "zad_at_i", "zad_at_one", "zad_hom",
]
