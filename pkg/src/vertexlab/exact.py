"""Exact scalars, Laurent polynomials, integer generating polynomials and
exact determinants / pfaffians.

Every number in the package is built on ``gmpy2.mpq``.  The scalar ring is
Q(i)[r] with r^2 a rational constant fixed per context; in practice that
constant is [q][q^2] for the chosen rational q.
"""
from __future__ import annotations
import os
import random
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq, mpz

MAX_TOTAL_DEGREE = 256


# --------------------------------------------------------------------------
# rationals

def rat(x) -> mpq:
    """Coerce ints, strings like ``'3/2'``, Fractions and mpq to mpq."""
    if isinstance(x, mpq):
        return x
    if isinstance(x, (int, mpz)):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(Fraction(x.strip()))
    if isinstance(x, ExactScalar):
        return x.to_rational()
    raise TypeError(f"cannot make a rational from {x!r}")


def max_denominator() -> int:
    """Bound for random numerators/denominators (env VERTEXLAB_MAX_DENOM, default 10^4)."""
    raw = os.environ.get("VERTEXLAB_MAX_DENOM", "")
    try:
        value = int(raw)
    except ValueError:
        return 10_000
    return value if value >= 2 else 10_000


def random_rational(rng: random.Random, bound: int | None = None, positive: bool = False,
                    avoid=()) -> mpq:
    """p/q' with p, q' uniform in [1, bound] and a uniform sign.

    Values in ``avoid`` and the points +-1 are rejected and redrawn.
    """
    bound = max_denominator() if bound is None else bound
    bad = {mpq(1), mpq(-1)} | {rat(a) for a in avoid}
    while True:
        x = mpq(rng.randint(1, bound), rng.randint(1, bound))
        if not positive and rng.random() < 0.5:
            x = -x
        if x not in bad:
            return x


def rational_to_json(x) -> dict:
    x = rat(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def rational_from_json(d: dict) -> mpq:
    return mpq(int(d["num"]), int(d["den"]))


# --------------------------------------------------------------------------
# the scalar ring Q(i)[r]

_ZERO = mpq(0)
_ONE = mpq(1)


def _ext(k1, k2):
    if k1 is None:
        return k2
    if k2 is None or k1 == k2:
        return k1
    raise ValueError(f"mixing extension constants {k1} and {k2}")


class ExactScalar:
    """a + b*i + c*r + d*i*r with i^2 = -1 and r^2 = ``ext``.

    ``ext`` is None for elements of Q(i); an r-free element happily mixes
    with any extension.
    """

    __slots__ = ("a", "b", "c", "d", "ext")

    def __init__(self, a=0, b=0, c=0, d=0, ext=None):
        self.a = rat(a)
        self.b = rat(b)
        self.c = rat(c)
        self.d = rat(d)
        self.ext = None if ext is None else rat(ext)
        if self.ext is None and (self.c or self.d):
            raise ValueError("r-part given without an extension constant")

    @classmethod
    def _raw(cls, a, b, c, d, ext):
        s = object.__new__(cls)
        s.a, s.b, s.c, s.d, s.ext = a, b, c, d, ext
        return s

    # constructors -------------------------------------------------------
    @classmethod
    def i(cls) -> "ExactScalar":
        return cls._raw(_ZERO, _ONE, _ZERO, _ZERO, None)

    @classmethod
    def root(cls, ext) -> "ExactScalar":
        """The adjoined square root r of ``ext``."""
        return cls._raw(_ZERO, _ZERO, _ONE, _ZERO, rat(ext))

    # coercion ------------------------------------------------------------
    @staticmethod
    def coerce(x) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, complex):
            raise TypeError("floats are not exact")
        return ExactScalar._raw(rat(x), _ZERO, _ZERO, _ZERO, None)

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def has_root(self) -> bool:
        return bool(self.c or self.d)

    def to_rational(self) -> mpq:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.a

    def parts(self):
        return (self.a, self.b, self.c, self.d)

    # arithmetic ------------------------------------------------------------
    def __add__(self, o):
        if not isinstance(o, ExactScalar):
            if isinstance(o, (int, mpq, mpz, Fraction)):
                return ExactScalar._raw(self.a + rat(o), self.b, self.c, self.d, self.ext)
            return NotImplemented
        return ExactScalar._raw(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d,
                                _ext(self.ext, o.ext))

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._raw(-self.a, -self.b, -self.c, -self.d, self.ext)

    def __sub__(self, o):
        if not isinstance(o, ExactScalar):
            if isinstance(o, (int, mpq, mpz, Fraction)):
                return ExactScalar._raw(self.a - rat(o), self.b, self.c, self.d, self.ext)
            return NotImplemented
        return ExactScalar._raw(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d,
                                _ext(self.ext, o.ext))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, ExactScalar):
            if isinstance(o, (int, mpq, mpz, Fraction)):
                o = rat(o)
                return ExactScalar._raw(self.a * o, self.b * o, self.c * o, self.d * o, self.ext)
            return NotImplemented
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = o.a, o.b, o.c, o.d
        if not (c or d or g or h):
            if not (b or f):
                return ExactScalar._raw(a * e, _ZERO, _ZERO, _ZERO, _ext(self.ext, o.ext))
            return ExactScalar._raw(a * e - b * f, a * f + b * e, _ZERO, _ZERO,
                                    _ext(self.ext, o.ext))
        k = _ext(self.ext, o.ext)
        re = a * e - b * f
        im = a * f + b * e
        rr = a * g + c * e - b * h - d * f
        ri = a * h + d * e + b * g + c * f
        if (c or d) and (g or h):
            re += k * (c * g - d * h)
            im += k * (c * h + d * g)
        return ExactScalar._raw(re, im, rr, ri, k)

    __rmul__ = __mul__

    def conj_root(self) -> "ExactScalar":
        """Galois conjugate r -> -r."""
        return ExactScalar._raw(self.a, self.b, -self.c, -self.d, self.ext)

    def conjugate(self) -> "ExactScalar":
        """Complex conjugation i -> -i (r is real)."""
        return ExactScalar._raw(self.a, -self.b, self.c, -self.d, self.ext)

    def inverse(self) -> "ExactScalar":
        a, b, c, d = self.a, self.b, self.c, self.d
        if not (c or d):
            n = a * a + b * b
            if not n:
                raise ZeroDivisionError("division by zero scalar")
            return ExactScalar._raw(a / n, -b / n, _ZERO, _ZERO, self.ext)
        # x = u + v r with u, v in Q(i); x * (u - v r) = u^2 - k v^2
        k = self.ext
        wr = a * a - b * b - k * (c * c - d * d)
        wi = 2 * a * b - 2 * k * c * d
        n = wr * wr + wi * wi
        if not n:
            raise ZeroDivisionError("division by a zero-norm scalar")
        inv_w = ExactScalar._raw(wr / n, -wi / n, _ZERO, _ZERO, None)
        return self.conj_root() * inv_w

    def __truediv__(self, o):
        if not isinstance(o, ExactScalar):
            if isinstance(o, (int, mpq, mpz, Fraction)):
                o = rat(o)
                if not o:
                    raise ZeroDivisionError("division by zero")
                return ExactScalar._raw(self.a / o, self.b / o, self.c / o, self.d / o, self.ext)
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, o):
        return ExactScalar.coerce(o) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ExactScalar._raw(_ONE, _ZERO, _ZERO, _ZERO, None)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison -------------------------------------------------------------
    def __eq__(self, o):
        if isinstance(o, ExactScalar):
            return self.a == o.a and self.b == o.b and self.c == o.c and self.d == o.d
        if isinstance(o, (int, mpq, mpz, Fraction)):
            return self.a == rat(o) and not (self.b or self.c or self.d)
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.a)
        return hash((self.a, self.b, self.c, self.d))

    def __bool__(self):
        return bool(self.a or self.b or self.c or self.d)

    def __repr__(self):
        return f"ExactScalar({self})"

    def __str__(self):
        terms = []
        for val, unit in ((self.a, ""), (self.b, "i"), (self.c, "r"), (self.d, "i*r")):
            if val:
                if unit:
                    terms.append(f"{val}*{unit}" if val != 1 else unit)
                else:
                    terms.append(str(val))
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    def to_complex(self) -> complex:
        r = float(gmpy2.sqrt(gmpy2.mpfr(self.ext))) if self.ext is not None and self.ext > 0 else 0.0
        if self.ext is not None and self.ext < 0 and (self.c or self.d):
            raise ValueError("negative extension constant has no real root")
        return complex(float(self.a) + float(self.c) * r, float(self.b) + float(self.d) * r)

    # serialization ---------------------------------------------------------
    def to_json(self) -> list:
        return [rational_to_json(v) for v in self.parts()]

    @classmethod
    def from_json(cls, data, ext=None) -> "ExactScalar":
        a, b, c, d = (rational_from_json(v) for v in data)
        return cls(a, b, c, d, ext if (c or d) else None)


def scalar(x) -> ExactScalar:
    return ExactScalar.coerce(x)


I = ExactScalar.i()
ONE = ExactScalar.coerce(1)
ZERO = ExactScalar.coerce(0)


def bracket(z):
    """[z] = z - 1/z."""
    z = scalar(z)
    if not z:
        raise ZeroDivisionError("bracket of non-unit")
    try:
        return z - z.inverse()
    except ZeroDivisionError:
        raise ZeroDivisionError("bracket of non-unit") from None


# --------------------------------------------------------------------------
# Laurent polynomials in one variable

def _is_zero(c) -> bool:
    return not c


class LaurentPoly:
    """Sum of coeffs[k] * z**(low + k); coefficients live in any exact ring."""

    __slots__ = ("low", "coeffs")

    def __init__(self, low: int, coeffs: Sequence):
        coeffs = list(coeffs)
        while coeffs and _is_zero(coeffs[-1]):
            coeffs.pop()
        start = 0
        while start < len(coeffs) and _is_zero(coeffs[start]):
            start += 1
        coeffs = coeffs[start:]
        self.low = low + start if coeffs else 0
        self.coeffs = tuple(coeffs)

    @classmethod
    def monomial(cls, coeff, exp: int) -> "LaurentPoly":
        return cls(exp, [coeff])

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls(0, [c])

    @classmethod
    def var(cls) -> "LaurentPoly":
        return cls(1, [mpq(1)])

    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    __bool__ = lambda self: bool(self.coeffs)

    def coeff(self, e: int):
        k = e - self.low
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def terms(self):
        for k, c in enumerate(self.coeffs):
            if not _is_zero(c):
                yield self.low + k, c

    def _binop_add(self, o, sign):
        if not isinstance(o, LaurentPoly):
            o = LaurentPoly.constant(o)
        if not o.coeffs:
            return self
        if not self.coeffs:
            return o if sign > 0 else -o
        lo = min(self.low, o.low)
        hi = max(self.high, o.high)
        out = []
        for e in range(lo, hi + 1):
            a = self.coeff(e)
            b = o.coeff(e)
            out.append(a + b if sign > 0 else a - b)
        return LaurentPoly(lo, out)

    def __add__(self, o):
        return self._binop_add(o, 1)

    __radd__ = __add__

    def __sub__(self, o):
        return self._binop_add(o, -1)

    def __rsub__(self, o):
        return (-self) + o

    def __neg__(self):
        return LaurentPoly(self.low, [-c for c in self.coeffs])

    def __mul__(self, o):
        if not isinstance(o, LaurentPoly):
            return LaurentPoly(self.low, [c * o for c in self.coeffs])
        if not self.coeffs or not o.coeffs:
            return LaurentPoly(0, [])
        out = [0] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(o.coeffs):
                if _is_zero(b):
                    continue
                out[i + j] = out[i + j] + a * b
        return LaurentPoly(self.low + o.low, out)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if isinstance(o, LaurentPoly):
            if len(o.coeffs) != 1:
                raise ArithmeticError("division by a non-monomial; use exact_div")
            return self * LaurentPoly.monomial(scalar(o.coeffs[0]).inverse(), -o.low)
        return self * scalar(o).inverse()

    def __rtruediv__(self, o):
        if len(self.coeffs) != 1:
            raise ArithmeticError("division by a non-monomial Laurent polynomial")
        return LaurentPoly.monomial(scalar(self.coeffs[0]).inverse() * o, -self.low)

    def __pow__(self, n: int):
        result = LaurentPoly.constant(mpq(1))
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, o):
        if not isinstance(o, LaurentPoly):
            o = LaurentPoly.constant(o)
        return self.low == o.low and len(self.coeffs) == len(o.coeffs) and all(
            a == b for a, b in zip(self.coeffs, o.coeffs))

    def __hash__(self):
        return hash((self.low, tuple(str(c) for c in self.coeffs)))

    def __call__(self, z):
        """Evaluate at an invertible ring element z."""
        total = 0
        for e, c in self.terms():
            total = total + c * (z ** e)
        return total

    def derivative(self) -> "LaurentPoly":
        return laurent_derivative(self)

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly(self.low + k, self.coeffs)

    def divmod(self, d: "LaurentPoly"):
        """Polynomial division after clearing the low exponents.

        Returns (quotient, remainder) with self = quotient*d + remainder,
        where the remainder's exponent span is narrower than d's.
        """
        if not d.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        num = list(self.coeffs)
        den = d.coeffs
        lead = den[-1]
        qlen = len(num) - len(den) + 1
        if qlen <= 0:
            return LaurentPoly(0, []), self
        quo = [0] * qlen
        for k in range(qlen - 1, -1, -1):
            c = num[k + len(den) - 1]
            if _is_zero(c):
                continue
            f = c / lead
            quo[k] = f
            for j, dc in enumerate(den):
                num[k + j] = num[k + j] - f * dc
        return (LaurentPoly(self.low - d.low, quo),
                LaurentPoly(self.low, num[: len(den) - 1]))

    def exact_div(self, d: "LaurentPoly") -> "LaurentPoly":
        quo, rem = self.divmod(d)
        if rem:
            raise ArithmeticError("inexact Laurent polynomial division")
        return quo

    def __repr__(self):
        if not self.coeffs:
            return "LaurentPoly(0)"
        return "LaurentPoly(" + " + ".join(f"({c})*z^{e}" for e, c in self.terms()) + ")"


def laurent_derivative(p: LaurentPoly) -> LaurentPoly:
    """Formal d/dz."""
    if not p.coeffs:
        return p
    return LaurentPoly(p.low - 1, [c * (p.low + k) for k, c in enumerate(p.coeffs)])


def bracket_poly(coeff, power: int = 1) -> LaurentPoly:
    """[coeff * z**power] as a Laurent polynomial in z."""
    c = scalar(coeff)
    inv = c.inverse()
    if power == 0:
        return LaurentPoly.constant(c - inv)
    return LaurentPoly.monomial(c, power) - LaurentPoly.monomial(inv, -power)


# --------------------------------------------------------------------------
# integer polynomials in t, y, z

_VARS = ("t", "y", "z")


class GenPoly:
    """Integer polynomial in t, y, z stored as {(i, j, k): coefficient}.

    Negative exponents are tolerated in storage (used for Laurent shifts in
    y) but exact division expects genuine polynomials.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps) + (0,) * (3 - len(exps))
                c = int(c)
                if c:
                    if sum(abs(e) for e in exps) > MAX_TOTAL_DEGREE:
                        raise OverflowError("GenPoly total degree exceeds cap")
                    clean[exps] = clean.get(exps, 0) + c
                    if not clean[exps]:
                        del clean[exps]
        self.terms = clean

    @classmethod
    def constant(cls, c: int) -> "GenPoly":
        return cls({(0, 0, 0): c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "GenPoly":
        e = [0, 0, 0]
        e[_VARS.index(name)] = power
        return cls({tuple(e): 1})

    @staticmethod
    def coerce(x) -> "GenPoly":
        if isinstance(x, GenPoly):
            return x
        if isinstance(x, (int, mpz)):
            return GenPoly.constant(int(x))
        raise TypeError(f"cannot coerce {x!r} to GenPoly")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, o):
        if isinstance(o, (int, mpz)):
            o = GenPoly.constant(int(o))
        if not isinstance(o, GenPoly):
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, o):
        o = GenPoly.coerce(o)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return GenPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return GenPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-GenPoly.coerce(o))

    def __rsub__(self, o):
        return GenPoly.coerce(o) - self

    def __mul__(self, o):
        if isinstance(o, (int, mpz)):
            return GenPoly({e: c * int(o) for e, c in self.terms.items()})
        if not isinstance(o, GenPoly):
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, 0) + c1 * c2
        return GenPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = GenPoly.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def shift(self, t: int = 0, y: int = 0, z: int = 0) -> "GenPoly":
        return GenPoly({(e[0] + t, e[1] + y, e[2] + z): c for e, c in self.terms.items()})

    def leading(self):
        e = max(self.terms)
        return e, self.terms[e]

    def exact_div(self, d: "GenPoly") -> "GenPoly":
        """Exact division; raises ArithmeticError on a non-zero remainder."""
        d = GenPoly.coerce(d)
        if not d:
            raise ZeroDivisionError("division by zero polynomial")
        if len(d.terms) == 1:
            (de, dc), = d.terms.items()
            out = {}
            for e, c in self.terms.items():
                qe = (e[0] - de[0], e[1] - de[1], e[2] - de[2])
                if c % dc or min(qe) < 0 <= min(e):
                    raise ArithmeticError("inexact GenPoly division")
                out[qe] = c // dc
            return GenPoly(out)
        de, dc = d.leading()
        rem = dict(self.terms)
        quo = {}
        while rem:
            e = max(rem)
            c = rem[e]
            qe = (e[0] - de[0], e[1] - de[1], e[2] - de[2])
            if min(qe) < 0 or c % dc:
                raise ArithmeticError("inexact GenPoly division")
            qc = c // dc
            quo[qe] = qc
            for e2, c2 in d.terms.items():
                k = (qe[0] + e2[0], qe[1] + e2[1], qe[2] + e2[2])
                v = rem.get(k, 0) - qc * c2
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return GenPoly(quo)

    def evaluate(self, t=1, y=1, z=1):
        total = 0
        for (i, j, k), c in self.terms.items():
            term = c
            if i:
                term = term * (t ** i)
            if j:
                term = term * (y ** j)
            if k:
                term = term * (z ** k)
            total = total + term
        return total

    __call__ = evaluate

    def degree(self, var: str = "t") -> int:
        k = _VARS.index(var)
        return max((e[k] for e in self.terms), default=0)

    def coefficients(self, var: str = "t") -> list:
        """Coefficient list in one variable for polynomials depending on it alone."""
        k = _VARS.index(var)
        out = [0] * (self.degree(var) + 1)
        for e, c in self.terms.items():
            if any(e[j] for j in range(3) if j != k):
                raise ValueError("polynomial depends on other variables")
            out[e[k]] += c
        return out

    def to_json(self) -> list:
        return [[list(e), str(c)] for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data) -> "GenPoly":
        return cls({tuple(e): int(c) for e, c in data})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            mono = "".join(
                name if p == 1 else f"{name}^{p}"
                for name, p in zip(_VARS, e) if p)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"GenPoly({self})"


T = GenPoly.var("t")
Y = GenPoly.var("y")
Z = GenPoly.var("z")


# --------------------------------------------------------------------------
# matrices

class SquareMatrix:
    """Dense square matrix stored row-major."""

    __slots__ = ("dim", "entries")

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix is not square")
        self.dim = n
        self.entries = [x for r in rows for x in r]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.dim + j]

    def rows(self):
        n = self.dim
        return [self.entries[i * n:(i + 1) * n] for i in range(n)]


def _rows(M):
    if isinstance(M, SquareMatrix):
        return M.rows()
    return [list(r) for r in M]


def _is_field_entry(x) -> bool:
    return isinstance(x, (mpq, ExactScalar, Fraction, int, mpz))


def _to_field(x):
    if isinstance(x, (int, mpz, Fraction)):
        return rat(x)
    return x


def det_exact(M):
    """Exact determinant.

    Field entries (rationals, ExactScalar) use Gaussian elimination;
    polynomial entries (GenPoly) use fraction-free Bareiss elimination with
    every division checked to be exact.
    """
    rows = _rows(M)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return mpq(1)
    flat = [x for r in rows for x in r]
    if all(_is_field_entry(x) for x in flat):
        return _det_field([[_to_field(x) for x in r] for r in rows])
    if all(isinstance(x, (GenPoly, int, mpz)) for x in flat):
        return _det_bareiss([[GenPoly.coerce(x) for x in r] for r in rows])
    if any(isinstance(x, LaurentPoly) for x in flat):
        return _det_expand(rows)
    raise TypeError("unsupported matrix entries")


def _det_field(a):
    n = len(a)
    sign = 1
    result = None
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return a[0][0] * 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        pk = a[k][k]
        result = pk if result is None else result * pk
        inv = 1 / pk
        rowk = a[k]
        for i in range(k + 1, n):
            f = a[i][k]
            if not f:
                continue
            f = f * inv
            ri = a[i]
            for j in range(k + 1, n):
                if rowk[j]:
                    ri[j] = ri[j] - f * rowk[j]
    return result if sign > 0 else -result


def _det_bareiss(a):
    n = len(a)
    sign = 1
    prev = GenPoly.constant(1)
    for k in range(n - 1):
        if not a[k][k]:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return GenPoly()
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def _det_expand(rows):
    """Laplace expansion with memoised minors; for small matrices over rings."""
    n = len(rows)
    cache = {}

    def minor(r, cols):
        if r == n:
            return 1
        key = (r, cols)
        if key in cache:
            return cache[key]
        total = 0
        sign = 1
        for idx, c in enumerate(cols):
            x = rows[r][c]
            if x:
                sub = minor(r + 1, cols[:idx] + cols[idx + 1:])
                total = total + (x * sub if sign > 0 else -(x * sub))
            sign = -sign
        cache[key] = total
        return total

    return minor(0, tuple(range(n)))


def pfaffian(M):
    """Pfaffian with pf([[0, a], [-a, 0]]) = a."""
    rows = _rows(M)
    n = len(rows)
    if n % 2:
        raise ValueError("pfaffian of an odd-dimensional matrix")
    for i in range(n):
        for j in range(i, n):
            s = rows[i][j] + rows[j][i]
            if s:
                raise ValueError("pfaffian of a non-antisymmetric matrix")
    if n == 0:
        return mpq(1)
    flat = [x for r in rows for x in r]
    if n > 8 and all(_is_field_entry(x) for x in flat):
        return _pf_elimination([[_to_field(x) for x in r] for r in rows])
    return _pf_expand(rows)


def _pf_expand(rows):
    cache = {}

    def pf(idx):
        if not idx:
            return 1
        if idx in cache:
            return cache[idx]
        first, rest = idx[0], idx[1:]
        total = 0
        for k, j in enumerate(rest):
            x = rows[first][j]
            if not x:
                continue
            sub = pf(rest[:k] + rest[k + 1:])
            term = x * sub
            total = total + (term if k % 2 == 0 else -term)
        cache[idx] = total
        return total

    return pf(tuple(range(len(rows))))


def _pf_elimination(a):
    """Skew Gaussian elimination (Parlett-Reid style without tridiagonal storage)."""
    n = len(a)
    result = mpq(1)
    for k in range(0, n - 1, 2):
        piv = next((j for j in range(k + 1, n) if a[k][j]), None)
        if piv is None:
            return a[0][0] * 0
        if piv != k + 1:
            # swap index piv and k+1 in rows and columns: flips the sign
            a[k + 1], a[piv] = a[piv], a[k + 1]
            for r in a:
                r[k + 1], r[piv] = r[piv], r[k + 1]
            result = -result
        p = a[k][k + 1]
        result = result * p
        inv = 1 / p
        for i in range(k + 2, n):
            f = a[k][i]
            if not f:
                continue
            f = f * inv
            # column i -= f * column k+1 ; row i -= f * row k+1
            for r in range(n):
                if a[r][k + 1]:
                    a[r][i] = a[r][i] - f * a[r][k + 1]
            rk1 = a[k + 1]
            ri = a[i]
            for c in range(n):
                if rk1[c]:
                    ri[c] = ri[c] - f * rk1[c]
    return result


def matmul(A, B):
    """Plain dense product of nested lists."""
    Bt = list(zip(*B))
    return [[sum((x * y for x, y in zip(r, c) if x and y), 0) for c in Bt] for r in A]


def transpose(A):
    return [list(r) for r in zip(*A)]


def identity(n, one=None):
    one = mpq(1) if one is None else one
    return [[one if i == j else 0 * one for j in range(n)] for i in range(n)]


# --------------------------------------------------------------------------
# exact linear solving and kernels over a field

def _common_unit(values):
    """If all non-zero values are rational multiples of one basis element
    of Q(i)[r], return (index, ext); otherwise None."""
    unit = None
    ext = None
    for v in values:
        if not isinstance(v, ExactScalar):
            v = ExactScalar.coerce(v)
        if not v:
            continue
        nz = [k for k, p in enumerate(v.parts()) if p]
        if len(nz) != 1:
            return None
        if unit is None:
            unit = nz[0]
        elif unit != nz[0]:
            return None
        if v.ext is not None:
            ext = v.ext
    return (0 if unit is None else unit), ext


def _rref(a, ncols):
    """In-place reduced row echelon form; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(a)
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        row = a[r]
        nz = [j for j in range(c, len(row)) if row[j]]
        for j in nz:
            row[j] = row[j] * inv
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                ri = a[i]
                for j in nz:
                    ri[j] = ri[j] - f * row[j]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def _sparse_nullspace(rows, ncols):
    """Kernel of a sparse rational matrix by Gauss-Jordan with Markowitz-style
    pivot choice (sparsest row, then sparsest column) to limit fill-in."""
    live = [{c: v for c, v in enumerate(r) if v} for r in rows]
    live = [r for r in live if r]
    colrows: dict[int, set] = {}
    for i, r in enumerate(live):
        for c in r:
            colrows.setdefault(c, set()).add(i)
    done: dict[int, int] = {}  # pivot column -> row index
    pending = set(range(len(live)))
    while pending:
        i = min(pending, key=lambda k: len(live[k]))
        row = live[i]
        pending.discard(i)
        if not row:
            continue
        c = min(row, key=lambda k: len(colrows[k]))
        inv = 1 / row[c]
        for k in row:
            row[k] = row[k] * inv
        for j in list(colrows[c]):
            if j == i:
                continue
            other = live[j]
            f = other[c]
            for k, v in row.items():
                new = other.get(k, 0) - f * v
                if new:
                    if k not in other:
                        colrows[k].add(j)
                    other[k] = new
                else:
                    other.pop(k, None)
                    colrows[k].discard(j)
        done[c] = i
    free = [c for c in range(ncols) if c not in done]
    basis = []
    for f in free:
        v = [mpq(0)] * ncols
        v[f] = mpq(1)
        for p, i in done.items():
            x = live[i].get(f)
            if x:
                v[p] = -x
        basis.append(v)
    return basis


def nullspace(rows, ncols=None):
    """Basis of the right kernel of a matrix (list of rows) over a field.

    Matrices whose entries are all rational multiples of a single unit of
    Q(i)[r] are reduced to rational elimination first.
    """
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    flat = [x for r in rows for x in r]
    common = _common_unit(flat)
    lift = None
    if common is not None:
        unit, ext = common
        work = []
        for r in rows:
            work.append([ExactScalar.coerce(x).parts()[unit] if isinstance(x, ExactScalar)
                         else rat(x) for x in r])
        lift = lambda v: ExactScalar.coerce(v)  # noqa: E731
    else:
        work = [[ExactScalar.coerce(x) for x in r] for r in rows]
    if lift is not None:
        return [[lift(x) for x in v] for v in _sparse_nullspace(work, ncols)]
    pivots = _rref(work, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = -work[i][f]
        if lift is not None:
            v = [lift(x) for x in v]
        else:
            v = [ExactScalar.coerce(x) for x in v]
        basis.append(v)
    return basis


def solve(rows, rhs):
    """Solve A x = b for square non-singular A over a field."""
    n = len(rows)
    aug = [[ExactScalar.coerce(x) for x in r] + [ExactScalar.coerce(b)] for r, b in zip(rows, rhs)]
    pivots = _rref(aug, n)
    if len(pivots) != n:
        raise ZeroDivisionError("singular system")
    return [aug[i][n] for i in range(n)]


# --------------------------------------------------------------------------
# interpolation

def interpolate(points: Iterable) -> list:
    """Lagrange interpolation through (x, y) rational pairs.

    Returns coefficient list (lowest degree first) of the unique polynomial
    of degree < len(points), trailing zeros removed (at least one entry).
    """
    pts = [(rat(x), rat(y)) for x, y in points]
    n = len(pts)
    coeffs = [mpq(0)] * n
    for i, (xi, yi) in enumerate(pts):
        basis = [mpq(1)]
        denom = mpq(1)
        for j, (xj, _) in enumerate(pts):
            if j == i:
                continue
            basis = [mpq(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            denom *= xi - xj
        f = yi / denom
        for k in range(n):
            coeffs[k] += f * basis[k]
    while len(coeffs) > 1 and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def eval_poly(coeffs, x):
    total = 0
    for c in reversed(coeffs):
        total = total * x + c
    return total


def binom(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return int(gmpy2.comb(n, k))


def product(values, start=None):
    acc = start
    for v in values:
        acc = v if acc is None else acc * v
    return mpq(1) if acc is None else acc


__all__ = [
    "ExactScalar", "GenPoly", "LaurentPoly", "SquareMatrix", "I", "ONE", "ZERO", "T", "Y", "Z",
    "bracket", "bracket_poly", "binom", "det_exact", "eval_poly", "identity", "interpolate",
    "laurent_derivative", "matmul", "max_denominator", "random_rational", "nullspace", "pfaffian", "product", "rat", "scalar", "solve",
    "transpose",
]

