"""Monodromy and transfer matrices of the ten- and nineteen-vertex models on
(C^3)^N, the spin-one Hamiltonian built two independent ways, symmetry
operators and floating-point sector spectra.

Spin-one basis digits: 0 = (+), 1 = (0), 2 = (-).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .exact import ExactScalar, LaurentPoly, rat, scalar, solve
from .ops import Operator, apply_local, digits, encode, vec_add, vec_scale, vec_sub
from .vertex import (ConsistencyError, ModelParams, br, r12_table, r22_table, u_inverse,
                     u_matrix)

I = ExactScalar.i()


class Twist(enum.Enum):
    DIAGONAL = "d"
    ANTIDIAGONAL = "ad"

    @classmethod
    def parse(cls, value) -> "Twist":
        if isinstance(value, Twist):
            return value
        v = str(value).lower().replace("-", "").replace("_", "")
        if v in ("d", "diag", "diagonal"):
            return cls.DIAGONAL
        if v in ("ad", "antidiag", "antidiagonal"):
            return cls.ANTIDIAGONAL
        raise ValueError(f"unknown twist {value!r}")


def omega1(twist: Twist) -> Operator:
    twist = Twist.parse(twist)
    if twist is Twist.DIAGONAL:
        rows = [[I, 0], [0, -I]]
    else:
        rows = [[0, I], [I, 0]]
    return Operator.from_dense(rows, (2,))


def omega2_table(twist: Twist) -> Operator:
    twist = Twist.parse(twist)
    if twist is Twist.DIAGONAL:
        rows = [[-1, 0, 0], [0, 1, 0], [0, 0, -1]]
    else:
        rows = [[0, 0, -1], [0, -1, 0], [-1, 0, 0]]
    return Operator.from_dense(rows, (3,))


def omega2(twist: Twist, params: ModelParams) -> Operator:
    """Q U (Omega1 x Omega1) U^-1 Q^t, compared with the explicit table."""
    from .ops import kron
    o = omega1(twist)
    full = u_matrix(params) @ kron(o, o) @ u_inverse(params)
    data = {r: {c: v for c, v in row.items() if c < 3} for r, row in full.data.items() if r < 3}
    fused = Operator((3,), data)
    if not (fused == omega2_table(twist)):
        raise ConsistencyError("fused twist matrix disagrees with its table")
    return fused


@dataclass(frozen=True)
class Inhom:
    """Inhomogeneities w_1..w_N (all invertible)."""

    w: tuple

    def __init__(self, w):
        ws = tuple(scalar(x) for x in w)
        if any(not x for x in ws):
            raise ValueError("inhomogeneities must be invertible")
        object.__setattr__(self, "w", ws)

    @classmethod
    def homogeneous(cls, n: int) -> "Inhom":
        return cls([1] * n)

    @property
    def n(self) -> int:
        return len(self.w)

    def distinct(self) -> bool:
        return len({(x.a, x.b, x.c, x.d) for x in self.w}) == len(self.w)

    def inverted(self) -> "Inhom":
        return Inhom([1 / x for x in self.w])


def chain_dims(n: int) -> tuple:
    return (3,) * n


def a_func(z, params: ModelParams, inhom: Inhom):
    q = params.q
    out = scalar(1)
    for w in inhom.w:
        out = out * br(q * z / w)
    return out


def d_func(z, params: ModelParams, inhom: Inhom):
    q = params.q
    out = scalar(1)
    for w in inhom.w:
        out = out * br(z / (q * w))
    return out


# --------------------------------------------------------------------------
# monodromy action on vectors

def _local_rs(level: int, z, params: ModelParams, inhom: Inhom):
    q = params.q
    if level == 1:
        return [r12_table(z / (q * w), params) for w in inhom.w]
    return [r22_table(z / w, params) for w in inhom.w]


def _propagate(rs, aux_dim: int, n: int, aux_in: int, vec: dict) -> dict:
    """Apply R_{aN} ... R_{a1} to |aux_in> x vec; returns {aux_out: chain vector}."""
    dims = (aux_dim,) + chain_dims(n)
    size = 3 ** n
    full = {aux_in * size + k: v for k, v in vec.items()}
    for j, r in enumerate(rs):
        full = apply_local(r, (0, j + 1), dims, full)
    out: dict[int, dict] = {}
    for idx, v in full.items():
        a, k = divmod(idx, size)
        out.setdefault(a, {})[k] = v
    return out


_BLOCK = {"A": (0, 0), "B": (0, 1), "C": (1, 0), "D": (1, 1)}


def apply_block(name: str, z, params: ModelParams, inhom: Inhom, vec: dict) -> dict:
    """Monodromy block (A, B, C or D) at spectral parameter z applied to a vector."""
    row, col = _BLOCK[name]
    rs = _local_rs(1, scalar(z), params, inhom)
    return _propagate(rs, 2, inhom.n, col, vec).get(row, {})


def apply_block_left(name: str, z, params: ModelParams, inhom: Inhom, covec: dict) -> dict:
    """Covector times a monodromy block (uses transposed local R-matrices in reverse)."""
    row, col = _BLOCK[name]
    rs = [r.transpose() for r in _local_rs(1, scalar(z), params, inhom)]
    dims = (2,) + chain_dims(inhom.n)
    size = 3 ** inhom.n
    full = {row * size + k: v for k, v in covec.items()}
    for j in range(inhom.n - 1, -1, -1):
        full = apply_local(rs[j], (0, j + 1), dims, full)
    return {idx - col * size: v for idx, v in full.items() if idx // size == col}


def _operator_from_columns(n: int, column) -> Operator:
    size = 3 ** n
    data: dict = {}
    for c in range(size):
        for r, v in column(c).items():
            data.setdefault(r, {})[c] = v
    return Operator(chain_dims(n), data)


def monodromy_blocks(z, params: ModelParams, inhom: Inhom):
    """The four 3^N x 3^N blocks (A, B, C, D) of R_{aN}(z/qw_N) ... R_{a1}(z/qw_1)."""
    rs = _local_rs(1, scalar(z) if not isinstance(z, LaurentPoly) else z, params, inhom)
    n = inhom.n
    size = 3 ** n
    cols = {0: {}, 1: {}}
    one = scalar(1)
    for aux_in in (0, 1):
        for c in range(size):
            cols[aux_in][c] = _propagate(rs, 2, n, aux_in, {c: one})
    blocks = []
    for name in "ABCD":
        row, col = _BLOCK[name]
        blocks.append(_operator_from_columns(n, lambda c: cols[col][c].get(row, {})))
    return tuple(blocks)


# --------------------------------------------------------------------------
# transfer matrices

def apply_transfer(level: int, z, twist, params: ModelParams, inhom: Inhom, vec: dict) -> dict:
    """T^(level)(z) |vec> computed as the twisted trace over the auxiliary space."""
    twist = Twist.parse(twist)
    if level == 1:
        omega, aux = omega1(twist), 2
    else:
        omega, aux = omega2_table(twist), 3
    rs = _local_rs(level, z, params, inhom)
    out: dict = {}
    for a in range(aux):
        outs = _propagate(rs, aux, inhom.n, a, vec)
        for b, v in outs.items():
            w = omega.entry(a, b)
            if w:
                out = vec_add(out, vec_scale(v, w))
    return out


def apply_transfer_fused(z, twist, params: ModelParams, inhom: Inhom, vec: dict) -> dict:
    """T^(1)(z) T^(1)(qz) |vec> - a(qz) d(z) |vec>."""
    q = params.q
    z = z if isinstance(z, LaurentPoly) else scalar(z)
    t = apply_transfer(1, q * z, twist, params, inhom, vec)
    t = apply_transfer(1, z, twist, params, inhom, t)
    return vec_sub(t, vec_scale(vec, a_func(q * z, params, inhom) * d_func(z, params, inhom)))


def transfer(level: int, z, twist, params: ModelParams, inhom: Inhom, check: bool = True) -> Operator:
    """Full transfer matrix; at level 2 both the trace and the fusion route are
    computed and must agree exactly."""
    n = inhom.n
    z = scalar(z)
    one = scalar(1)
    op = _operator_from_columns(n, lambda c: apply_transfer(level, z, twist, params, inhom, {c: one}))
    if level == 2 and check:
        omega2(twist, params)
        alt = _operator_from_columns(n, lambda c: apply_transfer_fused(z, twist, params, inhom, {c: one}))
        if not (op == alt):
            raise ConsistencyError("fusion identity violated")
    return op


def check_fusion(z, twist, params: ModelParams, inhom: Inhom) -> bool:
    """Column-by-column exact check of T2(z) = T1(z)T1(qz) - a(qz)d(z)."""
    z = scalar(z)
    one = scalar(1)
    for c in range(3 ** inhom.n):
        e = {c: one}
        lhs = apply_transfer(2, z, twist, params, inhom, e)
        rhs = apply_transfer_fused(z, twist, params, inhom, e)
        if vec_sub(lhs, rhs):
            return False
    return True


def theta2(z, params: ModelParams, inhom: Inhom):
    """Special level-2 eigenvalue -prod [z/(q w)][q^2 z/w]."""
    q = params.q
    out = scalar(-1)
    for w in inhom.w:
        out = out * br(z / (q * w)) * br(q * q * z / w)
    return out


# --------------------------------------------------------------------------
# symmetry operators

def magnetization_values(n: int) -> list:
    return [sum(1 - d for d in digits(k, chain_dims(n))) for k in range(3 ** n)]


def symmetry_ops(n: int, twist=Twist.ANTIDIAGONAL, params: ModelParams | None = None):
    """(M, F, S') with S' = S Omega^(2)_N and S the cyclic shift."""
    dims = chain_dims(n)
    size = 3 ** n
    one = scalar(1)
    m = Operator.diagonal(dims, [scalar(v) for v in magnetization_values(n)])
    f = Operator(dims, {encode([2 - d for d in digits(k, dims)], dims): {k: one} for k in range(size)})
    s = Operator(dims, {})
    for k in range(size):
        ds = digits(k, dims)
        s.data[encode([ds[-1]] + ds[:-1], dims)] = {k: one}
    om = omega2_table(twist)
    om_n = Operator(dims, {})
    for k in range(size):
        ds = digits(k, dims)
        col = {}
        for r_local, row in om.data.items():
            if ds[-1] in row:
                col[encode(ds[:-1] + [r_local], dims)] = row[ds[-1]]
        for r, v in col.items():
            om_n.data.setdefault(r, {})[k] = v
    return m, f, s @ om_n


def parity_values(n: int) -> list:
    return [(-1) ** (m % 2) for m in magnetization_values(n)]


# --------------------------------------------------------------------------
# Hamiltonian from the coupling constants

def _spin_ops():
    """sqrt(2)-rescaled spin matrices t^a with s^a = t^a / sqrt(2) for a = 1, 2."""
    t1 = Operator.from_dense([[0, 1, 0], [1, 0, 1], [0, 1, 0]], (3,))
    t2 = Operator.from_dense([[0, -I, 0], [I, 0, -I], [0, I, 0]], (3,))
    t3 = Operator.from_dense([[1, 0, 0], [0, 0, 0], [0, 0, -1]], (3,))
    return {1: t1, 2: t2, 3: t3}


def couplings(x):
    x = rat(x)
    j = {1: rat(1), 2: rat(1), 3: (x * x - 2) / 2}
    a = {(1, 2): rat(1), (1, 3): x - 1, (2, 3): x - 1}
    amat = {}
    for (p, r), v in a.items():
        amat[(p, r)] = amat[(r, p)] = v
    for k in (1, 2, 3):
        amat[(k, k)] = j[k]
    return j, amat


def hamiltonian(n: int, x, twist) -> Operator:
    """Spin-one chain Hamiltonian with the given twist, exact over Q(i)."""
    from .ops import kron
    if n < 2:
        raise ValueError("N >= 2 required")
    twist = Twist.parse(twist)
    j, amat = couplings(x)
    t = _spin_ops()
    om = omega2_table(twist)
    weight = {1: rat("1/2"), 2: rat("1/2"), 3: rat(1)}  # (1/sqrt2)^2 per rescaled factor
    eye = Operator.identity((3,))
    # bond operator on two sites (site, next site); the boundary bond twists the second factor
    def bond(twisted: bool) -> Operator:
        def nxt(op):
            return om @ op @ om if twisted else op
        h = Operator((3, 3), {})
        for a in (1, 2, 3):
            term = kron(t[a], nxt(t[a])).scale(weight[a])
            term = term + kron(t[a] @ t[a], eye).scale(2 * weight[a])
            h = h + term.scale(j[a])
        for a in (1, 2, 3):
            for b in (1, 2, 3):
                c = amat[(a, b)] * weight[a] * weight[b]
                h = h - kron(t[a] @ t[b], nxt(t[a] @ t[b])).scale(c)
        return h
    dims = chain_dims(n)
    size = 3 ** n
    bulk, edge = bond(False), bond(True)
    one = scalar(1)
    data: dict = {}
    for c in range(size):
        col: dict = {}
        for site in range(n):
            if site < n - 1:
                col = vec_add(col, apply_local(bulk, (site, site + 1), dims, {c: one}))
            else:
                col = vec_add(col, apply_local(edge, (n - 1, 0), dims, {c: one}))
        for r, v in col.items():
            data.setdefault(r, {})[c] = v
    return Operator(dims, data)


# --------------------------------------------------------------------------
# Hamiltonian from the homogeneous transfer matrix

def transfer_laurent(twist, params: ModelParams, n: int) -> Operator:
    """Homogeneous T^(2)(z) with Laurent-polynomial entries in z."""
    z = LaurentPoly.var()
    one = scalar(1)
    rs = [r22_table(z, params) for _ in range(n)]
    om = omega2_table(twist)
    data: dict = {}
    for c in range(3 ** n):
        col: dict = {}
        for a in range(3):
            outs = _propagate(rs, 3, n, a, {c: one})
            for b, v in outs.items():
                w = om.entry(a, b)
                if w:
                    for k, val in v.items():
                        col[k] = col[k] + val * w if k in col else val * w
        for r, v in col.items():
            if v:
                data.setdefault(r, {})[c] = v
    return Operator(chain_dims(n), data)


def hamiltonian_from_transfer(n: int, params: ModelParams, twist) -> Operator:
    """N + ([q^2]/2) T2(1)^-1 T2'(1) at the homogeneous point."""
    from .exact import laurent_derivative
    t = transfer_laurent(twist, params, n)
    one = scalar(1)
    def value(p):
        return scalar(p(one)) if isinstance(p, LaurentPoly) else scalar(p)

    def slope(p):
        return scalar(laurent_derivative(p)(one)) if isinstance(p, LaurentPoly) else scalar(0)

    t0 = t.map_entries(value)
    t1 = t.map_entries(slope)
    size = 3 ** n
    t0_dense = t0.dense(scalar(0))
    if not all(any(x for x in row) for row in t0_dense):
        raise ZeroDivisionError("T2(1) is singular")
    # solve T0 X = T1 column by column
    cols = t1.transpose()
    data: dict = {}
    factor = br(params.q ** 2) / 2
    for c in range(size):
        rhs = [cols.data.get(c, {}).get(k, scalar(0)) for k in range(size)]
        x = solve(t0_dense, rhs)
        for r, v in enumerate(x):
            v = v * factor
            if r == c:
                v = v + n
            if v:
                data.setdefault(r, {})[c] = v
    for c in range(size):
        if c not in data.get(c, {}):
            data.setdefault(c, {})[c] = scalar(n)
    return Operator(chain_dims(n), data)


# --------------------------------------------------------------------------
# floating-point spectra

def to_numpy(op: Operator) -> np.ndarray:
    n = op.size
    m = np.zeros((n, n), dtype=complex)
    for r, row in op.data.items():
        for c, v in row.items():
            m[r, c] = scalar(v).to_complex()
    return m


def _sector_bases(n: int, twist: Twist):
    """Orthonormal bases (columns) of the two Z2 sectors used in the probe."""
    size = 3 ** n
    dims = chain_dims(n)
    if twist is Twist.ANTIDIAGONAL:
        par = parity_values(n)
        out = {}
        for sign in (1, -1):
            idx = [k for k in range(size) if par[k] == sign]
            b = np.zeros((size, len(idx)))
            for col, k in enumerate(idx):
                b[k, col] = 1.0
            out[sign] = b
        return out, "(-1)^M"
    flip = [encode([2 - d for d in digits(k, dims)], dims) for k in range(size)]
    plus, minus = [], []
    for k in range(size):
        f = flip[k]
        if f < k:
            continue
        v = np.zeros(size)
        if f == k:
            v[k] = 1.0
            plus.append(v)
            continue
        v[k] = v[f] = 2 ** -0.5
        plus.append(v)
        w = np.zeros(size)
        w[k], w[f] = 2 ** -0.5, -(2 ** -0.5)
        minus.append(w)
    return {1: np.array(plus).T, -1: np.array(minus).T}, "F"


def _zero_sector_basis(n: int, twist: Twist):
    """Basis of the symmetry sector that contains the zero-energy state."""
    size = 3 ** n
    dims = chain_dims(n)
    mags = magnetization_values(n)
    flip = [encode([2 - d for d in digits(k, dims)], dims) for k in range(size)]
    if twist is Twist.DIAGONAL:
        keep = [k for k in range(size) if mags[k] == 0]
        sign_f = 1
    else:
        keep = [k for k in range(size) if (mags[k] - n) % 2 == 0]
        sign_f = (-1) ** n
    vecs = []
    seen = set()
    for k in keep:
        if k in seen:
            continue
        f = flip[k]
        seen.update((k, f))
        v = np.zeros(size)
        if f == k:
            if sign_f == 1:
                v[k] = 1.0
                vecs.append(v)
            continue
        v[k] = 2 ** -0.5
        v[f] = sign_f * 2 ** -0.5
        vecs.append(v)
    return np.array(vecs).T


@dataclass
class SectorReport:
    label: str
    eigenvalues: list
    zero_degeneracy: int
    min_eigenvalue: float


@dataclass
class SpectrumReport:
    n: int
    x: float
    twist: str
    sectors: list
    nonzero_parts_coincide: bool
    zero_degeneracy: int
    special_sector_zero_degeneracy: int
    min_eigenvalue: float
    tolerance: float

    def to_dict(self) -> dict:
        return {
            "approximate": True,
            "N": self.n,
            "x": self.x,
            "twist": self.twist,
            "tolerance": self.tolerance,
            "sectors": [
                {"sector": s.label, "eigenvalues": s.eigenvalues,
                 "zero_degeneracy": s.zero_degeneracy, "min_eigenvalue": s.min_eigenvalue}
                for s in self.sectors
            ],
            "nonzero_parts_coincide": self.nonzero_parts_coincide,
            "zero_degeneracy": self.zero_degeneracy,
            "special_sector_zero_degeneracy": self.special_sector_zero_degeneracy,
            "min_eigenvalue": self.min_eigenvalue,
        }


def float_hamiltonian(n: int, x: float, twist) -> np.ndarray:
    """Real symmetric Hamiltonian matrix; exact construction at the rational nearest x."""
    from fractions import Fraction
    xq = Fraction(x).limit_denominator(10 ** 12) if isinstance(x, float) else x
    h = to_numpy(hamiltonian(n, xq, twist))
    return h.real


def spectrum_probe(n: int, x, twist, rel_tol: float = 1e-9, zero_tol: float = 1e-7) -> SpectrumReport:
    """Sector-resolved eigenvalues of H; degeneracy threshold relative to the spectral diameter."""
    if n > 8:
        raise ValueError("spectrum probe is limited to N <= 8")
    twist = Twist.parse(twist)
    h = float_hamiltonian(n, x, twist)
    full = np.linalg.eigvalsh(h)
    diameter = max(1.0, float(full.max() - full.min()))
    ztol = zero_tol * diameter
    bases, label = _sector_bases(n, twist)
    sectors = []
    nonzero = {}
    for sign in (1, -1):
        b = bases[sign]
        ev = np.sort(np.linalg.eigvalsh(b.T @ h @ b))
        zeros = int(np.sum(np.abs(ev) <= ztol))
        sectors.append(SectorReport(f"{label}={'+1' if sign > 0 else '-1'}", [float(v) for v in ev],
                                    zeros, float(ev[0]) if len(ev) else float("nan")))
        nonzero[sign] = ev[np.abs(ev) > ztol]
    a, b = nonzero[1], nonzero[-1]
    coincide = len(a) == len(b) and bool(np.all(np.abs(a - b) <= rel_tol * np.maximum(1.0, np.abs(a))))
    zb = _zero_sector_basis(n, twist)
    zev = np.linalg.eigvalsh(zb.T @ h @ zb)
    special = int(np.sum(np.abs(zev) <= ztol))
    return SpectrumReport(n, float(x), twist.value, sectors, coincide, int(np.sum(np.abs(full) <= ztol)),
                          special, float(full[0]), rel_tol)


__all__ = [
    "Inhom", "SpectrumReport", "Twist", "a_func", "apply_block", "apply_block_left",
    "apply_transfer", "apply_transfer_fused", "check_fusion", "couplings", "d_func",
    "float_hamiltonian", "hamiltonian", "hamiltonian_from_transfer", "magnetization_values",
    "monodromy_blocks", "omega1", "omega2", "omega2_table", "parity_values", "spectrum_probe",
    "symmetry_ops", "theta2", "transfer", "transfer_laurent",
]
