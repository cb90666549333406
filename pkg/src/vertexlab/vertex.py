"""R-matrices of the six-, ten- and nineteen-vertex models, the fusion
procedure that produces them, boundary vectors and the local relations.

Basis orderings:

* spin 1/2:  up, down
* spin 1:    (+), (0), (-)  written U, 0, D below
* (1,2):     uU, u0, uD, dU, d0, dD
* (2,2):     UU, U0, UD, 0U, 00, 0D, DU, D0, DD
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from gmpy2 import mpq

from .exact import ExactScalar, LaurentPoly, rat, scalar
from .ops import Operator, apply_local, embed, kron, permutation, vec_equal, vec_scale


class ConsistencyError(AssertionError):
    """Two independent constructions of the same object disagree."""


@dataclass(frozen=True)
class ModelParams:
    """Rational anisotropy q (or its square root s with q = s^2)."""

    q: mpq
    s: Optional[mpq] = None
    ext: mpq = field(init=False)

    def __post_init__(self):
        q = rat(self.q)
        if self.s is not None:
            s = rat(self.s)
            object.__setattr__(self, "s", s)
            if q != s * s:
                raise ValueError("q must equal s^2")
        object.__setattr__(self, "q", q)
        if q == 0 or q ** 4 == 1:
            raise ValueError("q must avoid 0 and fourth roots of unity")
        object.__setattr__(self, "ext", (q - 1 / q) * (q * q - 1 / (q * q)))

    @classmethod
    def from_s(cls, s) -> "ModelParams":
        s = rat(s)
        return cls(s * s, s)

    @property
    def x(self) -> mpq:
        return self.q + 1 / self.q

    @property
    def qs(self) -> ExactScalar:
        return scalar(self.q)

    @property
    def r(self) -> ExactScalar:
        """sqrt([q][q^2]), the ten-vertex weight."""
        return ExactScalar.root(self.ext)

    @property
    def alpha(self) -> ExactScalar:
        """(1/2) sqrt([q^2]/[q]) = r / (2[q])."""
        return self.r / (2 * br(self.q))

    @property
    def alpha_prime(self) -> ExactScalar:
        """sqrt([q]/[q^2]) = r / [q^2]."""
        return self.r / br(self.q ** 2)

    def inverted(self) -> "ModelParams":
        return ModelParams(1 / self.q, None if self.s is None else 1 / self.s)

    def require_half(self) -> mpq:
        if self.s is None:
            raise ValueError("half-parameter required")
        return self.s


def br(x):
    """Bracket [x] = x - 1/x for scalars or Laurent monomials."""
    if isinstance(x, LaurentPoly):
        if len(x.coeffs) != 1:
            raise ValueError("bracket of a non-monomial Laurent polynomial")
        c = scalar(x.coeffs[0])
        return x - LaurentPoly.monomial(c.inverse(), -x.low)
    x = scalar(x)
    if not x:
        raise ZeroDivisionError("bracket of non-unit")
    return x - x.inverse()


def _arg(z):
    return z if isinstance(z, LaurentPoly) else scalar(z)


# --------------------------------------------------------------------------
# closed-form tables

def r11(z, params: ModelParams) -> Operator:
    """Six-vertex R-matrix with weights [qz], [z], [q]."""
    z = _arg(z)
    q = params.q
    a, b, c = br(q * z), br(z), br(q)
    rows = [[a, 0, 0, 0], [0, b, c, 0], [0, c, b, 0], [0, 0, 0, a]]
    return Operator.from_dense(rows, (2, 2))


def r12_table(z, params: ModelParams) -> Operator:
    """Ten-vertex R-matrix on C^2 x C^3."""
    z = _arg(z)
    q = params.q
    r = params.r
    rows = [[0] * 6 for _ in range(6)]
    rows[0][0] = br(q * q * z)
    rows[1][1] = br(q * z)
    rows[1][3] = r
    rows[2][2] = br(z)
    rows[2][4] = r
    rows[3][1] = r
    rows[3][3] = br(z)
    rows[4][2] = r
    rows[4][4] = br(q * z)
    rows[5][5] = br(q * q * z)
    return Operator.from_dense(rows, (2, 3))


def r22_weights(z, params: ModelParams) -> dict:
    z = _arg(z)
    q = params.q
    return {
        1: br(q * z) * br(q * q * z),
        2: br(z) * br(q * z),
        3: br(q * q) * br(q * z),
        4: br(z / q) * br(z),
        5: br(q * q) * br(z),
        6: br(q) * br(q * q),
        7: br(z) * br(q * z) + br(q) * br(q * q),
    }


_R22_PATTERN = {
    1: [(0, 0), (8, 8)],
    2: [(1, 1), (3, 3), (5, 5), (7, 7)],
    3: [(1, 3), (3, 1), (5, 7), (7, 5)],
    4: [(2, 2), (6, 6)],
    5: [(2, 4), (4, 2), (4, 6), (6, 4)],
    6: [(2, 6), (6, 2)],
    7: [(4, 4)],
}


def r22_table(z, params: ModelParams) -> Operator:
    """Nineteen-vertex R-matrix on C^3 x C^3."""
    p = r22_weights(z, params)
    rows = [[0] * 9 for _ in range(9)]
    for k, cells in _R22_PATTERN.items():
        for i, j in cells:
            rows[i][j] = p[k]
    return Operator.from_dense(rows, (3, 3))


# --------------------------------------------------------------------------
# constant matrices

def swap(d1: int, d2: int) -> Operator:
    return permutation((d1, d2), (1, 0))


def projector_sym() -> Operator:
    h = mpq(1, 2)
    return Operator.from_dense([[1, 0, 0, 0], [0, h, h, 0], [0, h, h, 0], [0, 0, 0, 1]], (2, 2))


def projector_antisym() -> Operator:
    h = mpq(1, 2)
    return Operator.from_dense([[0, 0, 0, 0], [0, h, -h, 0], [0, -h, h, 0], [0, 0, 0, 0]], (2, 2))


def u_matrix(params: ModelParams) -> Operator:
    a = params.alpha
    return Operator.from_dense([[1, 0, 0, 0], [0, a, a, 0], [0, 0, 0, 1], [0, a, -a, 0]], (2, 2))


def u_inverse(params: ModelParams) -> Operator:
    a = params.alpha
    h = 1 / (2 * a)
    return Operator.from_dense([[1, 0, 0, 0], [0, h, 0, h], [0, h, 0, -h], [0, 0, 1, 0]], (2, 2))


def v_matrix(params: ModelParams) -> Operator:
    a = params.alpha_prime
    return Operator.from_dense([[1, 0, 0, 0], [0, a, a, 0], [0, 0, 0, 1], [0, a, -a, 0]], (2, 2))


def v_inverse(params: ModelParams) -> Operator:
    a = params.alpha_prime
    h = 1 / (2 * a)
    return Operator.from_dense([[1, 0, 0, 0], [0, h, 0, h], [0, h, 0, -h], [0, 0, 1, 0]], (2, 2))


def q_proj() -> Operator:
    """3x4 projection onto the triplet, stored as a map C^2 x C^2 -> C^3."""
    one = scalar(1)
    op = Operator((3,), {0: {0: one}, 1: {1: one}, 2: {2: one}})
    return op


def _project(op: Operator, in_dims, keep_in: dict, out_dims) -> Operator:
    """Restrict an operator to the given basis subset (index maps old -> new)."""
    data = {}
    for r, row in op.data.items():
        if r not in keep_in:
            continue
        nr = keep_in[r]
        out = {}
        for c, v in row.items():
            if c in keep_in:
                out[keep_in[c]] = v
        if out:
            data[nr] = out
    return Operator(out_dims, data)


def sigma(k: int) -> Operator:
    i = ExactScalar.i()
    if k == 1:
        rows = [[0, 1], [1, 0]]
    elif k == 2:
        rows = [[0, -i], [i, 0]]
    elif k == 3:
        rows = [[1, 0], [0, -1]]
    else:
        raise ValueError("sigma index must be 1, 2 or 3")
    return Operator.from_dense(rows, (2,))


def _verify_u(params):
    u, ui = u_matrix(params), u_inverse(params)
    if not (u @ ui == Operator.identity((2, 2))):
        raise ConsistencyError("U U^-1 != 1")
    v, vi = v_matrix(params), v_inverse(params)
    if not (v @ vi == Operator.identity((2, 2))):
        raise ConsistencyError("V V^-1 != 1")
    if not (v == ui.transpose()):
        raise ConsistencyError("V != (U^-1)^t")


# --------------------------------------------------------------------------
# fusion

def _triplet_map(dims, fused_positions):
    """Old-index -> new-index map keeping the first three states of the
    fused pair (positions must be adjacent, spin-1/2 factors)."""
    p0, p1 = fused_positions
    assert p1 == p0 + 1
    new_dims = list(dims[:p0]) + [3] + list(dims[p1 + 1:])
    keep = {}
    from .ops import digits, encode
    for idx in range(_prod(dims)):
        ds = digits(idx, dims)
        pair = ds[p0] * 2 + ds[p1]
        if pair == 3:
            continue
        nds = ds[:p0] + [pair] + ds[p1 + 1:]
        keep[idx] = encode(nds, new_dims)
    return keep, tuple(new_dims)


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def r12_fused(z, params: ModelParams) -> Operator:
    """[qz] R^(1,2)_{1(23)}(z) = U23 R12(z) R13(qz) P+23 U23^-1, projected."""
    dims = (2, 2, 2)
    q = params.q
    m = (embed(u_matrix(params), (1, 2), dims)
         @ embed(r11(z, params), (0, 1), dims)
         @ embed(r11(q * z, params), (0, 2), dims)
         @ embed(projector_sym(), (1, 2), dims)
         @ embed(u_inverse(params), (1, 2), dims))
    keep, nd = _triplet_map(dims, (1, 2))
    return _project(m, dims, keep, nd).scale(br(q * z).inverse())


def r22_fused(z, params: ModelParams) -> Operator:
    """R^(2,2)_{(12)3}(z) = U12 R^(1,2)_{23}(z/q) R^(1,2)_{13}(z) P+12 U12^-1, projected.

    The product already carries the tabulated normalisation; no scalar
    prefactor is divided out.
    """
    dims = (2, 2, 3)
    q = params.q
    m = (embed(u_matrix(params), (0, 1), dims)
         @ embed(r12_table(z / q, params), (1, 2), dims)
         @ embed(r12_table(z, params), (0, 2), dims)
         @ embed(projector_sym(), (0, 1), dims)
         @ embed(u_inverse(params), (0, 1), dims))
    keep, nd = _triplet_map(dims, (0, 1))
    return _project(m, dims, keep, nd)


def r21(z, params: ModelParams) -> Operator:
    """R^(2,1)(z) on C^3 x C^2: the fused space carries parameters (u, u/q)."""
    dims = (2, 2, 2)
    q = params.q
    m = (embed(u_matrix(params), (0, 1), dims)
         @ embed(r11(z / q, params), (1, 2), dims)
         @ embed(r11(z, params), (0, 2), dims)
         @ embed(projector_sym(), (0, 1), dims)
         @ embed(u_inverse(params), (0, 1), dims))
    keep, nd = _triplet_map(dims, (0, 1))
    return _project(m, dims, keep, nd).scale(br(z).inverse())


def build_r(kind, z, params: ModelParams, check: bool = True) -> Operator:
    """R-matrix of the given kind ((1,1), (1,2), (2,1) or (2,2)) at spectral parameter z.

    For (1,2) and (2,2) the closed-form table is compared entrywise with the
    fusion construction unless ``check`` is False.
    """
    kind = tuple(kind)
    z = scalar(z)
    if not z:
        raise ZeroDivisionError("spectral parameter must be invertible")
    if kind == (1, 1):
        return r11(z, params)
    if kind == (1, 2):
        table = r12_table(z, params)
        if check:
            _verify_u(params)
            if not (table == r12_fused(z, params)):
                raise ConsistencyError("fused and tabulated R^(1,2) differ")
        return table
    if kind == (2, 1):
        return r21(z, params)
    if kind == (2, 2):
        table = r22_table(z, params)
        if check and not (table == r22_fused(z, params)):
            raise ConsistencyError("fused and tabulated R^(2,2) differ")
        return table
    raise ValueError(f"unknown R-matrix kind {kind}")


def r_check(z, params: ModelParams, spin: int = 2) -> Operator:
    """Braid-form R-matrix P R(z)."""
    d = 2 if spin == 1 else 3
    r = r11(z, params) if spin == 1 else r22_table(z, params)
    return swap(d, d) @ r


# --------------------------------------------------------------------------
# local relations

def check_yang_baxter(m, n, p, z, w, params: ModelParams) -> bool:
    """R12^(m,n)(z/w) R13^(m,p)(z) R23^(n,p)(w) == R23 R13 R12, exactly."""
    z, w = scalar(z), scalar(w)
    dims = (m + 1, n + 1, p + 1)
    r12 = embed(build_r((m, n), z / w, params, check=False), (0, 1), dims)
    r13 = embed(build_r((m, p), z, params, check=False), (0, 2), dims)
    r23 = embed(build_r((n, p), w, params, check=False), (1, 2), dims)
    return (r12 @ r13 @ r23) == (r23 @ r13 @ r12)


def partial_transpose(op: Operator, position: int) -> Operator:
    from .ops import digits, encode
    dims = op.dims
    data = {}
    for r, row in op.data.items():
        rd = digits(r, dims)
        for c, v in row.items():
            cd = digits(c, dims)
            rd2, cd2 = list(rd), list(cd)
            rd2[position], cd2[position] = cd[position], rd[position]
            data.setdefault(encode(rd2, dims), {})[encode(cd2, dims)] = v
    return Operator(dims, data)


def check_inversion_crossing(params: ModelParams, z) -> bool:
    """Inversion relation of R^(1,1) and crossing symmetry of R^(1,2)."""
    z = scalar(z)
    q = params.q
    lhs = r11(z, params) @ r11(1 / z, params)
    rhs = Operator.identity((2, 2)).scale(br(q * z) * br(q / z))
    if not (lhs == rhs):
        return False
    s2 = embed(sigma(2), (0,), (2, 3))
    left = partial_transpose(r12_table(z, params), 1)
    right = -(s2 @ r12_table(1 / (q * q * z), params) @ s2)
    return left == right


def check_inversion_r22(params: ModelParams, z) -> bool:
    z = scalar(z)
    q = params.q
    lhs = r_check(1 / z, params) @ r_check(z, params)
    c = br(q / z) * br(q * q / z) * br(q * z) * br(q * q * z)
    return lhs == Operator.identity((3, 3)).scale(c)


def check_q_inversion(params: ModelParams, z) -> bool:
    """R^(1,2)(z) at q -> 1/q equals -(sigma3 x 1) R^(1,2)(1/z) (sigma3 x 1)."""
    z = scalar(z)
    s3 = embed(sigma(3), (0,), (2, 3))
    lhs = r12_table(z, params.inverted())
    rhs = -(s3 @ r12_table(1 / z, params) @ s3)
    return lhs == rhs


def check_highest_weight_covector(params: ModelParams, z) -> bool:
    """<UU| Rcheck(z) = [qz][q^2 z] <UU|."""
    z = scalar(z)
    q = params.q
    row = r_check(z, params).transpose().apply({0: scalar(1)})
    return vec_equal(row, {0: br(q * z) * br(q * q * z)})


# --------------------------------------------------------------------------
# boundary vectors

def boundary_vector(model: int, z, b, params: ModelParams) -> dict:
    """Two-site boundary vector chi^(model)(z) as a sparse vector."""
    z, b = scalar(z), scalar(b)
    q = params.q
    if model == 1:
        s = params.require_half()
        return {k: v for k, v in {1: br(s * z * b), 2: br(s * z / b)}.items() if v}
    if model == 2:
        comps = {2: br(b * z) * br(b * q * z),
                 4: br(q * z / b) * br(b * q * z),
                 6: br(z / b) * br(q * z / b)}
        return {k: v for k, v in comps.items() if v}
    raise ValueError("model must be 1 or 2")


def homogeneous_boundary_vector(b, params: ModelParams) -> dict:
    """chi at z = 1 written with the signs folded in."""
    b = scalar(b)
    q = params.q
    comps = {2: br(b) * br(b * q), 4: -(br(b * q) * br(b / q)), 6: br(b) * br(b / q)}
    return {k: v for k, v in comps.items() if v}


def fused_boundary_vector(z, b, params: ModelParams) -> dict:
    """chi^(2)(z) from two six-vertex boundary vectors."""
    s = params.require_half()
    z = scalar(z)
    dims = (2, 2, 2, 2)
    v = _tensor(boundary_vector(1, s * z, b, params), boundary_vector(1, z / s, b, params), 4)
    v = apply_local(r_check(z * z, params, spin=1), (1, 2), dims, v)
    v = apply_local(projector_sym(), (2, 3), dims, v)
    v = apply_local(projector_sym(), (0, 1), dims, v)
    v = apply_local(u_matrix(params), (2, 3), dims, v)
    v = apply_local(v_matrix(params), (0, 1), dims, v)
    inv = br(z * z).inverse()
    out = {}
    for idx, val in v.items():
        a, c = divmod(idx, 4)
        if a == 3 or c == 3:
            continue
        out[a * 3 + c] = val * inv
    return out


def _tensor(u: dict, v: dict, dim_v: int) -> dict:
    return {i * dim_v + j: x * y for i, x in u.items() for j, y in v.items()}


def check_boundary_ybe_and_fish(model: int, z, w, b, params: ModelParams) -> bool:
    """Boundary Yang-Baxter and fish equations, plus (model 2) the fused
    construction of chi^(2) and the projector-absorption identities."""
    z, w = scalar(z), scalar(w)
    q = params.q
    spin = 1 if model == 1 else 2
    d = 2 if model == 1 else 3
    dims = (d,) * 4
    chi = lambda u: boundary_vector(model, u, b, params)  # noqa: E731
    lhs = apply_local(r_check(z * w, params, spin), (1, 2), dims, _tensor(chi(w), chi(z), d * d))
    lhs = apply_local(r_check(z / w, params, spin), (0, 1), dims, lhs)
    rhs = apply_local(r_check(z * w, params, spin), (1, 2), dims, _tensor(chi(z), chi(w), d * d))
    rhs = apply_local(r_check(z / w, params, spin), (2, 3), dims, rhs)
    if not vec_equal(lhs, rhs):
        return False
    fish = r_check(1 / (z * z), params, spin).apply(chi(z))
    factor = br(q * z * z) if model == 1 else br(q * z * z) * br(q * q * z * z)
    if not vec_equal(fish, vec_scale(chi(1 / z), factor)):
        return False
    if model == 2 and params.s is not None:
        if not vec_equal(fused_boundary_vector(z, b, params), chi(z)):
            return False
        if not check_projector_absorption(z, w, b, params):
            return False
    return True


def check_projector_absorption(z, w, b, params: ModelParams) -> bool:
    """The three projector identities used to strip P+ from the U-turn lattice.

    (1) P+ X P+ = X P+ for a row crossing a (qw, w) strand pair,
    (2) P+ Y P+ = P+ Y for a row crossing a (w, qw) strand pair,
    (3) on the boundary pair chi^(1)(z q^1/2) x chi^(1)(z q^-1/2) crossed by
        Rcheck(z^2), a P+ on the left pair is redundant once the right pair
        carries one.
    """
    z, w = scalar(z), scalar(w)
    q = params.q
    dims = (2, 2, 2)
    pp = embed(projector_sym(), (1, 2), dims)
    x = embed(r11(z / (q * w), params), (0, 1), dims) @ embed(r11(z / w, params), (0, 2), dims)
    if not (pp @ x @ pp == x @ pp):
        return False
    y = embed(r11(z / w, params), (0, 1), dims) @ embed(r11(z / (q * w), params), (0, 2), dims)
    if not (pp @ y @ pp == pp @ y):
        return False
    s = params.require_half()
    d4 = (2, 2, 2, 2)
    pair = _tensor(boundary_vector(1, s * z, b, params), boundary_vector(1, z / s, b, params), 4)
    base = apply_local(r_check(z * z, params, spin=1), (1, 2), d4, pair)
    right = apply_local(projector_sym(), (2, 3), d4, base)
    both = apply_local(projector_sym(), (0, 1), d4, right)
    return vec_equal(both, right)


__all__ = [
    "ConsistencyError", "ModelParams", "boundary_vector", "br", "build_r",
    "check_boundary_ybe_and_fish", "check_highest_weight_covector", "check_inversion_crossing",
    "check_inversion_r22", "check_projector_absorption", "check_q_inversion", "check_yang_baxter",
    "fused_boundary_vector", "homogeneous_boundary_vector", "kron", "projector_antisym",
    "projector_sym", "q_proj", "r11", "r12_table", "r21", "r22_table", "r_check", "sigma", "swap",
    "u_inverse", "u_matrix", "v_inverse", "v_matrix",
]
