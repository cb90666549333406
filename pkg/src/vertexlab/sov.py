"""Height (separation of variables) basis and the special eigenvectors.

The height states ||h>> diagonalise the monodromy block D(z).  They are used
to reconstruct the zero eigenvector of the anti-diagonal transfer matrix
T1, which is also computed directly as an exact kernel.  The diagonal-twist
eigenvector is the Bethe state prod_j B(w_j) |up...up>.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .exact import interpolate, eval_poly, nullspace, rat, scalar
from .ops import (Operator, apply_local, vec_add, vec_dot, vec_equal,
                  vec_scale)
from .transfer import (Inhom, Twist, a_func, apply_block, apply_block_left, apply_transfer,
                       chain_dims, d_func, magnetization_values, symmetry_ops, theta2,
                       transfer)
from .vertex import ConsistencyError, ModelParams, br, r_check

HIGHEST = 0  # index of |up ... up>


class DegenerateError(ValueError):
    pass


def _profile(h) -> tuple:
    h = tuple(int(x) for x in h)
    if any(x not in (0, 1, 2) for x in h):
        raise ValueError(f"heights must lie in {{0, 1, 2}}: {h}")
    return h


def _qpow(params: ModelParams, k: int):
    return params.q ** k


def height_state(h, inhom: Inhom, params: ModelParams) -> dict:
    """prod_j prod_{k<h_j} B(q^{1-k} w_j) / a(q^{1-k} w_j) applied to |up...up>."""
    h = _profile(h)
    if len(h) != inhom.n:
        raise ValueError("profile length differs from the number of sites")
    vec = {HIGHEST: scalar(1)}
    for j, hj in enumerate(h):
        for k in range(hj):
            z = _qpow(params, 1 - k) * inhom.w[j]
            den = a_func(z, params, inhom)
            if not den:
                raise DegenerateError("degenerate inhomogeneities")
            vec = vec_scale(apply_block("B", z, params, inhom, vec), 1 / den)
    return vec


def dual_height_state(h, inhom: Inhom, params: ModelParams) -> dict:
    """<up...up| prod_j prod_{k<h_j} C(q^{1-k} w_j) / d(q^{-k} w_j)."""
    h = _profile(h)
    if len(h) != inhom.n:
        raise ValueError("profile length differs from the number of sites")
    covec = {HIGHEST: scalar(1)}
    for j, hj in enumerate(h):
        for k in range(hj):
            den = d_func(_qpow(params, -k) * inhom.w[j], params, inhom)
            if not den:
                raise DegenerateError("degenerate inhomogeneities")
            z = _qpow(params, 1 - k) * inhom.w[j]
            covec = vec_scale(apply_block_left("C", z, params, inhom, covec), 1 / den)
    return covec


def profiles(n: int):
    return list(itertools.product((0, 1, 2), repeat=n))


def _shift(h: tuple, j: int, step: int):
    new = h[j] + step
    if new < 0 or new > 2:
        return None
    return h[:j] + (new,) + h[j + 1:]


def d_eigenvalue(z, h, inhom: Inhom, params: ModelParams):
    out = scalar(1)
    for hj, w in zip(h, inhom.w):
        out = out * br(_qpow(params, hj - 1) * z / w)
    return out


def _hop_factor(z, h, j, inhom: Inhom, params: ModelParams):
    out = scalar(1)
    wj = inhom.w[j]
    for k, (hk, wk) in enumerate(zip(h, inhom.w)):
        if k == j:
            continue
        den = br(_qpow(params, hk - h[j]) * wj / wk)
        if not den:
            raise DegenerateError("degenerate inhomogeneities")
        out = out * br(_qpow(params, hk - 1) * z / wk) / den
    return out


def height_norm(h, inhom: Inhom, params: ModelParams):
    """<<h||h>> in closed form."""
    h = _profile(h)
    out = scalar((-1) ** sum(h))
    w = inhom.w
    for j in range(len(h)):
        for k in range(j + 1, len(h)):
            den = br(_qpow(params, h[k] - h[j]) * w[j] / w[k])
            if not den:
                raise DegenerateError("degenerate inhomogeneities")
            out = out * br(w[j] / w[k]) / den
    return out


@dataclass
class SovBasis:
    inhom: Inhom
    params: ModelParams
    kets: dict = field(default_factory=dict)
    bras: dict = field(default_factory=dict)

    @classmethod
    def build(cls, inhom: Inhom, params: ModelParams, heights=None) -> "SovBasis":
        if not inhom.distinct():
            raise DegenerateError("degenerate inhomogeneities")
        basis = cls(inhom, params)
        for h in heights if heights is not None else profiles(inhom.n):
            basis.kets[h] = height_state(h, inhom, params)
            basis.bras[h] = dual_height_state(h, inhom, params)
        return basis


def sov_structure_checks(inhom: Inhom, params: ModelParams, z) -> dict:
    """Named exact checks of the D/B/C actions (both sides), the overlaps and
    the completeness relation."""
    if inhom.n > 3:
        raise ValueError("SoV structure checks are limited to N <= 3")
    z = scalar(z)
    basis = SovBasis.build(inhom, params)
    hs = list(basis.kets)
    ok = {"d_right": True, "b_right": True, "c_right": True, "d_left": True, "b_left": True,
          "c_left": True, "overlaps": True, "completeness": True}
    for h in hs:
        ket, bra = basis.kets[h], basis.bras[h]
        lam = d_eigenvalue(z, h, inhom, params)
        ok["d_right"] &= vec_equal(apply_block("D", z, params, inhom, ket), vec_scale(ket, lam))
        ok["d_left"] &= vec_equal(apply_block_left("D", z, params, inhom, bra), vec_scale(bra, lam))
        b_exp, c_exp, bl_exp, cl_exp = {}, {}, {}, {}
        for j, wj in enumerate(inhom.w):
            f = _hop_factor(z, h, j, inhom, params)
            up, down = _shift(h, j, 1), _shift(h, j, -1)
            hj = h[j]
            if up is not None:
                amp = a_func(_qpow(params, 1 - hj) * wj, params, inhom) * f
                b_exp = vec_add(b_exp, vec_scale(basis.kets[up], amp))
                amp = d_func(_qpow(params, -hj) * wj, params, inhom) * f
                cl_exp = vec_add(cl_exp, vec_scale(basis.bras[up], amp))
            if down is not None:
                amp = -d_func(_qpow(params, 1 - hj) * wj, params, inhom) * f
                c_exp = vec_add(c_exp, vec_scale(basis.kets[down], amp))
                amp = -a_func(_qpow(params, 2 - hj) * wj, params, inhom) * f
                bl_exp = vec_add(bl_exp, vec_scale(basis.bras[down], amp))
        ok["b_right"] &= vec_equal(apply_block("B", z, params, inhom, ket), b_exp)
        ok["c_right"] &= vec_equal(apply_block("C", z, params, inhom, ket), c_exp)
        ok["b_left"] &= vec_equal(apply_block_left("B", z, params, inhom, bra), bl_exp)
        ok["c_left"] &= vec_equal(apply_block_left("C", z, params, inhom, bra), cl_exp)
    norms = {h: height_norm(h, inhom, params) for h in hs}
    for h in hs:
        for h2 in hs:
            val = vec_dot(basis.bras[h], basis.kets[h2])
            if val != (norms[h] if h == h2 else 0):
                ok["overlaps"] = False
    # completeness: sum_h ||h>> <<h|| / <<h||h>> applied to each canonical vector
    size = 3 ** inhom.n
    for c in range(size):
        acc = {}
        for h in hs:
            coeff = basis.bras[h].get(c)
            if coeff is not None:
                acc = vec_add(acc, vec_scale(basis.kets[h], coeff / norms[h]))
        if not vec_equal(acc, {c: scalar(1)}):
            ok["completeness"] = False
            break
    return ok


def check_sov_structure(inhom: Inhom, params: ModelParams, z=None) -> bool:
    z = scalar(7) if z is None else z
    return all(sov_structure_checks(inhom, params, z).values())


# --------------------------------------------------------------------------
# special eigenvectors

def psi_d(inhom: Inhom, params: ModelParams) -> dict:
    """Bethe state prod_j B(w_j) |up...up>."""
    vec = {HIGHEST: scalar(1)}
    for w in inhom.w:
        vec = apply_block("B", w, params, inhom, vec)
    return vec


def psi_d_dual(inhom: Inhom, params: ModelParams) -> dict:
    """<up...up| prod_j C(w_j)."""
    covec = {HIGHEST: scalar(1)}
    for w in inhom.w:
        covec = apply_block_left("C", w, params, inhom, covec)
    return covec


def _projection_right(h, inhom: Inhom, params: ModelParams):
    out = scalar(1)
    w = inhom.w
    for i, hi in enumerate(h):
        for j in range(len(h)):
            out = out * br(_qpow(params, 2 * (hi - 1)) * w[i] / w[j])
            out = out / br(_qpow(params, -2) * w[i] / w[j])
    return out


def _projection_left(h, inhom: Inhom, params: ModelParams):
    out = scalar(1)
    w = inhom.w
    for i, hi in enumerate(h):
        for j in range(len(h)):
            out = out * br(_qpow(params, 1 - hi) * w[i] / w[j]) / br(params.q * w[i] / w[j])
    return out


def _even_profiles(n: int):
    # heights 1 carry a factor [1] = 0 in both projections
    return list(itertools.product((0, 2), repeat=n))


def _psi_ad_sov(inhom: Inhom, params: ModelParams, left: bool) -> dict:
    if not inhom.distinct():
        raise DegenerateError("degenerate inhomogeneities")
    out = {}
    for h in _even_profiles(inhom.n):
        if left:
            coeff = _projection_left(h, inhom, params)
            state = dual_height_state(h, inhom, params)
        else:
            coeff = _projection_right(h, inhom, params)
            state = height_state(h, inhom, params)
        out = vec_add(out, vec_scale(state, coeff / height_norm(h, inhom, params)))
    return out


def _sector_indices(n: int, parity: int) -> list:
    mags = magnetization_values(n)
    return [k for k, m in enumerate(mags) if (m - parity) % 2 == 0]


def _kernel(op: Operator, n: int) -> list:
    """Kernel of an operator anticommuting with (-1)^M, sector by sector."""
    vectors = []
    for parity in (0, 1):
        cols = _sector_indices(n, parity)
        rows = _sector_indices(n, parity + 1)
        for v in nullspace(op.rows_dense(rows, cols), len(cols)):
            vectors.append({c: x for c, x in zip(cols, v) if x})
    return vectors


def _normalise(vec: dict, index: int = HIGHEST) -> dict:
    lead = vec.get(index)
    if not lead:
        raise DegenerateError("degenerate parameters")
    return vec_scale(vec, 1 / lead)


def psi_ad(inhom: Inhom, params: ModelParams, method: str = "sov", z0=None) -> dict:
    """Zero eigenvector of the anti-diagonal T1, with <up...up|psi> = 1."""
    if method == "sov":
        return _psi_ad_sov(inhom, params, left=False)
    if method != "kernel":
        raise ValueError(f"unknown method {method!r}")
    z0 = scalar(rat("13/7") if z0 is None else z0)
    op = transfer(1, z0, Twist.ANTIDIAGONAL, params, inhom)
    ker = _kernel(op, inhom.n)
    if len(ker) != 1:
        raise DegenerateError("degenerate parameters")
    return _normalise(ker[0])


def psi_ad_dual(inhom: Inhom, params: ModelParams, method: str = "sov", z0=None) -> dict:
    if method == "sov":
        return _psi_ad_sov(inhom, params, left=True)
    if method != "kernel":
        raise ValueError(f"unknown method {method!r}")
    z0 = scalar(rat("13/7") if z0 is None else z0)
    op = transfer(1, z0, Twist.ANTIDIAGONAL, params, inhom).transpose()
    ker = _kernel(op, inhom.n)
    if len(ker) != 1:
        raise DegenerateError("degenerate parameters")
    return _normalise(ker[0])


def special_vector(twist, inhom: Inhom, params: ModelParams, method: str | None = None) -> dict:
    twist = Twist.parse(twist)
    if twist is Twist.DIAGONAL:
        return psi_d(inhom, params)
    if method is None:
        method = "sov" if inhom.distinct() else "kernel"
    return psi_ad(inhom, params, method)


def special_dual(twist, inhom: Inhom, params: ModelParams, method: str | None = None) -> dict:
    twist = Twist.parse(twist)
    if twist is Twist.DIAGONAL:
        return psi_d_dual(inhom, params)
    if method is None:
        method = "sov" if inhom.distinct() else "kernel"
    return psi_ad_dual(inhom, params, method)


def diagonal_kernel_dimension(inhom: Inhom, params: ModelParams, z0) -> int:
    """Dimension of the kernel of the diagonal T1(z0) within the M = 0 sector."""
    op = transfer(1, scalar(z0), Twist.DIAGONAL, params, inhom)
    cols = [k for k, m in enumerate(magnetization_values(inhom.n)) if m == 0]
    return len(nullspace(op.rows_dense(cols, cols), len(cols)))


# --------------------------------------------------------------------------
# eigenvector checks

def check_null_vector(twist, vec: dict, inhom: Inhom, params: ModelParams, z) -> dict:
    """T1(z) psi = 0 and T2(z) psi = theta2(z) psi."""
    z = scalar(z)
    t1 = apply_transfer(1, z, twist, params, inhom, vec)
    t2 = apply_transfer(2, z, twist, params, inhom, vec)
    return {"t1_null": not t1,
            "t2_eigen": vec_equal(t2, vec_scale(vec, theta2(z, params, inhom)))}


def _swap_inhom(inhom: Inhom, j: int) -> Inhom:
    w = list(inhom.w)
    w[j], w[j + 1] = w[j + 1], w[j]
    return Inhom(w)


def check_eigenvector_properties(twist, inhom: Inhom, params: ModelParams) -> dict:
    """Exact checks of transposition, q -> 1/q, exchange, translation covariance
    and the Z2 eigenvalues of the special eigenvector."""
    twist = Twist.parse(twist)
    n = inhom.n
    if n > 4:
        raise ValueError("eigenvector property checks are limited to N <= 4")
    q = params.q
    psi = special_vector(twist, inhom, params)
    report = {}
    inv = inhom.inverted()
    psi_inv = special_vector(twist, inv, params)
    report["transposition"] = vec_equal(special_dual(twist, inhom, params), psi_inv)
    report["q_inversion"] = vec_equal(special_vector(twist, inhom, params.inverted()), psi_inv)
    ex = True
    for j in range(n - 1):
        ratio = inhom.w[j] / inhom.w[j + 1]
        lhs = apply_local(r_check(ratio, params), (j, j + 1), chain_dims(n), psi)
        pref = br(q * ratio) * br(q * q * ratio)
        rhs = vec_scale(special_vector(twist, _swap_inhom(inhom, j), params), pref)
        ex &= vec_equal(lhs, rhs)
    report["exchange"] = ex
    m_op, f_op, s_op = symmetry_ops(n, twist)
    wn = inhom.w[-1]
    pref = scalar(1)
    for wj in inhom.w[:-1]:
        pref = pref * br(wn / (q * wj)) / br(q * wn / wj)
    shifted = Inhom((wn,) + inhom.w[:-1])
    report["translation"] = vec_equal(s_op @ psi,
                                      vec_scale(special_vector(twist, shifted, params), pref))
    if twist is Twist.DIAGONAL:
        report["magnetization"] = not (m_op @ psi)
        report["spin_reversal"] = vec_equal(f_op @ psi, psi)
    else:
        sign = (-1) ** n
        mags = magnetization_values(n)
        report["magnetization"] = all((mags[k] - n) % 2 == 0 for k in psi)
        report["spin_reversal"] = vec_equal(f_op @ psi, vec_scale(psi, sign))
    return report


# --------------------------------------------------------------------------
# homogeneous vectors

def phi(twist, n: int, params: ModelParams, z0=None) -> dict:
    """Zero-energy state of the spin chain at q, with rational components.

    Diagonal: ([q][q^2])^(-N/2) [q]^(-N(N-1)) psi_D(1, ..., 1).
    Anti-diagonal: kernel of the homogeneous T1, normalised to 1 on up...up.
    """
    twist = Twist.parse(twist)
    if n > 6:
        raise ValueError("phi is limited to N <= 6")
    hom = Inhom.homogeneous(n)
    if twist is Twist.DIAGONAL:
        vec = psi_d(hom, params)
        scale = (1 / params.r) ** n / br(params.q) ** (n * (n - 1))
        vec = vec_scale(vec, scale)
    else:
        vec = psi_ad(hom, params, method="kernel", z0=z0)
    for v in vec.values():
        if v.c or v.d or v.b:
            raise ConsistencyError("zero-energy state is not rational")
    return {k: v.to_rational() for k, v in vec.items()}


def component(vec: dict, pattern, n: int | None = None):
    """Component of a chain vector on a spin pattern such as '+-0' or (0, 2, 1)."""
    if isinstance(pattern, str):
        table = {"+": 0, "u": 0, "⇑": 0, "0": 1, "-": 2, "d": 2, "⇓": 2}
        ds = [table[c] for c in pattern]
    else:
        ds = list(pattern)
    index = 0
    for d in ds:
        index = index * 3 + d
    return vec.get(index, 0)


def phi_polynomial_check(twist, n: int, qs) -> bool:
    """Components of phi at several q lie on polynomials in x = q + 1/q.

    All but the last point fix an interpolating polynomial per component; the
    last point must then agree.
    """
    qs = [rat(q) for q in qs]
    if len(qs) < 3:
        raise ValueError("need at least three values of q")
    vecs = [phi(twist, n, ModelParams(q)) for q in qs]
    xs = [q + 1 / q for q in qs]
    keys = set().union(*vecs)
    for k in keys:
        pts = [(x, v.get(k, 0)) for x, v in zip(xs[:-1], vecs[:-1])]
        coeffs = interpolate(pts)
        if eval_poly(coeffs, xs[-1]) != vecs[-1].get(k, 0):
            return False
    return True


def pattern_index(ds) -> int:
    index = 0
    for d in ds:
        index = index * 3 + d
    return index


def alternating_pattern(n: int, start: int = 0) -> list:
    """up, down, up, down, ... (or starting with down when start = 2)."""
    return [start if k % 2 == 0 else 2 - start for k in range(n)]


__all__ = [
    "DegenerateError", "SovBasis", "alternating_pattern", "check_eigenvector_properties",
    "check_null_vector", "check_sov_structure", "component", "d_eigenvalue",
    "diagonal_kernel_dimension", "dual_height_state", "height_norm", "height_state",
    "pattern_index", "phi", "phi_polynomial_check", "profiles", "psi_ad", "psi_ad_dual",
    "psi_d", "psi_d_dual", "sov_structure_checks", "special_dual", "special_vector",
]
