"""Sparse exact operators and vectors on tensor products of small spaces.

Basis states of V_1 x ... x V_k are encoded in mixed radix with the first
factor most significant, so the ordering matches the Kronecker product.
Operators are dictionaries ``{row: {col: value}}``; vectors are
``{index: value}``.  Zero entries are never stored.
"""
from __future__ import annotations

from math import prod
from typing import Iterable, Sequence

from .exact import ExactScalar, scalar


def digits(index: int, dims: Sequence[int]) -> list[int]:
    out = [0] * len(dims)
    for k in range(len(dims) - 1, -1, -1):
        index, out[k] = divmod(index, dims[k])
    return out


def encode(ds: Iterable[int], dims: Sequence[int]) -> int:
    index = 0
    for d, n in zip(ds, dims):
        index = index * n + d
    return index


def strides(dims: Sequence[int]) -> list[int]:
    out = [1] * len(dims)
    for k in range(len(dims) - 2, -1, -1):
        out[k] = out[k + 1] * dims[k + 1]
    return out


class Operator:
    """Sparse exact operator on a tensor product with local dimensions ``dims``."""

    __slots__ = ("dims", "data")

    def __init__(self, dims: Sequence[int], data=None):
        self.dims = tuple(dims)
        self.data = {}
        if data:
            for r, row in data.items():
                clean = {c: v for c, v in row.items() if v}
                if clean:
                    self.data[r] = clean

    @property
    def size(self) -> int:
        return prod(self.dims)

    @classmethod
    def from_dense(cls, rows, dims=None) -> "Operator":
        n = len(rows)
        dims = (n,) if dims is None else dims
        data = {}
        for i, row in enumerate(rows):
            d = {j: scalar(v) if not hasattr(v, "coeffs") else v for j, v in enumerate(row) if v}
            if d:
                data[i] = d
        return cls(dims, data)

    @classmethod
    def identity(cls, dims, one=None) -> "Operator":
        one = scalar(1) if one is None else one
        return cls(dims, {i: {i: one} for i in range(prod(dims))})

    @classmethod
    def diagonal(cls, dims, values) -> "Operator":
        return cls(dims, {i: {i: v} for i, v in enumerate(values) if v})

    def dense(self, zero=0):
        n = self.size
        out = [[zero] * n for _ in range(n)]
        for r, row in self.data.items():
            for c, v in row.items():
                out[r][c] = v
        return out

    def entry(self, r: int, c: int):
        return self.data.get(r, {}).get(c, 0)

    def __matmul__(self, other):
        if isinstance(other, dict):
            return self.apply(other)
        out = {}
        for r, row in self.data.items():
            acc = {}
            for k, v in row.items():
                orow = other.data.get(k)
                if not orow:
                    continue
                for c, w in orow.items():
                    p = v * w
                    acc[c] = acc[c] + p if c in acc else p
            acc = {c: v for c, v in acc.items() if v}
            if acc:
                out[r] = acc
        res = Operator(self.dims)
        res.data = out
        return res

    def apply(self, vec: dict) -> dict:
        out = {}
        for r, row in self.data.items():
            acc = None
            for c, v in row.items():
                x = vec.get(c)
                if x is None:
                    continue
                p = v * x
                acc = p if acc is None else acc + p
            if acc is not None and acc:
                out[r] = acc
        return out

    def apply_left(self, covec: dict) -> dict:
        """Row vector times operator."""
        out = {}
        for r, x in covec.items():
            row = self.data.get(r)
            if not row:
                continue
            for c, v in row.items():
                p = x * v
                out[c] = out[c] + p if c in out else p
        return {c: v for c, v in out.items() if v}

    def _combine(self, other, sign):
        data = {r: dict(row) for r, row in self.data.items()}
        for r, row in other.data.items():
            tgt = data.setdefault(r, {})
            for c, v in row.items():
                if c in tgt:
                    tgt[c] = tgt[c] + v if sign > 0 else tgt[c] - v
                else:
                    tgt[c] = v if sign > 0 else -v
        return Operator(self.dims, data)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, s) -> "Operator":
        return Operator(self.dims, {r: {c: v * s for c, v in row.items()}
                                    for r, row in self.data.items()})

    __mul__ = scale
    __rmul__ = scale

    def transpose(self) -> "Operator":
        data = {}
        for r, row in self.data.items():
            for c, v in row.items():
                data.setdefault(c, {})[r] = v
        return Operator(self.dims, data)

    def map_entries(self, f) -> "Operator":
        return Operator(self.dims, {r: {c: f(v) for c, v in row.items()}
                                    for r, row in self.data.items()})

    def is_zero(self) -> bool:
        return not any(any(bool(v) for v in row.values()) for row in self.data.values())

    def __eq__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        return (self - other).is_zero()

    def nnz(self) -> int:
        return sum(len(r) for r in self.data.values())

    def trace(self):
        total = 0
        for r, row in self.data.items():
            if r in row:
                total = total + row[r]
        return total

    def rows_dense(self, rows=None, cols=None):
        rows = range(self.size) if rows is None else rows
        cols = range(self.size) if cols is None else cols
        cindex = {c: k for k, c in enumerate(cols)}
        out = []
        for r in rows:
            line = [0] * len(cindex)
            for c, v in self.data.get(r, {}).items():
                k = cindex.get(c)
                if k is not None:
                    line[k] = v
            out.append(line)
        return out

    def __repr__(self):
        return f"Operator(dims={self.dims}, nnz={self.nnz()})"


def kron(A: Operator, B: Operator) -> Operator:
    nb = B.size
    data = {}
    for r1, row1 in A.data.items():
        for r2, row2 in B.data.items():
            out = {}
            for c1, v1 in row1.items():
                for c2, v2 in row2.items():
                    out[c1 * nb + c2] = v1 * v2
            data[r1 * nb + r2] = out
    return Operator(A.dims + B.dims, data)


def _local_table(op: Operator):
    return [(r, list(row.items())) for r, row in op.data.items()]


def apply_local(op: Operator, positions: Sequence[int], dims: Sequence[int], vec: dict) -> dict:
    """Apply ``op`` (acting on the factors at ``positions`` in that order) to a vector."""
    st = strides(dims)
    pst = [st[p] for p in positions]
    pdims = [dims[p] for p in positions]
    cols: dict[int, list] = {}
    for r, row in op.data.items():
        for c, v in row.items():
            cols.setdefault(c, []).append((r, v))
    out = {}
    for idx, x in vec.items():
        # local column index and the base index with those digits removed
        c = 0
        base = idx
        for s, n in zip(pst, pdims):
            d = (idx // s) % n
            c = c * n + d
            base -= d * s
        targets = cols.get(c)
        if not targets:
            continue
        for r, v in targets:
            j = base
            rr = r
            for s, n in zip(reversed(pst), reversed(pdims)):
                rr, d = divmod(rr, n)
                j += d * s
            p = v * x
            out[j] = out[j] + p if j in out else p
    return {k: v for k, v in out.items() if v}


def apply_local_left(op: Operator, positions, dims, covec: dict) -> dict:
    """Covector times the embedded local operator."""
    return apply_local(op.transpose(), positions, dims, covec)


def embed(op: Operator, positions: Sequence[int], dims: Sequence[int]) -> Operator:
    """Full operator on prod(dims) for a local operator on ``positions``."""
    n = prod(dims)
    data = {}
    for c in range(n):
        col = apply_local(op, positions, dims, {c: scalar(1)})
        for r, v in col.items():
            data.setdefault(r, {})[c] = v
    return Operator(dims, data)


def permutation(dims: Sequence[int], order: Sequence[int]) -> Operator:
    """Operator sending |s_0 ... s_k> to the state whose factor j is s_order[j]."""
    new_dims = [dims[o] for o in order]
    one = scalar(1)
    data = {}
    for c in range(prod(dims)):
        ds = digits(c, dims)
        r = encode([ds[o] for o in order], new_dims)
        data[r] = {c: one}
    return Operator(new_dims, data)


def vec_sub(u: dict, v: dict) -> dict:
    out = dict(u)
    for k, x in v.items():
        out[k] = out[k] - x if k in out else -x
    return {k: x for k, x in out.items() if x}


def vec_add(u: dict, v: dict) -> dict:
    out = dict(u)
    for k, x in v.items():
        out[k] = out[k] + x if k in out else x
    return {k: x for k, x in out.items() if x}


def vec_scale(u: dict, s) -> dict:
    return {k: x * s for k, x in u.items() if x}


def vec_dot(u: dict, v: dict):
    """Bilinear pairing sum_k u_k v_k (no complex conjugation)."""
    if len(u) > len(v):
        u, v = v, u
    total = scalar(0)
    for k, x in u.items():
        y = v.get(k)
        if y is not None:
            total = total + x * y
    return total


def vec_equal(u: dict, v: dict) -> bool:
    return not vec_sub(u, v)


def proportional(u: dict, v: dict):
    """Return c with u = c v exactly, or None."""
    if not v:
        return None if u else scalar(0)
    k0 = next(iter(v))
    if k0 not in u:
        return None
    c = u[k0] / v[k0]
    return c if vec_equal(u, vec_scale(v, c)) else None


def basis_vector(index: int) -> dict:
    return {index: scalar(1)}


__all__ = ["Operator", "apply_local", "apply_local_left", "basis_vector", "digits", "embed",
           "encode", "kron", "permutation", "proportional", "strides", "vec_add", "vec_dot",
           "vec_equal", "vec_scale", "vec_sub", "ExactScalar"]
