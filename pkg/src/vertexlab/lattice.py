"""Exhaustive configuration sums on rectangular vertex-model domains.

A lattice has ``rows`` horizontal lines (numbered from the bottom) and
``cols`` vertical lines (numbered from the left).  Every line carries a
state on each edge; a vertex table maps ``(h_in, v_in)`` to a list of
``(h_out, v_out, weight)``, with horizontal lines running left to right and
vertical lines running bottom to top.  Left and bottom boundary states are
fixed.  Right and top ends are either fixed or joined in pairs by arcs whose
weight depends on the two end states.

The sum is a depth-first assignment vertex by vertex with memoisation on the
current frontier, so it is exhaustive but never revisits a partial state.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .exact import scalar
from .ops import Operator

MAX_EDGES = 60


class DomainTooLarge(ValueError):
    pass


def vertex_table(op: Operator, v_dim: int) -> dict:
    """Turn a local operator on (horizontal x vertical) into a vertex table."""
    table: dict = {}
    for r, row in op.data.items():
        h_out, v_out = divmod(r, v_dim)
        for c, w in row.items():
            h_in, v_in = divmod(c, v_dim)
            table.setdefault((h_in, v_in), []).append((h_out, v_out, w))
    return table


@dataclass
class Lattice:
    tables: list                      # tables[i][j] for row i, column j
    left: list
    bottom: list
    right: list                       # state or None when the end sits on an arc
    top: list
    arcs: list = field(default_factory=list)   # (end, end, {(s, s'): weight})

    @property
    def rows(self) -> int:
        return len(self.tables)

    @property
    def cols(self) -> int:
        return len(self.bottom)

    def edge_count(self) -> int:
        return self.rows * (self.cols + 1) + self.cols * (self.rows + 1)


def lattice_sum(lat: Lattice):
    """Sum of configuration weights over all admissible configurations."""
    if lat.edge_count() > MAX_EDGES:
        raise DomainTooLarge(f"domain has {lat.edge_count()} edges; limit is {MAX_EDGES}")
    R, C = lat.rows, lat.cols
    zero, one = scalar(0), scalar(1)

    # arcs closed when a right end is reached (both ends on the right) or at the top
    right_arcs = {}
    top_arcs = []
    for a, b, weights in lat.arcs:
        if a[0] == "R" and b[0] == "R":
            first, last = sorted((a, b), key=lambda e: e[1])
            right_arcs[last[1]] = (first[1], a == first, weights)
        else:
            top_arcs.append((a, b, weights))

    def end_state(end, rights, tops):
        return rights[end[1]] if end[0] == "R" else tops[end[1]]

    def finish(tops, rights):
        w = one
        for j, s in enumerate(lat.top):
            if s is not None and tops[j] != s:
                return zero
        for a, b, weights in top_arcs:
            pw = weights.get((end_state(a, rights, tops), end_state(b, rights, tops)))
            if not pw:
                return zero
            w = w * pw
        return w

    memo: dict = {}

    def walk(i, j, h, vs, rights):
        if j == C:
            fixed = lat.right[i]
            if fixed is not None and fixed != h:
                return zero
            w = one
            if i in right_arcs:
                k, k_first, weights = right_arcs[i]
                pair = (rights[k], h) if k_first else (h, rights[k])
                pw = weights.get(pair)
                if not pw:
                    return zero
                w = pw
            rights = rights + (h,)
            if i + 1 == R:
                return w * finish(vs, rights)
            return w * walk(i + 1, 0, lat.left[i + 1], vs, rights)
        key = (i, j, h, vs, rights)
        hit = memo.get(key)
        if hit is not None:
            return hit
        total = zero
        for h_out, v_out, w in lat.tables[i][j].get((h, vs[j]), ()):
            sub = walk(i, j + 1, h_out, vs[:j] + (v_out,) + vs[j + 1:], rights)
            if sub:
                total = total + w * sub
        memo[key] = total
        return total

    if R == 0:
        return finish(tuple(lat.bottom), ())
    return walk(0, 0, lat.left[0], tuple(lat.bottom), ())


__all__ = ["DomainTooLarge", "Lattice", "MAX_EDGES", "lattice_sum", "vertex_table"]
