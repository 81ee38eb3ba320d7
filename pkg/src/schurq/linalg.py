"""Dense exact linear algebra over the QScalar field.

Matrices are tuples of row tuples; vectors are tuples.  Everything is small
and exact, so plain Gaussian elimination over the field is used throughout.
"""

from __future__ import annotations

from .qfield import QScalar

__all__ = [
    "zeros",
    "identity",
    "mat_mul",
    "mat_add",
    "mat_scale",
    "mat_vec",
    "mat_rank",
    "nullspace",
    "solve",
    "Subspace",
]

_Z = QScalar.zero()
_O = QScalar.one()


def zeros(m, n):
    return tuple((_Z,) * n for _ in range(m))


def identity(n):
    return tuple(tuple(_O if i == j else _Z for j in range(n)) for i in range(n))


def mat_mul(a, b):
    if not a or not b:
        return ()
    n = len(b[0])
    bt = list(zip(*b))
    out = []
    for row in a:
        out.append(
            tuple(
                sum((x * y for x, y in zip(row, col) if x and y), _Z) for col in bt
            )
        )
    return tuple(out)


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in zip(a, b))


def mat_scale(a, s):
    return tuple(tuple(x * s for x in row) for row in a)


def mat_vec(a, v):
    return tuple(sum((x * y for x, y in zip(row, v) if x and y), _Z) for row in a)


def _rref(rows, ncols):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    out = []
    pivots = []
    for row in rows:
        row = list(row)
        for prow, pcol in zip(out, pivots):
            if row[pcol]:
                f = row[pcol]
                for j in range(ncols):
                    if prow[j]:
                        row[j] = row[j] - f * prow[j]
        lead = next((j for j in range(ncols) if row[j]), None)
        if lead is None:
            continue
        inv = row[lead].inverse()
        row = [x * inv for x in row]
        for prow, pcol in zip(out, pivots):
            if prow[lead]:
                f = prow[lead]
                for j in range(ncols):
                    if row[j]:
                        prow[j] = prow[j] - f * row[j]
        out.append(row)
        pivots.append(lead)
    order = sorted(range(len(pivots)), key=lambda t: pivots[t])
    return [out[t] for t in order], [pivots[t] for t in order]


def mat_rank(a):
    if not a:
        return 0
    return len(_rref([list(r) for r in a], len(a[0]))[1])


def nullspace(a, ncols=None):
    """Basis of the right kernel of a (list of coordinate vectors)."""
    if ncols is None:
        if not a:
            return []
        ncols = len(a[0])
    if not a:
        return [tuple(_O if j == k else _Z for j in range(ncols)) for k in range(ncols)]
    rows, pivots = _rref([list(r) for r in a], ncols)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for j in free:
        vec = [_Z] * ncols
        vec[j] = _O
        for prow, pcol in zip(rows, pivots):
            if prow[j]:
                vec[pcol] = -prow[j]
        basis.append(tuple(vec))
    return basis


def solve(a, b):
    """One solution x of a x = b, or None if inconsistent."""
    if not a:
        return () if not any(b) else None
    ncols = len(a[0])
    aug = [list(r) + [bv] for r, bv in zip(a, b)]
    rows, pivots = _rref(aug, ncols + 1)
    x = [_Z] * ncols
    for prow, pcol in zip(rows, pivots):
        if pcol == ncols:
            return None
        x[pcol] = prow[ncols]
    return tuple(x)


class Subspace:
    """Incrementally built row space with membership tests."""

    def __init__(self, ncols):
        self.ncols = ncols
        self.rows = []
        self.pivots = []

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, vec):
        vec = list(vec)
        for prow, pcol in zip(self.rows, self.pivots):
            if vec[pcol]:
                f = vec[pcol]
                for j in range(self.ncols):
                    if prow[j]:
                        vec[j] = vec[j] - f * prow[j]
        return vec

    def contains(self, vec):
        return not any(self.reduce(vec))

    def add(self, vec):
        """Insert a vector; returns True if it enlarged the span."""
        vec = self.reduce(vec)
        lead = next((j for j in range(self.ncols) if vec[j]), None)
        if lead is None:
            return False
        pivot = vec[lead]
        # entries are QScalar or any exact field element (e.g. Fraction)
        inv = pivot.inverse() if hasattr(pivot, "inverse") else 1 / pivot
        vec = [x * inv for x in vec]
        for prow in self.rows:
            if prow[lead]:
                f = prow[lead]
                for j in range(self.ncols):
                    if vec[j]:
                        prow[j] = prow[j] - f * vec[j]
        self.rows.append(vec)
        self.pivots.append(lead)
        return True

    def basis(self):
        order = sorted(range(len(self.pivots)), key=lambda t: self.pivots[t])
        return [tuple(self.rows[t]) for t in order]
