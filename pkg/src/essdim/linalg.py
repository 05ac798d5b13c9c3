"""Exact integer matrix algebra.

Everything here works over Python ``int`` so there is no overflow and no
floating point.  Matrices are immutable :class:`IntMatrix` values; the
normal-form routines work on plain nested lists internally.

Conventions
-----------
* Lattices are spanned by the *columns* of a matrix.
* :func:`hnf` returns the column-style Hermite normal form ``H = M @ U``:
  a lower staircase with positive pivots, zeros to the right of each pivot
  and the entries to the left of a pivot (in the pivot row) reduced into
  ``[0, pivot)``.  Zero columns are pushed to the right.
* :func:`snf` returns ``S = U @ M @ V`` with ``S`` diagonal and the
  nonzero diagonal entries forming a divisibility chain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

__all__ = [
    "IntMatrix",
    "HnfResult",
    "SnfResult",
    "LatticeMembershipError",
    "hnf",
    "snf",
    "rank",
    "kernel_basis",
    "lattice_basis",
    "solve_in_lattice",
    "in_lattice",
    "same_lattice",
    "lattice_index",
]


class LatticeMembershipError(ValueError):
    """A vector that was required to lie in a lattice does not."""

    def __init__(self, message: str, column: Optional[int] = None):
        super().__init__(message)
        self.column = column


class IntMatrix:
    """Dense immutable matrix of exact integers."""

    __slots__ = ("_data", "_nrows", "_ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]], ncols: Optional[int] = None):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != width:
                raise ValueError(f"expected {ncols} columns, got {width}")
        else:
            width = ncols or 0
        self._data = data
        self._nrows = len(data)
        self._ncols = width
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def from_columns(cls, columns: Iterable[Sequence[int]], nrows: Optional[int] = None) -> "IntMatrix":
        columns = [tuple(c) for c in columns]
        if not columns:
            return cls.zeros(nrows or 0, 0)
        n = len(columns[0])
        if nrows is not None and nrows != n:
            raise ValueError(f"expected columns of length {nrows}, got {n}")
        if any(len(c) != n for c in columns):
            raise ValueError("ragged columns")
        return cls((tuple(c[i] for c in columns) for i in range(n)), ncols=len(columns))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(((1 if i == j else 0) for j in range(n)) for i in range(n)) if n else cls.zeros(0, 0)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        m = cls([[0] * ncols for _ in range(nrows)], ncols=ncols)
        return m

    @classmethod
    def diag(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    # -- accessors ----------------------------------------------------
    @property
    def nrows(self) -> int:
        return self._nrows

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (self._nrows, self._ncols)

    @property
    def entries(self) -> tuple[int, ...]:
        """Row-major flat tuple of entries."""
        return tuple(x for row in self._data for x in row)

    def row(self, i: int) -> tuple[int, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self._data)

    def rows(self) -> list[tuple[int, ...]]:
        return list(self._data)

    def columns(self) -> list[tuple[int, ...]]:
        if self._nrows == 0:
            return [() for _ in range(self._ncols)]
        return [tuple(c) for c in zip(*self._data)]

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self._data]

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self._data[i][j]

    # -- algebra ------------------------------------------------------
    @property
    def T(self) -> "IntMatrix":
        return IntMatrix.from_columns(self._data, nrows=self._ncols) if self._nrows else IntMatrix.zeros(self._ncols, 0)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self._ncols != other._nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = other.columns()
        return IntMatrix(
            ([sum(a * b for a, b in zip(row, col)) for col in ocols] for row in self._data),
            ncols=other._ncols,
        )

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product."""
        if len(v) != self._ncols:
            raise ValueError(f"vector of length {len(v)} for matrix with {self._ncols} columns")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self._data)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(([-x for x in row] for row in self._data), ncols=self._ncols)

    def hstack(self, *others: "IntMatrix") -> "IntMatrix":
        cols = self.columns()
        for o in others:
            if o._nrows != self._nrows:
                raise ValueError("row count mismatch in hstack")
            cols.extend(o.columns())
        return IntMatrix.from_columns(cols, nrows=self._nrows)

    def vstack(self, *others: "IntMatrix") -> "IntMatrix":
        rows = list(self._data)
        for o in others:
            if o._ncols != self._ncols:
                raise ValueError("column count mismatch in vstack")
            rows.extend(o._data)
        return IntMatrix(rows, ncols=self._ncols)

    def select_columns(self, idx: Iterable[int]) -> "IntMatrix":
        cols = self.columns()
        return IntMatrix.from_columns([cols[j] for j in idx], nrows=self._nrows)

    def det(self) -> int:
        """Exact determinant by Bareiss fraction-free elimination."""
        n = self._nrows
        if n != self._ncols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = [list(row) for row in self._data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            akk = a[k][k]
            for i in range(k + 1, n):
                aik = a[i][k]
                row_i, row_k = a[i], a[k]
                for j in range(k + 1, n):
                    row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            prev = akk
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self._nrows == self._ncols and abs(self.det()) == 1

    # -- dunder -------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, self._data))
        return self._hash

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})" if self._nrows else f"IntMatrix.zeros(0, {self._ncols})"


@dataclass(frozen=True)
class HnfResult:
    H: IntMatrix
    U: IntMatrix
    rank: int


@dataclass(frozen=True)
class SnfResult:
    S: IntMatrix
    U: IntMatrix
    V: IntMatrix
    factors: tuple[int, ...]


def _pick(values: Iterable[tuple[int, int]]) -> Optional[int]:
    """Index with smallest |value|, ties to the lowest index; None if all zero."""
    best = None
    best_abs = 0
    for idx, val in values:
        if val:
            a = abs(val)
            if best is None or a < best_abs:
                best, best_abs = idx, a
    return best


def _hnf_columns(cols: list[list[int]], nrows: int, track: bool):
    """Column HNF in place on a list of columns.

    Returns ``(cols, ucols, pivot_rows)``; ``ucols`` are the columns of the
    unimodular transform (``None`` when ``track`` is false).
    """
    ncols = len(cols)
    ucols = [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)] if track else None
    pivot_rows: list[int] = []
    k = 0
    for i in range(nrows):
        if k == ncols:
            break
        while True:
            p = _pick((j, cols[j][i]) for j in range(k, ncols))
            if p is None:
                break
            if p != k:
                cols[k], cols[p] = cols[p], cols[k]
                if track:
                    ucols[k], ucols[p] = ucols[p], ucols[k]
            piv_col = cols[k]
            piv = piv_col[i]
            clean = True
            for j in range(k + 1, ncols):
                cj = cols[j]
                a = cj[i]
                if a:
                    q = a // piv
                    for t in range(i, nrows):
                        pt = piv_col[t]
                        if pt:
                            cj[t] -= q * pt
                    if track:
                        uk, uj = ucols[k], ucols[j]
                        for t in range(ncols):
                            ut = uk[t]
                            if ut:
                                uj[t] -= q * ut
                    if cj[i]:
                        clean = False
            if clean:
                break
        if k < ncols and cols[k][i] != 0:
            piv_col = cols[k]
            if piv_col[i] < 0:
                for t in range(i, nrows):
                    piv_col[t] = -piv_col[t]
                if track:
                    ucols[k] = [-x for x in ucols[k]]
            piv = piv_col[i]
            for j in range(k):
                cj = cols[j]
                q = cj[i] // piv
                if q:
                    for t in range(i, nrows):
                        pt = piv_col[t]
                        if pt:
                            cj[t] -= q * pt
                    if track:
                        uk, uj = ucols[k], ucols[j]
                        for t in range(ncols):
                            ut = uk[t]
                            if ut:
                                uj[t] -= q * ut
            pivot_rows.append(i)
            k += 1
    return cols, ucols, pivot_rows


def hnf(M: IntMatrix) -> HnfResult:
    """Column-style Hermite normal form with unimodular transform, ``M @ U = H``."""
    cols, ucols, piv = _hnf_columns([list(c) for c in M.columns()], M.nrows, track=True)
    H = IntMatrix.from_columns(cols, nrows=M.nrows)
    U = IntMatrix.from_columns(ucols, nrows=M.ncols)
    return HnfResult(H=H, U=U, rank=len(piv))


def lattice_basis(M: IntMatrix) -> IntMatrix:
    """Canonical basis of the column span: the nonzero columns of the HNF."""
    cols, _, piv = _hnf_columns([list(c) for c in M.columns()], M.nrows, track=False)
    return IntMatrix.from_columns(cols[: len(piv)], nrows=M.nrows)


def rank(M: IntMatrix) -> int:
    _, _, piv = _hnf_columns([list(c) for c in M.columns()], M.nrows, track=False)
    return len(piv)


def kernel_basis(M: IntMatrix) -> IntMatrix:
    """Basis (canonical HNF) of the integer kernel ``{v : M v = 0}``."""
    _, ucols, piv = _hnf_columns([list(c) for c in M.columns()], M.nrows, track=True)
    ker = ucols[len(piv):]
    if not ker:
        return IntMatrix.zeros(M.ncols, 0)
    return lattice_basis(IntMatrix.from_columns(ker, nrows=M.ncols))


def snf(M: IntMatrix) -> SnfResult:
    """Smith normal form ``S = U @ M @ V`` with unimodular ``U`` and ``V``.

    ``factors`` lists the nonzero invariant factors in divisibility order.
    """
    r, c = M.shape
    a = M.tolist()
    U = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    V = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        if i != j:
            a[i], a[j] = a[j], a[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row[dst] -= q * row[src]
        rd, rs = a[dst], a[src]
        for t in range(c):
            if rs[t]:
                rd[t] -= q * rs[t]
        ud, us = U[dst], U[src]
        for t in range(r):
            if us[t]:
                ud[t] -= q * us[t]

    def add_col(dst, src, q):
        for row in a:
            if row[src]:
                row[dst] -= q * row[src]
        for row in V:
            if row[src]:
                row[dst] -= q * row[src]

    t = 0
    while t < min(r, c):
        best = None
        for i in range(t, r):
            row = a[i]
            for j in range(t, c):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            dirty = False
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, a[i][t] // a[t][t])
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, a[t][j] // a[t][t])
                    dirty = dirty or a[t][j] != 0
            if dirty:
                cand = [(abs(a[i][t]), i, t) for i in range(t, r) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, c) if a[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            piv = a[t][t]
            bad = next(
                (i for i in range(t + 1, r) if any(x % piv for x in a[i][t + 1:])),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    factors = tuple(a[i][i] for i in range(t))
    return SnfResult(
        S=IntMatrix(a, ncols=c),
        U=IntMatrix(U, ncols=r),
        V=IntMatrix(V, ncols=c),
        factors=factors,
    )


def _solve_hnf(cols: list[list[int]], piv: list[int], v: Sequence[int]) -> Optional[list[int]]:
    """Coefficients ``x`` with ``sum x_j cols[j] = v`` for an HNF basis, or None."""
    res = list(v)
    x = []
    prev = -1
    for j, p in enumerate(piv):
        if any(res[t] for t in range(prev + 1, p)):
            return None
        col = cols[j]
        q, rem = divmod(res[p], col[p])
        if rem:
            return None
        if q:
            for t in range(p, len(res)):
                if col[t]:
                    res[t] -= q * col[t]
        x.append(q)
        prev = p
    if any(res[t] for t in range(prev + 1, len(res))):
        return None
    return x


def solve_in_lattice(B: IntMatrix, v: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Integer ``c`` with ``B @ c == v``, or ``None`` if ``v`` is not in the column lattice."""
    if len(v) != B.nrows:
        raise ValueError(f"vector of length {len(v)} against lattice in Z^{B.nrows}")
    cols, ucols, piv = _hnf_columns([list(c) for c in B.columns()], B.nrows, track=True)
    x = _solve_hnf(cols, piv, v)
    if x is None:
        return None
    n = B.ncols
    c = [0] * n
    for j, xj in enumerate(x):
        if xj:
            u = ucols[j]
            for t in range(n):
                if u[t]:
                    c[t] += xj * u[t]
    return tuple(c)


class _Membership:
    """Reusable membership oracle for one lattice (HNF computed once)."""

    def __init__(self, B: IntMatrix):
        self.nrows = B.nrows
        self.cols, _, self.piv = _hnf_columns([list(c) for c in B.columns()], B.nrows, track=False)

    def coords(self, v: Sequence[int]) -> Optional[list[int]]:
        return _solve_hnf(self.cols, self.piv, v)

    def __contains__(self, v: Sequence[int]) -> bool:
        return _solve_hnf(self.cols, self.piv, v) is not None


def in_lattice(B: IntMatrix, v: Sequence[int]) -> bool:
    if len(v) != B.nrows:
        raise ValueError(f"vector of length {len(v)} against lattice in Z^{B.nrows}")
    return v in _Membership(B)


def same_lattice(A: IntMatrix, B: IntMatrix) -> bool:
    """True when the two column spans coincide."""
    return A.nrows == B.nrows and lattice_basis(A) == lattice_basis(B)


def lattice_index(Lsup: IntMatrix, Lsub: IntMatrix) -> float | int:
    """Index ``[Lsup : Lsub]``; ``math.inf`` when the ranks differ.

    Raises :class:`LatticeMembershipError` naming the first column of
    ``Lsub`` that is not in ``Lsup``.
    """
    if Lsup.nrows != Lsub.nrows:
        raise ValueError("lattices live in different ambient spaces")
    oracle = _Membership(Lsup)
    coords = []
    for j, col in enumerate(Lsub.columns()):
        x = oracle.coords(col)
        if x is None:
            raise LatticeMembershipError(f"column {j} of the sublattice is not in the superlattice", column=j)
        coords.append(x)
    k = len(oracle.piv)
    C = IntMatrix.from_columns(coords, nrows=k) if coords else IntMatrix.zeros(k, 0)
    factors = snf(C).factors
    if len(factors) < k:
        return math.inf
    return math.prod(factors)
