"""Exact rational and integer linear algebra.

Scalars are :class:`fractions.Fraction`.  Matrices are small immutable
row-major tables; the heavy elimination is delegated to :mod:`.kernels`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from . import kernels

ExactScalar = Fraction
ExactVector = tuple[Fraction, ...]


def to_scalar(x: int | Fraction | str) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class ExactMatrix:
    """Dense matrix with exact rational entries."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Iterable[Iterable[int | Fraction]], ncols: int | None = None):
        data = tuple(tuple(to_scalar(x) for x in r) for r in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        self.rows: tuple[ExactVector, ...] = data
        self.ncols = ncols

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, m: int, n: int) -> ExactMatrix:
        return cls([[0] * n for _ in range(m)], n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), self.ncols)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        return self.rows[ij[0]][ij[1]]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ExactMatrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.ncols, self.rows))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows)
        return f"ExactMatrix([{body}])"

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(zip(*self.rows), self.nrows) if self.rows else ExactMatrix([], 0)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        return ExactMatrix(
            [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self.rows],
            other.ncols,
        )

    def apply(self, v: Sequence[Fraction]) -> ExactVector:
        if len(v) != self.ncols:
            raise ValueError("shape mismatch")
        return tuple(sum((a * b for a, b in zip(r, v)), Fraction(0)) for r in self.rows)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.rows for x in r)

    def to_int_rows(self) -> list[list[int]]:
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return [[int(x) for x in r] for r in self.rows]

    def rank(self) -> int:
        return len(_echelon_q(self.rows, self.ncols)[1])

    def inverse(self) -> ExactMatrix:
        n = self.nrows
        if n != self.ncols:
            raise ValueError("matrix is not square")
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
        rref, piv = _echelon_q(aug, 2 * n)
        if piv[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        return ExactMatrix([r[n:] for r in rref[:n]], n)


def _scale_to_int(row: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in row:
        den = lcm(den, x.denominator)
    return [int(x * den) for x in row]


def _echelon_q(rows: Sequence[Sequence[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Rational RREF via the fraction-free integer kernel."""
    int_rows = [_scale_to_int(r) for r in rows if any(r)]
    basis, piv = kernels.echelon(int_rows, ncols)
    out = []
    for r, p in zip(basis, piv):
        c = r[p]
        out.append([Fraction(x, c) for x in r])
    return out, piv


def rref(A: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    rows, piv = _echelon_q(A.rows, A.ncols)
    return ExactMatrix(rows, A.ncols), piv


def rational_kernel(A: ExactMatrix) -> list[ExactVector]:
    """Basis of ``{x : A x = 0}``, returned in reduced row echelon form."""
    n = A.ncols
    rows, piv = _echelon_q(A.rows, n)
    pivset = set(piv)
    vecs = []
    for f in range(n):
        if f in pivset:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, p in zip(rows, piv):
            v[p] = -r[f]
        vecs.append(v)
    if not vecs:
        return []
    red, _ = _echelon_q(vecs, n)
    return [tuple(r) for r in red]


# --- integer normal forms -------------------------------------------------


@dataclass(frozen=True)
class SmithDecomposition:
    U: ExactMatrix
    D: ExactMatrix
    V: ExactMatrix
    Vinv: ExactMatrix

    @property
    def diagonal(self) -> list[int]:
        m, n = self.D.shape
        return [int(self.D[i, i]) for i in range(min(m, n))]


def _ident(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: ExactMatrix) -> SmithDecomposition:
    """Return ``U, D, V`` with ``U A V = D`` and a divisibility chain on ``D``.

    Pivots are chosen by smallest nonzero absolute value.  ``Vinv`` is the
    inverse of ``V``, tracked alongside so callers need not invert.
    """
    M = A.to_int_rows()
    m, n = A.shape
    U, V, Vi = _ident(m), _ident(n), _ident(n)

    def swap_rows(i: int, j: int) -> None:
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i: int, j: int) -> None:
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst: int, src: int, q: int) -> None:  # row_dst += q * row_src
        M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst: int, src: int, q: int) -> None:  # col_dst += q * col_src
        for row in M:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        # inverse of the column op acts on rows of Vinv: row_src -= q * row_dst
        Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    def negate_row(i: int) -> None:
        M[i] = [-a for a in M[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    while t < min(m, n):
        entries = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n) if M[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = M[t][t]
            dirty = False
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // p))
                    if M[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // p))
                    if M[t][j]:
                        dirty = True
            if not dirty:
                # enforce divisibility of the remaining block by the pivot
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                add_row(t, bad[0], 1)
                continue
            entries = [(abs(M[i][t]), i, t) for i in range(t, m) if M[i][t]]
            entries += [(abs(M[t][j]), t, j) for j in range(t, n) if M[t][j]]
            _, pi, pj = min(entries)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
        if M[t][t] < 0:
            negate_row(t)
        t += 1
    return SmithDecomposition(
        ExactMatrix(U, m), ExactMatrix(M, n), ExactMatrix(V, n), ExactMatrix(Vi, n)
    )


def hermite_normal_form(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix (zero rows dropped).

    Pivots are positive and entries above each pivot are reduced into
    ``[0, pivot)``.
    """
    M = [list(r) for r in rows if any(r)]
    out: list[list[int]] = []
    for col in range(ncols):
        active = [r for r in M if r[col]]
        rest = [r for r in M if not r[col]]
        if not active:
            continue
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[col] // piv[col]
                r2 = [a - q * b for a, b in zip(r, piv)]
                if r2[col]:
                    nxt.append(r2)
                elif any(r2):
                    rest.append(r2)
            active = nxt
        piv = active[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        for k, r in enumerate(out):
            q = r[col] // piv[col]
            if q:
                out[k] = [a - q * b for a, b in zip(r, piv)]
        out.append(piv)
        M = rest
    return out


def integer_saturation_basis(L: Sequence[Sequence[int | Fraction]]) -> list[tuple[int, ...]]:
    """Integer basis of ``span_Q(L) ∩ Z^n`` in Hermite normal form."""
    if not L:
        return []
    n = len(L[0])
    B = [_scale_to_int([to_scalar(x) for x in v]) for v in L]
    k = len(B)
    if len(kernels.echelon([list(r) for r in B], n)[1]) != k:
        raise ValueError("not independent")
    snf = smith_normal_form(ExactMatrix(B, n))
    # rows of D·Vinv span the same space; the first k rows of Vinv are primitive
    basis = [[int(x) for x in snf.Vinv.rows[i]] for i in range(k)]
    return [tuple(r) for r in hermite_normal_form(basis, n)]


def in_rational_span(v: Sequence[Fraction], L: Sequence[Sequence[Fraction]]) -> bool:
    n = len(v)
    if not L:
        return not any(v)
    r0 = len(_echelon_q(L, n)[1])
    return len(_echelon_q(list(L) + [v], n)[1]) == r0


def solve_in_span(v: Sequence[Fraction], L: Sequence[Sequence[Fraction]]) -> list[Fraction] | None:
    """Coefficients ``c`` with ``sum c_i L_i = v`` or ``None``."""
    k = len(L)
    if k == 0:
        return [] if not any(v) else None
    n = len(v)
    # columns are the L_i; solve the augmented system
    aug = [[L[i][j] for i in range(k)] + [to_scalar(v[j])] for j in range(n)]
    rows, piv = _echelon_q(aug, k + 1)
    if k in piv:
        return None
    sol = [Fraction(0)] * k
    for r, p in zip(rows, piv):
        sol[p] = r[k]
    return sol


__all__ = [
    "ExactScalar",
    "ExactVector",
    "ExactMatrix",
    "SmithDecomposition",
    "rref",
    "rational_kernel",
    "smith_normal_form",
    "hermite_normal_form",
    "integer_saturation_basis",
    "in_rational_span",
    "solve_in_span",
]
