"""Pure-Python versions of the hot kernels.

Polynomials are dicts from packed monomials (8 bits per variable, slot 0 in
the low byte) to nonzero Python ints.  Matrices are lists of integer rows.
"""

from __future__ import annotations

from math import gcd

BACKEND = "python"


def poly_mul(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    if len(a) < len(b):
        a, b = b, a
    out: dict[int, int] = {}
    get = out.get
    for kb, cb in b.items():
        for ka, ca in a.items():
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def poly_lincomb(a: dict[int, int], ca: int, b: dict[int, int], cb: int) -> dict[int, int]:
    """Return ``ca*a + cb*b``."""
    out = {k: ca * c for k, c in a.items()} if ca != 1 else dict(a)
    get = out.get
    for k, c in b.items():
        out[k] = get(k, 0) + cb * c
    return {k: c for k, c in out.items() if c}


def _primitive(row: list[int], lead: int) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if row[lead] < 0:
        g = -g
    if g not in (0, 1):
        row = [x // g for x in row]
    return row


def echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free reduced row echelon form over the integers.

    Each returned row is primitive with a positive pivot, and every pivot
    column is zero outside its own row.  Dividing row ``i`` by its pivot
    entry gives the rational RREF.
    """
    basis: list[list[int]] = []
    pivots: list[int] = []
    for raw in rows:
        row = list(raw)
        for prow, p in zip(basis, pivots):
            x = row[p]
            if x:
                y = prow[p]
                g = gcd(x, y)
                m1, m2 = y // g, x // g
                row = [m1 * u - m2 * v for u, v in zip(row, prow)]
        lead = next((j for j in range(ncols) if row[j]), -1)
        if lead < 0:
            continue
        row = _primitive(row, lead)
        for i, prow in enumerate(basis):
            x = prow[lead]
            if x:
                y = row[lead]
                g = gcd(x, y)
                m1, m2 = y // g, x // g
                basis[i] = _primitive([m1 * u - m2 * v for u, v in zip(prow, row)], pivots[i])
        basis.append(row)
        pivots.append(lead)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [basis[i] for i in order], [pivots[i] for i in order]
