# cython: language_level=3, boundscheck=False, wraparound=False
# distutils: language = c++
"""Compiled hot kernels; same contracts as ``_purekernels``.

``poly_mul`` runs in machine integers when packed keys fit in 64 bits and
the coefficient bound rules out overflow, and falls back to Python integers
otherwise.
"""

from libc.stdint cimport int64_t, uint64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from cython.operator cimport dereference as deref, preincrement as inc

from math import gcd

from . import _purekernels as _pure

BACKEND = "cython"

cdef object _KEY_LIMIT = 1 << 64
cdef object _COEF_LIMIT = 1 << 62


cdef inline object _absmax(dict d):
    cdef object m = 0
    cdef object v
    for v in d.values():
        if v > m:
            m = v
        elif -v > m:
            m = -v
    return m


def poly_mul(dict a, dict b):
    if len(a) < len(b):
        a, b = b, a
    if not a or not b:
        return {}
    if max(a) + max(b) >= _KEY_LIMIT or _absmax(a) * _absmax(b) * len(b) >= _COEF_LIMIT:
        return _pure.poly_mul(a, b)
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    cdef vector[uint64_t] ka, kb
    cdef vector[int64_t] ca, cb
    ka.reserve(na); ca.reserve(na); kb.reserve(nb); cb.reserve(nb)
    for k, c in a.items():
        ka.push_back(k)
        ca.push_back(c)
    for k, c in b.items():
        kb.push_back(k)
        cb.push_back(c)
    cdef unordered_map[uint64_t, int64_t] acc
    acc.reserve(na * nb if na * nb < 1 << 20 else 1 << 20)
    cdef uint64_t kbj
    cdef int64_t cbj
    for j in range(nb):
        kbj = kb[j]
        cbj = cb[j]
        for i in range(na):
            acc[ka[i] + kbj] += ca[i] * cbj
    out = {}
    cdef unordered_map[uint64_t, int64_t].iterator it = acc.begin()
    while it != acc.end():
        if deref(it).second != 0:
            out[deref(it).first] = deref(it).second
        inc(it)
    return out


def poly_lincomb(dict a, object ca, dict b, object cb):
    """Return ``ca*a + cb*b``."""
    cdef dict out
    if ca == 1:
        out = dict(a)
    else:
        out = {k: ca * c for k, c in a.items()}
    get = out.get
    for k, c in b.items():
        out[k] = get(k, 0) + cb * c
    return {k: c for k, c in out.items() if c}


cdef list _primitive(list row, Py_ssize_t lead):
    cdef object g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if row[lead] < 0:
        g = -g
    if g != 0 and g != 1:
        row = [x // g for x in row]
    return row


cdef list _combine(list row, list prow, Py_ssize_t p):
    cdef object x = row[p], y = prow[p]
    cdef object g = gcd(x, y)
    cdef object m1 = y // g, m2 = x // g
    cdef Py_ssize_t k, n = len(row)
    cdef list out = [None] * n
    for k in range(n):
        out[k] = m1 * row[k] - m2 * prow[k]
    return out


def echelon(rows, Py_ssize_t ncols):
    """Fraction-free reduced row echelon form over the integers."""
    cdef list basis = []
    cdef list pivots = []
    cdef list row
    cdef Py_ssize_t lead, j, i, p
    for raw in rows:
        row = list(raw)
        for i in range(len(basis)):
            p = pivots[i]
            if row[p]:
                row = _combine(row, basis[i], p)
        lead = -1
        for j in range(ncols):
            if row[j]:
                lead = j
                break
        if lead < 0:
            continue
        row = _primitive(row, lead)
        for i in range(len(basis)):
            if basis[i][lead]:
                basis[i] = _primitive(_combine(basis[i], row, lead), pivots[i])
        basis.append(row)
        pivots.append(lead)
    order = sorted(range(len(pivots)), key=pivots.__getitem__)
    return [basis[i] for i in order], [pivots[i] for i in order]
