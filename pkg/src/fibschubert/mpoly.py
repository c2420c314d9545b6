"""Multivariate polynomials with exact rational coefficients.

A polynomial lives in a :class:`PolySpace`: either the coordinate variables
of a registered basis of a root system followed by the equivariant variable,
or a free list of named variables.  Terms are kept as integer numerators
over one common positive denominator, with monomials packed 8 bits per
variable so that multiplying monomials is integer addition.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations_with_replacement
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from . import kernels
from .exactalg import ExactMatrix, rational_kernel
from .rootdata import Coweight, RootSystem, Weight, pair_with_coroot

BITS = 8
MASK = (1 << BITS) - 1
MAX_DEGREE = MASK


@dataclass(frozen=True)
class PolySpace:
    names: tuple[str, ...]
    system: RootSystem | None = None
    basis: str | None = None

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def equivariant_index(self) -> int | None:
        return self.nvars - 1 if self.system is not None else None

    def index(self, name: str) -> int:
        return self.names.index(name)

    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError("exponent vector has the wrong length")
        key = 0
        for i, e in enumerate(exps):
            if e < 0 or e > MAX_DEGREE:
                raise ValueError("exponent out of range")
            key |= e << (BITS * i)
        return key

    def unpack(self, key: int) -> tuple[int, ...]:
        return tuple((key >> (BITS * i)) & MASK for i in range(self.nvars))


@lru_cache(maxsize=None)
def space_for(system: RootSystem, basis: str) -> PolySpace:
    B = system.bases[basis]
    eq = "t0" if basis == "t" else "e0"
    return PolySpace(tuple(B.coords) + (eq,), system, basis)


def free_space(names: Sequence[str]) -> PolySpace:
    return PolySpace(tuple(names))


def _degree_of_key(key: int) -> int:
    d = 0
    while key:
        d += key & MASK
        key >>= BITS
    return d


class MultiPoly:
    """Immutable polynomial; ``num[key] / den`` is the coefficient of ``key``."""

    __slots__ = ("space", "_num", "_den", "_deg", "__weakref__")

    def __init__(self, space: PolySpace, num: Mapping[int, int], den: int = 1, *, _normalized: bool = False):
        self.space = space
        self._deg: int | None = None
        if _normalized:
            self._num = dict(num)
            self._den = den
            return
        num = {k: c for k, c in num.items() if c}
        if den < 0:
            num = {k: -c for k, c in num.items()}
            den = -den
        if not num:
            den = 1
        elif den != 1:
            g = den
            for c in num.values():
                g = gcd(g, c)
                if g == 1:
                    break
            if g != 1:
                num = {k: c // g for k, c in num.items()}
                den //= g
        self._num = num
        self._den = den

    # --- construction ---------------------------------------------------
    @classmethod
    def from_terms(cls, space: PolySpace, terms: Mapping[Sequence[int], int | Fraction]) -> MultiPoly:
        fr = {space.pack(e): Fraction(c) for e, c in terms.items()}
        den = 1
        for c in fr.values():
            den = lcm(den, c.denominator)
        return cls(space, {k: int(c * den) for k, c in fr.items()}, den)

    @classmethod
    def constant(cls, space: PolySpace, c: int | Fraction) -> MultiPoly:
        c = Fraction(c)
        return cls(space, {0: c.numerator}, c.denominator)

    @classmethod
    def zero(cls, space: PolySpace) -> MultiPoly:
        return cls(space, {}, 1)

    @classmethod
    def variable(cls, space: PolySpace, i: int) -> MultiPoly:
        return cls(space, {1 << (BITS * i): 1}, 1)

    @classmethod
    def linear(cls, space: PolySpace, coeffs: Sequence[int | Fraction]) -> MultiPoly:
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = lcm(den, c.denominator)
        return cls(space, {1 << (BITS * i): int(c * den) for i, c in enumerate(fr) if c}, den)

    @classmethod
    def from_weight(cls, w: Weight, basis: str | None = None) -> MultiPoly:
        basis = basis or w.basis
        sp = space_for(w.system, basis)
        return cls.linear(sp, list(w.to_basis(basis).coords) + [0])

    @classmethod
    def equivariant(cls, space: PolySpace) -> MultiPoly:
        if space.equivariant_index is None:
            raise ValueError("space has no equivariant variable")
        return cls.variable(space, space.equivariant_index)

    # --- inspection -----------------------------------------------------
    @property
    def system(self) -> RootSystem | None:
        return self.space.system

    @property
    def basis(self) -> str | None:
        return self.space.basis

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return {self.space.unpack(k): Fraction(c, self._den) for k, c in self._num.items()}

    def items_packed(self) -> Iterable[tuple[int, Fraction]]:
        for k, c in self._num.items():
            yield k, Fraction(c, self._den)

    def __len__(self) -> int:
        return len(self._num)

    def is_zero(self) -> bool:
        return not self._num

    def __bool__(self) -> bool:
        return bool(self._num)

    def is_constant(self) -> bool:
        return all(k == 0 for k in self._num)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return Fraction(self._num.get(0, 0), self._den)

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        if self._deg is None:
            self._deg = max((_degree_of_key(k) for k in self._num), default=-1)
        return self._deg

    def degrees(self) -> set[int]:
        return {_degree_of_key(k) for k in self._num}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree_in(self, i: int) -> int:
        sh = BITS * i
        return max(((k >> sh) & MASK for k in self._num), default=-1)

    def coefficient_of(self, exps: Sequence[int]) -> Fraction:
        return Fraction(self._num.get(self.space.pack(exps), 0), self._den)

    def content_integral(self) -> bool:
        return self._den == 1

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.space, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.space == other.space and self._den == other._den and self._num == other._num

    def __hash__(self) -> int:
        return hash((self.space, self._den, frozenset(self._num.items())))

    # --- arithmetic -----------------------------------------------------
    def _coerce(self, other: MultiPoly | int | Fraction) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.space != self.space:
                raise ValueError("polynomials live in different spaces")
            return other
        return MultiPoly.constant(self.space, other)

    def __add__(self, other: MultiPoly | int | Fraction) -> MultiPoly:
        o = self._coerce(other)
        den = lcm(self._den, o._den)
        return MultiPoly(self.space, kernels.poly_lincomb(self._num, den // self._den, o._num, den // o._den), den)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.space, {k: -c for k, c in self._num.items()}, self._den, _normalized=True)

    def __sub__(self, other: MultiPoly | int | Fraction) -> MultiPoly:
        o = self._coerce(other)
        den = lcm(self._den, o._den)
        return MultiPoly(self.space, kernels.poly_lincomb(self._num, den // self._den, o._num, -(den // o._den)), den)

    def __rsub__(self, other: int | Fraction) -> MultiPoly:
        return (-self) + other

    def scale(self, c: int | Fraction) -> MultiPoly:
        c = Fraction(c)
        if not c:
            return MultiPoly.zero(self.space)
        return MultiPoly(self.space, {k: v * c.numerator for k, v in self._num.items()}, self._den * c.denominator)

    def __mul__(self, other: MultiPoly | int | Fraction) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        o = self._coerce(other)
        if self._num and o._num and self.degree() + o.degree() > MAX_DEGREE:
            raise OverflowError("degree exceeds the packed-monomial range")
        return MultiPoly(self.space, kernels.poly_mul(self._num, o._num), self._den * o._den)

    __rmul__ = __mul__

    def __truediv__(self, c: int | Fraction) -> MultiPoly:
        return self.scale(1 / Fraction(c))

    def __pow__(self, e: int) -> MultiPoly:
        if e < 0:
            raise ValueError("negative exponent")
        out = MultiPoly.constant(self.space, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    # --- evaluation and substitution -----------------------------------
    def evaluate(self, values: Sequence[int | Fraction]) -> Fraction:
        vals = [Fraction(v) for v in values]
        total = Fraction(0)
        for key, c in self._num.items():
            t = Fraction(c)
            for i, e in enumerate(self.space.unpack(key)):
                if e:
                    t *= vals[i] ** e
            total += t
        return total / self._den

    def substitute(self, images: Sequence[MultiPoly], target: PolySpace | None = None) -> MultiPoly:
        """Ring morphism sending variable ``i`` to ``images[i]``."""
        if len(images) != self.space.nvars:
            raise ValueError("one image per variable is required")
        target = target or images[0].space
        powers: list[list[MultiPoly]] = [[MultiPoly.constant(target, 1)] for _ in images]
        # bucket by the monomial with the first variable stripped to share work
        acc_num: dict[int, int] = {}
        acc_den = 1
        for key, c in self._num.items():
            exps = self.space.unpack(key)
            term: MultiPoly | None = None
            for i, e in enumerate(exps):
                if not e:
                    continue
                pw = powers[i]
                while len(pw) <= e:
                    pw.append(pw[-1] * images[i])
                term = pw[e] if term is None else term * pw[e]
            if term is None:
                term = powers[0][0]
            # acc += c * term
            den = lcm(acc_den, term._den)
            acc_num = kernels.poly_lincomb(acc_num, den // acc_den, term._num, c * (den // term._den))
            acc_den = den
        return MultiPoly(target, acc_num, acc_den * self._den)

    def linear_substitute(self, matrix: Sequence[Sequence[Fraction]], target: PolySpace | None = None) -> MultiPoly:
        """Substitute ``x_k -> sum_j matrix[j][k] x_j`` on the first ``len(matrix)`` variables."""
        target = target or self.space
        r = len(matrix)
        imgs = []
        for k in range(self.space.nvars):
            if k < r:
                imgs.append(MultiPoly.linear(target, [matrix[j][k] for j in range(r)] + [0] * (target.nvars - r)))
            else:
                idx = target.nvars - (self.space.nvars - k)
                imgs.append(MultiPoly.variable(target, idx))
        return self.substitute(imgs, target)

    def has_equivariant(self) -> bool:
        i = self.space.equivariant_index
        return i is not None and self.degree_in(i) > 0

    # --- exact division -------------------------------------------------
    def divide_linear(self, L: MultiPoly) -> MultiPoly | None:
        """Exact quotient by a linear form, or ``None`` if it does not divide."""
        lin = L.terms
        if any(sum(e) != 1 for e in lin):
            raise ValueError("divisor is not a linear form")
        if not self._num:
            return MultiPoly.zero(self.space)
        v = max(e.index(1) for e in lin)  # pivot variable
        a = lin[tuple(int(i == v) for i in range(self.space.nvars))]
        M = L - MultiPoly.variable(self.space, v).scale(a)
        # split self by powers of x_v
        sh = BITS * v
        parts: dict[int, dict[int, int]] = {}
        for k, c in self._num.items():
            e = (k >> sh) & MASK
            parts.setdefault(e, {})[k & ~(MASK << sh)] = c
        K = max(parts)
        Q: dict[int, MultiPoly] = {}
        cur = MultiPoly.zero(self.space)  # Q_k
        for k in range(K, 0, -1):
            Pk = MultiPoly(self.space, parts.get(k, {}), self._den)
            cur = (Pk - M * cur).scale(1 / a)  # Q_{k-1}
            Q[k - 1] = cur
        P0 = MultiPoly(self.space, parts.get(0, {}), self._den)
        if not (P0 - M * cur).is_zero():
            return None
        out = MultiPoly.zero(self.space)
        xv = MultiPoly.variable(self.space, v)
        for k, q in Q.items():
            if q:
                out = out + q * (xv ** k)
        return out

    def leading_key(self) -> int:
        return max(self._num, key=lambda k: _glex_key(self.space, k))

    def divmod_poly(self, g: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
        """Multivariate division by ``g`` in graded-lex order."""
        if g.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lk = g.leading_key()
        lc = Fraction(g._num[lk], g._den)
        lexp = self.space.unpack(lk)
        q = MultiPoly.zero(self.space)
        r = MultiPoly.zero(self.space)
        p = self
        while p:
            k = p.leading_key()
            e = self.space.unpack(k)
            c = Fraction(p._num[k], p._den)
            if all(a >= b for a, b in zip(e, lexp)):
                mono = MultiPoly.from_terms(self.space, {tuple(a - b for a, b in zip(e, lexp)): c / lc})
                q = q + mono
                p = p - mono * g
            else:
                lead = MultiPoly.from_terms(self.space, {e: c})
                r = r + lead
                p = p - lead
        return q, r

    def exact_div(self, g: MultiPoly) -> MultiPoly | None:
        q, r = self.divmod_poly(g)
        return q if r.is_zero() else None

    # --- printing -------------------------------------------------------
    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        keys = sorted(self._num, key=lambda k: _glex_key(self.space, k), reverse=True)
        return [(self.space.unpack(k), Fraction(self._num[k], self._den)) for k in keys]

    def __str__(self) -> str:
        if not self._num:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                (n if e == 1 else f"{n}^{e}") for n, e in zip(self.space.names, exps) if e
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    # --- basis changes --------------------------------------------------
    def to_basis(self, basis: str) -> MultiPoly:
        sys_ = self.system
        if sys_ is None:
            raise ValueError("free polynomials have no basis")
        if basis == self.basis:
            return self
        old = sys_.bases[self.basis]
        new = sys_.bases[basis]
        # old coordinate symbol k written in new coordinates
        P = new.from_zeta @ old.to_zeta
        return self.linear_substitute(P.rows, space_for(sys_, basis))


def _glex_key(space: PolySpace, key: int) -> tuple:
    exps = space.unpack(key)
    return (sum(exps), exps)


# --- symmetric functions ----------------------------------------------------


def _as_linear(vars_: Sequence[Weight | MultiPoly], basis: str | None) -> list[MultiPoly]:
    out = []
    for v in vars_:
        if isinstance(v, Weight):
            out.append(MultiPoly.from_weight(v, basis))
        else:
            out.append(v if basis is None else v.to_basis(basis))
    return out


def elementary_symmetric(vars_: Sequence[Weight | MultiPoly], k: int, basis: str | None = None) -> MultiPoly:
    if k < 0:
        raise ValueError("k must be nonnegative")
    xs = _as_linear(vars_, basis)
    if not xs:
        raise ValueError("at least one variable is needed to fix the polynomial space")
    sp = xs[0].space
    E = [MultiPoly.constant(sp, 1)] + [MultiPoly.zero(sp)] * k
    for x in xs:
        for j in range(k, 0, -1):
            E[j] = E[j] + x * E[j - 1]
    return E[k]


def complete_symmetric(vars_: Sequence[Weight | MultiPoly], k: int, basis: str | None = None) -> MultiPoly:
    if k < 0:
        raise ValueError("k must be nonnegative")
    xs = _as_linear(vars_, basis)
    if not xs:
        raise ValueError("at least one variable is needed to fix the polynomial space")
    sp = xs[0].space
    H = [MultiPoly.constant(sp, 1)] + [MultiPoly.zero(sp)] * k
    for x in xs:
        for j in range(1, k + 1):
            H[j] = H[j] + x * H[j - 1]
    return H[k]


# --- Weyl group actions -----------------------------------------------------


def word_matrix(system: RootSystem, letters: Sequence[int], basis: str) -> ExactMatrix:
    """Matrix of ``s_{l_1} ... s_{l_m}`` on coordinate vectors of ``basis``."""
    M = ExactMatrix.identity(system.rank)
    for j in letters:
        M = M @ system.reflection_matrix(j, basis)
    return M


def weyl_act(word: object, f: MultiPoly) -> MultiPoly:
    """Apply a Weyl word (letters applied right to left) to ``f``.

    ``word`` is a :class:`~fibschubert.bruhat.WeylWord` or a letter sequence.
    """
    if f.system is None:
        raise ValueError("Weyl actions need a root-system polynomial")
    letters = tuple(getattr(word, "letters", word))
    if not letters:
        return f
    M = word_matrix(f.system, letters, f.basis)
    return f.linear_substitute(M.rows)


def equivariant_shift(f: MultiPoly, z: Coweight) -> MultiPoly:
    """Substitute ``x -> x + x(z) e0`` for every coordinate variable."""
    sys_ = f.system
    if sys_ is None:
        raise ValueError("equivariant shift needs a root-system polynomial")
    if f.has_equivariant():
        raise ValueError("polynomial already contains the equivariant variable")
    sp = f.space
    B = sys_.bases[f.basis]
    imgs = []
    for k, s in enumerate(B.coords):
        shift = pair_with_coroot(Weight(sys_, "zeta", B.zeta_of[s]), z)
        coeffs = [Fraction(0)] * sp.nvars
        coeffs[k] = Fraction(1)
        coeffs[-1] = shift
        imgs.append(MultiPoly.linear(sp, coeffs))
    imgs.append(MultiPoly.equivariant(sp))
    return f.substitute(imgs, sp)


def linear_eval(f: MultiPoly, z: Coweight) -> Fraction:
    """Value of a linear form (no equivariant part) at a coweight."""
    sys_ = f.system
    B = sys_.bases[f.basis]
    total = Fraction(0)
    for exps, c in f.terms.items():
        if sum(exps) != 1 or exps[-1]:
            raise ValueError("not a linear form in the weight variables")
        k = exps.index(1)
        total += c * pair_with_coroot(Weight(sys_, "zeta", B.zeta_of[B.coords[k]]), z)
    return total


# --- monomial spaces and invariants -----------------------------------------


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of the given degree in graded-lex descending order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def action_matrix(system: RootSystem, basis: str, letter: int, degree: int) -> tuple[list[tuple[int, ...]], list[list[Fraction]]]:
    """Matrix (rows indexed by image monomials) of ``s_letter`` on degree-``degree`` forms."""
    sp = space_for(system, basis)
    r = system.rank
    mons = monomials(r, degree)
    index = {m + (0,): i for i, m in enumerate(mons)}
    S = system.reflection_matrix(letter, basis).rows
    cols = []
    for m in mons:
        img = MultiPoly.from_terms(sp, {m + (0,): 1}).linear_substitute(S)
        col = [Fraction(0)] * len(mons)
        for e, c in img.terms.items():
            col[index[e]] = c
        cols.append(col)
    return mons, [list(row) for row in zip(*cols)]


def poly_from_vector(system: RootSystem, basis: str, mons: Sequence[tuple[int, ...]], v: Sequence[Fraction]) -> MultiPoly:
    sp = space_for(system, basis)
    return MultiPoly.from_terms(sp, {m + (0,): c for m, c in zip(mons, v) if c})


def vector_from_poly(f: MultiPoly, mons: Sequence[tuple[int, ...]]) -> list[Fraction]:
    t = f.terms
    known = set(mons)
    for e in t:
        if e[:-1] not in known or e[-1]:
            raise ValueError("polynomial has terms outside the monomial list")
    return [t.get(m + (0,), Fraction(0)) for m in mons]


def invariant_forms(system: RootSystem, basis: str, degree: int, letters: Iterable[int]) -> list[MultiPoly]:
    """Basis (RREF over monomials) of degree-``degree`` forms fixed by ``letters``."""
    rows: list[list[Fraction]] = []
    mons: list[tuple[int, ...]] = monomials(system.rank, degree)
    for j in letters:
        mons, A = action_matrix(system, basis, j, degree)
        for i, row in enumerate(A):
            row = list(row)
            row[i] -= 1
            if any(row):
                rows.append(row)
    ker = rational_kernel(ExactMatrix(rows, len(mons))) if rows else [
        tuple(Fraction(int(i == j)) for i in range(len(mons))) for j in range(len(mons))
    ]
    return [poly_from_vector(system, basis, mons, v) for v in ker]


def invariant_quadratic(system: RootSystem, basis: str = "zeta") -> MultiPoly:
    """The W-invariant quadratic form, normalized to leading coefficient 1."""
    inv = invariant_forms(system, basis, 2, range(1, system.rank + 1))
    if len(inv) != 1:
        raise ValueError(f"expected one invariant quadratic, found {len(inv)}")
    q = inv[0]
    lead = q.sorted_terms()[0][1]
    return q.scale(1 / lead)


# --- text grammar -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+/\d+|\d+)|([a-z]\d*)|([-+*^()]))")


class PolyParseError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"unexpected input at position {pos}: {text[pos:pos + 10]!r}")
        num, var, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif var is not None:
            out.append(("var", var))
        else:
            out.append(("op", op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def _resolve_basis(system: RootSystem, toks: Sequence[tuple[str, str]], basis: str | None) -> str:
    if basis:
        return basis
    for kind, v in toks:
        if kind == "var" and v not in ("e0", "t0"):
            return {"z": "zeta", "e": "eps", "t": "t"}.get(v[0], "zeta")
    return system.computation_basis


def parse_poly(text: str, system: RootSystem | None = None, basis: str | None = None, space: PolySpace | None = None) -> MultiPoly:
    """Parse the polynomial grammar.

    Variables ``z1..z8`` are fundamental weights, ``t1..t8`` the E-type
    t-variables (the last one is the distinguished ``t``), ``e1..e8`` the
    epsilon variables and ``e0`` (or ``t0``) the equivariant variable.
    A bare ``t`` is accepted as an alias for the distinguished t-variable.
    Mixed bases are allowed; everything is converted to ``basis``, which
    defaults to the basis of the first variable seen.
    """
    toks = _tokenize(text)
    if not toks:
        raise PolyParseError("empty polynomial")
    if space is None:
        if system is None:
            raise ValueError("a root system or a free space is required")
        basis = _resolve_basis(system, toks, basis)
        space = space_for(system, basis)
    sp = space
    cache: dict[str, MultiPoly] = {}

    def var(name: str) -> MultiPoly:
        if name in cache:
            return cache[name]
        if sp.system is None:
            if name not in sp.names:
                raise PolyParseError(f"unknown variable {name!r}")
            p = MultiPoly.variable(sp, sp.index(name))
        elif name in ("e0", "t0"):
            p = MultiPoly.equivariant(sp)
        else:
            if name == "t" and sp.system.family.startswith("E"):
                name = f"t{sp.system.rank + 1}"
            try:
                w = sp.system.symbol(name)
            except KeyError:
                raise PolyParseError(f"unknown variable {name!r} for {sp.system.name}") from None
            p = MultiPoly.from_weight(w, sp.basis)
        cache[name] = p
        return p

    pos = 0

    def peek() -> tuple[str, str] | None:
        return toks[pos] if pos < len(toks) else None

    def take(expected: str | None = None) -> tuple[str, str]:
        nonlocal pos
        if pos >= len(toks):
            raise PolyParseError("unexpected end of input")
        t = toks[pos]
        if expected is not None and t != ("op", expected):
            raise PolyParseError(f"expected {expected!r}, got {t[1]!r}")
        pos += 1
        return t

    def expr() -> MultiPoly:
        acc = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term() -> MultiPoly:
        acc = unary()
        while peek() == ("op", "*"):
            take()
            acc = acc * unary()
        return acc

    def unary() -> MultiPoly:
        t = peek()
        if t == ("op", "-"):
            take()
            return -unary()
        if t == ("op", "+"):
            take()
            return unary()
        return power()

    def power() -> MultiPoly:
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, v = take()
            if kind != "num" or "/" in v:
                raise PolyParseError("exponent must be a nonnegative integer")
            return base ** int(v)
        return base

    def atom() -> MultiPoly:
        kind, v = take()
        if kind == "num":
            return MultiPoly.constant(sp, Fraction(v))
        if kind == "var":
            return var(v)
        if v == "(":
            e = expr()
            take(")")
            return e
        raise PolyParseError(f"unexpected token {v!r}")

    result = expr()
    if pos != len(toks):
        raise PolyParseError(f"trailing input starting at {toks[pos][1]!r}")
    return result


def read_poly_text(text: str) -> str:
    """Strip ``#`` comments and join lines of a polynomial file."""
    return " ".join(line.split("#", 1)[0].strip() for line in text.splitlines()).strip()


def load_poly(path: str, system: RootSystem, basis: str | None = None) -> MultiPoly:
    with open(path, encoding="utf-8") as fh:
        return parse_poly(read_poly_text(fh.read()), system, basis)


__all__ = [
    "read_poly_text",
    "load_poly",
    "PolySpace",
    "MultiPoly",
    "space_for",
    "free_space",
    "elementary_symmetric",
    "complete_symmetric",
    "weyl_act",
    "word_matrix",
    "equivariant_shift",
    "linear_eval",
    "monomials",
    "action_matrix",
    "invariant_forms",
    "invariant_quadratic",
    "poly_from_vector",
    "vector_from_poly",
    "parse_poly",
    "PolyParseError",
]
