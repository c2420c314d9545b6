"""Cap products of weight polynomials with fibered and vertical Schubert classes.

Each monomial is peeled one linear factor at a time; the remaining factor is
capped against the single-deletion covers of the word.  With ``x`` the
peeled factor, ``u'`` a cover of ``u`` and ``h`` its reflection coroot::

    V(1, e) = 1,   V(c, u) = 0 for nonempty u
    V(g x, u) = - sum_{(u', h)} (u' x)(h) V(g, u')
    F(g x, u) = - (u x)(z) V(g, u) - sum_{(u', h)} (u' x)(h) F(g, u')

``V`` is the vertical cap against ``[X_u]`` and ``F`` the fibered cap
against ``[bX_u]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .bruhat import WeylWord, deletions, is_admissible
from .mpoly import MultiPoly
from .rootdata import Coweight

Mode = Literal["fibered", "vertical"]


@dataclass(frozen=True)
class CapQuery:
    polynomial: MultiPoly
    word: WeylWord
    coweight: Coweight | None = None
    mode: Mode = "fibered"

    @property
    def system(self):
        return self.word.system

    def validate(self) -> None:
        f = self.polynomial
        if f.system is None:
            raise ValueError("cap needs a root-system polynomial")
        if f.system != self.word.system or (self.coweight is not None and self.coweight.system != f.system):
            raise ValueError("mixed root systems")
        if f.has_equivariant():
            raise ValueError("polynomial contains the equivariant variable")
        if not f.is_homogeneous():
            raise ValueError("polynomial is not homogeneous")
        adm = is_admissible(self.word)
        if not adm:
            raise ValueError(f"word {self.word} is not admissible: {adm.reason}")
        want = len(self.word) + (1 if self.mode == "fibered" else 0)
        if self.mode not in ("fibered", "vertical"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "fibered" and self.coweight is None:
            raise ValueError("fibered caps need a coweight")
        if not f.is_zero() and f.degree() != want:
            raise ValueError(
                f"degree {f.degree()} does not match word length {len(self.word)} in {self.mode} mode"
            )


class _Engine:
    """Memoized recursion for one polynomial space and one coweight."""

    def __init__(self, f: MultiPoly, z: Coweight | None):
        self.sys = f.system
        self.f = f
        B = self.sys.bases[f.basis]
        # basis variables as zeta-coordinate vectors
        self.var_zeta = [tuple(B.zeta_of[s]) for s in B.coords]
        self.z = z
        self._img: dict[tuple[tuple[int, ...], int], tuple[Fraction, ...]] = {}
        self._cov: dict[tuple[int, ...], list[tuple[tuple[int, ...], tuple[Fraction, ...]]]] = {}
        self._v: dict[tuple[tuple[int, ...], tuple[int, ...]], Fraction] = {}
        self._b: dict[tuple[tuple[int, ...], tuple[int, ...]], Fraction] = {}

    def image(self, u: tuple[int, ...], k: int) -> tuple[Fraction, ...]:
        key = (u, k)
        v = self._img.get(key)
        if v is None:
            if not u:
                v = self.var_zeta[k]
            else:
                v = self.sys.reflect_zeta(u[0], self.image(u[1:], k))
            self._img[key] = v
        return v

    def covers(self, u: tuple[int, ...]):
        c = self._cov.get(u)
        if c is None:
            c = [(d.subword.letters, d.reflection_coroot.coords) for d in deletions(WeylWord(self.sys, u))]
            self._cov[u] = c
        return c

    @staticmethod
    def _pair(x: tuple[Fraction, ...], h: tuple[Fraction, ...]) -> Fraction:
        return sum((a * b for a, b in zip(x, h) if a and b), Fraction(0))

    @staticmethod
    def _peel(m: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
        k = next(i for i, e in enumerate(m) if e)
        rest = list(m)
        rest[k] -= 1
        return k, tuple(rest)

    def vertical(self, m: tuple[int, ...], u: tuple[int, ...]) -> Fraction:
        if sum(m) != len(u):
            return Fraction(0)
        if not u:
            return Fraction(1)
        key = (u, m)
        if key in self._v:
            return self._v[key]
        k, g = self._peel(m)
        total = Fraction(0)
        for up, h in self.covers(u):
            c = self._pair(self.image(up, k), h)
            if c:
                total -= c * self.vertical(g, up)
        self._v[key] = total
        return total

    def fibered(self, m: tuple[int, ...], u: tuple[int, ...]) -> Fraction:
        if sum(m) != len(u) + 1:
            return Fraction(0)
        key = (u, m)
        if key in self._b:
            return self._b[key]
        k, g = self._peel(m)
        total = Fraction(0)
        cz = self._pair(self.image(u, k), self.z.coords)
        if cz:
            total -= cz * self.vertical(g, u)
        for up, h in self.covers(u):
            c = self._pair(self.image(up, k), h)
            if c:
                total -= c * self.fibered(g, up)
        self._b[key] = total
        return total


def _prepare(f: MultiPoly) -> MultiPoly:
    pref = f.system.computation_basis
    return f if f.basis == pref else f.to_basis(pref)


def cap(q: CapQuery) -> Fraction:
    """Exact value of the cap product described by ``q``."""
    q.validate()
    f = _prepare(q.polynomial)
    eng = _Engine(f, q.coweight)
    u = q.word.letters
    total = Fraction(0)
    for exps, c in f.terms.items():
        m = exps[:-1]
        total += c * (eng.fibered(m, u) if q.mode == "fibered" else eng.vertical(m, u))
    return total


def cap_fibered(f: MultiPoly, word: WeylWord, z: Coweight) -> Fraction:
    return cap(CapQuery(f, word, z, "fibered"))


def cap_vertical(f: MultiPoly, word: WeylWord) -> Fraction:
    return cap(CapQuery(f, word, None, "vertical"))


def cap_monomial_ordered(factors: list[int], word: WeylWord, z: Coweight | None, f_space: MultiPoly, mode: Mode = "fibered") -> Fraction:
    """Cap of a product of basis variables peeled in the given order (last first).

    Used to test that the result does not depend on the factor ordering.
    """
    sys_ = word.system
    B = sys_.bases[f_space.basis]
    var_zeta = [tuple(B.zeta_of[s]) for s in B.coords]

    def img(u: tuple[int, ...], k: int) -> tuple[Fraction, ...]:
        v = var_zeta[k]
        for j in reversed(u):
            v = sys_.reflect_zeta(j, v)
        return v

    def pair(x, h) -> Fraction:
        return sum((a * b for a, b in zip(x, h)), Fraction(0))

    def V(fs: tuple[int, ...], u: tuple[int, ...]) -> Fraction:
        if len(fs) != len(u):
            return Fraction(0)
        if not u:
            return Fraction(1)
        k, g = fs[-1], fs[:-1]
        return -sum(
            (pair(img(d.subword.letters, k), d.reflection_coroot.coords) * V(g, d.subword.letters)
             for d in deletions(WeylWord(sys_, u))),
            Fraction(0),
        )

    def F(fs: tuple[int, ...], u: tuple[int, ...]) -> Fraction:
        k, g = fs[-1], fs[:-1]
        out = -pair(img(u, k), z.coords) * V(g, u)
        for d in deletions(WeylWord(sys_, u)):
            out -= pair(img(d.subword.letters, k), d.reflection_coroot.coords) * F(g, d.subword.letters)
        return out

    fs = tuple(factors)
    return F(fs, word.letters) if mode == "fibered" else V(fs, word.letters)


__all__ = ["CapQuery", "cap", "cap_fibered", "cap_vertical", "cap_monomial_ordered"]
