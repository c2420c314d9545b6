"""Fixed-point evaluation of integrals over fibered projective Schubert varieties.

For a projective chain ``alpha_(1), ..., alpha_(k)`` the fibered variety
``bX_w`` has ``2(k+1)`` torus-fixed points ``w_(j)(0)`` and ``w_(j)(inf)``.
The integral of ``kappa(f)`` is the sum of ``f|_p / e(p)`` over them, a
rational function that must reduce to a constant.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence

from .bruhat import WeylWord, named_subdiagram, projective_subdiagram_word
from .mpoly import MultiPoly, equivariant_shift, weyl_act
from .rootdata import Coweight, RootSystem, Weight

Pole = Literal["0", "inf"]


class NotConstantError(ValueError):
    pass


@dataclass(frozen=True)
class FixedPointDatum:
    j: int
    pole: Pole
    restricted_class: MultiPoly
    euler_class: tuple[MultiPoly, ...]

    @property
    def point(self) -> tuple[int, Pole]:
        return (self.j, self.pole)


@dataclass
class RationalFunctionSum:
    """Sum of ``numerator / prod(denominator factors)``; factors are linear forms."""

    summands: list[tuple[MultiPoly, tuple[MultiPoly, ...]]] = field(default_factory=list)

    def add(self, numerator: MultiPoly, factors: Sequence[MultiPoly]) -> None:
        for L in factors:
            if L.is_zero():
                raise ValueError("zero linear factor in a denominator")
            if L.degree() != 1 or not L.is_homogeneous():
                raise ValueError("denominator factors must be linear forms")
        self.summands.append((numerator, tuple(factors)))

    @staticmethod
    def product(factors: Sequence[MultiPoly], space) -> MultiPoly:
        out = MultiPoly.constant(space, 1)
        for L in factors:
            out = out * L
        return out

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for num, facs in self.summands:
            den = Fraction(1)
            for L in facs:
                v = L.evaluate(point)
                if not v:
                    raise ZeroDivisionError("point lies on a pole")
                den *= v
            total += num.evaluate(point) / den
        return total


# --- exact summation --------------------------------------------------------


def _normalize(L: MultiPoly) -> tuple[tuple[Fraction, ...], Fraction]:
    """Key of the primitive positive multiple of ``L`` and the scale ``L / key``."""
    coeffs = [Fraction(0)] * L.space.nvars
    for exps, c in L.terms.items():
        coeffs[exps.index(1)] = c
    lead = next(c for c in coeffs if c)
    return tuple(c / lead for c in coeffs), lead


class _Frac:
    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: Counter):
        self.num = num
        self.den = den


def _linear(space, key: tuple[Fraction, ...]) -> MultiPoly:
    return MultiPoly.linear(space, key)


def _cancel(fr: _Frac, space) -> _Frac:
    num, den = fr.num, Counter(fr.den)
    if num.is_zero():
        return _Frac(num, Counter())
    for key in list(den):
        L = _linear(space, key)
        while den[key]:
            q = num.divide_linear(L)
            if q is None:
                break
            num = q
            den[key] -= 1
        if not den[key]:
            del den[key]
    return _Frac(num, den)


def _add(a: _Frac, b: _Frac, space) -> _Frac:
    common = a.den | b.den
    na = a.num
    for key, m in (common - a.den).items():
        na = na * (_linear(space, key) ** m)
    nb = b.num
    for key, m in (common - b.den).items():
        nb = nb * (_linear(space, key) ** m)
    return _cancel(_Frac(na + nb, common), space)


def _reduce(S: RationalFunctionSum) -> _Frac:
    if not S.summands:
        raise ValueError("empty sum")
    space = S.summands[0][0].space
    acc = _Frac(MultiPoly.zero(space), Counter())
    for num, facs in S.summands:
        den: Counter = Counter()
        scale = Fraction(1)
        for L in facs:
            key, lead = _normalize(L)
            den[key] += 1
            scale *= lead
        acc = _add(acc, _cancel(_Frac(num.scale(1 / scale), den), space), space)
    return acc


def _random_points(S: RationalFunctionSum, count: int, seed: int) -> list[list[Fraction]]:
    rng = random.Random(seed)
    nvars = S.summands[0][0].space.nvars
    pts = []
    while len(pts) < count:
        p = [Fraction(rng.randint(-997, 997), rng.randint(1, 97)) for _ in range(nvars)]
        if all(L.evaluate(p) for _, facs in S.summands for L in facs):
            pts.append(p)
    return pts


def sum_polynomial(S: RationalFunctionSum) -> MultiPoly:
    """Exact sum, asserted to be a polynomial."""
    fr = _reduce(S)
    if fr.den:
        raise NotConstantError("sum is not a polynomial; likely wrong input data")
    return fr.num


def sum_constant(S: RationalFunctionSum, checks: int = 3, seed: int = 20240229) -> Fraction:
    """Exact constant value of ``S``, cross-checked at random rational points."""
    fr = _reduce(S)
    if fr.den or not fr.num.is_constant():
        raise NotConstantError("not a constant; likely wrong input data")
    value = fr.num.constant_value() if fr.num else Fraction(0)
    for p in _random_points(S, checks, seed):
        if S.evaluate(p) != value:
            raise NotConstantError("not a constant; likely wrong input data")
    return value


# --- fixed point data -------------------------------------------------------


def _chain(system: RootSystem, word: WeylWord) -> tuple[int, ...]:
    path = tuple(reversed(word.letters))
    if path:  # the empty chain gives the fibre over e alone
        projective_subdiagram_word(system, path[0], path)
    return path


def fixed_point_data(system: RootSystem, word: WeylWord, f: MultiPoly, z: Coweight) -> list[FixedPointDatum]:
    """Restricted classes and tangent weights at the ``2(k+1)`` fixed points."""
    if word.system != system or f.system != system or z.system != system:
        raise ValueError("mixed root systems")
    path = _chain(system, word)
    k = len(path)
    if f.has_equivariant():
        raise ValueError("polynomial contains the equivariant variable")
    if not f.is_homogeneous() or (f and f.degree() != k + 1):
        raise ValueError(f"class has degree {f.degree()}, expected {k + 1}")
    sp = f.space
    alphas = [MultiPoly.from_weight(Weight(system, "zeta", system.simple_root(i)), f.basis) for i in path]

    def interval(a: int, b: int) -> MultiPoly:  # alpha_(a) + ... + alpha_(b), 1-based
        out = MultiPoly.zero(sp)
        for h in range(a, b + 1):
            out = out + alphas[h - 1]
        return out

    e0 = MultiPoly.equivariant(sp)
    out = []
    for j in range(k + 1):
        wj = path[:j][::-1]  # s_(j) ... s_(1)
        g = weyl_act(wj, f)
        vert = [interval(h, j) for h in range(1, j + 1)] + [-interval(j + 1, h) for h in range(j + 1, k + 1)]
        out.append(FixedPointDatum(j, "0", g, (e0,) + tuple(vert)))
        out.append(
            FixedPointDatum(
                j, "inf", equivariant_shift(g, z), (-e0,) + tuple(equivariant_shift(v, z) for v in vert)
            )
        )
    return out


_VERTICAL_CACHE: dict[tuple[WeylWord, MultiPoly], MultiPoly] = {}


def _vertical_polynomial(word: WeylWord, f: MultiPoly, zero_data: Sequence[FixedPointDatum]) -> MultiPoly:
    """Pole-0 fractions without their ``e0`` factor, summed; independent of ``z``."""
    key = (word, f)
    P = _VERTICAL_CACHE.get(key)
    if P is None:
        vert = RationalFunctionSum()
        for d in zero_data:
            vert.add(d.restricted_class, d.euler_class[1:])
        P = sum_polynomial(vert)
        if len(_VERTICAL_CACHE) > 512:
            _VERTICAL_CACHE.clear()
        _VERTICAL_CACHE[key] = P
    return P


def localization_sum(data: Sequence[FixedPointDatum]) -> RationalFunctionSum:
    S = RationalFunctionSum()
    for d in sorted(data, key=lambda d: (d.pole != "0", d.j)):
        S.add(d.restricted_class, d.euler_class)
    return S


def localize(system: RootSystem, word: WeylWord, f: MultiPoly, z: Coweight, method: str = "split") -> Fraction:
    """Integral of ``kappa(f)`` over ``bX_word`` by fixed-point localization.

    ``method="full"`` reduces all ``2(k+1)`` fractions at once.  The default
    ``"split"`` first sums the pole-0 fractions without their common ``e0``
    factor into a polynomial ``P`` (the vertical localization sum); the pole-inf
    fractions are the shifted copies with the opposite sign, so the total is
    ``(P - shift(P)) / e0``, evaluated exactly.
    """
    data = fixed_point_data(system, word, f, z)
    if method == "full":
        return sum_constant(localization_sum(data))
    if method != "split":
        raise ValueError(f"unknown method {method!r}")
    P = _vertical_polynomial(word, f, tuple(d for d in data if d.pole == "0"))
    diff = P - equivariant_shift(P, z) if not P.has_equivariant() else None
    if diff is None:
        raise NotConstantError("vertical sum contains the equivariant variable")
    e0 = MultiPoly.equivariant(P.space)
    q = diff.divide_linear(e0)
    if q is None or not q.is_constant():
        raise NotConstantError("not a constant; likely wrong input data")
    value = q.constant_value() if q else Fraction(0)
    # independent numeric check on the full sum
    S = localization_sum(data)
    for p in _random_points(S, 2, 7):
        if S.evaluate(p) != value:
            raise NotConstantError("not a constant; likely wrong input data")
    return value


def localize_named(system: RootSystem, r: int, subdiagram: str, f: MultiPoly, z: Coweight, method: str = "split") -> Fraction:
    return localize(system, named_subdiagram(system, r, subdiagram), f, z, method)


__all__ = [
    "FixedPointDatum",
    "RationalFunctionSum",
    "NotConstantError",
    "fixed_point_data",
    "localization_sum",
    "sum_constant",
    "sum_polynomial",
    "localize",
    "localize_named",
]
