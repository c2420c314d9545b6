import random
from fractions import Fraction

import pytest

from fibschubert.bruhat import WeylWord, named_subdiagram, projective_subdiagram_word
from fibschubert.chevalley import cap_fibered
from fibschubert.integrality import ParabolicChoice, half_delta_class, invariant_basis
from fibschubert.localization import (
    NotConstantError,
    RationalFunctionSum,
    fixed_point_data,
    localize,
    localize_named,
    sum_constant,
    sum_polynomial,
)
from fibschubert.mpoly import MultiPoly, free_space, parse_poly, space_for
from fibschubert.rootdata import catalog


def _random_class(rng, S, r, degree):
    """Random integer combination of residual invariants (classes pulled back from G/P)."""
    basis = invariant_basis(S, ParabolicChoice(S, r), degree)
    out = basis[0].scale(0)
    for b in basis:
        out = out + b.scale(rng.randint(-3, 3))
    return out


CHAINS = [
    ("A", 4, 2, (2, 3, 4)),
    ("A", 3, 1, (1, 2)),
    ("D", 5, 2, (2, 3, 5)),
    ("D", 4, 1, (1, 2, 4)),
    ("C", 3, 1, (1, 2)),
    ("B", 4, 1, (1, 2, 3)),
    ("E6", None, 1, (1, 2, 3)),
    ("E7", None, 7, (7, 4, 3)),
]


@pytest.mark.parametrize("fam,n,r,path", CHAINS)
def test_split_full_and_chevalley_agree(fam, n, r, path):
    S = catalog(fam, n)
    w = projective_subdiagram_word(S, r, path)
    rng = random.Random(hash(path) & 0xFFFF)
    for _ in range(3):
        f = _random_class(rng, S, r, len(path) + 1)
        z = S.coweight([rng.randint(-2, 2) for _ in range(S.rank)])
        v = localize(S, w, f, z)
        assert v == localize(S, w, f, z, method="full")
        assert v == cap_fibered(f, w, z)


def test_fixed_point_count_and_weights():
    S = catalog("D", 5)
    w = named_subdiagram(S, 2, "Gamma")
    f = half_delta_class(S, 2).polynomial
    data = fixed_point_data(S, w, f, S.generator("z0", 1))
    assert len(data) == 2 * (len(w) + 1)
    assert {d.point for d in data} == {(j, p) for j in range(len(w) + 1) for p in ("0", "inf")}
    assert all(len(d.euler_class) == len(w) + 1 for d in data)


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("d", [1, 2])
def test_odd_orthogonal_closed_form(n, d):
    S = catalog("B", n)
    z = S.generator("z0", d)
    for r in range(1, n):
        f = half_delta_class(S, r).polynomial
        assert localize_named(S, r, "Gamma", f, z) == Fraction((-1) ** (n - r + 1) * d, 2)


@pytest.mark.parametrize("n", [4, 5])
@pytest.mark.parametrize("d", [1, 2])
def test_even_orthogonal_closed_forms_below_top(n, d):
    S = catalog("D", n)
    z0, z1 = S.generator("z0", d), S.generator("z1", d)
    for r in range(1, n - 1):
        f = half_delta_class(S, r).polynomial
        sign = (-1) ** (n - r + 1)
        assert localize_named(S, r, "Gamma'", f, z0) == Fraction(-sign * d, 2)
        assert localize_named(S, r, "Gamma'", f, z1) == sign * (Fraction(d * n, 4) - Fraction(d, 2))
        assert localize_named(S, r, "Gamma", f, z1) == sign * Fraction(d * n, 4)
    g = half_delta_class(S, n - 1).polynomial
    assert localize_named(S, n - 1, "Gamma''", g, z1) == Fraction(d, 2) - Fraction(d * (n - 2), 2)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_explicit_b3_fractions(d):
    """Four-point sum for B3, r = 2, chain (alpha_2), rebuilt and simplified in sympy."""
    import sympy

    e0, e1, e2, e3 = sympy.symbols("e0:4")
    f = sympy.Rational(1, 2) * (e1**2 + e1 * e2 + e2**2)  # half of the complete symmetric h_2(e1, e2)
    alpha = e2 - e3
    swap = {e2: e3, e3: e2}
    shift = {e3: e3 + d * e0}
    g = f.subs(swap, simultaneous=True)
    total = (
        f / (e0 * -alpha)
        + g / (e0 * alpha)
        + f.subs(shift) / (-e0 * -alpha.subs(shift))
        + g.subs(shift) / (-e0 * alpha.subs(shift))
    )
    value = sympy.cancel(sympy.together(total))
    assert value == sympy.Rational(d, 2)
    S = catalog("B", 3)
    w = named_subdiagram(S, 2, "Gamma")
    assert w.letters == (2,)
    assert localize(S, w, half_delta_class(S, 2).polynomial, S.generator("z0", d)) == Fraction(d, 2)


def test_partial_fractions():
    sp = free_space(["x", "y", "u"])
    x, y, u = (MultiPoly.variable(sp, i) for i in range(3))
    S = RationalFunctionSum()
    S.add(x, [x - y])
    S.add(y, [y - x])
    assert sum_constant(S) == 1
    T = RationalFunctionSum()
    T.add(MultiPoly.constant(sp, 1), [x, x - y])
    T.add(MultiPoly.constant(sp, 1), [y, y - x])
    T.add(MultiPoly.constant(sp, 1), [x, y])
    assert sum_constant(T) == 0
    P = RationalFunctionSum()
    P.add(x * x, [x - u])
    P.add(u * u, [u - x])
    assert sum_polynomial(P) == x + u


def test_not_constant_is_reported():
    sp = free_space(["x", "y"])
    x, y = (MultiPoly.variable(sp, i) for i in range(2))
    S = RationalFunctionSum()
    S.add(MultiPoly.constant(sp, 1), [x])
    with pytest.raises(NotConstantError):
        sum_constant(S)
    T = RationalFunctionSum()
    T.add(x * y, [x - y])
    T.add(y * y, [y - x])
    with pytest.raises(NotConstantError):
        sum_constant(T)  # sums to y, a polynomial but not a constant
    with pytest.raises(ValueError):
        S.add(x * y, [x * y])


def test_wrong_input_data():
    S = catalog("D", 4)
    w = named_subdiagram(S, 1, "Gamma")
    z = S.generator("z0", 1)
    with pytest.raises(ValueError, match="degree"):
        localize(S, w, parse_poly("z1^2", S), z)
    with pytest.raises(ValueError, match="equivariant"):
        localize(S, w, parse_poly("e0*e1*e2*e3", S), z)
    with pytest.raises(ValueError, match="method"):
        localize(S, w, half_delta_class(S, 1).polynomial, z, method="other")
    with pytest.raises(ValueError, match="mixed"):
        localize(catalog("D", 5), w, half_delta_class(S, 1).polynomial, z)


def test_non_residual_class_is_rejected():
    S = catalog("D", 4)
    w = named_subdiagram(S, 1, "Gamma")
    with pytest.raises(NotConstantError):
        localize(S, w, parse_poly("z2^4", S), S.generator("z0", 1))
