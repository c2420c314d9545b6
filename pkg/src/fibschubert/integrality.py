"""Integral classes, residual invariants and non-integrality certificates."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .bruhat import WeylWord, named_subdiagram
from .chevalley import cap_fibered
from .exactalg import ExactMatrix, _echelon_q, integer_saturation_basis, rational_kernel
from .fixtures import load_fixture
from .localization import localize
from .mpoly import (
    MultiPoly,
    action_matrix,
    complete_symmetric,
    elementary_symmetric,
    free_space,
    invariant_forms,
    monomials,
    parse_poly,
    poly_from_vector,
    space_for,
    vector_from_poly,
)
from .rootdata import RootSystem, Weight, catalog


@dataclass(frozen=True)
class ParabolicChoice:
    system: RootSystem
    removed_root: int

    def __post_init__(self) -> None:
        self.system.check_index(self.removed_root)

    @property
    def residual_generators(self) -> tuple[int, ...]:
        return tuple(j for j in range(1, self.system.rank + 1) if j != self.removed_root)


@dataclass(frozen=True)
class IntegralClass:
    polynomial: MultiPoly
    witness: str


# --- the half complete-symmetric classes ------------------------------------


def _eps(system: RootSystem, i: int) -> Weight:
    return system.symbol(f"e{i}")


def half_delta_class(system: RootSystem, r: int) -> IntegralClass:
    """``(1/2) delta_{n-r+1}(e_1..e_r)``, or ``(1/2) delta_3(eta)`` for D_n with ``r = n-1``."""
    n = system.rank
    if system.family not in ("B", "D"):
        raise ValueError("half-delta classes are defined for B_n and D_n")
    system.check_index(r)
    if system.family == "D" and r == n - 1:
        eta = [_eps(system, i) for i in range(1, n)] + [-1 * _eps(system, n)]
        g = complete_symmetric(eta, 3, "eps").scale(Fraction(1, 2))
        return IntegralClass(g, f"half_delta_eta:3")
    f = complete_symmetric([_eps(system, i) for i in range(1, r + 1)], n - r + 1, "eps").scale(Fraction(1, 2))
    return IntegralClass(f, f"half_delta:{n - r + 1}")


# --- integral presentations --------------------------------------------------


@dataclass(frozen=True)
class IntegralPresentation:
    """``Z[e_1..e_n, w_1..w_2n] / I`` with the family's relations."""

    family: str
    rank: int
    relations: tuple[MultiPoly, ...]

    @property
    def space(self):
        return self.relations[0].space

    @property
    def halved_range(self) -> int:
        """Largest ``i`` with the relation ``c_i = 2 w_i``."""
        return self.rank if self.family == "B" else self.rank - 1


def _free_names(n: int) -> list[str]:
    return [f"e{i}" for i in range(1, n + 1)] + [f"w{j}" for j in range(1, 2 * n + 1)]


def integral_presentation(system: RootSystem) -> IntegralPresentation:
    if system.family not in ("B", "D"):
        raise ValueError("integral presentations are provided for B_n and D_n")
    n = system.rank
    sp = free_space(_free_names(n))
    e = [MultiPoly.variable(sp, i) for i in range(n)]
    w = [None] + [MultiPoly.variable(sp, n + j - 1) for j in range(1, 2 * n + 1)]
    rels = []
    top = n if system.family == "B" else n - 1
    for i in range(1, top + 1):
        rels.append(elementary_symmetric(e, i) - w[i].scale(2))
    if system.family == "D":
        rels.append(elementary_symmetric(e, n))
    first_zero = n + 1 if system.family == "B" else n
    last_zero = 2 * n if system.family == "B" else 2 * n - 2
    for j in range(first_zero, last_zero + 1):
        rels.append(w[j])
    kmax = n if system.family == "B" else n - 1
    for k in range(1, kmax + 1):
        rel = w[2 * k]
        for j in range(1, 2 * k):
            rel = rel + (w[j] * w[2 * k - j]).scale((-1) ** j)
        rels.append(rel)
    return IntegralPresentation(system.family, n, tuple(rels))


def q_polynomials(P: IntegralPresentation, m: int) -> list[MultiPoly]:
    """Integer ``Q_0..Q_m`` with ``delta_j(e) = 2 Q_j(w)`` modulo the relations."""
    sp = P.space
    n = P.rank
    w = [None] + [MultiPoly.variable(sp, n + j - 1) for j in range(1, 2 * n + 1)]
    Q = [MultiPoly.zero(sp)]
    for j in range(1, m + 1):
        q = w[j].scale((-1) ** (j + 1)) if j <= P.halved_range else MultiPoly.zero(sp)
        for i in range(1, j):
            if i <= P.halved_range:
                q = q + (w[i] * Q[j - i]).scale(2 * (-1) ** (i + 1))
        Q.append(q)
    return Q


@dataclass(frozen=True)
class MembershipProof:
    """``f = expression`` after ``w_i -> c_i(e)/2``, up to ``c_n(e) * residual_factor`` for D_n."""

    presentation: IntegralPresentation
    route: str
    expression: MultiPoly
    residual_factor: MultiPoly | None = None

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class MembershipFailure:
    reason: str

    def __bool__(self) -> bool:
        return False


def _to_free(f: MultiPoly, P: IntegralPresentation) -> MultiPoly:
    g = f.to_basis("eps")
    sp = P.space
    n = P.rank
    return g.substitute([MultiPoly.variable(sp, i) for i in range(n)] + [MultiPoly.zero(sp)], sp)


def substitute_halves(expr: MultiPoly, P: IntegralPresentation) -> MultiPoly:
    """Map ``w_i -> c_i(e)/2`` for the halved range and the other ``w_j -> 0``."""
    sp = P.space
    n = P.rank
    e = [MultiPoly.variable(sp, i) for i in range(n)]
    imgs = list(e)
    for j in range(1, 2 * n + 1):
        imgs.append(elementary_symmetric(e, j).scale(Fraction(1, 2)) if j <= P.halved_range else MultiPoly.zero(sp))
    return expr.substitute(imgs, sp)


def verify_presentation_membership(f: MultiPoly, P: IntegralPresentation) -> MembershipProof | MembershipFailure:
    """Write ``f`` as an integer polynomial in ``e`` and ``w`` by the half-delta route."""
    sys_ = f.system
    if sys_ is None or sys_.family != P.family or sys_.rank != P.rank:
        return MembershipFailure("polynomial and presentation belong to different systems")
    if not f.is_homogeneous() or f.is_zero():
        return MembershipFailure("polynomial is not a nonzero homogeneous form")
    n = P.rank
    m = f.degree()
    sp = P.space
    target = _to_free(f, P)
    e = [MultiPoly.variable(sp, i) for i in range(n)]
    Q = q_polynomials(P, m)
    candidates: list[tuple[str, MultiPoly]] = [(f"half_delta_full:{m}", Q[m])]
    r = n - m + 1
    if 1 <= r <= n:
        expr = MultiPoly.zero(sp)
        for j in range(1, m + 1):
            c = elementary_symmetric(e[r:], m - j) if m > j else MultiPoly.constant(sp, 1)
            expr = expr + (c * Q[j]).scale((-1) ** (m - j))
        candidates.append((f"half_delta:{m}", expr))
    if P.family == "D":
        # delta(eta)(t) = (1 - e_n t)/(1 + e_n t) delta(e)(t)
        expr = Q[m]
        for k in range(1, m + 1):
            d = complete_symmetric(e, m - k) if m - k > 0 else MultiPoly.constant(sp, 1)
            expr = expr + (e[n - 1] ** k).scale((-1) ** k) * d
        candidates.append((f"half_delta_eta:{m}", expr))
    for route, expr in candidates:
        if not expr.content_integral():
            continue
        back = substitute_halves(expr, P)
        diff = target - back
        if diff.is_zero():
            return MembershipProof(P, route, expr)
        if P.family == "D":
            cn = elementary_symmetric(e, n)
            q, rem = diff.divmod_poly(cn)
            if rem.is_zero():
                return MembershipProof(P, route, expr, q)
    return MembershipFailure("no expression found by the half-delta route (not a disproof)")


# --- residual invariants -----------------------------------------------------


def _stack(system: RootSystem, letters: Iterable[int], degree: int, basis: str = "zeta"):
    mons = monomials(system.rank, degree)
    mats = []
    for j in letters:
        _, A = action_matrix(system, basis, j, degree)
        for i in range(len(A)):
            A[i][i] -= 1
        mats.append(A)
    return mons, mats


def invariant_basis(system: RootSystem, P: ParabolicChoice, degree: int) -> list[MultiPoly]:
    """Integer basis (zeta variables) of degree-``degree`` forms fixed by the residual group."""
    if degree < 1:
        raise ValueError("degree must be positive")
    mons, mats = _stack(system, P.residual_generators, degree)
    rows = [row for A in mats for row in A if any(row)]
    if rows:
        ker = rational_kernel(ExactMatrix(rows, len(mons)))
    else:
        ker = [tuple(Fraction(int(i == j)) for i in range(len(mons))) for j in range(len(mons))]
    if not ker:
        return []
    sat = integer_saturation_basis(ker)
    return [poly_from_vector(system, "zeta", mons, v) for v in sat]


def iplus_slice(system: RootSystem, degree: int) -> list[MultiPoly]:
    """Spanning set of the degree-``degree`` part of the ideal of positive-degree W-invariants."""
    out = []
    allj = range(1, system.rank + 1)
    sp = space_for(system, "zeta")
    for d in range(1, degree + 1):
        invs = invariant_forms(system, "zeta", d, allj)
        if not invs:
            continue
        cof = monomials(system.rank, degree - d)
        for q in invs:
            for m in cof:
                out.append(q * MultiPoly.from_terms(sp, {m + (0,): 1}))
    return out


class _Quotient:
    """Degree-``degree`` forms modulo an I+ slice, in RREF normal form."""

    def __init__(self, system: RootSystem, degree: int):
        self.system = system
        self.mons = monomials(system.rank, degree)
        gens = [vector_from_poly(g, self.mons) for g in iplus_slice(system, degree)]
        self.rows, self.piv = _echelon_q(gens, len(self.mons)) if gens else ([], [])

    def reduce(self, v: Sequence[Fraction]) -> list[Fraction]:
        v = list(v)
        for row, p in zip(self.rows, self.piv):
            c = v[p]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return v


def invariant_basis_mod_Iplus(system: RootSystem, P: ParabolicChoice, degree: int) -> list[MultiPoly]:
    """Basis of the residual invariants in the quotient by I+, as reduced normal forms."""
    Qt = _Quotient(system, degree)
    mons, mats = _stack(system, P.residual_generators, degree)
    rows = []
    for A in mats:
        cols = list(zip(*A))  # column k = (s_j - 1) applied to monomial k
        red = [Qt.reduce(c) for c in cols]
        rows.extend([list(r) for r in zip(*red)])
    rows = [r for r in rows if any(r)]
    ker = rational_kernel(ExactMatrix(rows, len(mons))) if rows else [
        tuple(Fraction(int(i == j)) for i in range(len(mons))) for j in range(len(mons))
    ]
    images = [Qt.reduce(v) for v in ker]
    images = [v for v in images if any(v)]
    if not images:
        return []
    basis, _ = _echelon_q(images, len(mons))
    return [poly_from_vector(system, "zeta", mons, v) for v in basis]


def in_invariant_span(f: MultiPoly, basis: Sequence[MultiPoly], modulo_iplus: bool = False) -> bool:
    sys_ = f.system
    g = f.to_basis("zeta")
    mons = monomials(sys_.rank, g.degree())
    vec = vector_from_poly(g, mons)
    vecs = [vector_from_poly(b.to_basis("zeta"), mons) for b in basis]
    if modulo_iplus:
        Qt = _Quotient(sys_, g.degree())
        vec = Qt.reduce(vec)
        vecs = [Qt.reduce(v) for v in vecs] + [list(r) for r in Qt.rows]
    r0 = len(_echelon_q(vecs, len(mons))[1]) if vecs else 0
    return len(_echelon_q(vecs + [vec], len(mons))[1]) == r0


def residually_invariant(f: MultiPoly, P: ParabolicChoice, modulo_iplus: bool = False) -> bool:
    from .mpoly import weyl_act

    sys_ = f.system
    g = f.to_basis("zeta")
    Qt = _Quotient(sys_, g.degree()) if modulo_iplus else None
    mons = monomials(sys_.rank, g.degree())
    for j in P.residual_generators:
        diff = weyl_act((j,), g) - g
        if Qt is None:
            if diff:
                return False
        elif any(Qt.reduce(vector_from_poly(diff, mons))):
            return False
    return True


# --- certificates ------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    polynomial: MultiPoly
    constructor: str
    word: WeylWord
    subdiagram: str | None
    value: Fraction

    @property
    def integral(self) -> bool:
        return self.value.denominator == 1


@dataclass(frozen=True)
class NonIntegralityCertificate:
    system: RootSystem
    orbit_r: int
    generator: str
    d: int
    witness: Witness | None
    witnesses: tuple[Witness, ...] = field(default=())

    @property
    def integral(self) -> bool:
        return self.witness is None

    def replay(self) -> list[Fraction]:
        z = self.system.generator(self.generator, self.d)
        out = []
        for w in self.witnesses:
            if w.subdiagram is not None:
                out.append(localize(self.system, w.word, w.polynomial, z))
            else:
                out.append(cap_fibered(w.polynomial, w.word, z))
        return out

    def to_json(self) -> dict:
        def wj(w: Witness) -> dict:
            d = {
                "polynomial": str(w.polynomial),
                "basis": w.polynomial.basis,
                "constructor": w.constructor,
                "value": {"num": w.value.numerator, "den": w.value.denominator},
            }
            if w.subdiagram is not None:
                d["subdiagram"] = w.subdiagram
            d["word"] = list(w.word.letters)
            return d

        out = {
            "family": self.system.family,
            "rank": self.system.rank,
            "orbit_r": self.orbit_r,
            "coweight": {"generator": self.generator, "d": self.d},
            "integral": self.integral,
        }
        if self.witness is not None:
            out.update(wj(self.witness))
        out["witnesses"] = [wj(w) for w in self.witnesses]
        return out


_SUBDIAGRAM_IDS = {"Gamma": "Gamma", "Gamma'": "GammaPrime", "Gamma''": "GammaDoublePrime"}
_SUBDIAGRAM_NAMES = {v: k for k, v in _SUBDIAGRAM_IDS.items()}


def _zeta(system: RootSystem, i: int) -> MultiPoly:
    return MultiPoly.from_weight(system.fundamental_weight(i), "zeta")


def witness_plan(system: RootSystem, r: int, generator: str) -> list[tuple[MultiPoly, str, WeylWord, str | None]]:
    """Integral classes and cells whose pairings detect the coweight class."""
    fam, n = system.family, system.rank
    system.check_index(r)
    e = lambda: WeylWord(system, ())  # noqa: E731
    plan: list[tuple[MultiPoly, str, WeylWord, str | None]] = []
    if fam in ("A", "C"):
        eps = [_eps(system, i) for i in range(1, r + 1)]
        plan.append((elementary_symmetric(eps, 1, "eps"), "c1", e(), None))
        plan.append((elementary_symmetric(eps, 2, "eps"), "c2", WeylWord(system, (r,)), None))
    elif fam == "B":
        if r < n:
            cls = half_delta_class(system, r)
            plan.append((cls.polynomial, cls.witness, named_subdiagram(system, r, "Gamma"), "Gamma"))
        else:
            plan.append((_zeta(system, n), "zeta", e(), None))
    elif fam == "D":
        if r == n - 1:
            plan.append((_zeta(system, n - 1), "zeta", e(), None))
            if generator == "z1":
                g = half_delta_class(system, r)
                plan.append((g.polynomial, g.witness, named_subdiagram(system, r, "Gamma''"), "Gamma''"))
        elif r == n:
            plan.append((_zeta(system, n), "zeta", e(), None))
            if generator == "z1":
                h3 = complete_symmetric([_eps(system, i) for i in range(1, n + 1)], 3, "eps").scale(Fraction(1, 2))
                plan.append((h3, "half_delta_full:3", WeylWord(system, (n - 2, n)), None))
        else:
            f = half_delta_class(system, r)
            plan.append((f.polynomial, f.witness, named_subdiagram(system, r, "Gamma'"), "Gamma'"))
            if generator == "z1":
                plan.append((f.polynomial, f.witness, named_subdiagram(system, r, "Gamma"), "Gamma"))
    elif fam == "E6":
        t = lambda *ix: [system.symbol(f"t{i}") for i in ix]  # noqa: E731
        if r in (1, 2, 4, 5):
            plan.append((_zeta(system, r), "zeta", e(), None))
        elif r == 3:
            plan.append((elementary_symmetric(t(1, 2, 3), 2, "t"), "c2", WeylWord(system, (3,)), None))
        else:
            plan.append((elementary_symmetric(t(1, 2, 3, 4, 5, 6), 3, "t"), "c3", WeylWord(system, (3, 6)), None))
    elif fam == "E7":
        t = lambda *ix: [system.symbol(f"t{i}") for i in ix]  # noqa: E731
        if r in (1, 3, 7):
            plan.append((_zeta(system, r), "zeta", e(), None))
        elif r == 2:
            plan.append((elementary_symmetric(t(1, 2), 2, "t"), "c2", WeylWord(system, (2,)), None))
        elif r == 4:
            plan.append((elementary_symmetric(t(1, 2, 3, 4), 2, "t"), "c2", WeylWord(system, (4,)), None))
        elif r == 5:
            plan.append((load_fixture("e7-p5"), "fixture:e7-p5", WeylWord(system, (4, 6, 5)), None))
        else:
            plan.append((load_fixture("e7-p6"), "fixture:e7-p6", WeylWord(system, (4, 5, 6)), None))
    else:
        raise ValueError(f"no certificate plan for {system.name}")
    return plan


def certify(system: RootSystem, r: int, generator: str = "z0", d: int = 1) -> NonIntegralityCertificate:
    """Replay the case analysis for ``(system, r)`` at ``z = d * generator``.

    The result has ``integral`` set exactly when no witness pairing is a
    non-integer; that must coincide with ``z`` lying in the coroot lattice.
    """
    z = system.generator(generator, d)
    ws = []
    for poly, ctor, word, sub in witness_plan(system, r, generator):
        if sub is not None:
            val = localize(system, word, poly, z)
        else:
            val = cap_fibered(poly, word, z)
        ws.append(Witness(poly, ctor, word, _SUBDIAGRAM_IDS.get(sub) if sub else None, val))
    bad = next((w for w in ws if not w.integral), None)
    cert = NonIntegralityCertificate(system, r, generator, d, bad, tuple(ws))
    if cert.integral != z.is_coroot_lattice():
        raise ArithmeticError(
            f"witness integrality ({cert.integral}) disagrees with coroot-lattice membership for {system.name}, r={r}, {d}*{generator}"
        )
    return cert


def certificate_from_json(data: dict | str) -> NonIntegralityCertificate:
    if isinstance(data, str):
        data = json.loads(data)
    system = catalog(data["family"], data["rank"])
    ws = []
    for w in data["witnesses"]:
        poly = parse_poly(w["polynomial"], system, w.get("basis"))
        sub = w.get("subdiagram")
        ws.append(
            Witness(poly, w["constructor"], WeylWord(system, tuple(w["word"])), sub, Fraction(w["value"]["num"], w["value"]["den"]))
        )
    bad = next((w for w in ws if not w.integral), None)
    return NonIntegralityCertificate(
        system, data["orbit_r"], data["coweight"]["generator"], data["coweight"]["d"], bad, tuple(ws)
    )


__all__ = [
    "ParabolicChoice",
    "IntegralClass",
    "IntegralPresentation",
    "MembershipProof",
    "MembershipFailure",
    "Witness",
    "NonIntegralityCertificate",
    "half_delta_class",
    "integral_presentation",
    "q_polynomials",
    "substitute_halves",
    "verify_presentation_membership",
    "invariant_basis",
    "invariant_basis_mod_Iplus",
    "iplus_slice",
    "in_invariant_span",
    "residually_invariant",
    "witness_plan",
    "certify",
    "certificate_from_json",
]
