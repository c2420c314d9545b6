"""Root data for the simple families with nontrivial center.

The canonical coordinates are fundamental-weight coordinates: a weight ``x``
is stored as ``(x(h_1), ..., x(h_rank))`` and a coweight as its expansion in
simple coroots, so ``<zeta_i, h_j> = delta_ij``.  Other bases (``eps``, ``t``,
``eta``) are registered as linear changes of variable into this frame.

Node labels: A_n, B_n, C_n, D_n use ``alpha_i = eps_i - eps_{i+1}`` for
``i < n`` with ``alpha_n`` equal to ``eps_n - eps_{n+1}``, ``eps_n``,
``2 eps_n`` and ``eps_{n-1} + eps_n`` respectively.  E6 and E7 use a chain
``1 - 2 - ... - (rank-1)`` with the last node attached to node 3 (E6) or
node 4 (E7).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Mapping, Sequence

from .exactalg import ExactMatrix, ExactVector, smith_normal_form, solve_in_span

FAMILIES = ("A", "B", "C", "D", "E6", "E7")

Vec = tuple[Fraction, ...]


def _vec(xs: Sequence[int | Fraction]) -> Vec:
    return tuple(Fraction(x) for x in xs)


@dataclass(frozen=True)
class Basis:
    """A named coordinate system on the weight space.

    ``symbols`` may exceed the rank (e.g. ``eps_{n+1}`` for A_n, ``t`` for
    E6/E7); ``coords`` lists the ``rank`` symbols used as coordinates and
    every other symbol is a fixed linear combination of them.
    """

    name: str
    symbols: tuple[str, ...]
    zeta_of: Mapping[str, Vec]
    coords: tuple[str, ...]

    @cached_property
    def to_zeta(self) -> ExactMatrix:
        """Columns are the coordinate symbols written in zeta-coordinates."""
        r = len(self.coords)
        return ExactMatrix([[self.zeta_of[s][i] for s in self.coords] for i in range(r)], r)

    @cached_property
    def from_zeta(self) -> ExactMatrix:
        return self.to_zeta.inverse()

    def symbol_coords(self, sym: str) -> Vec:
        """Coordinates of any registered symbol in this basis."""
        return self.from_zeta.apply(self.zeta_of[sym])


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    bases: Mapping[str, Basis] = field(repr=False)
    coweight_generators: Mapping[str, Vec] = field(repr=False)
    torsion: tuple[int, ...] = ()
    computation_basis: str = "eps"
    gram_check: Mapping[str, object] = field(default_factory=dict, repr=False, compare=False)

    @property
    def name(self) -> str:
        return self.family if self.family.startswith("E") else f"{self.family}{self.rank}"

    def __hash__(self) -> int:
        return hash((self.family, self.rank))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RootSystem) and (self.family, self.rank) == (other.family, other.rank)

    # --- weights --------------------------------------------------------
    def simple_root(self, j: int) -> Vec:
        """``alpha_j`` in zeta-coordinates (row ``j`` of the Cartan matrix)."""
        return _vec(self.cartan[j - 1])

    def check_index(self, j: int) -> None:
        if not 1 <= j <= self.rank:
            raise IndexError(f"simple reflection index {j} outside 1..{self.rank}")

    def reflect_zeta(self, j: int, x: Sequence[Fraction]) -> Vec:
        self.check_index(j)
        xj = x[j - 1]
        if not xj:
            return tuple(x)
        row = self.cartan[j - 1]
        return tuple(a - xj * c for a, c in zip(x, row))

    def reflect_coweight_coords(self, j: int, h: Sequence[Fraction]) -> Vec:
        self.check_index(j)
        aj = sum((c * x for c, x in zip(self.cartan[j - 1], h)), Fraction(0))
        out = list(h)
        out[j - 1] -= aj
        return tuple(out)

    @cached_property
    def reflection_matrices_zeta(self) -> tuple[ExactMatrix, ...]:
        out = []
        for j in range(1, self.rank + 1):
            cols = [self.reflect_zeta(j, [int(i == k) for i in range(self.rank)]) for k in range(self.rank)]
            out.append(ExactMatrix(zip(*cols), self.rank))
        return tuple(out)

    @lru_cache(maxsize=None)
    def reflection_matrix(self, j: int, basis: str) -> ExactMatrix:
        """Matrix of ``s_j`` acting on coordinate vectors of ``basis``."""
        self.check_index(j)
        B = self.bases[basis]
        return B.from_zeta @ self.reflection_matrices_zeta[j - 1] @ B.to_zeta

    def commute(self, i: int, j: int) -> bool:
        return i != j and self.cartan[i - 1][j - 1] == 0

    def braid_order(self, i: int, j: int) -> int:
        if i == j:
            return 1
        p = self.cartan[i - 1][j - 1] * self.cartan[j - 1][i - 1]
        return {0: 2, 1: 3, 2: 4, 3: 6}[p]

    def weight(self, basis: str, coords: Sequence[int | Fraction]) -> Weight:
        return Weight(self, basis, _vec(coords))

    def symbol(self, name: str, basis: str | None = None) -> Weight:
        """Weight named by a grammar symbol such as ``"t3"`` or ``"e2"``."""
        for B in self.bases.values():
            if name in B.zeta_of:
                w = Weight(self, "zeta", B.zeta_of[name])
                return w.to_basis(basis or B.name)
        raise KeyError(f"unknown variable {name!r} for {self.name}")

    def fundamental_weight(self, i: int) -> Weight:
        self.check_index(i)
        return Weight(self, "zeta", tuple(Fraction(int(k == i - 1)) for k in range(self.rank)))

    # --- coweights ------------------------------------------------------
    def coweight(self, coords: Sequence[int | Fraction]) -> Coweight:
        return Coweight(self, _vec(coords))

    def coroot(self, j: int) -> Coweight:
        self.check_index(j)
        return Coweight(self, tuple(Fraction(int(k == j - 1)) for k in range(self.rank)))

    def generator(self, name: str, d: int | Fraction = 1) -> Coweight:
        if name not in self.coweight_generators:
            raise KeyError(f"{self.name} has no coweight generator {name!r}")
        return Coweight(self, tuple(Fraction(d) * c for c in self.coweight_generators[name]))

    def generator_order(self, name: str) -> int:
        m = 1
        for c in self.coweight_generators[name]:
            m = m * c.denominator // _gcd(m, c.denominator)
        return m

    def center_invariants(self) -> list[int]:
        """Invariant factors of the coweight/coroot quotient, via SNF of the Cartan matrix."""
        D = smith_normal_form(ExactMatrix(self.cartan)).diagonal
        return [d for d in D if d != 1]

    def positive_roots(self) -> list[Vec]:
        """Positive roots in simple-root coordinates (by reflection closure)."""
        simple = [tuple(int(i == j) for i in range(self.rank)) for j in range(self.rank)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for beta in frontier:
                for j in range(self.rank):
                    # <beta, h_j> in terms of simple-root coordinates
                    pair = sum(b * self.cartan[i][j] for i, b in enumerate(beta))
                    gamma = list(beta)
                    gamma[j] -= pair
                    g = tuple(gamma)
                    if all(x >= 0 for x in g) and any(g) and g not in seen:
                        seen.add(g)
                        nxt.append(g)
            frontier = nxt
        return sorted(seen, key=lambda v: (sum(v), v))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class Weight:
    system: RootSystem
    basis: str
    coords: Vec

    def __post_init__(self) -> None:
        if len(self.coords) != self.system.rank:
            raise ValueError("coordinate length does not match the rank")

    @property
    def zeta(self) -> Vec:
        if self.basis == "zeta":
            return self.coords
        return self.system.bases[self.basis].to_zeta.apply(self.coords)

    def to_basis(self, basis: str) -> Weight:
        if basis == self.basis:
            return self
        return Weight(self.system, basis, self.system.bases[basis].from_zeta.apply(self.zeta))

    def __add__(self, other: Weight) -> Weight:
        _same(self.system, other.system)
        o = other.to_basis(self.basis)
        return Weight(self.system, self.basis, tuple(a + b for a, b in zip(self.coords, o.coords)))

    def __neg__(self) -> Weight:
        return Weight(self.system, self.basis, tuple(-a for a in self.coords))

    def __sub__(self, other: Weight) -> Weight:
        return self + (-other)

    def __rmul__(self, c: int | Fraction) -> Weight:
        return Weight(self.system, self.basis, tuple(Fraction(c) * a for a in self.coords))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Weight) and self.system == other.system and self.zeta == other.zeta

    def __hash__(self) -> int:
        return hash((self.system, self.zeta))


@dataclass(frozen=True)
class Coweight:
    system: RootSystem
    coords: Vec

    def __add__(self, other: Coweight) -> Coweight:
        _same(self.system, other.system)
        return Coweight(self.system, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __rmul__(self, c: int | Fraction) -> Coweight:
        return Coweight(self.system, tuple(Fraction(c) * a for a in self.coords))

    def is_coroot_lattice(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)


def _same(a: RootSystem, b: RootSystem) -> None:
    if a != b:
        raise ValueError(f"mixed root systems {a.name} and {b.name}")


def reflect(j: int, x: Weight) -> Weight:
    """Simple reflection ``s_j`` on a weight, returned in the input basis."""
    return Weight(x.system, "zeta", x.system.reflect_zeta(j, x.zeta)).to_basis(x.basis)


def reflect_coweight(j: int, h: Coweight) -> Coweight:
    return Coweight(h.system, h.system.reflect_coweight_coords(j, h.coords))


def pair_with_coroot(x: Weight, h: Coweight) -> Fraction:
    _same(x.system, h.system)
    return sum((a * b for a, b in zip(x.zeta, h.coords)), Fraction(0))


# --- catalog construction ---------------------------------------------------


def _cartan_from_diagram(rank: int, edges: Sequence[tuple[int, int]], special: Mapping[tuple[int, int], int] = {}) -> tuple[tuple[int, ...], ...]:
    C = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for a, b in edges:
        C[a - 1][b - 1] = C[b - 1][a - 1] = -1
    for (a, b), v in special.items():
        C[a - 1][b - 1] = v
    return tuple(tuple(r) for r in C)


def hardcoded_cartan(family: str, n: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix with entry ``[i][j] = alpha_i(h_j)``."""
    chain = [(i, i + 1) for i in range(1, n)]
    if family == "A":
        return _cartan_from_diagram(n, chain)
    if family == "B":
        return _cartan_from_diagram(n, chain, {(n - 1, n): -2})
    if family == "C":
        return _cartan_from_diagram(n, chain, {(n, n - 1): -2})
    if family == "D":
        return _cartan_from_diagram(n, chain[:-1] + [(n - 2, n)])
    if family == "E6":
        return _cartan_from_diagram(6, [(1, 2), (2, 3), (3, 4), (4, 5), (3, 6)])
    if family == "E7":
        return _cartan_from_diagram(7, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)])
    raise ValueError(f"unknown family {family!r}")


@dataclass(frozen=True)
class GramData:
    """Epsilon-frame description: symbols, Gram pairing and simple roots."""

    symbols: tuple[str, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    roots: tuple[Vec, ...]

    def pair(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
        return sum((u[i] * self.gram[i][j] * v[j] for i in range(len(u)) for j in range(len(v)) if u[i] and v[j]), Fraction(0))

    def eval_coroot(self, u: Sequence[Fraction], j: int) -> Fraction:
        a = self.roots[j]
        return 2 * self.pair(u, a) / self.pair(a, a)

    def cartan(self) -> tuple[tuple[Fraction, ...], ...]:
        r = len(self.roots)
        return tuple(tuple(self.eval_coroot(self.roots[i], j) for j in range(r)) for i in range(r))

    def zeta_of_symbols(self) -> dict[str, Vec]:
        r = len(self.roots)
        out = {}
        for k, s in enumerate(self.symbols):
            e = [Fraction(int(i == k)) for i in range(len(self.symbols))]
            out[s] = tuple(self.eval_coroot(e, j) for j in range(r))
        return out


def _gram_scaled(m: int, diag: Fraction, off: Fraction) -> list[list[Fraction]]:
    return [[diag if i == j else off for j in range(m)] for i in range(m)]


def gram_data(family: str, n: int) -> GramData:
    def unit(m: int, idx: Sequence[tuple[int, int]]) -> Vec:
        v = [Fraction(0)] * m
        for i, c in idx:
            v[i - 1] += c
        return tuple(v)

    if family == "A":
        m = n + 1
        g = _gram_scaled(m, Fraction(n, n + 1), Fraction(-1, n + 1))
        roots = [unit(m, [(i, 1), (i + 1, -1)]) for i in range(1, n + 1)]
    elif family in ("B", "C", "D"):
        m = n
        g = _gram_scaled(m, Fraction(1), Fraction(0))
        roots = [unit(m, [(i, 1), (i + 1, -1)]) for i in range(1, n)]
        roots.append({"B": unit(m, [(n, 1)]), "C": unit(m, [(n, 2)]), "D": unit(m, [(n - 1, 1), (n, 1)])}[family])
    elif family == "E6":
        m = 7  # eps_1..eps_6 and eps
        g = _gram_scaled(m, Fraction(5, 6), Fraction(-1, 6))
        for i in range(m):
            g[i][6] = g[6][i] = Fraction(0)
        g[6][6] = Fraction(1, 2)
        roots = [unit(m, [(i, 1), (i + 1, -1)]) for i in range(1, 6)]
        roots.append(unit(m, [(4, 1), (5, 1), (6, 1), (7, 1)]))
    elif family == "E7":
        m = 8
        g = _gram_scaled(m, Fraction(7, 8), Fraction(-1, 8))
        roots = [unit(m, [(i, 1), (i + 1, -1)]) for i in range(1, 7)]
        roots.append(unit(m, [(5, 1), (6, 1), (7, 1), (8, 1)]))
    else:
        raise ValueError(f"unknown family {family!r}")
    syms = tuple(f"e{i}" for i in range(1, m + 1))
    return GramData(syms, tuple(tuple(r) for r in g), tuple(roots))


def _greedy_coords(symbols: Sequence[str], zeta_of: Mapping[str, Vec], rank: int) -> tuple[str, ...]:
    chosen: list[str] = []
    rows: list[Vec] = []
    for s in symbols:
        v = zeta_of[s]
        if solve_in_span(v, rows) is None:
            chosen.append(s)
            rows.append(v)
        if len(chosen) == rank:
            break
    if len(chosen) != rank:
        raise ValueError("symbols do not span the weight space")
    return tuple(chosen)


def _t_basis(family: str) -> dict[str, Vec]:
    """The E-type t-variables written in fundamental weights."""
    if family == "E6":
        rows = {
            "t1": {1: 1},
            "t2": {2: 1, 1: -1},
            "t3": {3: 1, 2: -1},
            "t4": {4: 1, 3: -1, 6: 1},
            "t5": {5: 1, 4: -1, 6: 1},
            "t6": {6: 1, 5: -1},
            "t7": {6: 1},  # the distinguished t
        }
        r = 6
    else:
        rows = {
            "t1": {1: 1},
            "t2": {2: 1, 1: -1},
            "t3": {3: 1, 2: -1},
            "t4": {4: 1, 3: -1},
            "t5": {5: 1, 4: -1, 7: 1},
            "t6": {6: 1, 5: -1, 7: 1},
            "t7": {7: 1, 6: -1},
            "t8": {7: 1},  # the distinguished t
        }
        r = 7
    return {s: tuple(Fraction(d.get(i, 0)) for i in range(1, r + 1)) for s, d in rows.items()}


_RANK_MIN = {"A": 1, "B": 2, "C": 2, "D": 3}


@lru_cache(maxsize=None)
def catalog(family: str, rank: int | None = None) -> RootSystem:
    """Root system descriptor for ``family`` (``A`` means PU(rank+1))."""
    family = family.upper()
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if family in ("E6", "E7"):
        fixed = int(family[1])
        if rank not in (None, fixed):
            raise ValueError(f"{family} has rank {fixed}, got {rank}")
        rank = fixed
    elif rank is None or rank < _RANK_MIN[family]:
        raise ValueError(f"family {family} needs rank n >= {_RANK_MIN[family]}, got {rank}")
    n = rank
    cartan = hardcoded_cartan(family, n)
    gd = gram_data(family, n)
    eps_zeta = gd.zeta_of_symbols()
    bases: dict[str, Basis] = {}
    zsyms = tuple(f"z{i}" for i in range(1, n + 1))
    bases["zeta"] = Basis("zeta", zsyms, {s: tuple(Fraction(int(i == k)) for i in range(n)) for k, s in enumerate(zsyms)}, zsyms)
    bases["eps"] = Basis("eps", gd.symbols, eps_zeta, _greedy_coords(gd.symbols, eps_zeta, n))
    comp = "eps"
    if family in ("E6", "E7"):
        tz = _t_basis(family)
        tsyms = tuple(tz)
        bases["t"] = Basis("t", tsyms, tz, tsyms[:n])
        comp = "t"
    if family == "D":
        ysyms = tuple(f"y{i}" for i in range(1, n + 1))
        yz = {f"y{i}": eps_zeta[f"e{i}"] for i in range(1, n)}
        yz[f"y{n}"] = tuple(-x for x in eps_zeta[f"e{n}"])
        bases["eta"] = Basis("eta", ysyms, yz, ysyms)

    def from_eps_values(vals: Sequence[Fraction]) -> Vec:
        # coroot coordinates c with sum_j c_j eps_k(h_j) = eps_k(z) for every k
        cols = [tuple(eps_zeta[s][j] for s in gd.symbols) for j in range(n)]
        sol = solve_in_span(vals, cols)
        if sol is None:
            raise ValueError("inconsistent coweight data")
        return tuple(sol)

    F = Fraction
    gens: dict[str, Vec]
    if family == "A":
        gens = {"z0": from_eps_values([F(1, n + 1)] * n + [F(-n, n + 1)])}
        torsion: tuple[int, ...] = (n + 1,)
    elif family == "B":
        gens = {"z0": from_eps_values([F(0)] * (n - 1) + [F(1)])}
        torsion = (2,)
    elif family == "C":
        gens = {"z0": from_eps_values([F(1, 2)] * n)}
        torsion = (2,)
    elif family == "D":
        gens = {"z0": from_eps_values([F(0)] * (n - 1) + [F(1)]), "z1": from_eps_values([F(1, 2)] * n)}
        torsion = (2, 2) if n % 2 == 0 else (4,)
    elif family == "E6":
        gens = {"z0": _vec([F(1, 3), F(-1, 3), 0, F(1, 3), F(-1, 3), 0])}
        torsion = (3,)
    else:
        gens = {"z0": _vec([F(1, 2), 0, F(1, 2), 0, 0, 0, F(1, 2)])}
        torsion = (2,)
    return RootSystem(family, n, cartan, bases, gens, torsion, comp, {"gram": gd})


def system_from_name(name: str) -> RootSystem:
    """Parse ``"A3"``, ``"D5"``, ``"E7"`` style names."""
    name = name.strip().upper()
    if name in ("E6", "E7"):
        return catalog(name)
    return catalog(name[0], int(name[1:]))


def describe(system: RootSystem) -> dict:
    """JSON-ready summary used by the ``rootinfo`` command."""

    def fr(x: Fraction) -> str:
        return str(x)

    return {
        "family": system.family,
        "rank": system.rank,
        "cartan": [list(r) for r in system.cartan],
        "bases": {
            name: {
                "symbols": list(B.symbols),
                "coordinates": list(B.coords),
                "zeta_expressions": {s: [fr(x) for x in B.zeta_of[s]] for s in B.symbols},
            }
            for name, B in system.bases.items()
        },
        "coweight_generators": {
            g: {"coroot_coordinates": [fr(x) for x in v], "order": system.generator_order(g)}
            for g, v in system.coweight_generators.items()
        },
        "torsion": list(system.torsion),
    }


__all__ = [
    "FAMILIES",
    "Basis",
    "RootSystem",
    "Weight",
    "Coweight",
    "GramData",
    "catalog",
    "system_from_name",
    "describe",
    "reflect",
    "reflect_coweight",
    "pair_with_coroot",
    "hardcoded_cartan",
    "gram_data",
]
