"""Closed-form integral tables recomputed by the engine.

Each :class:`ReproLine` pairs a query with its expected value from the
published closed form and the value the engine computes.  Lines are
independent, so :func:`run_lines` may evaluate them in worker processes; the
output is always sorted by query id.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .bruhat import WeylWord, named_subdiagram
from .chevalley import cap_fibered
from .fixtures import load_fixture
from .integrality import half_delta_class
from .localization import localize
from .mpoly import MultiPoly, elementary_symmetric
from .rootdata import catalog, pair_with_coroot

SCOPES = ("A", "C", "B", "D", "E6", "E7")
DEFAULT_RANKS = {"A": range(2, 7), "C": range(2, 7), "B": range(2, 6), "D": range(4, 7)}

Value = Fraction | tuple[Fraction, ...]


@dataclass(frozen=True)
class ReproSpec:
    qid: str
    query: str
    expected: Value
    compute: Callable[[], Value]


@dataclass(frozen=True)
class ReproLine:
    qid: str
    query: str
    expected: Value
    computed: Value

    @property
    def ok(self) -> bool:
        return self.expected == self.computed

    def format(self) -> str:
        def fmt(v: Value) -> str:
            return "(" + ", ".join(map(str, v)) + ")" if isinstance(v, tuple) else str(v)

        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.qid}: {self.query} expected {fmt(self.expected)} computed {fmt(self.computed)}"


def _eps(S, i: int):
    return S.symbol(f"e{i}")


def _c(S, k: int, r: int) -> MultiPoly:
    return elementary_symmetric([_eps(S, i) for i in range(1, r + 1)], k, "eps")


def _zeta(S, i: int) -> MultiPoly:
    return MultiPoly.from_weight(S.fundamental_weight(i), "zeta")


# --- families ------------------------------------------------------------


def _unitary_like(fam: str, n: int, d: int) -> list[ReproSpec]:
    S = catalog(fam, n)
    den = n + 1 if fam == "A" else 2
    out = []
    for r in range(1, n + 1):
        z = S.generator("z0", d)
        e = WeylWord(S, ())
        sr = WeylWord(S, (r,))
        c1, c2 = _c(S, 1, r), _c(S, 2, r)
        out.append(ReproSpec(
            f"{fam}{n}.r{r}.c1", f"{S.name} r={r} cap(c1, e) at {d}z0", Fraction(-d * r, den),
            _bind(cap_fibered, c1, e, z)))
        exp2 = Fraction(d * (r - 1), den) * (1 if fam == "A" else -1)
        out.append(ReproSpec(
            f"{fam}{n}.r{r}.c2", f"{S.name} r={r} cap(c2, {r}) at {d}z0", exp2, _bind(cap_fibered, c2, sr, z)))
    return out


def _odd_orthogonal(n: int, d: int) -> list[ReproSpec]:
    S = catalog("B", n)
    z = S.generator("z0", d)
    out = []
    for r in range(1, n + 1):
        f = half_delta_class(S, r).polynomial
        exp = Fraction((-1) ** (n - r + 1) * d, 2)
        if r < n:
            w = named_subdiagram(S, r, "Gamma")
            out.append(ReproSpec(f"B{n}.r{r}", f"B{n} r={r} localize(f, Gamma) at {d}z0", exp, _bind(localize, S, w, f, z)))
        else:
            out.append(ReproSpec(f"B{n}.r{r}", f"B{n} r={r} cap(f, e) at {d}z0", exp, _bind(cap_fibered, f, WeylWord(S, ()), z)))
    return out


def _even_orthogonal(n: int, d: int) -> list[ReproSpec]:
    S = catalog("D", n)
    z0, z1 = S.generator("z0", d), S.generator("z1", d)
    out = []
    for r in range(1, n + 1):
        cls = half_delta_class(S, r).polynomial
        sign = (-1) ** (n - r + 1)
        tag = f"D{n}.r{r}"
        if r != n - 1:
            w = named_subdiagram(S, r, "Gamma'")
            out.append(ReproSpec(f"{tag}.a", f"D{n} r={r} localize(f, Gamma') at {d}z0", Fraction(-sign * d, 2),
                                 _bind(localize, S, w, cls, z0)))
            out.append(ReproSpec(f"{tag}.c", f"D{n} r={r} localize(f, Gamma') at {d}z1",
                                 sign * (Fraction(d * n, 4) - Fraction(d, 2)), _bind(localize, S, w, cls, z1)))
        if r < n - 1:
            w = named_subdiagram(S, r, "Gamma")
            out.append(ReproSpec(f"{tag}.b", f"D{n} r={r} localize(f, Gamma) at {d}z1", sign * Fraction(d * n, 4),
                                 _bind(localize, S, w, cls, z1)))
        if r == n - 1:
            w = named_subdiagram(S, r, "Gamma''")
            out.append(ReproSpec(f"{tag}.d", f"D{n} r={r} localize(g, Gamma'') at {d}z1",
                                 Fraction(d, 2) - Fraction(d * (n - 2), 2), _bind(localize, S, w, cls, z1)))
    return out


def _zeta_table(S, expected: Sequence[Fraction], d: int) -> ReproSpec:
    z = S.generator("z0", d)
    return ReproSpec(
        f"{S.name}.zeta", f"{S.name} zeta_i({d}z0), i=1..{S.rank}",
        tuple(d * x for x in expected),
        _bind(_weights_at, S, tuple(S.fundamental_weight(i) for i in range(1, S.rank + 1)), z),
    )


def _weights_at(S, weights, z) -> tuple[Fraction, ...]:
    return tuple(pair_with_coroot(w, z) for w in weights)


def _t_table(S, expected: Sequence[Fraction], d: int) -> ReproSpec:
    z = S.generator("z0", d)
    k = len(expected)
    return ReproSpec(
        f"{S.name}.t", f"{S.name} t_i({d}z0), i=1..{k}", tuple(d * x for x in expected),
        _bind(_weights_at, S, tuple(S.symbol(f"t{i}") for i in range(1, k + 1)), z),
    )


def _e6(d: int) -> list[ReproSpec]:
    S = catalog("E6")
    F = Fraction
    table = (F(1, 3), F(-1, 3), F(0), F(1, 3), F(-1, 3), F(0))
    out = [_zeta_table(S, table, d)]
    e = WeylWord(S, ())
    z = S.generator("z0", d)
    for r in (1, 2, 4, 5):
        out.append(ReproSpec(f"E6.case1.r{r}", f"E6 r={r} cap(zeta_{r}, e) at {d}z0", -d * table[r - 1],
                             _bind(cap_fibered, _zeta(S, r), e, z)))
    t = [None] + [S.symbol(f"t{i}") for i in range(1, 7)]
    out.append(_t_table(S, (F(1, 3), F(-2, 3), F(1, 3), F(1, 3), F(-2, 3), F(1, 3), F(0)), d))
    out.append(ReproSpec("E6.case2.r3", f"E6 r=3 cap(c2(t1,t2,t3), 3) at {d}z0", F(-d, 3),
                         _bind(cap_fibered, elementary_symmetric(t[1:4], 2, "t"), WeylWord(S, (3,)), z)))
    out.append(ReproSpec("E6.case3.r6", f"E6 r=6 cap(c3(t1..t6), 3,6) at {d}z0", F(2 * d, 3),
                         _bind(cap_fibered, elementary_symmetric(t[1:7], 3, "t"), WeylWord(S, (3, 6)), z)))
    return out


def _e7(d: int) -> list[ReproSpec]:
    S = catalog("E7")
    F = Fraction
    table = (F(1, 2), F(0), F(1, 2), F(0), F(0), F(0), F(1, 2))
    out = [_zeta_table(S, table, d)]
    e = WeylWord(S, ())
    z = S.generator("z0", d)
    for r in (1, 3, 7):
        out.append(ReproSpec(f"E7.case1.r{r}", f"E7 r={r} cap(zeta_{r}, e) at {d}z0", -d * table[r - 1],
                             _bind(cap_fibered, _zeta(S, r), e, z)))
    half = F(1, 2)
    out.append(_t_table(S, (half, -half, half, -half, half, half, half, F(0)), d))
    t = [None] + [S.symbol(f"t{i}") for i in range(1, 8)]
    out.append(ReproSpec("E7.case2.r2", f"E7 r=2 cap(t1*t2, 2) at {d}z0", F(d, 2),
                         _bind(cap_fibered, elementary_symmetric(t[1:3], 2, "t"), WeylWord(S, (2,)), z)))
    out.append(ReproSpec("E7.case2.r4", f"E7 r=4 cap(c2(t1..t4), 4) at {d}z0", F(-d, 2),
                         _bind(cap_fibered, elementary_symmetric(t[1:5], 2, "t"), WeylWord(S, (4,)), z)))
    out.append(ReproSpec("E7.case3.r5", f"E7 r=5 cap(P5, 4,6,5) at {d}z0", F(-d, 2),
                         _bind(cap_fibered, load_fixture("e7-p5"), WeylWord(S, (4, 6, 5)), z)))
    out.append(ReproSpec("E7.case4.r6", f"E7 r=6 cap(P6, 4,5,6) at {d}z0", F(3 * d, 2),
                         _bind(cap_fibered, load_fixture("e7-p6"), WeylWord(S, (4, 5, 6)), z)))
    return out


# --- plumbing ------------------------------------------------------------


class _bind:
    """Picklable deferred call."""

    def __init__(self, fn, *args):
        self.fn = fn
        self.args = args

    def __call__(self):
        return self.fn(*self.args)


def specs(scope: str, ranks: Iterable[int] | None = None, d: int = 1) -> list[ReproSpec]:
    """Query list for ``scope`` in ``SCOPES`` or ``"all"``."""
    if scope == "all":
        return [s for sc in SCOPES for s in specs(sc, None, d)]
    scope = scope.upper()
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}; expected one of {', '.join(SCOPES)}, all")
    if scope == "E6":
        return _e6(d)
    if scope == "E7":
        return _e7(d)
    ranks = list(ranks) if ranks is not None else list(DEFAULT_RANKS[scope])
    out: list[ReproSpec] = []
    for n in ranks:
        catalog(scope, n)  # validates the rank
        if scope in ("A", "C"):
            out += _unitary_like(scope, n, d)
        elif scope == "B":
            out += _odd_orthogonal(n, d)
        else:
            out += _even_orthogonal(n, d)
    return out


def _evaluate(spec: ReproSpec) -> ReproLine:
    return ReproLine(spec.qid, spec.query, spec.expected, spec.compute())


def default_jobs() -> int:
    env = os.environ.get("FIBSCHUBERT_JOBS", "")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        raise ValueError(f"FIBSCHUBERT_JOBS must be an integer, got {env!r}") from None


def run_lines(items: Sequence[ReproSpec], jobs: int | None = None) -> list[ReproLine]:
    jobs = default_jobs() if jobs is None else jobs
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            lines = list(ex.map(_evaluate, items))
    else:
        lines = [_evaluate(s) for s in items]
    return sorted(lines, key=lambda l: _sort_key(l.qid))


def _sort_key(qid: str) -> tuple:
    parts = []
    for p in qid.replace(".", " ").split():
        head = p.rstrip("0123456789")
        tail = p[len(head):]
        parts.append((head, int(tail) if tail else -1))
    return tuple(parts)


def reproduce(scope: str, ranks: Iterable[int] | None = None, d: int = 1, jobs: int | None = None) -> list[ReproLine]:
    return run_lines(specs(scope, ranks, d), jobs)


__all__ = ["SCOPES", "ReproLine", "ReproSpec", "specs", "run_lines", "reproduce", "default_jobs"]
