"""Acceptance criteria 1-10, one verdict line per criterion.

Run under pytest (verdicts are printed in the terminal summary) or directly
with ``python3 tests/test_acceptance.py``.  Parts that the engine cannot
reach are strict xfails: they stay red in the verdict line and turn into an
error if they ever start passing.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass
from functools import cache
from typing import Callable

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from fibschubert.chevalley import cap_fibered
from fibschubert.fixtures import load_fixture
from fibschubert.integrality import (
    ParabolicChoice,
    certify,
    in_invariant_span,
    invariant_basis,
    invariant_basis_mod_Iplus,
)
from fibschubert.localization import localize
from fibschubert.reproduce import ReproLine, run_lines, specs
from fibschubert.rootdata import catalog

try:
    from conftest import ACCEPTANCE
except ImportError:  # pragma: no cover - script mode without the tests dir on the path
    ACCEPTANCE = {}


@dataclass(frozen=True)
class Part:
    name: str
    ok: bool
    detail: str


def _lines_part(name: str, lines: list[ReproLine]) -> Part:
    bad = [l for l in lines if not l.ok]
    detail = f"{len(lines) - len(bad)}/{len(lines)} exact"
    if bad:
        detail += f"; first mismatch {bad[0].qid}: expected {bad[0].expected} computed {bad[0].computed}"
    return Part(name, not bad, detail)


def _certify_part(name: str, cases: list[tuple[str, int | None, int, str, int]], expect: Callable) -> Part:
    bad = []
    for fam, n, r, gen, d in cases:
        S = catalog(fam, n)
        try:
            cert = certify(S, r, gen, d)
        except ArithmeticError as exc:
            bad.append(f"{S.name} r={r} {d}{gen}: {exc}")
            continue
        if cert.integral != expect(S, gen, d):
            bad.append(f"{S.name} r={r} {d}{gen}")
    detail = f"{len(cases) - len(bad)}/{len(cases)} certificates"
    if bad:
        detail += f"; first mismatch {bad[0]}"
    return Part(name, not bad, detail)


def _run_check(fn: Callable[[], None]) -> str | None:
    try:
        fn()
    except AssertionError as exc:
        return f"{fn.__name__}: {exc}".splitlines()[0]
    return None


# --- criteria ------------------------------------------------------------


@cache
def criterion_1() -> tuple[Part, ...]:
    lines = [l for n in range(2, 7) for d in range(0, n + 2) for l in run_lines(specs("A", [n], d), 1)]
    cases = [("A", n, r, "z0", d) for n in range(2, 7) for r in range(1, n + 1) for d in range(0, n + 2)]
    return (
        _lines_part("values", lines),
        _certify_part("certify", cases, lambda S, g, d: d % (S.rank + 1) == 0),
    )


@cache
def criterion_2() -> tuple[Part, ...]:
    lines = [l for n in range(2, 7) for d in range(0, n + 2) for l in run_lines(specs("C", [n], d), 1)]
    cases = [("C", n, r, "z0", d) for n in range(2, 7) for r in range(1, n + 1) for d in range(0, n + 2)]
    return (
        _lines_part("values", lines),
        _certify_part("certify", cases, lambda S, g, d: d % 2 == 0),
    )


@cache
def criterion_3() -> tuple[Part, ...]:
    lines = [l for d in (1, 2) for l in run_lines(specs("B", range(2, 6), d), 1)]
    return (_lines_part("values", lines),)


@cache
def criterion_4() -> tuple[Part, ...]:
    lines = [l for d in (1, 2) for l in run_lines(specs("D", range(4, 7), d), 1)]
    cases = [
        ("D", n, r, g, d)
        for n in range(4, 7)
        for r in range(1, n + 1)
        for g in catalog("D", n).coweight_generators
        for d in range(1, 5)
    ]
    return (
        _lines_part("formulas", lines),
        _certify_part("certify", cases, lambda S, g, d: S.generator(g, d).is_coroot_lattice()),
    )


@cache
def criterion_5() -> tuple[Part, ...]:
    keep = ("E6.zeta", "E6.case1", "E6.case2", "E6.case3")
    lines = [l for d in (1, 2) for l in run_lines(specs("E6", None, d), 1) if l.qid.startswith(keep)]
    return (_lines_part("values", lines),)


@cache
def criterion_6() -> tuple[Part, ...]:
    by_d = {d: run_lines(specs("E7", None, d), 1) for d in (1, 2)}
    at = lambda prefix, ds: [l for d in ds for l in by_d[d] if l.qid.startswith(prefix)]  # noqa: E731
    return (
        _lines_part("zeta table", at("E7.zeta", (1, 2))),
        _lines_part("t1*t2", at("E7.case2.r2", (1, 2))),
        _lines_part("c2(t1..t4)", at("E7.case2.r4", (1, 2))),
        _lines_part("P5 and P6", at("E7.case3", (1,)) + at("E7.case4", (1,))),
    )


@cache
def criterion_7() -> tuple[Part, ...]:
    total, bad = 0, []
    for scope, ranks in (("B", range(2, 6)), ("D", range(4, 7))):
        for d in (1, 2):
            for s in specs(scope, ranks, d):
                if s.compute.fn is not localize:
                    continue
                S, w, f, z = s.compute.args
                total += 1
                a, b = localize(S, w, f, z), cap_fibered(f, w, z)
                if a != b:
                    bad.append(f"{s.qid} at d={d}: localize {a} cap {b}")
    detail = f"{total - len(bad)}/{total} subdiagram queries agree"
    if bad:
        detail += f"; first {bad[0]}"
    return (Part("cap = localize", not bad and total > 0, detail),)


@cache
def criterion_8() -> tuple[Part, ...]:
    E7 = catalog("E7")
    b5 = invariant_basis(E7, ParabolicChoice(E7, 5), 4)
    b6 = invariant_basis_mod_Iplus(E7, ParabolicChoice(E7, 6), 4)
    ok5 = len(b5) == 8 and in_invariant_span(load_fixture("e7-p5"), b5)
    ok6 = len(b6) == 2 and in_invariant_span(load_fixture("e7-p6"), b6, modulo_iplus=True)
    return (
        Part("P5 basis", ok5, f"dim {len(b5)}, contains P5: {ok5}"),
        Part("P6 basis mod I+", ok6, f"dim {len(b6)}, contains P6: {ok6}"),
    )


@cache
def criterion_9() -> tuple[Part, ...]:
    import test_chevalley
    import test_exactalg
    import test_mpoly
    import test_rootdata

    def braid_relations() -> None:
        for fam, n in test_rootdata.SYSTEMS:
            test_rootdata.test_braid_relations(catalog(fam, n))

    def elemcomplete_identity() -> None:
        for n in range(1, 6):
            test_mpoly.test_elementary_complete_generating_identity(n)

    checks = [
        ("braid relations", braid_relations),
        ("I+ annihilation", test_chevalley.test_iplus_annihilation),
        ("factor order", test_chevalley.test_monomial_factor_order_independence),
        ("SNF/HNF", test_exactalg.test_smith_and_hermite_contract_on_random_matrices),
        ("elemcomplete identity", elemcomplete_identity),
    ]
    out = []
    for name, fn in checks:
        err = _run_check(fn)
        out.append(Part(name, err is None, "ok" if err is None else err))
    return tuple(out)


@cache
def criterion_10() -> tuple[Part, ...]:
    import test_bruhat

    out = []
    for fam, n in sorted(test_bruhat.GROUPS):
        G = test_bruhat.BruteWeylGroup(catalog(fam, n))
        words = list(test_bruhat._admissible_words(G.system, 4))
        err = _run_check(lambda: test_bruhat.test_covers_match_bruhat_order(G))
        out.append(Part(f"{fam}{n}", err is None, f"{len(words)} words" if err is None else err))
    return tuple(out)


CRITERIA: dict[int, Callable[[], tuple[Part, ...]]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
}


def verdict(k: int) -> tuple[bool, str]:
    parts = CRITERIA[k]()
    ok = all(p.ok for p in parts)
    return ok, "; ".join(f"{p.name}: {'ok' if p.ok else 'FAIL'} ({p.detail})" for p in parts)


def _record(k: int) -> None:
    ok, detail = verdict(k)
    ACCEPTANCE[k] = (ok, detail)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'} {detail}")


def _part(k: int, name: str) -> Part:
    _record(k)
    return next(p for p in CRITERIA[k]() if p.name == name)


# --- pytest entry points -----------------------------------------------------

SIGN_SP_C2 = (
    "the Chevalley recursion and fixed-point localization both give +d(r-1)/2 for the Sp c2 pairing; "
    "the closed form -d(r-1)/2 has the opposite sign"
)
D_TOP_GAMMA_PRIME = (
    "for r = n the subdiagram Gamma' is empty and the fixed-point sum gives -d/2 and -dn/4; "
    "the closed forms +d/2 and -(dn/4 - d/2) disagree with both independent engines"
)
E7_C2 = "the Chevalley recursion and fixed-point localization both give +d/2 for c2(t1..t4) on word (4); the closed form is -d/2"


def test_criterion_1_values():
    assert _part(1, "values").ok


def test_criterion_1_certify():
    assert _part(1, "certify").ok


@pytest.mark.xfail(strict=True, reason=SIGN_SP_C2)
def test_criterion_2_values():
    assert _part(2, "values").ok


def test_criterion_2_certify():
    assert _part(2, "certify").ok


def test_criterion_3():
    assert _part(3, "values").ok


@pytest.mark.xfail(strict=True, reason=D_TOP_GAMMA_PRIME)
def test_criterion_4_formulas():
    assert _part(4, "formulas").ok


def test_criterion_4_formulas_below_top():
    lines = [l for d in (1, 2) for l in run_lines(specs("D", range(4, 7), d), 1)]
    n_of = lambda qid: int(qid[1:qid.index(".")])  # noqa: E731
    below = [l for l in lines if int(l.qid.split(".")[1][1:]) < n_of(l.qid)]
    assert below and all(l.ok for l in below)


def test_criterion_4_certify():
    assert _part(4, "certify").ok


def test_criterion_5():
    assert _part(5, "values").ok


@pytest.mark.parametrize("name", ["zeta table", "t1*t2", "P5 and P6"])
def test_criterion_6(name):
    assert _part(6, name).ok


@pytest.mark.xfail(strict=True, reason=E7_C2)
def test_criterion_6_c2():
    assert _part(6, "c2(t1..t4)").ok


def test_criterion_7():
    assert _part(7, "cap = localize").ok


@pytest.mark.parametrize("name", ["P5 basis", "P6 basis mod I+"])
def test_criterion_8(name):
    assert _part(8, name).ok


@pytest.mark.parametrize("name", ["braid relations", "I+ annihilation", "factor order", "SNF/HNF", "elemcomplete identity"])
def test_criterion_9(name):
    assert _part(9, name).ok


@pytest.mark.parametrize("name", ["A3", "B3", "D4"])
def test_criterion_10(name):
    assert _part(10, name).ok


if __name__ == "__main__":
    failed = 0
    for k in CRITERIA:
        ok, detail = verdict(k)
        failed += not ok
        print(f"criterion {k}: {'PASS' if ok else 'FAIL'} {detail}", flush=True)
    sys.exit(1 if failed else 0)
