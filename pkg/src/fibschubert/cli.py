"""Command-line front end.

Exit status: 0 on success, 1 on a mathematical error (degree mismatch,
inadmissible word, a reproduce mismatch, ...), 2 on a usage error.

Words are comma-separated letter lists printed left to right, e.g.
``--word 4,6,5`` is ``s4 s6 s5`` (``s5`` acts first).  ``e`` or an empty
string is the identity.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, TextIO

from .bruhat import WeylWord, named_subdiagram
from .chevalley import CapQuery, cap
from .fixtures import FIXTURES, load_fixture
from .integrality import (
    ParabolicChoice,
    certify,
    half_delta_class,
    in_invariant_span,
    invariant_basis,
    invariant_basis_mod_Iplus,
)
from .localization import localize
from .mpoly import MultiPoly, PolyParseError, parse_poly, read_poly_text
from .reproduce import DEFAULT_RANKS, SCOPES, default_jobs, reproduce
from .rootdata import FAMILIES, Coweight, RootSystem, catalog, describe

SUBCOMMANDS = ("rootinfo", "cap", "localize", "invariants", "certify", "reproduce")
_SUBDIAGRAMS = {"gamma": "Gamma", "gammaprime": "Gamma'", "gammadoubleprime": "Gamma''",
                "gamma'": "Gamma'", "gamma''": "Gamma''"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    family: str | None = None
    rank: int | None = None
    r: int | None = None
    word: str | None = None
    subdiagram: str | None = None
    poly: str | None = None
    poly_file: str | None = None
    fixture: str | None = None
    d: int = 1
    generator: str = "z0"
    coweight: str | None = None
    mode: str = "fibered"
    method: str = "split"
    degree: int | None = None
    mod_iplus: bool = False
    scope: str | None = None
    ranks: str | None = None
    output: str = "text"
    jobs: int | None = None
    extra: dict = field(default_factory=dict)


# --- validation ------------------------------------------------------------


def _system(cfg: RunConfig) -> RootSystem:
    fam = cfg.family
    if fam is None and cfg.fixture is not None:
        fam = "E7"
    if fam is None:
        raise UsageError("--family is required")
    fam = fam.upper()
    if fam in ("E6", "E7") or fam == "E":
        if fam == "E":
            if cfg.rank not in (6, 7):
                raise UsageError("family E needs --rank 6 or 7")
            fam = f"E{cfg.rank}"
        try:
            return catalog(fam, cfg.rank)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if fam not in FAMILIES:
        raise UsageError(f"unknown family {cfg.family!r}; expected one of {', '.join(FAMILIES)}")
    if cfg.rank is None:
        raise UsageError(f"--rank is required for family {fam}")
    try:
        return catalog(fam, cfg.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _orbit(cfg: RunConfig, S: RootSystem, required: bool = True) -> int | None:
    if cfg.r is None:
        if required:
            raise UsageError("--r (the removed simple root) is required")
        return None
    if not 1 <= cfg.r <= S.rank:
        raise UsageError(f"--r must lie in 1..{S.rank}, got {cfg.r}")
    return cfg.r


def _word(cfg: RunConfig, S: RootSystem) -> WeylWord:
    try:
        return WeylWord.parse(S, cfg.word or "")
    except (ValueError, IndexError) as exc:
        raise UsageError(f"bad --word: {exc}") from None


def _coweight(cfg: RunConfig, S: RootSystem) -> Coweight:
    if cfg.coweight is not None:
        try:
            coords = [Fraction(x) for x in cfg.coweight.split(",")]
        except ValueError:
            raise UsageError(f"malformed --coweight {cfg.coweight!r}") from None
        if len(coords) != S.rank:
            raise UsageError(f"--coweight needs {S.rank} simple-coroot coordinates")
        return S.coweight(coords)
    if cfg.generator not in S.coweight_generators:
        raise UsageError(f"{S.name} has generators {', '.join(S.coweight_generators)}; got {cfg.generator!r}")
    return S.generator(cfg.generator, cfg.d)


def _polynomial(cfg: RunConfig, S: RootSystem, default: MultiPoly | None = None) -> MultiPoly:
    given = [x for x in (cfg.poly, cfg.poly_file, cfg.fixture) if x is not None]
    if len(given) > 1:
        raise UsageError("give at most one of --poly, --poly-file, --fixture")
    try:
        if cfg.fixture is not None:
            if S.family != "E7":
                raise UsageError("fixtures are E7 polynomials")
            return load_fixture(cfg.fixture)
        if cfg.poly_file is not None:
            with open(cfg.poly_file, encoding="utf-8") as fh:
                return parse_poly(read_poly_text(fh.read()), S)
        if cfg.poly is not None:
            return parse_poly(cfg.poly, S)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    except OSError as exc:
        raise UsageError(f"cannot read polynomial file: {exc}") from None
    except PolyParseError as exc:
        raise UsageError(f"polynomial syntax: {exc}") from None
    if default is None:
        raise UsageError("a polynomial is required (--poly, --poly-file or --fixture)")
    return default


def _frac_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


# --- subcommands -----------------------------------------------------------


def _cmd_rootinfo(cfg: RunConfig, out: TextIO) -> int:
    S = _system(cfg)
    data = describe(S)
    if cfg.output == "json":
        json.dump(data, out, indent=2)
        out.write("\n")
    else:
        out.write(f"{S.name}  torsion {tuple(S.torsion)}\n")
        out.write("cartan:\n")
        for row in S.cartan:
            out.write("  " + " ".join(f"{x:2d}" for x in row) + "\n")
        for g, info in data["coweight_generators"].items():
            out.write(f"{g} = ({', '.join(info['coroot_coordinates'])}) order {info['order']}\n")
    return 0


def _emit_value(cfg: RunConfig, out: TextIO, value: Fraction, payload: dict) -> None:
    if cfg.output == "json":
        payload = dict(payload, value=_frac_json(value))
        json.dump(payload, out)
        out.write("\n")
    else:
        out.write(f"{value}\n")


def _cmd_cap(cfg: RunConfig, out: TextIO) -> int:
    S = _system(cfg)
    w = _word(cfg, S)
    f = _polynomial(cfg, S)
    z = _coweight(cfg, S) if cfg.mode == "fibered" else None
    value = cap(CapQuery(f, w, z, cfg.mode))
    _emit_value(cfg, out, value, {
        "family": S.family, "rank": S.rank, "word": list(w.letters), "mode": cfg.mode,
        "polynomial": str(f), "coweight": [str(c) for c in z.coords] if z else None,
    })
    return 0


def _auto_subdiagram(S: RootSystem, r: int) -> str:
    n = S.rank
    if S.family == "B":
        return "Gamma"
    if S.family == "D":
        return "Gamma''" if r == n - 1 else ("Gamma'" if r == n else "Gamma")
    raise UsageError(f"no named subdiagrams for {S.name}; pass --word")


def _cmd_localize(cfg: RunConfig, out: TextIO) -> int:
    S = _system(cfg)
    if cfg.word is not None and cfg.subdiagram is not None:
        raise UsageError("give either --word or --subdiagram")
    r = _orbit(cfg, S, required=cfg.word is None)
    sub = None
    if cfg.word is not None:
        w = _word(cfg, S)
    else:
        key = (cfg.subdiagram or "auto").lower()
        sub = _auto_subdiagram(S, r) if key == "auto" else _SUBDIAGRAMS.get(key)
        if sub is None:
            raise UsageError(f"unknown subdiagram {cfg.subdiagram!r}")
        try:
            w = named_subdiagram(S, r, sub)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    default = half_delta_class(S, r).polynomial if r is not None and S.family in ("B", "D") else None
    f = _polynomial(cfg, S, default)
    z = _coweight(cfg, S)
    value = localize(S, w, f, z, cfg.method)
    _emit_value(cfg, out, value, {
        "family": S.family, "rank": S.rank, "orbit_r": r, "subdiagram": sub, "word": list(w.letters),
        "polynomial": str(f), "coweight": [str(c) for c in z.coords],
    })
    return 0


def _cmd_invariants(cfg: RunConfig, out: TextIO) -> int:
    S = _system(cfg)
    r = _orbit(cfg, S)
    if cfg.degree is None or cfg.degree < 1:
        raise UsageError("--degree must be a positive integer")
    P = ParabolicChoice(S, r)
    basis = (invariant_basis_mod_Iplus if cfg.mod_iplus else invariant_basis)(S, P, cfg.degree)
    contains = None
    if any(x is not None for x in (cfg.poly, cfg.poly_file, cfg.fixture)):
        f = _polynomial(cfg, S)
        if f.degree() != cfg.degree:
            raise ValueError(f"polynomial has degree {f.degree()}, basis degree is {cfg.degree}")
        contains = in_invariant_span(f, basis, cfg.mod_iplus)
    if cfg.output == "json":
        json.dump({"family": S.family, "rank": S.rank, "orbit_r": r, "degree": cfg.degree,
                   "modulo_iplus": cfg.mod_iplus, "dimension": len(basis),
                   "basis": [str(b) for b in basis], "contains_polynomial": contains}, out)
        out.write("\n")
    else:
        out.write(f"dimension {len(basis)}\n")
        for b in basis:
            out.write(f"{b}\n")
        if contains is not None:
            out.write(f"polynomial in span: {'yes' if contains else 'no'}\n")
    return 0


def _cmd_certify(cfg: RunConfig, out: TextIO) -> int:
    S = _system(cfg)
    r = _orbit(cfg, S)
    if cfg.generator not in S.coweight_generators:
        raise UsageError(f"{S.name} has generators {', '.join(S.coweight_generators)}; got {cfg.generator!r}")
    cert = certify(S, r, cfg.generator, cfg.d)
    if cfg.output == "json":
        json.dump(cert.to_json(), out, indent=2)
        out.write("\n")
    else:
        out.write(f"{S.name} r={r} z={cfg.d}*{cfg.generator}: {'integral' if cert.integral else 'not integral'}\n")
        for w in cert.witnesses:
            where = w.subdiagram or f"word {w.word}"
            out.write(f"  {w.constructor} on {where}: {w.value}\n")
    return 0


def _parse_ranks(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        if "-" in text:
            a, b = text.split("-")
            return list(range(int(a), int(b) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"malformed --ranks {text!r}; use e.g. 2-5 or 4,6") from None


def _cmd_reproduce(cfg: RunConfig, out: TextIO) -> int:
    scope = cfg.scope or "all"
    if scope != "all" and scope.upper() not in SCOPES:
        raise UsageError(f"unknown scope {scope!r}; expected one of {', '.join(SCOPES)}, all")
    ranks = _parse_ranks(cfg.ranks)
    if ranks is not None and (scope == "all" or scope.upper() not in DEFAULT_RANKS):
        raise UsageError("--ranks applies to the A, C, B, D scopes only")
    try:
        jobs = cfg.jobs if cfg.jobs is not None else default_jobs()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if ranks is not None:
        for n in ranks:
            try:
                catalog(scope.upper(), n)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
    lines = reproduce(scope, ranks, cfg.d, jobs)
    if cfg.output == "json":
        def val(v):
            return [_frac_json(x) for x in v] if isinstance(v, tuple) else _frac_json(v)

        json.dump([{"id": l.qid, "query": l.query, "expected": val(l.expected),
                    "computed": val(l.computed), "match": l.ok} for l in lines], out, indent=2)
        out.write("\n")
    else:
        for l in lines:
            out.write(l.format() + "\n")
        out.write(f"{sum(l.ok for l in lines)}/{len(lines)} PASS\n")
    return 0 if all(l.ok for l in lines) else 1


_COMMANDS = {
    "rootinfo": _cmd_rootinfo,
    "cap": _cmd_cap,
    "localize": _cmd_localize,
    "invariants": _cmd_invariants,
    "certify": _cmd_certify,
    "reproduce": _cmd_reproduce,
}


# --- argument parsing ------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fibschubert", description="Exact Schubert calculus on fibered coadjoint orbits.")
    p.add_argument("--json", dest="output", action="store_const", const="json", default="text",
                   help="machine-readable output")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def system_args(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--family", help="A, B, C, D, E6 or E7")
        sp.add_argument("--rank", type=int)
        sp.add_argument("--json", dest="output", action="store_const", const="json", default=argparse.SUPPRESS)

    def poly_args(sp: argparse.ArgumentParser) -> None:
        g = sp.add_argument_group("polynomial source")
        g.add_argument("--poly", help="inline polynomial, e.g. 't1*t2'")
        g.add_argument("--poly-file", help="file in the polynomial grammar ('#' starts a comment)")
        g.add_argument("--fixture", help=f"bundled polynomial: {', '.join(FIXTURES)}")

    def coweight_args(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--d", type=int, default=1, help="multiple of the generator (default 1)")
        sp.add_argument("--generator", default="z0", help="coweight generator id (default z0)")
        sp.add_argument("--coweight", help="explicit simple-coroot coordinates, comma-separated")

    sp = sub.add_parser("rootinfo", help="dump a root-system descriptor")
    system_args(sp)

    sp = sub.add_parser("cap", help="cap a class with a (fibered) Schubert class")
    system_args(sp)
    sp.add_argument("--word", required=True, help="comma-separated letters, left to right (e.g. 4,6,5)")
    poly_args(sp)
    coweight_args(sp)
    sp.add_argument("--vertical", dest="mode", action="store_const", const="vertical", default="fibered",
                    help="cap against the fibre class instead")

    sp = sub.add_parser("localize", help="integrate by fixed-point localization")
    system_args(sp)
    sp.add_argument("--r", type=int)
    sp.add_argument("--subdiagram", help="auto, Gamma, GammaPrime or GammaDoublePrime (default auto)")
    sp.add_argument("--word", help="explicit word of a projective chain")
    poly_args(sp)
    coweight_args(sp)
    sp.add_argument("--method", choices=("split", "full"), default="split")

    sp = sub.add_parser("invariants", help="residual Weyl-group invariants")
    system_args(sp)
    sp.add_argument("--r", type=int)
    sp.add_argument("--degree", type=int)
    sp.add_argument("--mod-iplus", action="store_true", help="work modulo the ideal of positive-degree W-invariants")
    poly_args(sp)

    sp = sub.add_parser("certify", help="non-integrality certificate for a coweight class")
    system_args(sp)
    sp.add_argument("--r", type=int)
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--generator", default="z0")

    sp = sub.add_parser("reproduce", help="recompute the closed-form tables")
    sp.add_argument("scope", nargs="?", default=None, help="A, C, B, D, E6, E7 or all")
    sp.add_argument("--all", dest="scope", action="store_const", const="all")
    sp.add_argument("--ranks", help="rank range for A/C/B/D, e.g. 2-5")
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--jobs", type=int, help="worker processes (default: FIBSCHUBERT_JOBS or 1)")
    sp.add_argument("--json", dest="output", action="store_const", const="json", default=argparse.SUPPRESS)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(subcommand=ns.subcommand)
    for k, v in vars(ns).items():
        if hasattr(cfg, k):
            setattr(cfg, k, v)
    return cfg


def run(cfg: RunConfig, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        return _COMMANDS[cfg.subcommand](cfg, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except (ValueError, ArithmeticError, IndexError) as exc:
        err.write(f"error: {exc}\n")
        return 1


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return run(config_from_args(ns))


__all__ = ["RunConfig", "UsageError", "build_parser", "config_from_args", "run", "main", "SUBCOMMANDS"]
