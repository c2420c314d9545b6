"""Words in simple reflections and their single-deletion covers.

A word ``(i_1, ..., i_l)`` denotes ``s_{i_1} ... s_{i_l}``: it is printed left
to right and the rightmost letter acts first.  Only words with pairwise
distinct letters are handled.  Such words are reduced, every element below
them in the Bruhat order is a subword, and the covers are exactly the
single deletions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Sequence

from .exactalg import ExactMatrix
from .rootdata import Coweight, RootSystem, reflect_coweight


@dataclass(frozen=True)
class WeylWord:
    system: RootSystem
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(int(i) for i in self.letters))
        for i in self.letters:
            self.system.check_index(i)

    @classmethod
    def parse(cls, system: RootSystem, text: str) -> WeylWord:
        """Parse a comma-separated letter list such as ``"4,6,5"``; empty means identity."""
        text = text.strip()
        if text in ("", "e"):
            return cls(system, ())
        try:
            letters = tuple(int(p) for p in text.split(","))
        except ValueError:
            raise ValueError(f"malformed word {text!r}") from None
        return cls(system, letters)

    def __len__(self) -> int:
        return len(self.letters)

    def length(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return ",".join(map(str, self.letters)) if self.letters else "e"

    def delete(self, p: int) -> WeylWord:
        return WeylWord(self.system, self.letters[:p] + self.letters[p + 1 :])

    def prefix(self, p: int) -> WeylWord:
        return WeylWord(self.system, self.letters[:p])

    def has_distinct_letters(self) -> bool:
        return len(set(self.letters)) == len(self.letters)

    def matrix(self, basis: str = "zeta") -> ExactMatrix:
        M = ExactMatrix.identity(self.system.rank)
        for j in self.letters:
            M = M @ self.system.reflection_matrix(j, basis)
        return M

    def act_coweight(self, h: Coweight) -> Coweight:
        for j in reversed(self.letters):
            h = reflect_coweight(j, h)
        return h


@dataclass(frozen=True)
class Admissibility:
    ok: bool
    reason: str = ""
    position: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_admissible(w: WeylWord) -> Admissibility:
    seen: dict[int, int] = {}
    for p, i in enumerate(w.letters):
        if i in seen:
            return Admissibility(False, f"letter {i} repeats at positions {seen[i] + 1} and {p + 1}", p)
        seen[i] = p
    L = w.letters
    for p in range(len(L) - 1):
        if all(w.system.commute(L[p], j) for j in L[p + 1 :]):
            return Admissibility(
                False, f"letter {L[p]} at position {p + 1} commutes with every letter to its right", p
            )
    return Admissibility(True)


@dataclass(frozen=True)
class CoverDatum:
    subword: WeylWord
    reflection_coroot: Coweight
    position: int


def deletions(w: WeylWord) -> list[CoverDatum]:
    """Single-deletion covers of a word with distinct letters.

    Deleting position ``p`` gives ``w = s_beta w'`` with ``beta`` the prefix
    ``s_{i_1} ... s_{i_{p-1}}`` applied to ``alpha_{i_p}``.
    """
    if not w.has_distinct_letters():
        raise ValueError(f"word {w} has repeated letters")
    out = []
    for p, i in enumerate(w.letters):
        h = w.prefix(p).act_coweight(w.system.coroot(i))
        out.append(CoverDatum(w.delete(p), h, p))
    return out


def covers(w: WeylWord) -> list[CoverDatum]:
    adm = is_admissible(w)
    if not adm:
        raise ValueError(f"word {w} is not admissible: {adm.reason}")
    return deletions(w)


def maximal_chains(w: WeylWord) -> Iterator[tuple[CoverDatum, ...]]:
    """All ``l(w)!`` deletion chains from ``w`` down to the empty word.

    Chains are ordered by the sequence of deleted original positions in
    lexicographic order; each step records the cover taken.
    """
    adm = is_admissible(w)
    if not adm:
        raise ValueError(f"word {w} is not admissible: {adm.reason}")
    n = len(w)
    for order in permutations(range(n)):
        alive = list(range(n))
        cur = w
        chain = []
        for orig in order:
            p = alive.index(orig)
            step = CoverDatum(cur.delete(p), cur.prefix(p).act_coweight(w.system.coroot(cur.letters[p])), p)
            chain.append(step)
            cur = step.subword
            alive.pop(p)
        yield tuple(chain)


def _adjacent(system: RootSystem, i: int, j: int) -> bool:
    return i != j and system.cartan[i - 1][j - 1] != 0


def projective_subdiagram_word(system: RootSystem, r: int, path: Sequence[int]) -> WeylWord:
    """Word ``s_(k) ... s_(1)`` of a projective chain ``path = (r, ...)``.

    The chain must start at ``r``, be a path in the Dynkin diagram with
    simple edges only, induce no extra edges, and contain ``r`` only once.
    The parabolic is the one of ``Pi minus {alpha_r}``.
    """
    path = tuple(int(i) for i in path)
    if not path:
        raise ValueError("empty subdiagram")
    for i in path:
        system.check_index(i)
    if path[0] != r:
        raise ValueError(f"subdiagram must start at alpha_{r}, got alpha_{path[0]}")
    if len(set(path)) != len(path):
        raise ValueError("subdiagram repeats a node")
    for a, b in zip(path, path[1:]):
        if not _adjacent(system, a, b):
            raise ValueError(f"alpha_{a} and alpha_{b} are not joined by an edge")
        if system.cartan[a - 1][b - 1] != -1 or system.cartan[b - 1][a - 1] != -1:
            raise ValueError(f"edge alpha_{a} - alpha_{b} is a multiple edge")
    for x in range(len(path)):
        for y in range(x + 2, len(path)):
            if _adjacent(system, path[x], path[y]):
                raise ValueError(f"alpha_{path[x]} and alpha_{path[y]} close a cycle or branch; not an A_k chain")
    return WeylWord(system, tuple(reversed(path)))


def named_subdiagram(system: RootSystem, r: int, name: str) -> WeylWord:
    """The D_n chains ``Gamma`` (to alpha_{n-1}), ``Gamma'`` (to alpha_n) and ``Gamma''`` ({alpha_{n-1}, alpha_{n-2}}), or the B_n chain ``Gamma``."""
    n = system.rank
    fam = system.family
    if fam == "B" and name == "Gamma":
        if r >= n:
            raise ValueError("Gamma needs r < n in type B")
        return projective_subdiagram_word(system, r, range(r, n))
    if fam != "D":
        raise ValueError(f"no named subdiagram {name!r} for {system.name}")
    if name == "Gamma":
        if r >= n - 1:
            raise ValueError("Gamma needs r < n-1")
        return projective_subdiagram_word(system, r, range(r, n))
    if name == "Gamma'":
        if r == n - 1:
            raise ValueError("Gamma' needs r != n-1")
        if r == n:
            return WeylWord(system, ())  # n - r = 0 roots
        return projective_subdiagram_word(system, r, tuple(range(r, n - 1)) + (n,))
    if name == "Gamma''":
        if r != n - 1:
            raise ValueError("Gamma'' needs r = n-1")
        return projective_subdiagram_word(system, r, (n - 1, n - 2))
    raise ValueError(f"unknown subdiagram {name!r}")


__all__ = [
    "WeylWord",
    "Admissibility",
    "CoverDatum",
    "is_admissible",
    "deletions",
    "covers",
    "maximal_chains",
    "projective_subdiagram_word",
    "named_subdiagram",
]
