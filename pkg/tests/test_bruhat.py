"""Deletion covers against a brute-force Bruhat order on the whole Weyl group."""

from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest

from fibschubert.bruhat import (
    WeylWord,
    covers,
    deletions,
    is_admissible,
    maximal_chains,
    named_subdiagram,
    projective_subdiagram_word,
)
from fibschubert.rootdata import catalog

Mat = tuple[tuple[int, ...], ...]


def _mul(A: Mat, B: Mat) -> Mat:
    n = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _simple(cartan, j: int) -> Mat:
    # s_j on zeta-coordinates (column vectors): x -> x - x_j * alpha_j, alpha_j = row j of the Cartan matrix
    n = len(cartan)
    return tuple(
        tuple(int(a == b) - (cartan[j][a] if b == j else 0) for b in range(n)) for a in range(n)
    )


class BruteWeylGroup:
    def __init__(self, system):
        self.system = system
        n = system.rank
        self.gens = [_simple(system.cartan, j) for j in range(n)]
        ident = tuple(tuple(int(a == b) for b in range(n)) for a in range(n))
        self.length = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for w in frontier:
                for s in self.gens:
                    ws = _mul(w, s)
                    if ws not in self.length:
                        self.length[ws] = self.length[w] + 1
                        nxt.append(ws)
            frontier = nxt
        self.inverse = {}
        for w in self.length:
            for v in self.length:
                if _mul(w, v) == ident:
                    self.inverse[w] = v
                    break
        self.reflections = {_mul(_mul(w, s), self.inverse[w]) for w in self.length for s in self.gens}

    def element(self, letters) -> Mat:
        n = self.system.rank
        out = tuple(tuple(int(a == b) for b in range(n)) for a in range(n))
        for j in letters:
            out = _mul(out, self.gens[j - 1])
        return out

    def covers(self, w: Mat) -> set[Mat]:
        return {tw for t in self.reflections if self.length[(tw := _mul(t, w))] == self.length[w] - 1}


GROUPS = {
    ("A", 3): 24,
    ("B", 3): 48,
    ("D", 4): 192,
}


@pytest.fixture(scope="module", params=sorted(GROUPS))
def group(request):
    fam, n = request.param
    G = BruteWeylGroup(catalog(fam, n))
    assert len(G.length) == GROUPS[request.param]
    return G


def _admissible_words(system, max_len: int):
    for k in range(1, max_len + 1):
        for letters in permutations(range(1, system.rank + 1), k):
            w = WeylWord(system, letters)
            if is_admissible(w):
                yield w


def test_covers_match_bruhat_order(group):
    count = 0
    for w in _admissible_words(group.system, 4):
        M = group.element(w.letters)
        assert group.length[M] == len(w)
        got = [group.element(c.subword.letters) for c in covers(w)]
        assert len(set(got)) == len(got)
        assert set(got) == group.covers(M)
        count += 1
    assert count > 10


def test_reflection_coroots(group):
    S = group.system
    n = S.rank
    # positive roots in simple-root coordinates, moved to zeta-coordinates
    roots = {
        tuple(sum(int(c[j]) * S.cartan[j][a] for j in range(n)) for a in range(n)) for c in S.positive_roots()
    }
    for w in _admissible_words(S, 4):
        M = group.element(w.letters)
        for c in covers(w):
            T = _mul(M, group.inverse[group.element(c.subword.letters)])
            assert T in group.reflections
            h = c.reflection_coroot.coords
            assert all(x.denominator == 1 for x in h)
            # I - T = beta h^T for the root beta of T
            D = [[int(a == b) - T[a][b] for b in range(n)] for a in range(n)]
            piv = next(b for b in range(n) if h[b])
            beta = [Fraction(D[a][piv], h[piv]) for a in range(n)]
            assert all(D[a][b] == beta[a] * h[b] for a in range(n) for b in range(n))
            assert sum(x * y for x, y in zip(beta, h)) == 2
            assert tuple(int(x) for x in beta) in roots or tuple(-int(x) for x in beta) in roots


def test_admissibility_examples():
    A3 = catalog("A", 3)
    adm = is_admissible(WeylWord(A3, (1, 3)))
    assert not adm and adm.position == 0 and "commutes" in adm.reason
    assert is_admissible(WeylWord(A3, (3, 2, 1)))
    rep = is_admissible(WeylWord(A3, (1, 2, 1)))
    assert not rep and "repeats" in rep.reason
    assert is_admissible(WeylWord(catalog("E7"), (4, 6, 5)))
    with pytest.raises(ValueError):
        covers(WeylWord(A3, (1, 3)))
    with pytest.raises(ValueError):
        deletions(WeylWord(A3, (1, 2, 1)))


def test_e7_position_two_coroot():
    E7 = catalog("E7")
    w = WeylWord(E7, (4, 5, 6))
    c = covers(w)[1]
    assert c.subword.letters == (4, 6)
    expected = [0] * 7
    expected[3] = expected[4] = 1
    assert list(c.reflection_coroot.coords) == expected


def test_cover_count_equals_length():
    B4 = catalog("B", 4)
    for w in _admissible_words(B4, 4):
        assert len(covers(w)) == len(w)


@pytest.mark.parametrize("letters", [(1,), (2, 1), (3, 2, 1), (1, 2, 3, 4)])
def test_maximal_chain_count(letters):
    w = WeylWord(catalog("A", 4), letters)
    chains = list(maximal_chains(w))
    assert len(chains) == factorial(len(w))
    assert all(ch[-1].subword.letters == () for ch in chains)
    assert len({tuple(s.subword.letters for s in ch) for ch in chains}) == len(chains)


def test_projective_subdiagram_validation():
    B3 = catalog("B", 3)
    with pytest.raises(ValueError, match="multiple edge"):
        projective_subdiagram_word(B3, 2, (2, 3))
    assert projective_subdiagram_word(B3, 1, (1, 2)).letters == (2, 1)
    D4 = catalog("D", 4)
    with pytest.raises(ValueError, match="not joined"):
        projective_subdiagram_word(D4, 1, (1, 3))
    with pytest.raises(ValueError, match="start"):
        projective_subdiagram_word(D4, 1, (2, 3))
    E6 = catalog("E6")
    with pytest.raises(ValueError):
        projective_subdiagram_word(E6, 1, (1, 1))


def test_named_subdiagrams_in_type_d():
    D5 = catalog("D", 5)
    assert named_subdiagram(D5, 2, "Gamma").letters == (4, 3, 2)
    assert named_subdiagram(D5, 2, "Gamma'").letters == (5, 3, 2)
    assert named_subdiagram(D5, 4, "Gamma''").letters == (3, 4)
    assert named_subdiagram(D5, 5, "Gamma'").letters == ()
    with pytest.raises(ValueError):
        named_subdiagram(D5, 4, "Gamma'")
    with pytest.raises(ValueError):
        named_subdiagram(D5, 2, "Gamma''")


def test_word_parsing():
    A3 = catalog("A", 3)
    assert WeylWord.parse(A3, "3,2,1").letters == (3, 2, 1)
    assert WeylWord.parse(A3, "e").letters == ()
    assert str(WeylWord(A3, ())) == "e"
    with pytest.raises(ValueError):
        WeylWord.parse(A3, "1;2")
    with pytest.raises(IndexError):
        WeylWord.parse(A3, "4")
