import itertools
import random

import pytest
from hypothesis import strategies as st

from ekrlab.core import SignedVector, VectorFamily, iter_Lk


def dot(v: SignedVector, w: SignedVector) -> int:
    """Coordinate-wise scalar product, independent of the bitmask formula."""
    return sum(a * b for a, b in zip(v.coords(), w.coords()))


def brute_Lk(n, k):
    return [SignedVector.from_coords(c) for c in itertools.product((-1, 0, 1), repeat=n)
            if sum(map(abs, c)) == k]


@st.composite
def signed_vectors(draw, n=None):
    n = n or draw(st.integers(1, 9))
    coords = draw(st.lists(st.sampled_from((-1, 0, 1)), min_size=n, max_size=n))
    return SignedVector.from_coords(coords)


@st.composite
def vector_pairs(draw):
    n = draw(st.integers(1, 9))
    return draw(signed_vectors(n)), draw(signed_vectors(n))


def random_subfamily(rng: random.Random, n: int, k: int, max_size: int = 25) -> VectorFamily:
    pool = list(iter_Lk(n, k))
    return VectorFamily(n, rng.sample(pool, rng.randint(1, min(max_size, len(pool)))), k=k)


@pytest.fixture
def rng():
    return random.Random(0)


def bk_max_clique(vertices, compatible) -> int:
    """Bron-Kerbosch with pivoting on plain Python sets; used as an oracle."""
    vs = [v for v in vertices if compatible(v, v)]
    nbr = {i: {j for j in range(len(vs)) if j != i and compatible(vs[i], vs[j])}
           for i in range(len(vs))}
    best = 0

    def bk(r, p, x):
        nonlocal best
        if not p and not x:
            best = max(best, r)
            return
        if r + len(p) <= best:
            return
        pivot = max(p | x, key=lambda u: len(nbr[u] & p))
        for v in list(p - nbr[pivot]):
            bk(r + 1, p & nbr[v], x & nbr[v])
            p = p - {v}
            x = x | {v}

    bk(0, set(nbr), set())
    return best


def mis_complement(vertices, compatible) -> int:
    """Maximum clique as a maximum independent set of the complement graph.

    Branches on a max-degree vertex; components of max degree <= 1 are
    counted directly.  Fast when the compatibility graph is dense.
    """
    vs = [v for v in vertices if compatible(v, v)]
    bad = {i: frozenset(j for j in range(len(vs)) if j != i and not compatible(vs[i], vs[j]))
           for i in range(len(vs))}

    def solve(alive):
        if not alive:
            return 0
        deg = {v: len(bad[v] & alive) for v in alive}
        v = max(alive, key=deg.get)
        if deg[v] <= 1:
            return len(alive) - sum(deg.values()) // 2
        return max(solve(alive - {v}), 1 + solve(alive - {v} - bad[v]))

    return solve(frozenset(range(len(vs))))


def oracle_clique(vertices, compatible) -> int:
    vs = list(vertices)
    m = len(vs)
    if m < 2:
        return bk_max_clique(vs, compatible)
    edges = sum(compatible(vs[i], vs[j]) for i in range(m) for j in range(i + 1, m))
    if edges > 0.6 * m * (m - 1) / 2:
        return mis_complement(vs, compatible)
    return bk_max_clique(vs, compatible)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
