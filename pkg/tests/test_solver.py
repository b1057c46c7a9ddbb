import itertools

import pytest

from ekrlab.bounds import ak_max, formula_F, katona_f
from ekrlab.constructions import construct_U6, cross_pair_sizes
from ekrlab.core import VectorFamily, enumerate_Lk, permute_coordinates
from ekrlab.errors import InvalidInputError, ResourceLimitError
from ekrlab.setfam import all_k_sets, is_t_intersecting
from ekrlab.shifting import make_shifted
from ekrlab.solver import (
    cross_pair_search,
    exact_F,
    exact_F_forbidden,
    exact_max_diameter,
    exact_max_t_intersecting,
    exact_max_union_bounded,
    verify_vector_family,
)

from .conftest import bk_max_clique, dot, oracle_clique


def oracle_F(n, k, l):
    return oracle_clique(list(enumerate_Lk(n, k)), lambda v, w: dot(v, w) >= l)


SMALL = [(n, k, l) for n in range(1, 6) for k in range(1, min(n, 3) + 1)
         for l in range(-k, k + 1) if 2**k * (n * (n - 1) // 2 + 1) < 120]


@pytest.mark.parametrize("n,k,l", SMALL)
def test_exact_F_matches_oracle(n, k, l):
    res = exact_F(n, k, l)
    assert res.optimal
    assert res.value == oracle_F(n, k, l)
    assert verify_vector_family(res.witness, l=l)[0]
    assert len(res.witness) == res.value


@pytest.mark.parametrize("n,k,l", [(4, 2, 0), (5, 3, 0), (5, 2, -1), (4, 3, 1), (5, 3, -2)])
def test_symmetry_break_agrees(n, k, l):
    assert exact_F(n, k, l, symmetry_break=True).value == exact_F(n, k, l).value


def test_threads_agree():
    for cell in [(5, 3, 0), (4, 2, -1), (6, 3, 2)]:
        a, b = exact_F(*cell), exact_F(*cell, threads=2)
        assert (a.value, a.optimal) == (b.value, b.optimal)


def test_monotone_in_l():
    vals = [exact_F(5, 3, l).value for l in range(-3, 4)]
    assert vals == sorted(vals, reverse=True)


def test_monotone_in_n():
    vals = [exact_F(n, 2, 0).value for n in range(2, 8)]
    assert vals == sorted(vals)


def test_permutation_invariance():
    res = exact_F(5, 3, 0)
    perm = [3, 1, 5, 2, 4]
    moved = VectorFamily(5, [permute_coordinates(v, perm) for v in res.witness], k=3)
    assert verify_vector_family(moved, l=0)[0]


def test_edge_cases():
    assert exact_F(4, 2, 3).value == 0
    assert exact_F(4, 2, 2).value == 1
    with pytest.raises(InvalidInputError):
        exact_F(4, 2, -3)
    with pytest.raises(InvalidInputError):
        exact_F(3, 4, 0)


def test_within_restricts():
    u6 = construct_U6()
    res = exact_F(6, 3, 0, within=u6)
    assert res.value == 21
    with pytest.raises(InvalidInputError):
        exact_F(6, 3, 0, within=u6, symmetry_break=True)


def test_budget_reports_truncation():
    res = exact_F(6, 3, 0, node_budget=5)
    assert not res.optimal
    assert verify_vector_family(res.witness, l=0)[0]


def test_enumeration_cap():
    with pytest.raises(ResourceLimitError):
        exact_F(7, 3, 0, cap=100)


class TestForbidden:
    @pytest.mark.parametrize("n,k,l", [(3, 2, 0), (4, 2, 0), (3, 3, 1), (4, 2, 1)])
    def test_matches_oracle(self, n, k, l):
        res = exact_F_forbidden(n, k, l)
        want = oracle_clique(list(enumerate_Lk(n, k)), lambda v, w: dot(v, w) != -l - 1)
        assert res.value == want
        assert res.value >= katona_f(k, l) * len(all_k_sets(n, k))

    def test_refuses_shifted(self):
        fam = make_shifted(VectorFamily(4, list(enumerate_Lk(4, 2))[:5], k=2))
        with pytest.raises(InvalidInputError, match="shifted"):
            exact_F_forbidden(4, 2, 0, within=fam)

    def test_range(self):
        with pytest.raises(InvalidInputError):
            exact_F_forbidden(4, 2, 2)


class TestSetSearches:
    def test_t_intersecting(self):
        for k, s, t in [(5, 3, 1), (6, 3, 2), (6, 3, 1), (7, 4, 2)]:
            res = exact_max_t_intersecting(k, s, t)
            assert res.value == ak_max(k, s, t)[0]
            assert is_t_intersecting(res.witness, t)

    def test_t_intersecting_cap(self):
        with pytest.raises(ResourceLimitError):
            exact_max_t_intersecting(12, 4, 1)

    def test_union_and_diameter(self):
        for n in range(1, 5):
            for s in range(n + 1):
                assert exact_max_union_bounded(n, s).value == katona_f(n, s)
                assert exact_max_diameter(n, s).value == katona_f(n, s)


def brute_cross(n, k, s, t):
    sets = all_k_sets(n, k).members
    best = 0
    inter = lambda a, b: (a & b).bit_count()  # noqa: E731
    for r in range(1, len(sets) + 1):
        for A in itertools.combinations(sets, r):
            if any(inter(a, b) < t for a in A for b in A):
                continue
            pool = [x for x in sets if all(inter(x, a) >= s for a in A)]
            if not pool:
                continue
            b = bk_max_clique(pool, lambda x, y: inter(x, y) >= t)
            best = max(best, r + b)
    return best


@pytest.mark.parametrize("n,k,s,t", [(4, 3, 2, 1), (5, 3, 2, 1)])
def test_cross_pair_search_oracle(n, k, s, t):
    res = cross_pair_search(n, k, s, t)
    assert res.optimal
    assert res.value == brute_cross(n, k, s, t)
    assert res.value >= max(cross_pair_sizes(n, k, s, t).values())


def test_cross_pair_cap():
    with pytest.raises(ResourceLimitError):
        cross_pair_search(12, 5, 3, 1)


def test_formula_search_agreement_small():
    for n in range(2, 6):
        for k in range(1, min(n, 3) + 1):
            for l in range(-k, k + 1):
                f = formula_F(n, k, l)
                if f is not None and f.exact:
                    assert exact_F(n, k, l).value == f.value, (n, k, l)
