import itertools
import random

import pytest

from ekrlab.bounds import kernel_defect_bound
from ekrlab.core import mask_from_indices
from ekrlab.errors import InvalidInputError, ResourceLimitError
from ekrlab.setfam import (
    U6_MATCHING_TABLE,
    SetFamily,
    all_k_sets,
    cross_intersection_report,
    family_link,
    find_kernels,
    has_diameter_at_most,
    has_disjoint_members,
    is_cross_intersecting,
    is_kernel,
    is_t_intersecting,
    max_pairwise_union,
    sunflower_center,
    sunflower_free_pick,
    verify_pair_matching,
)


def S(n, *sets, k=None):
    return SetFamily.from_sets(n, sets, k=k)


class TestPredicates:
    def test_t_intersecting(self):
        fam = S(5, (1, 2, 3), (1, 2, 4), (1, 2, 5))
        assert is_t_intersecting(fam, 2)
        assert not is_t_intersecting(fam, 3)

    def test_self_pairs_count(self):
        # a single 2-set is not 3-intersecting with itself
        assert not is_t_intersecting(S(4, (1, 2)), 3)

    def test_union_and_diameter(self):
        fam = S(4, (), (1,), (2,))
        assert max_pairwise_union(fam) == 2
        assert has_diameter_at_most(fam, 2) and not has_diameter_at_most(fam, 1)

    def test_cross(self):
        a, b = S(5, (1, 2, 3)), S(5, (1, 2, 4), (2, 3, 5))
        assert is_cross_intersecting(a, b, 2)
        rep = cross_intersection_report(a, b, 3)
        assert not rep.ok and rep.violation is not None

    def test_cross_vacuous(self):
        rep = cross_intersection_report(S(4, (1, 2)), SetFamily(4), 2)
        assert rep.ok and rep.vacuous

    def test_json_round_trip(self):
        fam = S(6, (1, 2, 3), (4, 5, 6), k=3)
        assert fam.to_json()["sets"] == [[1, 2, 3], [4, 5, 6]]
        assert SetFamily.from_json(fam.to_json()) == fam


def brute_disjoint(sets, count):
    return any(all(not a & b for a, b in itertools.combinations(c, 2))
               for c in itertools.combinations(sets, count))


class TestDisjointMembers:
    def test_against_brute_force(self):
        rng = random.Random(3)
        for _ in range(300):
            n = rng.randint(3, 8)
            pool = [m for m in range(1, 1 << n) if m.bit_count() <= 3]
            sets = rng.sample(pool, rng.randint(0, min(12, len(pool))))
            count = rng.randint(1, 4)
            assert has_disjoint_members(sets, count) == brute_disjoint(sets, count)

    def test_empty_set_counts(self):
        assert has_disjoint_members([0, 0b1], 2)

    def test_budget(self):
        sets = [m for m in range(1, 1 << 10) if m.bit_count() == 3]
        with pytest.raises(ResourceLimitError):
            has_disjoint_members(sets, 4, budget=5)


class TestKernels:
    def test_star_center_is_kernel(self):
        fam = SetFamily(9, [m for m in all_k_sets(9, 3) if m & 1], k=3)
        assert is_kernel(fam, 0b1)
        assert not is_kernel(fam, 0b10)
        assert find_kernels(fam, 1).sets() == [[1]]

    def test_within(self):
        fam = all_k_sets(9, 2)
        assert len(find_kernels(fam, 1)) == 9
        assert find_kernels(fam, 1, within=mask_from_indices([2, 3], 9)).sets() == [[2], [3]]

    def test_link(self):
        fam = S(5, (1, 2, 3), (1, 4, 5), (2, 3, 4), k=3)
        assert family_link(fam, 0b1).sets() == [[2, 3], [4, 5]]

    def test_non_kernel_link_bound(self):
        # a non-kernel s-set has a link of size at most k C(n-s-1, k-s-1)
        rng = random.Random(5)
        for _ in range(150):
            n, k, s = rng.choice([(9, 3, 1), (8, 2, 1), (10, 3, 2), (9, 3, 2)])
            pool = all_k_sets(n, k).members
            fam = SetFamily(n, rng.sample(pool, rng.randint(1, len(pool))), k=k)
            for T in all_k_sets(n, s):
                if not is_kernel(fam, T):
                    assert len(family_link(fam, T)) <= kernel_defect_bound(n, k, s)

    def test_needs_uniform(self):
        with pytest.raises(InvalidInputError):
            is_kernel(SetFamily(4, [1, 3]), 1)
        with pytest.raises(InvalidInputError):
            find_kernels(all_k_sets(5, 2), 2)


class TestSunflowers:
    def test_center(self):
        petals = [mask_from_indices(p, 4) for p in [(1, 2), (1, 3), (1, 4)]]
        assert sunflower_center(petals) == 0b1
        with pytest.raises(InvalidInputError):
            sunflower_center([0b011, 0b110, 0b101])

    def test_pick_random(self):
        rng = random.Random(11)
        for _ in range(200):
            n = 20
            core = set(rng.sample(range(1, n + 1), rng.randint(0, 3)))
            free = [x for x in range(1, n + 1) if x not in core]
            rng.shuffle(free)
            d = rng.randint(0, 4)
            count = max(d + 1, 2) + rng.randint(0, 2)
            width = 2
            if count * width > len(free):
                continue
            petals = [mask_from_indices(core | set(free[i * width:(i + 1) * width]), n)
                      for i in range(count)]
            D = mask_from_indices(rng.sample(range(1, n + 1), d), n)
            i = sunflower_free_pick(petals, D)
            assert D & petals[i] == D & sunflower_center(petals)

    def test_too_few_petals(self):
        petals = [mask_from_indices(p, 4) for p in [(1, 2), (1, 3)]]
        with pytest.raises(InvalidInputError):
            sunflower_free_pick(petals, mask_from_indices([2, 3], 9))


class TestMatchingTable:
    def test_table(self):
        assert len(U6_MATCHING_TABLE) == 9
        assert verify_pair_matching(U6_MATCHING_TABLE)

    def test_rows_cover_triples(self):
        triples = {frozenset(c) for c in itertools.combinations(range(2, 7), 3)}
        assert {frozenset(D) for D, _ in U6_MATCHING_TABLE} == triples - {frozenset({2, 3, 4})}

    def test_brute_force_existence(self):
        # an injective assignment exists; check by exhaustive search over pairs
        pairs = list(itertools.combinations(range(2, 7), 2))
        rows = [D for D, _ in U6_MATCHING_TABLE]

        def ok(D, p):
            return set(D) & set(p) == {p[1]}

        def extend(i, used):
            if i == len(rows):
                return True
            return any(extend(i + 1, used | {p}) for p in pairs
                       if p not in used and ok(rows[i], p))

        assert extend(0, frozenset())

    def test_rejects_bad_rows(self):
        assert not verify_pair_matching([((2, 3, 5), (3, 5))])  # meets {3, 5} twice
        row = ((2, 3, 5), (4, 5))
        assert not verify_pair_matching([row, ((2, 4, 5), (4, 5))])  # pair reused
