"""Set families over [n] as bitmasks, intersection predicates, and kernels."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .core import indices_from_mask, k_subsets_colex, mask_from_indices
from .errors import InvalidInputError, ResourceLimitError

DEFAULT_KERNEL_BUDGET = 10**7


class SetFamily:
    """An immutable family of subsets of [n], members sorted by mask value."""

    __slots__ = ("n", "k", "members", "_index")

    def __init__(self, n: int, members: Iterable[int] = (), k: int | None = None):
        if n < 0:
            raise InvalidInputError(f"n must be non-negative, got {n}")
        uniq = set(members)
        for m in uniq:
            if m < 0 or m >> n:
                raise InvalidInputError(f"set {indices_from_mask(m)} not inside [1, {n}]")
            if k is not None and m.bit_count() != k:
                raise InvalidInputError(
                    f"set {indices_from_mask(m)} has size {m.bit_count()}, expected {k}")
        self.n = n
        self.k = k
        self.members: tuple[int, ...] = tuple(sorted(uniq))
        self._index = frozenset(uniq)

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]], k: int | None = None) -> SetFamily:
        """Build from 1-based index collections."""
        return cls(n, (mask_from_indices(s, n) for s in sets), k=k)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, mask) -> bool:
        return mask in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, SetFamily):
            return NotImplemented
        return self.n == other.n and self._index == other._index

    def __hash__(self):
        return hash((self.n, self._index))

    def __repr__(self) -> str:
        return f"SetFamily(n={self.n}, k={self.k}, size={len(self)})"

    def sets(self) -> list[list[int]]:
        return [indices_from_mask(m) for m in self.members]

    def to_json(self) -> dict:
        return {"kind": "sets", "n": self.n, "k": self.k, "sets": self.sets()}

    @classmethod
    def from_json(cls, obj: dict) -> SetFamily:
        return cls.from_sets(obj["n"], obj["sets"], k=obj.get("k"))


def all_k_sets(n: int, k: int) -> SetFamily:
    return SetFamily(n, k_subsets_colex(n, k), k=k)


def is_t_intersecting(family: SetFamily, t: int) -> bool:
    """Every pair of members, a member with itself included, shares >= t elements."""
    if t < 0:
        raise InvalidInputError(f"t must be non-negative, got {t}")
    members = family.members
    for a, x in enumerate(members):
        for y in members[a:]:
            if (x & y).bit_count() < t:
                return False
    return True


def max_pairwise_union(family: SetFamily) -> int:
    """Largest |U | V| over pairs of members (0 for an empty family)."""
    members = family.members
    return max(((x | y).bit_count() for a, x in enumerate(members) for y in members[a:]),
               default=0)


def has_diameter_at_most(family: SetFamily, s: int) -> bool:
    """Every pair of members has symmetric difference of size at most s."""
    members = family.members
    return all((x ^ y).bit_count() <= s for a, x in enumerate(members) for y in members[a + 1:])


@dataclass(frozen=True)
class CrossReport:
    ok: bool
    vacuous: bool
    violation: tuple[int, int] | None = None


def cross_intersection_report(a: SetFamily, b: SetFamily, s: int) -> CrossReport:
    if a.n != b.n:
        raise InvalidInputError(f"ground sets differ: {a.n} vs {b.n}")
    if not len(a) or not len(b):
        return CrossReport(True, True)
    for x in a:
        for y in b:
            if (x & y).bit_count() < s:
                return CrossReport(False, False, (x, y))
    return CrossReport(True, False)


def is_cross_intersecting(a: SetFamily, b: SetFamily, s: int) -> bool:
    """True iff every A in a meets every B in b in at least s elements.

    Vacuously true when either family is empty; use
    ``cross_intersection_report`` to tell that case apart.
    """
    return cross_intersection_report(a, b, s).ok


def family_link(family: SetFamily, T: int) -> SetFamily:
    """{A - T : A in family, A contains T}."""
    k = None if family.k is None else family.k - T.bit_count()
    return SetFamily(family.n, (m & ~T for m in family if m & T == T), k=k)


def has_disjoint_members(sets: Sequence[int], count: int,
                         budget: int = DEFAULT_KERNEL_BUDGET) -> bool:
    """Whether ``count`` pairwise disjoint sets can be picked from ``sets``.

    Exact backtracking; sets are tried in order of their minimum element and
    a branch is cut when too few compatible sets remain.
    """
    if count <= 0:
        return True
    if 0 in sets:
        # the empty set is disjoint from everything
        return has_disjoint_members([m for m in sets if m], count - 1, budget)
    order = sorted(set(sets), key=lambda m: ((m & -m).bit_length(), m))
    if len(order) < count:
        return False
    nodes = 0

    def search(pool: list[int], need: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise ResourceLimitError(
                f"disjoint-member search exceeded {budget} nodes", limit=budget)
        if need == 0:
            return True
        for idx, m in enumerate(pool):
            if len(pool) - idx < need:
                return False
            rest = [x for x in pool[idx + 1:] if not x & m]
            if len(rest) >= need - 1 and search(rest, need - 1):
                return True
        return False

    return search(order, count)


def is_kernel(family: SetFamily, T: int, budget: int = DEFAULT_KERNEL_BUDGET) -> bool:
    """Whether the link of ``T`` holds k+1 pairwise disjoint members."""
    k = family.k
    if k is None:
        raise InvalidInputError("kernel test needs a k-uniform family")
    if T.bit_count() >= k:
        raise InvalidInputError(f"|T| = {T.bit_count()} must be below k = {k}")
    link = family_link(family, T)
    if len(link) < k + 1:
        return False
    return has_disjoint_members(link.members, k + 1, budget)


def find_kernels(family: SetFamily, s: int, within: int | None = None,
                 budget: int = DEFAULT_KERNEL_BUDGET) -> SetFamily:
    """All s-sets T (inside the mask ``within`` if given) that are kernels."""
    if family.k is None:
        raise InvalidInputError("kernel scan needs a k-uniform family")
    if not 0 <= s < family.k:
        raise InvalidInputError(f"need 0 <= s < k, got s={s}, k={family.k}")
    found = []
    for T in k_subsets_colex(family.n, s):
        if within is not None and T & ~within:
            continue
        if is_kernel(family, T, budget):
            found.append(T)
    return SetFamily(family.n, found, k=s)


def sunflower_center(petals: Sequence[int]) -> int:
    """Common pairwise intersection of ``petals``; raises if not a sunflower."""
    if len(petals) < 2:
        raise InvalidInputError("a sunflower needs at least two petals")
    center = petals[0] & petals[1]
    for x, y in itertools.combinations(petals, 2):
        if x & y != center:
            raise InvalidInputError("sets do not form a sunflower")
    return center


def sunflower_free_pick(petals: Sequence[int], D: int) -> int:
    """Index i with D & petals[i] == D & center.

    With at least |D| + 1 petals such an index always exists, since the
    parts of the petals outside the center are disjoint.
    """
    center = sunflower_center(petals)
    if len(petals) < D.bit_count() + 1:
        raise InvalidInputError(
            f"{len(petals)} petals cannot guarantee a pick for a {D.bit_count()}-set")
    for i, c in enumerate(petals):
        if D & c == D & center:
            return i
    raise AssertionError("pigeonhole violated")  # unreachable for a real sunflower


# (D, (b, c)) rows: the 3-sets of {2..6} other than (2,3,4), each matched to a
# pair it meets exactly in the pair's larger element.
U6_MATCHING_TABLE = (
    ((2, 3, 5), (4, 5)), ((2, 4, 5), (3, 5)), ((2, 3, 6), (4, 6)),
    ((2, 4, 6), (5, 6)), ((2, 5, 6), (3, 6)), ((3, 4, 5), (2, 3)),
    ((3, 4, 6), (2, 4)), ((3, 5, 6), (2, 5)), ((4, 5, 6), (2, 6)),
)


def verify_pair_matching(rows) -> bool:
    """Rows (D, (b, c)) must satisfy D & {b, c} == {c} with b < c, and be injective."""
    triples, pairs = set(), set()
    for D, pair in rows:
        D = frozenset(D)
        b, c = sorted(pair)
        if b == c or D & {b, c} != {c}:
            return False
        if D in triples or (b, c) in pairs:
            return False
        triples.add(D)
        pairs.add((b, c))
    return True
