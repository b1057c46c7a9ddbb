"""Signed {0,+1,-1} vectors, families of them, and the class L_k.

Coordinates are 1-based at every public boundary and 0-based bit positions
internally.  A vector is stored as two bitmasks: its support and the subset
of the support carrying -1.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import IndexRangeError, InvalidInputError, ResourceLimitError

DEFAULT_ENUMERATION_CAP = 5_000_000


# -- bitmask helpers --------------------------------------------------------

def iter_bits(mask: int) -> Iterator[int]:
    """Yield the 0-based positions of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_from_indices(indices: Iterable[int], n: int) -> int:
    """Bitmask of 1-based ``indices``; raises if one falls outside [n]."""
    mask = 0
    for i in indices:
        if not 1 <= i <= n:
            raise IndexRangeError(f"index {i} outside [1, {n}]")
        mask |= 1 << (i - 1)
    return mask


def indices_from_mask(mask: int) -> list[int]:
    return [b + 1 for b in iter_bits(mask)]


def submasks_increasing(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in increasing numeric order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def symmetric_difference_size(a: int, b: int) -> int:
    return (a ^ b).bit_count()


# -- vectors ---------------------------------------------------------------

@dataclass(frozen=True, order=True)
class SignedVector:
    """A {0,+1,-1} vector of length n.

    Ordering is (n, support, negatives); for a fixed support size, numeric
    order of the support mask coincides with colex order of the support.
    """

    n: int
    support: int
    negatives: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError(f"n must be positive, got {self.n}")
        if self.support >> self.n:
            raise IndexRangeError(f"support exceeds [1, {self.n}]")
        if self.negatives & ~self.support:
            raise InvalidInputError("negatives must be a subset of the support")

    @property
    def k(self) -> int:
        return self.support.bit_count()

    @property
    def positives(self) -> int:
        return self.support & ~self.negatives

    def coord(self, i: int) -> int:
        """Value of the 1-based coordinate ``i``."""
        if not 1 <= i <= self.n:
            raise IndexRangeError(f"index {i} outside [1, {self.n}]")
        bit = 1 << (i - 1)
        if not self.support & bit:
            return 0
        return -1 if self.negatives & bit else 1

    def coords(self) -> tuple[int, ...]:
        return tuple(self.coord(i) for i in range(1, self.n + 1))

    @classmethod
    def from_coords(cls, values: Iterable[int]) -> SignedVector:
        values = list(values)
        support = negatives = 0
        for pos, x in enumerate(values):
            if x not in (-1, 0, 1):
                raise InvalidInputError(f"coordinate value {x} not in {{-1,0,1}}")
            if x:
                support |= 1 << pos
                if x < 0:
                    negatives |= 1 << pos
        return cls(len(values), support, negatives)

    def to_text(self) -> str:
        parts = []
        for b in iter_bits(self.support):
            sign = "-" if self.negatives >> b & 1 else "+"
            parts.append(f"{sign}{b + 1}")
        return " ".join(parts)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "plus": indices_from_mask(self.positives),
            "minus": indices_from_mask(self.negatives),
        }

    @classmethod
    def from_json(cls, obj: dict, n: int | None = None) -> SignedVector:
        return make_vector(obj.get("plus", []), obj.get("minus", []), obj.get("n", n))

    def __str__(self) -> str:
        return f"<{self.to_text()} | n={self.n}>"


def make_vector(plus: Iterable[int], minus: Iterable[int], n: int) -> SignedVector:
    """Vector with +1 on ``plus`` and -1 on ``minus`` (1-based indices)."""
    if n is None or n < 1:
        raise InvalidInputError(f"n must be a positive integer, got {n!r}")
    p = mask_from_indices(plus, n)
    m = mask_from_indices(minus, n)
    if p & m:
        raise InvalidInputError(
            f"indices {indices_from_mask(p & m)} are both positive and negative")
    return SignedVector(n, p | m, m)


def parse_vector(text: str, n: int) -> SignedVector:
    """Parse the canonical text form, e.g. ``"+1 +2 -5"``."""
    plus, minus = [], []
    for tok in text.split():
        if tok[0] not in "+-" or not tok[1:].isdigit():
            raise InvalidInputError(f"bad vector token {tok!r}")
        (plus if tok[0] == "+" else minus).append(int(tok[1:]))
    return make_vector(plus, minus, n)


def scalar_product(v: SignedVector, w: SignedVector) -> int:
    if v.n != w.n:
        raise InvalidInputError(f"length mismatch: {v.n} vs {w.n}")
    common = v.support & w.support
    return common.bit_count() - 2 * ((v.negatives ^ w.negatives) & common).bit_count()


# -- families --------------------------------------------------------------

class VectorFamily:
    """An immutable set of signed vectors over a common ground set [n].

    Members are kept in the deterministic core order.  ``k`` is the common
    support size when the family is uniform.  ``origin`` names the operator
    that produced the family (for example ``"shifted"``), or ``None``.
    """

    __slots__ = ("n", "k", "members", "origin", "_index")

    def __init__(self, n: int, members: Iterable[SignedVector] = (),
                 k: int | None = None, origin: str | None = None):
        if n < 1:
            raise InvalidInputError(f"n must be positive, got {n}")
        uniq = set(members)
        for v in uniq:
            if v.n != n:
                raise InvalidInputError(f"member {v} has n={v.n}, family has n={n}")
            if k is not None and v.k != k:
                raise InvalidInputError(f"member {v} has support size {v.k}, expected {k}")
        self.n = n
        self.k = k
        self.members: tuple[SignedVector, ...] = tuple(sorted(uniq))
        self.origin = origin
        self._index = frozenset(uniq)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[SignedVector]:
        return iter(self.members)

    def __contains__(self, v) -> bool:
        return v in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorFamily):
            return NotImplemented
        return self.n == other.n and self._index == other._index

    def __hash__(self):
        return hash((self.n, self._index))

    def __repr__(self) -> str:
        return f"VectorFamily(n={self.n}, k={self.k}, size={len(self)})"

    def with_members(self, members: Iterable[SignedVector], origin: str | None = None) -> VectorFamily:
        return VectorFamily(self.n, members, k=self.k, origin=origin)

    def add(self, *vs: SignedVector) -> VectorFamily:
        """New family with ``vs`` added; re-adding a member is a no-op."""
        return VectorFamily(self.n, itertools.chain(self.members, vs), k=self.k, origin=self.origin)

    def on_support(self, support: int) -> VectorFamily:
        """The slice of members whose support equals ``support``."""
        return VectorFamily(self.n, (v for v in self.members if v.support == support),
                            k=self.k)

    def supports(self) -> list[int]:
        return sorted({v.support for v in self.members})

    def to_json(self) -> dict:
        return {
            "kind": "vectors",
            "n": self.n,
            "k": self.k,
            "vectors": [v.to_json() for v in self.members],
        }

    @classmethod
    def from_json(cls, obj: dict) -> VectorFamily:
        n = obj["n"]
        return cls(n, (SignedVector.from_json(x, n) for x in obj["vectors"]), k=obj.get("k"))


@dataclass(frozen=True)
class Params:
    """Integer parameters n, k, l, s, t with their usual roles."""

    n: int | None = None
    k: int | None = None
    l: int | None = None
    s: int | None = None
    t: int | None = None

    def check_vector_problem(self) -> None:
        n, k, l = self.n, self.k, self.l
        if n is None or k is None or not 1 <= k <= n:
            raise InvalidInputError(f"need 1 <= k <= n, got n={n}, k={k}")
        if l is not None and not -k <= l <= k:
            raise InvalidInputError(f"need -k <= l <= k, got l={l}, k={k}")

    def check_cross_pair(self) -> None:
        k, s, t = self.k, self.s, self.t
        if None in (k, s, t):
            raise InvalidInputError("k, s and t are required")
        if not k > s > t >= 1:
            raise InvalidInputError(f"need k > s > t >= 1, got k={k}, s={s}, t={t}")
        if k < 2 * s - t:
            raise InvalidInputError(f"need k >= 2s - t, got k={k}, s={s}, t={t}")
        if self.n is not None and self.n < k:
            raise InvalidInputError(f"need n >= k, got n={self.n}, k={k}")


def Lk_size(n: int, k: int) -> int:
    return 2**k * math.comb(n, k)


def enumerate_Lk(n: int, k: int, cap: int = DEFAULT_ENUMERATION_CAP) -> VectorFamily:
    """All vectors of length n with exactly k nonzero coordinates.

    Supports come in colex order, negatives masks in increasing order.
    """
    Params(n=n, k=k).check_vector_problem()
    size = Lk_size(n, k)
    if size > cap:
        raise ResourceLimitError(
            f"|L_k| = {size} exceeds the enumeration cap {cap}", limit=cap)
    return VectorFamily(n, iter_Lk(n, k), k=k)


def iter_Lk(n: int, k: int) -> Iterator[SignedVector]:
    for support in k_subsets_colex(n, k):
        for neg in submasks_increasing(support):
            yield SignedVector(n, support, neg)


def k_subsets_colex(n: int, k: int) -> Iterator[int]:
    """k-subsets of [n] as bitmasks in colex (= increasing numeric) order."""
    if k == 0:
        yield 0
        return
    if k > n:
        return
    mask = (1 << k) - 1
    limit = 1 << n
    while mask < limit:
        yield mask
        # Gosper's hack
        c = mask & -mask
        r = mask + c
        mask = (((r ^ mask) >> 2) // c) | r


def coordinate_degree(family: VectorFamily, i: int) -> int:
    """Number of members with a nonzero entry at 1-based position ``i``."""
    if not 1 <= i <= family.n:
        raise IndexRangeError(f"index {i} outside [1, {family.n}]")
    bit = 1 << (i - 1)
    return sum(1 for v in family if v.support & bit)


def is_homogeneous(family: VectorFamily) -> bool:
    pos = neg = 0
    for v in family:
        pos |= v.positives
        neg |= v.negatives
    return not pos & neg


def min_pairwise_product(family: Iterable[SignedVector]) -> int | None:
    """Minimum of <v,w> over all pairs, v = w included; None when empty."""
    members = list(family)
    best = None
    for a, v in enumerate(members):
        for w in members[a:]:
            p = scalar_product(v, w)
            if best is None or p < best:
                best = p
    return best


def product_matrix(family: Iterable[SignedVector]) -> list[list[int]]:
    members = list(family)
    return [[scalar_product(v, w) for w in members] for v in members]


def flip_coordinate(v: SignedVector, i: int) -> SignedVector:
    """Negate the 1-based coordinate ``i`` (a no-op when it is zero)."""
    bit = 1 << (i - 1)
    return SignedVector(v.n, v.support, v.negatives ^ (v.support & bit))


def permute_coordinates(v: SignedVector, perm: list[int]) -> SignedVector:
    """Move coordinate ``i`` to position ``perm[i-1]`` (both 1-based)."""
    support = negatives = 0
    for b in iter_bits(v.support):
        nb = 1 << (perm[b] - 1)
        support |= nb
        if v.negatives >> b & 1:
            negatives |= nb
    return SignedVector(v.n, support, negatives)
