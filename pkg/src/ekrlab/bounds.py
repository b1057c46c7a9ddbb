"""Closed-form extremal quantities and the F(n, k, l) formula dispatch."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import InvalidInputError


class Provenance(str, enum.Enum):
    PROP1 = "Prop1"
    PROP2 = "Prop2-Kleitman"
    PROP3 = "Prop3"
    PROP4 = "Prop4"
    THM1_1 = "Thm1.1"
    THM1_2 = "Thm1.2"
    THM3 = "Thm3"
    TRIVIAL = "Trivial"

    def __str__(self):
        return self.value


class Confidence(str, enum.Enum):
    EXACT = "exact"
    ASYMPTOTIC = "asymptotic"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class BoundResult:
    value: int
    provenance: Provenance
    confidence: Confidence

    @property
    def exact(self) -> bool:
        return self.confidence is Confidence.EXACT


def binom(a: int, b: int) -> int:
    """C(a, b), taken to be 0 outside 0 <= b <= a."""
    if b < 0 or a < 0 or b > a:
        return 0
    return math.comb(a, b)


def katona_f(n: int, s: int) -> int:
    """Largest family in 2^[n] whose pairwise unions have at most s elements.

    For s < n this is the classical sum of binomials; for s = n every family
    qualifies and the value is 2^n.
    """
    if not 0 <= s <= n:
        raise InvalidInputError(f"need 0 <= s <= n, got n={n}, s={s}")
    if s == n:
        return 2**n
    if s % 2 == 0:
        return sum(binom(n, i) for i in range(s // 2 + 1))
    return 2 * sum(binom(n - 1, i) for i in range((s - 1) // 2 + 1))


def _check_ak(k: int, s: int, t: int, i: int | None = None) -> None:
    if not s >= t >= 1:
        raise InvalidInputError(f"need s >= t >= 1, got s={s}, t={t}")
    if k < s or k < 2 * s - t:
        raise InvalidInputError(f"need k >= max(s, 2s - t), got k={k}, s={s}, t={t}")
    if i is not None and not 0 <= i <= s - t:
        raise InvalidInputError(f"need 0 <= i <= s - t, got i={i}")


def ak_size(k: int, s: int, t: int, i: int) -> int:
    """Size of the Frankl family {A in C([k], s) : |A & [t+2i]| >= t+i}."""
    _check_ak(k, s, t, i)
    head = t + 2 * i
    return sum(binom(head, j) * binom(k - head, s - j) for j in range(t + i, s + 1))


def ak_max(k: int, s: int, t: int) -> tuple[int, frozenset[int]]:
    """Largest Frankl-family size over 0 <= i <= s-t, with every maximizing i."""
    _check_ak(k, s, t)
    sizes = {i: ak_size(k, s, t, i) for i in range(s - t + 1)}
    best = max(sizes.values())
    return best, frozenset(i for i, v in sizes.items() if v == best)


def hm_bound(n: int, k: int) -> int:
    """Hilton-Milner bound on |A| + |B| for non-empty cross-intersecting k-uniform A, B."""
    if not (k >= 1 and n >= 2 * k):
        raise InvalidInputError(f"need n >= 2k >= 2, got n={n}, k={k}")
    return binom(n, k) - binom(n - k, k) + 1


def kernel_defect_bound(n: int, k: int, s: int) -> int:
    """Bound on the link size |A(T)| for an s-set T that is not a kernel."""
    if not 0 <= s < k <= n:
        raise InvalidInputError(f"need 0 <= s < k <= n, got n={n}, k={k}, s={s}")
    return k * binom(n - s - 1, k - s - 1)


def theorem1_threshold(k: int) -> int:
    """n must exceed this for the negative-l large-n formula to be proven."""
    return 4**k * k * k


def thm3_value(n: int) -> int:
    """F(n, 3, 0) for every n >= 3."""
    if n < 3:
        raise InvalidInputError(f"need n >= 3, got {n}")
    return {3: 2, 4: 8, 5: 14, 6: 21}.get(n, binom(n, 3))


# (n, k) where max{C(n-k+2,2), k(n-k)+1, C(k+2,2)} is beaten by a
# non-homogeneous family: F(6,3,1) = 11 > 10, witnessed by u(1,2,3), its
# sign flip at coordinate 1, and nine positive triples inside {2,...,6}.
REFUTED_PROP4_CELLS = frozenset({(6, 3)})


def formula_F(n: int, k: int, l: int) -> BoundResult | None:
    """Closed-form value of F(n, k, l) where one is known, else None.

    Clauses are tried in a fixed order with exact ones first; the first
    match decides the provenance.  Large-n formulas whose threshold is not
    quantified are returned with asymptotic confidence.
    """
    if not 1 <= k <= n:
        raise InvalidInputError(f"need 1 <= k <= n, got n={n}, k={k}")
    if not -k <= l <= k:
        raise InvalidInputError(f"need -k <= l <= k, got l={l}, k={k}")
    E, A = Confidence.EXACT, Confidence.ASYMPTOTIC

    if l == k:
        return BoundResult(1, Provenance.TRIVIAL, E)
    if l == -k:
        return BoundResult(2**k * binom(n, k), Provenance.TRIVIAL, E)
    if l == -k + 1:
        return BoundResult(2 ** (k - 1) * binom(n, k), Provenance.PROP1, E)
    if n == k:
        # <v,w> = k - 2|N(v) ^ N(w)| when there are no zero coordinates
        return BoundResult(katona_f(k, (k - l) // 2), Provenance.PROP2, E)
    if l == k - 1:
        return BoundResult(max(k + 1, n - k + 1), Provenance.PROP3, E)
    if l == k - 2:
        if (n, k) in REFUTED_PROP4_CELLS:
            return None
        if (n, k) == (3, 2):
            value = 4
        elif n == k + 1 and k >= 3 or n == k + 2:
            value = binom(n, k)
        elif n >= k + 3:
            # the third term is the i = 2 complete-intersection family C([k+2], k)
            value = max(binom(n - k + 2, 2), k * (n - k) + 1, binom(k + 2, 2))
        else:
            value = None
        if value is not None:
            return BoundResult(value, Provenance.PROP4, E)
    if k == 3 and l == 0:
        return BoundResult(thm3_value(n), Provenance.THM3, E)
    if 0 <= l <= k:
        return BoundResult(binom(n - l, k - l), Provenance.THM1_1, A)
    if n > theorem1_threshold(k):
        return BoundResult(katona_f(k, -l) * binom(n, k), Provenance.THM1_2, E)
    return None


def theorem1_part2(n: int, k: int, l: int) -> BoundResult:
    """f(k, -l) C(n, k) for -k < l < 0, flagged asymptotic below the proven threshold."""
    if not -k <= l < 0:
        raise InvalidInputError(f"need -k <= l < 0, got l={l}, k={k}")
    conf = Confidence.EXACT if n > theorem1_threshold(k) else Confidence.ASYMPTOTIC
    return BoundResult(katona_f(k, -l) * binom(n, k), Provenance.THM1_2, conf)
