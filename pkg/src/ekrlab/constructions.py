"""Explicit extremal families: vector families and the Frankl-type set families."""
from __future__ import annotations

import itertools

from .bounds import _check_ak
from .core import (
    Params,
    SignedVector,
    VectorFamily,
    iter_Lk,
    k_subsets_colex,
    make_vector,
)
from .errors import InvalidInputError
from .setfam import SetFamily


def u_vec(a: int, b: int, c: int, n: int) -> SignedVector:
    """All-positive vector on {a, b, c}."""
    return make_vector((a, b, c), (), n)


def v_vec(a: int, b: int, c: int, n: int) -> SignedVector:
    """+1 on the two smaller positions of {a, b, c}, -1 on the largest."""
    a, b, c = sorted((a, b, c))
    return make_vector((a, b), (c,), n)


def _check_nkl(n: int, k: int, l: int) -> None:
    if not 0 <= l <= k <= n or k < 1:
        raise InvalidInputError(f"need 0 <= l <= k <= n, k >= 1; got n={n}, k={k}, l={l}")


def star_vector_family(n: int, k: int, l: int) -> VectorFamily:
    """0/1 vectors with ones on [l] and k - l further ones."""
    _check_nkl(n, k, l)
    head = (1 << l) - 1
    members = [SignedVector(n, head | (rest << l))
               for rest in k_subsets_colex(n - l, k - l)]
    return VectorFamily(n, members, k=k)


def katona_vector_family(n: int, k: int, l: int) -> VectorFamily:
    """Per support, the sign patterns whose negative sets form a Katona family.

    Even l: at most l/2 negatives.  Odd l: at most (l-1)/2 negatives among
    the support positions other than the largest one.  At l = k no pair can
    reach product -k-1, so the whole of L_k is returned.
    """
    _check_nkl(n, k, l)
    if l == k:
        return VectorFamily(n, iter_Lk(n, k), k=k)
    members = []
    for v in iter_Lk(n, k):
        if l % 2 == 0:
            ok = v.negatives.bit_count() <= l // 2
        else:
            top = 1 << (v.support.bit_length() - 1)
            ok = (v.negatives & ~top).bit_count() <= (l - 1) // 2
        if ok:
            members.append(v)
    return VectorFamily(n, members, k=k)


def construct_Vn(n: int) -> VectorFamily:
    """u(a,b,c) and v(a,b,c) for every triple meeting [3] in at least 2 elements."""
    if n < 3:
        raise InvalidInputError(f"need n >= 3, got {n}")
    members = []
    for triple in itertools.combinations(range(1, n + 1), 3):
        if sum(1 for x in triple if x <= 3) >= 2:
            members += [u_vec(*triple, n), v_vec(*triple, n)]
    return VectorFamily(n, members, k=3)


def construct_U6() -> VectorFamily:
    """The 21-vector family of 3-vectors on [6] with all products >= 0."""
    n = 6
    members = [u_vec(2, 3, 4, n)]
    for b, c in itertools.combinations(range(2, 7), 2):
        members += [u_vec(1, b, c, n), v_vec(1, b, c, n)]
    return VectorFamily(n, members, k=3)


def katona_set_family(n: int, s: int, j: int | None = None) -> SetFamily:
    """Katona's extremal families.

    Even s: all sets of size at most s/2.  Odd s: sets meeting [n] - {j} in
    at most (s-1)/2 elements.
    """
    if not 0 <= s <= n:
        raise InvalidInputError(f"need 0 <= s <= n, got n={n}, s={s}")
    if s % 2 == 0:
        if j is not None:
            raise InvalidInputError("even s takes no special element")
        return SetFamily(n, (m for m in range(1 << n) if m.bit_count() <= s // 2))
    if j is None or not 1 <= j <= n:
        raise InvalidInputError(f"odd s needs a special element j in [1, {n}]")
    rest = ((1 << n) - 1) & ~(1 << (j - 1))
    return SetFamily(n, (m for m in range(1 << n) if (m & rest).bit_count() <= (s - 1) // 2))


def ak_family(k: int, s: int, t: int, i: int) -> SetFamily:
    """Frankl family A_i(k, s, t) of s-subsets of [k]."""
    _check_ak(k, s, t, i)
    head = (1 << (t + 2 * i)) - 1
    return SetFamily(k, (m for m in k_subsets_colex(k, s)
                         if (m & head).bit_count() >= t + i), k=s)


def m_family(k: int, s: int, t: int, i: int) -> SetFamily:
    """M_i(k, s, t): non-uniform t-intersecting family on [k], defined for i < s - t."""
    _check_ak(k, s, t, i)
    if i >= s - t:
        raise InvalidInputError(f"need i < s - t, got i={i}, s={s}, t={t}")
    head = (1 << (t + 2 * i)) - 1
    members = []
    for m in range(1 << k):
        size = m.bit_count()
        if size >= s and (m & head).bit_count() >= t + i or size >= k - s + t:
            members.append(m)
    return SetFamily(k, members)


def cross_pair(n: int, k: int, s: int, t: int, i: int) -> tuple[SetFamily, SetFamily]:
    """The pair (A_i, B_i) of k-uniform families on [n]."""
    Params(n=n, k=k, s=s, t=t).check_cross_pair()
    if not 0 <= i <= s - t:
        raise InvalidInputError(f"need 0 <= i <= s - t, got i={i}")
    if i < s - t:
        inner = m_family(k, s, t, i)
        low = (1 << k) - 1
        A = SetFamily(n, (m for m in k_subsets_colex(n, k) if (m & low) in inner), k=k)
        B = SetFamily(n, [low], k=k)
        return A, B
    core = (1 << (2 * s - t)) - 1
    A = SetFamily(n, (m for m in k_subsets_colex(n, k) if (m & core).bit_count() >= s), k=k)
    B = SetFamily(n, (m for m in k_subsets_colex(n, k) if m & core == core), k=k)
    return A, B


def cross_pair_sizes(n: int, k: int, s: int, t: int) -> dict[int, int]:
    """|A_i| + |B_i| for every i in 0..s-t."""
    out = {}
    for i in range(s - t + 1):
        A, B = cross_pair(n, k, s, t, i)
        out[i] = len(A) + len(B)
    return out
