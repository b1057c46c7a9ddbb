"""Coordinate shifts S_{i,j}, up-shifts S_i, and shifting to a fixpoint.

Both operators never decrease the minimal pairwise scalar product of a
family, which is what makes them usable on ">= l" problems.  They can
increase products, so they are unsound for forbidden-product problems;
families produced here carry ``origin == "shifted"`` so callers can refuse
them.
"""
from __future__ import annotations

from .core import SignedVector, VectorFamily
from .errors import IndexRangeError, InvalidInputError

SHIFTED_ORIGIN = "shifted"


def _check_index(i: int, n: int) -> None:
    if not 1 <= i <= n:
        raise IndexRangeError(f"index {i} outside [1, {n}]")


def _check_pair(i: int, j: int, n: int) -> None:
    _check_index(i, n)
    _check_index(j, n)
    if i >= j:
        raise InvalidInputError(f"shift needs i < j, got i={i}, j={j}")


def shift_ij_vector(v: SignedVector, i: int, j: int) -> SignedVector:
    """Swap coordinates i and j (1-based) when v_i < v_j; otherwise return v."""
    _check_pair(i, j, v.n)
    vi, vj = v.coord(i), v.coord(j)
    if vi >= vj:
        return v
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    both = bi | bj

    def moved(mask):
        keep = mask & ~both
        if mask & bi:
            keep |= bj
        if mask & bj:
            keep |= bi
        return keep

    return SignedVector(v.n, moved(v.support), moved(v.negatives))


def up_shift_vector(v: SignedVector, i: int) -> SignedVector:
    _check_index(i, v.n)
    return SignedVector(v.n, v.support, v.negatives & ~(1 << (i - 1)))


def _apply(family: VectorFamily, op) -> tuple[VectorFamily, int]:
    # Two-phase: every image is computed against the original family, so no
    # vector can be moved twice within one application.
    out = []
    moved = 0
    for v in family:
        w = op(v)
        if w != v and w not in family:
            out.append(w)
            moved += 1
        else:
            out.append(v)
    return family.with_members(out, origin=family.origin), moved


def shift_ij_family(family: VectorFamily, i: int, j: int) -> VectorFamily:
    _check_pair(i, j, family.n)
    return _apply(family, lambda v: shift_ij_vector(v, i, j))[0]


def up_shift_family(family: VectorFamily, i: int) -> VectorFamily:
    _check_index(i, family.n)
    return _apply(family, lambda v: up_shift_vector(v, i))[0]


def shift_score(v: SignedVector) -> int:
    """Potential that every applied replacement strictly increases.

    Coordinate value -1, 0, +1 contributes 0, 1, 2 times the weight n-i+1.
    """
    n = v.n
    total = 0
    for i in range(1, n + 1):
        total += (v.coord(i) + 1) * (n - i + 1)
    return total


def family_score(family) -> int:
    return sum(shift_score(v) for v in family)


def max_family_score(n: int, size: int) -> int:
    """Upper bound on ``family_score`` for any family of ``size`` vectors."""
    return size * 2 * n * (n + 1) // 2


def shift_steps(n: int):
    """One full sweep: up-shifts 1..n, then (i, j) pairs lexicographically."""
    for i in range(1, n + 1):
        yield ("up", i)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            yield ("pair", i, j)


def apply_step(family: VectorFamily, step) -> tuple[VectorFamily, int]:
    if step[0] == "up":
        return _apply(family, lambda v: up_shift_vector(v, step[1]))
    _, i, j = step
    return _apply(family, lambda v: shift_ij_vector(v, i, j))


def make_shifted(family: VectorFamily, trace=None) -> VectorFamily:
    """Shift ``family`` until no up-shift or (i, j)-shift changes it.

    If ``trace`` is a list, each step that moved something is appended as
    ``(step, family_after)``.
    """
    current = family
    changed = True
    while changed:
        changed = False
        for step in shift_steps(family.n):
            current, moved = apply_step(current, step)
            if moved:
                changed = True
                if trace is not None:
                    trace.append((step, current))
    return current.with_members(current.members, origin=SHIFTED_ORIGIN)


def is_shifted(family: VectorFamily) -> bool:
    return all(apply_step(family, step)[1] == 0 for step in shift_steps(family.n))
