"""Exact extremal values via maximum clique on compatibility graphs."""
from __future__ import annotations

import time
from dataclasses import dataclass

from .bounds import binom
from .clique import (
    DEFAULT_NODE_BUDGET,
    DEFAULT_TIME_BUDGET,
    CompatGraph,
    SearchResult,
    graph_from_predicate,
    max_clique,
)
from .constructions import cross_pair_sizes
from .core import (
    DEFAULT_ENUMERATION_CAP,
    Params,
    SignedVector,
    VectorFamily,
    enumerate_Lk,
    make_vector,
    min_pairwise_product,
    scalar_product,
)
from .errors import InvalidInputError, ResourceLimitError
from .setfam import SetFamily, all_k_sets, cross_intersection_report, is_t_intersecting
from .shifting import SHIFTED_ORIGIN


# -- predicates ------------------------------------------------------------

@dataclass(frozen=True)
class AtLeast:
    """<v, w> >= l."""
    l: int

    def __call__(self, v: SignedVector, w: SignedVector) -> bool:
        return scalar_product(v, w) >= self.l


@dataclass(frozen=True)
class NotEqual:
    """<v, w> != value."""
    value: int

    def __call__(self, v: SignedVector, w: SignedVector) -> bool:
        return scalar_product(v, w) != self.value


@dataclass(frozen=True)
class IntersectAtLeast:
    """|A & B| >= t for bitmask sets."""
    t: int

    def __call__(self, a: int, b: int) -> bool:
        return (a & b).bit_count() >= self.t


@dataclass(frozen=True)
class UnionAtMost:
    """|A | B| <= s for bitmask sets."""
    s: int

    def __call__(self, a: int, b: int) -> bool:
        return (a | b).bit_count() <= self.s


@dataclass(frozen=True)
class SymDiffAtMost:
    """|A ^ B| <= s for bitmask sets."""
    s: int

    def __call__(self, a: int, b: int) -> bool:
        return (a ^ b).bit_count() <= self.s


def build_compat_graph(family, predicate, cap: int = DEFAULT_ENUMERATION_CAP) -> CompatGraph:
    """Compatibility graph of a VectorFamily, SetFamily or plain sequence.

    Members that are incompatible with themselves cannot belong to any
    valid family and are left out (counted in ``dropped``).
    """
    vertices = list(family)
    if len(vertices) > cap:
        raise ResourceLimitError(f"{len(vertices)} vertices exceed the cap {cap}", limit=cap)
    return graph_from_predicate(vertices, predicate, predicate,
                                self_check=lambda x: predicate(x, x))


def _vector_graph(n, k, predicate, within, cap):
    family = enumerate_Lk(n, k, cap) if within is None else within
    if within is not None and (within.n != n or any(v.k != k for v in within)):
        raise InvalidInputError("restricting family must lie in L_k over [n]")
    return build_compat_graph(family, predicate, cap)


def _verify_vectors(witness: list[SignedVector], predicate) -> None:
    # independent of the adjacency structure: recompute every product
    for a, v in enumerate(witness):
        for w in witness[a:]:
            if not predicate(v, w):
                raise RuntimeError(
                    f"witness failed re-validation on {v.to_text()} / {w.to_text()}")


def _solve_vectors(n, k, predicate, within, node_budget, time_budget, threads,
                   symmetry_break, cap) -> SearchResult:
    start = time.monotonic()
    graph = _vector_graph(n, k, predicate, within, cap)
    if symmetry_break and len(graph):
        if within is not None:
            raise InvalidInputError("symmetry breaking needs the full L_k as search space")
        # Signed coordinate permutations act transitively on L_k and keep
        # both predicates, so some optimum contains u([k]).
        anchor = graph.vertices.index(make_vector(range(1, k + 1), (), n))
        keep = [anchor] + [u for u in range(len(graph)) if graph.has_edge(anchor, u)]
        sub = graph.induced(keep)
        res = max_clique(sub, node_budget, time_budget, threads)
        if 0 not in res.witness:
            # the anchor is adjacent to every other kept vertex; extend
            res.witness = sorted([0] + res.witness)
            res.value += 1
        witness = [sub.vertices[i] for i in res.witness]
    else:
        res = max_clique(graph, node_budget, time_budget, threads)
        witness = [graph.vertices[i] for i in res.witness]
    _verify_vectors(witness, predicate)
    res.witness = VectorFamily(n, witness, k=k)
    res.elapsed = time.monotonic() - start
    res.meta.update(vertices=len(graph), edges=graph.edge_count())
    return res


def exact_F(n: int, k: int, l: int, *, node_budget: int = DEFAULT_NODE_BUDGET,
            time_budget: float = DEFAULT_TIME_BUDGET, threads: int = 1,
            symmetry_break: bool = False, within: VectorFamily | None = None,
            cap: int = DEFAULT_ENUMERATION_CAP) -> SearchResult:
    """Largest subfamily of L_k (or of ``within``) with all products >= l.

    Pairs include v = w, so l > k admits no vector and gives 0.
    """
    Params(n=n, k=k).check_vector_problem()
    if l < -k:
        raise InvalidInputError(f"need l >= -k, got l={l}, k={k}")
    if l > k:
        return SearchResult(0, VectorFamily(n, (), k=k), True)
    return _solve_vectors(n, k, AtLeast(l), within, node_budget, time_budget, threads,
                          symmetry_break, cap)


def exact_F_forbidden(n: int, k: int, l: int, *, node_budget: int = DEFAULT_NODE_BUDGET,
                      time_budget: float = DEFAULT_TIME_BUDGET, threads: int = 1,
                      symmetry_break: bool = False, within: VectorFamily | None = None,
                      cap: int = DEFAULT_ENUMERATION_CAP) -> SearchResult:
    """Largest subfamily of L_k with no pair of product exactly -l-1.

    Shifted families are refused as search spaces: shifting can raise
    products and so does not preserve this constraint.
    """
    Params(n=n, k=k).check_vector_problem()
    if not 0 <= l < k:
        raise InvalidInputError(f"need 0 <= l < k, got l={l}, k={k}")
    if within is not None and within.origin == SHIFTED_ORIGIN:
        raise InvalidInputError("shifted preprocessing is unsound for forbidden products")
    return _solve_vectors(n, k, NotEqual(-l - 1), within, node_budget, time_budget, threads,
                          symmetry_break, cap)


def _set_search(n, members, predicate, verify, node_budget, time_budget, threads, k=None):
    start = time.monotonic()
    graph = build_compat_graph(members, predicate)
    res = max_clique(graph, node_budget, time_budget, threads)
    fam = SetFamily(n, (graph.vertices[i] for i in res.witness), k=k)
    if not verify(fam):
        raise RuntimeError("witness failed re-validation")
    res.witness = fam
    res.elapsed = time.monotonic() - start
    res.meta.update(vertices=len(graph), edges=graph.edge_count())
    return res


def exact_max_t_intersecting(universe: int, s: int, t: int, *,
                             node_budget: int = DEFAULT_NODE_BUDGET,
                             time_budget: float = DEFAULT_TIME_BUDGET,
                             threads: int = 1) -> SearchResult:
    """Largest t-intersecting subfamily of C([universe], s)."""
    if not 0 <= s <= universe:
        raise InvalidInputError(f"need 0 <= s <= universe, got s={s}")
    if universe > 10 or binom(universe, s) > 300:
        raise ResourceLimitError(
            f"C({universe}, {s}) is beyond the search cap (universe <= 10, size <= 300)",
            limit=300)
    return _set_search(universe, all_k_sets(universe, s), IntersectAtLeast(t),
                       lambda f: is_t_intersecting(f, t), node_budget, time_budget,
                       threads, k=s)


def exact_max_union_bounded(n: int, s: int, **budgets) -> SearchResult:
    """Largest family in 2^[n] with all pairwise unions of size <= s."""
    if n > 8:
        raise ResourceLimitError("union-bounded search is limited to n <= 8", limit=8)
    return _set_search(n, range(1 << n), UnionAtMost(s),
                       lambda f: all((x | y).bit_count() <= s for x in f for y in f),
                       **_budgets(budgets))


def exact_max_diameter(n: int, s: int, **budgets) -> SearchResult:
    """Largest family in 2^[n] with all pairwise symmetric differences <= s."""
    if n > 8:
        raise ResourceLimitError("diameter search is limited to n <= 8", limit=8)
    return _set_search(n, range(1 << n), SymDiffAtMost(s),
                       lambda f: all((x ^ y).bit_count() <= s for x in f for y in f),
                       **_budgets(budgets))


def _budgets(b):
    return dict(node_budget=b.get("node_budget", DEFAULT_NODE_BUDGET),
                time_budget=b.get("time_budget", DEFAULT_TIME_BUDGET),
                threads=b.get("threads", 1))


# -- cross-intersecting pairs ------------------------------------------------

@dataclass
class CrossPairResult:
    value: int
    A: SetFamily
    B: SetFamily
    optimal: bool
    construction: dict
    nodes: int = 0
    elapsed: float = 0.0

    @property
    def construction_best(self) -> int:
        return max(self.construction.values())

    def metadata(self) -> dict:
        return {"nodes": self.nodes, "elapsed_ms": round(self.elapsed * 1000, 3),
                "optimal": self.optimal}


def cross_pair_search(n: int, k: int, s: int, t: int, *,
                      node_budget: int = DEFAULT_NODE_BUDGET,
                      time_budget: float = DEFAULT_TIME_BUDGET,
                      threads: int = 1, max_sets: int = 200) -> CrossPairResult:
    """Maximize |A| + |B| over non-empty t-intersecting, s-cross-intersecting pairs.

    A and B live in two copies of C([n], k); one graph holds both copies,
    with t-intersection edges inside a copy and s-intersection edges across,
    so a clique is exactly a valid pair.  By symmetry [k] may be put in A,
    and the B member it is anchored to only matters through |B & [k]|, so
    one clique search per j = s..k covers every case while keeping both
    sides non-empty.
    """
    Params(n=n, k=k, s=s, t=t).check_cross_pair()
    if binom(n, k) > max_sets:
        raise ResourceLimitError(f"C({n}, {k}) exceeds the cap {max_sets}", limit=max_sets)
    start = time.monotonic()
    construction = cross_pair_sizes(n, k, s, t)
    sets = all_k_sets(n, k).members
    m = len(sets)
    tagged = [("A", x) for x in sets] + [("B", x) for x in sets]

    def compatible(p, q):
        need = t if p[0] == q[0] else s
        return (p[1] & q[1]).bit_count() >= need

    graph = graph_from_predicate(tagged, compatible)
    base = (1 << k) - 1
    anchor_a = sets.index(base)
    best = None
    optimal = True
    nodes = 0
    deadline = start + time_budget
    for j in range(k, s - 1, -1):
        # B anchor: j elements of [k] and k - j from just above it
        y = ((1 << j) - 1) | (((1 << (k - j)) - 1) << k)
        if y >> n:
            continue
        anchor_b = m + sets.index(y)
        if not graph.has_edge(anchor_a, anchor_b):
            continue
        keep = [u for u in range(len(graph))
                if graph.has_edge(anchor_a, u) and graph.has_edge(anchor_b, u)]
        sub = graph.induced(keep)
        remaining = max(deadline - time.monotonic(), 0.0)
        # only cliques that beat the incumbent pair are of interest
        lb = 0 if best is None else max(best[0] - 1, 0)
        res = max_clique(sub, node_budget, remaining, threads, lower_bound=lb)
        nodes += res.nodes
        optimal &= res.optimal
        clique = [sub.vertices[i] for i in res.witness]
        value = 2 + len(clique)
        if best is None or value > best[0]:
            members = [tagged[anchor_a], tagged[anchor_b]] + clique
            best = (value, members)
    if best is None:
        raise InvalidInputError("no non-empty pair exists for these parameters")
    A = SetFamily(n, (x for side, x in best[1] if side == "A"), k=k)
    B = SetFamily(n, (x for side, x in best[1] if side == "B"), k=k)
    report = cross_intersection_report(A, B, s)
    if not (len(A) and len(B) and report.ok and not report.vacuous
            and is_t_intersecting(A, t) and is_t_intersecting(B, t)):
        raise RuntimeError("cross-pair witness failed re-validation")
    return CrossPairResult(len(A) + len(B), A, B, optimal, construction, nodes,
                           time.monotonic() - start)


def verify_vector_family(family, l=None, forbidden=None) -> tuple[bool, tuple | None]:
    """Pairwise sweep: all products >= l and none equal to ``forbidden``.

    Returns (ok, offending pair or None).
    """
    members = list(family)
    for a, v in enumerate(members):
        for w in members[a:]:
            p = scalar_product(v, w)
            if (l is not None and p < l) or (forbidden is not None and p == forbidden):
                return False, (v, w, p)
    return True, None


__all__ = [
    "AtLeast", "NotEqual", "IntersectAtLeast", "UnionAtMost", "SymDiffAtMost",
    "CompatGraph", "SearchResult", "CrossPairResult", "build_compat_graph", "max_clique",
    "exact_F", "exact_F_forbidden", "exact_max_t_intersecting", "exact_max_union_bounded",
    "exact_max_diameter", "cross_pair_search", "verify_vector_family", "min_pairwise_product",
]
