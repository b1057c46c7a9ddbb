"""Exact maximum clique by bitset branch and bound.

Vertices are renumbered in degeneracy order (densest core first) and each
candidate set is a Python int bitset over the renumbered vertices.  The
bound at every node is the number of colours used by a sequential greedy
colouring of the candidates.
"""
from __future__ import annotations

import concurrent.futures as cf
import multiprocessing as mp
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from .core import iter_bits

DEFAULT_NODE_BUDGET = 10**9
DEFAULT_TIME_BUDGET = 15 * 60.0
_CHECK_EVERY = 1024


@dataclass(frozen=True)
class CompatGraph:
    """Vertices plus symmetric bitset adjacency rows, without self-loops."""

    vertices: tuple
    adjacency: tuple[int, ...]
    predicate: Any = None
    dropped: int = 0  # candidates removed because they are not self-compatible

    def __len__(self) -> int:
        return len(self.vertices)

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adjacency) // 2

    def has_edge(self, a: int, b: int) -> bool:
        return bool(self.adjacency[a] >> b & 1)

    def is_clique(self, indices: Sequence[int]) -> bool:
        idx = list(indices)
        return all(self.has_edge(a, b) for i, a in enumerate(idx) for b in idx[i + 1:])

    def induced(self, keep: Sequence[int]) -> CompatGraph:
        keep = list(keep)
        pos = {v: i for i, v in enumerate(keep)}
        rows = []
        for v in keep:
            row = 0
            for u in iter_bits(self.adjacency[v]):
                if u in pos:
                    row |= 1 << pos[u]
            rows.append(row)
        return CompatGraph(tuple(self.vertices[v] for v in keep), tuple(rows), self.predicate)


def graph_from_predicate(vertices: Sequence, compatible: Callable[[Any, Any], bool],
                         predicate=None, self_check: Callable[[Any], bool] | None = None
                         ) -> CompatGraph:
    kept = [v for v in vertices if self_check is None or self_check(v)]
    rows = [0] * len(kept)
    for i, a in enumerate(kept):
        for j in range(i + 1, len(kept)):
            if compatible(a, kept[j]):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return CompatGraph(tuple(kept), tuple(rows), predicate, len(vertices) - len(kept))


@dataclass
class SearchResult:
    value: int
    witness: Any
    optimal: bool
    nodes: int = 0
    elapsed: float = 0.0
    meta: dict = field(default_factory=dict)

    def metadata(self) -> dict:
        return {"nodes": self.nodes, "elapsed_ms": round(self.elapsed * 1000, 3),
                "optimal": self.optimal}


def degeneracy_order(adjacency: Sequence[int]) -> list[int]:
    """Reverse of the min-degree removal order; ties go to the lowest index."""
    n = len(adjacency)
    deg = [row.bit_count() for row in adjacency]
    alive = (1 << n) - 1
    removed = []
    for _ in range(n):
        best = -1
        for v in iter_bits(alive):
            if best < 0 or deg[v] < deg[best]:
                best = v
        removed.append(best)
        alive &= ~(1 << best)
        for u in iter_bits(adjacency[best] & alive):
            deg[u] -= 1
    removed.reverse()
    return removed


def _renumber(adjacency: Sequence[int], order: Sequence[int]) -> list[int]:
    pos = {v: i for i, v in enumerate(order)}
    out = []
    for v in order:
        row = 0
        for u in iter_bits(adjacency[v]):
            row |= 1 << pos[u]
        out.append(row)
    return out


def greedy_colour(adj: Sequence[int], P: int) -> tuple[list[int], list[int]]:
    """Sequential greedy colouring of P; vertices listed by non-decreasing colour."""
    verts, cols = [], []
    colour = 0
    while P:
        colour += 1
        Q = P
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            Q &= ~low & ~adj[v]
            P &= ~low
            verts.append(v)
            cols.append(colour)
    return verts, cols


class _OutOfBudget(Exception):
    pass


class _Engine:
    """Branch-and-bound state; subclasses share the incumbent via ``incumbent``/``improve``."""

    def __init__(self, adj, node_budget, deadline, best=0):
        self.adj = adj
        self.node_budget = node_budget
        self.deadline = deadline
        self.nodes = 0
        self.best = best
        self.best_clique: list[int] | None = None

    def incumbent(self) -> int:
        return self.best

    def improve(self, clique: list[int]) -> None:
        self.best = len(clique)
        self.best_clique = list(clique)

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise _OutOfBudget
        if self.nodes % _CHECK_EVERY == 0 and time.monotonic() > self.deadline:
            raise _OutOfBudget

    def expand(self, C: list[int], P: int) -> None:
        self.tick()
        adj = self.adj
        verts, cols = greedy_colour(adj, P)
        for idx in range(len(verts) - 1, -1, -1):
            if len(C) + cols[idx] <= self.incumbent():
                return
            v = verts[idx]
            C.append(v)
            NP = P & adj[v]
            if NP:
                self.expand(C, NP)
            elif len(C) > self.incumbent():
                self.improve(C)
            C.pop()
            P &= ~(1 << v)


def max_clique(graph: CompatGraph, node_budget: int = DEFAULT_NODE_BUDGET,
               time_budget: float = DEFAULT_TIME_BUDGET, threads: int = 1,
               lower_bound: int = 0) -> SearchResult:
    """Maximum clique of ``graph``.

    The witness is a sorted list of vertex indices into ``graph.vertices``.
    When a budget runs out the result carries the best clique found and
    ``optimal=False``.  With ``threads > 1`` the root branches are farmed
    out to worker processes (the node budget then applies per root branch);
    value and optimality match the serial run and the witness is the
    lexicographically smallest maximum clique any worker reported.
    ``lower_bound`` only prunes; it must not exceed the answer.
    """
    start = time.monotonic()
    n = len(graph)
    if n == 0:
        return SearchResult(0, [], True, 0, time.monotonic() - start)
    order = degeneracy_order(graph.adjacency)
    adj = _renumber(graph.adjacency, order)
    deadline = start + time_budget
    if threads > 1 and n > 1:
        found, optimal, nodes = _parallel(adj, node_budget, deadline, threads, lower_bound)
        value = max((len(c) for c in found), default=0)
        # canonical witness: lexicographically smallest among the maximum ones found
        clique = min((c for c in found if len(c) == value),
                     key=lambda c: sorted(order[i] for i in c), default=[])
    else:
        eng = _Engine(adj, node_budget, deadline, best=max(lower_bound - 1, 0))
        optimal = True
        try:
            eng.expand([], (1 << n) - 1)
        except _OutOfBudget:
            optimal = False
        clique, nodes = eng.best_clique or [], eng.nodes
        value = len(clique)
    if not clique:
        # every non-empty graph has a 1-clique
        clique = [0]
        value = 1
    witness = sorted(order[i] for i in clique)
    return SearchResult(value, witness, optimal, nodes, time.monotonic() - start)


# -- parallel root splitting ---------------------------------------------------

_W: dict = {}


def _init_worker(adj, best, lock, node_budget, deadline):
    _W.update(adj=adj, best=best, lock=lock, node_budget=node_budget, deadline=deadline)


class _SharedEngine(_Engine):
    def incumbent(self) -> int:
        shared = _W["best"].value
        if shared > self.best:
            self.best = shared
        return self.best

    def improve(self, clique):
        super().improve(clique)
        with _W["lock"]:
            if _W["best"].value < len(clique):
                _W["best"].value = len(clique)


def _root_task(v: int, P: int, bound: int):
    eng = _SharedEngine(_W["adj"], _W["node_budget"], _W["deadline"])
    if bound <= eng.incumbent():
        return None, True, 0
    C = [v]
    try:
        if P:
            eng.expand(C, P)
        elif 1 > eng.incumbent():
            eng.improve(C)
        return eng.best_clique, True, eng.nodes
    except _OutOfBudget:
        return eng.best_clique, False, eng.nodes


def _parallel(adj, node_budget, deadline, threads, lower_bound):
    n = len(adj)
    verts, cols = greedy_colour(adj, (1 << n) - 1)
    tasks = []
    P = (1 << n) - 1
    for idx in range(len(verts) - 1, -1, -1):
        v = verts[idx]
        tasks.append((v, P & adj[v], cols[idx]))
        P &= ~(1 << v)
    ctx = mp.get_context("fork")
    best = ctx.RawValue("i", max(lower_bound - 1, 0))
    lock = ctx.Lock()
    found: list[list[int]] = []
    optimal = True
    nodes = 0
    with cf.ProcessPoolExecutor(threads, mp_context=ctx, initializer=_init_worker,
                                initargs=(adj, best, lock, node_budget, deadline)) as pool:
        for clique, done, used in pool.map(_root_task, *zip(*tasks)):
            nodes += used
            optimal &= done
            if clique:
                found.append(clique)
    return found, optimal, nodes
