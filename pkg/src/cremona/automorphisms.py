"""Automorphism and isomorphism search for incidence structures.

Both searches run on Levi graphs.  Points and blocks start in different colour
classes, the colouring is refined to an equitable partition, and the search
individualizes one vertex at a time (smallest non-singleton class, lowest vertex
first).  A candidate map is accepted only after every edge has been checked.

Group orders come from a base and strong generating set built level by level:
for each base point the orbit under the pointwise stabilizer of the earlier base
points is determined exactly (every candidate image is either reached by known
generators or settled by an exhaustive search), and the order is the product of
these orbit lengths.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import prod
from typing import Sequence

from .incidence import IncidenceStructure, levi_graph

DEFAULT_BUDGET = 10**7
DEFAULT_MAX_VERTICES = 200

Adjacency = Sequence[Sequence[int]]


class SearchBudgetExceeded(RuntimeError):
    pass


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.limit:
            raise SearchBudgetExceeded(f"search exceeded its budget of {self.limit} nodes")


def refine(adj: Adjacency, colors: Sequence[int]) -> tuple[list[int], tuple]:
    """Colour refinement to the coarsest equitable partition finer than ``colors``.

    New colour ids are ranks of (old colour, sorted neighbour colours), so two runs
    with equal traces assign corresponding ids.
    """
    colors = list(colors)
    ncls = len(set(colors))
    trace = []
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in nbrs))) for v, nbrs in enumerate(adj)]
        uniq = sorted(set(sigs))
        rank = {sig: i for i, sig in enumerate(uniq)}
        trace.append(tuple(sorted(Counter(sigs).items())))
        colors = [rank[sig] for sig in sigs]
        if len(uniq) == ncls:
            return colors, tuple(trace)
        ncls = len(uniq)


def individualize(colors: Sequence[int], v: int) -> list[int]:
    out = [2 * c for c in colors]
    out[v] += 1
    return out


def _target_cell(colors: Sequence[int], allowed: range | None = None) -> list[int]:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        if allowed is None or v in allowed:
            cells.setdefault(c, []).append(v)
    best = None
    for c in sorted(cells):
        cell = cells[c]
        if len(cell) > 1 and (best is None or len(cell) < len(best)):
            best = cell
    return best or []


def _is_isomorphism(adj_a: Adjacency, adj_b: Adjacency, f: Sequence[int]) -> bool:
    return all(
        sorted(f[u] for u in nbrs) == sorted(adj_b[f[v]]) for v, nbrs in enumerate(adj_a)
    )


def _extend(adj_a, adj_b, ca, cb, budget: _Budget) -> list[int] | None:
    """Find an isomorphism respecting the (refined, compatible) colourings ca -> cb."""
    budget.tick()
    cell = _target_cell(ca)
    if not cell:
        f = [0] * len(ca)
        where = {c: w for w, c in enumerate(cb)}
        for v, c in enumerate(ca):
            f[v] = where[c]
        return f if _is_isomorphism(adj_a, adj_b, f) else None
    v = cell[0]
    na, ta = refine(adj_a, individualize(ca, v))
    color = ca[v]
    for w in range(len(cb)):
        if cb[w] != color:
            continue
        nb, tb = refine(adj_b, individualize(cb, w))
        if ta != tb:
            budget.tick()
            continue
        f = _extend(adj_a, adj_b, na, nb, budget)
        if f is not None:
            return f
    return None


@dataclass
class GroupDescription:
    """Automorphism group as point permutations plus its exact order."""

    generators: list[tuple[int, ...]]
    order: int
    base: list[int] = field(default_factory=list)
    orbit_lengths: list[int] = field(default_factory=list)
    nodes: int = 0


def _orbit(start: int, gens: list[list[int]]) -> set[int]:
    orbit = {start}
    frontier = [start]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = g[x]
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return orbit


def automorphism_group(
    S: IncidenceStructure,
    budget: int = DEFAULT_BUDGET,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> GroupDescription:
    L = levi_graph(S)
    if L.num_vertices > max_vertices:
        raise SearchBudgetExceeded(
            f"Levi graph has {L.num_vertices} vertices, above the limit of {max_vertices}"
        )
    adj = L.adjacency
    nu = S.num_points
    points = range(nu)
    bud = _Budget(budget)

    colors, trace = refine(adj, [0] * nu + [1] * S.num_blocks)
    levels = [(colors, trace)]
    base: list[int] = []
    while True:
        cell = _target_cell(levels[-1][0], points)
        if not cell:
            break
        base.append(cell[0])
        levels.append(refine(adj, individualize(levels[-1][0], cell[0])))
        bud.tick()

    gens: list[list[int]] = []
    orbit_lengths = [0] * len(base)
    for i in reversed(range(len(base))):
        ci = levels[i][0]
        b = base[i]
        child, child_trace = levels[i + 1]
        orbit = _orbit(b, gens)
        for w in range(len(ci)):
            if ci[w] != ci[b] or w in orbit:
                continue
            nb, tb = refine(adj, individualize(ci, w))
            bud.tick()
            if tb != child_trace:
                continue
            f = _extend(adj, adj, child, nb, bud)
            if f is not None:
                gens.append(f)
                orbit = _orbit(b, gens)
        orbit_lengths[i] = len(orbit)

    return GroupDescription(
        generators=[tuple(g[:nu]) for g in gens],
        order=prod(orbit_lengths),
        base=base,
        orbit_lengths=orbit_lengths,
        nodes=bud.nodes,
    )


def find_isomorphism(
    S1: IncidenceStructure, S2: IncidenceStructure, budget: int = DEFAULT_BUDGET
) -> tuple[int, ...] | None:
    """A point bijection carrying the blocks of S1 onto those of S2, or None."""
    if (S1.num_points, S1.num_blocks) != (S2.num_points, S2.num_blocks):
        return None
    if sorted(map(len, S1.blocks)) != sorted(map(len, S2.blocks)):
        return None
    L1, L2 = levi_graph(S1), levi_graph(S2)
    init = [0] * S1.num_points + [1] * S1.num_blocks
    c1, t1 = refine(L1.adjacency, init)
    c2, t2 = refine(L2.adjacency, init)
    if t1 != t2:
        return None
    f = _extend(L1.adjacency, L2.adjacency, c1, c2, _Budget(budget))
    if f is None:
        return None
    return tuple(f[: S1.num_points])
