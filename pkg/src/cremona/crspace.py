"""Generalized Cremona-Richmond configurations and Sylvester systems.

``build_cr(n, k, s)`` has the (k+m)-subsets of ``X = {0..n-1}`` as points, where
``m = n - k*s``.  A block is ``{a_1 | t, ..., a_s | t}`` for an m-set ``t`` (the
*tail*) and pairwise disjoint k-sets ``a_i`` avoiding it; since ``n = ks + m``
the ``a_i`` always partition ``X - t``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial
from typing import Iterable, NamedTuple, Sequence

from .incidence import ConfigurationParams, IncidenceStructure, is_automorphism
from .setcomb import (
    ParameterError,
    SubsetCode,
    complement,
    enumerate_k_subsets,
    full_mask,
    k_subset_masks,
    partition_masks,
    popcount,
)


class CRParams(NamedTuple):
    n: int
    k: int
    s: int

    @property
    def m(self) -> int:
        return self.n - self.k * self.s

    def check(self) -> "CRParams":
        n, k, s = self
        if k < 1 or s < 2:
            raise ParameterError(f"need k >= 1 and s >= 2, got k={k}, s={s}")
        if n < k * s:
            raise ParameterError(f"need n >= k*s, got n={n} < {k * s}")
        if n > 64:
            raise ParameterError("ground set larger than 64 elements")
        return self


@dataclass(frozen=True, eq=False)
class CRConfiguration:
    params: CRParams
    structure: IncidenceStructure

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def s(self) -> int:
        return self.params.s

    @property
    def m(self) -> int:
        return self.params.m

    @property
    def points(self) -> tuple[SubsetCode, ...]:
        return self.structure.labels  # type: ignore[return-value]

    def index(self, a: SubsetCode | Iterable[int]) -> int:
        if not isinstance(a, SubsetCode):
            a = SubsetCode.of(a)
        try:
            return self.structure.point_index[a]
        except KeyError:
            raise ParameterError(f"{a!r} is not a point of the configuration") from None

    def block_labels(self, j: int) -> list[SubsetCode]:
        return [self.points[x] for x in self.structure.blocks[j]]


def build_cr(n: int, k: int, s: int) -> CRConfiguration:
    params = CRParams(n, k, s).check()
    m = params.m
    points = enumerate_k_subsets(n, k + m)
    index = {p.mask: i for i, p in enumerate(points)}
    full = full_mask(n)
    blocks = set()
    for tail in k_subset_masks(n, m):
        for parts in partition_masks(full & ~tail, k):
            blocks.add(tuple(sorted(index[a | tail] for a in parts)))
    return CRConfiguration(params, IncidenceStructure(tuple(points), tuple(sorted(blocks))))


def predicted_params(n: int, k: int, s: int) -> ConfigurationParams:
    """Point count, point rank and block count from the closed formulas."""
    CRParams(n, k, s).check()
    f = factorial
    nu = comb(n, k * (s - 1))
    r_num = f(n - (s - 1) * k) * f((s - 1) * k)
    r_den = f(n - k * s) * f(s - 1) * f(k) ** s
    b_num = f(n)
    b_den = f(n - k * s) * f(s) * f(k) ** s
    assert r_num % r_den == 0 and b_num % b_den == 0
    return ConfigurationParams(nu, r_num // r_den, b_num // b_den, s)


def params_table_csv(rows: Iterable[tuple[int, int, int]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "k", "s", "m", "nu", "r", "b"])
    for n, k, s in rows:
        p = predicted_params(n, k, s)
        w.writerow([n, k, s, n - k * s, p.nu, p.r, p.b])
    return buf.getvalue()


@dataclass(frozen=True, eq=False)
class SylvesterSystem:
    n: int
    k: int
    structure: IncidenceStructure


def build_sylvester(n: int, k: int) -> SylvesterSystem:
    if k < 1 or 2 * k > n:
        raise ParameterError(f"need 1 <= k and 2k <= n, got n={n}, k={k}")
    points = enumerate_k_subsets(n, 2 * k)
    index = {p.mask: i for i, p in enumerate(points)}
    blocks = set()
    for a, b in combinations(points, 2):
        if popcount(a.mask & b.mask) == k:
            blocks.add(tuple(sorted((index[a.mask], index[b.mask], index[a.mask ^ b.mask]))))
    return SylvesterSystem(n, k, IncidenceStructure(tuple(points), tuple(sorted(blocks))))


def kappa_relabel(C: CRConfiguration) -> IncidenceStructure:
    """Same blocks, every point label replaced by its complement in X."""
    if C.s != 3:
        raise ParameterError(f"complement relabeling is defined for s=3, got s={C.s}")
    labels = tuple(complement(a, C.n) for a in C.points)
    return IncidenceStructure(labels, C.structure.blocks)


@dataclass(frozen=True)
class KneserGraph:
    vertices: tuple[SubsetCode, ...]
    edges: frozenset[tuple[int, int]]  # pairs of masks, smaller first

    def degrees(self) -> dict[int, int]:
        deg = {v.mask: 0 for v in self.vertices}
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg


def kneser_graph(n: int, k: int) -> KneserGraph:
    verts = tuple(enumerate_k_subsets(n, k))
    edges = frozenset(
        (a.mask, b.mask) for a, b in combinations(verts, 2) if not a.mask & b.mask
    )
    return KneserGraph(verts, edges)


def joinability_graph(C: CRConfiguration) -> KneserGraph:
    """Points joined when they share a block."""
    if C.m:
        raise ParameterError("the joinability graph is a Kneser graph only when n = k*s")
    pts = C.points
    edges = set()
    for b in C.structure.blocks:
        for x, y in combinations(b, 2):
            a, c = sorted((pts[x].mask, pts[y].mask))
            edges.add((a, c))
    return KneserGraph(tuple(pts), frozenset(edges))


def gamma_direct(a: SubsetCode, b: SubsetCode, k: int) -> bool:
    if a.card != k or b.card != k:
        raise ParameterError(f"both sets must have {k} elements")
    return popcount(a.mask & b.mask) == k - 1


def _gamma_by_index(S: IncidenceStructure, a: int, b: int, s: int, target: int) -> bool:
    masks = S.block_masks
    if masks[a] & masks[b]:
        return False
    npts = S.num_points
    # candidates for the extra quantified points: each must be joinable with a and b
    cand = [x for x in range(npts) if masks[x] & masks[a] and masks[x] & masks[b]]
    for tup in combinations(cand, s - 3):
        tm = -1
        for x in tup:
            tm &= masks[x]
        if not (tm & masks[a] and tm & masks[b]):
            continue
        count = 0
        for c in range(npts):
            if c in tup:
                continue
            if tm & masks[c] and masks[a] & masks[c] and masks[b] & masks[c]:
                count += 1
        if count == target:
            return True
    return False


def gamma_formula(a: SubsetCode, b: SubsetCode, C: CRConfiguration) -> bool:
    """Decide |a & b| = k-1 using only joint incidence with blocks."""
    if C.m:
        raise ParameterError("the incidence characterization of gamma needs n = k*s")
    return _gamma_by_index(C.structure, C.index(a), C.index(b), C.s, comb(2 * C.k - 1, C.k))


def gamma_discrepancies(C: CRConfiguration) -> list[tuple[SubsetCode, SubsetCode]]:
    """Point pairs where the incidence formula and the overlap test disagree."""
    if C.m:
        raise ParameterError("the incidence characterization of gamma needs n = k*s")
    S = C.structure
    pts = C.points
    target = comb(2 * C.k - 1, C.k)
    bad = []
    for i, j in combinations(range(S.num_points), 2):
        if _gamma_by_index(S, i, j, C.s, target) != gamma_direct(pts[i], pts[j], C.k):
            bad.append((pts[i], pts[j]))
    return bad


@dataclass
class WeakChainReport:
    triangle_closes: bool
    double_meet_in_b0: bool
    no_tangency: bool
    counterexamples: dict[str, tuple]

    @property
    def all_hold(self) -> bool:
        return self.triangle_closes and self.double_meet_in_b0 and self.no_tangency


def check_weak_chain_properties(C: CRConfiguration) -> WeakChainReport:
    """Exhaustive check of three synthetic properties of the s=4, m=0 structures.

    1. Blocks A1, A2, A3 meeting pairwise in a_i in A_i & A_{i+1}: the a_i are on a block.
       Scanned as: any three pairwise joinable points lie on one block (if two of the
       chosen blocks coincide the conclusion is immediate, so both forms agree).
    2. |B0 & B1| = |B0 & B2| = 2 implies B1 = B2 or B1 & B2 within B0.
    3. B0 & B1 = {a}, b != a in B1: some block B2 != B1 through b has B0 & B2 = {a}.
    """
    if C.s != 4 or C.m:
        raise ParameterError(f"weak chain checks need s=4 and m=0, got s={C.s}, m={C.m}")
    S = C.structure
    masks = S.block_masks
    npts = S.num_points
    bm = [sum(1 << x for x in b) for b in S.blocks]
    bad: dict[str, tuple] = {}

    joinable = [[y for y in range(x + 1, npts) if masks[x] & masks[y]] for x in range(npts)]
    for x in range(npts):
        for y in joinable[x]:
            mxy = masks[x] & masks[y]
            for z in joinable[y]:
                if masks[x] & masks[z] and not mxy & masks[z]:
                    bad.setdefault("triangle", (x, y, z))

    for i, b0 in enumerate(bm):
        two = [j for j, b in enumerate(bm) if j != i and popcount(b & b0) == 2]
        for j1, j2 in combinations(two, 2):
            if bm[j1] & bm[j2] & ~b0:
                bad.setdefault("double_meet", (i, j1, j2))

    for i, b0 in enumerate(bm):
        for a in S.blocks[i]:
            abit = 1 << a
            single = [j for j in S.blocks_through[a] if bm[j] & b0 == abit]
            # blocks through a and b meeting B0 only in a, per point b
            count: dict[int, int] = {}
            for j in single:
                for b in S.blocks[j]:
                    count[b] = count.get(b, 0) + 1
            for j in single:
                for b in S.blocks[j]:
                    if b != a and count[b] < 2:
                        bad.setdefault("tangency", (i, j, a, b))

    return WeakChainReport(
        "triangle" not in bad, "double_meet" not in bad, "tangency" not in bad, bad
    )


def induced_map(sigma: Sequence[int], C: CRConfiguration) -> tuple[int, ...]:
    """Point permutation induced by a permutation of the ground set."""
    n = C.n
    if sorted(sigma) != list(range(n)):
        raise ParameterError(f"not a permutation of 0..{n - 1}: {sigma}")
    out = []
    for a in C.points:
        m = 0
        for x in a.elements():
            m |= 1 << sigma[x]
        out.append(C.structure.point_index[SubsetCode(m, a.card)])
    return tuple(out)


def ground_permutation_of(perm: Sequence[int], C: CRConfiguration) -> tuple[int, ...] | None:
    """The ground-set permutation inducing ``perm``, or None if there is none."""
    n = C.n
    pts = C.points
    stars = [frozenset(i for i, a in enumerate(pts) if x in a) for x in range(n)]
    where = {st: x for x, st in enumerate(stars)}
    sigma = []
    for x in range(n):
        image = frozenset(perm[i] for i in stars[x])
        y = where.get(image)
        if y is None:
            return None
        sigma.append(y)
    if len(set(sigma)) != n:
        return None
    return tuple(sigma) if induced_map(sigma, C) == tuple(perm) else None


def ground_transpositions(n: int) -> list[tuple[int, ...]]:
    """Adjacent transpositions generating the symmetric group on {0..n-1}."""
    out = []
    for i in range(n - 1):
        p = list(range(n))
        p[i], p[i + 1] = p[i + 1], p[i]
        out.append(tuple(p))
    return out


def induced_maps_are_automorphisms(C: CRConfiguration) -> bool:
    return all(is_automorphism(C.structure, induced_map(t, C)) for t in ground_transpositions(C.n))
