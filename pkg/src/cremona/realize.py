"""Projective realizations from a frame of PG(n-2, F).

The frame is ``q_i = <e_i>`` for ``i = 1..n-1`` together with ``q_0 = <e_1 + ... + e_{n-1}>``.
For a nonempty proper subset ``a`` of ``X = {0..n-1}``, ``p_a`` is the unique point
common to the spans of ``{q_i : i in a}`` and ``{q_i : i not in a}``; in coordinates it
is the 0/1 vector of whichever of ``a`` and its complement avoids 0.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field as dc_field
from itertools import combinations
from typing import Sequence

from .crspace import CRConfiguration
from .exactalg import (
    FieldSpec,
    Matrix,
    ProjectiveSubspace,
    Row,
    intersect,
    intersect_all,
    member,
    rank_of,
    solve,
    span,
)
from .incidence import IncidenceStructure
from .setcomb import ParameterError, SubsetCode, complement, enumerate_k_subsets, full_mask


class RealizationError(RuntimeError):
    """A computed object contradicts a proven identity; indicates a bug."""


class LemmaViolation(RealizationError):
    pass


@dataclass(frozen=True)
class Frame:
    n: int
    field: FieldSpec

    def __post_init__(self) -> None:
        if self.n < 3:
            raise ParameterError(f"a frame needs n >= 3, got {self.n}")

    @property
    def dim(self) -> int:
        return self.n - 1

    def vector(self, i: int) -> Row:
        """Coordinates of the frame point q_i."""
        F = self.field
        if i == 0:
            return (F.one,) * self.dim
        if not 0 < i < self.n:
            raise ParameterError(f"frame index {i} outside 0..{self.n - 1}")
        return tuple(F.one if j == i - 1 else F.zero for j in range(self.dim))

    def vectors(self) -> list[Row]:
        return [self.vector(i) for i in range(self.n)]

    def subspace(self, u: SubsetCode) -> ProjectiveSubspace:
        """Q_u, the span of the frame points indexed by u."""
        return span([self.vector(i) for i in u.elements()], self.field, self.dim)

    def is_frame(self) -> bool:
        vs = self.vectors()
        if any(rank_of(self.field, [v, w]) < 2 for v, w in combinations(vs, 2)):
            return False
        return all(rank_of(self.field, list(sub)) == self.dim for sub in combinations(vs, self.dim))


def build_frame(n: int, field: FieldSpec) -> Frame:
    return Frame(n, field)


def point_p(F: Frame, a: SubsetCode) -> Row:
    full = full_mask(F.n)
    if a.mask in (0, full) or a.mask & ~full:
        raise ParameterError(f"p is defined for nonempty proper subsets, got {a!r}")
    side = a.mask if not a.mask & 1 else full & ~a.mask
    one, zero = F.field.one, F.field.zero
    return tuple(one if side >> (j + 1) & 1 else zero for j in range(F.dim))


def point_p_by_intersection(F: Frame, a: SubsetCode) -> ProjectiveSubspace:
    return intersect(F.subspace(a), F.subspace(complement(a, F.n)))


def block_span(F: Frame, block: Sequence[SubsetCode]) -> ProjectiveSubspace:
    return span([point_p(F, a) for a in block], F.field, F.dim)


def block_subspace(F: Frame, block: Sequence[SubsetCode]) -> ProjectiveSubspace:
    """Subspace of a block of a configuration with n = k*s, from the explicit basis.

    The basis is the coordinate sums over every part except the one holding 0; the
    result is checked against the span of the block's points.
    """
    ks = {a.card for a in block}
    union = 0
    for a in block:
        if union & a.mask:
            raise ParameterError("block parts are not pairwise disjoint")
        union |= a.mask
    if len(ks) != 1 or union != full_mask(F.n):
        raise ParameterError("explicit block basis needs a partition of X into k-sets; use verify_realization")
    one, zero = F.field.one, F.field.zero
    gens = [
        tuple(one if a.mask >> (j + 1) & 1 else zero for j in range(F.dim))
        for a in block
        if not a.mask & 1
    ]
    U = span(gens, F.field, F.dim)
    if U != block_span(F, block):
        raise RealizationError(f"explicit basis disagrees with the span of the block {list(block)}")
    return U


def intersection_dim_check(F: Frame, parts: Sequence[SubsetCode], k: int) -> int:
    """Projective dimension of the intersection of Q_{X-a} over pairwise disjoint k-sets a.

    Raises :class:`LemmaViolation` unless it equals ``k(s-j) + j - 2`` with ``n = k s``.
    """
    n = F.n
    if n % k:
        raise ParameterError(f"need n = k*s, but k={k} does not divide n={n}")
    s = n // k
    seen = 0
    for a in parts:
        if a.card != k or a.mask & seen:
            raise ParameterError("parts must be pairwise disjoint k-sets")
        seen |= a.mask
    j = len(parts)
    if not 1 <= j <= s:
        raise ParameterError(f"need 1 <= j <= s, got j={j}")
    got = intersect_all([F.subspace(complement(a, n)) for a in parts]).projective_dim
    want = k * (s - j) + j - 2
    if got != want:
        raise LemmaViolation(f"intersection over {list(parts)} has dimension {got}, expected {want}")
    return got


@dataclass
class RealizationReport:
    field: str
    n: int
    k: int
    s: int
    m: int
    block_projective_dims: list[int]
    block_bases: list[list[list[str]]]
    incidence_violations: list[tuple[list[int], int]]
    point_collisions: list[list[list[int]]]
    distinct_blocks: bool
    verdict: str
    characteristic: dict = dc_field(default_factory=dict)
    predicted_verdict: str = ""

    @property
    def is_embedding(self) -> bool:
        return self.verdict == "embedding"

    @property
    def consistent(self) -> bool:
        return self.verdict == self.predicted_verdict

    def to_dict(self) -> dict:
        d = asdict(self)
        d["consistent"] = self.consistent
        return d

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def char_divides(field: FieldSpec, x: int) -> bool:
    return x % field.p == 0 if field.p else x == 0


def verify_realization(C: CRConfiguration, field: FieldSpec) -> RealizationReport:
    """Map every point through p and test the block subspaces.

    The verdict is ``embedding`` iff every block spans projective dimension s-2,
    no point off a block lands in that block's subspace, and distinct blocks give
    distinct subspaces.
    """
    F = Frame(C.n, field)
    S = C.structure
    pts = C.points
    vecs = [point_p(F, a) for a in pts]

    by_vec: dict[Row, list[int]] = {}
    for i, v in enumerate(vecs):
        by_vec.setdefault(v, []).append(i)
    collisions = [[pts[i].elements() for i in grp] for grp in by_vec.values() if len(grp) > 1]

    dims, bases, spaces = [], [], []
    violations = []
    for j, b in enumerate(S.blocks):
        U = span([vecs[x] for x in b], field, F.dim)
        spaces.append(U.basis)
        dims.append(U.projective_dim)
        bases.append(U.to_strings())
        on = set(b)
        for x in range(S.num_points):
            if x not in on and member(vecs[x], U):
                violations.append((pts[x].elements(), j))

    distinct = len(set(spaces)) == len(spaces)
    ok = all(d == C.s - 2 for d in dims) and not violations and distinct
    divides = char_divides(field, C.s - 1)
    predicted = "embedding" if (C.m == 0 or divides) else "not-an-embedding"
    return RealizationReport(
        field=str(field),
        n=C.n,
        k=C.k,
        s=C.s,
        m=C.m,
        block_projective_dims=dims,
        block_bases=bases,
        incidence_violations=violations,
        point_collisions=collisions,
        distinct_blocks=distinct,
        verdict="embedding" if ok else "not-an-embedding",
        characteristic={"char": field.characteristic, "s": C.s, "divides": divides},
        predicted_verdict=predicted,
    )


def dependent_proper_subsets(C: CRConfiguration, field: FieldSpec) -> list[tuple[int, tuple[int, ...]]]:
    """(block, point subset) pairs where a proper subset of p(B) is dependent."""
    F = Frame(C.n, field)
    vecs = [point_p(F, a) for a in C.points]
    bad = []
    for j, b in enumerate(C.structure.blocks):
        for t in range(1, len(b)):
            for T in combinations(b, t):
                if rank_of(field, [vecs[x] for x in T]) < t:
                    bad.append((j, T))
    return bad


def proper_subset_independence(C: CRConfiguration, field: FieldSpec) -> bool:
    return not dependent_proper_subsets(C, field)


@dataclass(frozen=True)
class MinspanResult:
    rank_expected: int
    rank_observed: int
    coincide: bool


def minspan_check(F: Frame, A: SubsetCode, k: int) -> MinspanResult:
    """Compare Q_A with the span of p_a over the k-subsets a of A."""
    full = full_mask(F.n)
    if A.mask & ~full or A.mask == full:
        raise ParameterError("A must be a proper subset of X")
    if not 1 <= k <= A.card:
        raise ParameterError(f"need 1 <= k <= |A|, got k={k}, |A|={A.card}")
    QA = F.subspace(A)
    elems = A.elements()
    sums = []
    for sub in enumerate_k_subsets(len(elems), k):
        a = SubsetCode.of(elems[i] for i in sub.elements())
        sums.append(point_p(F, a))
    U = span(sums, F.field, F.dim)
    return MinspanResult(QA.rank, U.rank, QA == U)


def collineation_from_permutation(F: Frame, sigma: Sequence[int]) -> Matrix:
    """Matrix M (acting on row vectors) with <q_i M> = q_sigma(i) for every frame point.

    Sending the frame onto the permuted frame fixes M up to a scalar; the scalars
    on e_1..e_{n-1} are chosen so that e_0 maps onto the image of q_0.
    """
    n = F.n
    if sorted(sigma) != list(range(n)):
        raise ParameterError(f"not a permutation of 0..{n - 1}")
    targets = [F.vector(sigma[i]) for i in range(n)]
    basis = Matrix(F.field, tuple(targets[1:]), F.dim)
    lam = solve(basis, targets[0])
    if lam is None or not all(lam):
        raise RealizationError("permuted frame is not a frame")
    fld = F.field
    rows = tuple(tuple(fld.red(l * x) for x in t) for l, t in zip(lam, targets[1:]))
    return Matrix(fld, rows, F.dim)


def permute_subset(sigma: Sequence[int], a: SubsetCode) -> SubsetCode:
    return SubsetCode.of(sigma[x] for x in a.elements())


def collineation_maps_points(F: Frame, sigma: Sequence[int], M: Matrix) -> bool:
    """Check <p_a M> = p_sigma(a) for every nonempty proper subset a."""
    full = full_mask(F.n)
    for mask in range(1, full):
        a = SubsetCode.from_mask(mask)
        img = span([M.apply(point_p(F, a))], F.field, F.dim)
        if img.basis != (point_p(F, permute_subset(sigma, a)),):
            return False
    return True


def canonical_points(n: int) -> list[SubsetCode]:
    """One label per point of the full family: the smaller of a and its complement.

    Ties (|a| = n/2) keep the side that avoids 0.  Ordered by size, then colex.
    """
    out = []
    for size in range(1, n // 2 + 1):
        for a in enumerate_k_subsets(n, size):
            if 2 * size == n and a.mask & 1:
                continue
            out.append(a)
    return out


def enumerate_dependencies(
    F: Frame, family: Sequence[SubsetCode], max_size: int
) -> list[tuple[SubsetCode, ...]]:
    """Minimal dependent subfamilies of size at most ``max_size``, smallest first.

    A subfamily is listed when its points span fewer dimensions than its size while
    every proper subfamily is independent; size-3 entries are the collinear triples.
    """
    if max_size < 2:
        raise ParameterError("max_size must be at least 2")
    vecs = [point_p(F, a) for a in family]
    if len(set(vecs)) != len(vecs):
        raise ParameterError("family contains two labels for the same point")
    found: list[frozenset[int]] = []
    out = []
    for t in range(2, max_size + 1):
        for T in combinations(range(len(family)), t):
            Ts = frozenset(T)
            if any(d <= Ts for d in found):
                continue
            if rank_of(F.field, [vecs[i] for i in T]) < t:
                out.append(T)
        found.extend(frozenset(T) for T in out if len(T) == t)
    return [tuple(family[i] for i in T) for T in out]


def collinear_triples(F: Frame, family: Sequence[SubsetCode]) -> list[tuple[SubsetCode, ...]]:
    return [d for d in enumerate_dependencies(F, family, 3) if len(d) == 3]


def line_ranks(family: Sequence[SubsetCode], triples) -> dict[SubsetCode, int]:
    ranks = {a: 0 for a in family}
    for t in triples:
        for a in t:
            ranks[a] += 1
    return ranks


def dependency_structure(family: Sequence[SubsetCode], triples) -> IncidenceStructure:
    return IncidenceStructure.from_labeled_blocks(list(family), triples)


_DESARGUES_PAIRS = [SubsetCode.of(p) for p in combinations(range(5), 2)]
_DESARGUES_LINES = [
    tuple(_DESARGUES_PAIRS.index(SubsetCode.of(q)) for q in combinations(t, 2))
    for t in combinations(range(5), 3)
]


def desargues_subconfigurations(
    points: Sequence, triples: Sequence[Sequence]
) -> list[frozenset[frozenset]]:
    """All 10-point/10-line Desargues patterns whose lines are among ``triples``.

    The Desargues configuration is modelled as the pairs of a 5-set, with the three
    pairs inside each 3-set forming a line.  Returns each found pattern once, as its
    set of lines.
    """
    lines = {frozenset(t) for t in triples}
    pts = list(points)
    order = list(range(10))
    checks: list[list[tuple[int, int]]] = [[] for _ in order]
    for ln in _DESARGUES_LINES:
        last = max(ln)
        checks[last].append(tuple(x for x in ln if x != last))
    found: set[frozenset[frozenset]] = set()
    assign: list = [None] * 10

    def extend(pos: int) -> None:
        if pos == 10:
            found.add(frozenset(frozenset(assign[x] for x in ln) for ln in _DESARGUES_LINES))
            return
        used = set(assign[:pos])
        for p in pts:
            if p in used:
                continue
            if all(frozenset((assign[u], assign[v], p)) in lines for u, v in checks[pos]):
                assign[pos] = p
                extend(pos + 1)
        assign[pos] = None

    extend(0)
    return sorted(found, key=lambda f: sorted(sorted(map(repr, ln)) for ln in f))


@dataclass
class CoplanarityReport:
    field: str
    triangle_ranks: dict[tuple[int, ...], int]
    tetra_ranks: dict[tuple[int, ...], int]

    @property
    def triangles_coplanar(self) -> bool:
        return all(r <= 3 for r in self.triangle_ranks.values())

    @property
    def tetras_coplanar(self) -> bool:
        return all(r <= 3 for r in self.tetra_ranks.values())


def coplanarity_checks(F: Frame) -> CoplanarityReport:
    """Ranks of {p_ij, p_jl, p_il, p_ijl} over 3-sets and of the 3-subsets of each 4-set."""
    if F.n < 5:
        raise ParameterError("coplanarity checks need n >= 5")
    tri = {}
    for t in combinations(range(F.n), 3):
        pts = [SubsetCode.of(q) for q in combinations(t, 2)] + [SubsetCode.of(t)]
        tri[t] = rank_of(F.field, [point_p(F, a) for a in pts])
    tet = {}
    for q in combinations(range(F.n), 4):
        pts = [SubsetCode.of(t) for t in combinations(q, 3)]
        tet[q] = rank_of(F.field, [point_p(F, a) for a in pts])
    return CoplanarityReport(str(F.field), tri, tet)


def dependency_dot(family: Sequence[SubsetCode], triples, name: str = "dependencies") -> str:
    """Points as circles, collinear triples as boxes."""
    lines = [f"graph {name} {{"]
    idx = {a: i for i, a in enumerate(family)}
    for a, i in idx.items():
        lab = "".join(map(str, a.elements()))
        lines.append(f'  p{i} [shape=circle, label="{lab}"];')
    for j, t in enumerate(triples):
        lines.append(f'  l{j} [shape=box, label="", width=0.15, height=0.15];')
        for a in t:
            lines.append(f"  p{idx[a]} -- l{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"

