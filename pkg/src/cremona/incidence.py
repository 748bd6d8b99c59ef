"""Finite incidence structures: points, blocks, and the usual derived objects."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Any, Hashable, NamedTuple, Sequence

from .setcomb import ParameterError, SubsetCode


class ConfigurationError(ValueError):
    """The structure is not point- or block-uniform."""

    def __init__(self, message: str, *, point: int | None = None, block: int | None = None):
        super().__init__(message)
        self.point = point
        self.block = block


class ConfigurationParams(NamedTuple):
    nu: int
    r: int
    b: int
    s: int


@dataclass(frozen=True, eq=False)
class IncidenceStructure:
    """Points are indices ``0..len(labels)-1``; blocks are sorted index tuples.

    Construction rejects out-of-range indices, duplicate blocks and duplicate labels.
    """

    labels: tuple[Hashable, ...]
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        n = len(labels)
        if len(set(labels)) != n:
            raise ParameterError("duplicate point labels")
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        for i, b in enumerate(blocks):
            if len(set(b)) != len(b):
                raise ParameterError(f"block {i} repeats a point")
            if b and not (0 <= b[0] and b[-1] < n):
                raise ParameterError(f"block {i} has a point index outside 0..{n - 1}")
        if len(set(blocks)) != len(blocks):
            raise ParameterError("duplicate blocks")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_labeled_blocks(cls, labels: Sequence[Hashable], blocks) -> "IncidenceStructure":
        index = {lab: i for i, lab in enumerate(labels)}
        return cls(tuple(labels), tuple(tuple(sorted(index[x] for x in b)) for b in blocks))

    @property
    def num_points(self) -> int:
        return len(self.labels)

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @cached_property
    def point_index(self) -> dict[Hashable, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def blocks_through(self) -> tuple[tuple[int, ...], ...]:
        through: list[list[int]] = [[] for _ in self.labels]
        for j, b in enumerate(self.blocks):
            for x in b:
                through[x].append(j)
        return tuple(tuple(t) for t in through)

    @cached_property
    def block_masks(self) -> tuple[int, ...]:
        """Per point, a bit mask over block indices; AND-ing masks tests joint incidence."""
        return tuple(sum(1 << j for j in t) for t in self.blocks_through)

    @cached_property
    def block_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.blocks)

    def collinear(self, points: Sequence[int]) -> bool:
        """True iff some block contains every listed point."""
        if not points:
            return bool(self.blocks)
        m = -1
        for x in points:
            m &= self.block_masks[x]
            if not m:
                return False
        return True

    def labeled_blocks(self) -> frozenset[frozenset]:
        return frozenset(frozenset(self.labels[x] for x in b) for b in self.blocks)

    def same_labeled(self, other: "IncidenceStructure") -> bool:
        return set(self.labels) == set(other.labels) and self.labeled_blocks() == other.labeled_blocks()

    def to_json(self) -> str:
        return json.dumps(
            {"points": [_render_label(x) for x in self.labels], "blocks": [list(b) for b in self.blocks]}
        )


def _render_label(x: Any) -> Any:
    if isinstance(x, SubsetCode):
        return x.elements()
    if isinstance(x, (int, str)):
        return x
    return str(x)


def verify_configuration(S: IncidenceStructure) -> ConfigurationParams:
    if not S.num_points:
        raise ParameterError("structure has no points")
    if not S.num_blocks:
        raise ConfigurationError("structure has no blocks")
    s = len(S.blocks[0])
    for j, b in enumerate(S.blocks):
        if len(b) != s:
            raise ConfigurationError(f"block {j} has {len(b)} points, expected {s}", block=j)
    ranks = S.blocks_through
    r = len(ranks[0])
    for i, t in enumerate(ranks):
        if len(t) != r:
            raise ConfigurationError(f"point {i} lies on {len(t)} blocks, expected {r}", point=i)
    params = ConfigurationParams(S.num_points, r, S.num_blocks, s)
    assert params.nu * params.r == params.b * params.s
    return params


def intersection_profile(S: IncidenceStructure) -> dict[int, int]:
    """Histogram of |B1 & B2| over unordered pairs of distinct blocks."""
    sets = [set(b) for b in S.blocks]
    prof: Counter[int] = Counter()
    for i, j in combinations(range(len(sets)), 2):
        prof[len(sets[i] & sets[j])] += 1
    return dict(sorted(prof.items()))


def neighborhood(S: IncidenceStructure, a: int) -> IncidenceStructure:
    if not 0 <= a < S.num_points:
        raise ParameterError(f"point index {a} out of range")
    through = [S.blocks[j] for j in S.blocks_through[a]]
    pts = sorted({x for b in through for x in b if x != a})
    new = {x: i for i, x in enumerate(pts)}
    return IncidenceStructure(
        tuple(S.labels[x] for x in pts),
        tuple(sorted(tuple(new[x] for x in b if x != a) for b in through)),
    )


@dataclass(frozen=True)
class LeviGraph:
    """Bipartite incidence graph; vertices ``0..nu-1`` are points, the rest blocks."""

    num_points: int
    num_blocks: int
    adjacency: tuple[tuple[int, ...], ...]

    @property
    def num_vertices(self) -> int:
        return self.num_points + self.num_blocks

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.num_points) for v in self.adjacency[u]]

    def to_dot(self, point_labels: Sequence[str] | None = None, name: str = "levi") -> str:
        lines = [f"graph {name} {{"]
        for i in range(self.num_points):
            lab = point_labels[i] if point_labels else f"p{i}"
            lines.append(f'  p{i} [shape=circle, label="{lab}"];')
        for j in range(self.num_blocks):
            lines.append(f'  b{j} [shape=box, label="B{j}"];')
        for u, v in self.edges:
            lines.append(f"  p{u} -- b{v - self.num_points};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def levi_graph(S: IncidenceStructure) -> LeviGraph:
    nu = S.num_points
    adj: list[tuple[int, ...]] = [tuple(nu + j for j in t) for t in S.blocks_through]
    adj.extend(S.blocks)
    return LeviGraph(nu, S.num_blocks, tuple(adj))


def point_label_strings(S: IncidenceStructure) -> list[str]:
    out = []
    for x in S.labels:
        if isinstance(x, SubsetCode):
            out.append("".join(map(str, x.elements())) if x.card else "{}")
        else:
            out.append(str(x))
    return out


def is_automorphism(S: IncidenceStructure, perm: Sequence[int]) -> bool:
    if len(perm) != S.num_points:
        raise ParameterError(f"permutation has length {len(perm)}, structure has {S.num_points} points")
    if sorted(perm) != list(range(S.num_points)):
        raise ParameterError("not a permutation of the point indices")
    blocks = S.block_set
    return all(tuple(sorted(perm[x] for x in b)) in blocks for b in S.blocks)
