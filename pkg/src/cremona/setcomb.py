"""Subsets of a small ground set encoded as bit masks.

The ground set is always ``X = {0, ..., n-1}`` with ``n <= 64``.  A subset is a
:class:`SubsetCode` (mask plus cached cardinality); k-subsets are produced in
colexicographic order, which for a fixed k coincides with increasing mask value.
"""

from __future__ import annotations

from math import comb, factorial
from typing import Iterable, Iterator, NamedTuple

MAX_N = 64


class ParameterError(ValueError):
    """Raised when arguments violate an operation's preconditions."""


def popcount(x: int) -> int:
    return bin(x).count("1")


def full_mask(n: int) -> int:
    return (1 << n) - 1


class GroundSet(NamedTuple):
    n: int

    @property
    def mask(self) -> int:
        return full_mask(self.n)

    def check(self) -> "GroundSet":
        if not 1 <= self.n <= MAX_N:
            raise ParameterError(f"ground set size must be in 1..{MAX_N}, got {self.n}")
        return self


class SubsetCode(NamedTuple):
    """A subset of the ground set; ordering compares masks, i.e. colex order."""

    mask: int
    card: int

    @classmethod
    def of(cls, elements: Iterable[int]) -> "SubsetCode":
        mask = 0
        for x in elements:
            if not 0 <= x < MAX_N:
                raise ParameterError(f"element {x} outside 0..{MAX_N - 1}")
            mask |= 1 << x
        return cls(mask, popcount(mask))

    @classmethod
    def from_mask(cls, mask: int) -> "SubsetCode":
        return cls(mask, popcount(mask))

    def elements(self) -> list[int]:
        out = []
        m, i = self.mask, 0
        while m:
            if m & 1:
                out.append(i)
            m >>= 1
            i += 1
        return out

    def __iter__(self) -> Iterator[int]:  # type: ignore[override]
        return iter(self.elements())

    def __len__(self) -> int:
        return self.card

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and x >= 0 and bool(self.mask >> x & 1)

    def __or__(self, other: "SubsetCode") -> "SubsetCode":  # type: ignore[override]
        return SubsetCode.from_mask(self.mask | other.mask)

    def __and__(self, other: "SubsetCode") -> "SubsetCode":
        return SubsetCode.from_mask(self.mask & other.mask)

    def __sub__(self, other: "SubsetCode") -> "SubsetCode":
        return SubsetCode.from_mask(self.mask & ~other.mask)

    def __xor__(self, other: "SubsetCode") -> "SubsetCode":
        return SubsetCode.from_mask(self.mask ^ other.mask)

    def isdisjoint(self, other: "SubsetCode") -> bool:
        return not self.mask & other.mask

    def issubset(self, other: "SubsetCode") -> bool:
        return self.mask & ~other.mask == 0

    @property
    def min(self) -> int:
        if not self.mask:
            raise ValueError("empty subset has no minimum")
        return (self.mask & -self.mask).bit_length() - 1

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self.elements())) + "}"


class UniformPartition(NamedTuple):
    """Unordered family of pairwise disjoint, equal-size parts.

    Parts are kept sorted by their minimum element so equal families compare equal.
    """

    parts: tuple[SubsetCode, ...]

    @classmethod
    def canonical(cls, parts: Iterable[SubsetCode]) -> "UniformPartition":
        parts = tuple(sorted(parts, key=lambda p: p.min))
        seen = 0
        for p in parts:
            if seen & p.mask:
                raise ParameterError(f"parts are not pairwise disjoint: {parts}")
            seen |= p.mask
        if len({p.card for p in parts}) > 1:
            raise ParameterError(f"parts have different sizes: {parts}")
        return cls(parts)

    @property
    def support(self) -> SubsetCode:
        m = 0
        for p in self.parts:
            m |= p.mask
        return SubsetCode.from_mask(m)


def _check_nk(n: int, k: int) -> None:
    if not 0 <= n <= MAX_N:
        raise ParameterError(f"n must be in 0..{MAX_N}, got {n}")
    if not 0 <= k <= n:
        raise ParameterError(f"need 0 <= k <= n, got k={k}, n={n}")


def k_subset_masks(n: int, k: int) -> Iterator[int]:
    """Masks of all k-subsets of {0..n-1} in increasing order (Gosper's hack)."""
    _check_nk(n, k)
    if k == 0:
        yield 0
        return
    x = (1 << k) - 1
    limit = 1 << n
    while x < limit:
        yield x
        low = x & -x
        ripple = x + low
        x = (((ripple ^ x) >> 2) // low) | ripple


def enumerate_k_subsets(n: int, k: int) -> list[SubsetCode]:
    return [SubsetCode(m, k) for m in k_subset_masks(n, k)]


def complement(a: SubsetCode, X: GroundSet | int) -> SubsetCode:
    n = X if isinstance(X, int) else X.n
    full = full_mask(n)
    if a.mask & ~full:
        raise ParameterError(f"{a!r} is not a subset of a {n}-element ground set")
    return SubsetCode(full & ~a.mask, n - a.card)


def _partitions(rest: int, k: int) -> Iterator[tuple[int, ...]]:
    if not rest:
        yield ()
        return
    low = rest & -rest
    others = rest & ~low
    elems = [i for i in range(others.bit_length()) if others >> i & 1]
    for m in k_subset_masks(len(elems), k - 1):
        part = low
        for j, e in enumerate(elems):
            if m >> j & 1:
                part |= 1 << e
        for tail in _partitions(rest & ~part, k):
            yield (part,) + tail


def partition_masks(Z: int, k: int) -> Iterator[tuple[int, ...]]:
    """Partitions of the set encoded by ``Z`` into k-sets, parts ordered by minimum."""
    if k <= 0:
        raise ParameterError("part size must be positive")
    if popcount(Z) % k:
        raise ParameterError(f"|Z|={popcount(Z)} is not a multiple of k={k}")
    return _partitions(Z, k)


def enumerate_uniform_partitions(Z: SubsetCode, k: int, s: int) -> list[UniformPartition]:
    if k < 1 or s < 1 or Z.card != k * s:
        raise ParameterError(f"need |Z| = k*s, got |Z|={Z.card}, k={k}, s={s}")
    return [
        UniformPartition(tuple(SubsetCode(p, k) for p in parts))
        for parts in _partitions(Z.mask, k)
    ]


def count_partitions(n: int, k: int, s: int) -> int:
    """Number of ways to pick s unordered disjoint k-subsets of an n-set."""
    if k < 1 or s < 1 or n < k * s:
        raise ParameterError(f"need n >= k*s, got n={n}, k={k}, s={s}")
    num = factorial(n)
    den = factorial(n - k * s) * factorial(s) * factorial(k) ** s
    assert num % den == 0
    return num // den


def binomial(n: int, k: int) -> int:
    return comb(n, k)
