"""Exact linear algebra over the rationals and prime fields.

Rationals are :class:`fractions.Fraction`; residues mod p are plain ints in
``[0, p)``.  Algorithms are written once against :class:`FieldSpec`, which
supplies coercion, reduction and inversion.  Vectors are row tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction | int
Row = tuple


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """``p == 0`` means the rationals, otherwise GF(p)."""

    p: int = 0

    def __post_init__(self) -> None:
        if self.p and not _is_prime(self.p):
            raise FieldError(f"{self.p} is not prime")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        t = text.strip().lower()
        if t in ("q", "qq", "rationals"):
            return cls(0)
        if t.startswith("p:"):
            try:
                p = int(t[2:])
            except ValueError:
                raise FieldError(f"bad prime in field spec {text!r}") from None
            if p < 2:
                raise FieldError(f"{p} is not prime")
            return cls(p)
        raise FieldError(f"field spec must be 'q' or 'p:PRIME', got {text!r}")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def name(self) -> str:
        return f"GF({self.p})" if self.p else "Q"

    def __str__(self) -> str:
        return "q" if not self.p else f"p:{self.p}"

    def __call__(self, x) -> Scalar:
        if self.p:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    @property
    def zero(self) -> Scalar:
        return self(0)

    @property
    def one(self) -> Scalar:
        return self(1)

    def red(self, x: Scalar) -> Scalar:
        return x % self.p if self.p else x

    def inv(self, x: Scalar) -> Scalar:
        if not x:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p) if self.p else 1 / x

    def fmt(self, x: Scalar) -> str:
        return f"{x} mod {self.p}" if self.p else str(x)

    def vector(self, values: Iterable) -> Row:
        return tuple(self(v) for v in values)


@dataclass(frozen=True)
class Matrix:
    field: FieldSpec
    rows: tuple[Row, ...]
    ncols: int

    @classmethod
    def of(cls, field: FieldSpec, rows: Iterable[Iterable], ncols: int | None = None) -> "Matrix":
        rows = tuple(field.vector(r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("cannot infer the column count of an empty matrix")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        return cls(field, rows, ncols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls.of(field, [[int(i == j) for j in range(n)] for i in range(n)], n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        F = self.field
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        return Matrix(
            F,
            tuple(tuple(F.red(sum(a * b for a, b in zip(r, c))) for c in cols) for r in self.rows),
            other.ncols,
        )

    def apply(self, v: Sequence[Scalar]) -> Row:
        """Row vector times matrix."""
        F = self.field
        if len(v) != self.nrows:
            raise ValueError("shape mismatch")
        return tuple(
            F.red(sum(v[i] * self.rows[i][j] for i in range(self.nrows) if v[i]))
            for j in range(self.ncols)
        )

    def to_strings(self) -> list[list[str]]:
        return [[self.field.fmt(x) for x in r] for r in self.rows]


def _rref_rows(F: FieldSpec, rows: list[list[Scalar]], ncols: int) -> tuple[list[list[Scalar]], list[int]]:
    """In-place Gauss-Jordan elimination; returns nonzero rows and pivot columns."""
    r = 0
    pivots = []
    nrows = len(rows)
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        pr = rows[r] = [F.red(x * inv) for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [F.red(x - f * y) for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def rref(M: Matrix) -> tuple[Matrix, int]:
    rows, piv = _rref_rows(M.field, [list(r) for r in M.rows], M.ncols)
    rank = len(piv)
    full = [tuple(r) for r in rows] + [(M.field.zero,) * M.ncols] * (M.nrows - rank)
    return Matrix(M.field, tuple(full), M.ncols), rank


def rank_of(field: FieldSpec, vectors: Sequence[Sequence[Scalar]]) -> int:
    if not vectors:
        return 0
    rows, piv = _rref_rows(field, [list(field.vector(v)) for v in vectors], len(vectors[0]))
    return len(piv)


def nullspace(field: FieldSpec, rows: Sequence[Sequence[Scalar]], ncols: int) -> list[Row]:
    """Basis of {x : A x^T = 0}."""
    red, piv = _rref_rows(field, [list(field.vector(r)) for r in rows], ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [field.zero] * ncols
        x[f] = field.one
        for row, pc in zip(red, piv):
            x[pc] = field.red(-row[f])
        basis.append(tuple(x))
    return basis


@dataclass(frozen=True)
class ProjectiveSubspace:
    """Subspace of F^dim held as a canonical RREF basis, so ``==`` is subspace equality."""

    field: FieldSpec
    dim: int
    basis: tuple[Row, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def projective_dim(self) -> int:
        return self.rank - 1

    def __contains__(self, v: Sequence[Scalar]) -> bool:
        return member(v, self)

    def __and__(self, other: "ProjectiveSubspace") -> "ProjectiveSubspace":
        return intersect(self, other)

    def __add__(self, other: "ProjectiveSubspace") -> "ProjectiveSubspace":
        return join(self, other)

    def to_strings(self) -> list[list[str]]:
        return [[self.field.fmt(x) for x in r] for r in self.basis]


def span(vectors: Iterable[Sequence], field: FieldSpec, dim: int | None = None) -> ProjectiveSubspace:
    vecs = [field.vector(v) for v in vectors]
    if dim is None:
        if not vecs:
            raise ValueError("dimension required for an empty spanning set")
        dim = len(vecs[0])
    if any(len(v) != dim for v in vecs):
        raise ValueError(f"all vectors must have length {dim}")
    rows, _ = _rref_rows(field, [list(v) for v in vecs], dim)
    return ProjectiveSubspace(field, dim, tuple(tuple(r) for r in rows))


def _same_space(U1: ProjectiveSubspace, U2: ProjectiveSubspace) -> None:
    if U1.field != U2.field:
        raise FieldError(f"field mismatch: {U1.field.name} vs {U2.field.name}")
    if U1.dim != U2.dim:
        raise ValueError(f"ambient mismatch: {U1.dim} vs {U2.dim}")


def join(U1: ProjectiveSubspace, U2: ProjectiveSubspace) -> ProjectiveSubspace:
    _same_space(U1, U2)
    return span(U1.basis + U2.basis, U1.field, U1.dim)


def annihilator(U: ProjectiveSubspace) -> list[Row]:
    return nullspace(U.field, U.basis, U.dim)


def intersect(U1: ProjectiveSubspace, U2: ProjectiveSubspace) -> ProjectiveSubspace:
    """U1 & U2 as the common solution set of both annihilators."""
    _same_space(U1, U2)
    constraints = annihilator(U1) + annihilator(U2)
    return span(nullspace(U1.field, constraints, U1.dim), U1.field, U1.dim)


def intersect_all(spaces: Sequence[ProjectiveSubspace]) -> ProjectiveSubspace:
    if not spaces:
        raise ValueError("no subspaces given")
    for U in spaces[1:]:
        _same_space(spaces[0], U)
    constraints = [c for U in spaces for c in annihilator(U)]
    return span(nullspace(spaces[0].field, constraints, spaces[0].dim), spaces[0].field, spaces[0].dim)


def member(v: Sequence, U: ProjectiveSubspace) -> bool:
    if len(v) != U.dim:
        raise ValueError(f"vector of length {len(v)} in a space of dimension {U.dim}")
    F = U.field
    x = list(F.vector(v))
    for row in U.basis:
        c = next(i for i, y in enumerate(row) if y)
        if x[c]:
            f = x[c]
            x = [F.red(a - f * b) for a, b in zip(x, row)]
    return not any(x)


def det(M: Matrix) -> Scalar:
    if M.nrows != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    F = M.field
    rows = [list(r) for r in M.rows]
    n = M.nrows
    d = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return F.zero
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            d = F.red(-d)
        d = F.red(d * rows[c][c])
        inv = F.inv(rows[c][c])
        for i in range(c + 1, n):
            if rows[i][c]:
                f = F.red(rows[i][c] * inv)
                rows[i] = [F.red(x - f * y) for x, y in zip(rows[i], rows[c])]
    return d


def solve(M: Matrix, b: Sequence) -> Row | None:
    """One solution x of x M = b (row convention), or None if inconsistent."""
    F = M.field
    # x M = b  <=>  M^T x^T = b^T
    aug = [list(col) + [F(bi)] for col, bi in zip(zip(*M.rows), b)]
    red, piv = _rref_rows(F, aug, M.nrows + 1)
    if M.nrows in piv:
        return None
    x = [F.zero] * M.nrows
    for row, pc in zip(red, piv):
        x[pc] = row[-1]
    return tuple(x)


def all_ones_minus_identity(s: int, field: FieldSpec) -> Matrix:
    return Matrix.of(field, [[int(i != j) for j in range(s)] for i in range(s)], s)


def folklore_det(s: int, field: FieldSpec) -> Scalar:
    """det(J_s - I_s) by elimination, checked against (-1)^(s+1) (s-1)."""
    if s < 1:
        raise ValueError("s must be positive")
    d = det(all_ones_minus_identity(s, field))
    closed = field((-1) ** (s + 1) * (s - 1))
    if d != closed:
        raise ArithmeticError(f"det(J-I) for s={s} over {field.name} is {d}, expected {closed}")
    return d
