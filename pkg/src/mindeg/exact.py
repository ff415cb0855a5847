"""Exact rational scalars, dense matrices over Q, and projective frames.

All arithmetic is arbitrary-precision and exact; ``Rational`` is
:class:`fractions.Fraction`, whose canonical form (reduced, positive
denominator) is exactly the invariant the rest of the package relies on.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

RationalLike = Fraction | int | str


class DegeneratePosition(ValueError):
    """Points fail the general-position hypothesis of a construction."""


def _frac(x: RationalLike) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Matrix:
    """Immutable dense matrix with exact rational entries."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable[RationalLike]]):
        self._rows = tuple(tuple(_frac(x) for x in row) for row in rows)
        if self._rows:
            width = len(self._rows[0])
            if any(len(row) != width for row in self._rows):
                raise ValueError("ragged rows")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "Matrix":
        return cls([[0] * ncols for _ in range(nrows)])

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return len(self._rows[0]) if self._rows else 0

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self._rows[i][j]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Matrix) and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self._rows)
        return f"Matrix[{body}]"

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self._rows)) if self._rows else Matrix([])

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = other.transpose()._rows
        return Matrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self._rows]
        )

    def apply(self, vector: Sequence[RationalLike]) -> tuple[Fraction, ...]:
        """Matrix times column vector."""
        vec = [_frac(x) for x in vector]
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self._rows)

    def stack(self, other: "Matrix") -> "Matrix":
        if self.nrows and other.nrows and self.ncols != other.ncols:
            raise ValueError("shape mismatch")
        return Matrix(self._rows + other._rows)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._rows for x in row)

    def rank(self) -> int:
        return len(_ff_echelon(self._integer_rows())[1])

    def kernel_basis(self) -> "Matrix":
        return kernel_basis(self)

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("not square")
        work = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(self._rows)]
        for col in range(n):
            piv = next((r for r in range(col, n) if work[r][col] != 0), None)
            if piv is None:
                raise ValueError("singular matrix")
            work[col], work[piv] = work[piv], work[col]
            inv = 1 / work[col][col]
            work[col] = [x * inv for x in work[col]]
            for r in range(n):
                if r != col and work[r][col] != 0:
                    f = work[r][col]
                    work[r] = [a - f * b for a, b in zip(work[r], work[col])]
        return Matrix([row[n:] for row in work])

    def _integer_rows(self) -> list[list[int]]:
        """Rows with denominators cleared (row scaling preserves row space)."""
        out = []
        for row in self._rows:
            lcm = 1
            for x in row:
                d = x.denominator
                if d != 1:
                    lcm = lcm * d // _gcd(lcm, d)
            out.append([int(x * lcm) for x in row])
        return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _ff_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free (Bareiss) row echelon form of an integer matrix.

    Division at each step is exact, so intermediate entries stay minors of the
    input rather than blowing up multiplicatively.  Returns the echelon rows
    and the pivot column indices.
    """
    m = [row[:] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nrows):
            if any(m[i][c:]):
                lead = m[i][c]
                m[i][c:] = [
                    (m[r][c] * m[i][j] - lead * m[r][j]) // prev
                    for j in range(c, ncols)
                ]
        prev = m[r][c]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def rank(m: Matrix) -> int:
    """Rank over Q, by fraction-free elimination."""
    return m.rank()


def kernel_basis(m: Matrix) -> Matrix:
    """Basis of the right null space {v : m v = 0}, one row per basis vector.

    The basis is the standard one read off the echelon form: each free column
    contributes the vector with a 1 there, 0 at the other free columns, and
    back-substituted values at the pivot columns.
    """
    ncols = m.ncols
    echelon, pivots = _ff_echelon(m._integer_rows())
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i in reversed(range(len(pivots))):
            c = pivots[i]
            s = sum((echelon[i][j] * v[j] for j in range(c + 1, ncols)), Fraction(0))
            v[c] = -s / echelon[i][c]
        basis.append(v)
    return Matrix(basis) if basis else Matrix.zero(0, ncols)


class SparseEchelon:
    """Incremental exact row reduction for sparse rows over Q.

    Rows are dicts ``column -> nonzero Fraction``.  Stored rows are kept in
    reduced row echelon form (each pivot has coefficient 1 and appears in no
    other stored row), so reducing an incoming row is a single pass over its
    pivot-column entries; tails never chain.
    """

    def __init__(self) -> None:
        self.pivot_rows: dict[int, dict[int, Fraction]] = {}
        # tail column -> pivots of stored rows whose tail touches it
        self._occurrences: dict[int, set[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def reduce(self, row: dict[int, Fraction]) -> dict[int, Fraction]:
        """Fully reduce ``row`` against the stored pivots (row unchanged)."""
        work = dict(row)
        # stored tails contain no pivot columns, so one pass suffices
        for c in [c for c in work if c in self.pivot_rows]:
            f = work.pop(c, None)
            if f is None or f == 0:
                continue
            for j, x in self.pivot_rows[c].items():
                if j == c:
                    continue
                new = work.get(j, Fraction(0)) - f * x
                if new:
                    work[j] = new
                else:
                    work.pop(j, None)
        return work

    def add_row(self, row: dict[int, Fraction]) -> bool:
        """Insert a row; returns True if it enlarged the span."""
        residual = self.reduce(row)
        if not residual:
            return False
        p = min(residual)
        inv = 1 / residual[p]
        new_row = {j: x * inv for j, x in residual.items()}
        # clear column p from existing tails to stay fully reduced
        for q in list(self._occurrences.get(p, ())):
            stored = self.pivot_rows[q]
            f = stored.pop(p)
            self._occurrences[p].discard(q)
            for j, x in new_row.items():
                if j == p:
                    continue
                new = stored.get(j, Fraction(0)) - f * x
                if new:
                    if j not in stored:
                        self._occurrences.setdefault(j, set()).add(q)
                    stored[j] = new
                else:
                    stored.pop(j, None)
                    self._occurrences.get(j, set()).discard(q)
        self._occurrences.pop(p, None)
        self.pivot_rows[p] = new_row
        for j in new_row:
            if j != p:
                self._occurrences.setdefault(j, set()).add(p)
        return True

    def contains(self, row: dict[int, Fraction]) -> bool:
        return not self.reduce(row)


class _RatioUnionFind:
    """Union-find over columns with multipliers, for rank of 2-term rows.

    Tracks, per component, relations e_c ~ mult_c * e_root modulo the span
    built so far, plus a "pinned" flag meaning e_root itself lies in the span.
    """

    def __init__(self) -> None:
        self.parent: dict[int, int] = {}
        self.mult: dict[int, Fraction] = {}
        self.size: dict[int, int] = {}
        self.pinned: set[int] = set()

    def find(self, c: int) -> tuple[int, Fraction]:
        """Root of c's component and lam with e_c ~ lam * e_root."""
        if c not in self.parent:
            self.parent[c] = c
            self.mult[c] = Fraction(1)
            self.size[c] = 1
            return c, Fraction(1)
        path = []
        while self.parent[c] != c:
            path.append(c)
            c = self.parent[c]
        factor = Fraction(1)
        for node in reversed(path):
            factor *= self.mult[node]
            self.parent[node] = c
            self.mult[node] = factor
        return c, self.mult[path[0]] if path else Fraction(1)

    def union(self, ra: int, rb: int, mu: Fraction) -> None:
        """Merge roots, recording e_ra ~ mu * e_rb."""
        if self.size[ra] > self.size[rb]:
            ra, rb, mu = rb, ra, 1 / mu
        self.parent[ra] = rb
        self.mult[ra] = mu
        self.size[rb] += self.size[ra]


def two_term_rank(rows: Iterable[dict[int, Fraction]]) -> int:
    """Rank of a span of rows each having at most two nonzero entries."""
    uf = _RatioUnionFind()
    rank = 0
    for row in rows:
        items = [(c, x) for c, x in row.items() if x]
        if len(items) > 2:
            raise ValueError("row has more than two nonzero entries")
        if not items:
            continue
        if len(items) == 1:
            root, _ = uf.find(items[0][0])
            if root not in uf.pinned:
                uf.pinned.add(root)
                rank += 1
            continue
        (a, ca), (b, cb) = items
        ra, la = uf.find(a)
        rb, lb = uf.find(b)
        if ra == rb:
            # row is equivalent to (ca*la + cb*lb) * e_root mod the span
            if ra not in uf.pinned and ca * la + cb * lb != 0:
                uf.pinned.add(ra)
                rank += 1
            continue
        pa, pb = ra in uf.pinned, rb in uf.pinned
        if pa and pb:
            continue
        rank += 1
        if pa or pb:
            uf.pinned.add(rb if pa else ra)
        else:
            uf.union(ra, rb, -(cb * lb) / (ca * la))
    return rank


class ProjPoint:
    """Point of projective space with canonical scale (first nonzero = 1)."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable[RationalLike]):
        raw = [_frac(x) for x in coords]
        lead = next((x for x in raw if x != 0), None)
        if lead is None:
            raise ValueError("zero vector is not a projective point")
        self.coords = tuple(x / lead for x in raw)

    @property
    def ambient_dim(self) -> int:
        return len(self.coords) - 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ProjPoint) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return "(" + " : ".join(str(x) for x in self.coords) + ")"

    def transform(self, m: Matrix) -> "ProjPoint":
        return ProjPoint(m.apply(self.coords))


class LinearSubspace:
    """Linear subspace of P^r presented by a basis of spanning points."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: Matrix):
        if basis.ncols != ambient_dim + 1:
            raise ValueError("basis width must be ambient_dim + 1")
        if basis.rank() != basis.nrows:
            raise ValueError("basis rows are dependent")
        self.ambient_dim = ambient_dim
        self.basis = basis

    @classmethod
    def span_of(cls, points: Sequence[ProjPoint]) -> "LinearSubspace":
        return cls(points[0].ambient_dim, Matrix([p.coords for p in points]))

    @property
    def dim(self) -> int:
        """Projective dimension."""
        return self.basis.nrows - 1

    def contains(self, p: ProjPoint) -> bool:
        return self.basis.stack(Matrix([p.coords])).rank() == self.basis.nrows

    def intersection_point(self, other: "LinearSubspace") -> ProjPoint | None:
        """The unique intersection point, or None if empty / positive-dimensional."""
        stacked = self.basis.stack(other.basis).transpose()
        ker = kernel_basis(stacked)
        if ker.nrows != 1:
            return None
        row = ker.rows[0]
        na = self.basis.nrows
        vec = [sum(row[i] * self.basis[i, j] for i in range(na))
               for j in range(self.ambient_dim + 1)]
        return ProjPoint(vec)


def frame_transform(points: Sequence[ProjPoint]) -> Matrix:
    """Invertible T sending r+2 points to the standard frame e_1,...,e_{r+1},(1:...:1).

    T maps the first r+1 points to the coordinate points (up to scale) and the
    last point to the all-ones point.
    """
    if not points:
        raise DegeneratePosition("no points")
    r = points[0].ambient_dim
    if len(points) != r + 2:
        raise DegeneratePosition(f"need {r + 2} points in P^{r}, got {len(points)}")
    if any(p.ambient_dim != r for p in points):
        raise DegeneratePosition("points live in different projective spaces")
    a = Matrix([p.coords for p in points[: r + 1]]).transpose()
    try:
        a_inv = a.inverse()
    except ValueError:
        raise DegeneratePosition("first r+1 points are linearly dependent") from None
    c = a_inv.apply(points[r + 1].coords)
    if any(x == 0 for x in c):
        raise DegeneratePosition("last point lies in a coordinate hyperplane of the frame")
    scale = Matrix([[1 / c[i] if i == j else 0 for j in range(r + 1)] for i in range(r + 1)])
    return scale * a_inv
