"""Scroll matrices and their minor ideals, the one-parameter degeneration to
a plane union a smaller scroll, hyperplane-section types, and the closed-form
Hilbert polynomial with its verification machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence

from .polyring import (
    GrevlexOrder,
    Ideal,
    Polynomial,
    degree_span_rank,
    hilbert_function,
    span_contains,
    span_dimensions,
)


class InvalidBlock(ValueError):
    """Degeneration requested at a block without a strict width drop."""


class DimensionTooSmall(ValueError):
    """Operation needs a scroll of dimension at least two."""


@dataclass(frozen=True)
class ScrollType:
    """Nonincreasing positive block widths (a_1, ..., a_k)."""

    blocks: tuple[int, ...]

    def __init__(self, blocks: Sequence[int]):
        blocks = tuple(int(a) for a in blocks)
        if not blocks or any(a < 1 for a in blocks):
            raise ValueError("block widths must be positive")
        if any(blocks[i] < blocks[i + 1] for i in range(len(blocks) - 1)):
            raise ValueError("block widths must be nonincreasing")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def parse(cls, text: str) -> "ScrollType":
        return cls([int(part) for part in text.replace(" ", "").split(",") if part])

    @property
    def degree(self) -> int:
        return sum(self.blocks)

    @property
    def dim(self) -> int:
        return len(self.blocks)

    @property
    def ambient_dim(self) -> int:
        return self.degree + self.dim - 1

    @property
    def nvars(self) -> int:
        return self.degree + self.dim

    def var_index(self, block: int, offset: int) -> int:
        """Flat index of x_{block,offset}; block is 1-based, 0 <= offset <= a_block."""
        if not 1 <= block <= self.dim or not 0 <= offset <= self.blocks[block - 1]:
            raise IndexError("no such scroll variable")
        return sum(a + 1 for a in self.blocks[: block - 1]) + offset

    def var_names(self) -> list[str]:
        return [
            f"x_{{{i},{j}}}"
            for i, a in enumerate(self.blocks, start=1)
            for j in range(a + 1)
        ]

    def __str__(self) -> str:
        return "S(" + ",".join(str(a) for a in self.blocks) + ")"


def scroll_types(max_degree: int, max_dim: int) -> Iterator[ScrollType]:
    """All scroll types with degree <= max_degree and dimension <= max_dim."""

    def parts(total: int, count: int, cap: int) -> Iterator[tuple[int, ...]]:
        if count == 0:
            if total == 0:
                yield ()
            return
        for first in range(min(total - count + 1, cap), 0, -1):
            for rest in parts(total - first, count - 1, first):
                yield (first,) + rest

    for k in range(1, max_dim + 1):
        for d in range(k, max_degree + 1):
            for blocks in parts(d, k, d):
                yield ScrollType(blocks)


@dataclass(frozen=True)
class ScrollMatrix:
    """Two-row matrix of coordinate linear forms in block layout.

    Column c of block i has top entry x_{i,j} and bottom entry x_{i,j+1};
    ``scaled_column`` marks the single column whose top entry carries the
    degeneration parameter.
    """

    scroll_type: ScrollType
    scaled_column: int | None = None

    @property
    def columns(self) -> list[tuple[int, int]]:
        """(top, bottom) variable indices, flattened across blocks."""
        out = []
        for i, a in enumerate(self.scroll_type.blocks, start=1):
            for j in range(a):
                out.append(
                    (self.scroll_type.var_index(i, j), self.scroll_type.var_index(i, j + 1))
                )
        return out

    @property
    def ncols(self) -> int:
        return self.scroll_type.degree

    def entry_names(self, parameter: str = "t") -> tuple[list[str], list[str]]:
        names = self.scroll_type.var_names()
        top, bottom = [], []
        for c, (t_idx, b_idx) in enumerate(self.columns):
            label = names[t_idx]
            if c == self.scaled_column:
                label = f"{parameter}*{label}"
            top.append(label)
            bottom.append(names[b_idx])
        return top, bottom

    def minors(self, t: Fraction | int = 1) -> list[Polynomial]:
        """All 2x2 minors, with the parameter specialized to ``t``."""
        n = self.scroll_type.nvars
        t = Fraction(t)
        cols = self.columns
        scales = [t if c == self.scaled_column else Fraction(1) for c in range(len(cols))]
        out = []
        for c1 in range(len(cols)):
            for c2 in range(c1 + 1, len(cols)):
                top1, bot1 = cols[c1]
                top2, bot2 = cols[c2]
                terms: dict[tuple[int, ...], Fraction] = {}
                if scales[c1]:
                    terms[_pair_monomial(n, top1, bot2)] = scales[c1]
                if scales[c2]:
                    mono = _pair_monomial(n, top2, bot1)
                    terms[mono] = terms.get(mono, Fraction(0)) - scales[c2]
                poly = Polynomial(n, terms)
                if not poly.is_zero():
                    out.append(poly)
        return out


def _pair_monomial(nvars: int, i: int, j: int) -> tuple[int, ...]:
    mono = [0] * nvars
    mono[i] += 1
    mono[j] += 1
    return tuple(mono)


def scroll_matrix(s: ScrollType) -> ScrollMatrix:
    return ScrollMatrix(s)


def minors_ideal(m: ScrollMatrix) -> Ideal:
    return Ideal(m.minors(), m.scroll_type.nvars)


def scroll_hilbert_poly(d: int, k: int, m: int) -> int:
    """d*C(m+k-1, k) + C(m+k-1, k-1), the Hilbert function of a scroll.

    d = 0 is allowed and gives the Hilbert function of a (k-1)-plane, which
    is what the degeneration bookkeeping needs for width-one blocks.
    """
    if d < 0 or k < 1 or m < 0:
        raise ValueError("need d >= 0, k >= 1, m >= 0")
    return d * comb(m + k - 1, k) + comb(m + k - 1, k - 1)


@dataclass(frozen=True)
class DegenerationFamily:
    """One-parameter family scaling the top of a block's last column by t.

    At t=1 the fiber is the scroll itself; at t=0 it breaks into a degree d-1
    scroll X inside the hyperplane x_{b,a_b} = 0 and a k-plane Y meeting X in
    a ruling plane.
    """

    scroll_type: ScrollType
    block: int

    def __post_init__(self):
        k = self.scroll_type.dim
        if not 1 <= self.block <= k:
            raise InvalidBlock(f"block must lie in 1..{k}")
        blocks = self.scroll_type.blocks
        if self.block < k and blocks[self.block - 1] <= blocks[self.block]:
            raise InvalidBlock(
                f"block {self.block} of {self.scroll_type} has no strict width drop"
            )

    @property
    def matrix(self) -> ScrollMatrix:
        col = sum(self.scroll_type.blocks[: self.block - 1]) + (
            self.scroll_type.blocks[self.block - 1] - 1
        )
        return ScrollMatrix(self.scroll_type, scaled_column=col)

    def specialize(self, t: Fraction | int) -> Ideal:
        return Ideal(self.matrix.minors(t), self.scroll_type.nvars)

    def special_fiber_parts(self) -> dict[str, list[Polynomial]]:
        """Generators of I1, I2, I_X, I_Y for the t=0 fiber.

        N is the scroll matrix with the scaled column removed; I1 is the
        hyperplane variable times the tops of N, I2 the minors of N,
        I_X = (x_{b,a_b}) + I2, and I_Y the ideal of the tops of N (so Y is
        the k-plane spanned by the remaining coordinates).
        """
        s = self.scroll_type
        n = s.nvars
        b = self.block
        hyper = s.var_index(b, s.blocks[b - 1])
        scaled = self.matrix.scaled_column
        cols = self.matrix.columns
        tops = [top for c, (top, _) in enumerate(cols) if c != scaled]
        kept = [cols[c] for c in range(len(cols)) if c != scaled]

        var = lambda i: Polynomial.variable(n, i)
        i1 = [Polynomial(n, {_pair_monomial(n, hyper, top): Fraction(1)}) for top in tops]
        i2 = []
        for c1 in range(len(kept)):
            for c2 in range(c1 + 1, len(kept)):
                top1, bot1 = kept[c1]
                top2, bot2 = kept[c2]
                i2.append(
                    Polynomial(
                        n,
                        {
                            _pair_monomial(n, top1, bot2): Fraction(1),
                            _pair_monomial(n, top2, bot1): Fraction(-1),
                        },
                    )
                )
        return {
            "I1": i1,
            "I2": i2,
            "IX": [var(hyper)] + i2,
            "IY": [var(top) for top in tops],
        }


def degeneration_family(s: ScrollType, block: int) -> DegenerationFamily:
    return DegenerationFamily(s, block)


@dataclass(frozen=True)
class DegenerationCheck:
    degree: int
    hilbert_ok: bool
    span_ok: bool
    identity_ok: bool

    @property
    def passed(self) -> bool:
        return self.hilbert_ok and self.span_ok and self.identity_ok


@dataclass(frozen=True)
class DegenerationReport:
    scroll_type: ScrollType
    block: int
    checks: tuple[DegenerationCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "scroll": str(self.scroll_type),
            "block": self.block,
            "passed": self.passed,
            "checks": [
                {
                    "degree": c.degree,
                    "hilbert": c.hilbert_ok,
                    "span_equality": c.span_ok,
                    "inclusion_exclusion": c.identity_ok,
                }
                for c in self.checks
            ],
        }


def verify_degeneration(family: DegenerationFamily, max_degree: int) -> DegenerationReport:
    """Degreewise verification that the t=0 fiber is the broken scroll.

    For each degree up to the bound this checks that (1) the t=0 ideal has
    the smooth scroll's Hilbert function, (2) the span of I1+I2 equals the
    intersection of the spans of I_X and I_Y (containment plus the dimension
    identity dim(A cap B) = dim A + dim B - dim(A+B)), and (3) the
    inclusion-exclusion identity of Hilbert functions holds numerically.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    s = family.scroll_type
    d, k, n = s.degree, s.dim, s.nvars
    order = GrevlexOrder(n)
    parts = family.special_fiber_parts()
    union = parts["I1"] + parts["I2"]
    fiber = family.specialize(0)
    checks = []
    for m in range(1, max_degree + 1):
        hilbert_ok = hilbert_function(fiber, m, order) == scroll_hilbert_poly(d, k, m)
        dim_union = degree_span_rank(union, m, n, order)
        dim_x, dim_y, dim_sum = span_dimensions(parts["IX"], parts["IY"], m, n, order)
        contained = span_contains(union, parts["IX"], m, n, order) and span_contains(
            union, parts["IY"], m, n, order
        )
        span_ok = contained and dim_union == dim_x + dim_y - dim_sum
        identity_ok = (
            scroll_hilbert_poly(d - 1, k, m) + comb(m + k, k) - comb(m + k - 1, k - 1)
            == scroll_hilbert_poly(d, k, m)
        )
        checks.append(DegenerationCheck(m, hilbert_ok, span_ok, identity_ok))
    return DegenerationReport(s, family.block, tuple(checks))


def hyperplane_section_type(s: ScrollType) -> ScrollType:
    """Section type: merge the first two blocks; degree kept, dimension drops."""
    if s.dim < 2:
        raise DimensionTooSmall("hyperplane section of a curve is a point scheme")
    merged = (s.blocks[0] + s.blocks[1],) + s.blocks[2:]
    return ScrollType(merged)
