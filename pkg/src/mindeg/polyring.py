"""Multivariate polynomials over Q: grevlex order, division, Buchberger
completion, initial ideals, Hilbert functions, and degreewise linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .exact import Matrix, SparseEchelon, kernel_basis, two_term_rank

Monomial = tuple[int, ...]


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_degree(a: Monomial) -> int:
    return sum(a)


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, degree: int) -> tuple[Monomial, ...]:
    """All exponent vectors of the given total degree (cached)."""
    if nvars == 0:
        return ((),) if degree == 0 else ()
    if nvars == 1:
        return ((degree,),)
    out = []
    for first in range(degree, -1, -1):
        for rest in monomials_of_degree(nvars - 1, degree - first):
            out.append((first,) + rest)
    return tuple(out)


class GrevlexOrder:
    """Graded reverse lexicographic order.

    ``precedence`` lists variable indices from smallest to largest; the
    default makes x_0 < x_1 < ... < x_{n-1}.  Between equal-degree monomials,
    the one with the smaller exponent on the smallest differing variable wins.
    """

    def __init__(self, nvars: int, precedence: Sequence[int] | None = None):
        self.nvars = nvars
        self.precedence = tuple(precedence) if precedence is not None else tuple(range(nvars))
        if sorted(self.precedence) != list(range(nvars)):
            raise ValueError("precedence must be a permutation of the variable indices")

    def key(self, m: Monomial):
        """Sort key: larger key = larger monomial."""
        return (sum(m), tuple(-m[i] for i in self.precedence))

    def greater(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) > self.key(b)

    def sorted_monomials(self, monos: Iterable[Monomial], reverse: bool = True) -> list[Monomial]:
        return sorted(monos, key=self.key, reverse=reverse)


class Polynomial:
    """Sparse polynomial: map from exponent tuple to nonzero coefficient."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[Monomial, Fraction] | None = None):
        self.nvars = nvars
        self.terms: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                if len(mono) != nvars:
                    raise ValueError("monomial length differs from variable count")
                c = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
                if c:
                    self.terms[mono] = c

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        mono = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {mono: Fraction(1)})

    @classmethod
    def constant(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((monomial_degree(m) for m in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        degrees = {monomial_degree(m) for m in self.terms}
        return len(degrees) <= 1

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            new = out.get(mono, Fraction(0)) + coeff
            if new:
                out[mono] = new
            else:
                out.pop(mono, None)
        return Polynomial(self.nvars, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = monomial_mul(m1, m2)
                new = out.get(mono, Fraction(0)) + c1 * c2
                if new:
                    out[mono] = new
                else:
                    out.pop(mono, None)
        return Polynomial(self.nvars, out)

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self.nvars, {m: c * x for m, x in self.terms.items()})

    def term_mul(self, mono: Monomial, coeff: Fraction = Fraction(1)) -> "Polynomial":
        return Polynomial(
            self.nvars, {monomial_mul(m, mono): c * coeff for m, c in self.terms.items()}
        )

    def leading_monomial(self, order: GrevlexOrder) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    def leading_coeff(self, order: GrevlexOrder) -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: GrevlexOrder) -> "Polynomial":
        return self.scale(1 / self.leading_coeff(order))

    def substitute(self, values: Sequence) -> Fraction:
        """Evaluate at a point (exact)."""
        vals = [v if isinstance(v, Fraction) else Fraction(v) for v in values]
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            prod = coeff
            for i, e in enumerate(mono):
                if e:
                    prod *= vals[i] ** e
            total += prod
        return total

    def apply_linear_change(self, m: Matrix) -> "Polynomial":
        """Substitute x_i -> sum_j m[i][j] x_j."""
        n = self.nvars
        if m.nrows != n or m.ncols != n:
            raise ValueError("change of coordinates must be square of matching size")
        unit = lambda j: tuple(1 if t == j else 0 for t in range(n))
        images = [
            Polynomial(n, {unit(j): m[i, j] for j in range(n) if m[i, j]})
            for i in range(n)
        ]
        out = Polynomial(n)
        for mono, coeff in self.terms.items():
            prod = Polynomial.constant(n, coeff)
            for i, e in enumerate(mono):
                for _ in range(e):
                    prod = prod * images[i]
            out = out + prod
        return out

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)})"


def format_polynomial(
    p: Polynomial,
    names: Sequence[str] | None = None,
    order: GrevlexOrder | None = None,
) -> str:
    """Human-readable form with terms in descending order."""
    if p.is_zero():
        return "0"
    order = order or GrevlexOrder(p.nvars)
    names = names or [f"x{i}" for i in range(p.nvars)]
    pieces = []
    for mono in order.sorted_monomials(p.terms):
        coeff = p.terms[mono]
        factors = [
            names[i] if e == 1 else f"{names[i]}^{e}"
            for i, e in enumerate(mono) if e
        ]
        body = "*".join(factors) if factors else "1"
        if coeff == 1 and factors:
            text = body
        elif coeff == -1 and factors:
            text = f"-{body}"
        else:
            text = f"{coeff}*{body}" if factors else str(coeff)
        pieces.append(text)
    out = pieces[0]
    for text in pieces[1:]:
        out += f" - {text[1:]}" if text.startswith("-") else f" + {text}"
    return out


@dataclass(frozen=True)
class Ideal:
    """Homogeneous ideal presented by a generator list."""

    generators: tuple[Polynomial, ...]
    nvars: int

    def __init__(self, generators: Iterable[Polynomial], nvars: int):
        gens = tuple(g for g in generators)
        if any(g.is_zero() for g in gens):
            raise ValueError("generators must be nonzero")
        if any(g.nvars != nvars for g in gens):
            raise ValueError("generator variable count mismatch")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "nvars", nvars)


def reduce(f: Polynomial, gens: Sequence[Polynomial], order: GrevlexOrder) -> Polynomial:
    """Remainder of multivariate division of f by gens.

    No monomial of the remainder is divisible by any leading monomial of the
    divisors; f minus the remainder lies in the ideal they generate.
    """
    divisors = [(g.leading_monomial(order), g.leading_coeff(order), g) for g in gens]
    work = dict(f.terms)
    remainder: dict[Monomial, Fraction] = {}
    while work:
        mono = max(work, key=order.key)
        coeff = work.pop(mono)
        for lead, lc, g in divisors:
            if monomial_divides(lead, mono):
                factor = coeff / lc
                quot = monomial_div(mono, lead)
                for m2, c2 in g.terms.items():
                    if m2 == lead:
                        continue
                    target = monomial_mul(m2, quot)
                    new = work.get(target, Fraction(0)) - factor * c2
                    if new:
                        work[target] = new
                    else:
                        work.pop(target, None)
                break
        else:
            remainder[mono] = coeff
    return Polynomial(f.nvars, remainder)


def s_polynomial(f: Polynomial, g: Polynomial, order: GrevlexOrder) -> Polynomial:
    lf, lg = f.leading_monomial(order), g.leading_monomial(order)
    lcm = monomial_lcm(lf, lg)
    left = f.term_mul(monomial_div(lcm, lf), 1 / f.leading_coeff(order))
    right = g.term_mul(monomial_div(lcm, lg), 1 / g.leading_coeff(order))
    return left - right


def buchberger(ideal: Ideal, order: GrevlexOrder | None = None) -> Ideal:
    """Reduced Groebner basis of the ideal.

    Buchberger's algorithm with the coprime-leading-term criterion, followed
    by minimalization and full auto-reduction, so the output is canonical:
    monic generators, no monomial of any generator divisible by another
    generator's leading monomial.
    """
    order = order or GrevlexOrder(ideal.nvars)
    basis = [g.monic(order) for g in ideal.generators]
    basis = _dedupe(basis)
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        pairs.sort(
            key=lambda ij: order.key(
                monomial_lcm(
                    basis[ij[0]].leading_monomial(order),
                    basis[ij[1]].leading_monomial(order),
                )
            ),
            reverse=True,
        )
        i, j = pairs.pop()
        li = basis[i].leading_monomial(order)
        lj = basis[j].leading_monomial(order)
        if monomial_mul(li, lj) == monomial_lcm(li, lj):
            continue  # coprime leading terms
        remainder = reduce(s_polynomial(basis[i], basis[j], order), basis, order)
        if not remainder.is_zero():
            basis.append(remainder.monic(order))
            pairs.extend((t, len(basis) - 1) for t in range(len(basis) - 1))
    return Ideal(_autoreduce(basis, order), ideal.nvars)


def _dedupe(polys: list[Polynomial]) -> list[Polynomial]:
    seen, out = set(), []
    for p in polys:
        key = frozenset(p.terms.items())
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


def _autoreduce(basis: list[Polynomial], order: GrevlexOrder) -> list[Polynomial]:
    # minimal generating leads
    basis = sorted(basis, key=lambda g: order.key(g.leading_monomial(order)))
    minimal: list[Polynomial] = []
    for g in basis:
        lead = g.leading_monomial(order)
        if not any(monomial_divides(h.leading_monomial(order), lead) for h in minimal):
            minimal.append(g)
    # tail reduction to a fixed point
    changed = True
    while changed:
        changed = False
        for i, g in enumerate(minimal):
            others = minimal[:i] + minimal[i + 1:]
            reduced = reduce(g, others, order).monic(order)
            if reduced != g:
                minimal[i] = reduced
                changed = True
    return sorted(minimal, key=lambda g: order.key(g.leading_monomial(order)))


def initial_ideal(ideal: Ideal, order: GrevlexOrder | None = None) -> Ideal:
    """Monomial ideal of leading monomials of the reduced Groebner basis."""
    order = order or GrevlexOrder(ideal.nvars)
    gb = buchberger(ideal, order)
    leads = sorted(
        {g.leading_monomial(order) for g in gb.generators}, key=order.key
    )
    gens = [Polynomial(ideal.nvars, {m: Fraction(1)}) for m in leads]
    return Ideal(gens, ideal.nvars)


def hilbert_function(ideal: Ideal, m: int, order: GrevlexOrder | None = None) -> int:
    """dim of the degree-m part of ring/ideal, by counting standard monomials."""
    if m < 0:
        raise ValueError("degree must be nonnegative")
    if not ideal.generators:
        return len(monomials_of_degree(ideal.nvars, m))
    order = order or GrevlexOrder(ideal.nvars)
    leads = [g.leading_monomial(order) for g in initial_ideal(ideal, order).generators]
    count = 0
    for mono in monomials_of_degree(ideal.nvars, m):
        if not any(monomial_divides(lead, mono) for lead in leads):
            count += 1
    return count


def _degree_columns(nvars: int, m: int, order: GrevlexOrder) -> dict[Monomial, int]:
    monos = order.sorted_monomials(monomials_of_degree(nvars, m))
    return {mono: i for i, mono in enumerate(monos)}


def _span_echelon(
    polys: Sequence[Polynomial], m: int, nvars: int, order: GrevlexOrder
) -> tuple[SparseEchelon, dict[Monomial, int]]:
    columns = _degree_columns(nvars, m, order)
    ech = SparseEchelon()
    for g in polys:
        if not g.is_homogeneous():
            raise ValueError("degreewise spans need homogeneous generators")
        e = g.total_degree()
        if e > m or g.is_zero():
            continue
        for mult in monomials_of_degree(nvars, m - e):
            row = {columns[monomial_mul(mono, mult)]: c for mono, c in g.terms.items()}
            ech.add_row(row)
    return ech, columns


def _echelon_matrix(ech: SparseEchelon, ncols: int) -> Matrix:
    rows = []
    for pivot in sorted(ech.pivot_rows):
        row = ech.pivot_rows[pivot]
        rows.append([row.get(j, Fraction(0)) for j in range(ncols)])
    return Matrix(rows) if rows else Matrix.zero(0, ncols)


def degree_span(
    polys: Sequence[Polynomial], m: int, nvars: int | None = None,
    order: GrevlexOrder | None = None,
) -> Matrix:
    """Basis (rows) of the degree-m part of the ideal generated by polys.

    Columns index the degree-m monomials in descending order.
    """
    if m < 0:
        raise ValueError("degree must be nonnegative")
    if nvars is None:
        if not polys:
            return Matrix.zero(0, 0)
        nvars = polys[0].nvars
    order = order or GrevlexOrder(nvars)
    ech, columns = _span_echelon(polys, m, nvars, order)
    return _echelon_matrix(ech, len(columns))


def degree_span_rank(
    polys: Sequence[Polynomial], m: int, nvars: int | None = None,
    order: GrevlexOrder | None = None,
) -> int:
    """Dimension of the degree-m part of the ideal generated by polys.

    Generators with at most two terms (binomial ideals) route to the
    union-find rank, which is near-linear; anything else falls back to
    sparse elimination.
    """
    if m < 0:
        raise ValueError("degree must be nonnegative")
    if nvars is None:
        if not polys:
            return 0
        nvars = polys[0].nvars
    order = order or GrevlexOrder(nvars)
    if polys and all(len(g.terms) <= 2 for g in polys):
        columns = _degree_columns(nvars, m, order)

        def rows():
            for g in polys:
                if not g.is_homogeneous():
                    raise ValueError("degreewise spans need homogeneous generators")
                e = g.total_degree()
                if e > m or g.is_zero():
                    continue
                for mult in monomials_of_degree(nvars, m - e):
                    yield {columns[monomial_mul(mono, mult)]: c for mono, c in g.terms.items()}

        return two_term_rank(rows())
    ech, _ = _span_echelon(polys, m, nvars, order)
    return ech.rank


def degree_intersection(
    a: Sequence[Polynomial], b: Sequence[Polynomial], m: int,
    nvars: int | None = None, order: GrevlexOrder | None = None,
) -> Matrix:
    """Basis of the intersection of two degree-m spans."""
    if nvars is None:
        pool = list(a) + list(b)
        if not pool:
            return Matrix.zero(0, 0)
        nvars = pool[0].nvars
    span_a = degree_span(a, m, nvars, order)
    span_b = degree_span(b, m, nvars, order)
    if span_a.nrows == 0 or span_b.nrows == 0:
        return Matrix.zero(0, span_a.ncols)
    stacked = span_a.stack(span_b).transpose()
    ker = kernel_basis(stacked)
    na = span_a.nrows
    rows = []
    for kv in ker.rows:
        rows.append([
            sum((kv[i] * span_a[i, j] for i in range(na)), Fraction(0))
            for j in range(span_a.ncols)
        ])
    return Matrix(rows) if rows else Matrix.zero(0, span_a.ncols)


def span_dimensions(
    a: Sequence[Polynomial], b: Sequence[Polynomial], m: int, nvars: int,
    order: GrevlexOrder | None = None,
) -> tuple[int, int, int]:
    """(dim a_m, dim b_m, dim (a+b)_m)."""
    order = order or GrevlexOrder(nvars)
    return (
        degree_span_rank(a, m, nvars, order),
        degree_span_rank(b, m, nvars, order),
        degree_span_rank(list(a) + list(b), m, nvars, order),
    )


def span_contains(
    sub: Sequence[Polynomial], sup: Sequence[Polynomial], m: int, nvars: int,
    order: GrevlexOrder | None = None,
) -> bool:
    """Is the degree-m span of ``sub`` contained in that of ``sup``?"""
    order = order or GrevlexOrder(nvars)
    ech_sup, _ = _span_echelon(sup, m, nvars, order)
    ech_sub, _ = _span_echelon(sub, m, nvars, order)
    return all(ech_sup.contains(row) for row in ech_sub.pivot_rows.values())
