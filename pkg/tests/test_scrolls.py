from fractions import Fraction
from math import comb

import pytest

from mindeg.polyring import (
    GrevlexOrder,
    Ideal,
    degree_span_rank,
    format_polynomial,
    hilbert_function,
    monomials_of_degree,
    reduce,
    s_polynomial,
)
from mindeg.scrolls import (
    DimensionTooSmall,
    InvalidBlock,
    ScrollType,
    degeneration_family,
    hyperplane_section_type,
    minors_ideal,
    scroll_hilbert_poly,
    scroll_matrix,
    scroll_types,
    verify_degeneration,
)


def test_scroll_type_parse_and_derived():
    s = ScrollType.parse("2,1,1")
    assert s.degree == 4 and s.dim == 3 and s.ambient_dim == 6 and s.nvars == 7
    assert s.degree + s.dim == s.ambient_dim + 1  # minimal degree


def test_scroll_type_rejects_increasing():
    with pytest.raises(ValueError):
        ScrollType([1, 2])


def test_s1_matrix_has_no_minors():
    s = ScrollType([1])
    m = scroll_matrix(s)
    assert m.ncols == 1
    assert minors_ideal(m).generators == ()


def test_s11_single_minor():
    ideal = minors_ideal(scroll_matrix(ScrollType([1, 1])))
    assert len(ideal.generators) == 1
    g = ideal.generators[0]
    # x_{1,0} x_{2,1} - x_{1,1} x_{2,0}
    assert g.terms == {
        (1, 0, 0, 1): Fraction(1),
        (0, 1, 1, 0): Fraction(-1),
    }


def test_s21_three_minors_in_five_variables():
    ideal = minors_ideal(scroll_matrix(ScrollType([2, 1])))
    assert len(ideal.generators) == 3
    assert ideal.nvars == 5


def test_s3_hankel_minors():
    ideal = minors_ideal(scroll_matrix(ScrollType([3])))
    assert len(ideal.generators) == 3
    names = ScrollType([3]).var_names()
    rendered = {format_polynomial(g, names) for g in ideal.generators}
    assert "-x_{1,1}^2 + x_{1,0}*x_{1,2}" in rendered


def test_hilbert_poly_curve_case():
    for d in range(1, 7):
        for m in range(6):
            assert scroll_hilbert_poly(d, 1, m) == d * m + 1


def test_hilbert_poly_spot_values():
    assert scroll_hilbert_poly(3, 2, 1) == 5
    assert scroll_hilbert_poly(2, 1, 2) == 5


def test_hilbert_poly_pascal_recursion():
    for d in range(1, 7):
        for k in range(2, 5):
            for m in range(1, 7):
                assert (
                    scroll_hilbert_poly(d, k, m) - scroll_hilbert_poly(d, k, m - 1)
                    == scroll_hilbert_poly(d, k - 1, m)
                )


def test_minors_match_formula_small_range():
    for s in scroll_types(4, 3):
        ideal = minors_ideal(scroll_matrix(s))
        for m in range(5):
            assert hilbert_function(ideal, m) == scroll_hilbert_poly(s.degree, s.dim, m)


def test_minors_are_groebner_basis_small_range():
    for s in scroll_types(4, 3):
        gens = list(minors_ideal(scroll_matrix(s)).generators)
        order = GrevlexOrder(s.nvars)
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                rem = reduce(s_polynomial(gens[i], gens[j], order), gens, order)
                assert rem.is_zero(), (str(s), i, j)


def test_degeneration_t1_recovers_minors():
    s = ScrollType([2, 1])
    fam = degeneration_family(s, 1)
    assert set(fam.specialize(1).generators) == set(minors_ideal(scroll_matrix(s)).generators)


def test_degeneration_t0_parts_span_fiber():
    s = ScrollType([2, 1])
    fam = degeneration_family(s, 1)
    fiber = fam.specialize(0)
    parts = fam.special_fiber_parts()
    union = parts["I1"] + parts["I2"]
    for m in range(1, 5):
        assert degree_span_rank(list(fiber.generators), m, s.nvars) == degree_span_rank(
            union, m, s.nvars
        )


def test_degeneration_requires_strict_drop():
    with pytest.raises(InvalidBlock):
        degeneration_family(ScrollType([1, 1]), 1)
    # vacuous condition at the last block
    degeneration_family(ScrollType([1, 1]), 2)


def test_s3_degeneration_breaks_into_conic_and_line():
    fam = degeneration_family(ScrollType([3]), 1)
    parts = fam.special_fiber_parts()
    # X: plane conic in the hyperplane, so one quadric and one linear form
    assert len(parts["IX"]) == 2
    # Y: the line spanned by the last two coordinates
    assert len(parts["IY"]) == 2
    report = verify_degeneration(fam, 4)
    assert report.passed


def test_verify_degeneration_s21_all_blocks():
    for block in (1, 2):
        report = verify_degeneration(degeneration_family(ScrollType([2, 1]), block), 4)
        assert report.passed


def test_inclusion_exclusion_identity_spot():
    # f_{3,2}(3) + C(5,2) - C(4,1) = f_{4,2}(3)
    assert scroll_hilbert_poly(3, 2, 3) + comb(5, 2) - comb(4, 1) == scroll_hilbert_poly(4, 2, 3)


def test_verify_degeneration_full_admissible_range():
    for s in scroll_types(5, 3):
        for block in range(1, s.dim + 1):
            try:
                fam = degeneration_family(s, block)
            except InvalidBlock:
                continue
            assert verify_degeneration(fam, 4).passed, (str(s), block)


def test_hyperplane_section_types():
    assert hyperplane_section_type(ScrollType([1, 1])) == ScrollType([2])
    assert hyperplane_section_type(ScrollType([2, 1])) == ScrollType([3])
    assert hyperplane_section_type(ScrollType([1, 1, 1])) == ScrollType([2, 1])


def test_hyperplane_section_requires_surface():
    with pytest.raises(DimensionTooSmall):
        hyperplane_section_type(ScrollType([3]))


def test_hyperplane_section_invariants():
    for s in scroll_types(6, 4):
        if s.dim == 1:
            continue
        section = hyperplane_section_type(s)
        assert section.degree == s.degree
        assert section.dim == s.dim - 1
        # iterating down to a curve gives the rational normal curve type
        t = s
        while t.dim > 1:
            t = hyperplane_section_type(t)
        assert t == ScrollType([s.degree])
