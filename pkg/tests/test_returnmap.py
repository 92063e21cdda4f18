import random
from fractions import Fraction
from math import factorial

import pytest

from pathcenters import (
    FreeSeries,
    OrderMismatchError,
    PathSpec,
    ReturnSeries,
    Segment,
    dl_bracket,
    is_center,
    monodromy,
    ode_return_map,
    p_poly,
    phi_forward,
    phi_inverse,
    return_map,
    return_series_from_text,
    return_series_to_json,
    return_series_to_text,
    rs_compose,
    rs_invert,
    series_exp,
    star_concat,
)
from pathcenters.scalars import GaussianRational
from helpers import rand_path, rand_scalar

HALF = Fraction(1, 2)


def p2():
    return PathSpec(1, [Segment(HALF, {1: 1}), Segment(HALF, {2: 1})])


def c1():
    return PathSpec(1, [Segment(HALF, {1: 1}), Segment(HALF, {1: -1})])


def test_compose_examples():
    f = ReturnSeries(2, [1, 0])  # r + r^2
    assert rs_compose(f, f).d == [GaussianRational(2), GaussianRational(2)]
    f3 = ReturnSeries(3, [1, 0, 0])
    assert rs_compose(f3, f3).d == [
        GaussianRational(2),
        GaussianRational(2),
        GaussianRational(1),
    ]
    rng = random.Random(50)
    g = ReturnSeries(5, [rand_scalar(rng) for _ in range(5)])
    assert rs_compose(g, ReturnSeries.identity(5)) == g
    assert rs_compose(ReturnSeries.identity(5), g) == g


def test_compose_associative():
    rng = random.Random(51)
    f, g, h = (ReturnSeries(6, [rand_scalar(rng) for _ in range(6)]) for _ in range(3))
    assert rs_compose(rs_compose(f, g), h) == rs_compose(f, rs_compose(g, h))


def test_invert_examples():
    assert rs_invert(ReturnSeries.identity(4)) == ReturnSeries.identity(4)
    c = GaussianRational(Fraction(2, 3))
    inv2 = rs_invert(ReturnSeries(2, [c, 0]))
    assert inv2.d == [-c, 2 * c * c]
    inv3 = rs_invert(ReturnSeries(3, [c, 0, 0]))
    assert inv3.d == [-c, 2 * c * c, -5 * c * c * c]
    rng = random.Random(52)
    for _ in range(5):
        f = ReturnSeries(6, [rand_scalar(rng, complex_prob=0.4) for _ in range(6)])
        assert rs_compose(f, rs_invert(f)).is_identity()
        assert rs_compose(rs_invert(f), f).is_identity()


def test_order_mismatch():
    with pytest.raises(OrderMismatchError):
        rs_compose(ReturnSeries.identity(3), ReturnSeries.identity(4))


def test_p_poly_examples():
    assert p_poly((4,), 4) == 1
    assert p_poly((1, 1), 2) == 2
    for k in range(1, 7):
        assert p_poly((1,) * k, k) == factorial(k)
    with pytest.raises(ValueError):
        p_poly((), 1)


def test_return_map_constant_coefficient_closed_forms():
    c = GaussianRational(Fraction(2, 3), Fraction(1, 2))
    geo = PathSpec(1, [Segment(1, {1: c})])
    rm = return_map(monodromy(geo, 8))
    value = GaussianRational(1)
    for i in range(1, 9):
        value = value * c
        assert rm.coefficient(i) == value

    quad = PathSpec(1, [Segment(1, {2: c})])
    rm2 = return_map(monodromy(quad, 6))
    assert rm2.coefficient(1) == 0 and rm2.coefficient(3) == 0 and rm2.coefficient(5) == 0
    assert rm2.coefficient(2) == c
    assert rm2.coefficient(4) == c * c * Fraction(3, 2)


def test_return_map_of_unit_is_identity():
    assert return_map(monodromy(c1(), 8)).is_identity()


def test_return_map_rejects_non_group_like():
    with pytest.raises(ValueError):
        return_map(FreeSeries.unit(3) + FreeSeries.letter(1, 3))


def test_return_map_pairs_reversed_words():
    # Decisive truncation: on the two-step path the exact flow of
    # v' = a1 v^2 + a2 v^3 has d3 = 7/8; pairing each word with its own
    # falling-factorial polynomial (no reversal) would give 5/8 instead.
    rm = return_map(monodromy(p2(), 3))
    assert rm.d == [GaussianRational(HALF), GaussianRational(Fraction(3, 4)), GaussianRational(Fraction(7, 8))]
    sig = monodromy(p2(), 3)
    unreversed_d3 = GaussianRational(0)
    from pathcenters import enumerate_words

    for w in enumerate_words(3):
        c = sig.coeff(w)
        if c:
            unreversed_d3 = unreversed_d3 + p_poly(w, 3) * c
    assert unreversed_d3 == Fraction(5, 8)
    assert ode_return_map(p2(), 3).coefficient(3) == Fraction(7, 8)


def test_ode_oracle_closed_forms():
    c = GaussianRational(Fraction(-3, 5))
    geo = PathSpec(1, [Segment(1, {1: c})])
    oracle = ode_return_map(geo, 8)
    value = GaussianRational(1)
    for i in range(1, 9):
        value = value * c
        assert oracle.coefficient(i) == value
    quad = PathSpec(1, [Segment(1, {2: c})])
    oracle2 = ode_return_map(quad, 6)
    assert oracle2.coefficient(2) == c
    assert oracle2.coefficient(4) == c * c * Fraction(3, 2)
    assert ode_return_map(c1(), 8).is_identity()


def test_oracle_equals_signature_route():
    rng = random.Random(53)
    for _ in range(8):
        a = rand_path(rng)
        assert ode_return_map(a, 8) == return_map(monodromy(a, 8), check_group_like=False)


def test_return_map_is_homomorphism():
    rng = random.Random(54)
    a, b = rand_path(rng), rand_path(rng)
    pa = return_map(monodromy(a, 7), check_group_like=False)
    pb = return_map(monodromy(b, 7), check_group_like=False)
    pab = return_map(monodromy(star_concat(a, b), 7), check_group_like=False)
    assert pab == rs_compose(pa, pb)


def test_is_center_examples():
    report = is_center(c1(), 8)
    assert report.verdict and report.center_to_order == 8
    assert report.first_failing_degree is None

    report = is_center(PathSpec(1, [Segment(1, {1: 1})]), 2)
    assert not report.verdict and report.first_failing_degree == 1

    report = is_center(p2(), 2)
    assert not report.verdict
    # the degree-2 obstruction quoted for this path: I_2 + 2 I_{1,1} = 3/4
    rm = return_map(monodromy(p2(), 2))
    assert rm.coefficient(2) == Fraction(3, 4)


def test_is_center_criteria_agree_on_random_paths():
    # is_center asserts internally that the evaluation route (d_i = 0) and
    # the polynomial-identity route reach the same first failing degree.
    rng = random.Random(58)
    from helpers import rand_closed_path

    for _ in range(6):
        is_center(rand_path(rng), 6)
    for _ in range(6):
        report = is_center(rand_closed_path(rng), 6)
        # closed paths kill d_1, so any failure starts at degree >= 2
        assert report.verdict or report.first_failing_degree >= 2


def test_phi_forward_special_cases():
    c = GaussianRational(Fraction(5, 7))
    geometric = phi_forward([c] + [0] * 5, 1)
    value = GaussianRational(1)
    for i in range(1, 7):
        value = value * c
        assert geometric.coefficient(i) == value

    quad = phi_forward([0, c, 0, 0], 1)
    assert quad.coefficient(2) == c
    assert quad.coefficient(4) == c * c * Fraction(3, 2)
    assert phi_forward([0] * 5, 1).is_identity()


def test_phi_forward_scaling_in_T():
    # T enters once per letter: phi(s, T) == phi(T*s, 1).
    rng = random.Random(57)
    s = [rand_scalar(rng) for _ in range(5)]
    T = Fraction(3, 2)
    scaled = [v * T for v in s]
    assert phi_forward(s, T) == phi_forward(scaled, 1)


def test_phi_round_trips():
    rng = random.Random(55)
    for T in (1, Fraction(2, 3)):
        for _ in range(4):
            s = [rand_scalar(rng, complex_prob=0.4) for _ in range(7)]
            assert phi_inverse(phi_forward(s, T), T) == s
            f = ReturnSeries(7, [rand_scalar(rng) for _ in range(7)])
            assert phi_forward(phi_inverse(f, T), T) == f
    with pytest.raises(ValueError):
        phi_inverse(ReturnSeries.identity(3), 0)


def test_phi_inverse_examples():
    assert phi_inverse(ReturnSeries(2, [1, 0]), 1)[0] == 1
    s = phi_inverse(ReturnSeries(3, [0, 1, 0]), 1)
    assert s[0] == 0 and s[1] == 1
    assert phi_inverse(ReturnSeries.identity(4), 1) == [GaussianRational(0)] * 4


def test_phi_matches_return_map_of_diagonal_exponential():
    rng = random.Random(56)
    for _ in range(3):
        s = [rand_scalar(rng) for _ in range(6)]
        body = FreeSeries(6, {(n,): v for n, v in enumerate(s, 1)})
        assert phi_forward(s, 1) == return_map(series_exp(body), check_group_like=False)


def test_witt_algebra_correspondence():
    # Under D L^(i-1) -> -e_i the bracket table becomes [e_i, e_j] = (j-i) e_{i+j}.
    for i in range(1, 9):
        for j in range(1, 9):
            bracket = dl_bracket(i - 1, j - 1)  # (i-j) D L^{i+j-1}
            mapped = {}  # expansion of [-e_i, -e_j] in the e-basis
            for (p, q), coeff in bracket.terms.items():
                assert (p, q) == (1, i + j - 1)
                mapped[i + j] = -coeff  # image of coeff * D L^{i+j-1}
            expected = {i + j: GaussianRational(j - i)} if i != j else {}
            assert mapped == expected


def test_text_and_json_forms():
    f = ReturnSeries(3, [GaussianRational(HALF), GaussianRational(0, 1), GaussianRational(0)])
    text = return_series_to_text(f)
    assert text == "r + 1/2*r^2 + (1*i)*r^3"
    assert return_series_from_text(text, 3) == f
    assert return_series_to_text(ReturnSeries.identity(2)) == "r"
    assert return_series_from_text("r", 2) == ReturnSeries.identity(2)
    assert return_series_to_json(f) == ["1/2", "1*i", "0"]
