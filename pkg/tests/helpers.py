"""Shared generators for randomized exact-arithmetic tests."""

from fractions import Fraction

from pathcenters import FreeSeries, PathSpec, Segment, enumerate_words, expand_bracket, series_exp
from pathcenters.scalars import GaussianRational


def rand_scalar(rng, complex_prob=0.2, span=2):
    re = Fraction(rng.randint(-span, span), rng.randint(1, 2))
    im = Fraction(rng.randint(-1, 1)) if rng.random() < complex_prob else Fraction(0)
    if not re and not im:
        re = Fraction(1)
    return GaussianRational(re, im)


def rand_path(rng, max_index=3, min_segs=2, max_segs=4, complex_prob=0.2):
    count = rng.randint(min_segs, max_segs)
    lengths = [Fraction(rng.randint(1, 3)) for _ in range(count)]
    total = sum(lengths)
    segments = []
    for length in lengths:
        coeffs = {}
        for index in range(1, max_index + 1):
            if rng.random() < 0.6:
                coeffs[index] = rand_scalar(rng, complex_prob)
        if not coeffs:
            coeffs[1] = GaussianRational(1)
        segments.append(Segment(length / total, coeffs))
    return PathSpec(1, segments)


def rand_closed_path(rng, max_index=3, complex_prob=0.2):
    """Two-segment path whose first integrals all cancel at time 1; closed
    but generally not a universal center."""
    l1 = Fraction(rng.randint(1, 3), 4)
    l2 = 1 - l1
    coeffs1 = {}
    for index in range(1, max_index + 1):
        if rng.random() < 0.7:
            coeffs1[index] = rand_scalar(rng, complex_prob)
    if not coeffs1:
        coeffs1[1] = GaussianRational(1)
    coeffs2 = {i: -(c * l1) / l2 for i, c in coeffs1.items()}
    return PathSpec(1, [Segment(l1, coeffs1), Segment(l2, coeffs2)])


def rand_series(rng, order, density=0.3, letters=None, complex_prob=0.2):
    coeffs = {}
    for n in range(order + 1):
        for w in enumerate_words(n):
            if letters and any(i not in letters for i in w):
                continue
            if rng.random() < density:
                coeffs[w] = rand_scalar(rng, complex_prob)
    return FreeSeries(order, coeffs)


def rand_lie(rng, order, density=0.3, complex_prob=0.2):
    """Random Lie element: combination of right-nested bracket expansions."""
    out = FreeSeries.zero(order)
    for n in range(1, order + 1):
        for w in enumerate_words(n):
            if rng.random() < density:
                out = out + expand_bracket(w).with_order(order).scale(
                    rand_scalar(rng, complex_prob)
                )
    return out


def rand_group_like(rng, order, density=0.25, complex_prob=0.2):
    return series_exp(rand_lie(rng, order, density, complex_prob))
