"""Structural maps of the group of formal paths: the diagonal projection, the
two-letter reduction, the kernel/Abel semidirect splitting, the four families
of center generators, the projected group law on diagonal exponentials, and
piecewise-linear center elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import OrderMismatchError
from .lie import bch, expand_bracket, lie_body
from .operators import gamma_nested_bracket, psi
from .returnmap import ReturnSeries, phi_inverse
from .scalars import GaussianRational, as_scalar
from .series import (
    FreeSeries,
    Word,
    commutator,
    series_exp,
    series_inverse,
    weight,
)


@dataclass
class DiagonalLieVector:
    """Coefficients (g_1, ..., g_N) of a diagonal Lie element sum g_n X_n t^n."""

    order: int
    entries: list

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"order must be >= 1, got {self.order}")
        self.entries = [as_scalar(v) for v in self.entries]
        if len(self.entries) != self.order:
            raise ValueError(f"need {self.order} entries, got {len(self.entries)}")

    @classmethod
    def zero(cls, order: int) -> "DiagonalLieVector":
        return cls(order, [0] * order)

    def to_series(self) -> FreeSeries:
        return FreeSeries(self.order, {(n,): c for n, c in enumerate(self.entries, 1)})

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __eq__(self, other):
        if not isinstance(other, DiagonalLieVector):
            return NotImplemented
        return self.order == other.order and self.entries == other.entries

    def _check(self, other):
        if self.order != other.order:
            raise OrderMismatchError(f"orders differ: {self.order} != {other.order}")


def diagonal_projection(h) -> DiagonalLieVector:
    """Read off g_n from slice n of psi(h), which must be g_n * D L^(n-1).

    A slice with any other monomial means the input was not a Lie element.
    """
    body = lie_body(h)
    image = psi(body)
    entries = []
    for n in range(1, body.order + 1):
        slice_n = image.slices[n]
        for (i, j) in slice_n.terms:
            if (i, j) != (1, n - 1):
                raise ValueError(
                    f"slice {n} contains D^{i}L^{j}; input is not a Lie element"
                )
        entries.append(slice_n.coeff(1, n - 1))
    return DiagonalLieVector(body.order, entries)


# ---------------------------------------------------------------------------
# Two-letter reduction: X1, X2 fixed; higher letters fold into nested
# brackets of X1 against X2, extended multiplicatively over words.


@lru_cache(maxsize=None)
def _two_letter_image(i: int) -> FreeSeries:
    """Image of the letter X_i: weight-homogeneous, letters {1, 2} only."""
    if i <= 2:
        return FreeSeries.letter(i, max(i, 1))
    prev = _two_letter_image(i - 1).with_order(i)
    x1 = FreeSeries.letter(1, i)
    return commutator(prev, x1).scale(Fraction(1, i - 2))


def two_letter_generator(n: int, order=None) -> FreeSeries:
    """The diagonal preimages r_n inside the two-letter algebra:
    r_1 = X1, r_2 = X2, and r_n the normalized (n-2)-fold bracket of X1
    against X2; psi sends r_n to D L^(n-1).
    """
    if n < 1:
        raise ValueError(f"index must be >= 1, got {n}")
    image = _two_letter_image(n)
    return image.with_order(order) if order else image


@lru_cache(maxsize=None)
def _two_letter_word_image(word: Word) -> FreeSeries:
    if len(word) == 1:
        return _two_letter_image(word[0])
    order = weight(word)
    head = _two_letter_image(word[0]).with_order(order)
    tail = _two_letter_word_image(word[1:]).with_order(order)
    return head * tail


def two_letter_project(f: FreeSeries) -> FreeSeries:
    """Letterwise substitution extended multiplicatively; idempotent, its
    image uses the letters X1 and X2 only, and it commutes with psi.
    """
    out = FreeSeries.zero(f.order)
    for word, value in f.coeffs.items():
        if not word:
            out = out + FreeSeries.unit(f.order).scale(value)
        else:
            out = out + _two_letter_word_image(word).with_order(f.order).scale(value)
    return out


def lie_decompose(h):
    """Split a Lie element as (kernel part, two-letter part).

    The second component is the two-letter projection; the first is the
    difference, which lies in the projection kernel and in the Lie algebra
    of formal centers.
    """
    body = lie_body(h)
    abel_part = two_letter_project(body)
    n_part = body - abel_part
    return n_part, abel_part


def group_factorize(g: FreeSeries):
    """Write a group-like g as c * b with b = two_letter_project(g) and
    two_letter_project(c) = I; the semidirect splitting at the stored order.
    """
    from .lie import is_group_like

    if not is_group_like(g):
        raise ValueError("factorization needs a group-like series")
    b = two_letter_project(g)
    c = g * series_inverse(b)
    return c, b


# ---------------------------------------------------------------------------
# Center generators.


def center_generator(kind: str, arg, order=None) -> FreeSeries:
    """The four generator families of the center Lie algebra machinery.

    kind='v': word w, len >= 2 -> bracket(w) - gamma_w X_n         (psi-null)
    kind='s': index i >= 3     -> X_i - [X_{i-1}, X_1]/(i-2)       (psi-null)
    kind='r': index n >= 1     -> two-letter diagonal preimage r_n
    kind='l': two-letter word, weight >= 5 -> bracket(w) - gamma_w r_n
                                                                   (psi-null)
    """
    if kind == "v":
        w = tuple(arg)
        if len(w) < 2:
            raise ValueError("'v' generators need a word with at least 2 letters")
        n = weight(w)
        gamma = gamma_nested_bracket(w)
        out = expand_bracket(w) - FreeSeries.letter(n, n).scale(gamma)
    elif kind == "s":
        i = int(arg)
        if i < 3:
            raise ValueError("'s' generators need an index >= 3")
        bracket = commutator(FreeSeries.letter(i - 1, i), FreeSeries.letter(1, i))
        out = FreeSeries.letter(i, i) - bracket.scale(Fraction(1, i - 2))
    elif kind == "r":
        return two_letter_generator(int(arg), order)
    elif kind == "l":
        w = tuple(arg)
        if len(w) < 2 or any(i not in (1, 2) for i in w):
            raise ValueError("'l' generators need a word over the letters {1, 2}")
        n = weight(w)
        if n < 5:
            raise ValueError(f"'l' generators need weight >= 5, got {n}")
        gamma = gamma_nested_bracket(w)
        out = expand_bracket(w) - two_letter_generator(n).scale(gamma)
    else:
        raise ValueError(f"unknown generator kind {kind!r}")
    return out.with_order(order) if order else out


def lie_center_test(h) -> bool:
    """True when psi annihilates every slice: membership in the Lie algebra
    of formal centers at the stored order."""
    return psi(lie_body(h)).is_zero()


# ---------------------------------------------------------------------------
# Projected group law and piecewise-linear centers.


def diagonal_product(a: DiagonalLieVector, b: DiagonalLieVector) -> DiagonalLieVector:
    """The induced law on diagonal coefficients: the diagonal projection of
    log(exp(a) exp(b)).  The return map of its exponential equals the
    composition of the two return maps.
    """
    a._check(b)
    return diagonal_projection(bch(a.to_series(), b.to_series()))


def pl_center_element(a: DiagonalLieVector, b: DiagonalLieVector) -> FreeSeries:
    """exp(a) exp(b) exp(-diagonal_product(a, b)): group-like, psi-trivial,
    and with identity return map; generates the piecewise-linear centers.
    """
    a._check(b)
    correction = diagonal_product(a, b)
    return (
        series_exp(a.to_series())
        * series_exp(b.to_series())
        * series_exp(correction.to_series().scale(-1))
    )


# ---------------------------------------------------------------------------
# Sections of the return map.


def section_diagonal(f: ReturnSeries) -> FreeSeries:
    """Group-like preimage exp(sum s_n X_n t^n) with return map f."""
    s = phi_inverse(f, 1)
    return series_exp(DiagonalLieVector(f.order, s).to_series())


def section_two_letter(f: ReturnSeries) -> FreeSeries:
    """Group-like preimage supported on the letters {1, 2} with return map f."""
    s = phi_inverse(f, 1)
    body = FreeSeries.zero(f.order)
    for n, value in enumerate(s, 1):
        if value:
            body = body + two_letter_generator(n, f.order).scale(value)
    return series_exp(body)


# ---------------------------------------------------------------------------
# Exact rank computation (fraction-free elimination over Gaussian integers)
# for the generator-count identities.


def _gauss_int(q: GaussianRational, scale: int):
    re = q.re * scale
    im = q.im * scale
    return (int(re), int(im))


def _gi_mul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gi_sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _gi_exact_div(a, d):
    norm = d[0] * d[0] + d[1] * d[1]
    re_num = a[0] * d[0] + a[1] * d[1]
    im_num = a[1] * d[0] - a[0] * d[1]
    if re_num % norm or im_num % norm:
        raise ArithmeticError("non-exact division in fraction-free elimination")
    return (re_num // norm, im_num // norm)


def series_rank(vectors: list) -> int:
    """Rank of the span of the given FreeSeries over the scalar field,
    by Bareiss fraction-free elimination after clearing denominators."""
    words = sorted({w for v in vectors for w in v.coeffs})
    if not words or not vectors:
        return 0
    matrix = []
    for v in vectors:
        denom = 1
        for w in words:
            c = v.coeff(w)
            denom = denom * c.re.denominator // _gcd(denom, c.re.denominator)
            denom = denom * c.im.denominator // _gcd(denom, c.im.denominator)
        matrix.append([_gauss_int(v.coeff(w), denom) for w in words])
    rows, cols = len(matrix), len(words)
    rank = 0
    prev = (1, 0)
    for col in range(cols):
        pivot_row = None
        for r in range(rank, rows):
            if matrix[r][col] != (0, 0):
                pivot_row = r
                break
        if pivot_row is None:
            continue
        matrix[rank], matrix[pivot_row] = matrix[pivot_row], matrix[rank]
        pivot = matrix[rank][col]
        for r in range(rank + 1, rows):
            lead = matrix[r][col]
            for c in range(col, cols):
                value = _gi_sub(
                    _gi_mul(pivot, matrix[r][c]), _gi_mul(lead, matrix[rank][c])
                )
                matrix[r][c] = _gi_exact_div(value, prev)
        prev = pivot
        rank += 1
        if rank == rows:
            break
    return rank


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a if a else 1
