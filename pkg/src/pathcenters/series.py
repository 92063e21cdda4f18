"""Truncated free associative algebra on noncommuting weighted letters X1, X2, ...

Letter Xi carries weight i; a word's weight is the sum of its letters.  A
FreeSeries keeps the homogeneous components of weight 0..order as a sparse
word -> scalar map (the weight doubles as the exponent of the formal series
variable, so it is never stored separately).  Coefficients are exact Gaussian
rationals throughout, so every algebraic identity can be checked by equality.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Tuple

from .errors import OrderMismatchError, ParseError
from .scalars import GaussianRational, as_scalar, format_scalar, parse_scalar

Word = Tuple[int, ...]

EMPTY_WORD: Word = ()


def weight(word: Word) -> int:
    return sum(word)


def enumerate_words(n: int) -> list[Word]:
    """All words of weight n (compositions of n), lexicographically.

    There are 2**(n-1) of them for n >= 1, and just the empty word for n = 0.
    """
    return list(_words_of_weight(n))


@lru_cache(maxsize=None)
def _words_of_weight(n: int) -> tuple:
    if n < 0:
        raise ValueError(f"weight must be nonnegative, got {n}")
    if n == 0:
        return (EMPTY_WORD,)
    out: list[Word] = []

    def extend(prefix, remaining):
        for first in range(1, remaining + 1):
            if first == remaining:
                out.append(prefix + (first,))
            else:
                extend(prefix + (first,), remaining - first)

    extend((), n)
    return tuple(out)


def word_sort_key(word: Word):
    return (weight(word), len(word), word)


class FreeSeries:
    """Element of the weight-truncated free algebra.

    ``coeffs`` maps words (tuples of positive ints) to nonzero scalars; all
    stored words have weight <= order.  Instances are treated as immutable.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=None):
        if order < 1:
            raise ValueError(f"order must be >= 1, got {order}")
        self.order = order
        clean = {}
        if coeffs:
            for word, value in coeffs.items():
                value = as_scalar(value)
                if not value:
                    continue
                if weight(word) > order:
                    continue
                clean[word] = value
        self.coeffs = clean

    @classmethod
    def unit(cls, order: int) -> "FreeSeries":
        return cls(order, {EMPTY_WORD: 1})

    @classmethod
    def zero(cls, order: int) -> "FreeSeries":
        return cls(order)

    @classmethod
    def letter(cls, index: int, order: int, coeff=1) -> "FreeSeries":
        if index < 1:
            raise ValueError(f"letter index must be positive, got {index}")
        return cls(order, {(index,): coeff})

    def coeff(self, word: Word) -> GaussianRational:
        return self.coeffs.get(tuple(word), GaussianRational(0))

    @property
    def constant_term(self) -> GaussianRational:
        return self.coeff(EMPTY_WORD)

    def homogeneous(self, n: int) -> dict:
        return {w: c for w, c in self.coeffs.items() if weight(w) == n}

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, FreeSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __add__(self, other):
        self._check_order(other)
        out = dict(self.coeffs)
        for word, value in other.coeffs.items():
            _bump(out, word, value)
        return FreeSeries(self.order, out)

    def __sub__(self, other):
        self._check_order(other)
        out = dict(self.coeffs)
        for word, value in other.coeffs.items():
            _bump(out, word, -value)
        return FreeSeries(self.order, out)

    def __neg__(self):
        return FreeSeries(self.order, {w: -c for w, c in self.coeffs.items()})

    def scale(self, factor) -> "FreeSeries":
        factor = as_scalar(factor)
        if not factor:
            return FreeSeries(self.order)
        return FreeSeries(self.order, {w: c * factor for w, c in self.coeffs.items()})

    def __mul__(self, other):
        """Word-concatenation convolution, discarding weight > order."""
        self._check_order(other)
        order = self.order
        out: dict = {}
        right_by_weight: list[list] = [[] for _ in range(order + 1)]
        for rw, rc in other.coeffs.items():
            right_by_weight[weight(rw)].append((rw, rc))
        for lw, lc in self.coeffs.items():
            budget = order - weight(lw)
            for n in range(budget + 1):
                for rw, rc in right_by_weight[n]:
                    word = lw + rw
                    value = lc * rc
                    prev = out.get(word)
                    if prev is None:
                        if value:
                            out[word] = value
                    else:
                        updated = prev + value
                        if updated:
                            out[word] = updated
                        else:
                            del out[word]
        return FreeSeries(order, out)

    def _check_order(self, other):
        if not isinstance(other, FreeSeries):
            raise TypeError(f"expected FreeSeries, got {type(other).__name__}")
        if self.order != other.order:
            raise OrderMismatchError(
                f"orders differ: {self.order} != {other.order}"
            )

    def with_order(self, order: int) -> "FreeSeries":
        """Same coefficients re-truncated to a new order bound."""
        return FreeSeries(order, self.coeffs)

    def sorted_items(self):
        return sorted(self.coeffs.items(), key=lambda kv: word_sort_key(kv[0]))

    def __repr__(self):
        return f"FreeSeries(order={self.order}, {series_to_text(self)!r})"


def _bump(table: dict, word: Word, value) -> None:
    current = table.get(word)
    if current is None:
        if value:
            table[word] = value
    else:
        updated = current + value
        if updated:
            table[word] = updated
        else:
            del table[word]


def truncate(f: FreeSeries, l: int) -> FreeSeries:
    """Keep exactly the terms of weight <= l-1 (the weight-filter quotient).

    Multiplicative in the sense truncate(f*g, l) == truncate(truncate(f, l)
    * truncate(g, l), l), and truncate(f, order+1) is the identity.
    """
    if l < 1 or l > f.order + 1:
        raise ValueError(f"truncation level {l} outside 1..{f.order + 1}")
    return FreeSeries(f.order, {w: c for w, c in f.coeffs.items() if weight(w) <= l - 1})


def series_exp(f: FreeSeries) -> FreeSeries:
    """exp(f) = sum f^n / n! for f with zero constant term, truncated."""
    if f.constant_term:
        raise ValueError("exp requires a zero constant term")
    order = f.order
    # Horner form: I + f(I + f/2 (I + f/3 (...))).
    acc = FreeSeries.unit(order)
    for n in range(order, 0, -1):
        acc = FreeSeries.unit(order) + f.scale(GaussianRational(1) / n) * acc
    return acc


def series_log(g: FreeSeries) -> FreeSeries:
    """log(g) = -sum (I-g)^n / n for g with unit constant term, truncated."""
    if g.constant_term != 1:
        raise ValueError("log requires a unit constant term")
    order = g.order
    u = g - FreeSeries.unit(order)  # strictly positive weight
    # Horner form: u - u(u/2 - u(u/3 - ...)).
    s = FreeSeries.zero(order)
    t = FreeSeries.zero(order)
    for depth in range(order, 0, -1):
        t = u * s
        if depth > 1:
            s = u.scale(GaussianRational(1) / depth) - t
    return u - t


def series_inverse(g: FreeSeries) -> FreeSeries:
    """Multiplicative inverse of a series with unit constant term.

    Built one weight at a time: inv_n = -sum_{j=1..n} u_j * inv_{n-j} with
    u = g - I, so each weight-compatible word pair is touched once.
    """
    if g.constant_term != 1:
        raise ValueError("inverse requires a unit constant term")
    order = g.order
    u_by_weight: list[list] = [[] for _ in range(order + 1)]
    for w, c in g.coeffs.items():
        if w:
            u_by_weight[weight(w)].append((w, c))
    inv_by_weight: list[dict] = [{EMPTY_WORD: GaussianRational(1)}]
    for n in range(1, order + 1):
        acc: dict = {}
        for j in range(1, n + 1):
            for uw, uc in u_by_weight[j]:
                for vw, vc in inv_by_weight[n - j].items():
                    _bump(acc, uw + vw, -(uc * vc))
        inv_by_weight.append(acc)
    merged: dict = {}
    for level in inv_by_weight:
        merged.update(level)
    return FreeSeries(order, merged)


def commutator(f: FreeSeries, g: FreeSeries) -> FreeSeries:
    return f * g - g * f


def group_commutator(f: FreeSeries, g: FreeSeries) -> FreeSeries:
    return f * g * series_inverse(f) * series_inverse(g)


# ---------------------------------------------------------------------------
# Canonical text form: terms "coeff*X[i1]X[i2]..." joined by " + "; scalars
# with a nonzero imaginary part are parenthesized.  parse(print(f)) == f.

def _format_word(word: Word) -> str:
    return "".join(f"X[{i}]" for i in word)


def series_to_text(f: FreeSeries) -> str:
    if f.is_zero():
        return "0"
    parts = []
    for word, value in f.sorted_items():
        text = format_scalar(value)
        if value.im:
            text = f"({text})"
        parts.append(text if not word else f"{text}*{_format_word(word)}")
    return " + ".join(parts)


def series_from_text(text: str, order: int) -> FreeSeries:
    coeffs: dict = {}
    pos = 0
    stripped = text.strip()
    if stripped == "0":
        return FreeSeries.zero(order)
    for chunk in stripped.split(" + "):
        chunk_pos = text.find(chunk, pos)
        word, value = _parse_term(chunk, chunk_pos)
        if weight(word) > order:
            raise ParseError(
                f"term {chunk!r} has weight {weight(word)} > order {order}", chunk_pos
            )
        _bump(coeffs, word, value)
        pos = chunk_pos + len(chunk)
    return FreeSeries(order, coeffs)


def _parse_term(chunk: str, pos: int):
    body = chunk.strip()
    if not body:
        raise ParseError("empty term", pos)
    letters_at = body.find("X[")
    if letters_at == -1:
        scalar_text, word_text = body, ""
    else:
        scalar_text = body[:letters_at].rstrip()
        if scalar_text.endswith("*"):
            scalar_text = scalar_text[:-1]
        word_text = body[letters_at:]
    if scalar_text.startswith("(") and scalar_text.endswith(")"):
        scalar_text = scalar_text[1:-1]
    if not scalar_text:
        raise ParseError(f"term {chunk!r} lacks a coefficient", pos)
    value = parse_scalar(scalar_text, pos)
    word: list[int] = []
    rest = word_text
    while rest:
        if not rest.startswith("X[") or "]" not in rest:
            raise ParseError(f"bad word in term {chunk!r}", pos)
        close = rest.index("]")
        index_text = rest[2:close]
        if not index_text.isdigit() or int(index_text) < 1:
            raise ParseError(f"bad letter index {index_text!r}", pos)
        word.append(int(index_text))
        rest = rest[close + 1 :]
    return tuple(word), value
