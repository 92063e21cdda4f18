"""Shuffle combinatorics, Lie-element tests, nested brackets, Lyndon bases,
dimension and generator-count formulas, and truncated Baker-Campbell-Hausdorff.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import OrderMismatchError
from .scalars import GaussianRational
from .series import (
    FreeSeries,
    Word,
    commutator,
    enumerate_words,
    series_exp,
    series_log,
    weight,
)


def mobius(d: int) -> int:
    """1 for d=1, (-1)^q for squarefree d with q prime factors, else 0."""
    if d < 1:
        raise ValueError(f"mobius requires d >= 1, got {d}")
    count = 0
    p = 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            count += 1
        else:
            p += 1
    if d > 1:
        count += 1
    return -1 if count % 2 else 1


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def free_lie_dim(n: int) -> int:
    """Dimension of the weight-n slice of the free Lie algebra on X1, X2, ...

    Necklace-style count (1/n) * sum_{d|n} (2^(n/d) - 1) * mu(d); the two-power
    appears because there are 2^(m-1) words of weight m over the weighted
    alphabet.  Cross-checked against the Lyndon-word enumeration in tests.
    """
    if n < 1:
        raise ValueError(f"free_lie_dim requires n >= 1, got {n}")
    total = sum((2 ** (n // d) - 1) * mobius(d) for d in _divisors(n))
    if total % n:
        raise ArithmeticError(f"dimension formula gave a non-integer at n={n}")
    return total // n


def lucas(n: int) -> int:
    """Lucas numbers by integer recurrence: 1, 3, 4, 7, 11, ... (no floats)."""
    if n < 1:
        raise ValueError(f"lucas requires n >= 1, got {n}")
    a, b = 2, 1  # L_0, L_1
    for _ in range(n - 1):
        a, b = b, a + b
    return b


def abel_gen_count(n: int) -> int:
    """Number of independent two-letter center generators at weight n (n >= 5).

    (1/n) * sum_{d|n} Lucas(n/d) * mu(d) - 1; Lucas(m) counts weight-m words
    over the alphabet {1, 2} cyclically.
    """
    if n < 5:
        raise ValueError(f"generator count requires n >= 5, got {n}")
    total = sum(lucas(n // d) * mobius(d) for d in _divisors(n))
    if total % n:
        raise ArithmeticError(f"count formula gave a non-integer at n={n}")
    return total // n - 1


def shuffle_product(u: Word, v: Word) -> dict[Word, int]:
    """Multiset of all (|u|,|v|)-shuffles, as word -> multiplicity.

    Total multiplicity is C(|u|+|v|, |u|).
    """
    return dict(_shuffle_cached(tuple(u), tuple(v)))


@lru_cache(maxsize=None)
def _shuffle_cached(u: Word, v: Word) -> tuple:
    out: dict[Word, int] = {}

    def merge(prefix, left, right, mult):
        if not left or not right:
            word = prefix + left + right
            out[word] = out.get(word, 0) + mult
            return
        merge(prefix + left[:1], left[1:], right, mult)
        merge(prefix + right[:1], left, right[1:], mult)

    merge((), u, v, 1)
    return tuple(out.items())


def shuffle_count(u: Word, v: Word) -> int:
    return comb(len(u) + len(v), len(u))


def is_group_like(g: FreeSeries) -> bool:
    """Check the full system of shuffle relations c_u c_v = sum_{w in u sh v} c_w
    over pairs with weight(u) + weight(v) <= order.
    """
    if g.constant_term != 1:
        raise ValueError("group-like test requires a unit constant term")
    order = g.order
    words_by_weight = [enumerate_words(n) for n in range(order + 1)]
    coeffs = g.coeffs
    zero = GaussianRational(0)
    for wu in range(1, order):
        for wv in range(1, order - wu + 1):
            for u in words_by_weight[wu]:
                cu = coeffs.get(u)
                for v in words_by_weight[wv]:
                    cv = coeffs.get(v)
                    left = cu * cv if cu is not None and cv is not None else zero
                    right = zero
                    for w, mult in _shuffle_cached(u, v):
                        c = coeffs.get(w)
                        if c is not None:
                            right = right + c * mult
                    if left != right:
                        return False
    return True


def expand_bracket(w: Word) -> FreeSeries:
    """Right-nested bracket [X_{i1},[X_{i2},[...,[X_{i_{k-1}},X_{i_k}]...]]]
    expanded into words with integer coefficients; weight-homogeneous.
    """
    w = tuple(w)
    if not w:
        raise ValueError("cannot bracket the empty word")
    order = weight(w)
    acc = FreeSeries.letter(w[-1], order)
    for index in reversed(w[:-1]):
        acc = commutator(FreeSeries.letter(index, order), acc)
    return acc


def _dynkin_bracketing(h: FreeSeries) -> FreeSeries:
    """Linear extension of w -> expand_bracket(w)."""
    out = FreeSeries.zero(h.order)
    for word, value in h.coeffs.items():
        if word:
            out = out + expand_bracket(word).with_order(h.order).scale(value)
    return out


def is_lie_element(h: FreeSeries) -> bool:
    """Membership in the free Lie algebra, decided two independent ways.

    Route one: exp(h) satisfies the shuffle relations.  Route two: on each
    component that is homogeneous in both weight and word length k, the
    Dynkin bracketing map acts as multiplication by k.  The routes must
    agree; a mismatch would mean a convention error, not a property of h.
    """
    if h.constant_term:
        raise ValueError("Lie test requires a zero constant term")
    via_shuffles = is_group_like(series_exp(h))

    via_dynkin = True
    by_length: dict[int, dict[Word, GaussianRational]] = {}
    for word, value in h.coeffs.items():
        by_length.setdefault(len(word), {})[word] = value
    for k, component in by_length.items():
        part = FreeSeries(h.order, component)
        if _dynkin_bracketing(part) != part.scale(k):
            via_dynkin = False
            break

    if via_shuffles != via_dynkin:
        raise AssertionError(
            "shuffle-relation and Dynkin Lie tests disagree; "
            "check bracketing conventions"
        )
    return via_shuffles


def lyndon_basis(max_index: int, total_weight: int) -> list[Word]:
    """All Lyndon words over the alphabet {1..max_index} of the given weight.

    A word is Lyndon when it is strictly smaller (lexicographically) than all
    of its proper rotations.  Serves as the independent counting oracle for
    free_lie_dim and abel_gen_count.
    """
    if total_weight < 1:
        raise ValueError(f"weight must be >= 1, got {total_weight}")
    out = []
    for word in enumerate_words(total_weight):
        if all(i <= max_index for i in word) and _is_lyndon(word):
            out.append(word)
    return out


def _is_lyndon(word: Word) -> bool:
    rotations = [word[j:] + word[:j] for j in range(1, len(word))]
    return all(word < rot for rot in rotations)


@dataclass(frozen=True)
class LieSeries:
    """A FreeSeries certified to be a Lie element up to certified_order."""

    body: FreeSeries
    certified_order: int

    @classmethod
    def certify(cls, body: FreeSeries) -> "LieSeries":
        if not is_lie_element(body):
            raise ValueError("series failed the Lie-element test")
        return cls(body, body.order)


def lie_body(h) -> FreeSeries:
    return h.body if isinstance(h, LieSeries) else h


def bch(a, b) -> FreeSeries:
    """Truncated Baker-Campbell-Hausdorff product log(exp(a) * exp(b))."""
    a, b = lie_body(a), lie_body(b)
    if a.order != b.order:
        raise OrderMismatchError(f"orders differ: {a.order} != {b.order}")
    return series_log(series_exp(a) * series_exp(b))
