"""The operator algebra generated by differentiation D and left translation L
on formal power series in z, with the relation L.D = D.L + L.L.

Every polynomial in D and L has a unique normal form with D-powers on the
left (sums of D^i L^j).  The algebra receives the free algebra through the
letter substitution X_i -> D L^(i-1), extended multiplicatively; nested
brackets land on scalar multiples of D L^(n-1), with the scalar produced by
the bracket recursion [D L^i, D L^j] = (i - j) D L^(i+j+1).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import OrderMismatchError
from .scalars import GaussianRational, as_scalar, format_scalar
from .series import FreeSeries, Word, weight


@lru_cache(maxsize=None)
def _ld_normal(b: int, c: int):
    """Normal form of L^b D^c as a tuple of ((i, j), integer coeff) entries.

    Built from L^b D = D L^b + b L^(b+1), peeling one D at a time.
    """
    if b == 0 or c == 0:
        return (((c, b), 1),)
    out: dict = {}
    for (i, j), coeff in _ld_normal(b, c - 1):
        out[(i + 1, j)] = out.get((i + 1, j), 0) + coeff
    for (i, j), coeff in _ld_normal(b + 1, c - 1):
        out[(i, j)] = out.get((i, j), 0) + b * coeff
    return tuple(sorted((k, v) for k, v in out.items() if v))


class DLPoly:
    """Polynomial in D and L in normal form: sparse (D-power, L-power) -> scalar.

    The key (0, 0) is the identity component.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for key, value in terms.items():
                value = as_scalar(value)
                if value:
                    clean[(int(key[0]), int(key[1]))] = value
        self.terms = clean

    @classmethod
    def unit(cls) -> "DLPoly":
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, i: int, j: int, coeff=1) -> "DLPoly":
        return cls({(i, j): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        if not self.terms:
            return 0
        return max(i + j for i, j in self.terms)

    def coeff(self, i: int, j: int) -> GaussianRational:
        return self.terms.get((i, j), GaussianRational(0))

    def __eq__(self, other):
        if not isinstance(other, DLPoly):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for key, value in other.terms.items():
            updated = out.get(key, GaussianRational(0)) + value
            if updated:
                out[key] = updated
            else:
                out.pop(key, None)
        return DLPoly(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return DLPoly({k: -v for k, v in self.terms.items()})

    def scale(self, factor) -> "DLPoly":
        factor = as_scalar(factor)
        if not factor:
            return DLPoly()
        return DLPoly({k: v * factor for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, DLPoly):
            return NotImplemented
        out: dict = {}
        for (a, b), u in self.terms.items():
            for (c, d), v in other.terms.items():
                uv = u * v
                # D^a L^b D^c L^d = D^a (L^b D^c) L^d
                for (i, j), coeff in _ld_normal(b, c):
                    key = (a + i, j + d)
                    term = uv * coeff
                    prev = out.get(key)
                    if prev is None:
                        if term:
                            out[key] = term
                    else:
                        updated = prev + term
                        if updated:
                            out[key] = updated
                        else:
                            del out[key]
        return DLPoly(out)

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: (-kv[0][0], kv[0][1]))

    def __repr__(self):
        return f"DLPoly({dl_poly_to_text(self)!r})"


def dl_monomial_text(i: int, j: int) -> str:
    if i == 0 and j == 0:
        return "1"
    parts = []
    if i:
        parts.append("D" if i == 1 else f"D^{i}")
    if j:
        parts.append("L" if j == 1 else f"L^{j}")
    return "".join(parts)


def dl_poly_to_text(p: DLPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for (i, j), value in p.sorted_items():
        text = format_scalar(value)
        if value.im:
            text = f"({text})"
        mono = dl_monomial_text(i, j)
        parts.append(text if mono == "1" else f"{text}*{mono}")
    return " + ".join(parts)


def dl_normalize(word) -> DLPoly:
    """Normal form of a word over {D, L} by leftmost L.D -> D.L + L.L rewriting.

    The rewriting terminates (each step lowers the count of inversions of L
    before D) and is checked against the monomial action in tests.
    """
    letters = tuple(word)
    if any(ch not in ("D", "L") for ch in letters):
        raise ValueError(f"word must be over {{D, L}}, got {word!r}")
    pending = {letters: GaussianRational(1)}
    out: dict = {}
    while pending:
        next_pending: dict = {}
        for w, coeff in pending.items():
            site = _leftmost_ld(w)
            if site is None:
                d_count = w.count("D")
                key = (d_count, len(w) - d_count)
                prev = out.get(key, GaussianRational(0)) + coeff
                if prev:
                    out[key] = prev
                else:
                    out.pop(key, None)
                continue
            swapped = w[:site] + ("D", "L") + w[site + 2 :]
            doubled = w[:site] + ("L", "L") + w[site + 2 :]
            for target in (swapped, doubled):
                prev = next_pending.get(target, GaussianRational(0)) + coeff
                if prev:
                    next_pending[target] = prev
                else:
                    next_pending.pop(target, None)
        pending = next_pending
    return DLPoly(out)


def _leftmost_ld(w):
    for pos in range(len(w) - 1):
        if w[pos] == "L" and w[pos + 1] == "D":
            return pos
    return None


def dl_apply(p: DLPoly, n: int) -> dict:
    """Image of the monomial z^n under p, as exponent -> scalar.

    D drops the degree with a factor, L shifts it down; a monomial D^i L^j
    sends z^n to (n-j)(n-j-1)...(n-j-i+1) z^(n-j-i).
    """
    if n < 0:
        raise ValueError(f"monomial degree must be >= 0, got {n}")
    out: dict = {}
    for (i, j), value in p.terms.items():
        m = n - j
        if m < 0:
            continue
        factor = 1
        for step in range(i):
            factor *= m - step
        if factor == 0:
            continue
        exponent = m - i
        if exponent < 0:
            continue
        prev = out.get(exponent, GaussianRational(0)) + value * factor
        if prev:
            out[exponent] = prev
        else:
            out.pop(exponent, None)
    return out


def dl_apply_word(word, n: int) -> dict:
    """Apply a word over {D, L} to z^n factor by factor, rightmost first.

    Independent of any rewriting; the oracle for dl_normalize.
    """
    current = {n: GaussianRational(1)}
    for ch in reversed(tuple(word)):
        next_out: dict = {}
        for m, value in current.items():
            if ch == "L":
                if m >= 1:
                    next_out[m - 1] = next_out.get(m - 1, GaussianRational(0)) + value
            else:
                if m >= 1:
                    next_out[m - 1] = next_out.get(m - 1, GaussianRational(0)) + value * m
        current = {k: v for k, v in next_out.items() if v}
    return current


def dl_bracket(i: int, j: int) -> DLPoly:
    """Normal form of [D L^i, D L^j]; equals (i - j) D L^(i+j+1)."""
    if i < 0 or j < 0:
        raise ValueError("powers must be nonnegative")
    a = DLPoly.monomial(1, i)
    b = DLPoly.monomial(1, j)
    return a * b - b * a


class DLSeries:
    """Truncated series with slice n a DLPoly of degree <= n."""

    __slots__ = ("order", "slices")

    def __init__(self, order: int, slices=None):
        if order < 1:
            raise ValueError(f"order must be >= 1, got {order}")
        self.order = order
        if slices is None:
            slices = [DLPoly() for _ in range(order + 1)]
        else:
            slices = list(slices)
            if len(slices) != order + 1:
                raise ValueError("need one slice per weight 0..order")
        for n, slice_n in enumerate(slices):
            if slice_n.degree > n and not slice_n.is_zero():
                raise ValueError(f"slice {n} has degree {slice_n.degree} > {n}")
        self.slices = slices

    @classmethod
    def unit(cls, order: int) -> "DLSeries":
        slices = [DLPoly() for _ in range(order + 1)]
        slices[0] = DLPoly.unit()
        return cls(order, slices)

    @classmethod
    def zero(cls, order: int) -> "DLSeries":
        return cls(order)

    def is_zero(self) -> bool:
        return all(s.is_zero() for s in self.slices)

    def __eq__(self, other):
        if not isinstance(other, DLSeries):
            return NotImplemented
        return self.order == other.order and all(
            a == b for a, b in zip(self.slices, other.slices)
        )

    def _check(self, other):
        if not isinstance(other, DLSeries):
            raise TypeError(f"expected DLSeries, got {type(other).__name__}")
        if self.order != other.order:
            raise OrderMismatchError(f"orders differ: {self.order} != {other.order}")

    def __add__(self, other):
        self._check(other)
        return DLSeries(self.order, [a + b for a, b in zip(self.slices, other.slices)])

    def __sub__(self, other):
        self._check(other)
        return DLSeries(self.order, [a - b for a, b in zip(self.slices, other.slices)])

    def __neg__(self):
        return DLSeries(self.order, [-s for s in self.slices])

    def scale(self, factor) -> "DLSeries":
        return DLSeries(self.order, [s.scale(factor) for s in self.slices])

    def __mul__(self, other):
        self._check(other)
        out = [DLPoly() for _ in range(self.order + 1)]
        for a, left in enumerate(self.slices):
            if left.is_zero():
                continue
            for b in range(self.order + 1 - a):
                right = other.slices[b]
                if right.is_zero():
                    continue
                out[a + b] = out[a + b] + left * right
        return DLSeries(self.order, out)

    @property
    def constant_slice(self) -> DLPoly:
        return self.slices[0]

    def __repr__(self):
        return f"DLSeries(order={self.order}, {dl_series_to_text(self)!r})"


def dl_series_to_text(f: DLSeries) -> str:
    parts = []
    for n, slice_n in enumerate(f.slices):
        if not slice_n.is_zero():
            parts.append(f"t^{n}: {dl_poly_to_text(slice_n)}")
    return "; ".join(parts) if parts else "0"


def dl_exp(f: DLSeries) -> DLSeries:
    if not f.constant_slice.is_zero():
        raise ValueError("exp requires a zero constant slice")
    acc = DLSeries.unit(f.order)
    for n in range(f.order, 0, -1):
        acc = DLSeries.unit(f.order) + f.scale(GaussianRational(1) / n) * acc
    return acc


def dl_log(g: DLSeries) -> DLSeries:
    if g.constant_slice != DLPoly.unit():
        raise ValueError("log requires a unit constant slice")
    u = g - DLSeries.unit(g.order)
    s = DLSeries.zero(g.order)
    t = DLSeries.zero(g.order)
    for depth in range(g.order, 0, -1):
        t = u * s
        if depth > 1:
            s = u.scale(GaussianRational(1) / depth) - t
    return u - t


# ---------------------------------------------------------------------------
# The representation of the free algebra.


@lru_cache(maxsize=None)
def _psi_word(word: Word):
    poly = DLPoly.unit()
    for index in word:
        poly = poly * DLPoly.monomial(1, index - 1)
    return poly


def psi(f: FreeSeries) -> "DLSeries":
    """Substitute X_i -> D L^(i-1) wordwise and normalize each slice.

    An algebra homomorphism: psi(f * g) == psi(f) * psi(g).
    """
    slices = [DLPoly() for _ in range(f.order + 1)]
    for word, value in f.coeffs.items():
        n = weight(word)
        slices[n] = slices[n] + _psi_word(word).scale(value)
    return DLSeries(f.order, slices)


def dl_monodromy(a, order: int) -> DLSeries:
    """Segmentwise exponential product in the D/L algebra, later segments on
    the left; identical to psi of the path signature, computed independently.
    """
    from .paths import PathSpec  # local import to keep module deps one-way

    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    result = DLSeries.unit(order)
    for seg in a.segments:
        slices = [DLPoly() for _ in range(order + 1)]
        for i, c in seg.coeffs.items():
            if i <= order:
                slices[i] = DLPoly.monomial(1, i - 1, c * seg.length)
        result = dl_exp(DLSeries(order, slices)) * result
    return result


def gamma_nested_bracket(w: Word) -> GaussianRational:
    """Scalar with psi(expand_bracket(w)) = gamma * D L^(weight-1).

    Computed by folding the bracket identity from the inside out:
    [D L^(i-1), D L^(m-1)] = (i - m) D L^(i+m-1).
    """
    w = tuple(w)
    if not w:
        raise ValueError("gamma needs a nonempty word")
    value = GaussianRational(1)
    suffix_weight = w[-1]
    for index in reversed(w[:-1]):
        value = value * (index - suffix_weight)
        suffix_weight += index
    return value


def gamma_product_formula(w: Word) -> GaussianRational:
    """The closed-form product (i_{k-1}-i_k)(i_{k-1}+i_k-i_{k-2})...; for
    words of length k >= 3 this differs from gamma_nested_bracket by the
    factor (-1)^(k-2).  Kept for cross-checking only; all center logic uses
    the bracket recursion.
    """
    w = tuple(w)
    if not w:
        raise ValueError("gamma needs a nonempty word")
    if len(w) == 1:
        return GaussianRational(1)
    value = GaussianRational(w[-2] - w[-1])
    suffix = w[-2] + w[-1]
    for pos in range(len(w) - 3, -1, -1):
        value = value * (suffix - w[pos])
        suffix += w[pos]
    return value


@dataclass(frozen=True)
class GammaReport:
    word: Word
    bracket_value: GaussianRational
    product_value: GaussianRational

    @property
    def agree(self) -> bool:
        return self.bracket_value == self.product_value


def gamma_of_bracket(w) -> GammaReport:
    w = tuple(w)
    return GammaReport(w, gamma_nested_bracket(w), gamma_product_formula(w))
