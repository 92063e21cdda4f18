"""The composition group of series r + d1 r^2 + d2 r^3 + ... at finite order,
the first return map of v' = sum a_i(x) v^(i+1), an independent exact ODE
solver to check it, the coefficient isomorphism with diagonal exponentials,
and the center test.

The return-map coefficients pair the falling-factorial polynomial of a word
with the integral of the REVERSED word: with the time-index pairing fixed in
``paths`` (first index = latest time), that reversed pairing is the one the
exact ODE flow actually produces, and the test suite pins it against the
solver on paths where the two pairings differ.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Optional

from .errors import OrderMismatchError, ParseError
from .paths import PathSpec, monodromy
from .scalars import GaussianRational, as_scalar, format_scalar, parse_scalar
from .series import FreeSeries, Word, enumerate_words

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


class ReturnSeries:
    """Formal series r + d[0] r^2 + d[1] r^3 + ... + d[order-1] r^(order+1)."""

    __slots__ = ("order", "d")

    def __init__(self, order: int, d=None):
        if order < 1:
            raise ValueError(f"order must be >= 1, got {order}")
        self.order = order
        if d is None:
            d = [GaussianRational(0)] * order
        else:
            d = [as_scalar(v) for v in d]
            if len(d) != order:
                raise ValueError(f"need {order} coefficients, got {len(d)}")
        self.d = d

    @classmethod
    def identity(cls, order: int) -> "ReturnSeries":
        return cls(order)

    def is_identity(self) -> bool:
        return not any(self.d)

    def coefficient(self, i: int) -> GaussianRational:
        """d_i, the coefficient of r^(i+1), for 1 <= i <= order."""
        return self.d[i - 1]

    def __eq__(self, other):
        if not isinstance(other, ReturnSeries):
            return NotImplemented
        return self.order == other.order and self.d == other.d

    def _check(self, other):
        if not isinstance(other, ReturnSeries):
            raise TypeError(f"expected ReturnSeries, got {type(other).__name__}")
        if self.order != other.order:
            raise OrderMismatchError(f"orders differ: {self.order} != {other.order}")

    def _full(self) -> list:
        """Coefficients of r^1..r^(order+1) as a plain list."""
        return [_ONE] + list(self.d)

    def __repr__(self):
        return f"ReturnSeries({return_series_to_text(self)!r})"


def _poly_mul_trunc(p: list, q: list, max_len: int) -> list:
    out = [_ZERO] * min(max_len, len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a or i >= max_len:
            continue
        for j, b in enumerate(q):
            if i + j >= max_len:
                break
            if b:
                out[i + j] = out[i + j] + a * b
    return out


def rs_compose(f: ReturnSeries, g: ReturnSeries) -> ReturnSeries:
    """Truncated functional composition f(g(r)); the group law."""
    f._check(g)
    result = _compose_full(f._full(), g._full(), f.order + 1)
    return ReturnSeries(f.order, result[1:])


def _compose_full(f_coeffs: list, g_coeffs: list, max_len: int) -> list:
    """Coefficients (r^1..r^max_len) of f(g(r)) for series with no constant.

    g^k is tracked relative to its lowest exponent k: rel[j] is the
    coefficient of r^(k+j).
    """
    out = [_ZERO] * max_len
    rel_g = g_coeffs
    rel_power = list(rel_g)
    for k, fk in enumerate(f_coeffs, start=1):
        if k > 1:
            rel_power = _poly_mul_trunc(rel_power, rel_g, max_len - k + 1)
        if not fk:
            continue
        for j, value in enumerate(rel_power):
            idx = k + j - 1
            if idx >= max_len:
                break
            if value:
                out[idx] = out[idx] + fk * value
    return out


def rs_invert(f: ReturnSeries) -> ReturnSeries:
    """Compositional inverse to the stored order, by triangular correction."""
    inverse = ReturnSeries.identity(f.order)
    for i in range(1, f.order + 1):
        residual = rs_compose(f, inverse).coefficient(i)
        if residual:
            inverse.d[i - 1] = inverse.d[i - 1] - residual
    return inverse


def p_poly(w: Word, t) -> GaussianRational:
    """(t - i1 + 1)(t - i1 - i2 + 1) ... (t - i + 1) for the word (i1,...,ik)."""
    w = tuple(w)
    if not w:
        raise ValueError("p_poly needs a nonempty word")
    if isinstance(t, int):
        return GaussianRational(_p_int(w, t))
    t = as_scalar(t)
    value = _ONE
    partial = 0
    for index in w:
        partial += index
        value = value * (t - partial + 1)
    return value


@lru_cache(maxsize=None)
def _p_int(w: Word, t: int) -> int:
    """p_poly at an integer point, in plain integer arithmetic (cached)."""
    value = 1
    partial = 0
    for index in w:
        partial += index
        value *= t - partial + 1
        if not value:
            return 0
    return value


def return_map(g: FreeSeries, check_group_like: bool = True) -> ReturnSeries:
    """First return map attached to a group-like series.

    d_i = sum over words w of weight i of p_poly(reverse(w), i) * c_w(g);
    the reversal matches the order in which the operator slices act on
    monomials, and hence the exact ODE flow.
    """
    if check_group_like:
        from .lie import is_group_like

        if not is_group_like(g):
            raise ValueError("return map needs a group-like series")
    d = []
    coeffs = g.coeffs
    for i in range(1, g.order + 1):
        total = _ZERO
        for w in enumerate_words(i):
            c = coeffs.get(w)
            if c:
                scale = _p_int(tuple(reversed(w)), i)
                if scale:
                    total = total + c * scale
        d.append(total)
    return ReturnSeries(g.order, d)


# ---------------------------------------------------------------------------
# Independent oracle: exact power-series solution of the defining ODE.


def _power_entry(memo: dict, u: list, p: int, k: int) -> list:
    """Polynomial coefficient of r^(k+p) in v^p, where v = sum u[m] r^(m+1)."""
    if p == 1:
        return u[k]
    key = (p, k)
    cached = memo.get(key)
    if cached is not None:
        return cached
    acc: list = []
    for a in range(k + 1):
        left = _power_entry(memo, u, p - 1, a)
        right = u[k - a]
        if not left or not right:
            continue
        prod = _poly_mul_full(left, right)
        acc = _poly_add(acc, prod)
    memo[key] = acc
    return acc


def _poly_mul_full(p: list, q: list) -> list:
    out = [_ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return out


def _poly_add(p: list, q: list) -> list:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, b in enumerate(q):
        out[i] = out[i] + b
    return out


def _poly_scale(p: list, factor) -> list:
    return [factor * c for c in p]


def _poly_antiderivative(p: list) -> list:
    return [_ZERO] + [c / (k + 1) for k, c in enumerate(p)]


def _poly_eval(p: list, x) -> GaussianRational:
    acc = _ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def ode_return_map(a: PathSpec, order: int) -> ReturnSeries:
    """Solve v' = sum a_i(x) v^(i+1), v(0) = r, exactly as a truncated series
    in r with piecewise-polynomial coefficients, and return v(T).

    Shares no code path with return_map: segmentwise triangular integration
    of polynomial coefficient functions over the exact field.
    """
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    values = [_ZERO] * (order + 1)  # value of u[m] at the current time
    values[0] = _ONE
    for seg in a.segments:
        support = sorted(i for i in seg.coeffs if i <= order)
        # u[m]: polynomial in the local segment variable, u[0] == 1.
        u: list = [[values[0]]] + [[values[m]] for m in range(1, order + 1)]
        memo: dict = {}
        for m in range(1, order + 1):
            rhs: list = []
            for i in support:
                if m - i < 0:
                    continue
                entry = _power_entry(memo, u, i + 1, m - i)
                if entry:
                    rhs = _poly_add(rhs, _poly_scale(entry, seg.coeffs[i]))
            if rhs:
                poly = _poly_antiderivative(rhs)
                poly[0] = values[m]
                u[m] = poly
            # else: u[m] keeps its constant inherited value
        values = [_poly_eval(poly, seg.length) for poly in u]
    return ReturnSeries(order, values[1:])


# ---------------------------------------------------------------------------
# Center test: identity return map, cross-checked against the polynomial
# form of the criterion (exact zero-testing by evaluation).


@dataclass(frozen=True)
class CenterReport:
    order: int
    verdict: bool
    first_failing_degree: Optional[int]

    @property
    def center_to_order(self) -> int:
        if self.verdict:
            return self.order
        return self.first_failing_degree - 1


def is_center(a: PathSpec, order: int) -> CenterReport:
    """Decide centerhood to the given truncation order.

    Two routes are computed and must agree: the return-map coefficients
    d_1..d_order all vanish, and for each degree i the full polynomial
    combination sum_w p_poly(reverse(w), t) * I_w(a) is the zero polynomial
    (checked by evaluating at i+1 distinct rational points).
    """
    sig = monodromy(a, order)
    rm = return_map(sig)
    fail_eval = None
    for i in range(1, order + 1):
        if rm.coefficient(i):
            fail_eval = i
            break

    fail_poly = None
    for i in range(1, order + 1):
        words = [(tuple(reversed(w)), sig.coeff(w)) for w in enumerate_words(i)]
        vanishes = True
        for t in range(i + 1):
            total = _ZERO
            for rev, c in words:
                if c:
                    scale = _p_int(rev, t)
                    if scale:
                        total = total + c * scale
            if total:
                vanishes = False
                break
        if not vanishes:
            fail_poly = i
            break

    if (fail_eval is None) != (fail_poly is None) or fail_eval != fail_poly:
        raise AssertionError(
            f"center criteria disagree: evaluation fails at {fail_eval}, "
            f"polynomial identity fails at {fail_poly}"
        )
    return CenterReport(order, fail_eval is None, fail_eval)


# ---------------------------------------------------------------------------
# The coefficient isomorphism between diagonal exponentials and return maps.


def _phi_coefficient(s: list, T: Fraction, i: int) -> GaussianRational:
    t_over_factorial = [Fraction(T**k, factorial(k)) for k in range(i + 1)]
    total = _ZERO
    for w in enumerate_words(i):
        scale = _p_int(w, i)
        if not scale:
            continue
        prod = _ONE
        for index in w:
            prod = prod * s[index - 1]
            if not prod:
                break
        if prod:
            total = total + prod * (scale * t_over_factorial[len(w)])
    return total


def phi_forward(s, T) -> ReturnSeries:
    """Return series with d_i = sum over compositions (i1..ik) of i of
    p_poly(w, i) * s_{i1} ... s_{ik} * T^k / k!."""
    s = [as_scalar(v) for v in s]
    T = Fraction(T)
    order = len(s)
    return ReturnSeries(order, [_phi_coefficient(s, T, i) for i in range(1, order + 1)])


def phi_inverse(f: ReturnSeries, T) -> list:
    """The unique s with phi_forward(s, T) == f, by triangular elimination."""
    T = Fraction(T)
    if T == 0:
        raise ValueError("time horizon T must be nonzero")
    s = [_ZERO] * f.order
    for i in range(1, f.order + 1):
        # Only the single-letter word (i) involves s_i, with coefficient T;
        # everything else in degree i uses lower entries only.
        partial = _phi_coefficient(s, T, i)
        s[i - 1] = (f.coefficient(i) - partial) / T
    return s


# ---------------------------------------------------------------------------
# Text and JSON forms.


def return_series_to_text(f: ReturnSeries) -> str:
    parts = ["r"]
    for i, value in enumerate(f.d, start=2):
        if value:
            text = format_scalar(value)
            if value.im:
                text = f"({text})"
            parts.append(f"{text}*r^{i}")
    return " + ".join(parts)


def return_series_from_text(text: str, order: int) -> ReturnSeries:
    chunks = [c.strip() for c in text.strip().split(" + ")]
    if not chunks or chunks[0] != "r":
        raise ParseError("return series must start with the term 'r'")
    d = [GaussianRational(0)] * order
    for chunk in chunks[1:]:
        if "*r^" not in chunk:
            raise ParseError(f"bad return-series term {chunk!r}")
        scalar_text, power_text = chunk.rsplit("*r^", 1)
        if scalar_text.startswith("(") and scalar_text.endswith(")"):
            scalar_text = scalar_text[1:-1]
        if not power_text.isdigit() or int(power_text) < 2:
            raise ParseError(f"bad power in term {chunk!r}")
        i = int(power_text) - 1
        if i > order:
            raise ParseError(f"term {chunk!r} beyond order {order}")
        d[i - 1] = parse_scalar(scalar_text)
    return ReturnSeries(order, d)


def return_series_to_json(f: ReturnSeries) -> list:
    return [format_scalar(v) for v in f.d]
