"""Piecewise-constant coefficient paths and their exact integral calculus.

A path is a finite list of segments on [0, T]; segment j has a positive
rational length and finitely many constant coefficients c_{j,i} (one per
active index i).  Everything downstream - iterated integrals, the signature
(monodromy) series, moments, the metric - is computed exactly over the
Gaussian rationals.

Time-index pairing.  The iterated integral attached to the word (i1,...,ik)
pairs the FIRST index with the LATEST time:

    I_{i1,...,ik}(a) = integral over T >= s1 >= ... >= sk >= 0 of
                       a_{i1}(s1) * a_{i2}(s2) * ... * a_{ik}(sk).

With this pairing the signature is the time-ordered product of segment
exponentials with later segments acting on the left, the coefficient of
X_{i1}...X_{ik} in it equals I_{i1,...,ik}, and the concatenation identities
I(a*b) = sum of prefix(a)-suffix(b) splits hold with the prefix on a.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import OrderMismatchError, ParseError
from .scalars import GaussianRational, as_scalar, format_fraction, format_scalar, parse_fraction, parse_scalar
from .series import FreeSeries, Word, enumerate_words, series_exp, weight

# ---------------------------------------------------------------------------
# Exact polynomials (coefficient lists in the global time variable) and
# piecewise polynomials over a shared breakpoint grid.

Poly = list  # list of GaussianRational, index = power of x


def _poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return []
    out = [GaussianRational(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return out


def _poly_eval(p: Poly, x: Fraction) -> GaussianRational:
    acc = GaussianRational(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_antiderivative(p: Poly) -> Poly:
    return [GaussianRational(0)] + [c / (k + 1) for k, c in enumerate(p)]


@dataclass
class _Piecewise:
    """Polynomial on each cell of a breakpoint grid 0 = x0 < ... < xm = T."""

    grid: list  # Fractions, length m+1
    pieces: list  # m polys

    def multiply(self, other: "_Piecewise") -> "_Piecewise":
        return _Piecewise(self.grid, [_poly_mul(p, q) for p, q in zip(self.pieces, other.pieces)])

    def integral(self) -> "_Piecewise":
        """The running integral x -> int_0^x, continuous across cells."""
        pieces = []
        running = GaussianRational(0)
        for j, poly in enumerate(self.pieces):
            anti = _poly_antiderivative(poly)
            shift = running - _poly_eval(anti, self.grid[j])
            piece = list(anti)
            piece[0] = piece[0] + shift if piece else shift
            if not piece:
                piece = [shift]
            pieces.append(piece)
            running = _poly_eval(piece, self.grid[j + 1])
        return _Piecewise(self.grid, pieces)

    def value_at_end(self) -> GaussianRational:
        if not self.pieces:
            return GaussianRational(0)
        return _poly_eval(self.pieces[-1], self.grid[-1])

    def power(self, n: int) -> "_Piecewise":
        out = _Piecewise(self.grid, [[GaussianRational(1)] for _ in self.pieces])
        for _ in range(n):
            out = out.multiply(self)
        return out


def _ordered_simplex_integral(factors: list) -> GaussianRational:
    """integral over 0 <= t1 <= ... <= tk <= T of f1(t1) * ... * fk(tk).

    Plain recursion on running integrals; every factor is a _Piecewise on a
    common grid, so each step stays piecewise polynomial and exact.
    """
    if not factors:
        return GaussianRational(1)
    grid = factors[0].grid
    running = _Piecewise(grid, [[GaussianRational(1)] for _ in factors[0].pieces])
    for f in factors:
        running = f.multiply(running).integral()
    return running.value_at_end()


# ---------------------------------------------------------------------------
# Path and moment specifications.


@dataclass
class Segment:
    length: Fraction
    coeffs: dict  # index -> GaussianRational

    def __post_init__(self):
        self.length = Fraction(self.length)
        if self.length <= 0:
            raise ValueError(f"segment length must be positive, got {self.length}")
        clean = {}
        for index, value in self.coeffs.items():
            index = int(index)
            if index < 1:
                raise ValueError(f"coefficient index must be positive, got {index}")
            value = as_scalar(value)
            if value:
                clean[index] = value
        self.coeffs = clean


@dataclass
class PathSpec:
    """Piecewise-constant coefficient sequence a = (a_1, a_2, ...) on [0, T]."""

    T: Fraction
    segments: list

    def __post_init__(self):
        self.T = Fraction(self.T)
        if self.T <= 0:
            raise ValueError(f"total time must be positive, got {self.T}")
        if not self.segments:
            raise ValueError("a path needs at least one segment")
        total = sum((seg.length for seg in self.segments), Fraction(0))
        if total != self.T:
            raise ValueError(f"segment lengths sum to {total}, expected T = {self.T}")

    @property
    def support(self) -> list[int]:
        indices = set()
        for seg in self.segments:
            indices.update(seg.coeffs)
        return sorted(indices)

    def grid(self) -> list[Fraction]:
        xs = [Fraction(0)]
        for seg in self.segments:
            xs.append(xs[-1] + seg.length)
        return xs

    def coefficient_function(self, index: int) -> _Piecewise:
        return _Piecewise(
            self.grid(),
            [[seg.coeffs.get(index, GaussianRational(0))] for seg in self.segments],
        )

    def primitive(self, index: int) -> _Piecewise:
        """The antiderivative with value 0 at x = 0 (piecewise linear)."""
        return self.coefficient_function(index).integral()


@dataclass
class MomentFactor:
    powers: list  # list of (primitive index, exponent) pairs
    coeff_index: int

    def __post_init__(self):
        self.coeff_index = int(self.coeff_index)
        if self.coeff_index < 1:
            raise ValueError("coefficient index must be positive")
        clean = []
        for index, exponent in self.powers:
            index, exponent = int(index), int(exponent)
            if index < 1 or exponent < 0:
                raise ValueError(f"bad primitive power ({index}, {exponent})")
            if exponent:
                clean.append((index, exponent))
        self.powers = clean

    @property
    def degree(self) -> int:
        return sum(i * n for i, n in self.powers) + self.coeff_index


@dataclass
class MomentSpec:
    factors: list

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a moment needs at least one factor")

    @property
    def order(self) -> int:
        return len(self.factors)

    @property
    def degree(self) -> int:
        return max(f.degree for f in self.factors)


# ---------------------------------------------------------------------------
# Semigroup structure.


def star_concat(a: PathSpec, b: PathSpec) -> PathSpec:
    """The composite path running b first, then a, on the same [0, T].

    Each half is compressed to half its time with doubled amplitudes, which
    leaves all iterated integrals unchanged.
    """
    if a.T != b.T:
        raise ValueError(f"total times differ: {a.T} != {b.T}")
    two = GaussianRational(2)
    segments = [
        Segment(seg.length / 2, {i: two * c for i, c in seg.coeffs.items()})
        for seg in list(b.segments) + list(a.segments)
    ]
    return PathSpec(a.T, segments)


def path_inverse(a: PathSpec) -> PathSpec:
    """Time-reversed, negated path: the group inverse up to equivalence."""
    segments = [
        Segment(seg.length, {i: -c for i, c in seg.coeffs.items()})
        for seg in reversed(a.segments)
    ]
    return PathSpec(a.T, segments)


def is_closed(a: PathSpec) -> bool:
    """True when every first integral returns to zero at time T."""
    for index in a.support:
        total = GaussianRational(0)
        for seg in a.segments:
            c = seg.coeffs.get(index)
            if c:
                total = total + c * seg.length
        if total:
            return False
    return True


# ---------------------------------------------------------------------------
# Iterated integrals and the signature.


def iterated_integral(a: PathSpec, w: Word) -> GaussianRational:
    """Basic iterated integral of the word w, by direct simplex recursion.

    Independent of the segment-exponential signature; the first index pairs
    with the latest time, so the chronological factor list is w reversed.
    """
    w = tuple(w)
    if not w:
        raise ValueError("iterated integral needs a nonempty word")
    factors = [a.coefficient_function(i) for i in reversed(w)]
    return _ordered_simplex_integral(factors)


def monodromy(a: PathSpec, order: int) -> FreeSeries:
    """Signature series: ordered product of segment exponentials, later
    segments on the left.  Group-like; coefficient of the word w is I_w(a).
    """
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    result = FreeSeries.unit(order)
    for seg in a.segments:
        generator = FreeSeries(
            order,
            {(i,): c * seg.length for i, c in seg.coeffs.items() if i <= order},
        )
        result = series_exp(generator) * result
    return result


def triviality_order(a: PathSpec, order: int) -> int:
    """Largest n <= order with all weight <= n integrals zero; order + 1 when
    every computed integral vanishes."""
    sig = monodromy(a, order)
    present = sorted({weight(w) for w in sig.coeffs if w})
    if not present:
        return order + 1
    return present[0] - 1


def moment_eval(a: PathSpec, m: MomentSpec) -> GaussianRational:
    """Exact value of the moment: an ordered simplex integral whose j-th
    factor (in the given order) rides the j-th chronological time."""
    factors = []
    for factor in m.factors:
        pw = a.coefficient_function(factor.coeff_index)
        for index, exponent in factor.powers:
            pw = pw.multiply(a.primitive(index).power(exponent))
        factors.append(pw)
    return _ordered_simplex_integral(factors)


# ---------------------------------------------------------------------------
# Metric and lower central series order.


def distance(g: FreeSeries, h: FreeSeries) -> Fraction:
    """Partial sum (weights <= order) of the coefficient metric

        d(g, h) = sum_n 4^{-n} sum_{weight(w)=n} |c_w(g)-c_w(h)| / (1 + ...) .

    The dropped tail is at most (1/2)^(order+1): each weight-n inner sum has
    at most 2^(n-1) summands, each below 1.  The modulus used is |re| + |im|,
    which is rational-exact and agrees with the absolute value on the real
    axis.
    """
    if g.order != h.order:
        raise OrderMismatchError(f"orders differ: {g.order} != {h.order}")
    total = Fraction(0)
    for n in range(1, g.order + 1):
        inner = Fraction(0)
        for w in enumerate_words(n):
            delta = (g.coeff(w) - h.coeff(w)).abs1()
            if delta:
                inner += delta / (1 + delta)
        total += inner / 4**n
    return total


def lcs_order(g: FreeSeries) -> int:
    """Largest n such that every word of length <= n has zero coefficient.

    For group-like g this certifies membership in the n-th term of the
    topological lower central series, at the stored truncation.
    """
    from .lie import is_group_like

    if not is_group_like(g):
        raise ValueError("lower-central-series order needs a group-like series")
    lengths = sorted({len(w) for w in g.coeffs if w})
    if not lengths:
        return g.order
    return lengths[0] - 1


# ---------------------------------------------------------------------------
# JSON file formats.


def path_from_json(data: dict) -> PathSpec:
    if not isinstance(data, dict):
        raise ParseError("path file must be a JSON object")
    try:
        t_text = data["T"]
        raw_segments = data["segments"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"path file missing field: {exc}") from None
    T = parse_fraction(str(t_text))
    segments = []
    for pos, raw in enumerate(raw_segments):
        try:
            length = parse_fraction(str(raw["len"]), pos)
            coeffs = {}
            for key, value in raw.get("coeffs", {}).items():
                if not str(key).isdigit() or int(key) < 1:
                    raise ParseError(f"bad coefficient index {key!r} in segment {pos}", pos)
                coeffs[int(key)] = parse_scalar(str(value), pos)
            segments.append(Segment(length, coeffs))
        except (KeyError, TypeError):
            raise ParseError(f"malformed segment {pos}", pos) from None
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"segment {pos}: {exc}", pos) from None
    try:
        return PathSpec(T, segments)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def path_to_json(a: PathSpec) -> dict:
    return {
        "T": format_fraction(a.T),
        "segments": [
            {
                "len": format_fraction(seg.length),
                "coeffs": {str(i): format_scalar(c) for i, c in sorted(seg.coeffs.items())},
            }
            for seg in a.segments
        ],
    }


def moment_from_json(data: dict) -> MomentSpec:
    if not isinstance(data, dict) or "factors" not in data:
        raise ParseError("moment file must be a JSON object with a 'factors' list")
    factors = []
    for pos, raw in enumerate(data["factors"]):
        try:
            powers = [(int(i), int(n)) for i, n in raw.get("powers", [])]
            factors.append(MomentFactor(powers, int(raw["coeff"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed moment factor {pos}: {exc}", pos) from None
    try:
        return MomentSpec(factors)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def moment_to_json(m: MomentSpec) -> dict:
    return {
        "factors": [
            {"powers": [[i, n] for i, n in f.powers], "coeff": f.coeff_index}
            for f in m.factors
        ]
    }
