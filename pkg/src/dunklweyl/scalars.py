"""Exact coefficient arithmetic for the deformation engine.

Scalars live in the Laurent-polynomial ring Q(i)[h1, h1^-1, h2]: Gaussian
rational coefficients, an integer power of the quantization parameter h1 and
a non-negative power of the reflection parameter h2.  All arithmetic is
exact; there is no floating point anywhere in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping


class NonInvertibleError(ValueError):
    """Raised when asked to invert a scalar that is not an invertible monomial."""


class SeriesDomainError(ValueError):
    """Raised when a series operation is applied outside its domain."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


@dataclass(frozen=True, slots=True)
class GaussianRational:
    """A Gaussian rational re + im*i with exact Fraction components."""

    re: Fraction
    im: Fraction

    @staticmethod
    def of(re=0, im=0) -> "GaussianRational":
        return GaussianRational(_frac(re), _frac(im))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def inverse(self) -> "GaussianRational":
        norm = self.re * self.re + self.im * self.im
        if norm == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational(self.re / norm, -self.im / norm)

    def __truediv__(self, other: "GaussianRational") -> "GaussianRational":
        return self * other.inverse()

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"


GR_ZERO = GaussianRational.of(0)
GR_ONE = GaussianRational.of(1)
GR_I = GaussianRational.of(0, 1)


class ScalarPoly:
    """Finite sum of terms c * h1^a * h2^b with Gaussian rational c.

    The h1 exponent may be negative, the h2 exponent may not.  Zero
    coefficients are never stored; the zero polynomial has no terms.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], GaussianRational] | None = None):
        cleaned: dict[tuple[int, int], GaussianRational] = {}
        if terms:
            for (a, b), c in terms.items():
                if b < 0:
                    raise ValueError("h2 exponent must be non-negative")
                if not c.is_zero():
                    cleaned[(a, b)] = c
        self._terms = cleaned

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "ScalarPoly":
        return ScalarPoly()

    @staticmethod
    def one() -> "ScalarPoly":
        return ScalarPoly({(0, 0): GR_ONE})

    @staticmethod
    def from_rational(x, y=0) -> "ScalarPoly":
        """The constant x + y*i."""
        return ScalarPoly({(0, 0): GaussianRational.of(x, y)})

    @staticmethod
    def gaussian(c: GaussianRational) -> "ScalarPoly":
        return ScalarPoly({(0, 0): c})

    @staticmethod
    def i() -> "ScalarPoly":
        return ScalarPoly({(0, 0): GR_I})

    @staticmethod
    def monomial(c: GaussianRational, h1: int = 0, h2: int = 0) -> "ScalarPoly":
        return ScalarPoly({(h1, h2): c})

    @staticmethod
    def h1(power: int = 1) -> "ScalarPoly":
        return ScalarPoly({(power, 0): GR_ONE})

    @staticmethod
    def h2(power: int = 1) -> "ScalarPoly":
        return ScalarPoly({(0, power): GR_ONE})

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {(0, 0): GR_ONE}

    def terms(self) -> Iterator[tuple[tuple[int, int], GaussianRational]]:
        """Terms in canonical lexicographic (h1, h2) order."""
        return iter(sorted(self._terms.items()))

    def coefficient(self, h1: int, h2: int) -> GaussianRational:
        return self._terms.get((h1, h2), GR_ZERO)

    def constant_term(self) -> GaussianRational:
        return self.coefficient(0, 0)

    def nonnegative_h1(self) -> bool:
        return all(a >= 0 for (a, _b) in self._terms)

    def h2_bounded_by_h1(self) -> bool:
        return all(b <= a for (a, b) in self._terms)

    def h1_range(self) -> tuple[int, int]:
        """(min, max) h1 exponent; (0, 0) for the zero polynomial."""
        if not self._terms:
            return (0, 0)
        exps = [a for (a, _b) in self._terms]
        return (min(exps), max(exps))

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "ScalarPoly") -> "ScalarPoly":
        out = dict(self._terms)
        for key, c in other._terms.items():
            s = out.get(key, GR_ZERO) + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return ScalarPoly(out)

    def __sub__(self, other: "ScalarPoly") -> "ScalarPoly":
        return self + (-other)

    def __neg__(self) -> "ScalarPoly":
        return ScalarPoly({k: -c for k, c in self._terms.items()})

    def __mul__(self, other: "ScalarPoly") -> "ScalarPoly":
        out: dict[tuple[int, int], GaussianRational] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                s = out.get(key, GR_ZERO) + c1 * c2
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return ScalarPoly(out)

    def scale(self, c: GaussianRational) -> "ScalarPoly":
        return ScalarPoly({k: v * c for k, v in self._terms.items()})

    def pow(self, n: int) -> "ScalarPoly":
        if n < 0:
            return self.invert_monomial().pow(-n)
        out = ScalarPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def invert_monomial(self) -> "ScalarPoly":
        """Inverse of a single-term scalar c*h1^a; anything else is rejected.

        h2 has no inverse in this ring, so a nonzero h2 exponent is an error.
        """
        if len(self._terms) != 1:
            raise NonInvertibleError("only monomial scalars are invertible")
        ((a, b), c), = self._terms.items()
        if b != 0:
            raise NonInvertibleError("h2 is not invertible")
        return ScalarPoly({(-a, 0): c.inverse()})

    def subs_h2_zero(self) -> "ScalarPoly":
        return ScalarPoly({k: c for k, c in self._terms.items() if k[1] == 0})

    # -- protocol ------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ScalarPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._terms.items())))

    def __repr__(self) -> str:
        return f"ScalarPoly({self.to_text()})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        from .exprs import scalar_to_text

        return scalar_to_text(self)

    def to_json(self) -> list:
        """Canonical JSON form: sorted [a, b, re_num, re_den, im_num, im_den]."""
        return [
            [a, b, c.re.numerator, c.re.denominator, c.im.numerator, c.im.denominator]
            for (a, b), c in self.terms()
        ]

    @staticmethod
    def from_json(data: Iterable) -> "ScalarPoly":
        terms = {}
        for a, b, rn, rd, imn, imd in data:
            terms[(a, b)] = GaussianRational(Fraction(rn, rd), Fraction(imn, imd))
        return ScalarPoly(terms)


# i*h1, which shows up everywhere in the commutation relations.
def i_h1(power: int = 1) -> ScalarPoly:
    return ScalarPoly.monomial(GR_I, 0, 0).pow(power) * ScalarPoly.h1(power)


class TruncSeries:
    """Power series in one formal variable, truncated at a fixed order.

    coeffs[k] is the ScalarPoly coefficient of x^k for k = 0..order.
    Binary operations truncate to the smaller order; coefficients beyond
    the truncation order are discarded, never invented.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[ScalarPoly], order: int | None = None):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be non-negative")
        coeffs = coeffs[: order + 1]
        coeffs += [ScalarPoly.zero()] * (order + 1 - len(coeffs))
        self.coeffs = coeffs
        self.order = order

    @staticmethod
    def zero(order: int) -> "TruncSeries":
        return TruncSeries([], order)

    @staticmethod
    def one(order: int) -> "TruncSeries":
        return TruncSeries([ScalarPoly.one()], order)

    @staticmethod
    def x(order: int) -> "TruncSeries":
        return TruncSeries([ScalarPoly.zero(), ScalarPoly.one()], order)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        inner = ", ".join(c.to_text() for c in self.coeffs)
        return f"TruncSeries([{inner}], order={self.order})"

    def _zip_order(self, other: "TruncSeries") -> int:
        return min(self.order, other.order)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        n = self._zip_order(other)
        return TruncSeries(
            [self.coeffs[k] + other.coeffs[k] for k in range(n + 1)], n
        )

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        n = self._zip_order(other)
        return TruncSeries(
            [self.coeffs[k] - other.coeffs[k] for k in range(n + 1)], n
        )

    def __neg__(self) -> "TruncSeries":
        return TruncSeries([-c for c in self.coeffs], self.order)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        n = self._zip_order(other)
        out = [ScalarPoly.zero() for _ in range(n + 1)]
        for j, cj in enumerate(self.coeffs[: n + 1]):
            if cj.is_zero():
                continue
            for k in range(n + 1 - j):
                ck = other.coeffs[k]
                if not ck.is_zero():
                    out[j + k] = out[j + k] + cj * ck
        return TruncSeries(out, n)

    def scale(self, c: ScalarPoly) -> "TruncSeries":
        return TruncSeries([c * a for a in self.coeffs], self.order)

    def scale_argument(self, c: ScalarPoly) -> "TruncSeries":
        """Substitute x -> c*x, i.e. multiply coeffs[k] by c^k."""
        out = []
        power = ScalarPoly.one()
        for a in self.coeffs:
            out.append(power * a)
            power = power * c
        return TruncSeries(out, self.order)


def series_exp(s: TruncSeries) -> TruncSeries:
    """exp of a series with zero constant term, by summing s^k / k!."""
    if not s.coeffs[0].is_zero():
        raise SeriesDomainError("series_exp needs a zero constant term")
    result = TruncSeries.one(s.order)
    term = TruncSeries.one(s.order)
    for k in range(1, s.order + 1):
        term = (term * s).scale(ScalarPoly.from_rational(Fraction(1, k)))
        result = result + term
    return result


def series_log(s: TruncSeries) -> TruncSeries:
    """log of a series with constant term 1 (the exp oracle's inverse)."""
    if not s.coeffs[0].is_one():
        raise SeriesDomainError("series_log needs constant term 1")
    u = s - TruncSeries.one(s.order)
    result = TruncSeries.zero(s.order)
    power = TruncSeries.one(s.order)
    for k in range(1, s.order + 1):
        power = power * u
        sign = Fraction(1, k) if k % 2 == 1 else Fraction(-1, k)
        result = result + power.scale(ScalarPoly.from_rational(sign))
    return result


def _half_binomial(k: int) -> Fraction:
    # binomial(1/2, k) = (1/2)(1/2 - 1)...(1/2 - k + 1) / k!
    num = Fraction(1)
    for j in range(k):
        num *= Fraction(1, 2) - j
    for j in range(1, k + 1):
        num /= j
    return num


def series_sqrt(s: TruncSeries) -> TruncSeries:
    """Square root of a series with constant term 1, via the binomial series."""
    if not s.coeffs[0].is_one():
        raise SeriesDomainError("series_sqrt needs constant term 1")
    u = s - TruncSeries.one(s.order)
    result = TruncSeries.zero(s.order)
    power = TruncSeries.one(s.order)
    for k in range(s.order + 1):
        result = result + power.scale(ScalarPoly.from_rational(_half_binomial(k)))
        power = power * u
    return result


def series_inverse(s: TruncSeries) -> TruncSeries:
    """Multiplicative inverse; the constant term must be an invertible monomial."""
    c0 = s.coeffs[0].invert_monomial()
    out = [c0]
    for n in range(1, s.order + 1):
        acc = ScalarPoly.zero()
        for k in range(1, n + 1):
            acc = acc + s.coeffs[k] * out[n - k]
        out.append(-(c0 * acc))
    return TruncSeries(out, s.order)
