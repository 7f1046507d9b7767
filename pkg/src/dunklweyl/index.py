"""Characteristic-class generating functions and the flat local model.

Curvature data enters as abstract commuting symbols of form degree 2 living
in a FormPoly truncated by total form degree, so all exponentials are finite
sums.  The degree-(n-1) index form multiplies one inverse-sinh factor per
tangent eigenvalue pair, the exponential of -theta/h1, and the deformed
character genus of the normal symbol, then extracts the top component.

The local model is the Weyl algebra on n-1 base pairs (p_i, q_i) with
[p_i, q_j] = h1*delta_ij tensored with the reflection algebra in the fiber
variables z, zb.  Its trace density applies the spherical trace fiberwise
and returns a base polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from . import algebra
from .algebra import SrcElement
from .scalars import (
    GaussianRational,
    ScalarPoly,
    TruncSeries,
    series_inverse,
)
from .spherical import ParityError
from .trace import class_scalar, step_factor

SymKey = tuple[tuple[str, int], ...]  # sorted ((symbol, exponent), ...)


def _merge_sym(k1: SymKey, k2: SymKey) -> SymKey:
    acc: dict[str, int] = {}
    for name, e in k1 + k2:
        acc[name] = acc.get(name, 0) + e
    return tuple(sorted(acc.items()))


def _sym_degree(key: SymKey) -> int:
    return 2 * sum(e for _n, e in key)


class FormPoly:
    """Polynomial in commuting degree-2 curvature symbols, degree-truncated."""

    __slots__ = ("_terms", "max_form_degree")

    def __init__(
        self,
        terms: Mapping[SymKey, ScalarPoly] | None = None,
        max_form_degree: int = 0,
    ):
        if max_form_degree < 0 or max_form_degree % 2 != 0:
            raise ValueError("max_form_degree must be a non-negative even integer")
        self.max_form_degree = max_form_degree
        cleaned: dict[SymKey, ScalarPoly] = {}
        if terms:
            for key, c in terms.items():
                key = tuple(sorted((n, e) for n, e in key if e != 0))
                if any(e < 0 for _n, e in key):
                    raise ValueError("negative symbol exponent")
                if _sym_degree(key) > max_form_degree or c.is_zero():
                    continue
                cleaned[key] = cleaned.get(key, ScalarPoly.zero()) + c
                if cleaned[key].is_zero():
                    del cleaned[key]
        self._terms = cleaned

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(max_form_degree: int) -> "FormPoly":
        return FormPoly({}, max_form_degree)

    @staticmethod
    def one(max_form_degree: int) -> "FormPoly":
        return FormPoly({(): ScalarPoly.one()}, max_form_degree)

    @staticmethod
    def scalar(c: ScalarPoly, max_form_degree: int) -> "FormPoly":
        return FormPoly({(): c}, max_form_degree)

    @staticmethod
    def symbol(name: str, max_form_degree: int) -> "FormPoly":
        return FormPoly({((name, 1),): ScalarPoly.one()}, max_form_degree)

    # -- queries -------------------------------------------------------

    def terms(self) -> Iterator[tuple[SymKey, ScalarPoly]]:
        return iter(sorted(self._terms.items(), key=lambda kv: (_sym_degree(kv[0]), kv[0])))

    def coefficient(self, key: SymKey) -> ScalarPoly:
        return self._terms.get(tuple(sorted(key)), ScalarPoly.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def degree_component(self, d: int) -> "FormPoly":
        return FormPoly(
            {k: c for k, c in self._terms.items() if _sym_degree(k) == d},
            self.max_form_degree,
        )

    def degree_zero_part(self) -> ScalarPoly:
        return self._terms.get((), ScalarPoly.zero())

    # -- arithmetic ----------------------------------------------------

    def _out_degree(self, other: "FormPoly") -> int:
        return min(self.max_form_degree, other.max_form_degree)

    def __add__(self, other: "FormPoly") -> "FormPoly":
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, ScalarPoly.zero()) + c
        return FormPoly(out, self._out_degree(other))

    def __sub__(self, other: "FormPoly") -> "FormPoly":
        return self + (-other)

    def __neg__(self) -> "FormPoly":
        return FormPoly({k: -c for k, c in self._terms.items()}, self.max_form_degree)

    def scale(self, c: ScalarPoly) -> "FormPoly":
        return FormPoly({k: c * v for k, v in self._terms.items()}, self.max_form_degree)

    def __mul__(self, other: "FormPoly") -> "FormPoly":
        deg = self._out_degree(other)
        out: dict[SymKey, ScalarPoly] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                key = _merge_sym(k1, k2)
                if _sym_degree(key) > deg:
                    continue
                out[key] = out.get(key, ScalarPoly.zero()) + c1 * c2
        return FormPoly(out, deg)

    def pow(self, n: int) -> "FormPoly":
        out = FormPoly.one(self.max_form_degree)
        for _ in range(n):
            out = out * self
        return out

    def subs_h2_zero(self) -> "FormPoly":
        return FormPoly(
            {k: c.subs_h2_zero() for k, c in self._terms.items()}, self.max_form_degree
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormPoly):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self) -> str:
        return f"FormPoly({self.to_text()}, max_form_degree={self.max_form_degree})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        from .exprs import form_to_text

        return form_to_text(self)

    def to_json(self) -> list:
        return [
            {"syms": {n: e for n, e in key}, "coeff": c.to_json()}
            for key, c in self.terms()
        ]


# -- generating functions ----------------------------------------------


def inv_sinh_quotient(order: int) -> TruncSeries:
    """(x/2)/sinh(x/2) as a truncated series, via series inversion.

    sinh(x/2)/(x/2) = sum_m x^(2m) / (4^m (2m+1)!) is inverted exactly.
    """
    coeffs = [ScalarPoly.zero() for _ in range(order + 1)]
    m = 0
    while 2 * m <= order:
        denom = 4**m * _fact(2 * m + 1)
        coeffs[2 * m] = ScalarPoly.from_rational(Fraction(1, denom))
        m += 1
    return series_inverse(TruncSeries(coeffs, order))


def a_hat_factor(order: int) -> TruncSeries:
    """(x/2)/sinh(x/2) evaluated at x = h1*r, as a series in r."""
    return inv_sinh_quotient(order).scale_argument(ScalarPoly.h1())


def eval_series_at_form(series: TruncSeries, s: FormPoly) -> FormPoly:
    """Substitute a nilpotent form for the series variable (finite sum)."""
    if not s.degree_zero_part().is_zero():
        raise ValueError("form substituted into a series must have no degree-0 part")
    out = FormPoly.zero(s.max_form_degree)
    power = FormPoly.one(s.max_form_degree)
    top = min(series.order, s.max_form_degree // 2)
    for k in range(top + 1):
        out = out + power.scale(series.coeffs[k])
        power = power * s
    return out


def ch_exp(symbol: FormPoly, scale: ScalarPoly) -> FormPoly:
    """exp(scale * symbol), a finite sum by nilpotency."""
    if not symbol.degree_zero_part().is_zero():
        raise ValueError("exponential argument must have no degree-0 part")
    out = FormPoly.one(symbol.max_form_degree)
    term = FormPoly.one(symbol.max_form_degree)
    scaled = symbol.scale(scale)
    for k in range(1, symbol.max_form_degree // 2 + 1):
        term = (term * scaled).scale(ScalarPoly.from_rational(Fraction(1, k)))
        out = out + term
    return out


def ch_phi_form(rn: FormPoly | None, max_form_degree: int) -> FormPoly:
    """Deformed character genus sum_k (i*rn)^k/k! * prod_l(step factors).

    The h1 of the character series cancels against the 1/h1 carried by the
    argument, leaving an h2-deformed genus in the bare symbol.
    """
    if rn is None or rn.is_zero():
        return FormPoly.one(max_form_degree)
    out = FormPoly.one(max_form_degree)
    power = FormPoly.one(max_form_degree)
    prod = ScalarPoly.one()
    i_pow = GaussianRational.of(1)
    for k in range(1, max_form_degree // 2 + 1):
        power = power * rn
        prod = prod * step_factor(k)
        i_pow = i_pow * GaussianRational.of(0, 1)
        coeff = prod.scale(i_pow).scale(GaussianRational.of(Fraction(1, _fact(k))))
        out = out + power.scale(coeff)
    return out


def index_form(
    rt_pairs: Iterable[FormPoly | None],
    theta: FormPoly | None,
    rn: FormPoly | None,
    n: int,
) -> FormPoly:
    """h1^(n-1) times the form-degree 2(n-1) component of the genus product.

    rt_pairs supplies one symplectic eigenvalue-pair symbol per base pair
    (n-1 of them); theta feeds exp(-theta/h1); rn feeds the deformed genus.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    deg = 2 * (n - 1)
    rt_pairs = list(rt_pairs)
    if len(rt_pairs) != n - 1:
        raise ValueError(f"expected {n - 1} tangent symbols, got {len(rt_pairs)}")
    total = FormPoly.one(deg)
    series = a_hat_factor(max(n - 1, 0))
    for rt in rt_pairs:
        if rt is None or rt.is_zero():
            continue
        total = total * eval_series_at_form(series, rt)
    if theta is not None and not theta.is_zero():
        total = total * ch_exp(theta, -ScalarPoly.h1(-1))
    total = total * ch_phi_form(rn, deg)
    return total.degree_component(deg).scale(ScalarPoly.h1(n - 1))


def _fact(k: int) -> int:
    out = 1
    for j in range(2, k + 1):
        out *= j
    return out


# -- the flat local model ----------------------------------------------

BaseKey = tuple[tuple[int, int], ...]  # sorted ((variable, exponent), ...)
LocalKey = tuple[BaseKey, int, int, int]  # (base, z exp, zb exp, g exp)


def base_var_id(kind: str, i: int) -> int:
    """Variable id for p_i / q_i, 1-based pair index."""
    if kind not in ("p", "q") or i < 1:
        raise ValueError(f"bad base variable {kind}{i}")
    return 2 * (i - 1) + (0 if kind == "p" else 1)


def _merge_base(k1: BaseKey, k2: BaseKey) -> BaseKey:
    acc: dict[int, int] = {}
    for v, e in k1 + k2:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in acc.items() if e != 0))


class LocalElement:
    """Element of the local model: base Weyl monomials tensor fiber words."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[LocalKey, ScalarPoly] | None = None):
        cleaned: dict[LocalKey, ScalarPoly] = {}
        if terms:
            for (base, p, q, eps), c in terms.items():
                base = tuple(sorted((v, e) for v, e in base if e != 0))
                if any(e < 0 or v < 0 for v, e in base):
                    raise ValueError("bad base exponents")
                if p < 0 or q < 0 or eps not in (0, 1):
                    raise ValueError("bad fiber exponents")
                if c.is_zero():
                    continue
                key = (base, p, q, eps)
                cleaned[key] = cleaned.get(key, ScalarPoly.zero()) + c
                if cleaned[key].is_zero():
                    del cleaned[key]
        self._terms = cleaned

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "LocalElement":
        return LocalElement()

    @staticmethod
    def one() -> "LocalElement":
        return LocalElement({((), 0, 0, 0): ScalarPoly.one()})

    @staticmethod
    def scalar(c: ScalarPoly) -> "LocalElement":
        return LocalElement({((), 0, 0, 0): c})

    @staticmethod
    def base_monomial(exps: Mapping[int, int], coeff: ScalarPoly | None = None) -> "LocalElement":
        key = tuple(sorted((v, e) for v, e in exps.items() if e != 0))
        return LocalElement(
            {(key, 0, 0, 0): coeff if coeff is not None else ScalarPoly.one()}
        )

    @staticmethod
    def base_var(kind: str, i: int, power: int = 1) -> "LocalElement":
        return LocalElement.base_monomial({base_var_id(kind, i): power})

    @staticmethod
    def from_fiber(e: SrcElement) -> "LocalElement":
        return LocalElement({((), p, q, eps): c for (p, q, eps), c in e.term_map().items()})

    @staticmethod
    def product(base: "LocalElement", fiber: SrcElement) -> "LocalElement":
        """base (fiber-free) times a fiber element, as a plain tensor."""
        out: dict[LocalKey, ScalarPoly] = {}
        for (bkey, p0, q0, e0), c0 in base._terms.items():
            if (p0, q0, e0) != (0, 0, 0):
                raise ValueError("base factor carries fiber variables")
            for (p, q, eps), c in fiber.term_map().items():
                out[(bkey, p, q, eps)] = c0 * c
        return LocalElement(out)

    # -- structure -----------------------------------------------------

    def terms(self) -> Iterator[tuple[LocalKey, ScalarPoly]]:
        return iter(
            sorted(
                self._terms.items(),
                key=lambda kv: (kv[0][3], kv[0][0], kv[0][1], kv[0][2]),
            )
        )

    def term_map(self) -> dict[LocalKey, ScalarPoly]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "LocalElement") -> "LocalElement":
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, ScalarPoly.zero()) + c
        return LocalElement(out)

    def __sub__(self, other: "LocalElement") -> "LocalElement":
        return self + (-other)

    def __neg__(self) -> "LocalElement":
        return LocalElement({k: -c for k, c in self._terms.items()})

    def scale(self, c: ScalarPoly) -> "LocalElement":
        return LocalElement({k: c * v for k, v in self._terms.items()})

    def __mul__(self, other: "LocalElement") -> "LocalElement":
        return local_star(self, other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LocalElement):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self) -> str:
        return f"LocalElement({self.to_text()})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        from .exprs import local_to_text

        return local_to_text(self)

    def fiber_part(self) -> SrcElement:
        """The fiber element of a base-free input."""
        out: dict[tuple[int, int, int], ScalarPoly] = {}
        for (base, p, q, eps), c in self._terms.items():
            if base:
                raise ValueError("element has base variables")
            out[(p, q, eps)] = c
        return SrcElement(out)


def _base_moyal(e1: BaseKey, e2: BaseKey) -> dict[BaseKey, ScalarPoly]:
    """Symmetric-ordering Weyl product of base monomials, [p_i, q_i] = h1."""
    d1, d2 = dict(e1), dict(e2)
    pair_ids = sorted({v // 2 for v in d1} | {v // 2 for v in d2})
    results: list[tuple[dict[int, int], dict[int, int], Fraction, int]] = [
        (dict(d1), dict(d2), Fraction(1), 0)
    ]
    for i in pair_ids:
        pv, qv = 2 * i, 2 * i + 1
        next_results = []
        for f1, f2, w, h in results:
            p1, q1 = f1.get(pv, 0), f1.get(qv, 0)
            p2, q2 = f2.get(pv, 0), f2.get(qv, 0)
            for a in range(min(p1, q2) + 1):
                for b in range(min(q1, p2) + 1):
                    count = Fraction(
                        _falling(p1, a) * _falling(q1, b) * _falling(q2, a) * _falling(p2, b),
                        2 ** (a + b) * _fact(a) * _fact(b),
                    )
                    if b % 2 == 1:
                        count = -count
                    g1 = dict(f1)
                    g2 = dict(f2)
                    g1[pv], g1[qv] = p1 - a, q1 - b
                    g2[pv], g2[qv] = p2 - b, q2 - a
                    next_results.append((g1, g2, w * count, h + a + b))
        results = next_results
    out: dict[BaseKey, ScalarPoly] = {}
    for f1, f2, w, h in results:
        merged: dict[int, int] = {}
        for v, e in list(f1.items()) + list(f2.items()):
            merged[v] = merged.get(v, 0) + e
        key = tuple(sorted((v, e) for v, e in merged.items() if e != 0))
        c = ScalarPoly.monomial(GaussianRational.of(w), h, 0)
        out[key] = out.get(key, ScalarPoly.zero()) + c
    return {k: c for k, c in out.items() if not c.is_zero()}


def _falling(n: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= n - j
    return out


def local_star(F: LocalElement, G: LocalElement) -> LocalElement:
    """Base Weyl product tensored with the fiber reflection-algebra product."""
    out: dict[LocalKey, ScalarPoly] = {}
    for (b1, p1, q1, e1), c1 in F.term_map().items():
        for (b2, p2, q2, e2), c2 in G.term_map().items():
            c = c1 * c2
            fiber = algebra.mul(
                SrcElement.monomial(p1, q1, e1), SrcElement.monomial(p2, q2, e2)
            )
            for bkey, bw in _base_moyal(b1, b2).items():
                for (p, q, eps), fc in fiber.term_map().items():
                    key = (bkey, p, q, eps)
                    v = c * bw * fc
                    s = out.get(key)
                    s = v if s is None else s + v
                    if s.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = s
    return LocalElement(out)


def fiber_fold(F: LocalElement) -> LocalElement:
    """Fold the fiber reflection generator onto 1 (corner identification)."""
    out: dict[LocalKey, ScalarPoly] = {}
    for (base, p, q, _eps), c in F.term_map().items():
        key = (base, p, q, 0)
        out[key] = out.get(key, ScalarPoly.zero()) + c
    return LocalElement(out)


def local_trace_density(F: LocalElement) -> LocalElement:
    """Apply the spherical trace to the fiber variables, returning a base poly.

    The input must be invariant in the fiber after folding; the output is the
    coefficient of the base volume element.
    """
    folded = fiber_fold(F)
    out: dict[LocalKey, ScalarPoly] = {}
    for (base, p, q, _eps), c in folded.term_map().items():
        if (p + q) % 2 != 0:
            raise ParityError(f"fiber part z^{p} zb^{q} is not invariant")
        if p != q:
            continue
        key = (base, 0, 0, 0)
        v = class_scalar(p) * c
        s = out.get(key)
        s = v if s is None else s + v
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s
    return LocalElement(out)
