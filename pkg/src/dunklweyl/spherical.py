"""The spherical (invariant) subalgebra and its induced star product.

Invariant polynomials in z, zb (every monomial of even total degree) form a
subalgebra once identified with the corner cut out by the idempotent
e = (1+g)/2: the polynomial f corresponds to f*e, and the product of the big
algebra transports to a star product on invariant polynomials.  Extraction
folds the reflection generator onto the identity (g*e = e).

An independent closed-form Moyal product on the same polynomials serves as
the degeneration oracle at h2 = 0.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from . import algebra
from .algebra import SrcElement
from .scalars import GaussianRational, ScalarPoly

PairKey = tuple[int, int]


class ParityError(ValueError):
    """Raised when a polynomial is not invariant under z, zb -> -z, -zb."""


class ExtractionError(RuntimeError):
    """Internal consistency failure: a product left the invariant corner."""


class InvariantPoly:
    """Invariant polynomial: term map (p, q) -> ScalarPoly with p + q even."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[PairKey, ScalarPoly] | None = None):
        cleaned: dict[PairKey, ScalarPoly] = {}
        if terms:
            for (p, q), c in terms.items():
                if p < 0 or q < 0:
                    raise ValueError(f"bad exponents {(p, q)}")
                if (p + q) % 2 != 0:
                    raise ParityError(f"monomial z^{p} zb^{q} is not invariant")
                if not c.is_zero():
                    cleaned[(p, q)] = c
        self._terms = cleaned

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "InvariantPoly":
        return InvariantPoly()

    @staticmethod
    def one() -> "InvariantPoly":
        return InvariantPoly({(0, 0): ScalarPoly.one()})

    @staticmethod
    def monomial(p: int, q: int, coeff: ScalarPoly | None = None) -> "InvariantPoly":
        return InvariantPoly({(p, q): coeff if coeff is not None else ScalarPoly.one()})

    @staticmethod
    def zzbar() -> "InvariantPoly":
        return InvariantPoly.monomial(1, 1)

    @staticmethod
    def from_element(e: SrcElement) -> "InvariantPoly":
        """Read an invariant polynomial off a reflection-free element."""
        if not e.gamma_free():
            raise ParityError("element carries the reflection generator")
        return InvariantPoly({(p, q): c for (p, q, _eps), c in e.term_map().items()})

    # -- queries -------------------------------------------------------

    def terms(self) -> Iterator[tuple[PairKey, ScalarPoly]]:
        return iter(sorted(self._terms.items()))

    def term_map(self) -> dict[PairKey, ScalarPoly]:
        return dict(self._terms)

    def coefficient(self, p: int, q: int) -> ScalarPoly:
        return self._terms.get((p, q), ScalarPoly.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((p + q for (p, q) in self._terms), default=0)

    # -- linear structure ----------------------------------------------

    def __add__(self, other: "InvariantPoly") -> "InvariantPoly":
        out = dict(self._terms)
        for key, c in other._terms.items():
            s = out.get(key)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return InvariantPoly(out)

    def __sub__(self, other: "InvariantPoly") -> "InvariantPoly":
        return self + (-other)

    def __neg__(self) -> "InvariantPoly":
        return InvariantPoly({k: -c for k, c in self._terms.items()})

    def scale(self, c: ScalarPoly) -> "InvariantPoly":
        return InvariantPoly({k: c * v for k, v in self._terms.items()})

    def poly_mul(self, other: "InvariantPoly") -> "InvariantPoly":
        """Plain commutative polynomial product (no star corrections)."""
        out: dict[PairKey, ScalarPoly] = {}
        for (p1, q1), c1 in self._terms.items():
            for (p2, q2), c2 in other._terms.items():
                key = (p1 + p2, q1 + q2)
                s = out.get(key)
                v = c1 * c2
                s = v if s is None else s + v
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return InvariantPoly(out)

    def poly_pow(self, n: int) -> "InvariantPoly":
        out = InvariantPoly.one()
        for _ in range(n):
            out = out.poly_mul(self)
        return out

    def subs_h2_zero(self) -> "InvariantPoly":
        return InvariantPoly({k: c.subs_h2_zero() for k, c in self._terms.items()})

    def to_element(self) -> SrcElement:
        """The normal-form word with the same exponents (reflection-free)."""
        return SrcElement({(p, q, 0): c for (p, q), c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, InvariantPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(sorted((k, hash(c)) for k, c in self._terms.items())))

    def __repr__(self) -> str:
        return f"InvariantPoly({self.to_text()})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        from .exprs import invariant_to_text

        return invariant_to_text(self)

    def to_json(self) -> list:
        return [{"z": p, "zb": q, "coeff": c.to_json()} for (p, q), c in self.terms()]

    @staticmethod
    def from_json(data: Iterable) -> "InvariantPoly":
        return InvariantPoly(
            {(t["z"], t["zb"]): ScalarPoly.from_json(t["coeff"]) for t in data}
        )


def embed(f: InvariantPoly) -> SrcElement:
    """f as the corner element f*e, with e = (1+g)/2."""
    return algebra.mul(f.to_element(), algebra.idempotent())


def _fold(e: SrcElement) -> InvariantPoly:
    """Fold g onto 1 (g*e = e) and read off the invariant polynomial."""
    out: dict[PairKey, ScalarPoly] = {}
    for (p, q, _eps), c in e.term_map().items():
        if (p + q) % 2 != 0:
            raise ExtractionError(f"non-invariant residue z^{p} zb^{q}")
        key = (p, q)
        s = out.get(key)
        s = c if s is None else s + c
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s
    return InvariantPoly(out)


def star(f: InvariantPoly, g: InvariantPoly) -> InvariantPoly:
    """The induced star product: the unique h with embed(h) = embed(f)*embed(g).

    Computed by multiplying the reflection-free words in the big algebra and
    folding the reflection generator; on the invariant corner the fold is a
    homomorphism, so this agrees with corner multiplication.
    """
    return _fold(algebra.mul(f.to_element(), g.to_element()))


def star_commutator(f: InvariantPoly, g: InvariantPoly) -> InvariantPoly:
    return star(f, g) - star(g, f)


def euler_derivation(g: InvariantPoly) -> InvariantPoly:
    """i*h1*(z d/dz - zb d/dzb): diagonal with eigenvalue i*h1*(p - q).

    Contract: euler_derivation(g) == star(g, zzbar) - star(zzbar, g).  Note
    the orientation; with the commutation relation used here the weight of
    the star commutator taken the other way round is i*h1*(q - p).
    """
    out: dict[PairKey, ScalarPoly] = {}
    for (p, q), c in g.term_map().items():
        if p == q:
            continue
        out[(p, q)] = ScalarPoly.monomial(GaussianRational.of(0, p - q), 1, 0) * c
    return InvariantPoly(out)


def _falling(n: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= n - j
    return out


def moyal_star(
    f: InvariantPoly, g: InvariantPoly, ordering: str = "standard"
) -> InvariantPoly:
    """Closed-form Weyl-algebra product with [z, zb] = i*h1 (no h2).

    This is the degeneration oracle: an independent bidifferential formula,
    sharing no code with the rewriting engine.

    ordering="standard" differentiates the left factor in zb and the right
    factor in z:

        f * g = sum_k (-i*h1)^k / k! * (d^k f / d zb^k) (d^k g / d z^k),

    which matches the normal-ordered identification used by the star
    transport (z before zb), so the h2 -> 0 degeneration is exact.

    ordering="symmetric" is the Weyl-symmetrized alternative with
    z*zb = zzb + i*h1/2 and zb*z = zzb - i*h1/2; it quantizes the same
    bracket in a different identification and is kept for comparison.
    """
    if ordering == "standard":
        return _moyal_standard(f, g)
    if ordering == "symmetric":
        return _moyal_symmetric(f, g)
    raise ValueError(f"unknown ordering {ordering!r}")


def _factorial(k: int) -> int:
    out = 1
    for j in range(2, k + 1):
        out *= j
    return out


def _moyal_standard(f: InvariantPoly, g: InvariantPoly) -> InvariantPoly:
    acc: dict[PairKey, ScalarPoly] = {}
    minus_ih1 = ScalarPoly.monomial(GaussianRational.of(0, -1), 1, 0)
    for (p1, q1), c1 in f.term_map().items():
        for (p2, q2), c2 in g.term_map().items():
            base = c1 * c2
            for k in range(min(q1, p2) + 1):
                count = Fraction(_falling(q1, k) * _falling(p2, k), _factorial(k))
                weight = minus_ih1.pow(k).scale(GaussianRational.of(count))
                key = (p1 + p2 - k, q1 + q2 - k)
                s = acc.get(key)
                v = weight * base
                s = v if s is None else s + v
                if s.is_zero():
                    acc.pop(key, None)
                else:
                    acc[key] = s
    return InvariantPoly(acc)


def _moyal_symmetric(f: InvariantPoly, g: InvariantPoly) -> InvariantPoly:
    acc: dict[PairKey, ScalarPoly] = {}
    ih1_half = ScalarPoly.monomial(GaussianRational.of(0, Fraction(1, 2)), 1, 0)
    for (p1, q1), c1 in f.term_map().items():
        for (p2, q2), c2 in g.term_map().items():
            base = c1 * c2
            for a in range(p1 + 1):
                for b in range(q1 + 1):
                    if b > p2 or a > q2:
                        continue
                    count = Fraction(
                        _falling(p1, a) * _falling(q1, b) * _falling(q2, a) * _falling(p2, b),
                        _factorial(a) * _factorial(b),
                    )
                    if b % 2 == 1:
                        count = -count
                    weight = ih1_half.pow(a + b).scale(GaussianRational.of(count))
                    key = (p1 - a + p2 - b, q1 - b + q2 - a)
                    s = acc.get(key)
                    v = weight * base
                    s = v if s is None else s + v
                    if s.is_zero():
                        acc.pop(key, None)
                    else:
                        acc[key] = s
    return InvariantPoly(acc)


def invariant_monomials(max_degree: int) -> list[InvariantPoly]:
    """All invariant monomials of total degree <= max_degree, in degree order."""
    out = []
    for d in range(0, max_degree + 1, 2):
        for p in range(d, -1, -1):
            out.append(InvariantPoly.monomial(p, d - p))
    return out
