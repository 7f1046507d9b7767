"""Normal-form arithmetic in the rank-one symplectic reflection algebra.

The algebra is generated over the scalar ring by z, zb and the reflection g,
subject to

    z*zb - zb*z = i*h1*(1 + 2*h2*g),    g*z = -z*g,    g*zb = -zb*g,    g*g = 1.

Every element has a unique normal form as a finite sum c * z^p * zb^q * g^eps.
Multiplication rewrites zb*z -> z*zb - i*h1*(1+2*h2*g) until no inversions
remain; the reordering of zb^q * z^p is memoized, keyed by (q, p).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .scalars import GaussianRational, ScalarPoly

TermKey = tuple[int, int, int]  # (z exponent, zb exponent, g exponent in {0,1})

# Memo tables for the rewriting engine.  Inserts are idempotent, so
# concurrent readers sharing these tables are safe.
_ZBQ_Z: dict[int, dict[TermKey, ScalarPoly]] = {}
_REORDER: dict[tuple[int, int], dict[TermKey, ScalarPoly]] = {}


def _acc(out: dict[TermKey, ScalarPoly], key: TermKey, value: ScalarPoly) -> None:
    s = out.get(key)
    s = value if s is None else s + value
    if s.is_zero():
        out.pop(key, None)
    else:
        out[key] = s


def _zbq_z(q: int) -> dict[TermKey, ScalarPoly]:
    """Normal form of the word zb^q z, built one rewrite step at a time."""
    cached = _ZBQ_Z.get(q)
    if cached is not None:
        return cached
    if q == 0:
        result = {(1, 0, 0): ScalarPoly.one()}
        _ZBQ_Z[q] = result
        return result
    minus_ih1 = ScalarPoly.monomial(GaussianRational.of(0, -1), 1, 0)
    out: dict[TermKey, ScalarPoly] = {}
    for (a, b, eps), c in _zbq_z(q - 1).items():
        if a == 0:
            _acc(out, (0, b + 1, eps), c)
        else:
            # zb * z * zb^b g^eps, one application of
            # zb z -> z zb - i h1 (1 + 2 h2 g), with g zb^b = (-1)^b zb^b g
            _acc(out, (1, b + 1, eps), c)
            _acc(out, (0, b, eps), minus_ih1 * c)
            two_h2 = ScalarPoly.monomial(GaussianRational.of(2 * (-1) ** b), 0, 1)
            _acc(out, (0, b, eps ^ 1), minus_ih1 * two_h2 * c)
    _ZBQ_Z[q] = out
    return out


def _reorder(q: int, p: int) -> dict[TermKey, ScalarPoly]:
    """Normal form of the word zb^q z^p as a term map, memoized by (q, p)."""
    cached = _REORDER.get((q, p))
    if cached is not None:
        return cached
    if q == 0 or p == 0:
        result = {(p, q, 0): ScalarPoly.one()}
        _REORDER[(q, p)] = result
        return result
    # zb^q z^p = (zb^q z) z^(p-1); normalize the tail of each resulting word.
    out: dict[TermKey, ScalarPoly] = {}
    for (a, b, eps), c in _zbq_z(q).items():
        sign = -1 if (eps == 1 and (p - 1) % 2 == 1) else 1
        cc = c if sign == 1 else -c
        for (x, y, e2), r in _reorder(b, p - 1).items():
            _acc(out, (x + a, y, e2 ^ eps), cc * r)
    _REORDER[(q, p)] = out
    return out


class SrcElement:
    """Element of the reflection algebra in normal form.

    Term map from (p, q, eps) to a ScalarPoly coefficient, standing for
    coeff * z^p * zb^q * g^eps.  Instances are treated as immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[TermKey, ScalarPoly] | None = None):
        cleaned: dict[TermKey, ScalarPoly] = {}
        if terms:
            for (p, q, eps), c in terms.items():
                if p < 0 or q < 0 or eps not in (0, 1):
                    raise ValueError(f"bad term key {(p, q, eps)}")
                if not c.is_zero():
                    cleaned[(p, q, eps)] = c
        self._terms = cleaned

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "SrcElement":
        return SrcElement()

    @staticmethod
    def one() -> "SrcElement":
        return SrcElement({(0, 0, 0): ScalarPoly.one()})

    @staticmethod
    def scalar(c: ScalarPoly) -> "SrcElement":
        return SrcElement({(0, 0, 0): c})

    @staticmethod
    def z(p: int = 1) -> "SrcElement":
        return SrcElement({(p, 0, 0): ScalarPoly.one()})

    @staticmethod
    def zb(q: int = 1) -> "SrcElement":
        return SrcElement({(0, q, 0): ScalarPoly.one()})

    @staticmethod
    def gamma() -> "SrcElement":
        return SrcElement({(0, 0, 1): ScalarPoly.one()})

    @staticmethod
    def monomial(p: int, q: int, eps: int = 0, coeff: ScalarPoly | None = None) -> "SrcElement":
        return SrcElement({(p, q, eps): coeff if coeff is not None else ScalarPoly.one()})

    @staticmethod
    def x() -> "SrcElement":
        """x = (z + zb)/2."""
        h = ScalarPoly.from_rational(Fraction(1, 2))
        return SrcElement({(1, 0, 0): h, (0, 1, 0): h})

    @staticmethod
    def y() -> "SrcElement":
        """y = (z - zb)/(2i) = -i/2 z + i/2 zb."""
        mi2 = ScalarPoly.from_rational(0, Fraction(-1, 2))
        pi2 = ScalarPoly.from_rational(0, Fraction(1, 2))
        return SrcElement({(1, 0, 0): mi2, (0, 1, 0): pi2})

    # -- queries -------------------------------------------------------

    def terms(self) -> Iterator[tuple[TermKey, ScalarPoly]]:
        """Terms in canonical lexicographic (eps, p, q) order."""
        return iter(sorted(self._terms.items(), key=lambda kv: (kv[0][2], kv[0][0], kv[0][1])))

    def term_map(self) -> dict[TermKey, ScalarPoly]:
        return dict(self._terms)

    def coefficient(self, p: int, q: int, eps: int = 0) -> ScalarPoly:
        return self._terms.get((p, q, eps), ScalarPoly.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def gamma_free(self) -> bool:
        return all(eps == 0 for (_p, _q, eps) in self._terms)

    def h2_bounded_by_h1(self) -> bool:
        return all(c.h2_bounded_by_h1() for c in self._terms.values())

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "SrcElement") -> "SrcElement":
        out = dict(self._terms)
        for key, c in other._terms.items():
            s = out.get(key)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return SrcElement(out)

    def __sub__(self, other: "SrcElement") -> "SrcElement":
        return self + (-other)

    def __neg__(self) -> "SrcElement":
        return SrcElement({k: -c for k, c in self._terms.items()})

    def scale(self, c: ScalarPoly) -> "SrcElement":
        return SrcElement({k: c * v for k, v in self._terms.items()})

    def __mul__(self, other: "SrcElement") -> "SrcElement":
        return mul(self, other)

    def pow(self, n: int) -> "SrcElement":
        if n < 0:
            raise ValueError("negative powers are not defined in the algebra")
        out = SrcElement.one()
        for _ in range(n):
            out = mul(out, self)
        return out

    def subs_h2_zero(self) -> "SrcElement":
        return SrcElement({k: c.subs_h2_zero() for k, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SrcElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(sorted((k, hash(c)) for k, c in self._terms.items())))

    def __repr__(self) -> str:
        return f"SrcElement({self.to_text()})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self) -> str:
        from .exprs import element_to_text

        return element_to_text(self)

    def to_json(self) -> list:
        return [
            {"z": p, "zb": q, "g": eps, "coeff": c.to_json()}
            for (p, q, eps), c in self.terms()
        ]

    @staticmethod
    def from_json(data: Iterable) -> "SrcElement":
        return SrcElement(
            {(t["z"], t["zb"], t["g"]): ScalarPoly.from_json(t["coeff"]) for t in data}
        )


def mul(a: SrcElement, b: SrcElement) -> SrcElement:
    """Exact product in normal form."""
    out: dict[TermKey, ScalarPoly] = {}
    for (p1, q1, e1), c1 in a._terms.items():
        for (p2, q2, e2), c2 in b._terms.items():
            c = c1 * c2
            # g^e1 crosses z^p2 zb^q2, picking up a sign per generator crossed
            if e1 == 1 and (p2 + q2) % 2 == 1:
                c = -c
            for (x_, y_, eps), r in _reorder(q1, p2).items():
                # the inner g (if any) still has to cross zb^q2
                cc = c * r
                if eps == 1 and q2 % 2 == 1:
                    cc = -cc
                key = (p1 + x_, y_ + q2, eps ^ e1 ^ e2)
                s = out.get(key)
                s = cc if s is None else s + cc
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
    return SrcElement(out)


def commutator(a: SrcElement, b: SrcElement) -> SrcElement:
    return mul(a, b) - mul(b, a)


def from_xy(words: Iterable[tuple[ScalarPoly, Iterable[str]]]) -> SrcElement:
    """Evaluate a sum of coefficiented words in the generators x, y, g.

    Substitutes x = (z+zb)/2 and y = (z-zb)/(2i) and normalizes.  Each word
    is an ordered sequence of atom names from {"x", "y", "g", "z", "zb"}.
    """
    atoms = {
        "x": SrcElement.x(),
        "y": SrcElement.y(),
        "g": SrcElement.gamma(),
        "z": SrcElement.z(),
        "zb": SrcElement.zb(),
    }
    total = SrcElement.zero()
    for coeff, word in words:
        acc = SrcElement.scalar(coeff)
        for atom in word:
            acc = mul(acc, atoms[atom])
        total = total + acc
    return total


def homogeneous_component(a: SrcElement, d: int) -> SrcElement:
    """The degree-d part under the grading |z| = |zb| = 1, |h1| = 2, |h2| = |g| = 0."""
    out: dict[TermKey, ScalarPoly] = {}
    for (p, q, eps), c in a._terms.items():
        kept = {
            (h1, h2): coeff
            for (h1, h2), coeff in c.terms()
            if p + q + 2 * h1 == d
        }
        if kept:
            out[(p, q, eps)] = ScalarPoly(kept)
    return SrcElement(out)


def idempotent() -> SrcElement:
    """The symmetrizing idempotent (1 + g)/2."""
    h = ScalarPoly.from_rational(Fraction(1, 2))
    return SrcElement({(0, 0, 0): h, (0, 0, 1): h})
