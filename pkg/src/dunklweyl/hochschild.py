"""Constructive reduction of invariant monomials to scalars, with receipts.

Every invariant monomial m equals phi(m)*1 plus an explicit combination of
star commutators.  A Certificate records that combination; check_certificate
replays it through the star-product engine and accepts only exact equality.
Monomials z^p zb^q with p != q reduce in one step against z*zb (they have a
nonzero rotation weight); diagonal monomials z^k zb^k walk down one degree at
a time against z^2, dividing by 2*i*h1 once per step.

Certificates serialize to JSON using the canonical text forms, so a fresh
process can replay them with nothing but the parser and the star product.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .scalars import GaussianRational, ScalarPoly
from .spherical import InvariantPoly, ParityError, invariant_monomials, star_commutator
from .trace import class_scalar, phi, recursion_scalar

MAX_REPORT_DEGREE = 24


@dataclass(frozen=True)
class Witness:
    """One commutator summand: coeff * (left star right - right star left)."""

    coeff: ScalarPoly
    left: InvariantPoly
    right: InvariantPoly


@dataclass(frozen=True)
class Certificate:
    """Witness that target - scalar*1 lies in the span of star commutators."""

    target: InvariantPoly
    scalar: ScalarPoly
    witnesses: tuple[Witness, ...]

    def to_json_dict(self) -> dict:
        return {
            "target": self.target.to_text(),
            "scalar": self.scalar.to_text(),
            "witnesses": [
                {
                    "coeff": w.coeff.to_text(),
                    "left": w.left.to_text(),
                    "right": w.right.to_text(),
                }
                for w in self.witnesses
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @staticmethod
    def from_json_dict(data: dict) -> "Certificate":
        from .exprs import parse_invariant, parse_scalar

        return Certificate(
            target=parse_invariant(data["target"]),
            scalar=parse_scalar(data["scalar"]),
            witnesses=tuple(
                Witness(
                    coeff=parse_scalar(w["coeff"]),
                    left=parse_invariant(w["left"]),
                    right=parse_invariant(w["right"]),
                )
                for w in data["witnesses"]
            ),
        )

    @staticmethod
    def from_json(text: str) -> "Certificate":
        return Certificate.from_json_dict(json.loads(text))


def reduce_certificate(p: int, q: int) -> Certificate:
    """Certificate for the invariant monomial z^p zb^q."""
    if p < 0 or q < 0 or (p + q) % 2 != 0:
        raise ParityError(f"z^{p} zb^{q} is not an invariant monomial")
    target = InvariantPoly.monomial(p, q)
    if p != q:
        # z^p zb^q = [z^p zb^q, z zb] / (i h1 (p - q))
        coeff = ScalarPoly.monomial(GaussianRational.of(0, p - q), 1, 0).invert_monomial()
        witness = Witness(coeff=coeff, left=target, right=InvariantPoly.zzbar())
        return Certificate(target=target, scalar=ScalarPoly.zero(), witnesses=(witness,))
    # Diagonal: peel z^j zb^j down to z^(j-1) zb^(j-1) via
    #   z^j zb^j - c_j z^(j-1) zb^(j-1) = [z^2, z^(j-1) zb^(j+1)] / (2 i h1 (j+1))
    witnesses = []
    tail = ScalarPoly.one()  # product of c_l for l > j
    for j in range(p, 0, -1):
        divisor = ScalarPoly.monomial(GaussianRational.of(0, 2 * (j + 1)), 1, 0)
        coeff = tail * divisor.invert_monomial()
        witnesses.append(
            Witness(
                coeff=coeff,
                left=InvariantPoly.monomial(2, 0),
                right=InvariantPoly.monomial(j - 1, j + 1),
            )
        )
        tail = tail * recursion_scalar(j)
    return Certificate(target=target, scalar=class_scalar(p), witnesses=tuple(witnesses))


def check_certificate(cert: Certificate) -> bool:
    """Replay the witnesses through the star engine; exact equality only."""
    acc = InvariantPoly.zero()
    for w in cert.witnesses:
        acc = acc + star_commutator(w.left, w.right).scale(w.coeff)
    lhs = cert.target - InvariantPoly.one().scale(cert.scalar)
    return lhs == acc


@dataclass(frozen=True)
class Hh0Entry:
    monomial: str
    scalar: str
    checked: bool
    matches_phi: bool

    @property
    def ok(self) -> bool:
        return self.checked and self.matches_phi


@dataclass(frozen=True)
class Hh0Report:
    max_degree: int
    entries: tuple[Hh0Entry, ...] = field(default_factory=tuple)

    @property
    def all_ok(self) -> bool:
        return all(e.ok for e in self.entries)

    @property
    def failures(self) -> list[Hh0Entry]:
        return [e for e in self.entries if not e.ok]

    def to_json_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "all_ok": self.all_ok,
            "entries": [
                {
                    "monomial": e.monomial,
                    "scalar": e.scalar,
                    "checked": e.checked,
                    "matches_phi": e.matches_phi,
                }
                for e in self.entries
            ],
        }


def hh0_report(max_degree: int) -> Hh0Report:
    """Certify every invariant monomial of degree <= max_degree against phi."""
    if max_degree % 2 != 0:
        raise ValueError("max_degree must be even")
    if max_degree > MAX_REPORT_DEGREE:
        raise ValueError(f"max_degree capped at {MAX_REPORT_DEGREE}")
    entries = []
    for mono in invariant_monomials(max_degree):
        ((p, q), _c), = mono.terms()
        cert = reduce_certificate(p, q)
        entries.append(
            Hh0Entry(
                monomial=mono.to_text(),
                scalar=cert.scalar.to_text(),
                checked=check_certificate(cert),
                matches_phi=cert.scalar == phi(mono),
            )
        )
    return Hh0Report(max_degree=max_degree, entries=tuple(entries))
