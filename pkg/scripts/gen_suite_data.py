#!/usr/bin/env python3
"""Regenerate the bundled suite data files.

The expected values here come from the closed-form right-hand sides of the
commutation identities and from independent Fraction arithmetic; the product
engine is never invoked, so the data files stay a genuinely independent side
of each check.  The engine's canonical printer is used for formatting only.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from dunklweyl.algebra import SrcElement
from dunklweyl.exprs import element_to_text, scalar_to_text
from dunklweyl.scalars import GaussianRational, ScalarPoly

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "dunklweyl" / "data" / "suites"


def ih1(mult: Fraction | int, h2: int = 0) -> ScalarPoly:
    return ScalarPoly.monomial(GaussianRational.of(0, Fraction(mult)), 1, h2)


def relations_cases() -> list[dict]:
    cases = []

    def add(cid: str, op: str, args: list[str], expected: SrcElement) -> None:
        cases.append(
            {"id": cid, "op": op, "args": args, "expected": element_to_text(expected)}
        )

    # [z, zb] = i h1 (1 + 2 h2 g)
    base_comm = SrcElement.monomial(0, 0, 0, ih1(1)) + SrcElement.monomial(0, 0, 1, ih1(2, 1))
    add("defining-comm", "comm", ["z", "zb"], base_comm)
    add("defining-comm-nf", "nf", ["z*zb - zb*z"], base_comm)

    # [z^2, zb] = 2 i h1 z
    add("comm-z2-zb", "comm", ["z^2", "zb"], SrcElement.monomial(1, 0, 0, ih1(2)))

    # [z, zb^q] = q i h1 zb^(q-1) + i h1 h2 (1 - (-1)^q) zb^(q-1) g
    for q in range(1, 9):
        expected = SrcElement.monomial(0, q - 1, 0, ih1(q))
        if q % 2 == 1:
            expected = expected + SrcElement.monomial(0, q - 1, 1, ih1(2, 1))
        add(f"comm-z-zbq-{q}", "comm", ["z", f"zb^{q}"], expected)

    # [z^2/(2 i h1), zb^p]
    #   = p z zb^(p-1) - p(p-1)/2 i h1 zb^(p-2) - 2 i h1 h2 (-1)^p floor(p/2) zb^(p-2) g
    half_over_ih1 = "-1/2*i*h1^-1*z^2"
    for p in range(2, 9):
        expected = (
            SrcElement.monomial(1, p - 1, 0, ScalarPoly.from_rational(p))
            + SrcElement.monomial(0, p - 2, 0, ih1(-Fraction(p * (p - 1), 2)))
            + SrcElement.monomial(0, p - 2, 1, ih1(-2 * ((-1) ** p) * (p // 2), 1))
        )
        add(f"comm-scaled-z2-zbp-{p}", "comm", [half_over_ih1, f"zb^{p}"], expected)

    # [z^2/(2 i h1), z^(p-2) zb^p]: same scalars, shifted by z^(p-2)
    for p in range(2, 9):
        expected = (
            SrcElement.monomial(p - 1, p - 1, 0, ScalarPoly.from_rational(p))
            + SrcElement.monomial(p - 2, p - 2, 0, ih1(-Fraction(p * (p - 1), 2)))
            + SrcElement.monomial(p - 2, p - 2, 1, ih1(-2 * ((-1) ** p) * (p // 2), 1))
        )
        rhs = f"zb^{p}" if p == 2 else f"z^{p-2}*zb^{p}"
        add(f"comm-scaled-z2-mixed-{p}", "comm", [half_over_ih1, rhs], expected)

    # reflection rules and the x,y presentation of the defining relation
    add("gamma-square", "mul", ["g", "g"], SrcElement.one())
    add(
        "gamma-z",
        "mul",
        ["g", "z"],
        SrcElement.monomial(1, 0, 1, ScalarPoly.from_rational(-1)),
    )
    add(
        "xy-relation",
        "nf",
        ["y*x - x*y"],
        SrcElement.monomial(0, 0, 0, ScalarPoly.from_rational(Fraction(1, 2)) * ScalarPoly.h1())
        + SrcElement.monomial(0, 0, 1, ScalarPoly.h1() * ScalarPoly.h2()),
    )
    return cases


def chphi_coefficients(order: int = 6) -> dict[str, str]:
    """Coefficient of t^k: i^k h1^k / k! * prod_l (l/2 + (-1)^(l+1) 2 floor((l+1)/2) h2 / (l+1)).

    The product over l is expanded by hand as a polynomial in h2 with
    Fraction coefficients (list convolution).
    """
    out = {}
    prod = [Fraction(1)]  # h2-coefficient list of the running product
    fact = 1
    i_cycle = [(1, 0), (0, 1), (-1, 0), (0, -1)]  # powers of i
    for k in range(order + 1):
        if k:
            fact *= k
            lin = [
                Fraction(k, 2),
                Fraction(2 * ((k + 1) // 2), k + 1) * ((-1) ** (k + 1)),
            ]
            new = [Fraction(0)] * (len(prod) + 1)
            for a, ca in enumerate(prod):
                for b, cb in enumerate(lin):
                    new[a + b] += ca * cb
            prod = new
        re_i, im_i = i_cycle[k % 4]
        terms = {}
        for j, cj in enumerate(prod):
            if cj == 0:
                continue
            coeff = GaussianRational.of(Fraction(re_i) * cj / fact, Fraction(im_i) * cj / fact)
            terms[(k, j)] = coeff
        out[str(k)] = scalar_to_text(ScalarPoly(terms))
    return out


def inv_sinh_data(order: int = 8) -> dict[str, str]:
    """Invert sum_m x^(2m) / (4^m (2m+1)!) by the standard recurrence."""
    f = [Fraction(0)] * (order + 1)
    m = 0
    while 2 * m <= order:
        denom = 4**m
        fact = 1
        for j in range(2, 2 * m + 2):
            fact *= j
        f[2 * m] = Fraction(1, denom * fact)
        m += 1
    g = [Fraction(1)] + [Fraction(0)] * order
    for n in range(1, order + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            acc += f[k] * g[n - k]
        g[n] = -acc
    return {str(k): str(g[k]) for k in range(order + 1)}


def main() -> None:
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    (DATA_DIR / "relations.json").write_text(
        json.dumps({"cases": relations_cases()}, indent=2) + "\n"
    )
    (DATA_DIR / "chphi.json").write_text(
        json.dumps({"coefficients": chphi_coefficients(8)}, indent=2) + "\n"
    )
    (DATA_DIR / "series.json").write_text(
        json.dumps({"inv_sinh_quotient": inv_sinh_data(8)}, indent=2) + "\n"
    )
    print(f"wrote data files to {DATA_DIR}")


if __name__ == "__main__":
    main()
