"""Named verification suites with machine-readable reports.

Each suite is a list of cases; a case compares an engine computation against
an expected canonical form (from the bundled data files where the expected
value is a concrete constant, structurally otherwise).  Cases can run in
parallel; reports are assembled in sorted case-id order so identical
configurations produce identical reports.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Callable, Iterable

from . import exprs
from .algebra import SrcElement, commutator, mul
from .hochschild import check_certificate, reduce_certificate
from .index import inv_sinh_quotient
from .scalars import (
    GaussianRational,
    ScalarPoly,
    TruncSeries,
    series_exp,
    series_inverse,
    series_log,
    series_sqrt,
)
from .spherical import (
    InvariantPoly,
    euler_derivation,
    invariant_monomials,
    moyal_star,
    star,
    star_commutator,
)
from .trace import ch_phi, phi, trace_defect

SUITE_NAMES = (
    "relations",
    "trace",
    "hh0",
    "degeneration",
    "euler",
    "chphi",
    "series",
    "roundtrip",
)


@dataclass(frozen=True)
class RunConfig:
    """Knobs shared by the CLI and the suites; defaults are deterministic."""

    fmt: str = "text"
    degree: int = 8
    order: int = 6
    seed: int = 0
    jobs: int = 1
    h2_zero: bool = False


@dataclass(frozen=True)
class Case:
    id: str
    ok: bool
    expected: str
    actual: str


@dataclass
class Report:
    suite: str
    cases: list[Case]
    wall_ms: float
    config: RunConfig

    @property
    def passed(self) -> int:
        return sum(1 for c in self.cases if c.ok)

    @property
    def failed(self) -> int:
        return sum(1 for c in self.cases if not c.ok)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json_dict(self) -> dict:
        return {
            "schema": "dunkl-report/1",
            "suite": self.suite,
            "config": asdict(self.config),
            "cases": [asdict(c) for c in self.cases],
            "passed": self.passed,
            "failed": self.failed,
            "wall_ms": self.wall_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    def to_text(self) -> str:
        lines = [f"suite {self.suite}: {self.passed}/{len(self.cases)} passed"]
        for c in self.cases:
            if c.ok:
                lines.append(f"  ok   {c.id}")
            else:
                lines.append(f"  FAIL {c.id}: expected {c.expected} ; got {c.actual}")
        lines.append(f"  wall {self.wall_ms:.1f} ms")
        return "\n".join(lines)


Thunk = Callable[[], tuple[bool, str, str]]


def _run(suite: str, cfg: RunConfig, work: list[tuple[str, Thunk]]) -> Report:
    start = time.perf_counter()

    def run_one(item: tuple[str, Thunk]) -> Case:
        case_id, thunk = item
        try:
            ok, expected, actual = thunk()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, expected, actual = False, "(no error)", f"{type(exc).__name__}: {exc}"
        return Case(id=case_id, ok=ok, expected=expected, actual=actual)

    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            cases = list(pool.map(run_one, work))
    else:
        cases = [run_one(item) for item in work]
    cases.sort(key=lambda c: c.id)
    wall_ms = (time.perf_counter() - start) * 1000.0
    return Report(suite=suite, cases=cases, wall_ms=wall_ms, config=cfg)


def _load_data(name: str) -> dict:
    path = resources.files("dunklweyl").joinpath(f"data/suites/{name}")
    return json.loads(path.read_text())


def _eq_case(expected, actual) -> tuple[bool, str, str]:
    e, a = str(expected), str(actual)
    return e == a, e, a


# -- individual suites ----------------------------------------------------


def suite_relations(cfg: RunConfig) -> Report:
    """Defining relations and the commutator identities, from the data file."""
    data = _load_data("relations.json")
    work: list[tuple[str, Thunk]] = []
    for case in data["cases"]:
        cid, kind, args, expected = case["id"], case["op"], case["args"], case["expected"]

        def thunk(kind=kind, args=args, expected=expected) -> tuple[bool, str, str]:
            vals = [exprs.parse_element(a) for a in args]
            if kind == "comm":
                result = commutator(vals[0], vals[1])
            elif kind == "mul":
                result = mul(vals[0], vals[1])
            elif kind == "nf":
                result = vals[0]
            else:
                raise ValueError(f"unknown op {kind}")
            return _eq_case(expected, exprs.element_to_text(result))

        work.append((cid, thunk))
    return _run("relations", cfg, work)


def _pairs_total_degree(limit: int) -> Iterable[tuple[InvariantPoly, InvariantPoly]]:
    for m1 in invariant_monomials(limit):
        for m2 in invariant_monomials(limit - m1.degree()):
            yield m1, m2


def suite_trace(cfg: RunConfig) -> Report:
    """phi vanishes on star commutators: all pairs of total degree <= degree."""
    work = []
    for m1, m2 in _pairs_total_degree(cfg.degree):
        cid = f"tracedefect[{m1.to_text()};{m2.to_text()}]"

        def thunk(m1=m1, m2=m2):
            return _eq_case("0", trace_defect(m1, m2).to_text())

        work.append((cid, thunk))
    return _run("trace", cfg, work)


def suite_hh0(cfg: RunConfig) -> Report:
    """Certificates replay exactly and their scalars equal phi."""
    degree = cfg.degree if cfg.degree % 2 == 0 else cfg.degree - 1
    work = []
    for m in invariant_monomials(degree):
        ((p, q), _c), = m.terms()
        cid = f"hh0[z^{p}*zb^{q}]"

        def thunk(m=m, p=p, q=q):
            cert = reduce_certificate(p, q)
            if not check_certificate(cert):
                return False, "replay ok", "replay failed"
            return _eq_case(phi(m).to_text(), cert.scalar.to_text())

        work.append((cid, thunk))
    return _run("hh0", cfg, work)


def suite_degeneration(cfg: RunConfig) -> Report:
    """star at h2=0 equals the closed-form product, each factor <= degree."""
    monos = invariant_monomials(cfg.degree)
    work = []
    for m1 in monos:
        for m2 in monos:
            cid = f"degen[{m1.to_text()};{m2.to_text()}]"

            def thunk(m1=m1, m2=m2):
                lhs = star(m1, m2).subs_h2_zero()
                rhs = moyal_star(m1, m2, ordering="standard")
                return _eq_case(rhs.to_text(), lhs.to_text())

            work.append((cid, thunk))
    return _run("degeneration", cfg, work)


def suite_euler(cfg: RunConfig) -> Report:
    """Rotation weights: [m, z*zb] under star is i*h1*(p-q)*m, and matches
    the closed-form derivation."""
    zzb = InvariantPoly.zzbar()
    work = []
    for m in invariant_monomials(cfg.degree):
        ((p, q), _c), = m.terms()
        cid = f"euler[z^{p}*zb^{q}]"

        def thunk(m=m, p=p, q=q):
            got = star_commutator(m, zzb)
            want = m.scale(ScalarPoly.monomial(GaussianRational.of(0, p - q), 1, 0))
            if euler_derivation(m) != want:
                return False, want.to_text(), euler_derivation(m).to_text()
            return _eq_case(want.to_text(), got.to_text())

        work.append((cid, thunk))
    return _run("euler", cfg, work)


def suite_chphi(cfg: RunConfig) -> Report:
    """Character series coefficients against the data file and against phi of
    the plain powers of z*zb (the termwise-exponential oracle)."""
    data = _load_data("chphi.json")
    series = ch_phi(cfg.order)
    zzb = InvariantPoly.zzbar()
    work = []
    fact = 1
    for k in range(cfg.order + 1):
        if k:
            fact *= k
        frozen = data["coefficients"].get(str(k))
        cid_a = f"chphi-frozen[k={k}]"
        cid_b = f"chphi-oracle[k={k}]"

        def thunk_a(k=k, frozen=frozen):
            got = series.coeffs[k].to_text()
            if frozen is None:
                return False, "(frozen value)", "missing from data file"
            return _eq_case(frozen, got)

        def thunk_b(k=k, fact=fact):
            oracle = phi(zzb.poly_pow(k)).scale(GaussianRational.of(Fraction(1, fact)))
            return _eq_case(oracle.to_text(), series.coeffs[k].to_text())

        work.append((cid_a, thunk_a))
        work.append((cid_b, thunk_b))
    return _run("chphi", cfg, work)


def _random_scalar(rng: random.Random, allow_negative_h1: bool = False) -> ScalarPoly:
    terms = {}
    for _ in range(rng.randint(1, 3)):
        a = rng.randint(-1 if allow_negative_h1 else 0, 2)
        b = rng.randint(0, 2)
        re = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        im = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        if re == 0 and im == 0:
            re = Fraction(1)
        terms[(a, b)] = GaussianRational.of(re, im)
    return ScalarPoly(terms)


def _random_element(rng: random.Random, max_degree: int = 8) -> SrcElement:
    terms = {}
    for _ in range(rng.randint(1, 4)):
        p = rng.randint(0, max_degree)
        q = rng.randint(0, max_degree - p)
        eps = rng.randint(0, 1)
        terms[(p, q, eps)] = _random_scalar(rng, allow_negative_h1=True)
    return SrcElement(terms)


def _random_unit_series(rng: random.Random, order: int) -> TruncSeries:
    coeffs = [ScalarPoly.one()]
    for _ in range(order):
        coeffs.append(_random_scalar(rng))
    return TruncSeries(coeffs, order)


def suite_series(cfg: RunConfig) -> Report:
    """Series layer: frozen inverse-sinh coefficients plus property oracles."""
    data = _load_data("series.json")
    order = 8
    work: list[tuple[str, Thunk]] = []
    quot = inv_sinh_quotient(order)
    for k_str, expected in sorted(data["inv_sinh_quotient"].items(), key=lambda kv: int(kv[0])):
        k = int(k_str)

        def thunk(k=k, expected=expected):
            return _eq_case(expected, quot.coeffs[k].to_text())

        work.append((f"series-invsinh[x^{k}]", thunk))

    rng = random.Random(cfg.seed)
    for trial in range(6):
        s_unit = _random_unit_series(rng, order)
        zero_const = TruncSeries(
            [ScalarPoly.zero()] + list(s_unit.coeffs[1:]), order
        )

        def sqrt_thunk(s=s_unit):
            r = series_sqrt(s)
            return (r * r == s), "sqrt(s)^2 == s", "mismatch"

        def exp_log_thunk(s=zero_const):
            return (series_log(series_exp(s)) == s), "log(exp(s)) == s", "mismatch"

        def inv_thunk(s=s_unit):
            return (
                s * series_inverse(s) == TruncSeries.one(order)
            ), "s * inverse(s) == 1", "mismatch"

        work.append((f"series-sqrt[{trial}]", sqrt_thunk))
        work.append((f"series-explog[{trial}]", exp_log_thunk))
        work.append((f"series-inverse[{trial}]", inv_thunk))
    return _run("series", cfg, work)


def suite_roundtrip(cfg: RunConfig) -> Report:
    """Parser round-trip on random engine elements plus algebra property
    checks (associativity and the Jacobi identity) on random triples."""
    rng = random.Random(cfg.seed)
    work: list[tuple[str, Thunk]] = []
    for trial in range(500):
        e = _random_element(rng)

        def thunk(e=e):
            text = exprs.element_to_text(e)
            back = exprs.parse_element(text)
            return (back == e), text, exprs.element_to_text(back)

        work.append((f"roundtrip[{trial:03d}]", thunk))
    for trial in range(200):
        a = _random_element(rng, 8)
        b = _random_element(rng, 8)
        c = _random_element(rng, 8)

        def assoc_thunk(a=a, b=b, c=c):
            return (mul(mul(a, b), c) == mul(a, mul(b, c))), "(a*b)*c == a*(b*c)", "mismatch"

        work.append((f"assoc[{trial:03d}]", assoc_thunk))
    for trial in range(20):
        a = _random_element(rng, 4)
        b = _random_element(rng, 4)
        c = _random_element(rng, 4)

        def jacobi_thunk(a=a, b=b, c=c):
            total = (
                commutator(a, commutator(b, c))
                + commutator(b, commutator(c, a))
                + commutator(c, commutator(a, b))
            )
            return total.is_zero(), "0", exprs.element_to_text(total)

        work.append((f"jacobi[{trial:02d}]", jacobi_thunk))
    return _run("roundtrip", cfg, work)


_SUITES: dict[str, Callable[[RunConfig], Report]] = {
    "relations": suite_relations,
    "trace": suite_trace,
    "hh0": suite_hh0,
    "degeneration": suite_degeneration,
    "euler": suite_euler,
    "chphi": suite_chphi,
    "series": suite_series,
    "roundtrip": suite_roundtrip,
}


def run_suite(name: str, cfg: RunConfig) -> Report:
    """Run one named suite, or every suite when name is 'all'."""
    if name == "all":
        merged: list[Case] = []
        start = time.perf_counter()
        for sub in SUITE_NAMES:
            rep = _SUITES[sub](cfg)
            merged.extend(
                Case(id=f"{sub}:{c.id}", ok=c.ok, expected=c.expected, actual=c.actual)
                for c in rep.cases
            )
        merged.sort(key=lambda c: c.id)
        wall_ms = (time.perf_counter() - start) * 1000.0
        return Report(suite="all", cases=merged, wall_ms=wall_ms, config=cfg)
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return _SUITES[name](cfg)
