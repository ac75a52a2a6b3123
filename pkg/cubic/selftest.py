"""Registry of named consistency checks run by ``cli.py selftest``.

Each check takes a `Scale` and returns how many cases it looked at together
with a list of failure descriptions.  `run_all` calls every registered check
and records an exception as that check's failure; one broken check never
stops the others.
"""

from __future__ import annotations

import random
import threading
import time
from dataclasses import dataclass, field
from math import gcd
from typing import Callable

from sympy import primerange

from . import character, ratchar, slopes, solver, tables
from .decompose import decompose_prime
from .eisenstein import CHI_OMEGA, CHI_OMEGA_BAR, CHI_ONE, EisensteinInt
from .errors import InvalidInputError


@dataclass(frozen=True)
class Scale:
    name: str
    table_bound: int
    lehmer_q_max: int
    lehmer_p_max: int
    census_q_max: int
    partition_q_max: int
    reciprocity_pairs: int
    reciprocity_norm: int
    rules_q_max: int
    rules_p_max: int
    original_q_max: int
    cubic_q_max: int
    oracle_m_max: int
    euler_p_max: int


QUICK = Scale(
    name="quick",
    table_bound=20_000,
    lehmer_q_max=50,
    lehmer_p_max=2_000,
    census_q_max=60,
    partition_q_max=60,
    reciprocity_pairs=200,
    reciprocity_norm=2_000,
    rules_q_max=200,
    rules_p_max=1_000,
    original_q_max=100,
    cubic_q_max=2_000,
    oracle_m_max=200,
    euler_p_max=10_000,
)

FULL = Scale(
    name="full",
    table_bound=1_000_000,
    lehmer_q_max=50,
    lehmer_p_max=20_000,
    census_q_max=200,
    partition_q_max=200,
    reciprocity_pairs=1_000,
    reciprocity_norm=10_000,
    rules_q_max=2_000,
    rules_p_max=10_000,
    original_q_max=500,
    cubic_q_max=10_000,
    oracle_m_max=5_000,
    euler_p_max=100_000,
)

SCALES = {s.name: s for s in (QUICK, FULL)}

CheckFunc = Callable[[Scale], tuple[int, list[str]]]


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    error: str | None = None
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.error is None and not self.failures


_CHECKS: dict[str, CheckFunc] = {}
_LOCK = threading.RLock()


def register(name: str, func: CheckFunc) -> None:
    if not callable(func):
        raise TypeError("func must be callable")
    with _LOCK:
        _CHECKS[name] = func


def unregister(name: str) -> None:
    with _LOCK:
        _CHECKS.pop(name, None)


def get_checks() -> list[str]:
    with _LOCK:
        return list(_CHECKS)


def check(name: str):
    def decorator(func: CheckFunc) -> CheckFunc:
        register(name, func)
        return func

    return decorator


def run_all(level: str | Scale = "quick", only: list[str] | None = None) -> list[CheckResult]:
    scale = level if isinstance(level, Scale) else SCALES.get(level)
    if scale is None:
        raise InvalidInputError(f"unknown self-test level {level!r}; use one of {sorted(SCALES)}")
    with _LOCK:
        unknown = sorted(set(only or ()) - set(_CHECKS))
        selected = [(n, f) for n, f in _CHECKS.items() if only is None or n in only]
    if unknown:
        raise InvalidInputError(f"unknown self-test check(s): {', '.join(unknown)}")

    results = []
    for name, func in selected:
        result = CheckResult(name)
        start = time.perf_counter()
        try:
            result.checked, result.failures = func(scale)
        except Exception as exc:  # a crashing check is reported, the rest still run
            result.error = f"{type(exc).__name__}: {exc}"
        result.seconds = time.perf_counter() - start
        results.append(result)
    return results


# rows from the top (largest m) down to m = 0, l increasing to the right
SMALL_TABLES = {
    2: ["* w2 * w", "1 * * *", "* w * w2", "* * 1 *"],
    3: ["* w w2", "* w2 w", "* 1 1"],
    5: ["1 w2 w w2 w", "1 w2 w2 w w", "1 w w w2 w2", "1 w w2 w w2", "* 1 1 1 1"],
    7: [
        "1 * w2 w w2 w *",
        "1 w2 * w w2 * w",
        "1 w w * * w2 w2",
        "1 w2 w2 * * w w",
        "1 w * w2 w * w2",
        "1 * w w2 w w2 *",
        "* 1 1 1 1 1 1",
    ],
}


def table_rows(tbl: tables.ResidueTable) -> list[str]:
    n = tbl.modulus
    return [" ".join(str(tbl.entries[(l, m)]) for l in range(n)) for m in reversed(range(n))]


@check("small-tables")
def _small_tables(scale: Scale) -> tuple[int, list[str]]:
    failures = []
    for q, expected in SMALL_TABLES.items():
        tbl = tables.build_table(q, scale.table_bound)
        got = table_rows(tbl)
        if got != expected:
            failures.append(f"f_{q}: got {got}")
        report = tables.verify_table(tbl)
        failures.extend(f"f_{q}: {v.kind}: {v.detail}" for v in report.violations)
    return len(SMALL_TABLES), failures


@check("example-63601")
def _worked_63601(scale: Scale) -> tuple[int, list[str]]:
    failures = []
    d = decompose_prime(63601)
    if (d.L, d.M) != (19, 97):
        failures.append(f"decompose(63601) = ({d.L}, {d.M})")
    rc = ratchar.RationalCharacter(d)
    for q, want in ((2, CHI_OMEGA_BAR), (5, CHI_OMEGA_BAR), (7, CHI_OMEGA)):
        got = ratchar.chi_prime(rc, q)
        if got != want:
            failures.append(f"chi({q}) = {got}, expected {want}")
    if ratchar.chi(rc, 490) != CHI_ONE:
        failures.append("chi(490) != 1")
    if not solver.exhaustive_oracle(490, 63601):
        failures.append("490 has no cube root mod 63601")
    return 6, failures


@check("example-large-prime")
def _worked_big(scale: Scale) -> tuple[int, list[str]]:
    failures = []
    p = (3**19 + 5**82) // 4
    d = decompose_prime(p)
    if (d.L, d.M) != (5**41, 3**8):
        failures.append("decomposition is not (5^41, 3^8)")
    rc = ratchar.RationalCharacter(d)
    decision = ratchar.explain(rc, 2)
    if (decision.rule, decision.value) != ("a", CHI_OMEGA):
        failures.append(f"chi(2) decided as {decision}")
    slope = rc.slope(991)
    if slope != slopes.Slope(672) or 672 != -319 % 991:
        failures.append(f"slope mod 991 is {slope}")
    for name in ("e", "f"):
        got = ratchar.evaluate_rule(ratchar.RULES_BY_NAME[name], 991, slope)
        if got != CHI_OMEGA:
            failures.append(f"rule ({name}) gives chi(991) = {got}")
    if ratchar.chi(rc, 1982) != CHI_OMEGA**2:
        failures.append("chi(1982) != w^2")
    if pow(1982, (p - 1) // 3, p) == 1:
        failures.append("1982^((p-1)/3) = 1 mod p")
    return 6, failures


@check("lehmer-equivalence")
def _lehmer(scale: Scale) -> tuple[int, list[str]]:
    failures, checked = [], 0
    for q in primerange(2, scale.lehmer_q_max + 1):
        for p in primerange(7, scale.lehmer_p_max + 1):
            if p % 3 != 1 or p == q:
                continue
            d = decompose_prime(p)
            checked += 1
            if slopes.lehmer_test(q, d.L, d.M) != solver.is_cubic_residue_prime(q, p):
                failures.append(f"q={q} p={p}")
    return checked, failures


CENSUS_GAMMAS = (EisensteinInt(1, 0), EisensteinInt(0, 1), EisensteinInt(2, 3), EisensteinInt(4, 3))


@check("value-census")
def _census(scale: Scale) -> tuple[int, list[str]]:
    failures, checked = [], 0
    for q in primerange(5, scale.census_q_max + 1):
        undefined = slopes.undefined_slopes(q)
        for gamma in CENSUS_GAMMAS:
            if gamma.norm() % q == 0:
                continue
            ss = slopes.slope_set(slopes.GammaParams.from_eisenstein(gamma), q)
            checked += 1
            shape = slopes.census_shape(ss)
            singles = {s for s, n in ss.multiplicity.items() if n == 1}
            if q % 3 == 2:
                ok = shape == {3: (q + 1) // 3}
            else:
                ok = shape == {3: (q - 1) // 3, 1: 2} and singles == undefined
            if not ok:
                failures.append(f"gamma={gamma} q={q}: {shape}")
    return checked, failures


@check("partition")
def _partition(scale: Scale) -> tuple[int, list[str]]:
    failures, checked = [], 0
    gamma = EisensteinInt(2, 3)
    gp = slopes.GammaParams.from_eisenstein(gamma)
    ctx = character.context(gamma)
    for q in primerange(5, scale.partition_q_max + 1):
        if q == 7 or character.chi(ctx, q) == CHI_ONE:
            continue
        checked += 1
        undefined = slopes.undefined_slopes(q)
        parts = [
            slopes.slope_set(g, q).members - undefined for g in (slopes.GAMMA_ONE, gp, gp.conj())
        ]
        everything = set(slopes.t_domain(q)) - undefined
        if sum(map(len, parts)) != len(everything) or set().union(*parts) != everything:
            failures.append(f"q={q}")
    return checked, failures


@check("reciprocity")
def _reciprocity(scale: Scale) -> tuple[int, list[str]]:
    primes = list(character.primary_primes(scale.reciprocity_norm))
    rng = random.Random(20240601)
    failures, checked = [], 0
    while checked < scale.reciprocity_pairs:
        pi, rho = rng.choice(primes), rng.choice(primes)
        if pi.norm() == rho.norm():
            continue
        checked += 1
        if not character.reciprocity_check(pi, rho):
            failures.append(f"{pi}, {rho}")
    return checked, failures


@check("rules-consistency")
def _rules(scale: Scale) -> tuple[int, list[str]]:
    failures, checked = [], 0
    fallback_seen = False
    for p in primerange(7, scale.rules_p_max + 1):
        if p % 3 != 1:
            continue
        rc = ratchar.RationalCharacter.for_prime(p)
        for q in primerange(2, scale.rules_q_max + 1):
            if q == p:
                continue
            checked += 1
            decision = ratchar.explain(rc, q)
            direct = rc.direct(q)
            if decision.value != direct:
                failures.append(f"p={p} q={q}: rule ({decision.rule}) gives {decision.value}, direct {direct}")
            if decision.rule in ("d", "e", "f"):
                values = {ratchar.evaluate_rule(r, q, rc.slope(q)) for r in ratchar.applicable_rules(q)}
                if len(values) > 1:
                    failures.append(f"p={p} q={q}: rules disagree")
            if q == 181 and decision.rule == "fallback":
                fallback_seen = True
    if scale.rules_q_max >= 181 and not fallback_seen:
        failures.append("q=181 never reached the fallback")
    return checked, failures


@check("original-algorithm")
def _original(scale: Scale) -> tuple[int, list[str]]:
    failures, checked = [], 0
    for q in primerange(5, scale.original_q_max + 1):
        checked += 1
        accepted = slopes.invert_all(slopes.lehmer_original_slopes(q), q)
        expected = slopes.slope_set(slopes.GAMMA_ONE, q).members - slopes.undefined_slopes(q)
        if accepted != expected:
            failures.append(f"q={q}")
    return checked, failures


@check("cubic-t3-7t-7")
def _cubic_roots(scale: Scale) -> tuple[int, list[str]]:
    failures, checked = [], 0
    for q in primerange(2, scale.cubic_q_max + 1):
        checked += 1
        roots = slopes.count_roots_cubic((1, 0, -7, -7), q)
        expected = 1 if q == 7 else 3 if q % 7 in (1, 6) else 0
        if roots != expected:
            failures.append(f"q={q}: {roots} roots")
    return checked, failures


@check("oracle-closure")
def _oracle(scale: Scale) -> tuple[int, list[str]]:
    failures, checked = [], 0
    for m in range(2, scale.oracle_m_max + 1):
        for c in range(1, m):
            if gcd(c, m) != 1:
                continue
            checked += 1
            if solver.is_cubic_residue(c, m) != solver.exhaustive_oracle(c, m):
                failures.append(f"c={c} m={m}")
    return checked, failures


@check("euler-criterion")
def _euler(scale: Scale) -> tuple[int, list[str]]:
    failures, checked = [], 0
    for p in primerange(7, scale.euler_p_max + 1):
        if p % 3 != 1:
            continue
        checked += 1
        d = decompose_prime(p)
        both_even = d.L % 2 == 0 and d.M % 2 == 0
        if solver.is_cubic_residue_prime(2, p) != both_even:
            failures.append(f"p={p}")
        if both_even and (d.L // 2) ** 2 + 27 * (d.M // 2) ** 2 != p:
            failures.append(f"p={p}: (L/2)^2 + 27(M/2)^2 is not p")
    return checked, failures
