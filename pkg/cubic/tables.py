"""Residue tables f_q(l, m): the value of chi_pi(q) by the class of (L, M) mod q.

A cell is filled from the smallest prime p = 1 mod 3 below the search bound
with a signed pair (L, M) in that class; a cell with no such prime is a star.
For q = 2 the classes are taken mod 4.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Union

from sympy import isprime, primerange

from .character import chi, context
from .decompose import decompose_prime
from .eisenstein import CHI_ONE, CubeRoot
from .errors import InvalidInputError, NotPrimeError

logger = logging.getLogger(__name__)

DEFAULT_SEARCH_BOUND = 10**6


class Star:
    """Marks a class (l, m) with no prime below the search bound."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __reduce__(self):
        return (Star, ())

    def __str__(self):
        return "*"

    def __repr__(self):
        return "STAR"


STAR = Star()

Cell = Union[CubeRoot, Star]


@dataclass(frozen=True)
class ResidueTable:
    q: int
    modulus: int
    search_bound: int
    entries: dict[tuple[int, int], Cell]
    witness: dict[tuple[int, int], int] = field(default_factory=dict, compare=False)

    def entry(self, l: int, m: int) -> Cell:
        return self.entries[(l % self.modulus, m % self.modulus)]

    def cells(self) -> Iterator[tuple[tuple[int, int], Cell]]:
        n = self.modulus
        for m in range(n):
            for l in range(n):
                yield (l, m), self.entries[(l, m)]


def table_modulus(q: int) -> int:
    return 4 if q == 2 else q


def star_predicate(q: int, l: int, m: int) -> str | None:
    """Why no prime can land in class (l, m), when that is known in advance."""
    n = table_modulus(q)
    l, m = l % n, m % n
    if (l, m) == (0, 0):
        return f"{q} divides both L and M"
    if q == 2:
        if (l - m) % 2:
            return "L^2 + 27M^2 is odd"
        if l == m and l % 2 == 0:
            return "L^2 + 27M^2 is divisible by 16"
        return None
    if q == 3:
        return "L^2 + 27M^2 is divisible by 9" if l == 0 else None
    if q % 3 == 1 and (l * l + 27 * m * m) % q == 0:
        # only p = q itself reaches this class, and chi_q(q) = 0
        return f"{q} divides L^2 + 27M^2, so p = {q} and F_{q}(L, M) = 0"
    return None


def build_table(q: int, search_bound: int = DEFAULT_SEARCH_BOUND) -> ResidueTable:
    if q < 2 or not isprime(q):
        raise NotPrimeError(f"{q} is not prime")
    if search_bound < q * q:
        raise InvalidInputError(f"search bound {search_bound} is below q^2 = {q * q}")

    n = table_modulus(q)
    entries: dict[tuple[int, int], Cell] = {}
    witness: dict[tuple[int, int], int] = {}
    reachable = sum(1 for l in range(n) for m in range(n) if star_predicate(q, l, m) is None)

    for p in primerange(7, search_bound + 1):
        if len(entries) == reachable:
            break
        if p % 3 != 1 or p == q:
            continue
        d = decompose_prime(p)
        value = chi(context(d.pi), q)
        for L, M in d.signed_pairs():
            cell = (L % n, M % n)
            if cell in entries:
                continue
            # (L, -M) and (-L, M) come from the conjugate prime
            entries[cell] = value if L * M > 0 else value.conjugate()
            witness[cell] = p
            logger.debug("f_%s%s = %s from p=%s", q, cell, entries[cell], p)

    for l in range(n):
        for m in range(n):
            entries.setdefault((l, m), STAR)
    return ResidueTable(q=q, modulus=n, search_bound=search_bound, entries=entries, witness=witness)


@dataclass(frozen=True)
class Violation:
    kind: str
    cells: tuple[tuple[int, int], ...]
    detail: str


@dataclass
class TableReport:
    q: int
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def of_kind(self, kind: str) -> list[Violation]:
        return [v for v in self.violations if v.kind == kind]


def _invertible(k: int, n: int) -> bool:
    try:
        pow(k, -1, n)
    except ValueError:
        return False
    return True


def lines(n: int) -> dict[tuple[int, int], list[tuple[int, int]]]:
    """Classes of nonzero points of (Z/n)^2 under multiplication by units."""
    units = [k for k in range(1, n) if _invertible(k, n)]
    found: dict[tuple[int, int], list[tuple[int, int]]] = {}
    seen = set()
    for m in range(n):
        for l in range(n):
            if (l, m) == (0, 0) or (l, m) in seen:
                continue
            orbit = sorted({(k * l % n, k * m % n) for k in units})
            seen.update(orbit)
            found[orbit[0]] = orbit
    return found


def verify_table(tbl: ResidueTable) -> TableReport:
    report = TableReport(q=tbl.q)
    n = tbl.modulus
    by_line = lines(n)

    for rep, points in by_line.items():
        values = {tbl.entries[pt] for pt in points if tbl.entries[pt] is not STAR}
        stars = [pt for pt in points if tbl.entries[pt] is STAR]
        if len(values) > 1:
            report.violations.append(
                Violation("line-constancy", tuple(points), f"line through {rep} carries {sorted(map(str, values))}")
            )
        if values and stars:
            report.violations.append(
                Violation("partial-line", tuple(stars), f"line through {rep} is filled only in part")
            )

    for (l, m), cell in tbl.cells():
        if cell is STAR:
            continue
        if (l == 0 or m == 0) and cell != CHI_ONE:
            report.violations.append(Violation("axis", ((l, m),), f"f({l},{m}) = {cell} on an axis"))
        mirror = (l, -m % n)
        if mirror < (l, m):
            continue
        other = tbl.entries[mirror]
        if other is STAR or other != cell.conjugate():
            report.violations.append(
                Violation("conjugate", ((l, m), mirror), f"f({l},{m}) = {cell} but f({l},{-m % n}) = {other}")
            )

    if tbl.q != 2:
        line_values = Counter(
            next(iter(vals))
            for vals in ({tbl.entries[pt] for pt in pts} - {STAR} for pts in by_line.values())
            if len(vals) == 1
        )
        cell_values = Counter(cell for _, cell in tbl.cells() if cell is not STAR)
        for what, counts in (("lines", line_values), ("entries", cell_values)):
            if len(set(counts.values())) > 1 or len(counts) not in (0, 3):
                report.violations.append(
                    Violation("distribution", (), f"{what} per value: {dict((str(k), v) for k, v in counts.items())}")
                )

    if report.violations:
        logger.debug("f_%s: %s violations", tbl.q, len(report.violations))
    return report


def render_text(tbl: ResidueTable) -> str:
    """Grid with m decreasing down the page and l increasing to the right."""
    n = tbl.modulus
    width = 3
    out = [f"f_{tbl.q}(l, m) mod {n}, stars: no prime below {tbl.search_bound}"]
    for m in reversed(range(n)):
        row = "".join(str(tbl.entries[(l, m)]).ljust(width) for l in range(n))
        out.append(f"{m:>3} | {row.rstrip()}")
    out.append("    +-" + "-" * (width * n - 1))
    out.append("      " + "".join(str(l).ljust(width) for l in range(n)).rstrip())
    return "\n".join(out)


def _cell_doc(tbl: ResidueTable, l: int, m: int) -> dict:
    cell = tbl.entries[(l, m)]
    if cell is STAR:
        return {"star": True}
    doc = {"v": cell.exponent}
    if (l, m) in tbl.witness:
        doc["p"] = str(tbl.witness[(l, m)])
    return doc


def to_structured(tbl: ResidueTable) -> dict:
    n = tbl.modulus
    rows = [[_cell_doc(tbl, l, m) for l in range(n)] for m in range(n)]
    return {"q": str(tbl.q), "modulus": str(n), "search_bound": str(tbl.search_bound), "rows": rows}


def from_structured(doc: dict) -> ResidueTable:
    n = int(doc["modulus"])
    entries: dict[tuple[int, int], Cell] = {}
    witness: dict[tuple[int, int], int] = {}
    for m, row in enumerate(doc["rows"]):
        for l, cell in enumerate(row):
            entries[(l, m)] = STAR if cell.get("star") else CubeRoot(int(cell["v"]))
            if "p" in cell:
                witness[(l, m)] = int(cell["p"])
    if len(entries) != n * n:
        raise InvalidInputError(f"table document has {len(entries)} cells, expected {n * n}")
    return ResidueTable(
        q=int(doc["q"]), modulus=n, search_bound=int(doc["search_bound"]), entries=entries, witness=witness
    )
