"""Slopes M/L mod q and the rational functions whose values they are.

Every rational function here is cubic over cubic and is evaluated on the
projective line: a point t = (x : z) is substituted into the homogenised
numerator and denominator, so t = inf and vertical slopes need no special
cases.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Sequence, Union

from sympy import isprime, sqrt_mod
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_from_int_poly, gf_gcd, gf_pow_mod, gf_sub

from .eisenstein import EisensteinInt, norm
from .errors import DegenerateCubicError, DegenerateGammaError, InvalidInputError, NotPrimeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Slope:
    """A point of the projective line over Z/q; value None is infinity."""

    value: int | None = None

    @classmethod
    def projective(cls, num: int, den: int, q: int) -> "Slope":
        num, den = num % q, den % q
        if den:
            return cls(num * pow(den, -1, q) % q)
        if num:
            return INFINITY
        raise DegenerateGammaError(f"0/0 is not a point of the projective line mod {q}")

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def negated(self, q: int) -> "Slope":
        return self if self.value is None else Slope(-self.value % q)

    def inverted(self, q: int) -> "Slope":
        if self.value is None:
            return Slope(0)
        if self.value == 0:
            return INFINITY
        return Slope(pow(self.value, -1, q))

    def coordinates(self) -> tuple[int, int]:
        return (1, 0) if self.value is None else (self.value, 1)

    def sort_key(self) -> tuple[int, int]:
        return (1, 0) if self.value is None else (0, self.value)

    def __str__(self):
        return "inf" if self.value is None else str(self.value)


INFINITY = Slope(None)

Point = Union[int, Slope]


@dataclass(frozen=True)
class SlopeSet:
    """Values of a slope function over the whole t-domain, in t order."""

    q: int
    mapping: tuple[tuple[Slope, Slope], ...]

    @cached_property
    def multiplicity(self) -> dict[Slope, int]:
        return dict(Counter(slope for _, slope in self.mapping))

    @cached_property
    def members(self) -> frozenset[Slope]:
        return frozenset(slope for _, slope in self.mapping)

    def __contains__(self, slope: object) -> bool:
        return slope in self.members

    def __len__(self) -> int:
        return len(self.members)

    def negated(self) -> "SlopeSet":
        q = self.q
        return SlopeSet(q, tuple((t.negated(q), s.negated(q)) for t, s in self.mapping))

    def census(self) -> list[tuple[Slope, int]]:
        """Distinct values with their preimage counts, sorted by value."""
        return sorted(self.multiplicity.items(), key=lambda item: item[0].sort_key())


@dataclass(frozen=True)
class GammaParams:
    c: int
    d: int

    @property
    def C(self) -> int:
        return 6 * self.c - 3 * self.d

    @property
    def D(self) -> int:
        return self.d

    @classmethod
    def from_eisenstein(cls, gamma: EisensteinInt | int) -> "GammaParams":
        gamma = EisensteinInt.coerce(gamma)
        return cls(gamma.a, gamma.b)

    def to_eisenstein(self) -> EisensteinInt:
        return EisensteinInt(self.c, self.d)

    def conj(self) -> "GammaParams":
        return GammaParams(self.c - self.d, -self.d)

    def numerator(self) -> tuple[int, int, int, int]:
        C, D = self.C, self.D
        return (-D, C, 9 * D, -C)

    def denominator(self) -> tuple[int, int, int, int]:
        C, D = self.C, self.D
        return (C, 27 * D, -9 * C, -27 * D)

    def __str__(self):
        return str(self.to_eisenstein())


GAMMA_ONE = GammaParams(1, 0)

# cubic coefficients, highest degree first
_LEHMER_NUM = (0, 1, 0, -1)
_LEHMER_DEN = (1, 0, -9, 0)
_OMEGA_NUM = (-1, 3, 9, -3)
_OMEGA_DEN = (3, 27, -27, -27)


def _check_prime(q: int) -> None:
    if q < 5:
        raise InvalidInputError(f"slope functions need a prime q >= 5, got {q}")
    if not isprime(q):
        raise NotPrimeError(f"{q} is not prime")


def _homogeneous(coeffs: Sequence[int], x: int, z: int, q: int) -> int:
    a3, a2, a1, a0 = coeffs
    return (a3 * x**3 + a2 * x * x * z + a1 * x * z * z + a0 * z**3) % q


def _point(t: Point, q: int) -> tuple[int, int]:
    if isinstance(t, Slope):
        return t.coordinates()
    return t % q, 1


def _evaluate(num: Sequence[int], den: Sequence[int], t: Point, q: int) -> Slope:
    x, z = _point(t, q)
    n, d = _homogeneous(num, x, z, q), _homogeneous(den, x, z, q)
    if n == 0 and d == 0:
        raise DegenerateGammaError(f"numerator and denominator both vanish at t={t} mod {q}")
    return Slope.projective(n, d, q)


def t_domain(q: int) -> list[Slope]:
    return [Slope(t) for t in range(q)] + [INFINITY]


def slope_of(L: int, M: int, q: int) -> Slope:
    if L % q == 0 and M % q == 0:
        raise InvalidInputError(f"L={L} and M={M} are both divisible by {q}")
    return Slope.projective(M, L, q)


def lehmer_g(t: Point, q: int) -> Slope:
    """(t^2 - 1)/(t^3 - 9t) mod q; t = inf gives slope 0."""
    return _evaluate(_LEHMER_NUM, _LEHMER_DEN, t, q)


def g_gamma(gp: GammaParams, t: Point, q: int) -> Slope:
    return _evaluate(gp.numerator(), gp.denominator(), t, q)


def _build(num: Sequence[int], den: Sequence[int], q: int) -> SlopeSet:
    return SlopeSet(q, tuple((t, _evaluate(num, den, t, q)) for t in t_domain(q)))


SLOPE_CACHE_SIZE = 4096


@lru_cache(maxsize=SLOPE_CACHE_SIZE)
def _cached_slope_set(c: int, d: int, q: int) -> SlopeSet:
    gp = GammaParams(c, d)
    result = _build(gp.numerator(), gp.denominator(), q)
    logger.debug("slope set for gamma=%s mod %s: %s values", gp, q, len(result))
    return result


def slope_set(gp: GammaParams, q: int) -> SlopeSet:
    _check_prime(q)
    if 6 * norm(gp.to_eisenstein()) % q == 0:
        raise DegenerateGammaError(f"g for gamma={gp} is degenerate mod {q} ({q} divides 6N(gamma))")
    return _cached_slope_set(gp.c % q, gp.d % q, q)


def clear_cache() -> None:
    _cached_slope_set.cache_clear()
    omega_slopes.cache_clear()


def h_apply(t: Point, q: int) -> Slope:
    """t -> (t - 3)/(t + 1), a projective map of order three."""
    x, z = _point(t, q)
    return Slope.projective(x - 3 * z, x + z, q)


def undefined_slopes(q: int) -> frozenset[Slope]:
    """The slopes +-1/(3*sqrt(-3)) where L^2 + 27M^2 = 0 mod q."""
    _check_prime(q)
    if q % 3 == 2:
        return frozenset()
    root = sqrt_mod(-3 % q, q)
    v = pow(3 * root, -1, q)
    return frozenset({Slope(v), Slope(-v % q)})


def lehmer_test(q: int, L: int, M: int) -> bool:
    """True iff q is a cubic residue mod p = (L^2 + 27M^2)/4."""
    if q in (2, 3):
        return L % q == 0 or M % q == 0
    if L % q == 0 and M % q == 0:
        raise InvalidInputError(f"L={L} and M={M} are both divisible by {q}")
    return slope_of(L, M, q) in slope_set(GAMMA_ONE, q)


@lru_cache(maxsize=1024)
def omega_slopes(q: int) -> SlopeSet:
    """Values of -(t^3 - 3t^2 - 9t + 3)/(3(t^3 + 9t^2 - 9t - 9)) over the t-domain."""
    _check_prime(q)
    return _build(_OMEGA_NUM, _OMEGA_DEN, q)


def lehmer_original_slopes(q: int) -> frozenset[Slope]:
    """Ratios mu = L/M for which q is a cubic residue, by the quadratic-residue recipe.

    For each quadratic residue r != 1 put u = (3r + 1)/(3r - 3), drop
    u in {0, 1, -1/2, -1/3}, and take mu = +-sqrt(r) * 9/(2u + 1).  The
    cases q | LM contribute mu = 0 and mu = inf.
    """
    if q <= 3:
        raise InvalidInputError(f"the quadratic-residue recipe needs q > 3, got {q}")
    if not isprime(q):
        raise NotPrimeError(f"{q} is not prime")

    excluded = {0, 1, -pow(2, -1, q) % q, -pow(3, -1, q) % q}
    ratios = {Slope(0), INFINITY}
    for r in sorted({x * x % q for x in range(1, q)}):
        if r == 1:
            continue
        u = (3 * r + 1) * pow(3 * r - 3, -1, q) % q
        if u in excluded:
            continue
        scale = 9 * pow(2 * u + 1, -1, q)
        for root in sqrt_mod(r, q, all_roots=True):
            ratios.add(Slope(root * scale % q))
    return frozenset(ratios)


def invert_all(slopes: Iterable[Slope], q: int) -> frozenset[Slope]:
    return frozenset(s.inverted(q) for s in slopes)


def count_roots_cubic(coeffs: Sequence[int], q: int, exhaustive_below: int = 1000) -> int:
    """Number of distinct roots mod q of a3*t^3 + a2*t^2 + a1*t + a0."""
    if len(coeffs) != 4:
        raise InvalidInputError("a cubic needs exactly four coefficients")
    if coeffs[0] % q == 0:
        raise DegenerateCubicError(f"leading coefficient {coeffs[0]} vanishes mod {q}")
    if q < exhaustive_below:
        return sum(1 for t in range(q) if _homogeneous(coeffs, t, 1, q) == 0)

    f = gf_from_int_poly(list(coeffs), q)
    x = [1, 0]
    xq = gf_pow_mod(x, q, f, q, ZZ)
    common = gf_gcd(f, gf_sub(xq, x, q, ZZ), q, ZZ)
    return len(common) - 1


def census_shape(ss: SlopeSet) -> Mapping[int, int]:
    """How many distinct values occur with each multiplicity."""
    return dict(Counter(ss.multiplicity.values()))
