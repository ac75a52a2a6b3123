"""Is c a cubic residue mod m?

A composite modulus is split into prime powers.  For p >= 5 cubing on units
of Z/p^k lifts from Z/p; every unit mod 2^k is a cube; mod 3^k (k >= 2) the
unit cubes are exactly the classes of +-1 mod 9.  Each prime factor is then
decided by one of four interchangeable methods.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

from sympy import isprime

from . import ratchar
from .eisenstein import CHI_ONE
from .errors import InvalidInputError, NotCoprimeError, NotPrimeError, OracleLimitError

logger = logging.getLogger(__name__)

ORACLE_LIMIT = 10**6


class Method(enum.Enum):
    RULES = "rules"
    DIRECT = "direct-character"
    EXPONENT = "exponentiation-oracle"
    EXHAUSTIVE = "exhaustive"


@dataclass(frozen=True)
class ResidueQuery:
    c: int
    m: int
    method: Method = Method.EXPONENT
    factor_bound: int = ratchar.DEFAULT_FACTOR_BOUND
    fallback_bound: int = ratchar.DEFAULT_FALLBACK_BOUND

    def __post_init__(self):
        if self.m < 2:
            raise InvalidInputError(f"modulus must be at least 2, got {self.m}")


@lru_cache(maxsize=256)
def cube_residues(m: int) -> frozenset[int]:
    return frozenset(pow(x, 3, m) for x in range(m))


def exhaustive_oracle(c: int, m: int) -> bool:
    if m < 1:
        raise InvalidInputError(f"modulus must be positive, got {m}")
    if m > ORACLE_LIMIT:
        raise OracleLimitError(f"exhaustive search is limited to m <= {ORACLE_LIMIT}, got {m}")
    return c % m in cube_residues(m)


def _decide_prime(query: ResidueQuery, p: int) -> bool:
    c = query.c
    if query.method is Method.EXHAUSTIVE:
        return exhaustive_oracle(c, p)
    if p == 3 or p % 3 == 2:
        return True
    if query.method is Method.EXPONENT:
        return pow(c % p, (p - 1) // 3, p) == 1
    rc = ratchar.RationalCharacter.for_prime(
        p, fallback_bound=query.fallback_bound, factor_bound=query.factor_bound
    )
    if query.method is Method.DIRECT:
        return rc.direct(c) == CHI_ONE
    return ratchar.chi(rc, c) == CHI_ONE


def is_cubic_residue_prime(c: int, p: int, method: Method = Method.EXPONENT) -> bool:
    if p < 2 or not isprime(p):
        raise NotPrimeError(f"{p} is not prime")
    if c % p == 0:
        raise NotCoprimeError(f"{p} divides {c}", divisor=p)
    return _decide_prime(ResidueQuery(c, p, method), p)


def decide(query: ResidueQuery) -> bool:
    c, m = query.c, query.m
    g = math.gcd(c, m)
    if g > 1:
        raise NotCoprimeError(f"gcd({c}, {m}) = {g}; only coprime inputs are supported", divisor=g)
    if query.method is Method.EXHAUSTIVE:
        return exhaustive_oracle(c, m)

    for p, k in ratchar.factor(m, query.factor_bound).factors:
        if p == 2:
            continue
        if p == 3 and k >= 2:
            ok = c % 9 in (1, 8)
        else:
            ok = _decide_prime(query, p)
        logger.debug("c=%s mod %s^%s: %s", c, p, k, "residue" if ok else "non-residue")
        if not ok:
            return False
    return True


def is_cubic_residue(c: int, m: int, method: Method = Method.EXPONENT, factor_bound: int | None = None) -> bool:
    if factor_bound is None:
        return decide(ResidueQuery(c, m, method))
    return decide(ResidueQuery(c, m, method, factor_bound=factor_bound))
