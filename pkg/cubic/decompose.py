"""Splitting a prime p = 1 mod 3 in Z[w] and reading off 4p = L**2 + 27*M**2.

A primary factor pi = a + b*w of p gives L = 2a - b and M = b/3.  The four
primary factors +-pi, +-conj(pi) give the four sign patterns of (L, M); the
canonical one has L > 0 and M > 0.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

from sympy import isprime, nextprime

from .eisenstein import EisensteinInt, associates, conj, gcd, is_primary, norm, omega_image
from .errors import InternalConsistencyError, NotPrimaryError, NotPrimeError, ParityError, ResidueClassError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Decomposition:
    p: int
    pi: EisensteinInt
    L: int
    M: int
    omega_image: int

    @classmethod
    def from_primary(cls, pi: EisensteinInt) -> "Decomposition":
        """Decomposition attached to any primary prime of norm p (signs as they come)."""
        if not is_primary(pi):
            raise NotPrimaryError(f"{pi} is not primary")
        p = norm(pi)
        if pi.b == 0 or not isprime(p):
            raise NotPrimeError(f"{pi} is not a complex prime")
        L, M = lm_from_primary(pi)
        return cls(p=p, pi=pi, L=L, M=M, omega_image=omega_image(pi))

    @property
    def is_canonical(self) -> bool:
        return self.L > 0 and self.M > 0

    def signed_pairs(self) -> list[tuple[int, int]]:
        L, M = self.L, self.M
        return [(L, M), (-L, -M), (L, -M), (-L, M)]


def lm_from_primary(pi: EisensteinInt) -> tuple[int, int]:
    if not is_primary(pi):
        raise NotPrimaryError(f"{pi} is not primary")
    return 2 * pi.a - pi.b, pi.b // 3


def primary_from_lm(L: int, M: int) -> EisensteinInt:
    if (L - M) % 2:
        raise ParityError(f"L={L} and M={M} must have the same parity")
    return EisensteinInt((L + 3 * M) // 2, 3 * M)


def cube_root_of_unity(p: int) -> int:
    """A nontrivial cube root of 1 mod p, from g**((p-1)/3) for g = 2, 3, 5, ..."""
    g = 2
    while True:
        s = pow(g, (p - 1) // 3, p)
        if s != 1:
            return s
        g = nextprime(g)


@lru_cache(maxsize=65536)
def decompose_prime(p: int) -> Decomposition:
    if p == 3:
        raise ResidueClassError("3 ramifies in Z[w] and has no decomposition")
    if p < 2 or not isprime(p):
        raise NotPrimeError(f"{p} is not prime")
    if p % 3 != 1:
        raise ResidueClassError(f"{p} is not congruent to 1 mod 3")

    s = cube_root_of_unity(p)
    pi0 = gcd(EisensteinInt(p, 0), EisensteinInt(s, -1))
    if norm(pi0) != p:
        raise InternalConsistencyError(f"gcd({p}, {s} - w) = {pi0} does not have norm {p}")
    logger.debug("p=%s: s=%s, factor %s", p, s, pi0)

    for candidate in associates(pi0) + associates(conj(pi0)):
        if not is_primary(candidate):
            continue
        L, M = lm_from_primary(candidate)
        if L > 0 and M > 0:
            return Decomposition(p=p, pi=candidate, L=L, M=M, omega_image=omega_image(candidate))
    raise InternalConsistencyError(f"no primary factor of {p} with L, M > 0")


def rational_image(alpha: EisensteinInt | int, d: Decomposition) -> int:
    """The r in [0, p) with alpha = r mod pi."""
    alpha = EisensteinInt.coerce(alpha)
    return (alpha.a + alpha.b * d.omega_image) % d.p


def search_lm(p: int) -> list[tuple[int, int]]:
    """Every positive (L, M) with L**2 + 27*M**2 = 4p, by scanning M."""
    found = []
    for M in range(1, math.isqrt(4 * p // 27) + 1):
        rest = 4 * p - 27 * M * M
        L = math.isqrt(rest)
        if L > 0 and L * L == rest:
            found.append((L, M))
    return found
