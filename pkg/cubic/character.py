"""Cubic residue characters chi_pi of primary primes, evaluated by exponentiation.

For a complex primary pi of norm p the power alpha**((p-1)/3) is reduced to
Z/p through the residue of w mod pi; for pi = +-q with q = 2 mod 3 the power
alpha**((q*q-1)/3) is taken in Z[w]/q.  Either way the result is compared
with the images of 1, w and w_bar.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from sympy import isprime, primerange

from .decompose import Decomposition, decompose_prime, primary_from_lm, rational_image
from .eisenstein import (
    CHI_OMEGA,
    CHI_OMEGA_BAR,
    CHI_ONE,
    ZERO,
    CharValue,
    CubeRoot,
    EisensteinInt,
    conj,
    is_primary,
    residue_pow,
)
from .errors import (
    InternalConsistencyError,
    InvalidInputError,
    NotPrimaryError,
    NotPrimeError,
    ParityError,
    ResidueClassError,
)

logger = logging.getLogger(__name__)


class Kind(enum.Enum):
    COMPLEX = "complex"
    RATIONAL = "rational"


@dataclass(frozen=True)
class CharacterContext:
    pi: EisensteinInt
    kind: Kind
    modulus: int
    decomposition: Decomposition | None = None

    @classmethod
    def for_prime(cls, pi: EisensteinInt | int) -> "CharacterContext":
        return context(pi)


def context(pi: EisensteinInt | int) -> CharacterContext:
    return _context(EisensteinInt.coerce(pi))


@lru_cache(maxsize=16384)
def _context(pi: EisensteinInt) -> CharacterContext:
    if not is_primary(pi):
        raise NotPrimaryError(f"{pi} is not primary")
    if pi.b == 0:
        q = abs(pi.a)
        if not isprime(q):
            raise NotPrimeError(f"{q} is not prime")
        if q % 3 != 2:
            raise ResidueClassError(f"{q} is not prime in Z[w]; use one of its complex factors")
        return CharacterContext(pi=pi, kind=Kind.RATIONAL, modulus=q)
    d = Decomposition.from_primary(pi)
    return CharacterContext(pi=pi, kind=Kind.COMPLEX, modulus=d.p, decomposition=d)


def chi(ctx: CharacterContext, alpha: EisensteinInt | int) -> CharValue:
    alpha = EisensteinInt.coerce(alpha)

    if ctx.kind is Kind.COMPLEX:
        d = ctx.decomposition
        p = d.p
        r = rational_image(alpha, d)
        if r == 0:
            return ZERO
        v = pow(r, (p - 1) // 3, p)
        s = d.omega_image
        if v == 1:
            return CHI_ONE
        if v == s:
            return CHI_OMEGA
        if v == s * s % p:
            return CHI_OMEGA_BAR
        raise InternalConsistencyError(f"{alpha}^((p-1)/3) = {v} mod {p} is not a cube root of unity")

    q = ctx.modulus
    if alpha.a % q == 0 and alpha.b % q == 0:
        return ZERO
    v = residue_pow(alpha, (q * q - 1) // 3, EisensteinInt(q, 0))
    if (v.a, v.b) == (1, 0):
        return CHI_ONE
    if (v.a, v.b) == (0, 1):
        return CHI_OMEGA
    if (v.a, v.b) == (q - 1, q - 1):
        return CHI_OMEGA_BAR
    raise InternalConsistencyError(f"{alpha}^((q^2-1)/3) = {v} mod {q} is not a cube root of unity")


def F(q: int, L: int, M: int) -> CharValue:
    """chi_pi(q) for the primary pi attached to (L, M)."""
    if (L - M) % 2:
        raise ParityError(f"L={L} and M={M} must have the same parity")
    p = (L * L + 27 * M * M) // 4
    if not isprime(p) or p % 3 != 1:
        raise NotPrimeError(f"(L^2 + 27M^2)/4 = {p} is not a prime = 1 mod 3")
    return chi(context(primary_from_lm(L, M)), q)


def chi_omega(ctx: CharacterContext) -> CubeRoot:
    if ctx.kind is not Kind.COMPLEX:
        raise InvalidInputError("chi(w) closed form needs a complex prime")
    return CubeRoot((ctx.modulus - 1) // 3)


def chi_one_minus_omega(ctx: CharacterContext) -> CubeRoot:
    """w**(2n) where a = +-(3n - 1) for pi = a + b*w."""
    if ctx.kind is not Kind.COMPLEX:
        raise InvalidInputError("chi(1 - w) closed form needs a complex prime")
    a = ctx.pi.a
    if (a + 1) % 3 == 0:
        n = (a + 1) // 3
    elif (1 - a) % 3 == 0:
        n = (1 - a) // 3
    else:
        raise InternalConsistencyError(f"a = {a} is neither 3n - 1 nor -(3n - 1)")
    return CubeRoot(2 * n)


def reciprocity_check(pi: EisensteinInt | int, rho: EisensteinInt | int) -> bool:
    ctx_pi, ctx_rho = context(pi), context(rho)
    if ctx_pi.modulus == ctx_rho.modulus:
        raise InvalidInputError(f"{pi} and {rho} lie over the same rational prime")
    return chi(ctx_pi, ctx_rho.pi) == chi(ctx_rho, ctx_pi.pi)


def primary_primes(norm_bound: int) -> Iterator[EisensteinInt]:
    """Every primary prime of norm below norm_bound."""
    for p in primerange(2, norm_bound):
        if p % 3 == 1:
            pi = decompose_prime(p).pi
            yield from (pi, -pi, conj(pi), -conj(pi))
        elif p % 3 == 2 and p * p < norm_bound:
            yield from (EisensteinInt(p, 0), EisensteinInt(-p, 0))


def f2_closed_form(L: int, M: int) -> CubeRoot:
    if (L - M) % 2:
        raise ParityError(f"L={L} and M={M} must have the same parity")
    if L % 2 == 0:
        return CHI_ONE
    if (L - M) % 4 == 0:
        return CHI_OMEGA
    return CHI_OMEGA_BAR


def f3_closed_form(L: int, M: int) -> CubeRoot:
    if M % 3 == 0:
        return CHI_ONE
    if (L + M) % 3 == 0:
        return CHI_OMEGA
    if (L - M) % 3 == 0:
        return CHI_OMEGA_BAR
    raise InvalidInputError(f"L={L} is divisible by 3; no prime has this decomposition")
