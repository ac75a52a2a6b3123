"""Exact arithmetic in the Eisenstein integers Z[w], w = exp(2*pi*i/3).

An element is the coordinate pair (a, b) standing for a + b*w; products are
reduced with w**2 = -1 - w.  Coordinates are plain Python ints, so there is
no size limit.

Character values are kept apart from ring elements: ``CubeRoot`` stores the
exponent k of w**k (mod 3) and ``ZERO`` marks a vanishing character.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from sympy import isprime

from .errors import InternalConsistencyError, InvalidInputError, NotPrimaryError


@dataclass(frozen=True, slots=True)
class EisensteinInt:
    a: int
    b: int = 0

    @classmethod
    def coerce(cls, value: Union[int, "EisensteinInt"]) -> "EisensteinInt":
        if isinstance(value, EisensteinInt):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return cls(value, 0)
        raise TypeError(f"cannot interpret {value!r} as an Eisenstein integer")

    @staticmethod
    def _other(value):
        try:
            return EisensteinInt.coerce(value)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return EisensteinInt(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return EisensteinInt(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return mul(self, o)

    __rmul__ = __mul__

    def __neg__(self):
        return EisensteinInt(-self.a, -self.b)

    def __pos__(self):
        return self

    def __pow__(self, exp: int):
        if exp < 0:
            raise ValueError("negative powers are not defined in Z[w]")
        result = ONE
        base = self
        while exp:
            if exp & 1:
                result = result * base
            base = base * base
            exp >>= 1
        return result

    def __divmod__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return divmod_(self, o)

    def __floordiv__(self, other):
        qr = self.__divmod__(other)
        return qr if qr is NotImplemented else qr[0]

    def __mod__(self, other):
        qr = self.__divmod__(other)
        return qr if qr is NotImplemented else qr[1]

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def conj(self) -> "EisensteinInt":
        return conj(self)

    def norm(self) -> int:
        return norm(self)

    def __str__(self):
        if not self.b:
            return str(self.a)
        w = "w" if abs(self.b) == 1 else f"{abs(self.b)}w"
        if not self.a:
            return w if self.b > 0 else f"-{w}"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{w}"


ONE = EisensteinInt(1, 0)
OMEGA = EisensteinInt(0, 1)
OMEGA_SQ = EisensteinInt(-1, -1)
UNITS = (ONE, -ONE, OMEGA, -OMEGA, OMEGA_SQ, -OMEGA_SQ)


def mul(alpha: EisensteinInt, beta: EisensteinInt) -> EisensteinInt:
    a1, b1, a2, b2 = alpha.a, alpha.b, beta.a, beta.b
    return EisensteinInt(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1 - b1 * b2)


def conj(alpha: EisensteinInt) -> EisensteinInt:
    """Complex conjugate: a + b*w_bar = (a - b) - b*w."""
    return EisensteinInt(alpha.a - alpha.b, -alpha.b)


def norm(alpha: EisensteinInt) -> int:
    a, b = alpha.a, alpha.b
    return a * a - a * b + b * b


def _round_half_toward_zero(n: int, d: int) -> int:
    q, r = divmod(n, d)
    twice = 2 * r
    if twice > d:
        return q + 1
    if twice < d:
        return q
    return q + 1 if q < 0 else q


def divmod_(alpha: EisensteinInt, beta: EisensteinInt) -> tuple[EisensteinInt, EisensteinInt]:
    """Euclidean division with norm(remainder) < norm(beta).

    The exact quotient alpha * conj(beta) / N(beta) is rounded coordinate by
    coordinate; the rounding error then has norm at most 3/4.
    """
    n = norm(beta)
    if n == 0:
        raise ZeroDivisionError("division by zero in Z[w]")
    num = mul(alpha, conj(beta))
    quotient = EisensteinInt(_round_half_toward_zero(num.a, n), _round_half_toward_zero(num.b, n))
    return quotient, alpha - mul(quotient, beta)


def associates(alpha: EisensteinInt) -> list[EisensteinInt]:
    return [mul(u, alpha) for u in UNITS]


def is_primary(alpha: EisensteinInt) -> bool:
    return alpha.b % 3 == 0 and norm(alpha) % 3 != 0


def primary_associates(alpha: EisensteinInt) -> list[EisensteinInt]:
    """The two primary unit multiples of alpha, the one with a > 0 first."""
    if norm(alpha) % 3 == 0:
        raise NotPrimaryError(f"{alpha} has norm divisible by 3 and no primary associate")
    found = [x for x in associates(alpha) if is_primary(x)]
    return sorted(found, key=lambda x: x.a < 0)


def _canonical(alpha: EisensteinInt) -> EisensteinInt:
    if norm(alpha) % 3 != 0:
        return primary_associates(alpha)[0]
    # the unique associate in the sector 0 <= arg < 60 degrees
    for x in associates(alpha):
        if x.a > x.b >= 0:
            return x
    raise InternalConsistencyError(f"no associate of {alpha} in the first sector")


def gcd(alpha: EisensteinInt, beta: EisensteinInt) -> EisensteinInt:
    alpha, beta = EisensteinInt.coerce(alpha), EisensteinInt.coerce(beta)
    if not alpha and not beta:
        raise InvalidInputError("gcd(0, 0) is undefined")
    while beta:
        alpha, beta = beta, divmod_(alpha, beta)[1]
    return _canonical(alpha)


def omega_image(mu: EisensteinInt) -> int:
    """The residue s in [0, p) with s = w mod mu, for mu = a + b*w of prime norm p.

    mu divides s - w exactly when a + b*s = 0 mod p.
    """
    p = norm(mu)
    if mu.b % p == 0:
        raise InvalidInputError(f"{mu} is not a complex prime")
    return (-mu.a * pow(mu.b, -1, p)) % p


def residue_pow(alpha: EisensteinInt, e: int, mu: EisensteinInt) -> EisensteinInt:
    """Representative of alpha**e modulo mu by square-and-multiply.

    A rational modulus reduces both coordinates; a complex modulus of prime
    norm p maps into the integers 0..p-1; anything else keeps Euclidean
    remainders.
    """
    alpha, mu = EisensteinInt.coerce(alpha), EisensteinInt.coerce(mu)
    if not mu:
        raise InvalidInputError("modulus must be nonzero")
    if e < 0:
        raise InvalidInputError("exponent must be nonnegative")

    if mu.b == 0:
        m = abs(mu.a)
        result, base = EisensteinInt(1 % m, 0), EisensteinInt(alpha.a % m, alpha.b % m)
        while e:
            if e & 1:
                r = mul(result, base)
                result = EisensteinInt(r.a % m, r.b % m)
            sq = mul(base, base)
            base = EisensteinInt(sq.a % m, sq.b % m)
            e >>= 1
        return result

    p = norm(mu)
    if isprime(p):
        s = omega_image(mu)
        return EisensteinInt(pow((alpha.a + alpha.b * s) % p, e, p), 0)

    result, base = ONE % mu, alpha % mu
    while e:
        if e & 1:
            result = (result * base) % mu
        base = (base * base) % mu
        e >>= 1
    return result


@dataclass(frozen=True, slots=True)
class CubeRoot:
    """w**exponent; exponent 0, 1, 2 stand for 1, w, w_bar."""

    exponent: int = 0

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % 3)

    def __mul__(self, other):
        if isinstance(other, Zero):
            return ZERO
        if isinstance(other, CubeRoot):
            return CubeRoot(self.exponent + other.exponent)
        return NotImplemented

    def __pow__(self, n: int):
        return CubeRoot(self.exponent * n)

    def conjugate(self) -> "CubeRoot":
        return CubeRoot(-self.exponent)

    @property
    def is_one(self) -> bool:
        return self.exponent == 0

    def __str__(self):
        return ("1", "w", "w2")[self.exponent]


class Zero:
    """The value of a character at a multiple of its modulus."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __mul__(self, other):
        if isinstance(other, (Zero, CubeRoot)):
            return self
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return self

    def conjugate(self) -> "Zero":
        return self

    is_one = False

    def __reduce__(self):
        return (Zero, ())

    def __str__(self):
        return "0"

    def __repr__(self):
        return "ZERO"


ZERO = Zero()
CHI_ONE = CubeRoot(0)
CHI_OMEGA = CubeRoot(1)
CHI_OMEGA_BAR = CubeRoot(2)

CharValue = Union[CubeRoot, Zero]
