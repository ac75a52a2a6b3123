"""The cubic character mod p on ordinary integers, read off from p's (L, M).

For a prime q the value chi(q) is decided by the first rule that speaks:

  a  q = 2, from L and M mod 4
  b  q = 3, from L and M mod 3
  c  q >= 5 and the slope M/L lies where (t^2 - 1)/(t^3 - 9t) takes its values
  d  q != +-1 mod 9, slope against the g_w values
  e  q != +-1 mod 7, slope against the g_{2+3w} values
  f  q != +-1, +-5 mod 13, slope against the g_{4+3w} values

Anything left over is settled with an auxiliary prime l = 1 mod 3 whose
character at q is nontrivial.  Composite arguments are factored and the
prime values multiplied.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce

from sympy import factorint, isprime, primerange

from . import character
from .decompose import Decomposition, decompose_prime
from .eisenstein import CHI_OMEGA, CHI_OMEGA_BAR, CHI_ONE, ZERO, CharValue, CubeRoot, EisensteinInt
from .errors import (
    FactorizationError,
    FallbackExhaustedError,
    InternalConsistencyError,
    InvalidInputError,
    NotPrimeError,
)
from .slopes import GammaParams, Slope, SlopeSet, lehmer_test, omega_slopes, slope_of, slope_set

logger = logging.getLogger(__name__)

DEFAULT_FALLBACK_BOUND = 1000
DEFAULT_FACTOR_BOUND = 10**6


@dataclass(frozen=True)
class SlopeRule:
    """A slope rule: where it is silent and which value its "+" set carries.

    The "+" set is the slope set of ``gamma`` (negated when ``negate``);
    for q in ``plus_omega`` classes a slope in the "+" set means w, in the
    remaining non-silent classes it means w_bar, and the "-" set swaps the two.
    """

    name: str
    gamma: GammaParams
    negate: bool
    modulus: int
    silent: frozenset[int]
    plus_omega: frozenset[int]

    def applies(self, q: int) -> bool:
        return q >= 5 and q % self.modulus not in self.silent

    def plus_set(self, q: int) -> SlopeSet:
        ss = slope_set(self.gamma, q)
        return ss.negated() if self.negate else ss


RULES = (
    SlopeRule("d", GammaParams(0, 1), False, 9, frozenset({1, 8}), frozenset({4, 5})),
    SlopeRule("e", GammaParams(2, 3), True, 7, frozenset({0, 1, 6}), frozenset({2, 5})),
    SlopeRule("f", GammaParams(4, 3), True, 13, frozenset({0, 1, 5, 8, 12}), frozenset({2, 3, 10, 11})),
)
RULES_BY_NAME = {rule.name: rule for rule in RULES}


@dataclass(frozen=True)
class RuleDecision:
    rule: str
    value: CharValue


@dataclass(frozen=True)
class FactoredInteger:
    sign: int
    factors: tuple[tuple[int, int], ...]

    @property
    def value(self) -> int:
        return self.sign * reduce(lambda acc, f: acc * f[0] ** f[1], self.factors, 1)

    def __str__(self):
        body = " * ".join(f"{q}^{e}" if e > 1 else str(q) for q, e in self.factors) or "1"
        return f"-({body})" if self.sign < 0 else body


@lru_cache(maxsize=8192)
def factor(c: int, bound: int = DEFAULT_FACTOR_BOUND) -> FactoredInteger:
    """Factor c by trial division to ``bound`` followed by rho and p-1."""
    if c == 0:
        raise InvalidInputError("0 has no factorization")
    parts = factorint(abs(c), limit=bound, use_trial=True, use_rho=True, use_pm1=True)
    for q in parts:
        if not isprime(q):
            raise FactorizationError(f"could not split {q} within factor bound {bound}", cofactor=q)
    return FactoredInteger(sign=-1 if c < 0 else 1, factors=tuple(sorted(parts.items())))


@lru_cache(maxsize=8192)
def rule_sets(rule: SlopeRule, q: int) -> tuple[frozenset[Slope], frozenset[Slope]]:
    """The "+" and "-" slope sets of a rule at q."""
    plus = rule.plus_set(q).members
    if rule.name == "d":
        literal = frozenset(s.negated(q) for s in omega_slopes(q).members)
        if plus != literal:
            raise InternalConsistencyError(f"g_w values mod {q} disagree with the w-slope polynomials")
    return plus, frozenset(s.negated(q) for s in plus)


def _check_rule_value(
    rule: SlopeRule, q: int, slope: Slope, plus: frozenset[Slope], minus: frozenset[Slope]
) -> CubeRoot:
    in_plus = slope in plus
    in_minus = slope in minus
    if in_plus == in_minus:
        where = "both" if in_plus else "neither"
        raise InternalConsistencyError(f"rule ({rule.name}): slope {slope} mod {q} lies in {where} of the +/- sets")
    plus_value = CHI_OMEGA if q % rule.modulus in rule.plus_omega else CHI_OMEGA_BAR
    return plus_value if in_plus else plus_value.conjugate()


def evaluate_rule(rule: SlopeRule, q: int, slope: Slope) -> CubeRoot:
    """Value rule (d), (e) or (f) assigns to a non-residue q with the given slope."""
    if not rule.applies(q):
        raise InvalidInputError(f"rule ({rule.name}) says nothing about q={q}")
    plus, minus = rule_sets(rule, q)
    return _check_rule_value(rule, q, slope, plus, minus)


def applicable_rules(q: int) -> list[SlopeRule]:
    return [rule for rule in RULES if rule.applies(q)]


@dataclass(frozen=True)
class RationalCharacter:
    decomposition: Decomposition
    fallback_bound: int = DEFAULT_FALLBACK_BOUND
    factor_bound: int = DEFAULT_FACTOR_BOUND

    @classmethod
    def for_prime(
        cls,
        p: int,
        fallback_bound: int = DEFAULT_FALLBACK_BOUND,
        factor_bound: int = DEFAULT_FACTOR_BOUND,
    ) -> "RationalCharacter":
        return cls(decompose_prime(p), fallback_bound=fallback_bound, factor_bound=factor_bound)

    @property
    def p(self) -> int:
        return self.decomposition.p

    @property
    def L(self) -> int:
        return self.decomposition.L

    @property
    def M(self) -> int:
        return self.decomposition.M

    @cached_property
    def fallback_gammas(self) -> tuple[EisensteinInt, ...]:
        return tuple(decompose_prime(l).pi for l in primerange(14, self.fallback_bound + 1) if l % 3 == 1)

    def slope(self, q: int) -> Slope:
        return slope_of(self.L, self.M, q)

    def direct(self, c: int) -> CharValue:
        """chi_pi(c) for the canonical primary pi, by exponentiation."""
        return character.chi(character.context(self.decomposition.pi), c)


def explain(rc: RationalCharacter, q: int) -> RuleDecision:
    if q < 2 or not isprime(q):
        raise NotPrimeError(f"{q} is not prime")
    L, M = rc.L, rc.M

    if q == rc.p:
        return RuleDecision("zero", ZERO)
    if q == 2:
        if L * M % 4 == 0:
            return RuleDecision("a", CHI_ONE)
        return RuleDecision("a", CHI_OMEGA if (L - M) % 4 == 0 else CHI_OMEGA_BAR)
    if q == 3:
        if M % 3 == 0:
            return RuleDecision("b", CHI_ONE)
        return RuleDecision("b", CHI_OMEGA if (L + M) % 3 == 0 else CHI_OMEGA_BAR)
    if lehmer_test(q, L, M):
        return RuleDecision("c", CHI_ONE)

    slope = rc.slope(q)
    for rule in applicable_rules(q):
        value = evaluate_rule(rule, q, slope)
        logger.debug("p=%s q=%s: rule (%s) gives %s for slope %s", rc.p, q, rule.name, value, slope)
        return RuleDecision(rule.name, value)
    return RuleDecision("fallback", fallback(rc, q))


def chi_prime(rc: RationalCharacter, q: int) -> CharValue:
    return explain(rc, q).value


def fallback(rc: RationalCharacter, q: int) -> CubeRoot:
    """chi(q) from an auxiliary primary gamma of prime norm l with chi_gamma(q) != 1."""
    slope = rc.slope(q)
    for gamma in rc.fallback_gammas:
        aux = character.chi(character.context(gamma), q)
        if aux is ZERO or aux.is_one:
            continue
        gp = GammaParams.from_eisenstein(gamma)
        in_gamma = slope in slope_set(gp, q)
        in_conj = slope in slope_set(gp.conj(), q)
        if in_gamma == in_conj:
            raise InternalConsistencyError(f"slope {slope} mod {q} does not separate gamma={gamma} from its conjugate")
        logger.debug("p=%s q=%s: auxiliary gamma=%s with chi_gamma(q)=%s", rc.p, q, gamma, aux)
        if aux == CHI_OMEGA_BAR:
            return CHI_OMEGA if in_gamma else CHI_OMEGA_BAR
        return CHI_OMEGA_BAR if in_gamma else CHI_OMEGA
    raise FallbackExhaustedError(f"no auxiliary prime l <= {rc.fallback_bound} decides chi({q}) mod {rc.p}")


def chi(rc: RationalCharacter, c: int, factored: FactoredInteger | None = None) -> CharValue:
    if c % rc.p == 0:
        return ZERO
    if factored is None:
        factored = factor(c, rc.factor_bound)
    elif factored.value != c:
        raise InvalidInputError(f"factorization {factored} does not multiply out to {c}")

    value: CharValue = CHI_ONE
    for q, e in factored.factors:
        if not isprime(q):
            raise NotPrimeError(f"factor {q} of {c} is not prime")
        value = value * chi_prime(rc, q) ** e
    return value
