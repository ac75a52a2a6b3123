import pytest
from sympy import primerange

from cubic import ratchar
from cubic.eisenstein import CHI_OMEGA, CHI_OMEGA_BAR, CHI_ONE, ZERO
from cubic.errors import (
    FactorizationError,
    FallbackExhaustedError,
    InternalConsistencyError,
    InvalidInputError,
    NotPrimeError,
)
from cubic.ratchar import (
    RULES_BY_NAME,
    FactoredInteger,
    RationalCharacter,
    applicable_rules,
    chi,
    chi_prime,
    evaluate_rule,
    explain,
    factor,
)
from cubic.slopes import Slope, undefined_slopes

BIG_P = (3**19 + 5**82) // 4


@pytest.fixture(scope="module")
def rc63601():
    return RationalCharacter.for_prime(63601)


@pytest.mark.parametrize("q, expected", [(2, CHI_OMEGA_BAR), (5, CHI_OMEGA_BAR), (7, CHI_OMEGA)])
def test_prime_values_mod_63601(rc63601, q, expected):
    assert chi_prime(rc63601, q) == expected


def test_490_is_a_cube_mod_63601(rc63601):
    assert chi(rc63601, 490) == CHI_ONE
    assert chi(rc63601, 63601 * 2) is ZERO


def test_large_prime_example():
    rc = RationalCharacter.for_prime(BIG_P)
    assert (rc.L, rc.M) == (5**41, 3**8)
    assert explain(rc, 2) == ratchar.RuleDecision("a", CHI_OMEGA)
    slope = rc.slope(991)
    assert slope == Slope(672)
    assert [rule.name for rule in applicable_rules(991)] == ["e", "f"]
    for rule in applicable_rules(991):
        assert evaluate_rule(rule, 991, slope) == CHI_OMEGA
    assert chi(rc, 1982) == CHI_OMEGA_BAR


def test_rule_b():
    rc = RationalCharacter.for_prime(7)
    assert explain(rc, 3) == ratchar.RuleDecision("b", CHI_OMEGA_BAR)


def test_rule_for_p_itself_is_zero():
    rc = RationalCharacter.for_prime(13)
    assert explain(rc, 13).rule == "zero"
    assert chi_prime(rc, 13) is ZERO


def test_rule_silence():
    assert not RULES_BY_NAME["d"].applies(19)
    assert RULES_BY_NAME["d"].applies(5)
    assert applicable_rules(181) == []
    with pytest.raises(InvalidInputError):
        evaluate_rule(RULES_BY_NAME["d"], 19, Slope(1))


@pytest.mark.parametrize("p", [p for p in primerange(7, 300) if p % 3 == 1])
def test_rules_agree_with_exponentiation(p):
    rc = RationalCharacter.for_prime(p)
    for q in primerange(2, 200):
        if q == p:
            continue
        assert chi_prime(rc, q) == rc.direct(q), (p, q, explain(rc, q))


def test_181_needs_the_fallback():
    seen = False
    for p in (7, 13, 19, 31, 37, 43, 61):
        rc = RationalCharacter.for_prime(p)
        decision = explain(rc, 181)
        if decision.rule == "fallback":
            seen = True
            assert decision.value == rc.direct(181)
    assert seen


def test_fallback_exhausted():
    rc = RationalCharacter.for_prime(7, fallback_bound=13)
    assert rc.fallback_gammas == ()
    with pytest.raises(FallbackExhaustedError):
        ratchar.fallback(rc, 181)


def test_rule_value_in_neither_set_is_an_error():
    rule = RULES_BY_NAME["e"]
    q = 11
    plus = ratchar.slope_set(ratchar.GammaParams(1, 0), q).members
    minus = frozenset(s.negated(q) for s in plus)
    slope = next(s for s in (Slope(v) for v in range(q)) if s not in plus and s not in minus)
    with pytest.raises(InternalConsistencyError, match="neither"):
        ratchar._check_rule_value(rule, q, slope, plus, minus)
    with pytest.raises(InternalConsistencyError, match="both"):
        ratchar._check_rule_value(rule, q, slope, plus | {slope}, minus | {slope})


def test_rule_sets_are_memoised():
    rule = RULES_BY_NAME["f"]
    plus, minus = ratchar.rule_sets(rule, 991)
    assert ratchar.rule_sets(rule, 991)[0] is plus
    assert minus == rule.plus_set(991).negated().members
    assert plus == rule.plus_set(991).members
    assert plus & minus == undefined_slopes(991)


def test_chi_is_multiplicative(rc63601):
    for a in range(2, 30):
        for b in range(2, 30):
            assert chi(rc63601, a * b) == chi(rc63601, a) * chi(rc63601, b)


def test_chi_of_negative_argument(rc63601):
    assert chi(rc63601, -2) == chi(rc63601, 2)
    assert chi(rc63601, -1) == CHI_ONE


def test_factor():
    f = factor(-360)
    assert f == FactoredInteger(-1, ((2, 3), (3, 2), (5, 1)))
    assert f.value == -360
    assert str(f) == "-(2^3 * 3^2 * 5)"
    assert str(factor(1)) == "1"
    with pytest.raises(InvalidInputError):
        factor(0)


def test_factor_reports_unsplit_cofactor(monkeypatch):
    monkeypatch.setattr(ratchar, "factorint", lambda n, **kw: {n: 1})
    with pytest.raises(FactorizationError) as excinfo:
        factor(7 * 11 * 13 * 101, 50)
    assert excinfo.value.cofactor == 7 * 11 * 13 * 101


def test_supplied_factorisation_is_checked(rc63601):
    assert chi(rc63601, 490, FactoredInteger(1, ((2, 1), (5, 1), (7, 2)))) == CHI_ONE
    with pytest.raises(InvalidInputError):
        chi(rc63601, 490, FactoredInteger(1, ((2, 1), (5, 1))))
    with pytest.raises(NotPrimeError):
        chi(rc63601, 8, FactoredInteger(1, ((4, 1), (2, 1))))


def test_explain_rejects_composite(rc63601):
    with pytest.raises(NotPrimeError):
        explain(rc63601, 15)
