import pytest
from sympy import primerange

from cubic import slopes
from cubic.decompose import decompose_prime
from cubic.eisenstein import OMEGA, EisensteinInt
from cubic.errors import DegenerateCubicError, DegenerateGammaError, InvalidInputError, NotPrimeError
from cubic.slopes import (
    GAMMA_ONE,
    INFINITY,
    GammaParams,
    Slope,
    census_shape,
    count_roots_cubic,
    g_gamma,
    h_apply,
    invert_all,
    lehmer_g,
    lehmer_original_slopes,
    lehmer_test,
    omega_slopes,
    slope_of,
    slope_set,
    t_domain,
    undefined_slopes,
)


def values(ss):
    return [str(s) for _, s in ss.mapping]


def test_slope_arithmetic():
    assert Slope.projective(3, 2, 7) == Slope(5)
    assert Slope.projective(3, 0, 7) is INFINITY
    with pytest.raises(DegenerateGammaError):
        Slope.projective(0, 7, 7)
    assert Slope(3).negated(7) == Slope(4)
    assert INFINITY.negated(7) is INFINITY
    assert Slope(0).inverted(7) is INFINITY
    assert INFINITY.inverted(7) == Slope(0)
    assert Slope(3).inverted(7) == Slope(5)
    assert str(INFINITY) == "inf"
    assert len(t_domain(7)) == 8


def test_slope_of():
    assert slope_of(19, 97, 5) == Slope(3)
    assert slope_of(5, 1, 5) is INFINITY
    with pytest.raises(InvalidInputError):
        slope_of(5, 10, 5)


@pytest.mark.parametrize("t, q, expected", [(1, 7, Slope(0)), (0, 7, INFINITY), (2, 5, INFINITY), (INFINITY, 7, Slope(0))])
def test_lehmer_g(t, q, expected):
    assert lehmer_g(t, q) == expected


def test_gamma_one_is_lehmers_function():
    for q in (5, 7, 11, 13):
        for t in t_domain(q):
            assert g_gamma(GAMMA_ONE, t, q) == lehmer_g(t, q)
    ss = slope_set(GAMMA_ONE, 5)
    assert ss.multiplicity == {INFINITY: 3, Slope(0): 3}


def test_slope_set_of_omega():
    ss = slope_set(GammaParams.from_eisenstein(OMEGA), 5)
    assert values(ss) == ["1", "2", "1", "1", "2", "2"]
    assert census_shape(ss) == {3: 2}


def test_slope_set_of_omega_bar():
    gp = GammaParams.from_eisenstein(OMEGA).conj()
    assert gp == GammaParams(-1, -1)
    assert values(slope_set(gp, 5)) == ["4", "3", "4", "4", "3", "3"]
    assert values(slope_set(gp, 7)) == ["4", "2", "6", "4", "4", "1", "2", "2"]


def test_omega_polynomial_matches_g_of_omega_bar():
    for q in primerange(5, 60):
        assert omega_slopes(q).mapping == slope_set(GammaParams(-1, -1), q).mapping


def test_slope_set_is_keyed_by_residues():
    assert slope_set(GammaParams(1, 0), 11) is slope_set(GammaParams(12, 11), 11)


def test_negated_slope_set():
    ss = slope_set(GammaParams(0, 1), 5).negated()
    assert ss.members == {Slope(4), Slope(3)}


@pytest.mark.parametrize(
    "gamma, q, error",
    [
        (EisensteinInt(2, 3), 7, DegenerateGammaError),
        (EisensteinInt(1, 0), 3, InvalidInputError),
        (EisensteinInt(1, 0), 9, NotPrimeError),
    ],
)
def test_slope_set_rejects(gamma, q, error):
    with pytest.raises(error):
        slope_set(GammaParams.from_eisenstein(gamma), q)


def test_h_has_order_three():
    q = 13
    assert h_apply(-1, q) is INFINITY
    assert h_apply(INFINITY, q) == Slope(1)
    assert {t for t in t_domain(q) if h_apply(t, q) == t} == {Slope(6), Slope(7)}
    for t in t_domain(q):
        assert h_apply(h_apply(h_apply(t, q), q), q) == t


def test_g_is_invariant_under_h():
    gp = GammaParams(4, 3)
    for q in (7, 11, 19):
        for t in t_domain(q):
            assert g_gamma(gp, h_apply(t, q), q) == g_gamma(gp, t, q)


def test_undefined_slopes():
    assert undefined_slopes(7) == {Slope(6), Slope(1)}
    assert undefined_slopes(11) == frozenset()


@pytest.mark.parametrize("p", [7, 13, 19, 31, 37, 43, 61, 67, 73, 79, 97, 103])
def test_lehmer_test_matches_euler_criterion(p):
    d = decompose_prime(p)
    for q in primerange(2, 60):
        if q == p:
            continue
        for L, M in d.signed_pairs():
            assert lehmer_test(q, L, M) == (pow(q, (p - 1) // 3, p) == 1)


@pytest.mark.parametrize("q", [5, 7, 11, 13, 17, 19, 23])
def test_quadratic_residue_recipe_agrees(q):
    expected = slope_set(GAMMA_ONE, q).members - undefined_slopes(q)
    assert invert_all(lehmer_original_slopes(q), q) == expected


def test_quadratic_residue_recipe_rejects_small_q():
    with pytest.raises(InvalidInputError):
        lehmer_original_slopes(3)


@pytest.mark.parametrize("q, roots", [(13, 3), (5, 0), (7, 1), (1009, 3), (10007, 0)])
def test_count_roots_of_t3_minus_7t_minus_7(q, roots):
    assert count_roots_cubic((1, 0, -7, -7), q) == roots


def test_count_roots_large_prime_path():
    assert count_roots_cubic((1, 0, -7, -7), 1009, exhaustive_below=0) == 3
    assert count_roots_cubic((1, 0, 0, -1), 13, exhaustive_below=0) == 3


def test_count_roots_rejects_degenerate_cubic():
    with pytest.raises(DegenerateCubicError):
        count_roots_cubic((7, 1, 0, 1), 7)
    with pytest.raises(InvalidInputError):
        count_roots_cubic((1, 0, 1), 7)


GAMMAS = [GammaParams(4, 3), GammaParams(2, 5), GammaParams(-7, 3), GammaParams(1, 0), GammaParams(0, 1)]


@pytest.mark.parametrize("q", [5, 11, 13, 17, 19])
@pytest.mark.parametrize("gp", GAMMAS, ids=str)
def test_conjugate_gamma_negates_and_sign_is_irrelevant(gp, q):
    if 6 * gp.to_eisenstein().norm() % q == 0:
        pytest.skip("degenerate at this q")
    ss = slope_set(gp, q)
    assert dict(slope_set(gp.conj(), q).mapping) == dict(ss.negated().mapping)
    assert slope_set(GammaParams(-gp.c, -gp.d), q).mapping == ss.mapping


@pytest.mark.parametrize("q", list(primerange(5, 80)))
@pytest.mark.parametrize("gp", [GAMMA_ONE, GammaParams(0, 1), GammaParams(2, 3), GammaParams(4, 3)], ids=str)
def test_value_census(gp, q):
    if 6 * gp.to_eisenstein().norm() % q == 0:
        pytest.skip("degenerate at this q")
    ss = slope_set(gp, q)
    singles = {s for s, n in ss.multiplicity.items() if n == 1}
    if q % 3 == 2:
        assert census_shape(ss) == {3: (q + 1) // 3}
        assert singles == set()
    else:
        assert census_shape(ss) == {3: (q - 1) // 3, 1: 2}
        assert singles == undefined_slopes(q)


# q != +-1 mod 7, so q is not a cube mod 7 and chi_{2+3w}(q) != 1
@pytest.mark.parametrize("q", [q for q in primerange(5, 120) if q % 7 not in (0, 1, 6)])
def test_lehmer_and_gamma_sets_partition_the_line(q):
    gp = GammaParams(2, 3)
    lehmer = slope_set(GAMMA_ONE, q).members
    undefined = undefined_slopes(q)
    parts = [lehmer - undefined, slope_set(gp, q).members - undefined, slope_set(gp.conj(), q).members - undefined]
    everything = set(t_domain(q)) - undefined
    assert sum(map(len, parts)) == len(everything)
    assert set().union(*parts) == everything


def test_slope_cache_is_bounded_and_clearable():
    assert slopes._cached_slope_set.cache_info().maxsize == slopes.SLOPE_CACHE_SIZE
    first = slope_set(GammaParams(4, 3), 17)
    slopes.clear_cache()
    assert slopes._cached_slope_set.cache_info().currsize == 0
    again = slope_set(GammaParams(4, 3), 17)
    assert again is not first
    assert again.mapping == first.mapping
