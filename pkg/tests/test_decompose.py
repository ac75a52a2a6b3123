import pytest

from cubic.decompose import (
    Decomposition,
    cube_root_of_unity,
    decompose_prime,
    lm_from_primary,
    primary_from_lm,
    rational_image,
    search_lm,
)
from cubic.eisenstein import OMEGA, EisensteinInt, conj
from cubic.errors import NotPrimaryError, NotPrimeError, ParityError, ResidueClassError


@pytest.mark.parametrize(
    "p, pi, L, M",
    [
        (7, EisensteinInt(2, 3), 1, 1),
        (13, EisensteinInt(4, 3), 5, 1),
        (31, EisensteinInt(5, 6), 4, 2),
        (63601, EisensteinInt(155, 291), 19, 97),
    ],
)
def test_decompose_prime(p, pi, L, M):
    d = decompose_prime(p)
    assert (d.p, d.pi, d.L, d.M) == (p, pi, L, M)
    assert d.is_canonical
    assert L * L + 27 * M * M == 4 * p


def test_omega_image_is_a_cube_root_of_unity():
    d = decompose_prime(7)
    assert d.omega_image == 4
    assert pow(d.omega_image, 3, 7) == 1
    assert rational_image(OMEGA, d) == d.omega_image
    assert rational_image(d.pi, d) == 0


@pytest.mark.parametrize("p", [7, 13, 19, 31, 37, 97, 1009, 63601])
def test_search_agrees_with_factorisation(p):
    d = decompose_prime(p)
    assert search_lm(p) == [(d.L, d.M)]


def test_sign_patterns_of_associated_primaries():
    d = decompose_prime(63601)
    assert lm_from_primary(-d.pi) == (-19, -97)
    assert lm_from_primary(conj(d.pi)) == (19, -97)
    assert lm_from_primary(-conj(d.pi)) == (-19, 97)
    assert sorted(d.signed_pairs()) == sorted([(19, 97), (-19, -97), (19, -97), (-19, 97)])


def test_from_primary_keeps_the_given_signs():
    d = Decomposition.from_primary(EisensteinInt(-155, -291))
    assert (d.p, d.L, d.M) == (63601, -19, -97)
    assert not d.is_canonical


def test_from_primary_rejects_non_primary_and_rational():
    with pytest.raises(NotPrimaryError):
        Decomposition.from_primary(EisensteinInt(1, 1))
    with pytest.raises(NotPrimeError):
        Decomposition.from_primary(EisensteinInt(5, 0))


def test_primary_from_lm_inverts_lm_from_primary():
    assert primary_from_lm(19, 97) == EisensteinInt(155, 291)
    assert lm_from_primary(primary_from_lm(-4, 2)) == (-4, 2)
    with pytest.raises(ParityError):
        primary_from_lm(1, 2)


def test_cube_root_of_unity():
    assert cube_root_of_unity(7) == 4
    for p in (13, 19, 10009):
        s = cube_root_of_unity(p)
        assert s != 1 and pow(s, 3, p) == 1


@pytest.mark.parametrize("p, error", [(3, ResidueClassError), (5, ResidueClassError), (9, NotPrimeError), (1, NotPrimeError)])
def test_decompose_prime_rejects(p, error):
    with pytest.raises(error):
        decompose_prime(p)


@pytest.mark.parametrize("p", [7, 13, 1009, 63601])
def test_rational_image_is_a_ring_homomorphism(p):
    d = decompose_prime(p)
    samples = [EisensteinInt(3, -2), EisensteinInt(-17, 40), EisensteinInt(p + 1, 5), OMEGA]
    for x in samples:
        for y in samples:
            assert rational_image(x * y, d) == rational_image(x, d) * rational_image(y, d) % p
            assert rational_image(x + y, d) == (rational_image(x, d) + rational_image(y, d)) % p
    assert rational_image(1, d) == 1
    assert rational_image(p, d) == 0
