from dataclasses import replace

import pytest
from sympy import primerange

from cubic.decompose import decompose_prime
from cubic.eisenstein import CHI_OMEGA, CHI_OMEGA_BAR, CHI_ONE
from cubic.errors import InvalidInputError, NotPrimeError
from cubic.selftest import SMALL_TABLES, table_rows
from cubic.tables import (
    STAR,
    Star,
    build_table,
    from_structured,
    lines,
    render_text,
    star_predicate,
    table_modulus,
    to_structured,
    verify_table,
)

BOUND = 20_000


@pytest.fixture(scope="module")
def table5():
    return build_table(5, BOUND)


@pytest.mark.parametrize("q", sorted(SMALL_TABLES))
def test_small_tables(q):
    tbl = build_table(q, BOUND)
    assert table_rows(tbl) == SMALL_TABLES[q]
    assert verify_table(tbl).ok


@pytest.mark.parametrize("q", [11, 13])
def test_larger_tables_are_consistent(q):
    tbl = build_table(q, BOUND)
    report = verify_table(tbl)
    assert report.ok, report.violations
    assert tbl.entry(0, 0) is STAR


def test_witness_primes(table5):
    assert table5.witness[(1, 1)] == 7
    assert table5.entry(1, 1) == CHI_OMEGA
    assert all(p % 3 == 1 for p in table5.witness.values())
    assert table5.entry(6, 6) == table5.entry(1, 1)


def test_modulus():
    assert table_modulus(2) == 4
    assert table_modulus(7) == 7
    assert build_table(2, BOUND).modulus == 4


def test_star_predicate():
    assert star_predicate(5, 0, 0)
    assert star_predicate(5, 1, 2) is None
    assert star_predicate(2, 1, 2)
    assert star_predicate(2, 1, 1) is None
    assert star_predicate(2, 3, 3) is None
    assert star_predicate(2, 2, 2)
    assert star_predicate(2, 1, 3) is None
    assert star_predicate(3, 0, 1)
    assert star_predicate(7, 1, 1)  # 1 + 27 = 28
    assert star_predicate(7, 1, 2) is None


def test_star_is_a_singleton():
    assert Star() is STAR
    assert str(STAR) == "*"


def test_build_table_rejects():
    with pytest.raises(NotPrimeError):
        build_table(9, BOUND)
    with pytest.raises(InvalidInputError):
        build_table(11, 100)


def test_lines_partition_the_plane():
    found = lines(5)
    assert len(found) == 6
    assert all(len(points) == 4 for points in found.values())
    assert sum(len(points) for points in lines(4).values()) == 15


def test_verify_flags_broken_line(table5):
    entries = dict(table5.entries)
    entries[(1, 1)] = entries[(1, 1)].conjugate()
    report = verify_table(replace(table5, entries=entries))
    assert not report.ok
    assert report.of_kind("line-constancy")
    assert report.of_kind("conjugate")


def test_verify_flags_axis_and_partial_line(table5):
    entries = dict(table5.entries)
    entries[(1, 0)] = CHI_OMEGA
    entries[(2, 2)] = STAR
    report = verify_table(replace(table5, entries=entries))
    assert report.of_kind("axis")
    assert report.of_kind("partial-line")


def test_render_text(table5):
    text = render_text(table5).splitlines()
    assert text[0] == f"f_5(l, m) mod 5, stars: no prime below {BOUND}"
    assert text[1] == "  4 | 1  w2 w  w2 w"
    assert text[5] == "  0 | *  1  1  1  1"
    assert text[-1] == "      0  1  2  3  4"


def test_structured_document(table5):
    doc = to_structured(table5)
    assert doc["q"] == "5" and doc["modulus"] == "5"
    assert doc["rows"][0][0] == {"star": True}
    assert doc["rows"][0][1] == {"v": 0, "p": str(table5.witness[(1, 0)])}
    assert doc["rows"][1][1]["p"] == "7"
    back = from_structured(doc)
    assert back == table5
    assert back.witness == table5.witness
    assert back.entry(1, 4) in (CHI_OMEGA, CHI_OMEGA_BAR)
    assert back.entry(1, 0) == CHI_ONE


def test_structured_document_must_be_square(table5):
    doc = to_structured(table5)
    doc["rows"] = doc["rows"][:-1]
    with pytest.raises(InvalidInputError):
        from_structured(doc)


@pytest.mark.parametrize("q", [2, 3, 5, 7, 11, 13])
def test_predicted_stars_are_never_reached(q):
    n = table_modulus(q)
    for p in primerange(7, 5000):
        if p % 3 != 1 or p == q:
            continue
        for L, M in decompose_prime(p).signed_pairs():
            assert star_predicate(q, L % n, M % n) is None, (p, L, M)


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_every_unpredicted_cell_is_filled(q):
    tbl = build_table(q, BOUND)
    for (l, m), cell in tbl.cells():
        assert (cell is STAR) == (star_predicate(q, l, m) is not None), (l, m)
