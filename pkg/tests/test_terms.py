import pytest

from kbskein.ring import ONE, Q_HALF, LaurentScalar
from kbskein.terms import TermPoly, graded_key, letter_str, monomial_degree, monomial_md, parse_letter


def test_letters():
    assert parse_letter("t12") == (1, 2)
    assert parse_letter("t21") == (1, 2)
    assert parse_letter("t1.12") == (1, 12)
    assert letter_str((1, 12)) == "t1.12"
    assert letter_str((1, 2, 3)) == "t123"
    for bad in ("x1", "t", "t11", "t1234", "t0"):
        with pytest.raises(ValueError):
            parse_letter(bad)


def test_degree_and_md():
    m = ((1,), (1, 2), (2, 3, 4))
    assert monomial_degree(m) == 6
    assert monomial_md(m) == {1: 2, 2: 2, 3: 1, 4: 1}


def test_graded_order():
    ms = [((1, 2),), ((1,),), (), ((2,), (1,)), ((1,), (2,))]
    # degree first; within a degree, fewer letters first
    assert sorted(ms, key=graded_key) == [(), ((1,),), ((1, 2),), ((1,), (2,)), ((2,), (1,))]


def test_algebra():
    t1, t2 = TermPoly.gen(1), TermPoly.gen(2)
    comm = t1 * t2 - t2 * t1
    assert set(comm.terms) == {((1,), (2,)), ((2,), (1,))}
    assert (comm + t2 * t1 - t1 * t2).is_zero()
    assert (TermPoly.one() * t1) == t1
    p = t1.scale(Q_HALF) * t2
    assert p.terms[((1,), (2,))] == Q_HALF
    assert p.degree == 2 and p.edges() == [1, 2]


def test_json_round_trip():
    p = TermPoly({((1,), (1, 2)): LaurentScalar({1: 2}, 1), (): ONE})
    assert TermPoly.from_json(p.to_json()) == p
    assert str(TermPoly()) == "0"
