from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rhombic.asep import (bareiss_solve, build_generator, check_stationary, enumerate_states,
                          stationary_distribution, verify_stationarity)
from rhombic.errors import CapacityError, ParameterError, StructureError
from rhombic.rat import state_weight
from rhombic.shapes import parse_word

HALF, THIRD, TWO_FIFTHS = Fraction(1, 2), Fraction(1, 3), Fraction(2, 5)


def gauss_jordan(matrix, rhs):
    m = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(matrix, rhs)]
    size = len(m)
    for c in range(size):
        p = next(i for i in range(c, size) if m[i][c] != 0)
        m[c], m[p] = m[p], m[c]
        m[c] = [x / m[c][c] for x in m[c]]
        for i in range(size):
            if i != c and m[i][c] != 0:
                m[i] = [x - m[i][c] * y for x, y in zip(m[i], m[c])]
    return [row[-1] for row in m]


def rate(g, src, dst):
    i = [str(s) for s in g.states].index(src)
    j = [str(s) for s in g.states].index(dst)
    return g.rates[i].get(j, Fraction(0))


def test_states():
    assert [str(s) for s in enumerate_states(2, 1)] == ["DA", "AD", "AE", "EA"]
    assert [str(s) for s in enumerate_states(1, 0)] == ["D", "E"]
    assert [str(s) for s in enumerate_states(2, 2)] == ["AA"]
    with pytest.raises(ValueError):
        enumerate_states(2, 3)


def test_rates():
    g = build_generator(1, 0, HALF, THIRD, TWO_FIFTHS)
    assert rate(g, "E", "D") == HALF and rate(g, "D", "E") == THIRD
    g = build_generator(2, 1, HALF, THIRD, TWO_FIFTHS)
    assert rate(g, "DA", "AD") == 1 and rate(g, "AD", "DA") == TWO_FIFTHS
    assert rate(g, "AE", "EA") == 1 and rate(g, "EA", "AE") == TWO_FIFTHS
    g = build_generator(2, 2, 1, 1, 1)
    assert g.dense() == [[0]]
    with pytest.raises(ParameterError):
        build_generator(2, 0, 0, 1, 1)
    with pytest.raises(ParameterError):
        build_generator(2, 0, 1, 1, -1)


def test_generator_rows_sum_to_zero():
    for row in build_generator(3, 1, HALF, THIRD, TWO_FIFTHS).dense():
        assert sum(row) == 0


def test_two_state_chain():
    pi = stationary_distribution(build_generator(1, 0, HALF, THIRD, 1))
    assert pi == [Fraction(3, 5), Fraction(2, 5)]
    assert stationary_distribution(build_generator(2, 2, 1, 1, 1)) == [1]


ints = st.integers(-6, 6)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.lists(ints, min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(ints, min_size=n, max_size=n))))
def test_bareiss_matches_gauss_jordan(system):
    matrix, rhs = system
    try:
        expected = gauss_jordan(matrix, rhs)
    except StopIteration:
        with pytest.raises(StructureError):
            bareiss_solve(matrix, rhs)
        return
    assert bareiss_solve(matrix, rhs) == expected


@pytest.mark.parametrize("n,r", [(2, 0), (3, 0), (3, 1), (4, 2)])
def test_solution_is_stationary_and_matches_gauss_jordan(n, r):
    g = build_generator(n, r, HALF, THIRD, TWO_FIFTHS)
    pi = stationary_distribution(g)
    assert check_stationary(g, pi)
    dense = g.dense()
    size = len(dense)
    system = [[dense[j][i] for j in range(size)] for i in range(size - 1)] + [[1] * size]
    assert pi == gauss_jordan(system, [0] * (size - 1) + [1])


def test_reports():
    report = verify_stationarity(1, 0, HALF, THIRD, TWO_FIFTHS)
    assert report.passed
    assert report.states[0].pi == Fraction(3, 5)
    assert verify_stationarity(2, 1, HALF, THIRD, TWO_FIFTHS).passed
    report = verify_stationarity(3, 1, Fraction(2, 7), Fraction(3, 5), THIRD)
    assert report.passed and len(report.states) == 12
    assert verify_stationarity(2, 0, 1, 1, 1).passed


def test_report_json_format():
    data = verify_stationarity(1, 0, HALF, THIRD, TWO_FIFTHS).to_json()
    assert data == {
        "n": 1, "r": 0,
        "params": {"alpha": "1/2", "beta": "1/3", "q": "2/5"},
        "states": [{"word": "D", "pi": "3/5", "tableau_ratio": "3/5", "match": True},
                   {"word": "E", "pi": "2/5", "tableau_ratio": "2/5", "match": True}],
        "pass": True,
    }


def test_weights_are_not_the_uniform_guess():
    # a sanity check that the comparison has teeth: the wrong weight vector fails
    g = build_generator(2, 0, HALF, THIRD, TWO_FIFTHS)
    pi = stationary_distribution(g)
    assert not check_stationary(g, [Fraction(1, 4)] * 4)
    w = [state_weight(s).evaluate(HALF, THIRD, TWO_FIFTHS) for s in g.states]
    assert pi == [x / sum(w) for x in w]
    assert str(g.states[0]) == str(parse_word("DD"))


def test_guard():
    with pytest.raises(CapacityError):
        verify_stationarity(7, 0, 1, 1, 1)
