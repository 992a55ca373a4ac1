"""Exact stationary distribution of the two-species ASEP with parameters alpha, beta, q.

Dynamics (continuous time): adjacent sites swap at rate 1 when the heavier
particle is on the left and at rate q when it is on the right, with
heavy > light > hole.  A heavy particle enters at site 1 (replacing a hole)
at rate alpha and leaves from site n (leaving a hole) at rate beta.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .algebra import LaurentPolynomial, Scalar, format_rational
from .errors import CapacityError, ParameterError, StructureError
from .rat import state_weight
from .shapes import StateWord, Symbol, all_words

MAX_VERIFY_N = 6


def enumerate_states(n: int, r: int) -> list[StateWord]:
    """All words of length n with r lights, lexicographic with D < A < E."""
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got n={n}, r={r}")
    return all_words(n, r)


@dataclass(frozen=True)
class MarkovGenerator:
    states: tuple[StateWord, ...]
    rates: tuple[dict[int, Fraction], ...]  # off-diagonal rates, rates[i][j] for i -> j

    def diagonal(self, i: int) -> Fraction:
        return -sum(self.rates[i].values(), Fraction(0))

    def dense(self) -> list[list[Fraction]]:
        size = len(self.states)
        out = [[Fraction(0)] * size for _ in range(size)]
        for i, row in enumerate(self.rates):
            for j, v in row.items():
                out[i][j] = v
            out[i][i] = self.diagonal(i)
        return out


def build_generator(n: int, r: int, a: Scalar, b: Scalar, q: Scalar) -> MarkovGenerator:
    a, b, q = Fraction(a), Fraction(b), Fraction(q)
    if a <= 0 or b <= 0:
        raise ParameterError(f"alpha and beta must be positive, got {a}, {b}")
    if q < 0:
        raise ParameterError(f"q must be non-negative, got {q}")
    states = enumerate_states(n, r)
    index = {s.symbols: i for i, s in enumerate(states)}
    rates: list[dict[int, Fraction]] = []
    for s in states:
        row: dict[int, Fraction] = {}

        def add(target: list[Symbol], rate: Fraction) -> None:
            if rate:
                j = index[tuple(target)]
                row[j] = row.get(j, Fraction(0)) + rate

        sym = list(s.symbols)
        for i in range(n - 1):
            x, y = sym[i], sym[i + 1]
            if x is y:
                continue
            swapped = sym[:i] + [y, x] + sym[i + 2:]
            add(swapped, Fraction(1) if x.rank > y.rank else q)
        if n and sym[0] is Symbol.HOLE:
            add([Symbol.HEAVY] + sym[1:], a)
        if n and sym[-1] is Symbol.HEAVY:
            add(sym[:-1] + [Symbol.HOLE], b)
        rates.append(row)
    return MarkovGenerator(tuple(states), tuple(rates))


def bareiss_solve(matrix: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[Fraction]:
    """Solve a square integer system exactly with fraction-free elimination."""
    size = len(matrix)
    m = [list(row) + [v] for row, v in zip(matrix, rhs)]
    prev = 1
    for k in range(size):
        pivot = next((i for i in range(k, size) if m[i][k] != 0), None)
        if pivot is None:
            raise StructureError(f"singular system: no pivot in column {k}")
        m[k], m[pivot] = m[pivot], m[k]
        pk = m[k][k]
        row_k = m[k]
        for i in range(k + 1, size):
            row_i = m[i]
            f = row_i[k]
            for j in range(k + 1, size + 1):
                row_i[j] = (row_i[j] * pk - f * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    x = [Fraction(0)] * size
    for i in range(size - 1, -1, -1):
        s = Fraction(m[i][size]) - sum((m[i][j] * x[j] for j in range(i + 1, size)), Fraction(0))
        x[i] = s / m[i][i]
    return x


def stationary_distribution(g: MarkovGenerator) -> list[Fraction]:
    """The probability vector pi with pi G = 0."""
    dense = g.dense()
    size = len(dense)
    # pi G = 0  <=>  G^T pi^T = 0; the last equation is replaced by sum(pi) = 1
    system = [[dense[j][i] for j in range(size)] for i in range(size)]
    system[-1] = [Fraction(1)] * size
    rhs = [Fraction(0)] * (size - 1) + [Fraction(1)]
    int_rows, int_rhs = [], []
    for row, v in zip(system, rhs):
        scale = lcm(*(x.denominator for x in row), v.denominator)
        int_rows.append([int(x * scale) for x in row])
        int_rhs.append(int(v * scale))
    return bareiss_solve(int_rows, int_rhs)


def check_stationary(g: MarkovGenerator, pi: Sequence[Fraction]) -> bool:
    """pi G = 0 and sum(pi) = 1, exactly."""
    if sum(pi, Fraction(0)) != 1:
        return False
    for j in range(len(pi)):
        flow = pi[j] * g.diagonal(j)
        for i, row in enumerate(g.rates):
            if j in row:
                flow += pi[i] * row[j]
        if flow != 0:
            return False
    return True


@dataclass(frozen=True)
class StateCheck:
    word: StateWord
    pi: Fraction
    tableau_ratio: Fraction

    @property
    def match(self) -> bool:
        return self.pi == self.tableau_ratio


@dataclass(frozen=True)
class AsepReport:
    n: int
    r: int
    params: tuple[Fraction, Fraction, Fraction]
    states: tuple[StateCheck, ...]

    @property
    def passed(self) -> bool:
        return all(s.match for s in self.states)

    def mismatches(self) -> list[StateCheck]:
        return [s for s in self.states if not s.match]

    def to_json(self) -> dict:
        a, b, q = self.params
        return {
            "n": self.n,
            "r": self.r,
            "params": {"alpha": format_rational(a), "beta": format_rational(b),
                       "q": format_rational(q)},
            "states": [{"word": str(s.word), "pi": format_rational(s.pi),
                        "tableau_ratio": format_rational(s.tableau_ratio), "match": s.match}
                       for s in self.states],
            "pass": self.passed,
        }


def verify_stationarity(n: int, r: int, a: Scalar, b: Scalar, q: Scalar,
                        max_n: int = MAX_VERIFY_N) -> AsepReport:
    """Compare the exact stationary vector with weight(X) / Z_{n,r} for every state."""
    if n > max_n:
        raise CapacityError(f"n={n} exceeds the verification guard {max_n}")
    a, b, q = Fraction(a), Fraction(b), Fraction(q)
    g = build_generator(n, r, a, b, q)
    pi = stationary_distribution(g)
    weights = [state_weight(s) for s in g.states]
    partition = sum(weights, LaurentPolynomial.zero())
    z = partition.evaluate(a, b, q)
    checks = tuple(StateCheck(s, p, w.evaluate(a, b, q) / z)
                   for s, p, w in zip(g.states, pi, weights))
    return AsepReport(n, r, (a, b, q), checks)
