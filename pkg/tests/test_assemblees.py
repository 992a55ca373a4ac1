from itertools import combinations, permutations
from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rhombic.algebra import ALPHA, BETA, ONE
from rhombic.errors import CapacityError, ParseError, ValidityError
from rhombic.assemblees import (Assemblee, GreenPointChoice, TruncatedSubexceedant,
                                assemblee_count, assemblee_weight_sum, canonicalize,
                                enumerate_assemblees, insert, iter_green_points, iter_subexceedant,
                                lrs, rho, rls, statistics, weight_of, word_of_assemblee)


def brute_assemblees(size, blocks):
    """Cut every permutation into nonempty pieces and keep decreasing block-ends."""
    out = set()
    for perm in permutations(range(1, size + 1)):
        for cuts in combinations(range(1, size), blocks - 1):
            bounds = (0,) + cuts + (size,)
            parts = tuple(perm[bounds[i]:bounds[i + 1]] for i in range(blocks))
            ends = [p[-1] for p in parts]
            if all(x > y for x, y in zip(ends, ends[1:])):
                out.add(parts)
    return out


def brute_lrs(a):
    flat, top = a.flat, a.block_ends[0]
    return tuple(x for i, x in enumerate(flat) if x > top and all(y < x for y in flat[i + 1:]))


def brute_rls(a):
    flat, bottom = a.flat, a.block_ends[-1]
    small = [x for x in flat if x < bottom]
    hits = [x for i, x in enumerate(small) if all(y < x for y in small[:i])]
    return tuple(reversed(hits))


@st.composite
def assemblees(draw, max_size=8):
    size = draw(st.integers(1, max_size))
    perm = draw(st.permutations(range(1, size + 1)))
    cuts = sorted(draw(st.sets(st.integers(1, size - 1), max_size=size - 1))) if size > 1 else []
    bounds = [0] + cuts + [size]
    return canonicalize(perm[bounds[i]:bounds[i + 1]] for i in range(len(bounds) - 1))


def test_canonicalize(running_assemblee):
    assert canonicalize([[5, 9, 1, 8, 6], [3, 11, 4], [2, 10, 12, 7]]) == running_assemblee
    assert canonicalize([[1]]).blocks == ((1,),)
    with pytest.raises(ValidityError):
        canonicalize([[1, 2], [2, 3]])
    with pytest.raises(ValidityError):
        Assemblee(((1,), (2,)))


def test_running_statistics(running_assemblee):
    st_ = statistics(running_assemblee)
    assert st_.lrs == (12, 11)
    assert st_.rls == (3, 2)
    assert st_.increases == {2, 10, 5, 3}
    assert st_.decreases == {12, 9, 1, 8, 11}
    assert str(word_of_assemblee(running_assemblee)) == "DDEADEEEADE"


def test_tiny_statistics():
    a, b = Assemblee(((1, 2),)), Assemblee(((2, 1),))
    assert (lrs(a), rls(a), str(word_of_assemblee(a))) == ((), (1,), "D")
    assert (lrs(b), rls(b), str(word_of_assemblee(b))) == ((2,), (), "E")
    assert weight_of(a) == BETA ** -1


@given(assemblees())
def test_statistics_match_brute_force(a):
    assert lrs(a) == brute_lrs(a)
    assert rls(a) == brute_rls(a)
    word = word_of_assemblee(a)
    assert word.n == a.size - 1 and word.r == a.num_blocks - 1


@given(assemblees())
def test_json_round_trip(a):
    assert Assemblee.from_json(a.to_json()) == a


def test_json_errors():
    with pytest.raises(ParseError):
        Assemblee.from_json([[1, "x"]])
    with pytest.raises(ValidityError):
        Assemblee.from_json([[1], [1]])


@pytest.mark.parametrize("size,blocks", [(1, 1), (2, 1), (3, 2), (3, 3), (4, 2), (5, 3), (6, 2)])
def test_enumeration_matches_brute_force(size, blocks):
    listed = enumerate_assemblees(size, blocks)
    assert {a.blocks for a in listed} == brute_assemblees(size, blocks)
    n, r = size - 1, blocks - 1
    assert len(listed) == assemblee_count(size, blocks) == comb(n, r) * factorial(n + 1) // factorial(r + 1)
    assert [a.blocks for a in listed] == sorted(a.blocks for a in listed)


def test_small_counts():
    assert [a.to_json() for a in enumerate_assemblees(2, 1)] == [[[1, 2]], [[2, 1]]]
    assert [a.to_json() for a in enumerate_assemblees(3, 3)] == [[[3], [2], [1]]]
    assert len(enumerate_assemblees(3, 2)) == 6
    with pytest.raises(CapacityError):
        enumerate_assemblees(11, 2)


def test_weight_sums():
    assert assemblee_weight_sum(2, 1) == ALPHA ** -1 + BETA ** -1
    assert assemblee_weight_sum(3, 2) == (ALPHA ** -1 + BETA ** -1 + 1) * 2
    assert assemblee_weight_sum(4, 4) == ONE


def test_insertion_worked_example():
    ins = insert(TruncatedSubexceedant(2, (3, 5, 2, 6, 1, 9, 2, 1)), GreenPointChoice((3, 6, 8)))
    assert ins.assemblee.to_json() == [[7, 10, 5, 8], [9, 2, 11, 6], [3, 1, 4]]
    assert ins.weight == ALPHA ** -2 * BETA ** -2
    assert rho(ins.assemblee).to_json() == [[7, 11, 5, 8], [9, 2, 10, 6], [1, 3, 4]]


def test_single_insertions():
    # f(1) = 1 lands below the line (beta^-1); f(1) = 2 lands above it (alpha^-1)
    low = insert(TruncatedSubexceedant(0, (1,)), GreenPointChoice((1,)))
    high = insert(TruncatedSubexceedant(0, (2,)), GreenPointChoice((1,)))
    assert (low.assemblee.to_json(), low.weight) == ([[1, 2]], BETA ** -1)
    assert (high.assemblee.to_json(), high.weight) == ([[2, 1]], ALPHA ** -1)


def test_insertion_input_validation():
    with pytest.raises(ValidityError):
        TruncatedSubexceedant(0, (3,))
    with pytest.raises(ValidityError):
        GreenPointChoice((2, 1))
    with pytest.raises(ValidityError):
        insert(TruncatedSubexceedant(1, (1,)), GreenPointChoice((1,)))
    with pytest.raises(ValidityError):
        insert(TruncatedSubexceedant(0, (1,)), GreenPointChoice((0,)))


def test_rho_fixed_points():
    a = Assemblee(((3,), (2,), (1,)))
    assert rho(a) == a


@given(assemblees())
def test_rho_is_an_involution(a):
    assert rho(rho(a)) == a


@pytest.mark.parametrize("n,r", [(2, 0), (3, 1), (4, 2), (4, 0)])
def test_insertion_is_a_weighted_bijection(n, r):
    m = n - r
    images = {}
    for f in iter_subexceedant(m, r):
        for g in iter_green_points(m, r):
            ins = insert(f, g)
            image = rho(ins.assemblee)
            assert image not in images
            images[image] = ins
            assert weight_of(image) == ins.weight
    assert set(images) == set(enumerate_assemblees(n + 1, r + 1))
