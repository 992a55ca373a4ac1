from itertools import product
from math import comb, factorial

import pytest

from rhombic.algebra import ALPHA, BETA, ONE, Q
from rhombic.errors import CapacityError, ParseError, ValidityError
from rhombic.rat import (Fill, Tableau, closed_form_partition, count_fillings, enumerate_fillings,
                         lah_number, partition_function, state_weight, tableau_weight,
                         tiling_weight, validate_filling, violations)
from rhombic.shapes import all_words, canonical_tiling, enumerate_tilings


def only(word, fill):
    tiling = canonical_tiling(word)
    return Tableau(tiling, (fill,) * len(tiling.tiles))


def brute_fillings(tiling):
    out = []
    for combo in product(list(Fill), repeat=len(tiling.tiles)):
        t = Tableau(tiling, combo)
        if validate_filling(t):
            out.append(t)
    return out


def test_single_tile_rules():
    assert validate_filling(only("DE", Fill.Q))
    assert not validate_filling(only("DE", Fill.EMPTY))
    assert not validate_filling(only("DA", Fill.ALPHA))
    assert not validate_filling(only("AE", Fill.BETA))
    assert violations(only("DE", Fill.EMPTY))


def test_small_enumerations():
    assert [t.filling for t in enumerate_fillings(canonical_tiling("DE"))] == [
        (Fill.ALPHA,), (Fill.BETA,), (Fill.Q,)]
    assert [t.filling for t in enumerate_fillings(canonical_tiling("DA"))] == [(Fill.BETA,), (Fill.Q,)]
    assert [t.filling for t in enumerate_fillings(canonical_tiling("ED"))] == [()]


@pytest.mark.parametrize("word", ["DDEE", "DAE", "DAEE", "DDAE", "DEDE", "DADE", "ADAE"])
def test_enumeration_matches_brute_force(word):
    for tiling in enumerate_tilings(word):
        fast = enumerate_fillings(tiling)
        slow = brute_fillings(tiling)
        assert {t.filling for t in fast} == {t.filling for t in slow}
        assert len(fast) == len(set(t.filling for t in fast))


def test_weights():
    assert tableau_weight(only("ED", Fill.EMPTY)) == ALPHA * BETA
    assert tableau_weight(only("DE", Fill.ALPHA)) == ALPHA ** 2 * BETA
    assert state_weight("DE") == ALPHA * BETA * (ALPHA + BETA + Q)
    assert state_weight("ED") == ALPHA * BETA
    assert state_weight("AE") == BETA * (ALPHA + Q)
    with pytest.raises(ValidityError):
        tableau_weight(only("DE", Fill.EMPTY))


def test_partition_function_examples():
    assert partition_function(1, 0) == ALPHA + BETA
    assert partition_function(1, 1) == ONE
    assert partition_function(2, 1).specialize(q=1) == ALPHA * 2 + BETA * 2 + ALPHA * BETA * 2


def test_closed_form_examples():
    assert closed_form_partition(1, 0) == ALPHA + BETA
    assert closed_form_partition(2, 1) == ALPHA * 2 + BETA * 2 + ALPHA * BETA * 2
    for n in range(5):
        assert closed_form_partition(n, n) == ONE
    assert closed_form_partition(1, 0, product_start=1) != partition_function(1, 0).specialize(q=1)


def test_parallel_partition_is_identical():
    assert partition_function(4, 1, jobs=2) == partition_function(4, 1)


def test_lah_counts():
    for n in range(6):
        for r in range(n + 1):
            expected = comb(n, r) * factorial(n + 1) // factorial(r + 1)
            assert lah_number(n, r) == expected
            assert sum(count_fillings(canonical_tiling(w)) for w in all_words(n, r)) == expected


def test_weight_is_tiling_independent():
    reference = tiling_weight(canonical_tiling("DADEAE"))
    for tiling in enumerate_tilings("DADEAE"):
        assert tiling_weight(tiling) == reference


def test_guard():
    with pytest.raises(CapacityError):
        enumerate_fillings(canonical_tiling("DDDDAEEEEE"), max_tiles=10)


def test_json_round_trip():
    for t in enumerate_fillings(canonical_tiling("DADE")):
        assert Tableau.from_json(t.to_json()) == t
    data = only("DE", Fill.Q).to_json()
    assert data == {"word": "DE", "tiles": [{"kind": "square", "anchor": [0, 0]}], "filling": ["q"]}
    with pytest.raises(ParseError):
        Tableau.from_json({"word": "DE", "tiles": data["tiles"], "filling": ["z"]})
    with pytest.raises(ValidityError):
        Tableau.from_json({"word": "DE", "tiles": data["tiles"], "filling": []})

