"""Rhombic alternative tableaux: fillings of a tiling, weights, partition functions."""

from __future__ import annotations

import enum
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Iterator, Mapping

from .algebra import ALPHA, BETA, LaurentPolynomial
from .errors import CapacityError, ParseError, ValidityError
from .shapes import (StateWord, Symbol, Tile, TileKind, Tiling, all_words, as_word,
                     canonical_tiling)

DEFAULT_MAX_TILES = 30


class Fill(enum.Enum):
    ALPHA = "a"
    BETA = "b"
    Q = "q"
    EMPTY = "."


FILL_ORDER = {Fill.ALPHA: 0, Fill.BETA: 1, Fill.Q: 2, Fill.EMPTY: 3}


@dataclass(frozen=True)
class Tableau:
    """A tiling plus one symbol per tile, aligned with ``tiling.sorted_tiles``."""
    tiling: Tiling
    filling: tuple[Fill, ...]

    def __post_init__(self):
        if len(self.filling) != len(self.tiling.tiles):
            raise ValidityError(
                f"filling has {len(self.filling)} entries for {len(self.tiling.tiles)} tiles")

    @classmethod
    def from_mapping(cls, tiling: Tiling, filling: Mapping[Tile, Fill]) -> Tableau:
        missing = [t for t in tiling.sorted_tiles if t not in filling]
        if missing:
            raise ValidityError(f"filling misses {len(missing)} tile(s), e.g. {missing[0]}")
        return cls(tiling, tuple(filling[t] for t in tiling.sorted_tiles))

    @property
    def word(self) -> StateWord:
        return self.tiling.word

    def symbol_at(self, tile: Tile) -> Fill:
        return self.filling[self.tiling.tile_index[tile]]

    def as_mapping(self) -> dict[Tile, Fill]:
        return dict(zip(self.tiling.sorted_tiles, self.filling))

    def counts(self) -> dict[Fill, int]:
        c = Counter(self.filling)
        return {f: c.get(f, 0) for f in Fill}

    def to_json(self) -> dict:
        data = self.tiling.to_json()
        data["filling"] = [f.value for f in self.filling]
        return data

    @classmethod
    def from_json(cls, data) -> Tableau:
        tiling = Tiling.from_json(data)
        try:
            filling = tuple(Fill(x) for x in data["filling"])
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"malformed tableau filling: {exc}") from exc
        return cls(tiling, filling)


def forced_empty(t: Tableau) -> set[Tile]:
    """Tiles west of a beta in its west-strip or above an alpha in its north-strip."""
    forced = set()
    word = t.word
    for j, chain in enumerate(t.tiling.strip_chains()):
        sym = word.symbols[j]
        if sym is Symbol.LIGHT:
            continue
        trigger = Fill.BETA if sym is Symbol.HEAVY else Fill.ALPHA
        seen = False
        for tile in chain:
            if seen:
                forced.add(tile)
            elif t.symbol_at(tile) is trigger:
                seen = True
    return forced


def violations(t: Tableau) -> list[str]:
    out = []
    forced = forced_empty(t)
    for tile, f in t.as_mapping().items():
        if tile in forced and f is not Fill.EMPTY:
            out.append(f"{tile} must be empty but holds {f.value}")
        if tile not in forced and f is Fill.EMPTY:
            out.append(f"{tile} is not forced empty but is empty")
        if f is Fill.ALPHA and tile.kind is TileKind.TALL:
            out.append(f"alpha in tall tile {tile}")
        if f is Fill.BETA and tile.kind is TileKind.SHORT:
            out.append(f"beta in short tile {tile}")
    return out


def validate_filling(t: Tableau) -> bool:
    return not violations(t)


def _fillings(tiling: Tiling) -> Iterator[list[Fill]]:
    """Depth-first over the sweep order; yields fillings aligned with sorted_tiles.

    The yielded list is reused between iterations; copy it if it must persist.
    """
    n = tiling.word.n
    steps = [(tiling.tile_index[pt.tile], pt.tile.kind, pt.heavy, pt.light)
             for pt in tiling.sweep_order]
    out: list[Fill] = [Fill.EMPTY] * len(steps)
    blocked_west = [False] * n  # beta seen on a heavy letter's strip
    blocked_north = [False] * n  # alpha seen on a hole letter's strip

    def rec(i: int) -> Iterator[list[Fill]]:
        if i == len(steps):
            yield out
            return
        idx, kind, h, l = steps[i]
        if blocked_west[h] or blocked_north[l]:
            out[idx] = Fill.EMPTY
            yield from rec(i + 1)
            return
        if kind is not TileKind.TALL:
            out[idx] = Fill.ALPHA
            blocked_north[l] = True
            yield from rec(i + 1)
            blocked_north[l] = False
        if kind is not TileKind.SHORT:
            out[idx] = Fill.BETA
            blocked_west[h] = True
            yield from rec(i + 1)
            blocked_west[h] = False
        out[idx] = Fill.Q
        yield from rec(i + 1)

    return rec(0)


def _guard(tiling: Tiling, max_tiles: int) -> None:
    if len(tiling.tiles) > max_tiles:
        raise CapacityError(f"{len(tiling.tiles)} tiles exceed guard {max_tiles}")


def enumerate_fillings(tiling: Tiling, max_tiles: int = DEFAULT_MAX_TILES) -> list[Tableau]:
    """All RAT on ``tiling``, ordered lexicographically (alpha < beta < q < empty)."""
    _guard(tiling, max_tiles)
    fills = sorted((tuple(f) for f in _fillings(tiling)),
                   key=lambda f: [FILL_ORDER[x] for x in f])
    return [Tableau(tiling, f) for f in fills]


def count_fillings(tiling: Tiling, max_tiles: int = DEFAULT_MAX_TILES) -> int:
    _guard(tiling, max_tiles)
    return sum(1 for _ in _fillings(tiling))


def _weight_exponent(word: StateWord, filling) -> tuple[int, int, int]:
    c = Counter(filling)
    return (word.k + c[Fill.ALPHA], word.ell + c[Fill.BETA], c[Fill.Q])


def tableau_weight(t: Tableau) -> LaurentPolynomial:
    """alpha^k beta^l times the product of the symbols in the tableau."""
    bad = violations(t)
    if bad:
        raise ValidityError("invalid tableau: " + "; ".join(bad))
    return LaurentPolynomial.monomial(*_weight_exponent(t.word, t.filling))


def tiling_weight(tiling: Tiling, max_tiles: int = DEFAULT_MAX_TILES) -> LaurentPolynomial:
    """Weight generating function of all RAT on one particular tiling."""
    _guard(tiling, max_tiles)
    word = tiling.word
    counts = Counter(_weight_exponent(word, f) for f in _fillings(tiling))
    return LaurentPolynomial.from_counts(counts)


def state_weight(word: StateWord | str, max_tiles: int = DEFAULT_MAX_TILES) -> LaurentPolynomial:
    return tiling_weight(canonical_tiling(as_word(word)), max_tiles)


def _check_size(n: int, r: int) -> None:
    if not 0 <= r <= n:
        raise ValueError(f"need 0 <= r <= n, got n={n}, r={r}")


def partition_function(n: int, r: int, max_tiles: int = DEFAULT_MAX_TILES,
                       jobs: int = 1) -> LaurentPolynomial:
    """Sum of state weights over all C(n,r) 2^(n-r) words with r lights."""
    _check_size(n, r)
    words = all_words(n, r)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            weights = list(pool.map(state_weight, words, [max_tiles] * len(words)))
    else:
        weights = [state_weight(w, max_tiles) for w in words]
    total = LaurentPolynomial.zero()
    for w in weights:
        total = total + w
    return total


def closed_form_partition(n: int, r: int, product_start: int | None = None) -> LaurentPolynomial:
    """(alpha beta)^(n-r) C(n,r) prod_{i=start}^{n-1} (1/alpha + 1/beta + i).

    ``product_start`` defaults to ``r``.  Passing 1 gives the variant whose
    product starts at i=1, kept only to show that it is wrong.
    """
    _check_size(n, r)
    start = r if product_start is None else product_start
    inv_sum = ALPHA ** -1 + BETA ** -1
    result = (ALPHA * BETA) ** (n - r) * comb(n, r)
    for i in range(start, n):
        result = result * (inv_sum + i)
    return result


def lah_number(n: int, r: int) -> int:
    """C(n,r) (n+1)!/(r+1)!: number of RAT of size (n,r)."""
    _check_size(n, r)
    num = 1
    for i in range(r + 2, n + 2):
        num *= i
    return comb(n, r) * num


__all__ = [
    "Fill", "Tableau", "validate_filling", "violations", "forced_empty", "enumerate_fillings",
    "count_fillings", "tableau_weight", "tiling_weight", "state_weight", "partition_function",
    "closed_form_partition", "lah_number",
]
