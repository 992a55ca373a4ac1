"""Assemblées of permutations, their statistics, the insertion algorithm and rho.

An assemblée of size (n+1, r+1) is a list of r+1 nonempty blocks that
partition {1..n+1}, ordered so that the block-ends (last entries) decrease.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, permutations, product
from math import comb
from typing import Iterable, Iterator, Sequence

from .algebra import LaurentPolynomial
from .errors import CapacityError, ParseError, ValidityError
from .shapes import StateWord, Symbol

MAX_ENUMERATION_SIZE = 10


@dataclass(frozen=True)
class Assemblee:
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(int(x) for x in b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        _check_cover(blocks)
        ends = [b[-1] for b in blocks]
        if any(x <= y for x, y in zip(ends, ends[1:])):
            raise ValidityError(f"block-ends {ends} are not strictly decreasing; canonicalize first")

    @property
    def size(self) -> int:
        """n+1, the number of elements."""
        return sum(len(b) for b in self.blocks)

    @property
    def num_blocks(self) -> int:
        """r+1."""
        return len(self.blocks)

    @property
    def block_ends(self) -> tuple[int, ...]:
        return tuple(b[-1] for b in self.blocks)

    @property
    def flat(self) -> tuple[int, ...]:
        return tuple(x for b in self.blocks for x in b)

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]

    @classmethod
    def from_json(cls, data) -> Assemblee:
        try:
            return cls(tuple(tuple(b) for b in data))
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ValidityError):
                raise
            raise ParseError(f"malformed assemblee JSON: {data!r}") from exc

    def __str__(self) -> str:
        return " ".join("[" + ",".join(map(str, b)) + "]" for b in self.blocks)


def _check_cover(blocks: Sequence[Sequence[int]]) -> None:
    if not blocks or any(len(b) == 0 for b in blocks):
        raise ValidityError("an assemblee needs at least one block and no empty blocks")
    elems = [x for b in blocks for x in b]
    if sorted(elems) != list(range(1, len(elems) + 1)):
        dup = [x for x, c in Counter(elems).items() if c > 1]
        reason = f"repeated elements {sorted(dup)}" if dup else "elements are not 1..N"
        raise ValidityError(f"blocks do not partition 1..{len(elems)}: {reason}")


def canonicalize(blocks: Iterable[Sequence[int]]) -> Assemblee:
    """Order raw blocks by decreasing block-end."""
    blocks = [tuple(b) for b in blocks]
    _check_cover(blocks)
    return Assemblee(tuple(sorted(blocks, key=lambda b: -b[-1])))


# --------------------------------------------------------------------------
# statistics
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Statistics:
    lrs: tuple[int, ...]  # left to right in A
    rls: tuple[int, ...]  # right to left in A
    increases: frozenset[int]
    decreases: frozenset[int]


def lrs(a: Assemblee) -> tuple[int, ...]:
    """Elements above the first block-end with every larger element to their left."""
    top = a.block_ends[0]
    out = []
    best = 0
    for x in reversed(a.flat):
        if x > best:
            best = x
            if x > top:
                out.append(x)
    return tuple(reversed(out))


def rls(a: Assemblee) -> tuple[int, ...]:
    """Elements below the last block-end with every larger such element to their right."""
    bottom = a.block_ends[-1]
    out = []
    best = 0
    for x in a.flat:
        if x < bottom and x > best:
            best = x
            out.append(x)
    return tuple(reversed(out))


def statistics(a: Assemblee) -> Statistics:
    flat = a.flat
    pos = {x: i for i, x in enumerate(flat)}
    ends = set(a.block_ends)
    top = len(flat)
    inc, dec = set(), set()
    for x in flat:
        if x in ends:
            continue
        if x == top or pos[x + 1] < pos[x]:
            dec.add(x)
        else:
            inc.add(x)
    return Statistics(lrs(a), rls(a), frozenset(inc), frozenset(dec))


def word_of_assemblee(a: Assemblee) -> StateWord:
    """Increase -> heavy, decrease -> hole, block-end -> light; last block-end dropped."""
    st = statistics(a)
    ends = set(a.block_ends)
    out = []
    for x in a.flat[:-1]:
        if x in ends:
            out.append(Symbol.LIGHT)
        elif x in st.increases:
            out.append(Symbol.HEAVY)
        else:
            out.append(Symbol.HOLE)
    return StateWord(tuple(out))


def weight_of(a: Assemblee) -> LaurentPolynomial:
    """alpha^-|lrs| beta^-|rls|."""
    return LaurentPolynomial.monomial(-len(lrs(a)), -len(rls(a)))


# --------------------------------------------------------------------------
# enumeration
# --------------------------------------------------------------------------


def _check_enum_size(n_plus_1: int, r_plus_1: int, guard: int) -> None:
    if not 1 <= r_plus_1 <= n_plus_1:
        raise ValueError(f"need 1 <= r+1 <= n+1, got ({n_plus_1}, {r_plus_1})")
    if n_plus_1 > guard:
        raise CapacityError(f"assemblee size {n_plus_1} exceeds guard {guard}")


def iter_assemblees(n_plus_1: int, r_plus_1: int,
                    guard: int = MAX_ENUMERATION_SIZE) -> Iterator[Assemblee]:
    """Unordered generator: choose block-ends, then lay the rest out before them."""
    _check_enum_size(n_plus_1, r_plus_1, guard)
    universe = range(1, n_plus_1 + 1)
    free = n_plus_1 - r_plus_1
    cuts = list(combinations_with_replacement(range(free + 1), r_plus_1 - 1))
    for ends in combinations(universe, r_plus_1):
        ends = ends[::-1]
        others = [x for x in universe if x not in ends]
        for perm in permutations(others):
            for cut in cuts:
                bounds = (0,) + cut + (free,)
                yield Assemblee(tuple(perm[bounds[j]:bounds[j + 1]] + (ends[j],)
                                      for j in range(r_plus_1)))


def enumerate_assemblees(n_plus_1: int, r_plus_1: int,
                         guard: int = MAX_ENUMERATION_SIZE) -> list[Assemblee]:
    """All canonical assemblées of the given size, sorted by block structure."""
    return sorted(iter_assemblees(n_plus_1, r_plus_1, guard), key=lambda a: a.blocks)


def assemblee_count(n_plus_1: int, r_plus_1: int) -> int:
    n, r = n_plus_1 - 1, r_plus_1 - 1
    num = 1
    for i in range(r + 2, n + 2):
        num *= i
    return comb(n, r) * num


def assemblee_weight_sum(n_plus_1: int, r_plus_1: int,
                         guard: int = MAX_ENUMERATION_SIZE) -> LaurentPolynomial:
    counts = Counter((-len(lrs(a)), -len(rls(a)), 0)
                     for a in iter_assemblees(n_plus_1, r_plus_1, guard))
    return LaurentPolynomial.from_counts(counts)


# --------------------------------------------------------------------------
# insertion
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedSubexceedant:
    """f on [m] with 1 <= f(i) <= i + r + 1 (m = n - r insertions)."""
    r: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if self.r < 0:
            raise ValidityError("r must be non-negative")
        for i, v in enumerate(self.values, start=1):
            if not 1 <= v <= i + self.r + 1:
                raise ValidityError(f"f({i})={v} outside 1..{i + self.r + 1}")

    @property
    def m(self) -> int:
        return len(self.values)

    @property
    def n(self) -> int:
        return self.m + self.r


@dataclass(frozen=True)
class GreenPointChoice:
    """Number of inserted elements left of the point on each green line, top to bottom."""
    positions: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(int(p) for p in self.positions))
        if not self.positions:
            raise ValidityError("at least one green line is required")
        if any(p < 0 for p in self.positions) or any(
                x > y for x, y in zip(self.positions, self.positions[1:])):
            raise ValidityError(f"green points {self.positions} must be non-decreasing and >= 0")

    def validate_for(self, f: TruncatedSubexceedant) -> None:
        if len(self.positions) != f.r + 1:
            raise ValidityError(f"need {f.r + 1} green points, got {len(self.positions)}")
        if self.positions[-1] != f.m:
            raise ValidityError("the bottom green point must follow the last inserted element")


def iter_subexceedant(m: int, r: int) -> Iterator[TruncatedSubexceedant]:
    for values in product(*(range(1, i + r + 2) for i in range(1, m + 1))):
        yield TruncatedSubexceedant(r, values)


def iter_green_points(m: int, r: int) -> Iterator[GreenPointChoice]:
    for head in combinations_with_replacement(range(m + 1), r):
        yield GreenPointChoice(head + (m,))


@dataclass(frozen=True)
class Insertion:
    assemblee: Assemblee  # before rho
    weight: LaurentPolynomial
    alpha_inverse: int  # number of f(i) = i + r + 1
    beta_inverse: int  # number of f(i) = 1


def insert(f: TruncatedSubexceedant, g: GreenPointChoice) -> Insertion:
    g.validate_for(f)
    r = f.r
    # bottom-to-top stack; green line j (0 = top) is ("line", j)
    stack: list[tuple[str, int]] = [("line", j) for j in range(r, -1, -1)]
    n_alpha = n_beta = 0
    for i, v in enumerate(f.values, start=1):
        stack.insert(v - 1, ("elem", i))
        if v == 1:
            n_beta += 1
        elif v == i + r + 1:
            n_alpha += 1
    height = {item: h for h, item in enumerate(stack, start=1)}
    xs = [height[("elem", i)] for i in range(1, f.m + 1)]
    bs = [height[("line", j)] for j in range(r + 1)]
    blocks = []
    start = 0
    for j, stop in enumerate(g.positions):
        blocks.append(tuple(xs[start:stop]) + (bs[j],))
        start = stop
    weight = LaurentPolynomial.monomial(-n_alpha, -n_beta)
    return Insertion(Assemblee(tuple(blocks)), weight, n_alpha, n_beta)


def rho(a: Assemblee) -> Assemblee:
    """Mirror the entries above b_1 and complement those below b_{r+1}."""
    top, bottom = a.block_ends[0], a.block_ends[-1]
    flat = list(a.flat)
    big = [i for i, x in enumerate(flat) if x > top]
    big_vals = [flat[i] for i in big]
    for i, x in zip(big, reversed(big_vals)):
        flat[i] = x
    for i, x in enumerate(flat):
        if x < bottom:
            flat[i] = bottom - x
    blocks = []
    start = 0
    for b in a.blocks:
        blocks.append(tuple(flat[start:start + len(b)]))
        start += len(b)
    return Assemblee(tuple(blocks))
