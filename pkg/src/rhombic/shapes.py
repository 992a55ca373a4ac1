"""State words, rhombic diagrams, their tilings, hexagon flips and strips.

Coordinates put the NE corner of every diagram at the origin.  The three
unit steps are W=(-1,0), S=(0,-1) and SW=(-1,-1); a HOLE draws a W edge, a
LIGHT particle an SW edge and a HEAVY particle an S edge.  The NW boundary
is the sorted word W^l SW^r S^k and the SE boundary spells the word itself.

A tiling is stored as a set of tiles.  Every tiling of a diagram can be
peeled off the SE boundary one tile at a time, each peel swapping two
adjacent boundary steps.  Following which word letter sits at which boundary
position during the peel gives the strips: the tiles a letter's trajectory
crosses form its west-, north- or northwest-strip.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterator

from .errors import CapacityError, InvalidFlipError, ParseError, ValidityError

Point = tuple[int, int]
Edge = tuple[Point, Point]  # (NE endpoint, SW endpoint)


class Symbol(enum.Enum):
    HEAVY = "D"
    LIGHT = "A"
    HOLE = "E"

    @property
    def rank(self) -> int:
        return _RANK[self]

    @property
    def step(self) -> Point:
        return _STEP[self]


_RANK = {Symbol.HOLE: 0, Symbol.LIGHT: 1, Symbol.HEAVY: 2}
W: Point = (-1, 0)
S: Point = (0, -1)
SW: Point = (-1, -1)
_STEP = {Symbol.HOLE: W, Symbol.LIGHT: SW, Symbol.HEAVY: S}


def _add(p: Point, *steps: Point) -> Point:
    x, y = p
    for dx, dy in steps:
        x += dx
        y += dy
    return (x, y)


def edge_direction(edge: Edge) -> str:
    (x1, y1), (x2, y2) = edge
    return {W: "horizontal", S: "vertical", SW: "diagonal"}[(x2 - x1, y2 - y1)]


# --------------------------------------------------------------------------
# words and diagrams
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class StateWord:
    symbols: tuple[Symbol, ...]

    @property
    def n(self) -> int:
        return len(self.symbols)

    @property
    def k(self) -> int:
        return self.symbols.count(Symbol.HEAVY)

    @property
    def r(self) -> int:
        return self.symbols.count(Symbol.LIGHT)

    @property
    def ell(self) -> int:
        return self.symbols.count(Symbol.HOLE)

    def __str__(self) -> str:
        return "".join(s.value for s in self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self.symbols)


def parse_word(text: str) -> StateWord:
    """Parse a word over D (heavy), A (light), E (hole)."""
    if not text:
        raise ParseError("empty state word", 0)
    symbols = []
    for i, ch in enumerate(text):
        try:
            symbols.append(Symbol(ch))
        except ValueError:
            raise ParseError(f"illegal character {ch!r} at position {i}; expected D, A or E", i) from None
    return StateWord(tuple(symbols))


def as_word(word: StateWord | str) -> StateWord:
    return parse_word(word) if isinstance(word, str) else word


def inversions(word: StateWord) -> tuple[int, int, int]:
    """Pair counts (heavy-before-hole, heavy-before-light, light-before-hole)."""
    dh = da = ah = 0
    heavy = light = 0
    for s in word:
        if s is Symbol.HEAVY:
            heavy += 1
        elif s is Symbol.LIGHT:
            da += heavy
            light += 1
        else:
            dh += heavy
            ah += light
    return dh, da, ah


def _path_points(steps) -> list[Point]:
    pts = [(0, 0)]
    for st in steps:
        pts.append(_add(pts[-1], st))
    return pts


@dataclass(frozen=True)
class RhombicDiagram:
    word: StateWord
    nw_path: tuple[Point, ...]
    se_path: tuple[Point, ...]
    area: int

    @property
    def sorted_symbols(self) -> tuple[Symbol, ...]:
        w = self.word
        return (Symbol.HOLE,) * w.ell + (Symbol.LIGHT,) * w.r + (Symbol.HEAVY,) * w.k

    def se_edges(self) -> list[Edge]:
        pts = _path_points(self.se_path)
        return list(zip(pts, pts[1:]))

    def nw_edges(self) -> list[Edge]:
        pts = _path_points(self.nw_path)
        return list(zip(pts, pts[1:]))

    def tile_budget(self) -> tuple[int, int, int]:
        """Expected (#square, #tall, #short) of any tiling."""
        return inversions(self.word)


def build_diagram(word: StateWord | str) -> RhombicDiagram:
    word = as_word(word)
    se = tuple(s.step for s in word)
    nw = (W,) * word.ell + (SW,) * word.r + (S,) * word.k
    return RhombicDiagram(word, nw, se, sum(inversions(word)))


# --------------------------------------------------------------------------
# tiles
# --------------------------------------------------------------------------


class TileKind(enum.Enum):
    SQUARE = "square"
    TALL = "tall"
    SHORT = "short"


_KIND_ORDER = {TileKind.SQUARE: 0, TileKind.TALL: 1, TileKind.SHORT: 2}
# (heavier step on the east edge, lighter step on the south edge)
_KIND_STEPS = {TileKind.SQUARE: (S, W), TileKind.TALL: (S, SW), TileKind.SHORT: (SW, W)}
_PAIR_KIND = {
    (Symbol.HEAVY, Symbol.HOLE): TileKind.SQUARE,
    (Symbol.HEAVY, Symbol.LIGHT): TileKind.TALL,
    (Symbol.LIGHT, Symbol.HOLE): TileKind.SHORT,
}


@dataclass(frozen=True)
class Tile:
    kind: TileKind
    anchor: Point  # NE-most vertex

    @property
    def has_horizontal(self) -> bool:
        return self.kind is not TileKind.TALL

    @property
    def has_vertical(self) -> bool:
        return self.kind is not TileKind.SHORT

    def vertices(self) -> tuple[Point, Point, Point, Point]:
        """Vertices in boundary order: anchor, east-south, far corner, north-west."""
        x, y = _KIND_STEPS[self.kind]
        v = self.anchor
        return (v, _add(v, x), _add(v, x, y), _add(v, y))

    @property
    def east(self) -> Edge:
        x, _ = _KIND_STEPS[self.kind]
        return (self.anchor, _add(self.anchor, x))

    @property
    def south(self) -> Edge:
        x, y = _KIND_STEPS[self.kind]
        return (_add(self.anchor, x), _add(self.anchor, x, y))

    @property
    def north(self) -> Edge:
        _, y = _KIND_STEPS[self.kind]
        return (self.anchor, _add(self.anchor, y))

    @property
    def west(self) -> Edge:
        x, y = _KIND_STEPS[self.kind]
        return (_add(self.anchor, y), _add(self.anchor, y, x))

    def centroid(self) -> tuple[float, float]:
        xs, ys = zip(*self.vertices())
        return (sum(xs) / 4, sum(ys) / 4)

    def sort_key(self):
        return (-self.anchor[1], -self.anchor[0], _KIND_ORDER[self.kind])

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "anchor": [self.anchor[0], self.anchor[1]]}

    @classmethod
    def from_json(cls, data) -> Tile:
        try:
            return cls(TileKind(data["kind"]), (int(data["anchor"][0]), int(data["anchor"][1])))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise ParseError(f"malformed tile JSON: {data!r}") from exc


# --------------------------------------------------------------------------
# tilings
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PeeledTile:
    """A tile with the two word letters whose trajectories cross in it."""
    tile: Tile
    heavy: int  # letter on the east/west edges
    light: int  # letter on the south/north edges


def _peel(diagram: RhombicDiagram, tiles: frozenset[Tile]) -> list[PeeledTile]:
    """Remove tiles from the SE boundary until the NW boundary is reached.

    Raises ValidityError when the tiles do not exactly cover the diagram.
    """
    symbols = list(diagram.word.symbols)
    letters = list(range(len(symbols)))
    remaining = set(tiles)
    order: list[PeeledTile] = []
    while True:
        p = (0, 0)
        found = None
        swappable = False
        for i in range(len(symbols) - 1):
            a, b = symbols[i], symbols[i + 1]
            if a.rank > b.rank:
                swappable = True
                tile = Tile(_PAIR_KIND[(a, b)], p)
                if tile in remaining:
                    found = (i, tile)
                    break
            p = _add(p, a.step)
        if found is None:
            if swappable or remaining:
                raise ValidityError(
                    f"tiles do not form a tiling of the diagram of {diagram.word} "
                    f"({len(remaining)} tile(s) left unplaced)")
            return order
        i, tile = found
        remaining.discard(tile)
        order.append(PeeledTile(tile, letters[i], letters[i + 1]))
        symbols[i], symbols[i + 1] = symbols[i + 1], symbols[i]
        letters[i], letters[i + 1] = letters[i + 1], letters[i]


@dataclass(frozen=True)
class Tiling:
    diagram: RhombicDiagram
    tiles: frozenset[Tile]

    def __post_init__(self):
        object.__setattr__(self, "tiles", frozenset(self.tiles))
        self.peeled  # validates

    @property
    def word(self) -> StateWord:
        return self.diagram.word

    @cached_property
    def peeled(self) -> tuple[PeeledTile, ...]:
        return tuple(_peel(self.diagram, self.tiles))

    @cached_property
    def sorted_tiles(self) -> tuple[Tile, ...]:
        return tuple(sorted(self.tiles, key=Tile.sort_key))

    @cached_property
    def tile_index(self) -> dict[Tile, int]:
        return {t: i for i, t in enumerate(self.sorted_tiles)}

    @cached_property
    def crossings(self) -> dict[Tile, PeeledTile]:
        return {pt.tile: pt for pt in self.peeled}

    @cached_property
    def levels(self) -> dict[Tile, int]:
        """Longest distance of each tile from the SE boundary (1 = on it)."""
        last = [0] * self.word.n
        level = {}
        for pt in self.peeled:
            lv = 1 + max(last[pt.heavy], last[pt.light])
            level[pt.tile] = lv
            last[pt.heavy] = last[pt.light] = lv
        return level

    @cached_property
    def sweep_order(self) -> tuple[PeeledTile, ...]:
        """Default processing order: by topological level, then JSON order."""
        lv = self.levels
        return tuple(sorted(self.peeled, key=lambda pt: (lv[pt.tile], pt.tile.sort_key())))

    def strip_chains(self) -> list[list[Tile]]:
        """For each word letter, the tiles its trajectory crosses, SE to NW."""
        chains: list[list[Tile]] = [[] for _ in range(self.word.n)]
        for pt in self.peeled:
            chains[pt.heavy].append(pt.tile)
            chains[pt.light].append(pt.tile)
        return chains

    def predecessors(self) -> dict[Tile, list[Tile]]:
        preds: dict[Tile, list[Tile]] = {t: [] for t in self.tiles}
        for chain in self.strip_chains():
            for a, b in zip(chain, chain[1:]):
                preds[b].append(a)
        return preds

    def kind_counts(self) -> tuple[int, int, int]:
        c = {k: 0 for k in TileKind}
        for t in self.tiles:
            c[t.kind] += 1
        return (c[TileKind.SQUARE], c[TileKind.TALL], c[TileKind.SHORT])

    def to_json(self) -> dict:
        return {"word": str(self.word), "tiles": [t.to_json() for t in self.sorted_tiles]}

    @classmethod
    def from_json(cls, data) -> Tiling:
        try:
            word = parse_word(data["word"])
            tiles = frozenset(Tile.from_json(t) for t in data["tiles"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed tiling JSON: {exc}") from exc
        return cls(build_diagram(word), tiles)


def canonical_tiling(diagram: RhombicDiagram | StateWord | str) -> Tiling:
    """Tile by bubble-sorting the SE path, always swapping the leftmost inversion."""
    word = diagram.word if isinstance(diagram, RhombicDiagram) else as_word(diagram)
    return _canonical_tiling(word)


@lru_cache(maxsize=4096)
def _canonical_tiling(word: StateWord) -> Tiling:
    diagram = build_diagram(word)
    symbols = list(diagram.word.symbols)
    tiles = set()
    while True:
        p = (0, 0)
        for i in range(len(symbols) - 1):
            a, b = symbols[i], symbols[i + 1]
            if a.rank > b.rank:
                tiles.add(Tile(_PAIR_KIND[(a, b)], p))
                symbols[i], symbols[i + 1] = b, a
                break
            p = _add(p, a.step)
        else:
            return Tiling(diagram, frozenset(tiles))


def enumerate_tilings(diagram: RhombicDiagram | StateWord | str,
                      max_tiles: int = 12) -> list[Tiling]:
    """Every tiling of the diagram, in lexicographic order of sorted tile lists."""
    if not isinstance(diagram, RhombicDiagram):
        diagram = build_diagram(diagram)
    if diagram.area > max_tiles:
        raise CapacityError(f"diagram area {diagram.area} exceeds guard {max_tiles}")
    memo: dict[tuple[Symbol, ...], frozenset[frozenset[Tile]]] = {}

    def rec(path: tuple[Symbol, ...]) -> frozenset[frozenset[Tile]]:
        if path in memo:
            return memo[path]
        out = set()
        p = (0, 0)
        for i in range(len(path) - 1):
            a, b = path[i], path[i + 1]
            if a.rank > b.rank:
                tile = Tile(_PAIR_KIND[(a, b)], p)
                swapped = path[:i] + (b, a) + path[i + 2:]
                for rest in rec(swapped):
                    out.add(rest | {tile})
            p = _add(p, a.step)
        if not out:
            out.add(frozenset())
        memo[path] = frozenset(out)
        return memo[path]

    sets = rec(diagram.word.symbols)
    keyed = sorted(sets, key=lambda ts: [t.sort_key() for t in sorted(ts, key=Tile.sort_key)])
    return [Tiling(diagram, ts) for ts in keyed]


# --------------------------------------------------------------------------
# flips
# --------------------------------------------------------------------------


def _hexagon_configs(center: Point) -> tuple[frozenset[Tile], frozenset[Tile]]:
    p = _add(center, (1, 1))
    first = frozenset({Tile(TileKind.TALL, p), Tile(TileKind.SQUARE, _add(p, SW)),
                       Tile(TileKind.SHORT, p)})
    second = frozenset({Tile(TileKind.SHORT, _add(p, S)), Tile(TileKind.SQUARE, p),
                        Tile(TileKind.TALL, _add(p, W))})
    return first, second


def flippable_hexagons(tiling: Tiling) -> list[Point]:
    """Centers of all hexagons formed by a square, a tall and a short tile."""
    centers = set()
    for t in tiling.tiles:
        if t.kind is TileKind.SHORT:
            for center in (_add(t.anchor, SW), _add(t.anchor, SW, (0, 1))):
                first, second = _hexagon_configs(center)
                if first <= tiling.tiles or second <= tiling.tiles:
                    centers.add(center)
    return sorted(centers, key=lambda c: (-c[1], -c[0]))


def apply_flip(tiling: Tiling, hexagon_center: Point) -> Tiling:
    """Rotate the three tiles of the hexagon centred at ``hexagon_center``."""
    first, second = _hexagon_configs(tuple(hexagon_center))
    if first <= tiling.tiles:
        new = (tiling.tiles - first) | second
    elif second <= tiling.tiles:
        new = (tiling.tiles - second) | first
    else:
        raise InvalidFlipError(f"no flippable hexagon centred at {tuple(hexagon_center)}")
    return Tiling(tiling.diagram, new)


def flip_closure(tiling: Tiling) -> list[Tiling]:
    seen = {tiling.tiles: tiling}
    stack = [tiling]
    while stack:
        t = stack.pop()
        for c in flippable_hexagons(t):
            u = apply_flip(t, c)
            if u.tiles not in seen:
                seen[u.tiles] = u
                stack.append(u)
    return list(seen.values())


# --------------------------------------------------------------------------
# strips
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Strip:
    letter: int  # index into the word
    symbol: Symbol
    tiles: tuple[Tile, ...]  # SE to NW
    se_edge: Edge
    nw_edge: Edge

    @property
    def is_empty(self) -> bool:
        return not self.tiles


@dataclass(frozen=True)
class StripDecomposition:
    west_strips: tuple[Strip, ...]
    north_strips: tuple[Strip, ...]
    nw_strips: tuple[Strip, ...]
    by_letter: tuple[Strip, ...] = field(repr=False)

    def strips_of(self, tile: Tile) -> list[Strip]:
        return [s for s in self.by_letter if tile in s.tiles]


def compute_strips(tiling: Tiling) -> StripDecomposition:
    diagram = tiling.diagram
    word = diagram.word
    se_edges = diagram.se_edges()
    nw_edges = diagram.nw_edges()
    chains = tiling.strip_chains()

    # Trajectories of equal symbols never cross, so the i-th letter of a
    # given symbol ends on the i-th NW edge of that direction.
    nw_by_symbol: dict[Symbol, list[Edge]] = {s: [] for s in Symbol}
    for sym, e in zip(diagram.sorted_symbols, nw_edges):
        nw_by_symbol[sym].append(e)
    seen = {s: 0 for s in Symbol}

    strips = []
    for j, sym in enumerate(word):
        nw = nw_by_symbol[sym][seen[sym]]
        seen[sym] += 1
        tiles = tuple(chains[j])
        if tiles:
            last = tiles[-1]
            end = last.west if tiling.crossings[last].heavy == j else last.north
            if end != nw:
                raise ValidityError(f"strip of letter {j} ends at {end}, expected {nw}")
        elif se_edges[j] != nw:
            raise ValidityError(f"empty strip of letter {j} does not pair its SE edge with an NW edge")
        strips.append(Strip(j, sym, tiles, se_edges[j], nw))

    return StripDecomposition(
        west_strips=tuple(s for s in strips if s.symbol is Symbol.HEAVY),
        north_strips=tuple(s for s in strips if s.symbol is Symbol.HOLE),
        nw_strips=tuple(s for s in strips if s.symbol is Symbol.LIGHT),
        by_letter=tuple(strips),
    )


def all_words(n: int, r: int | None = None) -> list[StateWord]:
    """All words of length n (with exactly r lights if given), order D < A < E."""
    from itertools import product

    out = []
    for combo in product((Symbol.HEAVY, Symbol.LIGHT, Symbol.HOLE), repeat=n):
        if r is None or combo.count(Symbol.LIGHT) == r:
            out.append(StateWord(combo))
    return out
