"""Fusion-exchange (assemblée -> RAT) and label-passing (RAT -> assemblée).

Both algorithms move interval labels along strip trajectories.  A tile is
crossed by a heavier trajectory (east edge in, west edge out) and a lighter
one (south edge in, north edge out), so the running state is one label per
word letter; the per-edge labels are recorded on the side for inspection.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

from .assemblees import Assemblee, word_of_assemblee
from .errors import ShapeError, ValidityError
from .rat import Fill, Tableau
from .shapes import (Edge, PeeledTile, Symbol, Tile, Tiling, canonical_tiling,
                     compute_strips, edge_direction)


class Label(NamedTuple):
    """The consecutive integers lo..hi."""
    lo: int
    hi: int

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def __str__(self) -> str:
        return "(" + ",".join(map(str, range(self.lo, self.hi + 1))) + ")"


EdgeLabel = Optional[Label]  # None is the empty label


def succeeds(b: EdgeLabel, a: EdgeLabel) -> bool:
    """b > a: both nonempty and b starts right after a ends."""
    return a is not None and b is not None and b.lo == a.hi + 1


def label_json(label: EdgeLabel):
    return None if label is None else [label.lo, label.hi]


# --------------------------------------------------------------------------
# fusion-exchange
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LabeledTableau:
    tableau: Tableau
    edge_labels: dict[Edge, EdgeLabel] = field(hash=False)
    assemblee: Optional[Assemblee] = None

    def dump(self) -> list[dict]:
        """Per-edge records, edges sorted top-down then right-to-left."""
        def key(e):
            (x1, y1), (x2, y2) = e
            return (-y1, -x1, -y2, -x2)
        return [{"edge": [list(e[0]), list(e[1])], "label": label_json(self.edge_labels[e])}
                for e in sorted(self.edge_labels, key=key)]


def _check_order(tiling: Tiling, order: Sequence[Tile]) -> list[PeeledTile]:
    if sorted(order, key=Tile.sort_key) != list(tiling.sorted_tiles):
        raise ValidityError("processing order must list every tile exactly once")
    done = set()
    preds = tiling.predecessors()
    for t in order:
        if any(p not in done for p in preds[t]):
            raise ValidityError(f"tile {t} processed before its east/south neighbours")
        done.add(t)
    return [tiling.crossings[t] for t in order]


def random_order(tiling: Tiling, rng: random.Random) -> list[Tile]:
    """A uniformly chosen ready tile at each step: a random valid processing order."""
    preds = {t: set(p) for t, p in tiling.predecessors().items()}
    succ: dict[Tile, list[Tile]] = {t: [] for t in tiling.tiles}
    for t, ps in preds.items():
        for p in ps:
            succ[p].append(t)
    ready = sorted((t for t, ps in preds.items() if not ps), key=Tile.sort_key)
    out = []
    while ready:
        t = ready.pop(rng.randrange(len(ready)))
        out.append(t)
        for s in sorted(succ[t], key=Tile.sort_key):
            preds[s].discard(t)
            if not preds[s]:
                ready.append(s)
    return out


def fusion_exchange(a: Assemblee, tiling: Tiling | None = None,
                    order: Sequence[Tile] | None = None) -> LabeledTableau:
    word = word_of_assemblee(a)
    if tiling is None:
        tiling = canonical_tiling(word)
    elif tiling.word != word:
        raise ShapeError(f"tiling is of {tiling.word} but the assemblee has shape {word}")
    steps = tiling.sweep_order if order is None else _check_order(tiling, order)
    symbols = word.symbols

    labels: list[EdgeLabel] = [Label(x, x) for x in a.flat[:-1]]
    edge_labels: dict[Edge, EdgeLabel] = dict(zip(tiling.diagram.se_edges(), labels))
    filling: dict[Tile, Fill] = {}
    for pt in steps:
        tile, h, l = pt.tile, pt.heavy, pt.light
        east, south = labels[h], labels[l]
        if succeeds(east, south) and symbols[l] is Symbol.HOLE:
            west, north, fill = Label(south.lo, east.hi), None, Fill.ALPHA
        elif succeeds(south, east) and symbols[h] is Symbol.HEAVY:
            west, north, fill = None, Label(east.lo, south.hi), Fill.BETA
        else:
            west, north = east, south
            fill = Fill.Q if east is not None and south is not None else Fill.EMPTY
        labels[h], labels[l] = west, north
        edge_labels[tile.west] = west
        edge_labels[tile.north] = north
        filling[tile] = fill
    return LabeledTableau(Tableau.from_mapping(tiling, filling), edge_labels, a)


# --------------------------------------------------------------------------
# termination labels
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TerminationReport:
    horizontal: tuple[EdgeLabel, ...]  # left to right
    vertical: tuple[EdgeLabel, ...]  # top to bottom
    diagonal: tuple[EdgeLabel, ...]  # top to bottom
    last_block_end: int
    problems: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.problems

    def chain(self) -> list[Label]:
        """Nonempty termination labels in increasing order, b_{r+1} included."""
        nonempty = lambda seq: [x for x in seq if x is not None]
        b = Label(self.last_block_end, self.last_block_end)
        return (nonempty(self.vertical) + [b] + nonempty(self.diagonal)[::-1]
                + nonempty(self.horizontal))


def termination_report(lt: LabeledTableau) -> TerminationReport:
    diagram = lt.tableau.tiling.diagram
    groups: dict[str, list[EdgeLabel]] = {"horizontal": [], "vertical": [], "diagonal": []}
    for e in diagram.nw_edges():
        groups[edge_direction(e)].append(lt.edge_labels[e])
    horizontal = tuple(groups["horizontal"][::-1])  # NW path runs right to left
    vertical = tuple(groups["vertical"])
    diagonal = tuple(groups["diagonal"])

    total = diagram.word.n + 1
    present = set()
    for lab in horizontal + vertical + diagonal:
        if lab is not None:
            present.update(range(lab.lo, lab.hi + 1))
    missing = sorted(set(range(1, total + 1)) - present)
    problems = []
    if len(missing) != 1:
        problems.append(f"expected exactly one element absent at termination, got {missing}")
    b_last = missing[0] if missing else 0
    if lt.assemblee is not None and b_last != lt.assemblee.block_ends[-1]:
        problems.append(f"absent element {b_last} is not the last block-end")

    if any(lab is None for lab in diagonal):
        problems.append("a northwest-strip terminates with the empty label")
    ends = [lab.hi for lab in diagonal if lab is not None] + [b_last]
    b_first = max(ends)

    def union(seq):
        out = set()
        for lab in seq:
            if lab is not None:
                out.update(range(lab.lo, lab.hi + 1))
        return out

    if union(horizontal) != set(range(b_first + 1, total + 1)):
        problems.append("horizontal labels do not cover the elements above b_1")
    if union(vertical) != set(range(1, b_last)):
        problems.append("vertical labels do not cover the elements below b_{r+1}")
    if union(diagonal) != set(range(b_last + 1, b_first + 1)):
        problems.append("diagonal labels do not cover b_{r+1}+1..b_1")

    report = TerminationReport(horizontal, vertical, diagonal, b_last, ())
    chain = report.chain()
    for lo, hi in zip(chain, chain[1:]):
        if not succeeds(hi, lo):
            problems.append(f"termination order broken: {hi} does not follow {lo}")
    if chain and (chain[0].lo != 1 or chain[-1].hi != total):
        problems.append("termination chain does not span 1..n+1")
    return TerminationReport(horizontal, vertical, diagonal, b_last, tuple(problems))


# --------------------------------------------------------------------------
# forest and label-passing
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Root:
    kind: str  # "west", "northwest" or "north"
    letter: Optional[int]  # None for the trivial northwest root at the SW point
    edge: Optional[Edge]
    leaves: int


@dataclass(frozen=True)
class Forest:
    tableau: Tableau
    roots: tuple[Root, ...]  # increasing root order
    vertices: tuple[Tile, ...]  # alpha/beta tiles, in sweep order
    edge_leaves: dict[Edge, int] = field(hash=False)  # 0 where the strip line was cut
    tile_inputs: dict[Tile, tuple[int, int]] = field(hash=False)  # (east, south) leaf counts
    external: tuple[Edge, ...] = ()

    @property
    def branch_edges(self) -> list[Edge]:
        return [e for e, c in self.edge_leaves.items() if c > 0]


def build_forest(t: Tableau) -> Forest:
    tiling = t.tiling
    word = tiling.word
    se = tiling.diagram.se_edges()
    leaves = [1] * word.n
    edge_leaves: dict[Edge, int] = {e: 1 for e in se}
    tile_inputs = {}
    vertices = []
    for pt in tiling.sweep_order:
        tile, h, l = pt.tile, pt.heavy, pt.light
        east, south = leaves[h], leaves[l]
        tile_inputs[tile] = (east, south)
        fill = t.symbol_at(tile)
        if fill is Fill.ALPHA:
            leaves[h], leaves[l] = east + south, 0
            vertices.append(tile)
        elif fill is Fill.BETA:
            leaves[h], leaves[l] = 0, east + south
            vertices.append(tile)
        edge_leaves[tile.west] = leaves[h]
        edge_leaves[tile.north] = leaves[l]

    strips = compute_strips(tiling)
    red = [Root("west", s.letter, s.nw_edge, leaves[s.letter])
           for s in strips.west_strips if leaves[s.letter] > 0]
    green = [Root("northwest", None, None, 1)] + [
        Root("northwest", s.letter, s.nw_edge, leaves[s.letter]) for s in reversed(strips.nw_strips)]
    blue = [Root("north", s.letter, s.nw_edge, leaves[s.letter])
            for s in reversed(strips.north_strips) if leaves[s.letter] > 0]
    return Forest(t, tuple(red + green + blue), tuple(vertices), edge_leaves, tile_inputs, tuple(se))


def root_labels(forest: Forest) -> list[Label]:
    out = []
    start = 1
    for root in forest.roots:
        out.append(Label(start, start + root.leaves - 1))
        start += root.leaves
    return out


def label_passing_trace(t: Tableau) -> tuple[Assemblee, dict[Edge, EdgeLabel]]:
    tiling = t.tiling
    word = tiling.word
    forest = build_forest(t)
    labels: list[EdgeLabel] = [None] * word.n
    trivial = None
    for root, lab in zip(forest.roots, root_labels(forest)):
        if root.letter is None:
            trivial = lab.lo
        else:
            labels[root.letter] = lab
    edge_labels: dict[Edge, EdgeLabel] = {}
    for pt in reversed(tiling.sweep_order):
        tile, h, l = pt.tile, pt.heavy, pt.light
        west, north = labels[h], labels[l]
        edge_labels[tile.west], edge_labels[tile.north] = west, north
        fill = t.symbol_at(tile)
        n_east, n_south = forest.tile_inputs[tile]
        if fill is Fill.ALPHA:
            # smaller part south, larger part east
            if north is not None or west is None or len(west) != n_east + n_south:
                raise ValidityError(f"inconsistent labels at alpha tile {tile}")
            south, east = Label(west.lo, west.lo + n_south - 1), Label(west.lo + n_south, west.hi)
        elif fill is Fill.BETA:
            # smaller part east, larger part south
            if west is not None or north is None or len(north) != n_east + n_south:
                raise ValidityError(f"inconsistent labels at beta tile {tile}")
            east, south = Label(north.lo, north.lo + n_east - 1), Label(north.lo + n_east, north.hi)
        else:
            east, south = west, north
        labels[h], labels[l] = east, south
    for e, lab in zip(tiling.diagram.se_edges(), labels):
        edge_labels[e] = lab

    flat = []
    for j, lab in enumerate(labels):
        if lab is None or len(lab) != 1:
            raise ValidityError(f"external vertex {j} received {lab}, not a single integer")
        flat.append(lab.lo)
    flat.append(trivial)
    blocks, current = [], []
    for j, x in enumerate(flat):
        current.append(x)
        if j == len(flat) - 1 or word.symbols[j] is Symbol.LIGHT:
            blocks.append(tuple(current))
            current = []
    return Assemblee(tuple(blocks)), edge_labels


def label_passing(t: Tableau) -> Assemblee:
    return label_passing_trace(t)[0]
