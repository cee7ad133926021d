"""Finite-rectangle tiling queries: existence, enumeration, surroundings.

Rectangles have free boundary colors; only interior adjacencies are
constrained.  The solver works on candidate bitmasks (one bit per tile):
pins and their neighborhoods are propagated to a fixpoint before search,
then a forward-checking backtracker finishes the job.  Existence queries
pick the most constrained cell first; enumerations are reported in
canonical cell-scan order (bottom row first, left to right).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Literal, Mapping, Optional, Union

from .core import WangTileSet
from .morphism import Word2d

Mode = Literal["exists", "enumerate", "count"]


def is_valid_pattern(T: WangTileSet, w: Word2d) -> bool:
    """Do all internal adjacencies of the pattern match in color?"""
    n1, n2 = w.shape
    for x in range(n1):
        for y in range(n2):
            t = T[w.cell(x, y)]
            if x + 1 < n1 and t.right != T[w.cell(x + 1, y)].left:
                return False
            if y + 1 < n2 and t.top != T[w.cell(x, y + 1)].bottom:
                return False
    return True


@dataclass(frozen=True)
class _Tables:
    """Per-tile-set adjacency bitmasks, built once per query batch."""

    n: int
    full: int
    right_succ: tuple[int, ...]   # tiles that may sit east of t
    left_pred: tuple[int, ...]    # tiles that may sit west of t
    top_succ: tuple[int, ...]     # tiles that may sit north of t
    bottom_pred: tuple[int, ...]  # tiles that may sit south of t
    has_right: int                # tiles with at least one eastern neighbor
    has_left: int
    has_top: int
    has_bottom: int


@lru_cache(maxsize=64)
def _tables(T: WangTileSet) -> _Tables:
    n = len(T)
    by_left: dict[str, int] = {}
    by_right: dict[str, int] = {}
    by_bottom: dict[str, int] = {}
    by_top: dict[str, int] = {}
    for i, t in enumerate(T):
        by_left[t.left] = by_left.get(t.left, 0) | (1 << i)
        by_right[t.right] = by_right.get(t.right, 0) | (1 << i)
        by_bottom[t.bottom] = by_bottom.get(t.bottom, 0) | (1 << i)
        by_top[t.top] = by_top.get(t.top, 0) | (1 << i)
    right_succ = tuple(by_left.get(t.right, 0) for t in T)
    left_pred = tuple(by_right.get(t.left, 0) for t in T)
    top_succ = tuple(by_bottom.get(t.top, 0) for t in T)
    bottom_pred = tuple(by_top.get(t.bottom, 0) for t in T)
    return _Tables(
        n=n,
        full=(1 << n) - 1,
        right_succ=right_succ,
        left_pred=left_pred,
        top_succ=top_succ,
        bottom_pred=bottom_pred,
        has_right=sum(1 << i for i in range(n) if right_succ[i]),
        has_left=sum(1 << i for i in range(n) if left_pred[i]),
        has_top=sum(1 << i for i in range(n) if top_succ[i]),
        has_bottom=sum(1 << i for i in range(n) if bottom_pred[i]),
    )


def _union(masks: tuple[int, ...], over: int) -> int:
    acc = 0
    while over:
        i = (over & -over).bit_length() - 1
        acc |= masks[i]
        over &= over - 1
    return acc


def _propagate(masks: list[int], width: int, height: int, tb: _Tables) -> bool:
    """Arc-consistency sweep to a fixpoint; False when some cell empties."""
    pending = set(range(width * height))
    while pending:
        idx = pending.pop()
        x, y = idx % width, idx // width
        m = masks[idx]
        if x > 0:
            m &= _union(tb.right_succ, masks[idx - 1])
        if x + 1 < width:
            m &= _union(tb.left_pred, masks[idx + 1])
        if y > 0:
            m &= _union(tb.top_succ, masks[idx - width])
        if y + 1 < height:
            m &= _union(tb.bottom_pred, masks[idx + width])
        if m == masks[idx]:
            continue
        if m == 0:
            return False
        masks[idx] = m
        if x > 0:
            pending.add(idx - 1)
        if x + 1 < width:
            pending.add(idx + 1)
        if y > 0:
            pending.add(idx - width)
        if y + 1 < height:
            pending.add(idx + width)
    return True


def _initial_masks(
    T: WangTileSet, width: int, height: int, pins: Mapping[tuple[int, int], int], tb: _Tables
) -> Optional[list[int]]:
    masks = []
    for y in range(height):
        for x in range(width):
            m = tb.full
            if x + 1 < width:
                m &= tb.has_right
            if x > 0:
                m &= tb.has_left
            if y + 1 < height:
                m &= tb.has_top
            if y > 0:
                m &= tb.has_bottom
            pin = pins.get((x, y))
            if pin is not None:
                m &= 1 << pin
            if m == 0:
                return None
            masks.append(m)
    return masks


def _search_exists(masks: list[int], width: int, height: int, tb: _Tables) -> bool:
    cells = width * height
    order_pool = [i for i in range(cells) if masks[i].bit_count() > 1]
    assigned = [m.bit_count() == 1 for m in masks]

    def neighbor_constraints(idx: int, tile: int) -> list[tuple[int, int]]:
        out = []
        x, y = idx % width, idx // width
        if x + 1 < width:
            out.append((idx + 1, tb.right_succ[tile]))
        if x > 0:
            out.append((idx - 1, tb.left_pred[tile]))
        if y + 1 < height:
            out.append((idx + width, tb.top_succ[tile]))
        if y > 0:
            out.append((idx - width, tb.bottom_pred[tile]))
        return out

    def dfs() -> bool:
        best, best_count = -1, 1 << 30
        for i in order_pool:
            if assigned[i]:
                continue
            c = masks[i].bit_count()
            if c < best_count:
                best, best_count = i, c
                if c == 2:
                    break
        if best == -1:
            return True
        rem = masks[best]
        assigned[best] = True
        while rem:
            bit = rem & -rem
            rem ^= bit
            tile = bit.bit_length() - 1
            trail = []
            ok = True
            for nb, allowed in neighbor_constraints(best, tile):
                old = masks[nb]
                new = old & allowed
                if new != old:
                    if new == 0:
                        ok = False
                        break
                    masks[nb] = new
                    trail.append((nb, old))
            if ok:
                saved = masks[best]
                masks[best] = bit
                if dfs():
                    return True
                masks[best] = saved
            for nb, old in trail:
                masks[nb] = old
        assigned[best] = False
        return False

    return dfs()


def _search_enumerate(masks: list[int], width: int, height: int, tb: _Tables) -> list[Word2d]:
    """All completions, in canonical cell-scan order (y outer, x inner)."""
    cells = width * height
    grid = [0] * cells
    out: list[Word2d] = []

    def dfs(idx: int) -> None:
        if idx == cells:
            cols = tuple(
                tuple(grid[y * width + x] for y in range(height)) for x in range(width)
            )
            out.append(Word2d(cols))
            return
        x, y = idx % width, idx // width
        m = masks[idx]
        if x > 0:
            m &= tb.right_succ[grid[idx - 1]]
        if y > 0:
            m &= tb.top_succ[grid[idx - width]]
        while m:
            bit = m & -m
            m ^= bit
            grid[idx] = bit.bit_length() - 1
            dfs(idx + 1)

    dfs(0)
    return out


def solve_rectangle(
    T: WangTileSet,
    width: int,
    height: int,
    pins: Optional[Mapping[tuple[int, int], int]] = None,
    mode: Mode = "exists",
) -> Union[bool, list[Word2d], int]:
    """Tile a width x height rectangle, optionally with pinned cells.

    Mutually inconsistent pins give False / [] / 0, never an error.
    """
    if width < 1 or height < 1:
        raise ValueError("rectangle dimensions must be >= 1")
    if mode not in ("exists", "enumerate", "count"):
        raise ValueError(f"unknown mode {mode!r}")
    pins = dict(pins or {})
    for (x, y), tile in pins.items():
        if not (0 <= x < width and 0 <= y < height):
            raise ValueError(f"pin {(x, y)} outside the {width}x{height} rectangle")
        if not (0 <= tile < len(T)):
            raise ValueError(f"pin tile index {tile} out of range")
    tb = _tables(T)
    if len(T) == 0:
        return (False if mode == "exists" else ([] if mode == "enumerate" else 0))
    masks = _initial_masks(T, width, height, pins, tb)
    if masks is None or not _propagate(masks, width, height, tb):
        return False if mode == "exists" else ([] if mode == "enumerate" else 0)
    if mode == "exists":
        return _search_exists(masks, width, height, tb)
    found = _search_enumerate(masks, width, height, tb)
    return found if mode == "enumerate" else len(found)


@dataclass(frozen=True)
class SurroundingQuery:
    """A pattern plus the ring of cells a radius-r surrounding must fill.

    The ring is one pattern-shape thick per unit of radius: the extended
    rectangle has shape (n1*(1+2r), n2*(1+2r)) with the pattern pinned at
    offset (n1*r, n2*r).  For a single letter this is the plain r-cell ring.
    """

    pattern: Word2d
    radius: int

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be >= 0")

    @property
    def extended_shape(self) -> tuple[int, int]:
        n1, n2 = self.pattern.shape
        return (n1 * (1 + 2 * self.radius), n2 * (1 + 2 * self.radius))

    def pins(self) -> dict[tuple[int, int], int]:
        n1, n2 = self.pattern.shape
        r = self.radius
        return {
            (x + n1 * r, y + n2 * r): self.pattern.cell(x, y)
            for x in range(n1)
            for y in range(n2)
        }


def pattern_has_surrounding(T: WangTileSet, pattern: Word2d, radius: int) -> bool:
    """Can the pattern be extended by a radius-r ring on every side?"""
    q = SurroundingQuery(pattern, radius)
    if radius == 0:
        return is_valid_pattern(T, pattern)
    w, h = q.extended_shape
    return bool(solve_rectangle(T, w, h, q.pins(), "exists"))


def _surrounding_ladder(T: WangTileSet, patterns: Iterable[Word2d], radius: int) -> list[Word2d]:
    """Filter by increasing radius; monotonicity makes this a pure speedup."""
    alive = [p for p in patterns if is_valid_pattern(T, p)]
    for r in range(1, radius + 1):
        alive = [p for p in alive if pattern_has_surrounding(T, p, r)]
    return alive


def dominoes_with_surrounding(
    T: WangTileSet, direction: int, radius: int
) -> list[tuple[int, int]]:
    """Ordered index pairs (i, j) whose domino along the axis extends to a
    valid rectangle with a ring of ``radius`` domino-copies on every side."""
    if direction not in (1, 2):
        raise ValueError("direction must be 1 or 2")
    pairs = []
    for i, u in enumerate(T):
        for j, v in enumerate(T):
            if direction == 1 and u.right == v.left:
                pairs.append((i, j))
            elif direction == 2 and u.top == v.bottom:
                pairs.append((i, j))
    words = {
        (i, j): Word2d(((i,), (j,))) if direction == 1 else Word2d(((i, j),))
        for i, j in pairs
    }
    alive = _surrounding_ladder(T, list(words.values()), radius)
    alive_set = set(alive)
    return sorted(p for p, w in words.items() if w in alive_set)


def patterns_with_surrounding(
    T: WangTileSet, shape: tuple[int, int], radius: int
) -> list[Word2d]:
    """All internally valid patterns of the shape admitting a radius-r
    surrounding, sorted by their column tuples."""
    w, h = shape
    if w < 1 or h < 1:
        raise ValueError("shape components must be >= 1")
    base = solve_rectangle(T, w, h, None, "enumerate")
    assert isinstance(base, list)
    return sorted(_surrounding_ladder(T, base, radius))
