"""Wang tiles, tile sets, fusion, duality, transducers and equivalence search.

A Wang tile is a unit square with a color token on each edge, stored as the
tuple (right, top, left, bottom).  Tiles never rotate.  Everything here is an
immutable value; operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional


class ParseError(ValueError):
    """Raised when a tile-set text document is malformed."""


class TransducerRunError(ValueError):
    """Raised when a transducer run has no matching transition."""

    def __init__(self, message: str, position: int):
        super().__init__(message)
        self.position = position


# Fused color tokens concatenate directly ("B"+"F" -> "BF") when every part is
# a single character; otherwise a separator keeps the parts unambiguous.
# Renderers strip the separator for display.
TOKEN_SEP = "·"


def join_tokens(a: str, b: str) -> str:
    if len(a) == 1 and len(b) == 1:
        return a + b
    return a + TOKEN_SEP + b


def display_token(token: str) -> str:
    return token.replace(TOKEN_SEP, "")


@dataclass(frozen=True, order=True)
class WangTile:
    """A Wang tile (right, top, left, bottom); colors are opaque tokens."""

    right: str
    top: str
    left: str
    bottom: str

    def __post_init__(self):
        for c in (self.right, self.top, self.left, self.bottom):
            if not c or any(ch.isspace() for ch in c):
                raise ValueError(f"invalid color token {c!r}")

    def as_tuple(self) -> tuple[str, str, str, str]:
        return (self.right, self.top, self.left, self.bottom)

    def dual(self) -> "WangTile":
        """Reflection through the positive diagonal: (a,b,c,d) -> (b,a,d,c)."""
        return WangTile(self.top, self.right, self.bottom, self.left)


def fuse(u: WangTile, v: WangTile, direction: int) -> Optional[WangTile]:
    """Glue v onto u along axis ``direction`` (1 = east, 2 = north).

    Returns None when the shared edge colors do not match (the fusion is not
    well-defined).  Fused edges concatenate their color tokens in order.
    """
    if direction == 1:
        if u.right != v.left:
            return None
        return WangTile(
            v.right,
            join_tokens(u.top, v.top),
            u.left,
            join_tokens(u.bottom, v.bottom),
        )
    if direction == 2:
        if u.top != v.bottom:
            return None
        return WangTile(
            join_tokens(u.right, v.right),
            v.top,
            join_tokens(u.left, v.left),
            u.bottom,
        )
    raise ValueError(f"direction must be 1 or 2, got {direction}")


class WangTileSet:
    """An ordered, duplicate-free collection of Wang tiles.

    Tile indices are stable: ``ts[i]`` is the i-th tile in construction
    order.  Vertical colors (left and right edges) and horizontal colors
    (top and bottom edges) are recomputed on construction.
    """

    def __init__(self, tiles: Iterable[WangTile]):
        tiles = tuple(tiles)
        seen: dict[WangTile, int] = {}
        for i, t in enumerate(tiles):
            if t in seen:
                raise ValueError(f"duplicate tile {t.as_tuple()} at indices {seen[t]} and {i}")
            seen[t] = i
        self._tiles = tiles
        self._index = seen
        self.vertical_colors = frozenset(c for t in tiles for c in (t.left, t.right))
        self.horizontal_colors = frozenset(c for t in tiles for c in (t.top, t.bottom))

    def __len__(self) -> int:
        return len(self._tiles)

    def __iter__(self) -> Iterator[WangTile]:
        return iter(self._tiles)

    def __getitem__(self, i: int) -> WangTile:
        return self._tiles[i]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WangTileSet) and self._tiles == other._tiles

    def __hash__(self) -> int:
        return hash(self._tiles)

    def __repr__(self) -> str:
        return f"WangTileSet({len(self)} tiles)"

    @property
    def tiles(self) -> tuple[WangTile, ...]:
        return self._tiles

    def index(self, tile: WangTile) -> int:
        return self._index[tile]

    def __contains__(self, tile: WangTile) -> bool:
        return tile in self._index

    def dual(self) -> "WangTileSet":
        return WangTileSet(t.dual() for t in self._tiles)


def parse_tileset(text: str) -> WangTileSet:
    """Parse the tile-set text format.

    Lines starting with ``#`` (after strip) are comments; blank lines are
    skipped.  Every other line holds exactly four whitespace-separated color
    tokens in the order: right top left bottom.
    """
    tiles = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ParseError(f"line {lineno}: expected 4 color tokens, got {len(parts)}")
        tile = WangTile(*parts)
        if any(tile == t for t in tiles):
            raise ParseError(f"line {lineno}: duplicate tile {tile.as_tuple()}")
        tiles.append(tile)
    return WangTileSet(tiles)


def emit_tileset(ts: WangTileSet) -> str:
    """Inverse of parse_tileset: one tile per line in index order."""
    return "".join(f"{t.right} {t.top} {t.left} {t.bottom}\n" for t in ts)


def fuse_sets(T: WangTileSet, S: WangTileSet, direction: int) -> WangTileSet:
    """All well-defined pairwise fusions of T and S along an axis.

    Results are deduplicated, ordered by the (i, j) source index pair.
    """
    out: list[WangTile] = []
    seen: set[WangTile] = set()
    for u in T:
        for v in S:
            w = fuse(u, v, direction)
            if w is not None and w not in seen:
                seen.add(w)
                out.append(w)
    return WangTileSet(out)


@dataclass(frozen=True, order=True)
class Transition:
    """Edge ``source --input|output--> target`` of a tile-set transducer."""

    source: str
    input: str
    output: str
    target: str


@dataclass(frozen=True)
class Transducer:
    """Transducer view of a tile set: states are the vertical colors.

    One transition per tile: tile (a, b, c, d) becomes c --d|b--> a, so a row
    of tiles reads its bottom colors and writes its top colors.
    """

    states: frozenset[str]
    transitions: tuple[Transition, ...] = field(default_factory=tuple)

    def to_tileset(self) -> WangTileSet:
        """Rebuild the tile set, one tile per transition in listed order."""
        return WangTileSet(
            WangTile(tr.target, tr.output, tr.source, tr.input) for tr in self.transitions
        )

    def trim(self) -> "Transducer":
        """Recursively drop source states (no incoming) and sink states (no outgoing)."""
        states = set(self.states)
        transitions = list(self.transitions)
        while True:
            with_in = {tr.target for tr in transitions}
            with_out = {tr.source for tr in transitions}
            keep = {s for s in states if s in with_in and s in with_out}
            if keep == states:
                return Transducer(frozenset(states), tuple(transitions))
            states = keep
            transitions = [tr for tr in transitions if tr.source in keep and tr.target in keep]


def to_transducer(T: WangTileSet, trim: bool = False) -> Transducer:
    tr = Transducer(
        frozenset(T.vertical_colors),
        tuple(Transition(t.left, t.bottom, t.top, t.right) for t in T),
    )
    return tr.trim() if trim else tr


def run_transducer(
    machine: Transducer, start_state: str, inputs: Iterable[str]
) -> tuple[list[str], str]:
    """The unique complete run on the input word: (output word, end state).

    Locally several transitions may match a (state, input) pair, so the run
    backtracks; it is deterministic in the sense that exactly one branch may
    survive to the end of the input.  Raises TransducerRunError citing the
    deepest reachable position when no branch survives, or reporting
    ambiguity when several do.
    """
    table: dict[tuple[str, str], list[Transition]] = {}
    for tr in machine.transitions:
        table.setdefault((tr.source, tr.input), []).append(tr)
    word = list(inputs)
    runs: list[tuple[list[str], str]] = []
    deepest = 0

    def dfs(pos: int, state: str, out: list[str]) -> None:
        nonlocal deepest
        deepest = max(deepest, pos)
        if len(runs) > 1:
            return
        if pos == len(word):
            runs.append((list(out), state))
            return
        for tr in table.get((state, word[pos]), ()):
            out.append(tr.output)
            dfs(pos + 1, tr.target, out)
            out.pop()

    dfs(0, start_state, [])
    if not runs:
        raise TransducerRunError(
            f"no run from state {start_state!r} consumes the input past position {deepest}",
            deepest,
        )
    if len(runs) > 1:
        raise TransducerRunError("ambiguous run: several branches consume the input", 0)
    return runs[0]


@dataclass(frozen=True)
class Equivalence:
    """Witness that two tile sets are equal up to color relabeling."""

    vertical: dict[str, str]
    horizontal: dict[str, str]
    tile_map: dict[int, int]


def _color_signature(ts: WangTileSet) -> tuple[dict[str, tuple], dict[str, tuple]]:
    """Per-color incidence invariants used to prune the equivalence search."""
    vert: dict[str, list[int]] = {c: [0, 0] for c in ts.vertical_colors}
    horiz: dict[str, list[int]] = {c: [0, 0] for c in ts.horizontal_colors}
    for t in ts:
        vert[t.right][0] += 1
        vert[t.left][1] += 1
        horiz[t.top][0] += 1
        horiz[t.bottom][1] += 1
    return (
        {c: tuple(v) for c, v in vert.items()},
        {c: tuple(v) for c, v in horiz.items()},
    )


def check_equivalence(T: WangTileSet, S: WangTileSet) -> Optional[Equivalence]:
    """Search for bijections of vertical and horizontal colors sending T to S.

    Backtracks over tile assignments with forward checking on color-incidence
    multisets.  Returns None when no pair of bijections exists; a None result
    is an answer, not an error.
    """
    if len(T) != len(S):
        return None
    if len(T.vertical_colors) != len(S.vertical_colors):
        return None
    if len(T.horizontal_colors) != len(S.horizontal_colors):
        return None

    vsig_t, hsig_t = _color_signature(T)
    vsig_s, hsig_s = _color_signature(S)
    if sorted(vsig_t.values()) != sorted(vsig_s.values()):
        return None
    if sorted(hsig_t.values()) != sorted(hsig_s.values()):
        return None

    s_tiles = list(S)

    def candidates(t: WangTile) -> list[int]:
        out = []
        for j, s in enumerate(s_tiles):
            if (
                vsig_t[t.right] == vsig_s[s.right]
                and vsig_t[t.left] == vsig_s[s.left]
                and hsig_t[t.top] == hsig_s[s.top]
                and hsig_t[t.bottom] == hsig_s[s.bottom]
                and (t.right == t.left) == (s.right == s.left)
                and (t.top == t.bottom) == (s.top == s.bottom)
            ):
                out.append(j)
        return out

    cand = [candidates(t) for t in T]
    order = sorted(range(len(T)), key=lambda i: len(cand[i]))

    vmap: dict[str, str] = {}
    hmap: dict[str, str] = {}
    vused: set[str] = set()
    hused: set[str] = set()
    tile_map: dict[int, int] = {}
    used: set[int] = set()

    def bind(mapping: dict, used_set: set, a: str, b: str, trail: list) -> bool:
        if a in mapping:
            return mapping[a] == b
        if b in used_set:
            return False
        mapping[a] = b
        used_set.add(b)
        trail.append((mapping, used_set, a, b))
        return True

    def search(k: int) -> bool:
        if k == len(order):
            return True
        i = order[k]
        t = T[i]
        for j in cand[i]:
            if j in used:
                continue
            s = s_tiles[j]
            trail: list = []
            ok = (
                bind(vmap, vused, t.right, s.right, trail)
                and bind(vmap, vused, t.left, s.left, trail)
                and bind(hmap, hused, t.top, s.top, trail)
                and bind(hmap, hused, t.bottom, s.bottom, trail)
            )
            if ok:
                used.add(j)
                tile_map[i] = j
                if search(k + 1):
                    return True
                used.discard(j)
                del tile_map[i]
            for mapping, used_set, a, b in reversed(trail):
                del mapping[a]
                used_set.discard(b)
        return False

    if not search(0):
        return None
    return Equivalence(dict(vmap), dict(hmap), dict(tile_map))


def relabel(ts: WangTileSet, vertical: dict[str, str], horizontal: dict[str, str]) -> WangTileSet:
    """Apply color bijections to every tile, keeping the index order."""
    return WangTileSet(
        WangTile(vertical[t.right], horizontal[t.top], vertical[t.left], horizontal[t.bottom])
        for t in ts
    )
