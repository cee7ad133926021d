"""Built-in artifacts: the 19-tile set U, its derived sets V and W, and the
desubstitution morphisms between them.

U is the primary tile set (10 vertical colors A..J, 6 horizontal colors
K..P).  V arises from U by fusing marked vertical dominoes, W from V by
fusing marked horizontal dominoes, and W is a color relabeling of U.  The
self-map ``omega`` of U is never stored: it is recomputed at load time as
alpha o beta o gamma, so a transcription error in any table breaks the
composition checks instead of hiding.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .core import WangTile, WangTileSet
from .morphism import Morphism2d, Word2d, compose

U_TILES = [
    "FOJO", "FOHL", "JMFP", "DMFK", "HPJP", "HPHN", "HKFP", "HKDP", "BOIO",
    "GLEO", "GLCL", "ALIO", "EPGP", "EPIP", "IPGK", "IPIK", "IKBM", "IKAK", "CNIP",
]

V_TILES = [
    ("A", "L", "I", "O"), ("B", "O", "I", "O"), ("E", "P", "I", "P"),
    ("G", "L", "E", "O"), ("I", "K", "A", "K"), ("I", "K", "B", "M"),
    ("I", "P", "G", "K"), ("I", "P", "I", "K"), ("AF", "O", "IH", "O"),
    ("BF", "O", "IJ", "O"), ("CH", "P", "IH", "P"), ("EH", "K", "GF", "P"),
    ("EH", "K", "ID", "P"), ("EH", "P", "IJ", "P"), ("GF", "O", "CH", "L"),
    ("GF", "O", "EH", "O"), ("ID", "M", "AF", "K"), ("ID", "M", "BF", "M"),
    ("IH", "K", "GF", "K"), ("IH", "K", "ID", "K"), ("IJ", "M", "GF", "K"),
]

W_TILES = [
    ("I", "K", "A", "K"), ("I", "K", "B", "M"), ("A", "PL", "I", "KO"),
    ("G", "PL", "I", "PO"), ("B", "KO", "A", "KO"), ("B", "KO", "B", "MO"),
    ("B", "PO", "I", "KO"), ("B", "PO", "G", "KO"), ("IH", "K", "GF", "K"),
    ("ID", "M", "AF", "K"), ("ID", "M", "BF", "M"), ("IJ", "M", "GF", "K"),
    ("AF", "KO", "ID", "KO"), ("AF", "KO", "GF", "KO"), ("GF", "KO", "ID", "PO"),
    ("GF", "KO", "GF", "PO"), ("GF", "PO", "IH", "PL"), ("GF", "PO", "IJ", "PO"),
    ("BF", "MO", "GF", "KO"),
]

# Images as lists of columns, columns bottom to top.
ALPHA_TABLE = {
    0: [[11]], 1: [[8]], 2: [[13]], 3: [[9]], 4: [[17]], 5: [[16]], 6: [[14]],
    7: [[15]], 8: [[11, 1]], 9: [[8, 0]], 10: [[18, 5]], 11: [[12, 6]],
    12: [[13, 7]], 13: [[13, 4]], 14: [[10, 1]], 15: [[9, 1]], 16: [[17, 3]],
    17: [[16, 3]], 18: [[14, 6]], 19: [[15, 7]], 20: [[14, 2]],
}

BETA_TABLE = {
    0: [[4]], 1: [[5]], 2: [[7], [0]], 3: [[2], [3]], 4: [[4], [1]],
    5: [[5], [1]], 6: [[7], [1]], 7: [[6], [1]], 8: [[18]], 9: [[16]],
    10: [[17]], 11: [[20]], 12: [[19], [8]], 13: [[18], [8]], 14: [[12], [15]],
    15: [[11], [15]], 16: [[10], [14]], 17: [[13], [15]], 18: [[20], [9]],
}

# Color bijections turning U into W tile-for-tile: HORIZONTAL_RELABEL acts on
# top/bottom colors, VERTICAL_RELABEL on left/right colors.
HORIZONTAL_RELABEL = {"O": "K", "P": "KO", "L": "M", "N": "MO", "M": "PL", "K": "PO"}
VERTICAL_RELABEL = {
    "J": "A", "H": "B", "D": "G", "F": "I", "E": "AF",
    "C": "BF", "I": "GF", "G": "ID", "B": "IH", "A": "IJ",
}

BUILTIN_NAMES = ("U", "V", "W", "alpha", "beta", "gamma", "omega")


@dataclass(frozen=True)
class NamedArtifact:
    name: str
    kind: str  # "tileset" | "morphism"
    payload: Union[WangTileSet, Morphism2d]
    provenance: str


def _tileset(spec) -> WangTileSet:
    return WangTileSet(WangTile(*t) for t in spec)


@lru_cache(maxsize=None)
def builtin(name: str) -> NamedArtifact:
    """Look up a built-in artifact by name; unknown names list the options."""
    if name not in BUILTIN_NAMES:
        raise LookupError(f"unknown artifact {name!r}; valid names: {', '.join(BUILTIN_NAMES)}")
    if name == "U":
        return NamedArtifact("U", "tileset", _tileset(U_TILES), "built-in 19-tile set")
    if name == "V":
        return NamedArtifact(
            "V", "tileset", _tileset(V_TILES),
            "21 tiles: vertical-domino fusion of U over its 8 marked tiles",
        )
    if name == "W":
        return NamedArtifact(
            "W", "tileset", _tileset(W_TILES),
            "19 tiles: horizontal-domino fusion of V over its 7 marked tiles",
        )
    if name == "alpha":
        return NamedArtifact(
            "alpha", "morphism",
            Morphism2d.from_json_table(
                {str(k): v for k, v in ALPHA_TABLE.items()},
                builtin("V").payload, builtin("U").payload,
            ),
            "desubstitution morphism V -> U (letters and vertical dominoes)",
        )
    if name == "beta":
        return NamedArtifact(
            "beta", "morphism",
            Morphism2d.from_json_table(
                {str(k): v for k, v in BETA_TABLE.items()},
                builtin("W").payload, builtin("V").payload,
            ),
            "desubstitution morphism W -> V (letters and horizontal dominoes)",
        )
    if name == "gamma":
        U = builtin("U").payload
        W = builtin("W").payload
        images = tuple(Word2d.letter(i) for i in range(len(U)))
        return NamedArtifact(
            "gamma", "morphism", Morphism2d(U, W, images),
            "index-preserving relabeling U -> W (color bijections)",
        )
    # omega = alpha o beta o gamma, recomputed from the stored tables.
    alpha = builtin("alpha").payload
    beta = builtin("beta").payload
    gamma = builtin("gamma").payload
    return NamedArtifact(
        "omega", "morphism", compose(compose(alpha, beta), gamma),
        "self-map of U: alpha o beta o gamma",
    )
