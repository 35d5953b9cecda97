"""Embedded dot-matrix glyph patterns for the built-in OCR engine.

The patterns imitate the 5x7 LCD matrix fonts found on payment terminals.
Each glyph lives on a 5x11 grid: rows 0-1 hold diacritics, row 2 separates
them from the letter body (rows 3-9), and row 10 carries descenders.
"""

from __future__ import annotations

import numpy as np

GRID_W = 5
GRID_H = 11

# 5x7 letter bodies (rows 3-9 of the grid)
_BODIES: dict[str, tuple[str, ...]] = {
    "0": (".###.",
          "#...#",
          "#..##",
          "#.#.#",
          "##..#",
          "#...#",
          ".###."),
    "1": ("..#..",
          ".##..",
          "..#..",
          "..#..",
          "..#..",
          "..#..",
          "#####"),
    "2": (".###.",
          "#...#",
          "....#",
          "...#.",
          "..#..",
          ".#...",
          "#####"),
    "3": ("#####",
          "...#.",
          "..#..",
          "...#.",
          "....#",
          "#...#",
          ".###."),
    "4": ("...#.",
          "..##.",
          ".#.#.",
          "#..#.",
          "#####",
          "...#.",
          "...#."),
    "5": ("#####",
          "#....",
          "####.",
          "....#",
          "....#",
          "#...#",
          ".###."),
    "6": ("..##.",
          ".#...",
          "#....",
          "####.",
          "#...#",
          "#...#",
          ".###."),
    "7": ("#####",
          "....#",
          "...#.",
          "..#..",
          ".#...",
          ".#...",
          ".#..."),
    "8": (".###.",
          "#...#",
          "#...#",
          ".###.",
          "#...#",
          "#...#",
          ".###."),
    "9": (".###.",
          "#...#",
          "#...#",
          ".####",
          "....#",
          "...#.",
          ".##.."),
    "A": (".###.",
          "#...#",
          "#...#",
          "#####",
          "#...#",
          "#...#",
          "#...#"),
    "B": ("####.",
          "#...#",
          "#...#",
          "####.",
          "#...#",
          "#...#",
          "####."),
    "C": (".###.",
          "#...#",
          "#....",
          "#....",
          "#....",
          "#...#",
          ".###."),
    "D": ("####.",
          "#...#",
          "#...#",
          "#...#",
          "#...#",
          "#...#",
          "####."),
    "E": ("#####",
          "#....",
          "#....",
          "####.",
          "#....",
          "#....",
          "#####"),
    "F": ("#####",
          "#....",
          "#....",
          "####.",
          "#....",
          "#....",
          "#...."),
    "G": (".###.",
          "#...#",
          "#....",
          "#.###",
          "#...#",
          "#...#",
          ".####"),
    "H": ("#...#",
          "#...#",
          "#...#",
          "#####",
          "#...#",
          "#...#",
          "#...#"),
    "I": (".###.",
          "..#..",
          "..#..",
          "..#..",
          "..#..",
          "..#..",
          ".###."),
    "J": ("..###",
          "...#.",
          "...#.",
          "...#.",
          "...#.",
          "#..#.",
          ".##.."),
    "K": ("#...#",
          "#..#.",
          "#.#..",
          "##...",
          "#.#..",
          "#..#.",
          "#...#"),
    "L": ("#....",
          "#....",
          "#....",
          "#....",
          "#....",
          "#....",
          "#####"),
    "M": ("#...#",
          "##.##",
          "#.#.#",
          "#.#.#",
          "#...#",
          "#...#",
          "#...#"),
    "N": ("#...#",
          "##..#",
          "#.#.#",
          "#..##",
          "#...#",
          "#...#",
          "#...#"),
    "O": (".###.",
          "#...#",
          "#...#",
          "#...#",
          "#...#",
          "#...#",
          ".###."),
    "P": ("####.",
          "#...#",
          "#...#",
          "####.",
          "#....",
          "#....",
          "#...."),
    "Q": (".###.",
          "#...#",
          "#...#",
          "#...#",
          "#.#.#",
          "#..#.",
          ".##.#"),
    "R": ("####.",
          "#...#",
          "#...#",
          "####.",
          "#.#..",
          "#..#.",
          "#...#"),
    "S": (".####",
          "#....",
          "#....",
          ".###.",
          "....#",
          "....#",
          "####."),
    "T": ("#####",
          "..#..",
          "..#..",
          "..#..",
          "..#..",
          "..#..",
          "..#.."),
    "U": ("#...#",
          "#...#",
          "#...#",
          "#...#",
          "#...#",
          "#...#",
          ".###."),
    "V": ("#...#",
          "#...#",
          "#...#",
          "#...#",
          "#...#",
          ".#.#.",
          "..#.."),
    "W": ("#...#",
          "#...#",
          "#...#",
          "#.#.#",
          "#.#.#",
          "##.##",
          "#...#"),
    "X": ("#...#",
          "#...#",
          ".#.#.",
          "..#..",
          ".#.#.",
          "#...#",
          "#...#"),
    "Y": ("#...#",
          "#...#",
          ".#.#.",
          "..#..",
          "..#..",
          "..#..",
          "..#.."),
    "Z": ("#####",
          "....#",
          "...#.",
          "..#..",
          ".#...",
          "#....",
          "#####"),
    "$": ("..#..",
          ".####",
          "#.#..",
          ".###.",
          "..#.#",
          "####.",
          "..#.."),
}

# punctuation drawn directly on the full 11-row grid
_FULL: dict[str, tuple[str, ...]] = {
    ".": (".....",) * 8 + (".###.", ".###.", "....."),
    ",": (".....",) * 8 + (".###.", ".###.", "..##."),
    ":": (".....",) * 4 + (".###.", ".###.", ".....", ".....",
                           ".###.", ".###.", "....."),
}

_ACCENTS = {
    "acute": ("...#.", "..#.."),
    "circumflex": ("..#..", ".#.#."),
    "tilde": (".##.#", "#.##."),
}

_ACCENTED = {
    "Á": ("A", "acute"), "É": ("E", "acute"), "Í": ("I", "acute"),
    "Ó": ("O", "acute"), "Ú": ("U", "acute"),
    "Â": ("A", "circumflex"), "Ê": ("E", "circumflex"), "Ô": ("O", "circumflex"),
    "Ã": ("A", "tilde"), "Õ": ("O", "tilde"),
}

_BLANK = "....."


def _rows_to_array(rows: tuple[str, ...]) -> np.ndarray:
    assert len(rows) == GRID_H and all(len(r) == GRID_W for r in rows)
    return np.array([[c == "#" for c in r] for r in rows], dtype=bool)


def build_patterns() -> dict[str, np.ndarray]:
    """All glyph patterns as (11, 5) boolean grids keyed by character."""
    out: dict[str, np.ndarray] = {}
    for ch, body in _BODIES.items():
        out[ch] = _rows_to_array((_BLANK, _BLANK, _BLANK) + body + (_BLANK,))
    for ch, rows in _FULL.items():
        out[ch] = _rows_to_array(rows)
    for ch, (base, accent) in _ACCENTED.items():
        rows = _ACCENTS[accent] + (_BLANK,) + _BODIES[base] + (_BLANK,)
        out[ch] = _rows_to_array(rows)
    # Ç: C body plus a cedilla hooked onto the bottom bar
    rows = (_BLANK, _BLANK, _BLANK) + _BODIES["C"] + ("..#..",)
    out["Ç"] = _rows_to_array(rows)
    return out
