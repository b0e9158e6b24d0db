"""Shared test construction helpers."""

from __future__ import annotations

from typing import Mapping, Sequence

from tenkey.corpus import LETTERS
from tenkey.keypad import KeySlot, Layout, valid_slots

# Filler multigrams for layouts that pin only a few: q/x/z combinations never
# occur in the English-ish test corpora, so they cannot affect segmentation.
PAD_MULTIGRAMS = (
    "qx", "qz", "xq", "xz", "zq", "zx",
    "qqq", "qxz", "qzx", "xxx", "xzq", "zzz", "zqx", "zxq",
)


def build_layout(
    pins: Mapping[str, tuple[int, int, int]], multigrams: Sequence[str] = ()
) -> Layout:
    """Layout with the pinned symbols in place and everything else auto-filled.

    Any multigram present (pinned or listed) switches the layout to full
    40-symbol mode, padding up to 14 multigrams with unused fillers.
    """
    multis = [s for s in pins if len(s) > 1]
    multis += [m for m in multigrams if m not in multis]
    if multis:
        for pad in PAD_MULTIGRAMS:
            if len(multis) >= 14:
                break
            if pad not in multis:
                multis.append(pad)
    symbols = list(LETTERS) + multis
    used = {KeySlot(*pins[s]) for s in pins}
    free = [slot for slot in valid_slots() if slot not in used]
    placements = {}
    for sym in symbols:
        if sym in pins:
            placements[sym] = KeySlot(*pins[sym])
        else:
            placements[sym] = free.pop(0)
    return Layout(placements)


def hand_string_layout(hands: str) -> tuple[Layout, str]:
    """A layout and corpus whose typed hand sequence matches `hands`.

    `hands` uses L/C/R per character; letters a, b, c, ... are placed on
    columns 1/2/3 accordingly and the corpus types them in order.
    """
    if len(hands) > 12:
        raise ValueError("only 12 slots per column are available")
    columns = {"L": 1, "C": 2, "R": 3}
    taken: dict[int, int] = {1: 0, 2: 0, 3: 0}
    col_slots = {
        1: [(1, 1, s) for s in range(1, 5)] + [(2, 1, s) for s in range(1, 5)] + [(3, 1, s) for s in range(1, 5)],
        2: [(1, 2, s) for s in range(1, 5)] + [(2, 2, s) for s in range(1, 5)] + [(3, 2, s) for s in range(1, 5)],
        3: [(1, 3, s) for s in range(1, 5)] + [(2, 3, s) for s in range(1, 5)] + [(3, 3, s) for s in range(1, 5)],
    }
    pins = {}
    word = []
    for i, mark in enumerate(hands):
        col = columns[mark]
        letter = LETTERS[i]
        pins[letter] = col_slots[col][taken[col]]
        taken[col] += 1
        word.append(letter)
    return build_layout(pins), "".join(word)
