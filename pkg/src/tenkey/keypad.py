"""Keypad geometry, layouts, the alphabetic baseline, and layout files."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import NamedTuple

from .corpus import DEFAULT_SPECIALS, LETTERS

# Keys '*' (4,1) and '#' (4,3) are reserved for mode changes, never for symbols.
FORBIDDEN_KEYS = frozenset({(4, 1), (4, 3)})

LAYOUT_FILE_VERSION = 1


class KeySlot(NamedTuple):
    """One placeable cell of the grid: key (row, col) plus stroke count 1-4."""

    row: int
    col: int
    stroke: int


SLOTS: tuple[KeySlot, ...] = tuple(
    KeySlot(row, col, stroke)
    for row in range(1, 5)
    for col in range(1, 4)
    if (row, col) not in FORBIDDEN_KEYS
    for stroke in range(1, 5)
)

SLOT_INDEX: dict[KeySlot, int] = {slot: i for i, slot in enumerate(SLOTS)}

USABLE_KEYS: tuple[tuple[int, int], ...] = tuple(
    (row, col)
    for row in range(1, 5)
    for col in range(1, 4)
    if (row, col) not in FORBIDDEN_KEYS
)


def valid_slots() -> tuple[KeySlot, ...]:
    """All 40 placeable slots (10 usable keys x 4 strokes), in a fixed order."""
    return SLOTS


class Hand(Enum):
    LEFT = "left"
    RIGHT = "right"
    CENTER = "center"


def hand_of(slot: KeySlot) -> Hand:
    """Thumb assignment by column; the middle column can take either thumb."""
    return (Hand.LEFT, Hand.CENTER, Hand.RIGHT)[slot.col - 1]


def key_distance(a: KeySlot, b: KeySlot) -> float:
    """Euclidean distance between keys on the (row, col) grid; strokes ignored."""
    return math.hypot(a.row - b.row, a.col - b.col)


@dataclass(frozen=True)
class Provenance:
    corpus_digest: str | None = None
    seed: int | None = None
    metric: str | None = None
    weights: tuple[float, float, float] | None = None
    fitness: float | None = None


@dataclass(frozen=True)
class Layout:
    """Assignment of symbols (letters and multigrams) to key slots.

    A full layout places 40 symbols bijectively onto the 40 valid slots; a
    letters-only layout places 26 and leaves 14 slots vacant. `deprecated`
    holds per-multigram flags read from a layout file; when absent they are
    recomputed from stroke costs on save.
    """

    placements: dict[str, KeySlot]
    charset: frozenset[str] = DEFAULT_SPECIALS
    provenance: Provenance = field(default_factory=Provenance)
    deprecated: dict[str, bool] | None = field(default=None, compare=False)

    def slot_of(self, symbol: str) -> KeySlot:
        return self.placements[symbol]

    @property
    def multigrams(self) -> list[str]:
        return sorted(s for s in self.placements if len(s) > 1)


def validate(layout: Layout) -> list[str]:
    """All violated layout invariants; an empty list means the layout is valid."""
    problems: list[str] = []
    allowed = set(LETTERS) | set(layout.charset)
    seen: dict[KeySlot, str] = {}
    for sym, slot in layout.placements.items():
        if not (1 <= slot.row <= 4 and 1 <= slot.col <= 3 and 1 <= slot.stroke <= 4):
            problems.append(f"slot out of range for {sym!r}: {tuple(slot)}")
        elif (slot.row, slot.col) in FORBIDDEN_KEYS:
            problems.append(f"forbidden key ({slot.row},{slot.col}) used by {sym!r}")
        if slot in seen:
            problems.append(f"duplicate slot {tuple(slot)}: {seen[slot]!r} and {sym!r}")
        seen[slot] = sym
        if len(sym) == 1:
            if sym not in LETTERS:
                problems.append(f"single-character symbol {sym!r} is not a letter")
        elif not (2 <= len(sym) <= 3) or any(ch not in allowed for ch in sym):
            problems.append(f"symbol {sym!r} is not expressible in the layout charset")
    missing = [ch for ch in LETTERS if ch not in layout.placements]
    if missing:
        problems.append("missing letters: " + "".join(missing))
    n_multi = sum(1 for s in layout.placements if len(s) > 1)
    if n_multi not in (0, 14):
        problems.append(f"expected 0 or 14 multigrams, found {n_multi}")
    return problems


_ABC_KEYS = {
    (1, 2): "abc",
    (1, 3): "def",
    (2, 1): "ghi",
    (2, 2): "jkl",
    (2, 3): "mno",
    (3, 1): "pqrs",
    (3, 2): "tuv",
    (3, 3): "wxyz",
}


def abc_baseline() -> Layout:
    """The standard alphabetic multi-tap layout; key (1,1) carries no letters."""
    placements = {}
    for (row, col), letters in _ABC_KEYS.items():
        for stroke, ch in enumerate(letters, start=1):
            placements[ch] = KeySlot(row, col, stroke)
    return Layout(placements)


class LayoutFileError(ValueError):
    """Layout file is malformed or structurally wrong."""


class LayoutValidationError(ValueError):
    """A layout violates its invariants."""

    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


def save_layout(layout: Layout, path: str | Path) -> None:
    """Write a validated layout to a JSON layout file."""
    problems = validate(layout)
    if problems:
        raise LayoutValidationError(problems)
    flags = layout.deprecated
    if flags is None:
        from .cost import deprecated_set  # circular at module level

        dep = deprecated_set(layout)
        flags = {m: m in dep for m in layout.multigrams}
    symbols = []
    for sym in sorted(layout.placements, key=lambda s: (len(s) > 1, s)):
        slot = layout.placements[sym]
        symbols.append(
            {
                "text": sym,
                "row": slot.row,
                "col": slot.col,
                "stroke": slot.stroke,
                "deprecated": bool(flags.get(sym, False)),
            }
        )
    prov = layout.provenance
    doc = {
        "version": LAYOUT_FILE_VERSION,
        "charset": "".join(sorted(layout.charset)),
        "symbols": symbols,
        "provenance": {
            "corpus_digest": prov.corpus_digest,
            "seed": prov.seed,
            "metric": prov.metric,
            "weights": list(prov.weights) if prov.weights is not None else None,
            "fitness": prov.fitness,
        },
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def load_layout(path: str | Path) -> Layout:
    """Read and validate a JSON layout file."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise LayoutFileError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "symbols" not in doc:
        raise LayoutFileError("missing 'symbols' section")
    if doc.get("version") != LAYOUT_FILE_VERSION:
        raise LayoutFileError(f"unsupported layout file version: {doc.get('version')!r}")
    placements: dict[str, KeySlot] = {}
    deprecated: dict[str, bool] = {}
    for entry in doc["symbols"]:
        try:
            sym = entry["text"]
            slot = KeySlot(int(entry["row"]), int(entry["col"]), int(entry["stroke"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise LayoutFileError(f"bad symbol entry {entry!r}") from exc
        if sym in placements:
            raise LayoutFileError(f"symbol {sym!r} listed twice")
        placements[sym] = slot
        if len(sym) > 1:
            deprecated[sym] = bool(entry.get("deprecated", False))
    prov_doc = doc.get("provenance") or {}
    weights = prov_doc.get("weights")
    provenance = Provenance(
        corpus_digest=prov_doc.get("corpus_digest"),
        seed=prov_doc.get("seed"),
        metric=prov_doc.get("metric"),
        weights=tuple(weights) if weights is not None else None,
        fitness=prov_doc.get("fitness"),
    )
    layout = Layout(
        placements,
        charset=frozenset(doc.get("charset", "".join(sorted(DEFAULT_SPECIALS)))),
        provenance=provenance,
        deprecated=deprecated or None,
    )
    problems = validate(layout)
    if problems:
        raise LayoutValidationError(problems)
    return layout
