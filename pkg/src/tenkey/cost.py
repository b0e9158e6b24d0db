"""Typing-cost model: greedy segmentation and the stroke/key/hand/travel rates.

Costs are computed over symbol transitions. A corpus character with no layout
symbol (spaces, stray punctuation) is skipped and breaks the adjacency chain,
so same-key, same-hand and travel penalties never cross it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .corpus import LETTERS, NormalizedCorpus
from .keypad import (
    SLOTS,
    SLOT_INDEX,
    KeySlot,
    Layout,
    LayoutValidationError,
    key_distance,
    validate,
)

TWO_THUMB = "two-thumb"
MORADI = "moradi"

N_SYMBOLS = 40
N_LETTERS = 26


class EmptySegmentation(ValueError):
    """No layout-representable characters to type."""


@dataclass(frozen=True)
class FitnessWeights:
    """Weighted combination of the cost components.

    two-thumb: alpha*f1 + beta*f2 + gamma*f3 (same-hand rate).
    moradi:    alpha*f1 + beta*f2 + gamma*f4 (thumb travel).
    """

    variant: str = TWO_THUMB
    alpha: float = 1.0
    beta: float = 1.5
    gamma: float = 0.25

    def __post_init__(self) -> None:
        if self.variant not in (TWO_THUMB, MORADI):
            raise ValueError(f"unknown metric variant: {self.variant!r}")
        if min(self.alpha, self.beta, self.gamma) < 0:
            raise ValueError("weights must be non-negative")

    @classmethod
    def two_thumb(cls) -> "FitnessWeights":
        return cls()

    @classmethod
    def moradi(cls) -> "FitnessWeights":
        return cls(MORADI, 0.7, 3.0, 1.0)

    @classmethod
    def for_metric(cls, name: str) -> "FitnessWeights":
        if name == TWO_THUMB:
            return cls.two_thumb()
        if name == MORADI:
            return cls.moradi()
        raise ValueError(f"unknown metric variant: {name!r}")

    def combine(self, f1: float, f2: float, f3: float, f4: float) -> float:
        last = f3 if self.variant == TWO_THUMB else f4
        return self.alpha * f1 + self.beta * f2 + self.gamma * last


@dataclass(frozen=True)
class SegmentationResult:
    """Greedy segmentation of a corpus into typed symbols.

    `breaks` holds corpus positions of skipped characters; `run_ids` gives the
    adjacency run each emitted symbol belongs to (runs reset at breaks).
    """

    symbols: tuple[tuple[str, KeySlot], ...]
    covered_chars: int
    breaks: tuple[int, ...]
    run_ids: tuple[int, ...]


@dataclass(frozen=True)
class FitnessBreakdown:
    f1: float  # mean strokes per covered character
    f2: float  # same-key transition rate
    f3: float  # same-hand transition rate (with center-column parity)
    f4: float  # mean key travel per covered character
    total: float


def deprecated_set(layout: Layout) -> frozenset[str]:
    """Multigrams whose slot costs at least as many strokes as their letters.

    A multigram containing a character with no slot of its own (punctuation)
    is never deprecated: direct entry would need a mode shift.
    """
    dep = set()
    for sym, slot in layout.placements.items():
        if len(sym) < 2:
            continue
        if any(ch not in layout.placements for ch in sym):
            continue
        direct = sum(layout.placements[ch].stroke for ch in sym)
        if slot.stroke >= direct:
            dep.add(sym)
    return frozenset(dep)


def layout_symbols(layout: Layout) -> tuple[str, ...]:
    """Canonical 40-entry alphabet: a-z, then sorted multigrams, blank-padded."""
    multis = layout.multigrams
    return tuple(LETTERS) + tuple(multis) + ("",) * (14 - len(multis))


def layout_genes(layout: Layout, symbols: Sequence[str]) -> list[int]:
    """Slot index per symbol; blanks take the vacant slots in slot order."""
    genes = [-1] * len(symbols)
    used = set()
    for i, sym in enumerate(symbols):
        if sym:
            slot = layout.placements[sym]
            genes[i] = SLOT_INDEX[slot]
            used.add(genes[i])
    vacant = iter(i for i in range(len(SLOTS)) if i not in used)
    for i, sym in enumerate(symbols):
        if not sym:
            genes[i] = next(vacant)
    return genes


def genes_to_layout(genes: Sequence[int], symbols: Sequence[str], **kwargs) -> Layout:
    placements = {sym: SLOTS[g] for sym, g in zip(symbols, genes) if sym}
    return Layout(placements, **kwargs)


# Per-slot geometry aligned with keypad.SLOTS; key ids are dense over the grid.
_SLOT_ROW = np.array([s.row for s in SLOTS], dtype=np.int64)
_SLOT_COL = np.array([s.col for s in SLOTS], dtype=np.int64)
_SLOT_STROKE = np.array([s.stroke for s in SLOTS], dtype=np.int64)
_SLOT_KEY = np.array([(s.row - 1) * 3 + (s.col - 1) for s in SLOTS], dtype=np.int64)
_SLOT_STROKE_PY = [s.stroke for s in SLOTS]


@dataclass(frozen=True)
class _Tokens:
    ids: np.ndarray  # symbol index per emitted token
    runs: np.ndarray  # adjacency run id per token
    pair_ok: np.ndarray  # runs[i] == runs[i+1], per adjacent token pair
    covered: int
    breaks: tuple[int, ...]


class TypingCostEngine:
    """Fast repeated cost evaluation of slot assignments over one corpus.

    The symbol alphabet is fixed at construction: entries 0-25 are the
    letters, 26-39 the multigram slots (empty string marks a vacancy).
    Greedy segmentations are cached per set of live (non-deprecated)
    multigrams, so evaluating one more layout costs a few numpy gathers.
    """

    def __init__(self, corpus: NormalizedCorpus, symbols: Sequence[str]):
        symbols = tuple(symbols)
        if len(symbols) != N_SYMBOLS or symbols[:N_LETTERS] != tuple(LETTERS):
            raise ValueError("expected the 26 letters followed by 14 multigram entries")
        non_blank = [s for s in symbols[N_LETTERS:] if s]
        if len(set(non_blank)) != len(non_blank):
            raise ValueError("duplicate multigram symbols")
        for s in non_blank:
            if not (2 <= len(s) <= 3) or " " in s:
                raise ValueError(f"not a usable multigram: {s!r}")
        self.corpus = corpus
        self.symbols = symbols

        # For deprecation: per multigram entry, the letter indices it spells,
        # () when it contains a non-letter (never deprecated), None for blanks.
        self._multi_info: list[tuple[int, ...] | None] = []
        for s in symbols[N_LETTERS:]:
            if not s:
                self._multi_info.append(None)
            elif all(ch in LETTERS for ch in s):
                self._multi_info.append(tuple(ord(ch) - 97 for ch in s))
            else:
                self._multi_info.append(())

        # Match tables: symbol index (or -1) for the 3-, 2- and 1-long symbol
        # starting at each corpus position. Symbols never contain spaces, so
        # matches cannot straddle a word boundary.
        index = {s: i for i, s in enumerate(symbols) if s}
        text = corpus.text
        n = len(text)
        self._m1 = [index.get(text[p], -1) for p in range(n)]
        self._m2 = [index.get(text[p : p + 2], -1) if p + 2 <= n else -1 for p in range(n)]
        self._m3 = [index.get(text[p : p + 3], -1) if p + 3 <= n else -1 for p in range(n)]
        self._cache: dict[int, _Tokens] = {}

    def live_mask(self, genes: Sequence[int]) -> int:
        """Bitmask (over entries 26..39) of multigrams worth using."""
        mask = 0
        stroke = _SLOT_STROKE_PY
        for j, info in enumerate(self._multi_info):
            if info is None:
                continue
            if info == ():
                mask |= 1 << j
                continue
            if stroke[genes[N_LETTERS + j]] < sum(stroke[genes[i]] for i in info):
                mask |= 1 << j
        return mask

    def tokens(self, live: int) -> _Tokens:
        """Greedy longest-match segmentation for a set of live multigrams."""
        cached = self._cache.get(live)
        if cached is not None:
            return cached
        m1, m2, m3 = self._m1, self._m2, self._m3
        ids: list[int] = []
        runs: list[int] = []
        breaks: list[int] = []
        run = 0
        pending_break = False
        covered = 0
        p = 0
        n = len(m1)
        while p < n:
            j = m3[p]
            if j >= 0 and live >> (j - N_LETTERS) & 1:
                step = 3
            else:
                j = m2[p]
                if j >= 0 and live >> (j - N_LETTERS) & 1:
                    step = 2
                else:
                    j = m1[p]
                    if j >= 0:
                        step = 1
                    else:
                        breaks.append(p)
                        pending_break = True
                        p += 1
                        continue
            if pending_break:
                if ids:
                    run += 1
                pending_break = False
            ids.append(j)
            runs.append(run)
            covered += step
            p += step
        ids_arr = np.array(ids, dtype=np.int64)
        runs_arr = np.array(runs, dtype=np.int64)
        result = _Tokens(ids_arr, runs_arr, runs_arr[1:] == runs_arr[:-1], covered, tuple(breaks))
        self._cache[live] = result
        return result

    def breakdown(self, genes: Sequence[int], weights: FitnessWeights) -> FitnessBreakdown:
        toks = self.tokens(self.live_mask(genes))
        c = toks.covered
        if c == 0:
            raise EmptySegmentation("corpus has no layout-representable characters")
        g = np.asarray(genes, dtype=np.int64)
        ids = toks.ids
        pair_ok = toks.pair_ok

        f1 = float(_SLOT_STROKE[g][ids].sum()) / c

        keys = _SLOT_KEY[g][ids]
        f2 = float(np.count_nonzero((keys[1:] == keys[:-1]) & pair_ok)) / c

        cols = _SLOT_COL[g][ids]
        sign = cols - 2  # left -1, center 0, right +1
        nz = np.nonzero(sign)[0]
        f3_num = 0
        if nz.size >= 2:
            s = sign[nz]
            same_run = toks.runs[nz[1:]] == toks.runs[nz[:-1]]
            # Penalty iff hand product matches the parity of the center gap.
            parity = 1 - 2 * ((nz[1:] - nz[:-1] - 1) & 1)
            f3_num = int(np.count_nonzero(same_run & (s[1:] * s[:-1] == parity)))
        f3 = f3_num / c

        rows = _SLOT_ROW[g][ids]
        dr = np.diff(rows)
        dc = np.diff(cols)
        f4 = float(np.sqrt(dr * dr + dc * dc)[pair_ok].sum()) / c

        return FitnessBreakdown(f1, f2, f3, f4, weights.combine(f1, f2, f3, f4))


def _checked(layout: Layout) -> Layout:
    problems = validate(layout)
    if problems:
        raise LayoutValidationError(problems)
    return layout


def segment(corpus: NormalizedCorpus, layout: Layout) -> SegmentationResult:
    """Greedy longest-match segmentation over the layout's live symbols."""
    symbols = layout_symbols(_checked(layout))
    engine = TypingCostEngine(corpus, symbols)
    genes = layout_genes(layout, symbols)
    toks = engine.tokens(engine.live_mask(genes))
    slot_by_sym = [SLOTS[g] for g in genes]
    emitted = tuple((symbols[j], slot_by_sym[j]) for j in toks.ids)
    return SegmentationResult(emitted, toks.covered, toks.breaks, tuple(int(r) for r in toks.runs))


def _covered(seg: SegmentationResult) -> int:
    if seg.covered_chars == 0:
        raise EmptySegmentation("segmentation covers no characters")
    return seg.covered_chars


def f1_strokes(seg: SegmentationResult) -> float:
    """Mean strokes per covered character."""
    return sum(slot.stroke for _, slot in seg.symbols) / _covered(seg)


def f2_same_key(seg: SegmentationResult) -> float:
    """Rate of adjacent symbol pairs sharing a key within one adjacency run."""
    num = 0
    for i in range(1, len(seg.symbols)):
        if seg.run_ids[i] != seg.run_ids[i - 1]:
            continue
        a = seg.symbols[i - 1][1]
        b = seg.symbols[i][1]
        num += (a.row, a.col) == (b.row, b.col)
    return num / _covered(seg)


def f3_same_hand(seg: SegmentationResult) -> float:
    """Same-hand rate under the center-column parity rule.

    Two non-center symbols k center symbols apart force the same thumb when
    they use the same hand with k even, or opposite hands with k odd.
    """
    num = 0
    prev_sign = 0
    centers = 0
    prev_run = -1
    for (_, slot), run in zip(seg.symbols, seg.run_ids):
        if run != prev_run:
            prev_sign = 0
            centers = 0
            prev_run = run
        sign = slot.col - 2
        if sign == 0:
            if prev_sign:
                centers += 1
            continue
        if prev_sign:
            expected = 1 if centers % 2 == 0 else -1
            if prev_sign * sign == expected:
                num += 1
        prev_sign = sign
        centers = 0
    return num / _covered(seg)


def f4_distance(seg: SegmentationResult) -> float:
    """Mean key travel per covered character; runs start with no prior key."""
    total = 0.0
    for i in range(1, len(seg.symbols)):
        if seg.run_ids[i] == seg.run_ids[i - 1]:
            total += key_distance(seg.symbols[i - 1][1], seg.symbols[i][1])
    return total / _covered(seg)


def evaluate(
    layout: Layout, corpus: NormalizedCorpus, weights: FitnessWeights | None = None
) -> FitnessBreakdown:
    """Full cost breakdown of a layout on a corpus under the given weights."""
    weights = weights or FitnessWeights.two_thumb()
    symbols = layout_symbols(_checked(layout))
    engine = TypingCostEngine(corpus, symbols)
    return engine.breakdown(layout_genes(layout, symbols), weights)
