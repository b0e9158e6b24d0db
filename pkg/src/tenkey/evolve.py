"""Steady-state layout search: between-crossover, five mutations, trials."""

from __future__ import annotations

import hashlib
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from random import Random
from typing import Callable, Sequence

from .corpus import LETTERS, NormalizedCorpus
from .cost import (
    FitnessBreakdown,
    FitnessWeights,
    TypingCostEngine,
    evaluate,
    genes_to_layout,
    layout_genes,
    layout_symbols,
)
from .keypad import (
    FORBIDDEN_KEYS,
    SLOT_INDEX,
    SLOTS,
    USABLE_KEYS,
    KeySlot,
    Layout,
    Provenance,
    abc_baseline,
)
from .stats import summarize

N_GENES = 40


class MutationKind(Enum):
    SWAP_COLUMNS = "swap-columns"
    SWAP_ROWS = "swap-rows"
    SWAP_KEYS = "swap-keys"
    REORGANIZE_STROKES = "reorganize-strokes"
    SWAP_PAIR = "swap-pair"


_MUTATION_ORDER = tuple(MutationKind)


@dataclass(frozen=True)
class GaParams:
    population: int = 50
    evaluations: int = 50_050
    mutation_rate_each: float = 0.01
    crossover_rate: float = 1.0
    elite: int = 1
    trials: int = 50
    seed: int = 0
    weights: FitnessWeights = field(default_factory=FitnessWeights.two_thumb)

    def __post_init__(self) -> None:
        if min(self.evaluations, self.trials) <= 0:
            raise ValueError("evaluations and trials must be positive")
        if self.population < 2:
            raise ValueError("crossover needs a population of at least 2")
        if self.evaluations < self.population:
            raise ValueError("evaluation budget cannot be below the population size")
        if not 0 < self.crossover_rate <= 1:
            raise ValueError("crossover_rate must lie in (0, 1]")
        if not 0 <= self.mutation_rate_each <= 1:
            raise ValueError("mutation_rate_each must lie in [0, 1]")
        if self.elite not in (0, 1):
            raise ValueError("elite size must be 0 or 1")


def derive_seed(master: int, *salt: object) -> int:
    """Stable per-trial seed derivation, recorded in reports for replay."""
    digest = hashlib.sha256(repr((master,) + salt).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


# --- genome helpers -------------------------------------------------------
#
# A genome is a list of 40 slot indices (into keypad.SLOTS), one per symbol;
# vacancies are carried by blank symbols so every operator sees a bijection.

_SLOT_IDS_BY_KEY: dict[tuple[int, int], tuple[int, ...]] = {
    key: tuple(SLOT_INDEX[KeySlot(key[0], key[1], s)] for s in range(1, 5))
    for key in USABLE_KEYS
}


def _random_genes(rng: Random) -> list[int]:
    genes = list(range(N_GENES))
    rng.shuffle(genes)
    return genes


def random_layout(symbols: Sequence[str], rng: Random, **layout_kwargs) -> Layout:
    """Uniform random bijection of the 40 symbols onto the 40 valid slots."""
    return genes_to_layout(_random_genes(rng), _checked_symbols(symbols), **layout_kwargs)


def _checked_symbols(symbols: Sequence[str]) -> tuple[str, ...]:
    symbols = tuple(symbols)
    if len(symbols) != N_GENES or symbols[:26] != tuple(LETTERS):
        raise ValueError("expected the 26 letters followed by 14 multigram entries")
    return symbols


def between(g1: KeySlot, g2: KeySlot, g3: KeySlot) -> bool:
    """True iff each component of g1 lies in the closed span of g2 and g3."""
    return all(min(b, c) <= a <= max(b, c) for a, b, c in zip(g1, g2, g3))


@lru_cache(maxsize=None)
def _between_slot_ids(a: int, b: int) -> tuple[int, ...]:
    sa, sb = SLOTS[a], SLOTS[b]
    return tuple(
        SLOT_INDEX[KeySlot(r, c, s)]
        for r in range(min(sa.row, sb.row), max(sa.row, sb.row) + 1)
        for c in range(min(sa.col, sb.col), max(sa.col, sb.col) + 1)
        if (r, c) not in FORBIDDEN_KEYS
        for s in range(min(sa.stroke, sb.stroke), max(sa.stroke, sb.stroke) + 1)
    )


# Bound from the level argument: scanning levels 1..40 while 40 + 39 + ... + 1
# placements remain possible can never exceed 820 placement iterations.
PLACEMENT_BOUND = 820


def _crossover_genes(
    g1: Sequence[int], g2: Sequence[int], rng: Random
) -> tuple[list[int], list[int], int]:
    """Child genes constrained to lie between the parents where possible.

    Returns (child, fallback_symbols, iterations). Placement always takes the
    unplaced symbol with the fewest remaining positions, puts it on the
    position with the fewest competing symbols, and falls back to a random
    vacant slot only when a symbol has no between-position left.
    """
    sym_cands = [set(_between_slot_ids(a, b)) for a, b in zip(g1, g2)]
    pos_cands: list[set[int]] = [set() for _ in range(N_GENES)]
    for sym, cands in enumerate(sym_cands):
        for pos in cands:
            pos_cands[pos].add(sym)

    child = [-1] * N_GENES
    unplaced = set(range(N_GENES))
    vacant = set(range(N_GENES))
    fallbacks: list[int] = []
    iterations = 0
    while unplaced:
        iterations += 1
        if iterations > PLACEMENT_BOUND:
            raise AssertionError("placement loop exceeded its 820-iteration bound")
        sym = min(unplaced, key=lambda s: (len(sym_cands[s]), s))
        options = sym_cands[sym]
        if options:
            fewest = min(len(pos_cands[p]) for p in options)
            ties = sorted(p for p in options if len(pos_cands[p]) == fewest)
            pos = ties[0] if len(ties) == 1 else rng.choice(ties)
        else:
            fallbacks.append(sym)
            pos = rng.choice(sorted(vacant))
        child[sym] = pos
        unplaced.remove(sym)
        vacant.remove(pos)
        for other in pos_cands[pos]:
            if other != sym:
                sym_cands[other].discard(pos)
        pos_cands[pos] = set()
        for p in sym_cands[sym]:
            pos_cands[p].discard(sym)
        sym_cands[sym] = set()
    return child, fallbacks, iterations


def between_crossover(p1: Layout, p2: Layout, rng: Random) -> tuple[Layout, int]:
    """Between-crossover of two layouts over the same symbol alphabet."""
    symbols = layout_symbols(p1)
    if symbols != layout_symbols(p2):
        raise ValueError("parents place different symbol alphabets")
    child, fallbacks, _ = _crossover_genes(
        layout_genes(p1, symbols), layout_genes(p2, symbols), rng
    )
    return genes_to_layout(child, symbols, charset=p1.charset), len(fallbacks)


def _mutate_genes(genes: Sequence[int], kind: MutationKind, rng: Random) -> list[int]:
    g = list(genes)
    if kind is MutationKind.SWAP_PAIR:
        i, j = rng.sample(range(N_GENES), 2)
        g[i], g[j] = g[j], g[i]
        return g

    inv = [0] * N_GENES
    for sym, pos in enumerate(g):
        inv[pos] = sym

    def swap_slots(pa: int, pb: int) -> None:
        sa, sb = inv[pa], inv[pb]
        g[sa], g[sb] = pb, pa
        inv[pa], inv[pb] = sb, sa

    if kind is MutationKind.SWAP_KEYS:
        ka, kb = rng.sample(USABLE_KEYS, 2)
        for pa, pb in zip(_SLOT_IDS_BY_KEY[ka], _SLOT_IDS_BY_KEY[kb]):
            swap_slots(pa, pb)
    elif kind is MutationKind.REORGANIZE_STROKES:
        key = USABLE_KEYS[rng.randrange(len(USABLE_KEYS))]
        ids = _SLOT_IDS_BY_KEY[key]
        order = list(range(4))
        rng.shuffle(order)
        syms = [inv[p] for p in ids]
        for target, source in enumerate(order):
            g[syms[source]] = ids[target]
    elif kind is MutationKind.SWAP_ROWS:
        ra, rb = rng.sample((1, 2, 3), 2)
        for col in (1, 2, 3):
            for stroke in range(1, 5):
                swap_slots(SLOT_INDEX[KeySlot(ra, col, stroke)], SLOT_INDEX[KeySlot(rb, col, stroke)])
    elif kind is MutationKind.SWAP_COLUMNS:
        # Row 4 is excluded: its side keys are reserved, so only the 24 genes
        # in rows 1-3 have a legal counterpart in the other column.
        ca, cb = rng.sample((1, 2, 3), 2)
        for row in (1, 2, 3):
            for stroke in range(1, 5):
                swap_slots(SLOT_INDEX[KeySlot(row, ca, stroke)], SLOT_INDEX[KeySlot(row, cb, stroke)])
    else:
        raise ValueError(f"unknown mutation kind: {kind!r}")
    return g


def mutate(layout: Layout, kind: MutationKind, rng: Random) -> Layout:
    """Apply one mutation operator, returning a new valid layout."""
    symbols = layout_symbols(layout)
    genes = _mutate_genes(layout_genes(layout, symbols), kind, rng)
    return genes_to_layout(genes, symbols, charset=layout.charset)


# --- steady-state run -----------------------------------------------------


def steady_state_run(
    corpus: NormalizedCorpus,
    symbols: Sequence[str],
    params: GaParams,
    rng: Random,
    progress: Callable[[int, float], None] | None = None,
) -> tuple[Layout, FitnessBreakdown, list[float]]:
    """One GA run; returns the best layout, its breakdown, and the history of
    best-so-far cost after every evaluation (length == params.evaluations)."""
    symbols = _checked_symbols(symbols)
    engine = TypingCostEngine(corpus, symbols)
    weights = params.weights
    budget = params.evaluations

    population: list[list[int]] = []
    costs: list[float] = []
    history: list[float] = []
    best_cost = float("inf")
    best_genes: list[int] | None = None
    best_bd: FitnessBreakdown | None = None
    best_idx = -1
    evals = 0

    def note(idx: int, genes: list[int], cost: float, bd: FitnessBreakdown) -> None:
        nonlocal best_cost, best_genes, best_bd, best_idx
        if cost < best_cost:
            best_cost, best_genes, best_bd, best_idx = cost, list(genes), bd, idx

    for i in range(params.population):
        genes = _random_genes(rng)
        bd = engine.breakdown(genes, weights)
        evals += 1
        population.append(genes)
        costs.append(bd.total)
        note(i, genes, bd.total, bd)
        history.append(best_cost)

    size = params.population
    protect = params.elite > 0
    while evals < budget:
        if rng.random() < params.crossover_rate:
            i, j = rng.sample(range(size), 2)
            child, _, _ = _crossover_genes(population[i], population[j], rng)
            bd = engine.breakdown(child, weights)
            evals += 1
            worse, other = (i, j) if costs[i] > costs[j] else (j, i)
            if protect and worse == best_idx:
                worse, other = other, worse
            if bd.total < costs[worse]:
                population[worse] = child
                costs[worse] = bd.total
                note(worse, child, bd.total, bd)
            history.append(best_cost)
            if progress is not None and evals % 5000 == 0:
                progress(evals, best_cost)
            if evals >= budget:
                break

        for kind in _MUTATION_ORDER:
            if evals >= budget:
                break
            if rng.random() >= params.mutation_rate_each:
                continue
            if protect:
                k = rng.randrange(size - 1)
                if k >= best_idx:
                    k += 1
            else:
                k = rng.randrange(size)
            child = _mutate_genes(population[k], kind, rng)
            bd = engine.breakdown(child, weights)
            evals += 1
            population[k] = child
            costs[k] = bd.total
            note(k, child, bd.total, bd)
            history.append(best_cost)

    assert best_genes is not None and best_bd is not None
    # elite safety: the best-ever individual must still sit in the population
    assert not protect or (costs[best_idx] == best_cost and population[best_idx] == best_genes)
    layout = genes_to_layout(
        best_genes,
        symbols,
        charset=corpus.specials,
        provenance=Provenance(
            corpus_digest=corpus.source_digest,
            metric=weights.variant,
            weights=(weights.alpha, weights.beta, weights.gamma),
            fitness=best_bd.total,
        ),
    )
    return layout, best_bd, history


# --- multi-trial driver ---------------------------------------------------


@dataclass(frozen=True)
class TrialOutcome:
    trial: int
    seed: int
    best: FitnessBreakdown


@dataclass(frozen=True)
class BaselineSummary:
    per_trial_best: tuple[float, ...]
    best: float
    mean: float
    sd: float


@dataclass(frozen=True)
class TrialReport:
    """Multi-trial results in Best / Average +- sd form, with seed ledger."""

    params: GaParams
    multigrams: tuple[str, ...] | None
    trials: tuple[TrialOutcome, ...]
    best: float
    mean: float
    sd: float
    best_layout: Layout
    random_baseline: BaselineSummary | None
    abc: FitnessBreakdown | None
    wall_clock_s: float = field(compare=False, default=0.0)


def _trial_symbols(multigrams: Sequence[str] | None) -> tuple[str, ...]:
    if multigrams is None:
        return tuple(LETTERS) + ("",) * 14
    multis = sorted(multigrams)
    if len(multis) != 14 or len(set(multis)) != 14:
        raise ValueError("expected exactly 14 distinct multigrams")
    return tuple(LETTERS) + tuple(multis)


def _run_trial(args: tuple) -> tuple[int, int, list[int], FitnessBreakdown]:
    corpus, symbols, params, trial, seed = args
    layout, bd, _ = steady_state_run(corpus, symbols, params, Random(seed))
    return trial, seed, layout_genes(layout, symbols), bd


def multi_trial_optimize(
    corpus: NormalizedCorpus,
    params: GaParams,
    multigrams: Sequence[str] | None = None,
    *,
    workers: int = 1,
    baselines: bool = True,
    progress: Callable[[str], None] | None = None,
) -> TrialReport:
    """Independent GA trials with derived seeds, plus the paper's baselines.

    The random baseline takes the best of `population` uniform layouts per
    trial; the ABC baseline scores the alphabetic layout once. Trials run in
    a process pool when workers > 1; aggregation is order-independent.
    """
    start = time.perf_counter()
    symbols = _trial_symbols(multigrams)
    jobs = [
        (corpus, symbols, params, trial, derive_seed(params.seed, trial))
        for trial in range(params.trials)
    ]
    results: list[tuple[int, int, list[int], FitnessBreakdown]] = []
    if workers > 1 and params.trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for result in pool.map(_run_trial, jobs):
                results.append(result)
                if progress is not None:
                    progress(f"trial {result[0]} done: best {result[3].total:.5f}")
    else:
        for job in jobs:
            result = _run_trial(job)
            results.append(result)
            if progress is not None:
                progress(f"trial {result[0]} done: best {result[3].total:.5f}")
    results.sort(key=lambda r: r[0])

    outcomes = tuple(TrialOutcome(trial, seed, bd) for trial, seed, _, bd in results)
    totals = [o.best.total for o in outcomes]
    best, mean, sd = summarize(totals)

    champion = min(results, key=lambda r: r[3].total)
    best_layout = genes_to_layout(
        champion[2],
        symbols,
        charset=corpus.specials,
        provenance=Provenance(
            corpus_digest=corpus.source_digest,
            seed=champion[1],
            metric=params.weights.variant,
            weights=(params.weights.alpha, params.weights.beta, params.weights.gamma),
            fitness=champion[3].total,
        ),
    )

    random_baseline = None
    abc_bd = None
    if baselines:
        engine = TypingCostEngine(corpus, symbols)
        per_trial = []
        for trial in range(params.trials):
            rng = Random(derive_seed(params.seed, "random-baseline", trial))
            per_trial.append(
                min(
                    engine.breakdown(_random_genes(rng), params.weights).total
                    for _ in range(params.population)
                )
            )
        b_best, b_mean, b_sd = summarize(per_trial)
        random_baseline = BaselineSummary(tuple(per_trial), b_best, b_mean, b_sd)
        abc_bd = evaluate(abc_baseline(), corpus, params.weights)

    return TrialReport(
        params=params,
        multigrams=tuple(sorted(multigrams)) if multigrams is not None else None,
        trials=outcomes,
        best=best,
        mean=mean,
        sd=sd,
        best_layout=best_layout,
        random_baseline=random_baseline,
        abc=abc_bd,
        wall_clock_s=time.perf_counter() - start,
    )
