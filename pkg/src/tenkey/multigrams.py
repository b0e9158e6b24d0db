"""Preprocessing GA that picks which multigrams deserve their own key slots.

The fitness of a candidate set is how far the letter frequency ranks move
once the multigrams absorb their occurrences: large shifts mean the chosen
multigrams will claim high-priority slots from letters they relieve.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from random import Random
from typing import Mapping, Sequence

from .corpus import (
    LETTERS,
    EmptyCorpus,
    InsufficientCandidates,
    MultigramCandidate,
    NormalizedCorpus,
    ngram_counts,
    top_candidates,
)

_LETTER_SET = frozenset(LETTERS)


@dataclass(frozen=True)
class MultigramSet:
    members: frozenset[str]
    fitness: float | None = None


@dataclass(frozen=True)
class SelectionParams:
    pool_size: int = 50
    set_size: int = 14
    population: int = 50
    iterations: int = 1000
    mutation_rate: float = 0.01
    seed: int = 0

    def __post_init__(self) -> None:
        if min(self.pool_size, self.set_size, self.population, self.iterations) <= 0:
            raise ValueError("all selection parameters must be positive")
        if self.set_size > self.pool_size:
            raise ValueError("set_size cannot exceed pool_size")
        if not 0 <= self.mutation_rate <= 1:
            raise ValueError("mutation_rate must lie in [0, 1]")


class _SegmentCounter:
    """Greedy segment-and-count over the letters plus a candidate set."""

    def __init__(self, corpus: NormalizedCorpus):
        text = corpus.text
        self._text = text
        self._s2 = [text[p : p + 2] for p in range(len(text))]
        self._s3 = [text[p : p + 3] for p in range(len(text))]
        self._is_letter = [ch in _LETTER_SET for ch in text]

    def counts(self, members: frozenset[str]) -> Counter[str]:
        c: Counter[str] = Counter()
        text = self._text
        s2, s3, is_letter = self._s2, self._s3, self._is_letter
        p = 0
        n = len(text)
        while p < n:
            tri = s3[p]
            if tri in members:
                c[tri] += 1
                p += 3
                continue
            duo = s2[p]
            if duo in members:
                c[duo] += 1
                p += 2
                continue
            if is_letter[p]:
                c[text[p]] += 1
            p += 1
        return c


def _letter_base_ranks(corpus: NormalizedCorpus) -> dict[str, int]:
    """1-based ranks of the 26 letters by raw unigram count, ties lexicographic."""
    unigrams = ngram_counts(corpus, 1).entries
    ordered = sorted(LETTERS, key=lambda ch: (-unigrams.get(ch, 0), ch))
    return {ch: rank for rank, ch in enumerate(ordered, start=1)}


def _rank_shift(
    members: frozenset[str], counter: _SegmentCounter, base_ranks: Mapping[str, int]
) -> float:
    seg_counts = counter.counts(members)
    pool = list(LETTERS) + sorted(members)
    ordered = sorted(pool, key=lambda s: (-seg_counts.get(s, 0), s))
    new_rank = {s: rank for rank, s in enumerate(ordered, start=1)}
    return float(sum(abs(new_rank[ch] - base_ranks[ch]) for ch in LETTERS))


def rank_shift_fitness(mset: MultigramSet, corpus: NormalizedCorpus) -> float:
    """Total absolute letter rank movement once the set absorbs its matches.

    Letters are first ranked among themselves by raw count, then re-ranked
    among letters plus set members by post-segmentation counts. Higher is
    better.
    """
    if not corpus.text:
        raise EmptyCorpus("corpus is empty")
    return _rank_shift(mset.members, _SegmentCounter(corpus), _letter_base_ranks(corpus))


def _roulette_pick(pool: Sequence[tuple[str, int]], rng: Random) -> int | None:
    """Index of a frequency-proportional draw; zero-weight entries never win."""
    total = sum(w for _, w in pool)
    if total <= 0:
        return None
    r = rng.random() * total
    acc = 0.0
    pick = None
    for i, (_, w) in enumerate(pool):
        if w <= 0:
            continue
        acc += w
        pick = i
        if r < acc:
            break
    return pick


def eager_init(
    candidates: Sequence[MultigramCandidate], params: SelectionParams, rng: Random
) -> list[MultigramSet]:
    """Population of sets drawn by roulette sampling without replacement."""
    if len(candidates) < params.set_size:
        raise InsufficientCandidates(
            f"{len(candidates)} candidates cannot fill a set of {params.set_size}"
        )
    population = []
    for _ in range(params.population):
        pool = [(c.text, c.count) for c in candidates]
        members = []
        for _ in range(params.set_size):
            pick = _roulette_pick(pool, rng)
            if pick is None:
                raise InsufficientCandidates("ran out of candidates with positive counts")
            members.append(pool.pop(pick)[0])
        population.append(MultigramSet(frozenset(members)))
    return population


def eager_crossover(
    p1: MultigramSet, p2: MultigramSet, counts: Mapping[str, int]
) -> MultigramSet:
    """Keep everything both parents share, then fill by descending frequency."""
    size = len(p1.members)
    members = set(p1.members & p2.members)
    for text in sorted(p1.members ^ p2.members, key=lambda t: (-counts.get(t, 0), t)):
        if len(members) >= size:
            break
        members.add(text)
    return MultigramSet(frozenset(members))


def candidate_mutation(
    s: MultigramSet, outside: Sequence[str], rate: float, rng: Random
) -> MultigramSet:
    """Replace each member with an out-of-pool n-gram at the given rate."""
    members = set(s.members)
    for member in sorted(s.members):
        if rng.random() >= rate:
            continue
        choices = [t for t in outside if t not in members]
        if not choices:
            continue
        members.discard(member)
        members.add(rng.choice(choices))
    return MultigramSet(frozenset(members))


def select_multigrams(corpus: NormalizedCorpus, params: SelectionParams) -> MultigramSet:
    """Steady-state search for the multigram set with the largest rank shift."""
    candidates = top_candidates(corpus, params.pool_size)
    counts: dict[str, int] = {}
    counts.update(ngram_counts(corpus, 2).entries)
    counts.update(ngram_counts(corpus, 3).entries)
    in_pool = {c.text for c in candidates}
    outside = sorted(t for t in counts if t not in in_pool)

    counter = _SegmentCounter(corpus)
    base_ranks = _letter_base_ranks(corpus)
    memo: dict[frozenset[str], float] = {}

    def fit(members: frozenset[str]) -> float:
        cached = memo.get(members)
        if cached is None:
            cached = memo[members] = _rank_shift(members, counter, base_ranks)
        return cached

    rng = Random(params.seed)
    population = eager_init(candidates, params, rng)
    fitnesses = [fit(s.members) for s in population]

    for _ in range(params.iterations):
        i, j = rng.sample(range(len(population)), 2)
        child = eager_crossover(population[i], population[j], counts)
        child_fit = fit(child.members)
        worse = i if fitnesses[i] <= fitnesses[j] else j
        if child_fit > fitnesses[worse]:
            population[worse] = child
            fitnesses[worse] = child_fit

        k = rng.randrange(len(population))
        mutant = candidate_mutation(population[k], outside, params.mutation_rate, rng)
        if mutant.members != population[k].members:
            mutant_fit = fit(mutant.members)
            if mutant_fit > fitnesses[k]:
                population[k] = mutant
                fitnesses[k] = mutant_fit

    best = max(range(len(population)), key=lambda idx: fitnesses[idx])
    return replace(population[best], fitness=fitnesses[best])
