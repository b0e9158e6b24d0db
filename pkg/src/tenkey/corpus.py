"""Corpus normalization and the n-gram statistics that drive layout search."""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass

LETTERS = "abcdefghijklmnopqrstuvwxyz"

# Covers the usual phone-keypad punctuation plus emoticon parts like :) =) ^-^
DEFAULT_SPECIALS = frozenset(".,?!':;)(-=^")


class EmptyCorpus(ValueError):
    """Nothing survived normalization."""


class InsufficientCandidates(ValueError):
    """Too few distinct bigrams/trigrams to fill a multigram pool."""


@dataclass(frozen=True)
class CharsetPolicy:
    """Characters kept during normalization besides a-z and space.

    Digits are excluded by default (they live behind a mode shift on a real
    keypad); pass them in `specials` for archives that use them as text.
    """

    specials: frozenset[str] = DEFAULT_SPECIALS

    def __post_init__(self) -> None:
        for ch in self.specials:
            if len(ch) != 1 or ch.isalpha() or ch.isspace():
                raise ValueError(f"not a usable special character: {ch!r}")

    @property
    def alphabet(self) -> frozenset[str]:
        return frozenset(LETTERS) | self.specials


@dataclass(frozen=True)
class NormalizedCorpus:
    """Lowercased, charset-filtered text with provenance and size counts.

    char_count_all includes spaces; char_count_layout counts only characters
    a layout symbol can ever cover (everything except spaces).
    """

    text: str
    source_digest: str
    char_count_all: int
    char_count_layout: int
    specials: frozenset[str] = DEFAULT_SPECIALS


@dataclass(frozen=True)
class NgramTable:
    """Counts of length-`order` substrings taken within non-space runs."""

    order: int
    entries: dict[str, int]


@dataclass(frozen=True)
class MultigramCandidate:
    text: str
    count: int
    rank: int


def normalize(raw_text: str, policy: CharsetPolicy | None = None) -> NormalizedCorpus:
    """Lowercase, drop out-of-charset characters, collapse whitespace runs."""
    policy = policy or CharsetPolicy()
    keep = policy.alphabet
    out: list[str] = []
    pending_space = False
    for ch in raw_text.lower():
        if ch.isspace():
            pending_space = True
        elif ch in keep:
            if pending_space and out:
                out.append(" ")
            pending_space = False
            out.append(ch)
    text = "".join(out)
    if not text:
        raise EmptyCorpus("no representable characters in input")
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
    spaces = text.count(" ")
    return NormalizedCorpus(text, digest, len(text), len(text) - spaces, policy.specials)


def ngram_counts(corpus: NormalizedCorpus, order: int) -> NgramTable:
    """Count all length-`order` substrings; n-grams never span a space."""
    if order not in (1, 2, 3):
        raise ValueError(f"order must be 1, 2 or 3, got {order}")
    counts: Counter[str] = Counter()
    for run in corpus.text.split(" "):
        for i in range(len(run) - order + 1):
            counts[run[i : i + order]] += 1
    return NgramTable(order, dict(counts))


def top_candidates(corpus: NormalizedCorpus, k: int = 50) -> list[MultigramCandidate]:
    """The k most frequent bigrams and trigrams, pooled and ranked from 1.

    Ties break shorter-first then lexicographic so candidate pools are
    reproducible across runs. A production-sized pool (k >= 14) demands at
    least 14 distinct n-grams, enough to fill a multigram set.
    """
    if k < 1:
        raise ValueError("candidate pool size must be positive")
    pooled: Counter[str] = Counter()
    pooled.update(ngram_counts(corpus, 2).entries)
    pooled.update(ngram_counts(corpus, 3).entries)
    if len(pooled) < min(k, 14):
        raise InsufficientCandidates(
            f"corpus yields only {len(pooled)} distinct bigrams/trigrams"
        )
    ordered = sorted(pooled.items(), key=lambda kv: (-kv[1], len(kv[0]), kv[0]))
    return [
        MultigramCandidate(text, count, rank)
        for rank, (text, count) in enumerate(ordered[:k], start=1)
    ]
