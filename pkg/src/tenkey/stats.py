"""Rank-sum comparison and summary statistics for trial fitness samples."""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from itertools import groupby
from typing import Sequence


class EmptySample(ValueError):
    """A statistic was requested over an empty sample."""


@dataclass(frozen=True)
class RankSumResult:
    """Wilcoxon rank-sum (Mann-Whitney) test of sample a against sample b.

    w is the midrank sum of sample a; z_w its normal deviate; p_one_sided the
    probability of a rank sum this large under the no-difference hypothesis.
    """

    m: int
    n: int
    w: float
    e_w: float
    sigma_w: float
    z_w: float
    p_one_sided: float


def wilcoxon_rank_sum(a: Sequence[float], b: Sequence[float]) -> RankSumResult:
    """Rank-sum test with midranks for ties and the normal approximation."""
    if not a or not b:
        raise EmptySample("both samples must be non-empty")
    m, n = len(a), len(b)
    total = m + n
    tagged = sorted([(v, 0) for v in a] + [(v, 1) for v in b])
    ranks = [0.0] * total
    tie_term = 0.0
    pos = 0
    for _, group in groupby(tagged, key=lambda t: t[0]):
        size = len(list(group))
        midrank = pos + (size + 1) / 2
        for i in range(pos, pos + size):
            ranks[i] = midrank
        tie_term += size**3 - size
        pos += size
    w = sum(rank for rank, (_, tag) in zip(ranks, tagged) if tag == 0)
    e_w = m * (total + 1) / 2
    variance = m * n / 12 * ((total + 1) - tie_term / (total * (total - 1)))
    sigma_w = math.sqrt(max(variance, 0.0))
    z_w = 0.0 if sigma_w == 0 else (w - e_w) / sigma_w
    p = 0.5 * math.erfc(z_w / math.sqrt(2))
    return RankSumResult(m, n, w, e_w, sigma_w, z_w, p)


def summarize(samples: Sequence[float]) -> tuple[float, float, float]:
    """(best, mean, sample sd) of a fitness sample; sd of a singleton is 0."""
    if not samples:
        raise EmptySample("cannot summarize an empty sample")
    sd = statistics.stdev(samples) if len(samples) > 1 else 0.0
    return (min(samples), statistics.fmean(samples), sd)
