from random import Random

import pytest

from oracles import best_set_exhaustive, rank_shift_naive
from tenkey.corpus import (
    InsufficientCandidates,
    MultigramCandidate,
    ngram_counts,
    normalize,
    top_candidates,
)
from tenkey.multigrams import (
    MultigramSet,
    SelectionParams,
    candidate_mutation,
    eager_crossover,
    eager_init,
    rank_shift_fitness,
    select_multigrams,
)


def _counts(corpus):
    merged = {}
    merged.update(ngram_counts(corpus, 2).entries)
    merged.update(ngram_counts(corpus, 3).entries)
    return merged


class TestRankShiftFitness:
    def test_absent_multigrams_do_not_move_letters(self):
        # every letter occurs, so zero-count multigrams outrank none of them
        corpus = normalize("the quick brown fox jumps over the lazy dog")
        mset = MultigramSet(frozenset(["qqq", "zzz", "xxx"]))
        assert rank_shift_fitness(mset, corpus) == 0.0

    def test_of_absorption_demotes_f(self):
        corpus = normalize(" ".join(["of"] * 30 + ["o"] * 70 + ["f"] * 20))
        mset = MultigramSet(frozenset(["of"]))
        score = rank_shift_fitness(mset, corpus)
        assert score == rank_shift_naive(set(mset.members), corpus.text)
        assert score > 0

    def test_matches_naive_oracle_on_random_sets(self):
        rng = Random(5)
        corpus = normalize(
            "people keep sending me the same thing over and over again and i "
            "think the best answer is to just let it go and see what happens"
        )
        pool = [c.text for c in top_candidates(corpus, 20)]
        for _ in range(20):
            members = frozenset(rng.sample(pool, 5))
            assert rank_shift_fitness(MultigramSet(members), corpus) == rank_shift_naive(
                set(members), corpus.text
            )


class TestEagerInit:
    def _params(self, **kw):
        defaults = dict(pool_size=20, set_size=3, population=5, iterations=10, seed=1)
        defaults.update(kw)
        return SelectionParams(**defaults)

    def test_zero_count_candidate_never_selected(self):
        candidates = [
            MultigramCandidate("ab", 10, 1),
            MultigramCandidate("cd", 5, 2),
            MultigramCandidate("ef", 3, 3),
            MultigramCandidate("gh", 0, 4),
        ]
        rng = Random(0)
        pop = eager_init(candidates, self._params(population=200), rng)
        assert all("gh" not in s.members for s in pop)

    def test_exact_pool_forces_full_set(self):
        candidates = [MultigramCandidate(t, 5, i + 1) for i, t in enumerate(["ab", "cd", "ef"])]
        pop = eager_init(candidates, self._params(set_size=3), Random(3))
        assert all(s.members == frozenset(["ab", "cd", "ef"]) for s in pop)

    def test_too_few_candidates(self):
        with pytest.raises(InsufficientCandidates):
            eager_init([MultigramCandidate("ab", 5, 1)], self._params(set_size=2), Random(0))

    def test_members_distinct_and_sized(self):
        candidates = [MultigramCandidate(t, n, i + 1) for i, (t, n) in enumerate(
            [("ab", 9), ("cd", 7), ("ef", 5), ("gh", 3), ("ij", 1)]
        )]
        for s in eager_init(candidates, self._params(population=50), Random(7)):
            assert len(s.members) == 3

    def test_roulette_frequencies_track_counts(self):
        # chi-square over the first pick of each individual, 10,000 draws
        counts = {"ab": 50, "cd": 30, "ef": 15, "gh": 5}
        candidates = [MultigramCandidate(t, n, i + 1) for i, (t, n) in enumerate(counts.items())]
        rng = Random(11)
        draws = {t: 0 for t in counts}
        n_draws = 10_000
        pop = eager_init(candidates, self._params(set_size=1, population=n_draws), rng)
        for s in pop:
            (member,) = s.members
            draws[member] += 1
        total = sum(counts.values())
        chi2 = sum(
            (draws[t] - n_draws * n / total) ** 2 / (n_draws * n / total)
            for t, n in counts.items()
        )
        assert chi2 < 16.27  # chi-square 0.999 quantile, 3 degrees of freedom


class TestEagerCrossover:
    def test_identical_parents(self):
        p = MultigramSet(frozenset(["ab", "cd", "ef"]))
        child = eager_crossover(p, p, {"ab": 3, "cd": 2, "ef": 1})
        assert child.members == p.members

    def test_thirteen_shared_plus_most_frequent(self):
        shared = {f"s{i:02d}" for i in range(13)}
        p1 = MultigramSet(frozenset(shared | {"lo"}))
        p2 = MultigramSet(frozenset(shared | {"hi"}))
        counts = {"lo": 2, "hi": 9, **{s: 1 for s in shared}}
        child = eager_crossover(p1, p2, counts)
        assert child.members == frozenset(shared | {"hi"})

    def test_child_size_invariant(self):
        rng = Random(2)
        pool = [f"g{i:02d}" for i in range(30)]
        counts = {t: rng.randrange(1, 100) for t in pool}
        for _ in range(50):
            p1 = MultigramSet(frozenset(rng.sample(pool, 14)))
            p2 = MultigramSet(frozenset(rng.sample(pool, 14)))
            child = eager_crossover(p1, p2, counts)
            assert len(child.members) == 14

    def test_frequency_tie_breaks_lexicographically(self):
        p1 = MultigramSet(frozenset(["aa", "zz"]))
        p2 = MultigramSet(frozenset(["aa", "bb"]))
        child = eager_crossover(p1, p2, {"aa": 5, "zz": 3, "bb": 3})
        assert child.members == frozenset(["aa", "bb"])


class TestCandidateMutation:
    def test_zero_rate_is_identity(self):
        s = MultigramSet(frozenset(["ab", "cd"]))
        assert candidate_mutation(s, ["xy", "zw"], 0.0, Random(0)).members == s.members

    def test_full_rate_replaces_everything(self):
        s = MultigramSet(frozenset(["ab", "cd"]))
        out = candidate_mutation(s, ["uv", "wx", "yz"], 1.0, Random(1))
        assert out.members.isdisjoint(s.members)
        assert len(out.members) == 2

    def test_no_outside_candidates_is_a_noop(self):
        s = MultigramSet(frozenset(["ab", "cd"]))
        assert candidate_mutation(s, [], 1.0, Random(2)).members == s.members

    def test_distinctness_preserved(self):
        rng = Random(3)
        s = MultigramSet(frozenset(["ab", "cd", "ef"]))
        for _ in range(100):
            out = candidate_mutation(s, ["gh", "ij"], 0.5, rng)
            assert len(out.members) == 3


class TestSelectMultigrams:
    def test_deterministic_for_seed(self):
        corpus = normalize(
            "what are you doing tonight do you want to get some thing to eat "
            "with the rest of the group or stay in and watch the game with me"
        )
        params = SelectionParams(pool_size=30, set_size=5, population=10, iterations=50, seed=42)
        a = select_multigrams(corpus, params)
        b = select_multigrams(corpus, params)
        assert a == b

    def test_tiny_pool_returns_the_pool(self):
        # every distinct bigram/trigram is in the pool: zero effective search
        corpus = normalize("abc abc dbc dbc")  # ab, bc, db, abc, dbc
        pool = top_candidates(corpus, 5)
        assert len(pool) == 5
        params = SelectionParams(
            pool_size=5, set_size=5, population=4, iterations=5, seed=0
        )
        got = select_multigrams(corpus, params)
        assert got.members == frozenset(c.text for c in pool)

    def test_ga_matches_exhaustive_oracle(self):
        rng = Random(2026)
        alphabet = "aetos"
        for trial in range(3):
            words = [
                "".join(rng.choice(alphabet) for _ in range(rng.randrange(2, 6)))
                for _ in range(40)
            ]
            corpus = normalize(" ".join(words))
            try:
                pool = [c.text for c in top_candidates(corpus, 16)]
            except InsufficientCandidates:
                continue
            if len(pool) < 16:
                continue
            oracle_best, _ = best_set_exhaustive(pool, 2, corpus.text)
            params = SelectionParams(
                pool_size=16, set_size=2, population=20, iterations=150, seed=trial
            )
            got = select_multigrams(corpus, params)
            assert got.fitness == oracle_best

    def test_best_fitness_never_decreases(self):
        corpus = normalize(
            "the thing about the train is that it is never on time and the "
            "people who ride it know that better than anyone else around here"
        )
        short = SelectionParams(pool_size=20, set_size=4, population=8, iterations=5, seed=9)
        long = SelectionParams(pool_size=20, set_size=4, population=8, iterations=120, seed=9)
        assert select_multigrams(corpus, long).fitness >= select_multigrams(corpus, short).fitness
