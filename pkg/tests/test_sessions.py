import pytest
from hypothesis import given, settings, strategies as st

from oracles import levenshtein_matrix
from tenkey.sessions import (
    InvalidRecord,
    SessionFileError,
    SessionRecord,
    levenshtein,
    load_session_file,
    save_session_file,
    score_session,
)

short_text = st.text(alphabet="abcde", max_size=8)


class TestLevenshtein:
    def test_identity(self):
        assert levenshtein("abc", "abc") == 0

    def test_inserts_only(self):
        assert levenshtein("", "ab") == 2

    def test_kitten_sitting(self):
        assert levenshtein("kitten", "sitting") == 3

    @given(short_text, short_text)
    def test_matches_full_table_oracle(self, a, b):
        assert levenshtein(a, b) == levenshtein_matrix(a, b)

    @settings(max_examples=200)
    @given(short_text, short_text, short_text)
    def test_metric_properties(self, a, b, c):
        assert levenshtein(a, a) == 0
        assert levenshtein(a, b) == levenshtein(b, a)
        assert levenshtein(a, c) <= levenshtein(a, b) + levenshtein(b, c)
        if a != b:
            assert levenshtein(a, b) > 0


class TestScoreSession:
    def test_perfect_typing(self):
        rec = SessionRecord(target="a" * 20, typed="a" * 20, elapsed_ms=30_000)
        score = score_session(rec)
        assert score.edit_distance == 0
        assert score.effective_seconds == 30.0
        assert score.cpm == pytest.approx(40.0)

    def test_typo_penalty_second_per_edit(self):
        rec = SessionRecord(target="a" * 20, typed="b" * 10 + "a" * 10, elapsed_ms=30_000)
        score = score_session(rec)
        assert score.edit_distance == 10
        assert score.effective_seconds == 40.0
        assert score.cpm == pytest.approx(30.0)

    def test_zero_elapsed_rejected(self):
        with pytest.raises(InvalidRecord):
            score_session(SessionRecord(target="abc", typed="abc", elapsed_ms=0))

    def test_empty_target_rejected(self):
        with pytest.raises(InvalidRecord):
            score_session(SessionRecord(target="", typed="x", elapsed_ms=1000))

    def test_cpm_strictly_decreases_with_typos(self):
        base = SessionRecord(target="hello there", typed="hello there", elapsed_ms=9_000)
        worse = SessionRecord(target="hello there", typed="hellx there", elapsed_ms=9_000)
        assert score_session(worse).cpm < score_session(base).cpm


class TestSessionFiles:
    def test_round_trip(self, tmp_path):
        records = [
            SessionRecord("have a nice day :-)", "have a nice day :-)", 21_000,
                          "pm-1", "s01", "2026-08-11T10:00:00"),
            SessionRecord("omg take more than a month", "omg take more then a month", 25_500,
                          "pm-1", "s01", "2026-08-11T10:02:00"),
        ]
        path = tmp_path / "session.json"
        save_session_file(path, "pm-1", "s01", records)
        layout_id, subject_id, loaded = load_session_file(path)
        assert (layout_id, subject_id) == ("pm-1", "s01")
        assert loaded == records

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("[1, 2")
        with pytest.raises(SessionFileError):
            load_session_file(path)

    def test_missing_fields(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"layout_id": "x", "subject_id": "y", "sessions": [{"target": "a"}]}')
        with pytest.raises(SessionFileError):
            load_session_file(path)


class TestSharedFixtures:
    """The frozen session fixtures are the parity contract with the trainer UI."""

    def test_scores_match_frozen_fixture(self):
        import json

        from conftest import FIXTURES_DIR

        _, _, records = load_session_file(FIXTURES_DIR / "sessions.json")
        expected = json.loads((FIXTURES_DIR / "sessions_expected.json").read_text())
        assert len(records) >= 20
        for rec, exp in zip(records, expected["records"]):
            score = score_session(rec)
            assert score.edit_distance == exp["edit_distance"]
            assert score.cpm == pytest.approx(exp["cpm"], rel=1e-12)
        mean = sum(score_session(r).cpm for r in records) / len(records)
        assert mean == pytest.approx(expected["mean_cpm"], rel=1e-12)
