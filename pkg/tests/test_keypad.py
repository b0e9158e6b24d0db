import math

import pytest

from helpers import build_layout
from tenkey.keypad import (
    FORBIDDEN_KEYS,
    Hand,
    KeySlot,
    Layout,
    LayoutFileError,
    LayoutValidationError,
    Provenance,
    abc_baseline,
    hand_of,
    key_distance,
    load_layout,
    save_layout,
    valid_slots,
    validate,
)


class TestGeometry:
    def test_exactly_forty_slots(self):
        assert len(valid_slots()) == 40

    def test_zero_key_usable(self):
        assert KeySlot(4, 2, 4) in valid_slots()

    def test_reserved_keys_excluded(self):
        slots = valid_slots()
        assert KeySlot(4, 1, 1) not in slots
        assert KeySlot(4, 3, 3) not in slots
        for slot in slots:
            assert (slot.row, slot.col) not in FORBIDDEN_KEYS
            assert 1 <= slot.row <= 4 and 1 <= slot.col <= 3 and 1 <= slot.stroke <= 4

    def test_hand_of(self):
        assert hand_of(KeySlot(2, 1, 3)) is Hand.LEFT
        assert hand_of(KeySlot(2, 3, 1)) is Hand.RIGHT
        assert hand_of(KeySlot(4, 2, 2)) is Hand.CENTER

    def test_hand_constant_per_column(self):
        for slot in valid_slots():
            assert hand_of(slot) is hand_of(KeySlot(1 if slot.col != 2 else 4, slot.col, 1))

    def test_key_distance_examples(self):
        assert key_distance(KeySlot(1, 1, 1), KeySlot(1, 1, 4)) == 0
        assert key_distance(KeySlot(1, 1, 1), KeySlot(2, 2, 3)) == pytest.approx(math.sqrt(2))
        assert key_distance(KeySlot(1, 1, 2), KeySlot(4, 3, 1)) == pytest.approx(math.sqrt(13))

    def test_key_distance_is_symmetric_and_zero_iff_same_key(self):
        slots = valid_slots()
        for a in slots[::5]:
            for b in slots[::3]:
                d = key_distance(a, b)
                assert d == key_distance(b, a)
                assert d >= 0
                assert (d == 0) == ((a.row, a.col) == (b.row, b.col))


class TestAbcBaseline:
    def test_single_stroke_g(self):
        assert abc_baseline().placements["g"] == KeySlot(2, 1, 1)

    def test_three_strokes_f(self):
        assert abc_baseline().placements["f"] == KeySlot(1, 3, 3)

    def test_fourth_letter_s(self):
        assert abc_baseline().placements["s"] == KeySlot(3, 1, 4)

    def test_valid_and_letters_only(self):
        layout = abc_baseline()
        assert validate(layout) == []
        assert layout.multigrams == []

    def test_key_one_one_left_empty(self):
        used_keys = {(s.row, s.col) for s in abc_baseline().placements.values()}
        assert (1, 1) not in used_keys


class TestValidate:
    def test_duplicate_slot(self):
        layout = abc_baseline()
        bad = dict(layout.placements)
        bad["q"] = bad["a"]
        assert any("duplicate" in p for p in validate(Layout(bad)))

    def test_forbidden_slot(self):
        bad = dict(abc_baseline().placements)
        bad["a"] = KeySlot(4, 3, 2)
        assert any("forbidden" in p for p in validate(Layout(bad)))

    def test_missing_letter(self):
        bad = dict(abc_baseline().placements)
        del bad["q"]
        assert any("missing letters: q" in p for p in validate(Layout(bad)))

    def test_multigram_count(self):
        bad = dict(abc_baseline().placements)
        bad["th"] = KeySlot(1, 1, 1)
        assert any("14 multigrams" in p for p in validate(Layout(bad)))

    def test_single_nonletter_symbol(self):
        bad = dict(abc_baseline().placements)
        bad[":"] = KeySlot(1, 1, 1)
        problems = validate(Layout(bad))
        assert any("not a letter" in p for p in problems)

    def test_full_layout_is_a_bijection(self):
        layout = build_layout({"th": (1, 1, 1)})
        assert validate(layout) == []
        assert sorted(layout.placements.values()) == sorted(valid_slots())


class TestLayoutFiles:
    def test_round_trip_abc(self, tmp_path):
        path = tmp_path / "abc.json"
        save_layout(abc_baseline(), path)
        assert load_layout(path) == abc_baseline()

    def test_round_trip_with_multigrams_and_provenance(self, tmp_path):
        layout = build_layout({"th": (1, 1, 1), "ou": (1, 1, 2)})
        layout = Layout(
            layout.placements,
            provenance=Provenance("deadbeef", 7, "two-thumb", (1.0, 1.5, 0.25), 1.23),
        )
        path = tmp_path / "pm.json"
        save_layout(layout, path)
        loaded = load_layout(path)
        assert loaded == layout
        assert loaded.provenance.seed == 7

    def test_missing_symbol_fails_validation(self, tmp_path):
        path = tmp_path / "abc.json"
        save_layout(abc_baseline(), path)
        doc = path.read_text().replace('"text": "q",', '"text": "qq",')
        path.write_text(doc)
        with pytest.raises(LayoutValidationError):
            load_layout(path)

    def test_deprecated_flag_preserved(self, tmp_path):
        # "ou" parked on stroke 4 costs more than o+u directly: deprecated
        layout = build_layout({"ou": (1, 1, 4), "o": (1, 1, 1), "u": (1, 1, 2)})
        path = tmp_path / "pm.json"
        save_layout(layout, path)
        loaded = load_layout(path)
        assert loaded.deprecated["ou"] is True
        path2 = tmp_path / "again.json"
        save_layout(loaded, path2)
        assert load_layout(path2).deprecated["ou"] is True

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(LayoutFileError):
            load_layout(path)

    def test_save_rejects_invalid(self, tmp_path):
        bad = dict(abc_baseline().placements)
        del bad["q"]
        with pytest.raises(LayoutValidationError):
            save_layout(Layout(bad), tmp_path / "nope.json")
