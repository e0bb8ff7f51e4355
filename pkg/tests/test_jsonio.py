import json
import math

import pytest

from questlens.jsonio import canonical_dumps, content_digest, format_float


class TestFormatFloat:
    def test_six_significant_digits(self):
        assert format_float(0.4384613469159768) == "0.438461"
        assert format_float(1 / 3) == "0.333333"

    def test_short_values_unchanged(self):
        assert format_float(0.25) == "0.25"
        assert format_float(0.0) == "0"

    def test_no_negative_zero(self):
        assert format_float(-0.0) == "0"

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            format_float(math.nan)
        with pytest.raises(ValueError):
            format_float(math.inf)


class TestCanonicalDumps:
    def test_floats_rounded_in_output(self):
        text = canonical_dumps({"x": 0.4384613469159768})
        assert text == '{"x":0.438461}'

    def test_byte_stable(self):
        doc = {"b": [1 / 3, 0.5], "a": {"nested": 2 / 7}}
        assert canonical_dumps(doc) == canonical_dumps(doc)

    def test_insertion_order_preserved(self):
        assert canonical_dumps({"z": 1, "a": 2}) == '{"z":1,"a":2}'

    def test_sort_keys_option(self):
        assert canonical_dumps({"z": 1, "a": 2}, sort_keys=True) == '{"a":2,"z":1}'

    def test_ints_and_bools_untouched(self):
        assert canonical_dumps({"n": 3, "f": True, "s": "x", "none": None}) == (
            '{"n":3,"f":true,"s":"x","none":null}'
        )

    def test_tuples_serialize_as_arrays(self):
        assert canonical_dumps({"t": (1, 2)}) == '{"t":[1,2]}'

    def test_roundtrip_parses(self):
        doc = {"values": [0.1, 2 / 3, 1e-9]}
        parsed = json.loads(canonical_dumps(doc))
        assert parsed["values"][1] == pytest.approx(2 / 3, abs=1e-6)

    def test_unserializable_rejected(self):
        with pytest.raises(TypeError):
            canonical_dumps({"x": object()})


class TestContentDigest:
    def test_key_order_independent(self):
        assert content_digest({"a": 1, "b": 2.0}) == content_digest({"b": 2.0, "a": 1})

    def test_value_sensitive(self):
        assert content_digest({"a": 1}) != content_digest({"a": 2})
