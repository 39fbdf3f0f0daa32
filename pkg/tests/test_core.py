import json

from shellscatter.core.concurrency import ordered_map
from shellscatter.core.config import Settings
from shellscatter.core.formatting import format_float, to_csv, to_json


def test_format_float():
    """17 significant digits, no locale, explicit non-finite spellings."""
    assert format_float(0.1) == "0.10000000000000001"
    assert format_float(1.0) == "1"
    assert format_float(float("nan")) == "nan"
    assert format_float(float("-inf")) == "-inf"
    assert float(format_float(2.0 / 3.0)) == 2.0 / 3.0


def test_to_csv():
    text = to_csv(["k", "delta", "label"], [[0.5, -0.25, "a"], [1.0, 3, "b"]])
    assert text == "k,delta,label\n0.5,-0.25,a\n1,3,b\n"


def test_to_json_keeps_key_order():
    text = to_json({"b": 1, "a": [1.5, None]})
    assert text.endswith("\n")
    assert list(json.loads(text)) == ["b", "a"]


def test_to_json_float_format():
    """JSON floats get the same 17-digit spelling as CSV cells."""
    text = to_json({"x": 0.1, "n": [2.0, 3, None, True], "e": {}, "s": "k"})
    assert text == (
        '{\n'
        '  "x": 0.10000000000000001,\n'
        '  "n": [\n'
        '    2,\n'
        '    3,\n'
        '    null,\n'
        '    true\n'
        '  ],\n'
        '  "e": {},\n'
        '  "s": "k"\n'
        '}\n'
    )
    assert json.loads(text)["x"] == 0.1
    assert to_json([float("nan")]) == "[\n  NaN\n]\n"


def test_ordered_map_preserves_order():
    """Results follow the input order, whatever thread finishes first."""
    def work(x):
        return x * x

    items = list(range(50))
    assert ordered_map(work, items, threads=4) == [x * x for x in items]
    assert ordered_map(work, items, threads=1) == [x * x for x in items]
    assert ordered_map(work, [], threads=4) == []


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv("SHELLSCATTER_THREADS", "6")
    monkeypatch.setenv("SHELLSCATTER_NUMEROV_STEPS", "20000")
    configured = Settings()
    assert configured.threads == 6
    assert configured.numerov_steps == 20_000


def test_settings_defaults(monkeypatch):
    monkeypatch.delenv("SHELLSCATTER_THREADS", raising=False)
    configured = Settings(_env_file=None)
    assert configured.threads == 1
    assert configured.oracle_tolerance == 1e-8
    assert configured.cross_section_ell_margin == 8
