import numpy as np

from ssmana.serialization import (
    format_float,
    from_csv,
    from_json,
    from_pickle,
    plain,
    to_csv,
    to_json,
    to_pickle,
)


def test_plain():
    doc = plain(
        {
            1: (np.float64(0.5), np.int64(3)),
            "flag": np.bool_(True),
            "array": np.arange(3),
        }
    )
    assert doc == {"1": [0.5, 3], "flag": True, "array": [0, 1, 2]}
    assert type(doc["1"][1]) is int


def test_format_float():
    assert format_float(0.1) == "0.10000000000000001"
    assert float(format_float(1 / 3)) == 1 / 3
    assert format_float(np.float32(0.5)) == "0.5"


def test_csv(tmp_path):
    name = tmp_path / "nested" / "rows.csv"
    to_csv([(1, 0.1, "a"), (2, np.float64(2.5), "b")], ("n", "x", "tag"), name)
    assert name.read_text() == "n,x,tag\n1,0.10000000000000001,a\n2,2.5,b\n"
    header, rows = from_csv(name)
    assert header == ["n", "x", "tag"]
    assert rows[1] == ["2", "2.5", "b"]


def test_json_is_sorted(tmp_path):
    name = tmp_path / "doc.json"
    to_json({"b": np.float64(1.5), "a": [np.int32(1)]}, name)
    text = name.read_text()
    assert text.index('"a"') < text.index('"b"')
    assert text.endswith("\n")
    assert from_json(name) == {"a": [1], "b": 1.5}


def test_pickle(tmp_path):
    name = tmp_path / "data.pkl.lz4"
    to_pickle({"grid": np.linspace(0, 1, 5)}, name)
    np.testing.assert_array_equal(from_pickle(name)["grid"], np.linspace(0, 1, 5))
