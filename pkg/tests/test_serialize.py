"""Wire formats: canonical JSON, rational strings, complex pairs, CSV."""

import json
from fractions import Fraction

import pytest

from pathsig.algebra import ScalarKind, TruncatedTensor, tensor_exp
from pathsig.paths import PiecewiseLinearPath
from pathsig.serialize import (canonical_dumps, path_from_csv, path_from_dict,
                               path_to_csv, path_to_dict, tensor_from_dict,
                               tensor_to_dict)

RAT = ScalarKind.RATIONAL


def _sig_tensor(kind=RAT):
    g = tensor_exp(TruncatedTensor.from_level(2, 3, 1,
                                              [Fraction(1, 2), Fraction(-3)], RAT))
    return g if kind is RAT else g.astype(kind)


@pytest.mark.parametrize("kind", [RAT, ScalarKind.F64])
def test_tensor_round_trip_is_byte_identical(kind):
    g = _sig_tensor(kind)
    blob = canonical_dumps(tensor_to_dict(g))
    again = tensor_from_dict(json.loads(blob))
    assert again == g
    assert canonical_dumps(tensor_to_dict(again)) == blob


def test_complex_tensor_round_trip():
    g = _sig_tensor(ScalarKind.F64).astype(ScalarKind.C64)
    blob = canonical_dumps(tensor_to_dict(g))
    data = json.loads(blob)
    assert data["scalar"] == "c64"
    assert data["levels"][1]["coefficients"][0] == [0.5, 0.0]
    assert tensor_from_dict(data) == g


def test_rational_coefficients_are_exact_strings():
    data = tensor_to_dict(_sig_tensor())
    assert data["levels"][0]["coefficients"] == ["1"]
    assert data["levels"][1]["coefficients"] == ["1/2", "-3"]
    assert data["levels"][2]["coefficients"][0] == "1/8"


def test_tensor_json_validation_errors():
    good = tensor_to_dict(_sig_tensor())
    with pytest.raises(ValueError, match="missing field"):
        tensor_from_dict({k: v for k, v in good.items() if k != "depth"})
    bad = json.loads(canonical_dumps(good))
    bad["levels"][1]["coefficients"] = ["1/2"]
    with pytest.raises(ValueError, match="level 1"):
        tensor_from_dict(bad)
    bad = json.loads(canonical_dumps(good))
    bad["levels"][1]["coefficients"] = [0.5, "2"]
    with pytest.raises(ValueError, match="bad coefficient"):
        tensor_from_dict(bad)
    bad = json.loads(canonical_dumps(good))
    bad["levels"][0]["degree"] = 1
    with pytest.raises(ValueError, match="duplicate|missing level"):
        tensor_from_dict(bad)
    with pytest.raises(ValueError, match="scalar"):
        tensor_from_dict({**good, "scalar": "float128"})


def test_path_json_round_trip_rational():
    p = PiecewiseLinearPath([[0, 0], [Fraction(1, 2), 1], [1, 0]])
    data = path_to_dict(p)
    assert data["points"][1] == ["1/2", "1"]
    assert path_from_dict(data) == p


def test_path_json_round_trip_float():
    p = PiecewiseLinearPath([[0.0, 0.25], [1.5, -2.0]])
    data = path_to_dict(p)
    assert path_from_dict(data) == p


def test_path_json_mixed_coordinates_rejected():
    with pytest.raises(ValueError, match="ambiguous"):
        path_from_dict({"dimension": 2, "points": [[0.5, "1/2"]]})


def test_path_json_validation_errors():
    with pytest.raises(ValueError, match="missing field"):
        path_from_dict({"points": [[0, 0]]})
    with pytest.raises(ValueError, match="point 1"):
        path_from_dict({"dimension": 2, "points": [[0, 0], [1]]})
    with pytest.raises(ValueError, match="bad rational"):
        path_from_dict({"dimension": 1, "points": [["one half"]]})


def test_csv_round_trip_and_kinds():
    p = PiecewiseLinearPath([[0, 0], [Fraction(1, 2), 1]])
    assert path_from_csv(path_to_csv(p)) == p
    parsed = path_from_csv("0, 0\n1/2, 0.25\n# comment\n\n1, 1\n")
    assert parsed.kind is RAT  # decimal literals read as exact rationals
    assert parsed.vertices[1] == (Fraction(1, 2), Fraction(1, 4))


def test_csv_error_reports_line_and_column():
    with pytest.raises(ValueError, match="line 2, column 2"):
        path_from_csv("0,0\n1,x2\n")
    with pytest.raises(ValueError, match="no vertices"):
        path_from_csv("# empty\n")


def test_csv_float_fallback():
    parsed = path_from_csv("0,0\n1,nan\n".replace("nan", "inf"))
    assert parsed.kind is ScalarKind.F64


def test_canonical_dumps_is_deterministic():
    obj = {"b": 1, "a": [1.5, "x"]}
    assert canonical_dumps(obj) == canonical_dumps({"b": 1, "a": [1.5, "x"]})
    assert canonical_dumps(obj).endswith("\n")
