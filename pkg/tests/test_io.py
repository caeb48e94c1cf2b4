import json
from fractions import Fraction as Fr

import numpy as np
import pytest

from biquad.composites import TwoPhase
from biquad.forms import Biquadratic
from biquad.io import (ParseError, biquadratic_document, parse_biquadratic, parse_sextic, parse_two_phase,
                       sextic_document, two_phase_document, write_json)
from biquad.poly import Poly


def test_biquadratic_round_trip(family_form, tmp_path):
    path = tmp_path / "f.json"
    write_json(biquadratic_document(family_form), path)
    assert parse_biquadratic(path) == family_form


def test_records_are_summed_and_symmetrized():
    doc = {"n": 2, "m": 2, "coefficients": [
        {"i": 0, "j": 1, "k": 1, "l": 0, "value": "1/2"},
        {"i": 1, "j": 0, "k": 0, "l": 1, "value": "1/2"},
    ]}
    F = parse_biquadratic(doc)
    assert F.as_dict() == {((0, 1), (0, 1)): Fr(1)}


@pytest.mark.parametrize("doc", [
    {"m": 3, "coefficients": []},
    {"n": 3, "m": 3, "coefficients": [{"i": 0, "j": 0, "k": 0, "value": "1"}]},
    {"n": 3, "m": 3, "coefficients": [{"i": 0, "j": 0, "k": 5, "l": 0, "value": "1"}]},
    {"n": 3, "m": 3, "coefficients": [{"i": 0, "j": 0, "k": 0, "l": 0, "value": "one"}]},
    [1, 2],
])
def test_bad_biquadratic_files(doc):
    with pytest.raises(ParseError):
        parse_biquadratic(doc)


def test_invalid_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ParseError):
        parse_biquadratic(p)


def test_sextic_round_trip():
    x, y, z = (Poly.var(i, 3) for i in range(3))
    f = x**2 * z**4 + Fr(3, 7) * y**6
    assert parse_sextic(sextic_document(f)) == f
    assert parse_sextic(sextic_document(f)["coefficients"]) == f
    with pytest.raises(ParseError):
        parse_sextic([{"a": 1, "b": 1, "c": 1, "value": "1"}])


def test_two_phase_round_trip_and_minors():
    C1 = np.eye(4, dtype=int).astype(object) * Fr(1)
    tp = TwoPhase(C1, 2 * C1, Fr(1, 3), Fr(2, 3))
    doc = json.loads(json.dumps(two_phase_document(tp)))
    tp2, T = parse_two_phase(doc)
    assert np.all(tp2.C1 == tp.C1) and tp2.theta2 == Fr(2, 3) and T is None
    doc["translation"] = {"minors": ["1/5"]}
    _, T = parse_two_phase(doc)
    assert T[0, 3] == Fr(1, 10) and T[1, 2] == -Fr(1, 10)
    doc["translation"] = {"minors": ["1", "2"]}
    with pytest.raises(ParseError):
        parse_two_phase(doc)
    doc["translation"] = {"bogus": 1}
    with pytest.raises(ParseError):
        parse_two_phase(doc)
