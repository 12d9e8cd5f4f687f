import json

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import density_matrices
from qree.errors import ValidationError
from qree.procedure import ree_from_eof
from qree.statefile import dumps, grid, load_state, parse_state, parse_trace, trace_to_dict


def density_doc(m):
    return {"kind": "density", "matrix": grid(m)}


@given(density_matrices())
@settings(max_examples=40, deadline=None)
def test_density_round_trip_is_exact(m):
    text = dumps(density_doc(m))
    parsed = parse_state(json.loads(text))
    assert np.array_equal(parsed.rho.matrix, np.asarray(m, dtype=complex))


def test_family_and_pure_inputs():
    s = parse_state({"kind": "family", "name": "gvp", "params": {"lambda1": 0.5, "lambda2": 0.3, "lambda3": 0.2}})
    assert s.family == "gvp" and s.spec.lambda1 == 0.5
    p = parse_state({"kind": "pure", "amplitudes": [[1, 0], [0, 0], [0, 0], [0, 0]]})
    assert p.pure is not None and p.rho.rank() == 1


@pytest.mark.parametrize(
    "doc, message",
    [
        ({"kind": "mixed"}, "unknown kind"),
        ({"kind": "pure", "amplitudes": [[1, 0]] * 4, "note": 1}, "unknown keys"),
        ({"kind": "density"}, "missing keys"),
        ({"kind": "pure", "amplitudes": [[1, 0], [0, 0], [0, 0]]}, "4"),
        ({"kind": "pure", "amplitudes": [[True, 0], [0, 0], [0, 0], [0, 0]]}, "number"),
        ({"kind": "pure", "amplitudes": [[1], [0], [0], [0]]}, "pairs"),
        ({"kind": "family", "name": "werner", "params": {}}, "unknown family"),
        ({"kind": "family", "name": "gvp", "params": {"lambda1": 1.0}}, "exactly"),
        (density_doc(np.eye(4) * 0.225), "trace"),
        ([1, 2], "object"),
    ],
)
def test_rejections(doc, message):
    with pytest.raises(ValidationError, match=message):
        parse_state(doc)


def test_load_errors(tmp_path):
    with pytest.raises(ValidationError, match="cannot read"):
        load_state(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    with pytest.raises(ValidationError, match="invalid JSON"):
        load_state(bad)


def test_trace_round_trip():
    doc = {"kind": "family", "name": "gen_horodecki", "params": {"lambda1": 0.6, "lambda2": 0.3, "lambda3": 0.1}}
    trace = ree_from_eof(parse_state(doc).rho)
    data = json.loads(dumps(trace_to_dict(trace, doc)))
    parsed = parse_trace(data)
    assert np.array_equal(parsed.sigma_star.matrix, trace.sigma_star.matrix)
    assert parsed.q0 == trace.q0 and parsed.ree == trace.ree_value
    assert len(parsed.ensemble) == len(trace.ensemble)
    assert data["x"] == pytest.approx(1 - 0.011324865408823825)


def test_separable_trace_serializes():
    data = trace_to_dict(ree_from_eof(np.eye(4) / 4))
    assert data["separable"] and data["ensemble"] is None and data["ree"] == 0.0
    assert parse_trace(json.loads(dumps(data))).sigma_tilde is None
