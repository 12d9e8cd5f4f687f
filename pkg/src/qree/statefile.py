"""JSON interchange for states and procedure traces.

Complex numbers are ``[re, im]`` pairs; matrices are row-major 4x4 grids
of pairs in the basis |00>, |01>, |10>, |11>.  Floats are written with
Python's shortest round-trip repr, so re-parsing is exact.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .families import FAMILY_PARAMS, FAMILY_SPECS
from .measures import PureState
from .procedure import ProcedureTrace
from .qcore import DensityMatrix

KIND_KEYS = {
    "pure": {"kind", "amplitudes"},
    "density": {"kind", "matrix"},
    "family": {"kind", "name", "params"},
}


@dataclass(frozen=True, eq=False)
class StateInput:
    kind: str
    rho: DensityMatrix
    pure: PureState | None = None
    family: str | None = None
    spec: object | None = None
    raw: dict | None = None


def _number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ValidationError(f"{where}: expected a number, got {x!r}")
    if not math.isfinite(x):
        raise ValidationError(f"{where}: non-finite value")
    return float(x)


def _complex(pair, where: str) -> complex:
    if not isinstance(pair, list) or len(pair) != 2:
        raise ValidationError(f"{where}: complex numbers are [re, im] pairs")
    return complex(_number(pair[0], where), _number(pair[1], where))


def parse_grid(grid, where: str = "matrix") -> np.ndarray:
    if not isinstance(grid, list) or len(grid) != 4:
        raise ValidationError(f"{where}: expected 4 rows")
    out = np.zeros((4, 4), dtype=complex)
    for i, row in enumerate(grid):
        if not isinstance(row, list) or len(row) != 4:
            raise ValidationError(f"{where}: row {i} must have 4 entries")
        for j, pair in enumerate(row):
            out[i, j] = _complex(pair, f"{where}[{i}][{j}]")
    return out


def grid(m) -> list:
    arr = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in arr]


def amplitudes(v) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=complex)]


def parse_state(data) -> StateInput:
    if not isinstance(data, dict):
        raise ValidationError("state file must hold a JSON object")
    kind = data.get("kind")
    if kind not in KIND_KEYS:
        raise ValidationError(f"unknown kind {kind!r}; expected one of {sorted(KIND_KEYS)}")
    extra = set(data) - KIND_KEYS[kind]
    missing = KIND_KEYS[kind] - set(data)
    if extra:
        raise ValidationError(f"unknown keys for kind {kind!r}: {sorted(extra)}")
    if missing:
        raise ValidationError(f"missing keys for kind {kind!r}: {sorted(missing)}")

    if kind == "pure":
        amps = data["amplitudes"]
        if not isinstance(amps, list) or len(amps) != 4:
            raise ValidationError("amplitudes: expected 4 [re, im] pairs")
        psi = PureState([_complex(a, f"amplitudes[{i}]") for i, a in enumerate(amps)])
        return StateInput("pure", psi.density(), pure=psi, raw=data)
    if kind == "density":
        return StateInput("density", DensityMatrix(parse_grid(data["matrix"])), raw=data)

    name = data["name"]
    if name not in FAMILY_PARAMS:
        raise ValidationError(f"unknown family {name!r}; expected one of {sorted(FAMILY_PARAMS)}")
    params = data["params"]
    if not isinstance(params, dict):
        raise ValidationError("params must be an object")
    expected = set(FAMILY_PARAMS[name])
    if set(params) != expected:
        raise ValidationError(
            f"params for {name} must be exactly {sorted(expected)}, got {sorted(params)}"
        )
    values = [_number(params[k], f"params.{k}") for k in FAMILY_PARAMS[name]]
    spec = FAMILY_SPECS[name](*values)
    m = spec.rho()
    return StateInput("family", DensityMatrix((m + m.conj().T) / 2), family=name, spec=spec, raw=data)


def load_state(path) -> StateInput:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc.msg})") from exc
    return parse_state(data)


def trace_to_dict(trace: ProcedureTrace, source: dict | None = None) -> dict:
    ens = None
    if trace.ensemble is not None:
        ens = [{"weight": p, "amplitudes": amplitudes(psi.amplitudes)} for p, psi in trace.ensemble]
    return {
        "kind": "trace",
        "input": source,
        "source": grid(trace.source.matrix),
        "separable": trace.separable,
        "ensemble": ens,
        "member_css": [grid(s.matrix) for s in trace.member_css],
        "sigma_tilde": None if trace.sigma_tilde is None else grid(trace.sigma_tilde.matrix),
        "boundary_at_step3": trace.boundary_at_step3,
        "min_pt_eigenvalue": trace.min_pt_eigenvalue,
        "q0": trace.q0,
        "x": trace.x,
        "sigma_star": grid(trace.sigma_star.matrix),
        "ree": trace.ree_value,
        "note": trace.note,
    }


def dumps(data: dict) -> str:
    return json.dumps(data, indent=1) + "\n"


@dataclass(frozen=True, eq=False)
class ParsedTrace:
    source: DensityMatrix
    sigma_tilde: DensityMatrix | None
    sigma_star: DensityMatrix
    member_css: tuple[DensityMatrix, ...]
    ensemble: list[tuple[float, PureState]] | None
    q0: float | None
    boundary_at_step3: bool | None
    ree: float
    raw: dict


def parse_trace(data: dict) -> ParsedTrace:
    if not isinstance(data, dict) or data.get("kind") != "trace":
        raise ValidationError("not a trace document")
    tilde = data["sigma_tilde"]
    ens = data["ensemble"]
    return ParsedTrace(
        source=DensityMatrix(parse_grid(data["source"], "source")),
        sigma_tilde=None if tilde is None else DensityMatrix(parse_grid(tilde, "sigma_tilde")),
        sigma_star=DensityMatrix(parse_grid(data["sigma_star"], "sigma_star")),
        member_css=tuple(DensityMatrix(parse_grid(g, "member_css")) for g in data["member_css"]),
        ensemble=None
        if ens is None
        else [(m["weight"], PureState([_complex(a, "amplitudes") for a in m["amplitudes"]])) for m in ens],
        q0=data["q0"],
        boundary_at_step3=data["boundary_at_step3"],
        ree=data["ree"],
        raw=data,
    )
