"""JSON wire formats. Complex numbers are ``[re, im]`` pairs, matrices row-major."""

from __future__ import annotations

import json

import numpy as np

from .bloch import BlochVector
from .catalog import FiducialRecord
from .quantum import Povm, PureState, StructuralError


def _enc(z) -> list:
    a = np.asarray(z, dtype=complex)
    return np.stack([a.real, a.imag], axis=-1).tolist()


def _dec(data) -> np.ndarray:
    a = np.asarray(data, dtype=float)
    if a.shape[-1] != 2:
        raise StructuralError("complex entries must be [re, im] pairs")
    return a[..., 0] + 1j * a[..., 1]


def povm_to_dict(povm: Povm) -> dict:
    return {"dim": povm.dim, "label": povm.label, "effects": _enc(povm.effects)}


def povm_from_dict(data: dict) -> Povm:
    missing = {"dim", "effects"} - set(data)
    if missing:
        raise StructuralError(f"POVM JSON lacks {sorted(missing)}")
    effects = _dec(data["effects"])
    d = int(data["dim"])
    if effects.ndim != 3 or effects.shape[1:] != (d, d):
        raise StructuralError(f"effects do not match declared dim {d}")
    return Povm(effects, label=data.get("label", ""), metadata={"source": "json"})


def povm_to_json(povm: Povm) -> str:
    return json.dumps(povm_to_dict(povm))


def povm_from_json(text: str) -> Povm:
    return povm_from_dict(json.loads(text))


def state_to_json(state: PureState) -> str:
    return json.dumps({"dim": state.dim, "amplitudes": _enc(state.amplitudes)})


def state_from_json(text: str) -> PureState:
    data = json.loads(text)
    amps = _dec(data["amplitudes"])
    if amps.shape != (int(data["dim"]),):
        raise StructuralError("amplitudes do not match declared dim")
    return PureState(amps)


def fiducial_to_json(fid: FiducialRecord) -> str:
    out = {"dim": fid.dim, "vector": _enc(fid.vector), "label": fid.label}
    if fid.group != "cyclic":
        out["group"] = fid.group
    return json.dumps(out)


def fiducial_from_json(text: str, source: str = "json") -> FiducialRecord:
    data = json.loads(text)
    vec = _dec(data["vector"])
    if vec.shape != (int(data["dim"]),):
        raise StructuralError("fiducial vector does not match declared dim")
    return FiducialRecord(
        dim=int(data["dim"]),
        vector=vec,
        source=source,
        label=data.get("label", ""),
        group=data.get("group", "cyclic"),
    )


def bloch_to_json(u: BlochVector) -> str:
    return json.dumps({"dim": u.dim, "coords": u.coords.tolist()})


def bloch_from_json(text: str) -> BlochVector:
    data = json.loads(text)
    return BlochVector(int(data["dim"]), data["coords"])
