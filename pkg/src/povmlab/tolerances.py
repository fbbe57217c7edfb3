"""Central tolerance bundle.

Every numerical threshold used by the package lives here so it can be tuned
in one place. The environment variable ``POVMLAB_TOL`` overrides the defaults,
either with a bare float (applied to ``structural``) or a JSON object mapping
field names to values, e.g. ``POVMLAB_TOL='{"fit_residual": 1e-7}'``.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace

ENV_VAR = "POVMLAB_TOL"


@dataclass(frozen=True)
class Tolerances:
    structural: float = 1e-10  # PSD floor, identity sum, Gram test, Bloch relation
    hermitian: float = 1e-12
    normalization: float = 1e-12
    negative_prob: float = 1e-12  # probabilities below -this are an error
    eta_floor: float = 1e-300  # eta(x) = 0 for x <= this
    node_match: float = 1e-8  # Hermite node reproduction
    from_above: float = 1e-10  # allowed undershoot p - f
    fit_residual: float = 1e-8  # invariant decomposition residual
    cluster: float = 1e-9  # dot-product / orbit clustering
    grid: int = 1000
    fit_points: int = 200

    def as_dict(self) -> dict:
        return asdict(self)


def _from_env() -> Tolerances:
    raw = os.environ.get(ENV_VAR, "").strip()
    if not raw:
        return Tolerances()
    try:
        value = float(raw)
    except ValueError:
        overrides = json.loads(raw)
        if not isinstance(overrides, dict):
            raise ValueError(f"{ENV_VAR} must be a float or a JSON object")
        known = {f.name: f.type for f in fields(Tolerances)}
        unknown = set(overrides) - set(known)
        if unknown:
            raise ValueError(f"unknown tolerance fields in {ENV_VAR}: {sorted(unknown)}")
        cast = {k: (int(v) if k in ("grid", "fit_points") else float(v)) for k, v in overrides.items()}
        return replace(Tolerances(), **cast)
    return replace(Tolerances(), structural=value)


TOL = _from_env()


def reload() -> Tolerances:
    """Re-read ``POVMLAB_TOL`` and replace the module-level bundle."""
    global TOL
    TOL = _from_env()
    return TOL
