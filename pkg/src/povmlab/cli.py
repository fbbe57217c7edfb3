"""``povmlab`` command line.

Exit codes: 0 success / verdict passed, 1 numeric verdict failed, 2 bad input.
With ``--json`` every command prints a single run record.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__, catalog, tolerances
from .catalog import NotASicFiducial
from .certify import CertificateError, build_certificate
from .entropy import alpha_entropy, jones_average, relative_entropy, shannon_entropy
from .io import povm_from_json, povm_to_json, state_from_json
from .optimize import (
    OptConfig,
    landscape_csv,
    landscape_scan,
    maximize_entropy,
    verify_maximizer_set,
)
from .quantum import (
    StructuralError,
    haar_random_states,
    outcome_probabilities,
    validate_povm,
)
from .tables import hs_rows, render_hs_table, render_sic_table, sic_rows


class InputError(Exception):
    pass


class VerdictFailed(Exception):
    def __init__(self, message, outputs=None):
        super().__init__(message)
        self.outputs = outputs or {}


def _load_povm(args):
    if getattr(args, "povm_file", None):
        return povm_from_json(Path(args.povm_file).read_text())
    if getattr(args, "fiducial", None):
        return catalog.sic_from_fiducial(catalog.load_fiducial(args.fiducial))
    if getattr(args, "povm", None):
        return catalog.by_name(args.povm, hoggar_path=getattr(args, "hoggar_file", None))
    raise InputError("specify --povm NAME, --povm-file FILE or --fiducial FILE")


def _json_default(o):
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, complex):
        return [o.real, o.imag]
    raise TypeError(type(o))


# ---------------------------------------------------------------------------
# commands: each returns (text, outputs)


def cmd_build(args):
    povm = _load_povm(args)
    report = validate_povm(povm)
    if not report.accepted:
        raise InputError(f"constructed POVM failed validation: {report.max_residuals}")
    text = povm_to_json(povm)
    if args.out:
        Path(args.out).write_text(text)
        msg = f"wrote {povm.label} (d={povm.dim}, k={povm.outcomes}) to {args.out}"
    else:
        msg = text
    return msg, {"label": povm.label, "dim": povm.dim, "outcomes": povm.outcomes, "out": args.out}


def cmd_validate(args):
    povm = _load_povm(args)
    r = validate_povm(povm)
    out = {"psd_ok": r.psd_ok, "identity_ok": r.identity_ok, "rank1_normalized": r.rank1_normalized,
           "max_residuals": r.max_residuals}
    text = "\n".join(f"{k}: {v}" for k, v in out.items())
    if not r.accepted:
        raise VerdictFailed("POVM rejected", out)
    return text, out


def cmd_entropy(args):
    povm = _load_povm(args)
    if not args.state_file:
        raise InputError("--state-file is required")
    state = state_from_json(Path(args.state_file).read_text())
    p = outcome_probabilities(state, povm)
    out = {"probabilities": p.tolist(), "entropy": shannon_entropy(p), "relative_entropy": relative_entropy(state, povm)}
    if args.alpha is not None:
        out["alpha"] = args.alpha
        out["kind"] = args.kind
        out["alpha_entropy"] = alpha_entropy(p, args.alpha, args.kind)
    text = "\n".join(f"{k}: {v}" for k, v in out.items())
    return text, out


def cmd_optimize(args):
    povm = _load_povm(args)
    cfg = OptConfig(
        direction=args.direction,
        starts=args.starts,
        seed=args.seed,
        kind=args.kind if args.alpha is not None else "shannon",
        alpha=args.alpha,
    )
    res = maximize_entropy(povm, cfg)
    out = res.to_dict()
    if cfg.kind == "shannon":
        out["relative_entropy_at_best"] = res.best_relative_entropy
        out["entropy_at_best"] = res.best_entropy
    lines = [
        f"povm: {povm.label} (d={povm.dim}, k={povm.outcomes})",
        f"direction: {cfg.direction}",
        f"best value: {res.best_value:.10f}",
        f"global clusters: {len(res.global_clusters)} (of {len(res.clusters)})",
    ]
    if povm.dim == 2:
        shown = res.global_clusters[:24]
        for c in shown:
            lines.append("  bloch " + " ".join(f"{x:+.8f}" for x in c.bloch))
        if len(res.global_clusters) > len(shown):
            lines.append(f"  ... {len(res.global_clusters) - len(shown)} more")
    if args.expect:
        expected = catalog.polyhedron(args.expect).vertices
        v = verify_maximizer_set(res, expected)
        out["verification"] = v
        lines.append(f"matches {args.expect}: {v['passed']}")
        if not v["passed"]:
            raise VerdictFailed(f"optimizer clusters do not match {args.expect}", out)
    return "\n".join(lines), out


def cmd_certify(args):
    povm = _load_povm(args)
    try:
        rep = build_certificate(povm, args.candidate, alpha=args.alpha)
    except CertificateError as exc:
        raise VerdictFailed(str(exc), exc.report.to_dict() if exc.report else {}) from exc
    out = rep.to_dict()
    dec = rep.decomposition
    lines = [
        f"povm: {rep.povm_label}, candidate: {args.candidate}",
        f"nodes: {rep.nodes['values']} x {rep.nodes['multiplicities']}",
        f"from above: {rep.from_above_ok}",
        f"decomposition: {dec['kind']}" + (f" ({dec['invariant']}, A={dec['A']:.10f}, B={dec['B']:.10f})" if dec["invariant"] else ""),
        f"sign: {rep.sign_verdict}",
        f"certified max entropy: {rep.certified_value:.10f}",
    ]
    if args.alpha is None:
        lines.append(f"certified min relative entropy: {rep.certified_relative_entropy:.10f}")
    return "\n".join(lines), out


def cmd_table_hs(args):
    rows = hs_rows(starts=args.starts, seed=args.seed)
    return render_hs_table(rows).rstrip("\n"), {"rows": rows}


def _parse_dims(s: str) -> list[int]:
    try:
        dims = [int(x) for x in s.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"bad --dims {s!r}") from exc
    if not dims or min(dims) < 2:
        raise InputError("--dims needs integers >= 2")
    return dims


def cmd_table_sic(args):
    rows = sic_rows(_parse_dims(args.dims), generic_t=args.generic_t, hoggar_path=args.hoggar_file,
                    starts=args.starts, seed=args.seed)
    return render_sic_table(rows).rstrip("\n"), {"rows": rows}


def haar_average(povm, samples: int, seed: int) -> dict:
    """Monte Carlo mean of the relative entropy over Haar-random pure states."""
    if samples < 2:
        raise InputError("--samples must be at least 2")
    rng = np.random.default_rng(seed)
    k = povm.outcomes
    vals = np.empty(samples)
    chunk = 20000
    for lo in range(0, samples, chunk):
        psi = haar_random_states(povm.dim, min(chunk, samples - lo), rng)
        p = np.clip(np.einsum("ni,kij,nj->nk", psi.conj(), povm.effects, psi).real, 0, None)
        with np.errstate(divide="ignore", invalid="ignore"):
            H = -np.where(p > 0, p * np.log(np.where(p > 0, p, 1)), 0).sum(axis=1)
        vals[lo : lo + len(psi)] = np.log(k) - H
    est = float(vals.mean())
    err = float(vals.std(ddof=1) / np.sqrt(samples))
    ref = jones_average(povm.dim)
    return {"estimate": est, "stderr": err, "jones": ref, "z": (est - ref) / err, "samples": samples, "seed": seed}


def cmd_average(args):
    povm = _load_povm(args)
    out = haar_average(povm, args.samples, args.seed)
    text = f"estimate {out['estimate']:.6f} +- {out['stderr']:.6f}  (Jones {out['jones']:.6f}, z = {out['z']:+.2f})"
    if abs(out["z"]) > 3:
        raise VerdictFailed("Monte Carlo estimate more than 3 standard errors from the Jones average", out)
    return text, out


def cmd_landscape(args):
    povm = _load_povm(args)
    rows = landscape_scan(povm, args.resolution)
    csv_text = landscape_csv(rows)
    out = {"points": len(rows), "max_H": float(rows[:, 2].max()), "min_Hrel": float(rows[:, 3].min()),
           "max_Hrel": float(rows[:, 3].max()), "out": args.out}
    if args.out:
        Path(args.out).write_text(csv_text)
        return f"wrote {len(rows)} grid points to {args.out}", out
    return csv_text.rstrip("\n"), out


# ---------------------------------------------------------------------------


def _add_povm_source(p, fiducial=True):
    p.add_argument("--povm", help="catalog name (polyhedron, digon, ngon:N, pvm:D, tetrahedral, hesse, generic3:T, hoggar)")
    p.add_argument("--povm-file", help="POVM JSON file")
    if fiducial:
        p.add_argument("--fiducial", help="fiducial JSON file; builds the SIC from its displacement orbit")
    p.add_argument("--hoggar-file", help="Hoggar fiducial file (defaults to the bundled one)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="povmlab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON run record")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="construct and validate a POVM, write JSON")
    _add_povm_source(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("validate", parents=[common], help="check positivity and completeness")
    _add_povm_source(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("entropy", parents=[common], help="entropy of a POVM at a state")
    _add_povm_source(p)
    p.add_argument("--state-file")
    p.add_argument("--alpha", type=float)
    p.add_argument("--kind", choices=("tsallis", "renyi"), default="tsallis")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("optimize", parents=[common], help="multi-start entropy optimization")
    _add_povm_source(p)
    p.add_argument("--direction", choices=("max-entropy", "max-relative-entropy"), default="max-entropy")
    p.add_argument("--starts", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float)
    p.add_argument("--kind", choices=("tsallis", "renyi"), default="tsallis")
    p.add_argument("--expect", help="polyhedron the global optima must reproduce (qubits)")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("certify", parents=[common], help="Hermite-interpolation optimality certificate")
    _add_povm_source(p)
    p.add_argument("--candidate", default="self", help="self | twin | polyhedron name")
    p.add_argument("--alpha", type=float, help="certify the Tsallis alpha-entropy instead")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("table-hs", parents=[common], help="extremal relative entropies of qubit HS-POVMs")
    p.add_argument("--starts", type=int, default=256)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_table_hs)

    p = sub.add_parser("table-sic", parents=[common], help="extremal relative entropies of SIC-POVMs")
    p.add_argument("--dims", default="2,3,8")
    p.add_argument("--generic-t", type=float, default=0.3)
    p.add_argument("--hoggar-file")
    p.add_argument("--starts", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_table_sic)

    p = sub.add_parser("average", parents=[common], help="Haar Monte Carlo average of the relative entropy")
    _add_povm_source(p)
    p.add_argument("--samples", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_average)

    p = sub.add_parser("landscape", parents=[common], help="entropy on an equal-area sphere grid (CSV)")
    _add_povm_source(p)
    p.add_argument("--resolution", type=int, default=50)
    p.add_argument("--out")
    p.set_defaults(func=cmd_landscape)
    return parser


def _config_echo(args) -> dict:
    echo = {k: v for k, v in vars(args).items() if k not in ("func", "json")}
    echo["tolerances"] = tolerances.TOL.as_dict()
    return echo


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tolerances.reload()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    start = time.perf_counter()
    code, text, outputs, error = 0, "", {}, None
    try:
        text, outputs = args.func(args)
    except VerdictFailed as exc:
        code, outputs, error = 1, exc.outputs, str(exc)
    except (InputError, StructuralError, NotASicFiducial, ValueError, KeyError, OSError) as exc:
        code, error = 2, str(exc)
    record = {
        "command": args.command,
        "config": _config_echo(args),
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "outputs": outputs,
        "duration": time.perf_counter() - start,
        "exit_code": code,
    }
    if error:
        record["error"] = error
    if args.json:
        print(json.dumps(record, default=_json_default))
    else:
        if text:
            print(text)
        if error:
            print(f"error: {error}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
