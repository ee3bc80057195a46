"""Command-line front end.

Exit status reports tool failures only (1 for bad input, 2 for usage
errors); detection verdicts are always in the JSON output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import replace

import numpy as np

from . import states as st
from . import witnesses as wt
from .certify import block_positivity_min, ppt_min_eigenvalue
from .config import from_env
from .detection import detect, gamma_scan

STATE_KINDS = ("bell", "werner", "isotropic", "bell-diagonal", "mc", "theorem1", "theorem2", "damped-bell")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _round(obj, digits: int = 6):
    if isinstance(obj, float):
        return round(obj, digits)
    if isinstance(obj, dict):
        return {k: _round(v, digits) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_round(v, digits) for v in obj]
    return obj


def _dump(obj, args) -> str:
    if getattr(args, "pretty", False):
        return json.dumps(_round(obj), indent=2)
    return json.dumps(obj)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _parse_grid(spec: str) -> np.ndarray:
    try:
        lo, hi, n = spec.split(":")
        return np.linspace(float(lo), float(hi), int(n))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"grid must look like lo:hi:n, got {spec!r}") from exc


def _state_options(parser: argparse.ArgumentParser, bell_flag: str) -> None:
    g = parser.add_argument_group("state parameters")
    g.add_argument(bell_flag, dest="bell_kind", default="phi+", choices=st.BELL_KINDS, help="Bell state for 'bell'")
    g.add_argument("--f", type=float, default=0.5, help="Werner parameter")
    g.add_argument("--p", type=float, default=0.5, help="isotropic mixing weight")
    g.add_argument("--probs", type=float, nargs=4, metavar="P", help="Bell-diagonal weights")
    g.add_argument("--x", type=float, nargs="+", help="maximally correlated amplitudes")
    g.add_argument("--family", type=int, default=1)
    g.add_argument("--a", type=float, default=1.0)
    g.add_argument("--sign-b", type=int, default=1, choices=(1, -1))
    g.add_argument("--j", type=int, default=1)
    g.add_argument("--k", type=int, default=2)
    g.add_argument("--d", type=int, default=3)
    g.add_argument("--gamma", type=float, default=0.0)


def build_state(kind: str, args) -> st.DensityMatrix:
    if kind == "bell":
        return st.bell_state(args.bell_kind).density()
    if kind == "werner":
        return st.werner(args.f)
    if kind == "isotropic":
        return st.isotropic(args.p)
    if kind == "bell-diagonal":
        if not args.probs:
            raise ValueError("bell-diagonal needs --probs p1 p2 p3 p4")
        return st.bell_diagonal(*args.probs)
    if kind == "mc":
        if not args.x:
            raise ValueError("mc needs --x x1 ... xd")
        return st.max_correlated(args.x).density()
    if kind == "theorem1":
        return st.theorem1_state(st.FamilyParams(args.family, args.a, args.sign_b)).density()
    if kind == "theorem2":
        p = st.FamilyParams(args.family, args.a, args.sign_b)
        return st.theorem2_state(p, args.j, args.k, args.d).density()
    if kind == "damped-bell":
        return st.damped_bell(args.gamma)
    raise ValueError(f"unknown state kind {kind!r}")


def _state_params(kind: str, args) -> dict:
    keys = {
        "bell": ("bell_kind",),
        "werner": ("f",),
        "isotropic": ("p",),
        "bell-diagonal": ("probs",),
        "mc": ("x",),
        "theorem1": ("family", "a", "sign_b"),
        "theorem2": ("family", "a", "sign_b", "j", "k", "d"),
        "damped-bell": ("gamma",),
    }[kind]
    return {k: getattr(args, k) for k in keys}


def load_state(path: str) -> st.DensityMatrix:
    with open(path, encoding="utf-8") as fh:
        m, dims = wt.matrix_from_dict(json.load(fh))
    return st.DensityMatrix(m, dims)


def load_record(path: str) -> st.MeasurementRecord:
    with open(path, encoding="utf-8") as fh:
        return st.MeasurementRecord.from_json(fh.read())


def cmd_state(args) -> int:
    rho = build_state(args.kind, args)
    doc = wt.matrix_to_dict(rho.matrix, rho.dims)
    doc["provenance"] = {"kind": args.kind, "params": _state_params(args.kind, args)}
    _emit(_dump(doc, args), args.out)
    return 0


def cmd_record(args) -> int:
    if args.state:
        rho = load_state(args.state)
    elif args.state_kind:
        rho = build_state(args.state_kind, args)
    else:
        raise ValueError("record needs --state FILE or --kind KIND")
    if args.shots is None:
        rec = st.exact_record(rho)
    else:
        rec = st.sampled_record(rho, args.shots, args.seed)
    _emit(_dump(rec.to_dict(), args), args.out)
    return 0


def cmd_detect(args) -> int:
    rec = load_record(args.record)
    result = detect(rec, sigma_threshold=args.sigma)
    doc = result.to_dict()
    if args.state:
        rho = load_state(args.state)
        ppt = ppt_min_eigenvalue(rho)
        doc["ppt_min_eigenvalue"] = ppt
        doc["agrees_with_ppt"] = bool((ppt < 0) == result.entangled)
    _emit(_dump(doc, args), None)
    return 0


def _random_orthogonal(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    return q * np.sign(np.diag(r))


def build_witness(args) -> dict:
    """Construct the requested witness; returns the output document without a verdict."""
    extra: dict = {}
    if args.example1:
        w = wt.example1_witness(args.d, args.k)
    elif args.example2:
        if not args.pvec:
            raise ValueError("--example2 needs --pvec p1 ... pd")
        w, valid = wt.example2_witness(args.d, args.p0, args.pvec)
        extra["is_valid"] = valid
    elif args.example3:
        w, valid, extremal, indecomposable = wt.example3_witness(args.a, args.b, args.c)
        extra.update(is_valid=valid, is_extremal_class=extremal, is_indecomposable_class=indecomposable)
    elif args.reduction:
        w = wt.reduction_witness(args.d)
    elif args.flip:
        w = wt.flip_operator(args.d)
    elif args.mc:
        if not args.x:
            raise ValueError("--mc needs --x x1 ... xd")
        w, valid = wt.mc_witness(args.lam, args.x)
        extra["is_valid"] = valid
    elif args.orthogonal:
        w = wt.orthogonal_witness(_random_orthogonal(args.d * args.d, args.o_seed), args.d)
    elif args.family is not None:
        w = wt.extremal_witness(st.FamilyParams(args.family, args.a, args.sign_b))
    else:
        raise ValueError("choose a construction: --family, --example1/2/3, --reduction, --flip, --mc or --orthogonal")
    return {"witness_obj": w, **extra}


def cmd_witness(args) -> int:
    tol, cert = from_env()
    restarts = args.restarts if args.restarts is not None else cert.restarts
    seed = args.seed if args.seed is not None else cert.seed
    bp_tol = args.bp_tol if args.bp_tol is not None else tol.bp_tol
    tol = replace(tol, bp_tol=bp_tol)
    built = build_witness(args)
    w = built.pop("witness_obj")
    doc = {"witness": w.to_dict(), **built}
    if args.certify:
        verdict = block_positivity_min(
            w, restarts=restarts, iters=args.iters, tol=cert.tol, seed=seed, bp_tol=tol.bp_tol, eig_tol=tol.eig_tol
        )
        doc["verdict"] = verdict.to_dict()
    _emit(_dump(doc, args), args.out)
    return 0


def cmd_scan(args) -> int:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if args.channel:
        if args.gamma_grid is None:
            raise ValueError("--channel ad needs --gamma-grid lo:hi:n")
        writer.writerow(["gamma", "a_lower", "a_upper", "min_value"])
        for row in gamma_scan(args.gamma_grid):
            writer.writerow([_fmt(row.gamma), _fmt(row.a_lower), _fmt(row.a_upper), _fmt(row.min_value)])
    elif args.werner:
        if args.f_grid is None:
            raise ValueError("--werner needs --f-grid lo:hi:n")
        writer.writerow(["f", "min_value"])
        for f in args.f_grid:
            writer.writerow([_fmt(f), _fmt(detect(st.exact_record(st.werner(float(f)))).min_value)])
    else:
        raise ValueError("scan needs --channel ad or --werner")
    _emit(buf.getvalue(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="witkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state", help="write a density matrix as JSON")
    p.add_argument("kind", choices=STATE_KINDS)
    _state_options(p, "--kind")
    p.add_argument("--out")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("record", help="exact or sampled measurement record")
    p.add_argument("--state", help="density matrix JSON file")
    p.add_argument("--kind", dest="state_kind", choices=STATE_KINDS, help="build the state inline instead of --state")
    _state_options(p, "--bell")
    p.add_argument("--shots", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_record)

    p = sub.add_parser("detect", help="run the six-family detection on a record")
    p.add_argument("--record", required=True)
    p.add_argument("--state", help="density matrix JSON for a PPT cross-check")
    p.add_argument("--sigma", type=float, default=3.0, help="significance threshold for sampled records")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("witness", help="construct and optionally certify a witness")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--example1", action="store_true")
    group.add_argument("--example2", action="store_true")
    group.add_argument("--example3", action="store_true")
    group.add_argument("--reduction", action="store_true")
    group.add_argument("--flip", action="store_true")
    group.add_argument("--mc", action="store_true")
    group.add_argument("--orthogonal", action="store_true")
    p.add_argument("--family", type=int)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--sign-b", type=int, default=1, choices=(1, -1))
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--p0", type=float, default=1.0)
    p.add_argument("--pvec", type=float, nargs="+", help="Example 2 weights p1 ... pd")
    p.add_argument("--lam", type=float, default=0.5)
    p.add_argument("--x", type=float, nargs="+")
    p.add_argument("--o-seed", type=int, default=0, help="seed of the random orthogonal matrix")
    p.add_argument("--certify", action="store_true")
    p.add_argument("--restarts", type=int)
    p.add_argument("--iters", type=int, default=200)
    p.add_argument("--seed", type=int)
    p.add_argument("--bp-tol", type=float)
    p.add_argument("--out")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("scan", help="CSV scans over damping strength or Werner parameter")
    p.add_argument("--channel", choices=("ad",))
    p.add_argument("--werner", action="store_true")
    p.add_argument("--gamma-grid", type=_parse_grid)
    p.add_argument("--f-grid", type=_parse_grid)
    p.add_argument("--out")
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "seed", None) is None and args.command == "record":
        args.seed = from_env()[1].seed
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"witkit: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
