"""Command-line interface: ``toricprequant {check,delzant,census,catalog,flow}``.

Polytope arguments are file paths or ``catalog:NAME``. Exit status is 0 on
success, 1 when a verification fails and 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from . import catalog as _catalog
from .polytope import SCHEMA_VERSION, PolytopeError, parse_polytope

log = logging.getLogger("toricprequant")

OK, FAILED, BAD_INPUT = 0, 1, 2
PREDICATES = ("compact", "smooth", "monotone", "even", "irredundant")


class InputError(Exception):
    pass


def load_polytope(source: str):
    """Return ``(polytope, catalog_entry_or_None)``."""
    if source.startswith("catalog:"):
        try:
            entry = _catalog.builtin(source[len("catalog:"):])
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
        return entry.polytope, entry
    try:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None
    try:
        return parse_polytope(text), None
    except PolytopeError as exc:
        raise InputError(f"{source}: {exc}") from None


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def emit(doc: dict, fmt: str, out) -> None:
    doc = {"schema_version": SCHEMA_VERSION, **doc}
    if fmt == "json":
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        return
    for line in _text_lines(doc):
        out.write(line + "\n")


def _text_lines(doc, prefix=""):
    for key, value in doc.items():
        if isinstance(value, dict):
            yield f"{prefix}{key}:"
            yield from _text_lines(value, prefix + "  ")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            yield f"{prefix}{key}:"
            for i, item in enumerate(value):
                yield f"{prefix}  [{i}]"
                yield from _text_lines(item, prefix + "    ")
        else:
            yield f"{prefix}{key}: {json.dumps(value)}"


# -- subcommands ----------------------------------------------------------------


def cmd_check(args, out) -> int:
    from .polytope import predicate_report

    P, _ = load_polytope(args.input)
    rep = predicate_report(P)
    missing = [p for p in args.require if not rep.get(p)]
    emit({"kind": "check", "name": P.name, "predicates": rep, "failed_requirements": missing}, args.format, out)
    return FAILED if missing else OK


def cmd_delzant(args, out) -> int:
    from .delzant import PreconditionError, delzant_report

    P, entry = load_polytope(args.input)
    c1 = args.c1 if args.c1 is not None else (entry.c1 if entry else None)
    if c1 is not None and len(c1) == 0:
        c1 = None
    try:
        rep = delzant_report(P, c1=c1, gamma_radius=args.gamma_radius)
    except PreconditionError as exc:
        emit({"kind": "delzant", "name": P.name, "error": str(exc), "predicate": exc.predicate}, args.format, out)
        return FAILED
    doc = {"kind": "delzant", "report": rep.to_dict()}
    if rep.gamma is None:
        doc["diagnostic"] = f"no gamma found within radius {args.gamma_radius}"
    emit(doc, args.format, out)
    return OK


def cmd_census(args, out) -> int:
    from .census import CensusError, enumerate_smooth_fano, match_catalog

    if args.dim not in (2, 3):
        raise InputError("--dim must be 2 or 3")
    if args.bound < 0:
        raise InputError("--bound must be non-negative")
    res = enumerate_smooth_fano(args.dim, args.bound, workers=args.workers)
    named = [e for e in _catalog.entries(args.dim) if e.expected.get("even") and e.expected["even"].value]
    status = OK
    match_error = None
    try:
        res = match_catalog(res, named)
    except CensusError as exc:
        # too small a box; report it, the counts are still meaningful
        match_error = str(exc)
        status = FAILED
    doc = {"kind": "census", **{k: v for k, v in res.to_dict().items() if k != "schema_version"}}
    if match_error:
        doc["matching_error"] = match_error
    if args.stabilize:
        nxt = enumerate_smooth_fano(args.dim, args.bound + 1, workers=args.workers)
        new = sorted(nxt.class_set() - res.class_set())
        doc["stabilization"] = {
            "next_bound": args.bound + 1,
            "new_classes": [[list(v) for v in m] for m in new],
            "stable": not new,
        }
        if new:
            status = FAILED
    emit(doc, args.format, out)
    return status


def cmd_catalog(args, out) -> int:
    if args.name:
        try:
            entry = _catalog.builtin(args.name)
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
        if args.export:
            out.write(entry.dumps())
            return OK
        rep = _catalog.verify_catalog([entry.name])
    else:
        if args.export:
            raise InputError("--export needs --name")
        rep = _catalog.verify_catalog()
    emit({"kind": "catalog", **rep}, args.format, out)
    return OK if rep["ok"] else FAILED


def _hamiltonian(text: str, d: Optional[int]):
    from . import contact as C

    s = text.strip().lower()
    if s in ("reeb", "one"):
        return C.constant(1.0), None
    if s == "zero":
        return C.constant(0.0), ()
    try:
        lam = _float_list(text)
    except argparse.ArgumentTypeError as exc:
        raise InputError(f"unknown hamiltonian {text!r}: use reeb, zero or a coefficient list") from exc
    if d is not None and len(lam) != d:
        raise InputError("coefficient list and gamma have different lengths")
    return C.torus_hamiltonian(lam), lam


def cmd_flow(args, out) -> int:
    import numpy as np

    from . import contact as C

    if args.dt <= 0 or args.T < 0:
        raise InputError("need dt > 0 and T >= 0")
    gamma = args.gamma
    h, lam = _hamiltonian(args.hamiltonian, len(gamma) if gamma else None)
    if gamma is None:
        if not lam:
            raise InputError("--gamma is required for this hamiltonian")
        gamma = (1,) * len(lam)
    if any(g <= 0 for g in gamma):
        raise InputError("gamma entries must be positive")
    tol = C.DEFAULT_TOL.with_overrides(flow_abort=args.tol_abort)
    rng = np.random.default_rng(args.seed)
    z0 = C.SpherePoint.random(gamma, rng)
    try:
        traj = C.integrate_flow(h, z0, args.T, args.dt, tol)
    except C.FlowError as exc:
        emit({"kind": "flow", "error": str(exc)}, args.format, out)
        return FAILED
    summ = traj.summary()
    doc = {
        "kind": "flow",
        "hamiltonian": args.hamiltonian,
        "gamma": list(gamma),
        "seed": args.seed,
        "dt": args.dt,
        "start": [float(x) for x in z0.z],
        **summ,
    }
    weights = C.reeb_weights(gamma) if lam is None else (np.zeros(len(gamma)) if lam == () else lam)
    exact = C.torus_rotation(weights, z0.z, args.T)
    err = C.endpoint_error(traj.endpoint.z, exact)
    doc["closed_form_error"] = err
    failures = []
    if summ["max_alpha_residual"] > args.tol_alpha:
        failures.append("alpha residual")
    if summ["max_level_residual"] > args.tol_level:
        failures.append("level residual")
    if args.tol_endpoint is not None and not err <= args.tol_endpoint:
        failures.append("endpoint error")
    doc["failures"] = failures
    emit(doc, args.format, out)
    return FAILED if failures else OK


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toricprequant", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="count", default=0)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        return sp

    sp = common(sub.add_parser("check", help="polytope predicates"))
    sp.add_argument("input", help="polytope file or catalog:NAME")
    sp.add_argument("--require", action="append", default=[], choices=PREDICATES,
                    help="exit 1 unless this predicate holds (repeatable)")
    sp.set_defaults(func=cmd_check)

    sp = common(sub.add_parser("delzant", help="kernel-torus reduction datum"))
    sp.add_argument("input")
    sp.add_argument("--c1", type=_int_list, default=None, help="first Chern class, comma-separated")
    sp.add_argument("--gamma-radius", type=int, default=10)
    sp.set_defaults(func=cmd_delzant)

    sp = common(sub.add_parser("census", help="smooth Fano polytopes in a box"))
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("--bound", type=int, required=True)
    sp.add_argument("--stabilize", action="store_true", help="also run bound+1 and compare")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_census)

    sp = common(sub.add_parser("catalog", help="verify or export built-in polytopes"))
    sp.add_argument("--name")
    sp.add_argument("--export", action="store_true", help="print the entry in the polytope file format")
    sp.set_defaults(func=cmd_catalog)

    sp = common(sub.add_parser("flow", help="integrate a contact Hamiltonian flow"))
    sp.add_argument("--hamiltonian", required=True, help="reeb, zero, or coefficients of <lambda, P>")
    sp.add_argument("--gamma", type=_int_list, default=None)
    sp.add_argument("--T", type=float, default=1.0)
    sp.add_argument("--dt", type=float, default=1e-3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--tol-alpha", type=float, default=1e-8)
    sp.add_argument("--tol-level", type=float, default=1e-9)
    sp.add_argument("--tol-abort", type=float, default=None)
    sp.add_argument("--tol-endpoint", type=float, default=None,
                    help="exit 1 if the closed-form endpoint error exceeds this")
    sp.set_defaults(func=cmd_flow)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else OK
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), stream=sys.stderr)
    try:
        return args.func(args, out)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return BAD_INPUT
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        import os

        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return OK


if __name__ == "__main__":
    sys.exit(main())
