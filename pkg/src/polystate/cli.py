"""Command line surface: state construction, observables, and the verify suites.

Exit codes: 0 success, 1 failed checks or runtime errors, 2 empty symmetry
sector, 3 malformed input JSON, 4 oracle memory guard.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from .fock import (
    FockVector,
    coherent,
    default_n_max,
    residue_class_masses,
    vector_from_dict,
    vector_to_dict,
)
from .cyclic import (
    CyclicSpec,
    EmptyRepresentationError,
    circle_limit,
    circle_limit_quadrature_gap,
    cyclic_erasure,
    cyclic_superposition,
    dihedral_state,
    normalization_record,
)
from .gaussian import GaussianParams, gaussian_to_fock
from .observables import (
    BipartiteSpec,
    MemoryGuardError,
    bipartite_normalize,
    linear_entropy,
    linear_entropy_oracle,
    mandel,
    wigner,
    wigner_rotation_residual,
    write_wigner_csv,
)
from .verify import DEFAULT_SEED, SUITES, format_report, run_suites

__all__ = ["RunConfig", "main"]


class InputFormatError(ValueError):
    """Input file exists but does not parse as the documented JSON shape."""


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs; built from parsed flags."""

    subcommand: str
    args: argparse.Namespace


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: invalid JSON ({exc})") from exc


def _load_state(path: str) -> FockVector:
    data = _read_json(path)
    try:
        return vector_from_dict(data)
    except ValueError as exc:
        raise InputFormatError(f"{path}: {exc}") from exc


def _seed_state(args) -> FockVector:
    """The seed named by --input / --coherent / --gaussian."""
    n_max = args.n_max if args.n_max is not None else default_n_max()
    given = [name for name in ("input", "coherent", "gaussian")
             if getattr(args, name, None) is not None]
    if len(given) != 1:
        raise InputFormatError(
            "exactly one of --input, --coherent, --gaussian must be given")
    if args.input is not None:
        return _load_state(args.input)
    if args.coherent is not None:
        re, im = args.coherent
        return coherent(complex(re, im), n_max)
    ar, ai, br, bi = args.gaussian
    return gaussian_to_fock(GaussianParams(complex(ar, ai), complex(br, bi)),
                            n_max)


def _write_text(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _pairs(arr: np.ndarray):
    """Nested [re, im] encoding of a complex array of any rank."""
    if arr.ndim == 0:
        z = complex(arr)
        return [z.real, z.imag]
    return [_pairs(sub) for sub in arr]


def cmd_build(config: RunConfig) -> int:
    args = config.args
    seed = _seed_state(args)
    spec = CyclicSpec(args.order, args.irrep)
    method = args.method
    if args.group == "D":
        state, record = dihedral_state(seed, spec, args.variant)
        method = f"dihedral-{args.variant}"
    elif method == "erasure":
        state = cyclic_erasure(seed, spec)
        record = normalization_record(seed, spec)
    else:
        state, record = cyclic_superposition(seed, spec)
    payload = vector_to_dict(state)
    payload["metadata"] = {
        "method": method,
        "group": args.group,
        "order": args.order,
        "irrep": args.irrep,
        "n_lambda": [record.n_lambda.real, record.n_lambda.imag],
        "raw_norm": record.raw_norm,
        "residue_class_masses": list(residue_class_masses(seed, args.order)),
        "tail_flagged": state.tail_flagged,
    }
    _write_text(json.dumps(payload, indent=2) + "\n", args.output)
    return 0


def cmd_wigner(config: RunConfig) -> int:
    args = config.args
    state = _load_state(args.input)
    grid = wigner(state, (args.x_min, args.x_max), (args.p_min, args.p_max),
                  args.points)
    if args.output is None:
        write_wigner_csv(grid, sys.stdout)
    else:
        with open(args.output, "w") as fh:
            write_wigner_csv(grid, fh)
    if args.check_symmetry is not None:
        res = wigner_rotation_residual(state, args.check_symmetry,
                                       (args.x_min, args.x_max))
        sys.stderr.write(
            f"rotation symmetry residual (order {args.check_symmetry}): "
            f"{res:.3e}\n")
    return 0


def cmd_mandel(config: RunConfig) -> int:
    args = config.args
    state = _load_state(args.input)
    try:
        m_q = mandel(state)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    if m_q < 1.0 - 1e-12:
        label = "subpoissonian"
    elif m_q > 1.0 + 1e-12:
        label = "superpoissonian"
    else:
        label = "poissonian"
    _write_text(f"M_Q = {m_q:.12e} ({label})\n"
                f"conventional Q = M_Q - 1 = {m_q - 1.0:.12e}\n", args.output)
    return 0


def _load_bipartite(path: str) -> BipartiteSpec:
    data = _read_json(path)
    try:
        n = int(data["n"])
        c = np.array([complex(re, im) for re, im in data["c"]])
        seed_1 = vector_from_dict(data["seed_1"])
        seed_2 = vector_from_dict(data["seed_2"])
        return BipartiteSpec(n, c, seed_1, seed_2)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"{path}: malformed bipartite spec ({exc})") from exc


def cmd_entangle(config: RunConfig) -> int:
    args = config.args
    spec = bipartite_normalize(_load_bipartite(args.input))
    result = linear_entropy(spec)
    oracle = linear_entropy_oracle(spec)
    diff = abs(result.s_linear - oracle)
    payload = {
        "s_linear": result.s_linear,
        "s_linear_oracle": oracle,
        "difference": diff,
        "f_matrix": _pairs(result.f_matrix),
        "d_tensor": _pairs(result.d_tensor),
    }
    _write_text(json.dumps(payload, indent=2) + "\n", args.output)
    if diff > 1e-8:
        sys.stderr.write(
            f"error: decomposition and oracle disagree by {diff:.3e}\n")
        return 1
    return 0


def cmd_circle_limit(config: RunConfig) -> int:
    args = config.args
    seed = _seed_state(args)
    state = circle_limit(seed, args.irrep)
    payload = vector_to_dict(state)
    payload["metadata"] = {
        "irrep": args.irrep,
        "quadrature_gap": circle_limit_quadrature_gap(seed, args.irrep),
    }
    _write_text(json.dumps(payload, indent=2) + "\n", args.output)
    return 0


def cmd_verify(config: RunConfig) -> int:
    args = config.args
    names = None if args.suite == "all" else [args.suite]
    rows = run_suites(names, seed=args.seed, order=args.order)
    report = format_report(rows, timestamp=not args.no_timestamp)
    _write_text(report, args.output)
    return 0 if all(r.passed for r in rows) else 1


def _add_seed_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="state JSON file to use as the seed")
    p.add_argument("--coherent", nargs=2, type=float, metavar=("RE", "IM"),
                   help="coherent seed with amplitude RE + i IM")
    p.add_argument("--gaussian", nargs=4, type=float,
                   metavar=("A_RE", "A_IM", "B_RE", "B_IM"),
                   help="Gaussian seed exp(-a x^2 + b x)")
    p.add_argument("--n-max", type=int, default=None,
                   help="truncation for constructed seeds (default: "
                        "POLYSTATE_NMAX or 64; file input keeps its own)")
    p.add_argument("--output", help="write here instead of stdout")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polystate",
        description="Cyclic and dihedral symmetry-adapted bosonic states "
                    "in a truncated Fock space.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    for name, default_method in (("build", None), ("erase", "erasure")):
        p = sub.add_parser(
            name,
            help="construct a symmetry-adapted state"
                 + (" by photon-number erasure" if default_method else ""))
        _add_seed_flags(p)
        p.add_argument("--group", choices=("C", "D"), default="C",
                       help="cyclic or dihedral symmetrization")
        p.add_argument("--order", type=int, required=True, help="group order n")
        p.add_argument("--irrep", type=int, required=True,
                       help="irrep index 1..n")
        p.add_argument("--variant", choices=("sum", "difference"),
                       default="sum", help="dihedral combination (group D)")
        if default_method is None:
            p.add_argument("--method", choices=("superposition", "erasure"),
                           default="erasure",
                           help="construction route (default erasure)")
        else:
            p.set_defaults(method=default_method)
        p.set_defaults(func=cmd_build)

    p = sub.add_parser("wigner", help="evaluate a Wigner-function grid as CSV")
    p.add_argument("--input", required=True, help="state JSON file")
    p.add_argument("--output", help="CSV path (default stdout)")
    p.add_argument("--x-min", type=float, default=-6.0)
    p.add_argument("--x-max", type=float, default=6.0)
    p.add_argument("--p-min", type=float, default=-6.0)
    p.add_argument("--p-max", type=float, default=6.0)
    p.add_argument("--points", type=int, default=201,
                   help="grid points per axis")
    p.add_argument("--check-symmetry", type=int, metavar="N",
                   help="report the order-N rotation residual on stderr")
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("mandel", help="photon-statistics Mandel parameter")
    p.add_argument("--input", required=True, help="state JSON file")
    p.add_argument("--output", help="write here instead of stdout")
    p.set_defaults(func=cmd_mandel)

    p = sub.add_parser("entangle",
                       help="linear entropy of a two-mode rotated superposition")
    p.add_argument("--input", required=True, help="bipartite spec JSON file")
    p.add_argument("--output", help="result JSON path (default stdout)")
    p.set_defaults(func=cmd_entangle)

    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("--suite", default="all", choices=["all", *SUITES],
                   help="which suite to run (default all)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED,
                   help="seed for the randomized suites")
    p.add_argument("--order", type=int, default=None,
                   help="max group order for the characters suite")
    p.add_argument("--no-timestamp", action="store_true",
                   help="omit the timestamp line (byte-identical reruns)")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("circle-limit",
                       help="the infinite-order limit state of a seed")
    _add_seed_flags(p)
    p.add_argument("--irrep", type=int, required=True,
                   help="irrep index (>= 1); the limit is |irrep - 1>")
    p.set_defaults(func=cmd_circle_limit)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    config = RunConfig(subcommand=args.subcommand, args=args)
    try:
        return args.func(config)
    except EmptyRepresentationError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except InputFormatError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    except MemoryGuardError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 4
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
