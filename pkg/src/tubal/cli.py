"""Command-line front end.

Subcommands: transform, scalar, tsvd, truncate, spectrum, verify.

Exit codes:
  0  success (and, for tsvd/truncate, the numerical check held)
  1  numerical check failed, or a verify suite failed
  2  input could not be parsed (tensor file, transform file, arguments)
  3  transform lacks a required property (real-preserving, unitary, ...)
  4  SVD did not converge
  5  requested rank out of range
  6  any other library error
"""
import argparse
import json
import os
import sys

import numpy as np

from . import io
from . import transform as tf
from . import verify as vf
from .errors import (
    InvalidDimension,
    InvalidSpec,
    NoConvergence,
    NotDoublyRealPreserving,
    NotRealPreserving,
    NotUnitary,
    ParseError,
    RankOutOfRange,
    SingularTransform,
    TubalError,
)
from .linalg import frobenius
from .scalar import invert, transpose_scalar, tprod, unit
from .tsvd import RANK_TOL, spectrum, spectrum_from, truncate_brank, truncate_tubal, tsvd

EXIT_CODES = [
    ((ParseError, InvalidSpec, InvalidDimension, SingularTransform), 2),
    ((NotRealPreserving, NotDoublyRealPreserving, NotUnitary), 3),
    ((NoConvergence,), 4),
    ((RankOutOfRange,), 5),
    ((TubalError,), 6),
]


def _emit(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def resolve_transform(spec, p, seed=0):
    """A builtin name or a path to a transform JSON file."""
    if os.path.exists(spec):
        L = tf.load(spec)
        if L.p != p:
            raise InvalidSpec(f"transform file has p={L.p} but the data needs p={p}")
        return L
    return tf.builtin(spec, p, seed=seed)


def _parse_vector(text):
    try:
        return np.array([float(x) for x in text.replace(",", " ").split()])
    except ValueError as exc:
        raise ParseError(f"bad vector {text!r}: {exc}") from None


def cmd_transform(args):
    if args.file:
        L = tf.load(args.file)
    else:
        if args.p is None:
            raise InvalidSpec("--p is required with --builtin")
        L = tf.builtin(args.builtin, args.p, seed=args.seed)
    if args.out:
        tf.save(L, args.out)
    _emit({"name": L.name, "p": L.p, **L.cls.summary()})
    return 0


def cmd_scalar(args):
    a = _parse_vector(args.a)
    L = resolve_transform(args.transform, a.size, args.seed)
    if args.op == "tprod":
        if args.b is None:
            raise InvalidSpec("tprod needs --b")
        out = tprod(L, a, _parse_vector(args.b))
    elif args.op == "unit":
        out = unit(L)
    elif args.op == "invert":
        out = invert(L, a)
    else:
        out = transpose_scalar(L, a)
    _emit({"op": args.op, "result": out.tolist()})
    return 0


def _spectrum_dict(f, rank_tol):
    sp = spectrum_from(f.S, rank_tol)
    return sp, sp.to_dict()


def cmd_tsvd(args):
    A = io.read_tensor(args.input)
    L = resolve_transform(args.transform, A.shape[2], args.seed)
    f = tsvd(L, A)
    resid = frobenius(A - f.reconstruct())
    norm = frobenius(A)
    rel = resid / norm if norm > 0 else resid
    ok = rel <= args.tol
    if args.out:
        ext = "tubl" if args.binary else "txt"
        for name, T in (("U", f.U), ("S", f.S.tensor()), ("V", f.V)):
            io.write_tensor(f"{args.out}_{name}.{ext}", T, binary=args.binary)
    payload = {
        "shape": list(A.shape),
        "transform": L.name,
        "reconstruction_residual": resid,
        "relative_residual": rel,
        "tolerance": args.tol,
        "realness_residuals": f.realness_residuals,
        "slice_svd_backward_errors": f.slice_svd_backward_errors.tolist(),
    }
    if L.cls.is_unitary:
        sp, payload["spectrum"] = _spectrum_dict(f, args.rank_tol)
        payload["rank_t"], payload["rank_b"] = sp.rank_t, sp.rank_b
    if args.out:
        with open(f"{args.out}_spectrum.json", "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
    _emit({k: payload[k] for k in payload if k not in ("spectrum", "slice_svd_backward_errors")})
    return 0 if ok else 1


def cmd_truncate(args):
    A = io.read_tensor(args.input)
    L = resolve_transform(args.transform, A.shape[2], args.seed)
    f = tsvd(L, A)
    sp = spectrum_from(f.S, args.rank_tol)
    if args.mode == "tubal":
        approx = truncate_tubal(f, args.rank)
        predicted = float(sp.tau[args.rank])
    else:
        approx = truncate_brank(f, args.rank)
        predicted = float(sp.nu[args.rank])
    achieved = frobenius(A - approx)
    norm2 = frobenius(A) ** 2
    ok = abs(achieved ** 2 - predicted ** 2) <= args.tol * norm2
    if args.out:
        io.write_tensor(args.out, approx, binary=args.binary)
    _emit({
        "mode": args.mode,
        "rank": args.rank,
        "achieved_error": achieved,
        "predicted_error": predicted,
        "achieved_error_sq": achieved ** 2,
        "predicted_error_sq": predicted ** 2,
        "tolerance": args.tol,
        "passed": bool(ok),
    })
    return 0 if ok else 1


def cmd_spectrum(args):
    A = io.read_tensor(args.input)
    L = resolve_transform(args.transform, A.shape[2], args.seed)
    _emit(spectrum(L, A, args.rank_tol).to_dict())
    return 0


def cmd_verify(args):
    fixture = None
    report = None
    if args.input:
        try:
            fixture = io.read_tensor(args.input)
        except (ParseError, OSError) as exc:
            report = vf.Report()
            report.fail("fixture.parse", str(exc))
    if report is None:
        report = vf.run(args.suite, args.seed, fixture=fixture)
    text = json.dumps(report.to_dict(), indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return 0 if report.passed else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="tubal", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def data_args(p):
        p.add_argument("--input", required=True, help="tensor file (text or binary)")
        p.add_argument("--transform", default="ndft", help="builtin name or transform JSON path")
        p.add_argument("--seed", type=int, default=0, help="seed for random builtins")
        p.add_argument("--rank-tol", type=float, default=RANK_TOL)

    p = sub.add_parser("transform", help="build or load a transform and classify it")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--builtin", choices=tf.BUILTINS)
    g.add_argument("--file")
    p.add_argument("--p", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the transform JSON here")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("scalar", help="tubal scalar arithmetic")
    p.add_argument("op", choices=("tprod", "unit", "invert", "transpose"))
    p.add_argument("--a", required=True, help="comma separated tube")
    p.add_argument("--b")
    p.add_argument("--transform", default="dft")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_scalar)

    p = sub.add_parser("tsvd", help="factorize a tensor")
    data_args(p)
    p.add_argument("--out", help="prefix for U/S/V tensor files and spectrum JSON")
    p.add_argument("--tol", type=float, default=1e-8, help="relative reconstruction tolerance")
    p.add_argument("--binary", action="store_true")
    p.set_defaults(func=cmd_tsvd)

    p = sub.add_parser("truncate", help="best tubal-rank or B-rank approximation")
    data_args(p)
    p.add_argument("--mode", choices=("tubal", "brank"), required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--out")
    p.add_argument("--tol", type=float, default=1e-6, help="tolerance on |achieved^2 - predicted^2| / ||A||^2")
    p.add_argument("--binary", action="store_true")
    p.set_defaults(func=cmd_truncate)

    p = sub.add_parser("spectrum", help="T- and B-singular values, ranks and tail energies")
    data_args(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("--suite", choices=vf.SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--input", help="optional fixture tensor to include")
    p.add_argument("--out", help="also write the JSON report here")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TubalError as exc:
        for types, code in EXIT_CODES:
            if isinstance(exc, types):
                print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
                return code
        raise


if __name__ == "__main__":
    sys.exit(main())
