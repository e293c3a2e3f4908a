"""Command-line interface.

Exit codes: 0 success / true / isomorphic, 1 false / not left-symmetric /
not isomorphic, 2 input error, 3 undecided isomorphism.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import burgers
from .analysis import is_r_matrix, lsa_from_r_matrix, property_report
from .catalog import (
    FAMILIES,
    CatalogError,
    IsoKind,
    are_isomorphic,
    generate,
    identify,
    match_catalog,
    parse_catalog_id,
)
from .construct import (
    ExtendedSpec,
    PairSpec,
    PairVerdict,
    algebra_from_extended,
    algebra_from_inner_product,
    algebra_from_pair,
    classify_extended,
)
from .core import Algebra, DimensionError, JacobiError, LieAlgebra, is_left_symmetric
from .io import FormatError, algebra_to_json, read_algebra, read_spec
from .linalg import Matrix
from .scalar import format_scalar, parse_scalar

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_UNKNOWN = 0, 1, 2, 3

_K_RANGE = {"A1": "0..n-1", "A3_2": "0..n-2", "A3_3": "0..n-2", "A5": "0..n-2"}
_PARAM_NOTE = {"A4_lambda": "lambda not in {1, 2}", "A7_alpha": "alpha != 0"}


class InputError(Exception):
    pass


# parsing helpers ---------------------------------------------------------------------------

def _vector(text: str) -> tuple:
    try:
        return tuple(parse_scalar(t) for t in text.split(","))
    except ValueError as exc:
        raise InputError(f"bad vector {text!r}: {exc}") from None


def _matrix(text: str) -> Matrix:
    """Rows separated by ';', entries by ','."""
    try:
        return Matrix([_vector(row) for row in text.split(";")])
    except ValueError as exc:
        raise InputError(f"bad matrix {text!r}: {exc}") from None


def _load_algebra(source: str, dim: int | None, *, lie: bool = False) -> Algebra:
    """A JSON file, or a catalog name like ``a3.1`` combined with ``--dim``."""
    path = Path(source)
    if path.exists():
        return read_algebra(path, lie=lie)
    try:
        cid = parse_catalog_id(source)
    except CatalogError:
        raise InputError(f"{source}: no such file and not a catalog name") from None
    if dim is None:
        raise InputError(f"catalog name {source!r} needs --dim")
    a = generate(cid, dim)
    return LieAlgebra(a.c) if lie and not isinstance(a, LieAlgebra) else a


class _Out:
    def __init__(self, command: str, as_json: bool):
        self.command, self.as_json = command, as_json
        self.lines: list[str] = []

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def emit(self, result) -> None:
        if self.as_json:
            print(json.dumps({"command": self.command, "result": result}, indent=1))
        else:
            for text in self.lines:
                print(text)


def _write_or_print(obj, dest: str | None, out: _Out) -> None:
    text = json.dumps(obj, indent=1) + "\n"
    if dest:
        Path(dest).write_text(text, encoding="utf-8")
        out.line(f"wrote {dest}")
    else:
        out.line(text.rstrip("\n"))


def _witness_rows(t) -> list:
    if isinstance(t, Matrix):
        return [[format_scalar(v) for v in row] for row in t.rows]
    return [[_fmt_complex(complex(v)) for v in row] for row in np.asarray(t)]


def _fmt_complex(z: complex) -> str:
    if z.imag == 0:
        return repr(z.real)
    return f"{z.real!r}{z.imag:+}i" if z.real else f"{z.imag!r}i"


# commands ---------------------------------------------------------------------------------

def cmd_catalog_list(args, out: _Out) -> int:
    rows = []
    for fam, (kind, cli) in FAMILIES.items():
        if kind == "k":
            name, note = f"{cli}:k", f"k in {_K_RANGE[fam]}"
        elif kind == "scalar":
            name, note = f"{cli}:<scalar>", _PARAM_NOTE[fam]
        else:
            name, note = cli, ""
        rows.append({"family": fam, "cli": name, "parameter": note})
        out.line(f"{name:<16} {fam:<10} {note}".rstrip())
    out.emit(rows)
    return EXIT_OK


def cmd_catalog_gen(args, out: _Out) -> int:
    cid = parse_catalog_id(args.name)
    a = generate(cid, args.dim)
    obj = algebra_to_json(a)
    if args.json and not args.output:
        out.emit({"id": str(cid), "algebra": obj})
        return EXIT_OK
    _write_or_print(obj, args.output, out)
    out.emit({"id": str(cid), "written": args.output})
    return EXIT_OK


def cmd_verify(args, out: _Out) -> int:
    a = _load_algebra(args.algebra, args.dim)
    ok = is_left_symmetric(a)
    out.line(f"left-symmetric: {str(ok).lower()}")
    out.emit({"left_symmetric": ok})
    return EXIT_OK if ok else EXIT_FALSE


def cmd_construct(args, out: _Out) -> int:
    if args.kind == "pair":
        spec = PairSpec(f=_vector(args.f), g=_vector(args.g))
        a, verdict = algebra_from_pair(spec)
        ok = verdict is PairVerdict.LEFT_SYMMETRIC_ASSOCIATIVE
        out.line(f"verdict: {verdict.value}")
        tag = verdict.value
    elif args.kind == "extended":
        spec = read_spec(args.spec)
        if not isinstance(spec, ExtendedSpec):
            raise InputError("spec file has no 'h'/'c'; use 'construct pair'")
        a = algebra_from_extended(spec)
        v = classify_extended(spec)
        ok = v.left_symmetric
        tag = v.tag
        out.line(f"verdict: {tag}")
    else:
        a = algebra_from_inner_product(_vector(args.a))
        ok = True
        tag = "LeftSymmetric"
        out.line(f"verdict: {tag}")
    obj = algebra_to_json(a)
    if args.output:
        Path(args.output).write_text(json.dumps(obj, indent=1) + "\n", encoding="utf-8")
        out.line(f"wrote {args.output}")
    else:
        out.line(json.dumps(obj, indent=1))
    out.emit({"verdict": tag, "algebra": obj})
    return EXIT_OK if ok else EXIT_FALSE


def cmd_classify(args, out: _Out) -> int:
    spec = read_spec(args.spec)
    if not isinstance(spec, ExtendedSpec):
        a, verdict = algebra_from_pair(spec)
        out.line(f"verdict: {verdict.value}")
        out.emit({"verdict": verdict.value})
        return EXIT_OK if verdict is PairVerdict.LEFT_SYMMETRIC_ASSOCIATIVE else EXIT_FALSE
    v = classify_extended(spec)
    d = v.as_dict()
    out.line(f"verdict: {v.tag}")
    for key in ("rank_h", "alpha", "a1", "lambda"):
        if d[key] is not None:
            out.line(f"{key}: {d[key]}")
    if v.violated:
        out.line("violated: " + ", ".join(v.violated))
    out.emit(d)
    return EXIT_OK if v.left_symmetric else EXIT_FALSE


def cmd_identify(args, out: _Out) -> int:
    spec = read_spec(args.spec)
    if not isinstance(spec, ExtendedSpec):
        raise InputError("identify needs an extended spec with 'h' and 'c'")
    verdict = classify_extended(spec)
    if verdict.case is None:
        out.line(f"no normal form: {verdict.tag}")
        out.emit({"verdict": verdict.tag})
        return EXIT_FALSE
    ident = identify(spec)
    exact = ident.exact_witness is not None
    rows = _witness_rows(ident.exact_witness if exact else ident.witness)
    out.line(f"catalog: {ident.catalog_id.cli_name} ({ident.catalog_id})")
    out.line("witness (" + ("exact" if exact else "approximate") + "), rows map the input onto the normal form:")
    for r in rows:
        out.line("  " + "  ".join(r))
    out.emit({"id": str(ident.catalog_id), "cli": ident.catalog_id.cli_name,
              "witness": rows, "witness_exact": exact})
    return EXIT_OK


def cmd_iso(args, out: _Out) -> int:
    a = _load_algebra(args.a, args.dim)
    b = _load_algebra(args.b, args.dim)
    v = are_isomorphic(a, b, seed=args.seed)
    if v.kind is IsoKind.ISOMORPHIC:
        out.line("isomorphic (witness verified)")
        for r in _witness_rows(v.witness):
            out.line("  " + "  ".join(r))
        code = EXIT_OK
    elif v.kind is IsoKind.NON_ISOMORPHIC:
        out.line(f"not isomorphic (invariant: {v.invariant})")
        code = EXIT_FALSE
    else:
        out.line("unknown")
        code = EXIT_UNKNOWN
    out.emit(v.as_dict())
    return code


def cmd_properties(args, out: _Out) -> int:
    a = _load_algebra(args.algebra, args.dim)
    rep = property_report(a, seed=args.seed).as_dict()
    for key, val in rep.items():
        out.line(f"{key.replace('_', '-')}: {str(val).lower() if isinstance(val, bool) else val}")
    if args.match:
        m = match_catalog(a, seed=args.seed)
        rep["catalog"] = str(m.catalog_id) if m else "Unknown"
        out.line(f"catalog: {rep['catalog']}")
    out.emit(rep)
    return EXIT_OK


def cmd_rmatrix_verify(args, out: _Out) -> int:
    lie = _load_algebra(args.lie, args.dim, lie=True)
    ok = is_r_matrix(lie, _matrix(args.r))
    out.line(f"r-matrix: {str(ok).lower()}")
    out.emit({"r_matrix": ok})
    return EXIT_OK if ok else EXIT_FALSE


def cmd_rmatrix_lsa(args, out: _Out) -> int:
    lie = _load_algebra(args.lie, args.dim, lie=True)
    r = _matrix(args.r)
    if not is_r_matrix(lie, r):
        out.line("r-matrix: false")
        out.emit({"r_matrix": False})
        return EXIT_FALSE
    a = lsa_from_r_matrix(lie, r)
    m = match_catalog(a, seed=args.seed)
    obj = algebra_to_json(a)
    out.line(f"left-symmetric: {str(is_left_symmetric(a)).lower()}")
    out.line(f"catalog: {m.catalog_id.cli_name if m else 'unknown'}")
    if args.output:
        Path(args.output).write_text(json.dumps(obj, indent=1) + "\n", encoding="utf-8")
        out.line(f"wrote {args.output}")
    else:
        out.line(json.dumps(obj, indent=1))
    out.emit({"r_matrix": True, "catalog": str(m.catalog_id) if m else "Unknown", "algebra": obj})
    return EXIT_OK


def cmd_burgers(args, out: _Out) -> int:
    a = _load_algebra(args.algebra, args.dim)
    alg = burgers.FloatAlgebra.from_algebra(a)
    try:
        spec = burgers.load_initial_spec(args.init)
    except OSError as exc:
        raise InputError(f"cannot read {args.init}: {exc.strerror}") from None
    s0 = burgers.initial_state(spec, args.points, args.length)
    if s0.dim != a.dim:
        raise InputError(f"initial condition has {s0.dim} components, algebra has {a.dim}")
    dt = args.dt if args.dt is not None else 0.2 * s0.dx ** 2
    cfg = burgers.SimConfig(dt=dt, t_max=args.t_max, output_stride=args.stride)
    try:
        traj = burgers.integrate(alg, s0, cfg)
    except burgers.InstabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FALSE
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            burgers.write_csv(traj, s0, fh)
        out.line(f"wrote {args.output}: {len(traj.times)} samples, {traj.steps} steps of dt = {traj.dt:.6g}")
        out.emit({"output": args.output, "samples": len(traj.times), "steps": traj.steps, "dt": traj.dt})
    else:
        text = burgers.write_csv(traj, s0)
        if args.json:
            out.emit({"samples": len(traj.times), "steps": traj.steps, "dt": traj.dt, "csv": text})
        else:
            sys.stdout.write(text)
    return EXIT_OK


# parser -----------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lsalg", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="emit {'command', 'result'} JSON")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized steps (default 0)")
    sub = p.add_subparsers(dest="command", required=True)

    def algebra_arg(sp, name="algebra"):
        sp.add_argument(name, help="algebra JSON file, or a catalog name such as a3.1 (needs --dim)")

    def dim_arg(sp):
        sp.add_argument("--dim", type=int, help="dimension when a catalog name is given")

    sp = sub.add_parser("catalog-list", help="list normal-form families")
    sp.set_defaults(func=cmd_catalog_list)

    sp = sub.add_parser("catalog-gen", help="write a normal form as algebra JSON")
    sp.add_argument("name", help="e.g. a3.1, a4:-1, a7:1/2, a3.2:1")
    sp.add_argument("--dim", type=int, required=True)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_catalog_gen)

    sp = sub.add_parser("verify", help="test left-symmetry")
    algebra_arg(sp)
    dim_arg(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("construct", help="build an algebra from linear-function data")
    kinds = sp.add_subparsers(dest="kind", required=True)
    k = kinds.add_parser("pair", help="x*y = f(y) x + g(x) y")
    k.add_argument("--f", required=True, help="comma-separated scalars")
    k.add_argument("--g", required=True)
    k.add_argument("-o", "--output")
    k = kinds.add_parser("extended", help="x*y = f(x) y + g(y) x + h(x, y) c")
    k.add_argument("spec", help="spec JSON file")
    k.add_argument("-o", "--output")
    k = kinds.add_parser("inner", help="u*v = (u, v) a + (u, a) v")
    k.add_argument("--a", required=True, help="comma-separated scalars")
    k.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("classify", help="left-symmetry case of a spec")
    sp.add_argument("spec")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("identify", help="normal form of a spec with witness")
    sp.add_argument("spec")
    sp.set_defaults(func=cmd_identify)

    sp = sub.add_parser("iso", help="isomorphism test")
    algebra_arg(sp, "a")
    algebra_arg(sp, "b")
    dim_arg(sp)
    sp.set_defaults(func=cmd_iso)

    sp = sub.add_parser("properties", help="property report")
    algebra_arg(sp)
    dim_arg(sp)
    sp.add_argument("--match", action="store_true", help="also look up the catalog normal form")
    sp.set_defaults(func=cmd_properties)

    for name, func, help_ in (("rmatrix-verify", cmd_rmatrix_verify, "check a classical r-matrix"),
                              ("rmatrix-lsa", cmd_rmatrix_lsa, "algebra x*y = [R x, y]")):
        sp = sub.add_parser(name, help=help_)
        algebra_arg(sp, "lie")
        dim_arg(sp)
        sp.add_argument("--r", required=True, help="matrix rows separated by ';', e.g. '1,0;0,0'")
        if name == "rmatrix-lsa":
            sp.add_argument("-o", "--output")
        sp.set_defaults(func=func)

    sp = sub.add_parser("burgers", help="integrate the generalized Burgers equation")
    algebra_arg(sp)
    dim_arg(sp)
    sp.add_argument("--init", required=True, help="initial-condition JSON")
    sp.add_argument("--points", type=int, default=128, help="grid size N")
    sp.add_argument("--length", type=float, default=2 * math.pi, help="period L")
    sp.add_argument("--dt", type=float, help="time step (default 0.2 dx^2)")
    sp.add_argument("--t-max", type=float, required=True)
    sp.add_argument("--stride", type=int, default=1, help="sample every this many steps")
    sp.add_argument("-o", "--output", help="CSV file (stdout if omitted)")
    sp.set_defaults(func=cmd_burgers)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    out = _Out(args.command, args.json)
    try:
        return args.func(args, out)
    except (InputError, FormatError, CatalogError, DimensionError, JacobiError, ValueError,
            ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT


def run(argv) -> int:
    return main(argv)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
