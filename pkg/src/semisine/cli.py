"""Command line entry point.

Sub-commands: catalog, characters, solve, verify, hunt.  Every report
starts with a run manifest.  Exit codes: 0 pass, 1 violations or
unclassified findings, 2 usage or input errors.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .additive import solve_kannappan_additive
from .catalog import catalog, write_catalog
from .characters import check_prime_set_closure
from .cyclotomic import parse_cycnum
from .families import (context, enumerate_family_solutions, solve_multiplicative_kannappan,
                       solve_sine_subtraction)
from .hunter import HuntConfig, completeness_report, hunt
from .semigroup import Semigroup, SemigroupError, load_semigroup
from .verifier import CFunc, check_kannappan_sine, check_sine_subtraction

OUT_ENV = "SEMISINE_OUT"
EQUATIONS = ("kannappan-sine", "mult-kannappan", "sine-subtraction", "additive")


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    command: str
    inputs: list = field(default_factory=list)   # (path, sha256)
    z0: str | None = None
    seed: int | None = None
    version: str = __version__
    timestamp: str = ""
    options: dict = field(default_factory=dict)

    def lines(self) -> list[str]:
        out = ["# manifest", f"command: {self.command}", f"version: {self.version}",
               f"timestamp: {self.timestamp}"]
        for p, digest in self.inputs:
            out.append(f"input: {p} sha256={digest}")
        if self.z0 is not None:
            out.append(f"z0: {self.z0}")
        if self.seed is not None:
            out.append(f"seed: {self.seed}")
        for k in sorted(self.options):
            out.append(f"option {k}: {self.options[k]}")
        return out


def _timestamp() -> str:
    # SOURCE_DATE_EPOCH pins the stamp so reruns are byte-identical
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    t = int(epoch) if epoch and epoch.isdigit() else int(time.time())
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(t))


def _resolve_semigroup(ref: str) -> tuple[Semigroup, tuple[str, str]]:
    p = Path(ref)
    if p.is_file():
        data = p.read_bytes()
        return load_semigroup(p), (str(p), hashlib.sha256(data).hexdigest())
    named = {S.name.lower(): S for S in catalog()}
    if ref.lower() in named:
        S = named[ref.lower()]
        return S, (f"builtin:{S.name}", hashlib.sha256(S.to_text().encode()).hexdigest())
    raise UsageError(f"no semigroup file or built-in named {ref!r}")


def _z0(S: Semigroup, label: str) -> int:
    try:
        return S.index(label)
    except (KeyError, ValueError, IndexError):
        raise UsageError(f"z0 {label!r} is not an element of {S.name} (labels: {' '.join(S.labels)})") from None


def _values(text: str, n: int, exact: bool) -> CFunc:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != n:
        raise UsageError(f"expected {n} comma-separated values, got {len(parts)}")
    try:
        if exact:
            return CFunc(tuple(parse_cycnum(p) for p in parts), True)
        return CFunc(tuple(complex(p.replace(" ", "").replace("i", "j")) for p in parts), False)
    except ValueError as exc:
        raise UsageError(f"bad value list {text!r}: {exc}") from None


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


class Report:
    def __init__(self, manifest: RunManifest):
        self.manifest = manifest
        self.body: list[str] = []
        self.rows: list[list] = []

    def text(self, fmt: str) -> str:
        head = "\n".join(self.manifest.lines())
        if fmt == "csv":
            return "\n".join("# " + ln.lstrip("# ") for ln in self.manifest.lines()) + "\n" + _csv(self.rows)
        return head + "\n\n" + "\n".join(self.body) + "\n"


# sub-commands -----------------------------------------------------------------

def cmd_catalog(args, rep: Report) -> int:
    out = Path(args.out or os.environ.get(OUT_ENV) or "catalog")
    try:
        paths = write_catalog(out)
    except OSError as exc:
        raise OSError(f"cannot write catalog to {out}: {exc.strerror or exc}") from exc
    rep.body.append(f"wrote {len(paths)} semigroup files to {out}")
    rep.rows.append(["file", "order"])
    for p in paths:
        n = p.read_text().split("\n", 1)[0]
        rep.body.append(f"  {p.name}  order {n}")
        rep.rows.append([p.name, n])
    return 0


def cmd_characters(args, rep: Report) -> int:
    S = args._S
    ctx = context(S, 0)
    rep.body.append(f"semigroup {S.name} order {S.order}: {len(ctx.characters)} exponentials")
    rep.rows.append(["index"] + list(S.labels) + ["I", "I2", "P", "closure"])
    status = 0
    for k, chi in enumerate(ctx.characters):
        closure = check_prime_set_closure(chi)
        if not closure:
            status = 1
        rep.body.append(f"[{k}] {chi.describe()}  closure={'ok' if closure else 'FAIL'}")
        rep.rows.append([k] + [str(v) for v in chi.values]
                        + [S.fmt_set(chi.null_space), S.fmt_set(chi.null_square),
                           S.fmt_set(chi.prime_set), "ok" if closure else "fail"])
    return status


def cmd_solve(args, rep: Report) -> int:
    S, z = args._S, args._z
    eq = args.equation
    rep.rows.append(["family", "f", "g"])
    if eq == "kannappan-sine":
        sols = enumerate_family_solutions(S, z)
        rep.body += sols.report_lines()
        for w in sols:
            rep.rows.append([w.family, ";".join(map(str, w.f)), ";".join(map(str, w.g))])
    elif eq == "sine-subtraction":
        sols = solve_sine_subtraction(S, z)
        rep.body += sols.report_lines()
        for w in sols:
            rep.rows.append([w.family, ";".join(map(str, w.f)), ";".join(map(str, w.g))])
    elif eq == "mult-kannappan":
        sols = solve_multiplicative_kannappan(S, z)
        rep.body.append(f"f(xyz0) = f(x)f(y): {len(sols)} solutions (0 and chi(z0) chi)")
        for f in sols:
            rep.body.append(f"  f={f}")
            rep.rows.append(["mult", ";".join(map(str, f)), ""])
    else:
        basis = solve_kannappan_additive(S, z)
        rep.body.append(f"f(xyz0) = f(x) + f(y): solution space of dimension {len(basis)}")
        for b in basis:
            rep.body.append("  basis " + ", ".join(map(str, b)))
            rep.rows.append(["additive", ";".join(map(str, b)), ""])
        if not basis:
            rep.body.append("  only f = 0")
    return 0


def cmd_verify(args, rep: Report) -> int:
    S, z = args._S, args._z
    exact = not args.numeric
    f = _values(args.f, S.order, exact)
    g = _values(args.g, S.order, exact)
    check = check_kannappan_sine if args.equation == "sine" else check_sine_subtraction
    report = check(S, z, f, g, tol=args.tol)
    rep.body += report.lines(S)
    rep.rows.append(["x", "y", "lhs", "rhs"])
    for x, y, lhs, rhs in report.violations:
        rep.rows.append([S.labels[x], S.labels[y], str(lhs), str(rhs)])
    return 0 if report.passed else 1


def cmd_hunt(args, rep: Report) -> int:
    S, z = args._S, args._z
    cfg = HuntConfig(trials=args.trials, seed=args.seed, tol_converge=args.tol)
    result = hunt(S, z, args.equation, cfg)
    cat = enumerate_family_solutions(S, z) if args.equation == "sine" else None
    rep.body += completeness_report(S, z, result, cat).lines()
    rep.rows.append(["tag", "residual"] + [f"f({x})" for x in S.labels] + [f"g({x})" for x in S.labels])
    for s, c in zip(result.solutions, result.classifications):
        line = f"  {str(c):<12} residual={s.residual:.2e}  f=" + _fmt_vec(s.f) + "  g=" + _fmt_vec(s.g)
        if args.verbose:
            rep.body.append(line)
        rep.rows.append([str(c), f"{s.residual:.3e}"] + [_fmt_c(v) for v in s.f] + [_fmt_c(v) for v in s.g])
    for s in result.unclassified:
        rep.body.append("  unclassified f=" + _fmt_vec(s.f) + " g=" + _fmt_vec(s.g))
    return 0 if not result.unclassified else 1


def _fmt_c(v: complex) -> str:
    v = complex(v)
    return f"{v.real:.12g}{v.imag:+.12g}j"


def _fmt_vec(vs) -> str:
    return "(" + ", ".join(_fmt_c(v) for v in vs) + ")"


# parser -----------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser, suppress: bool) -> None:
    # global flags are accepted before or after the sub-command
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--seed", type=int, default=d(0), help="random seed (hunt)")
    p.add_argument("--out", default=d(None), help=f"output directory (default: ${OUT_ENV}; stdout only if unset)")
    p.add_argument("--format", choices=("text", "csv"), default=d("text"))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="semisine", description="solve and check f(xyz0) = f(x)g(y) + f(y)g(x) on finite semigroups")
    _add_common(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        _add_common(sp, suppress=True)
        return sp

    def with_sg(name, help_, z0=True):
        sp = add(name, help_)
        sp.add_argument("--semigroup", required=True, help="table file or built-in catalog name")
        if z0:
            sp.add_argument("--z0", required=True, help="label of the fixed element")
        return sp

    add("catalog", "write the bundled corpus")
    with_sg("characters", "list exponentials with null-space data", z0=False)
    sp = with_sg("solve", "exact solution families")
    sp.add_argument("--equation", choices=EQUATIONS, default="kannappan-sine")
    sp = with_sg("verify", "exhaustive check of a given pair")
    sp.add_argument("--f", required=True, help="comma-separated values")
    sp.add_argument("--g", required=True, help="comma-separated values")
    sp.add_argument("--equation", choices=("sine", "subtraction"), default="sine")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", default=True)
    mode.add_argument("--numeric", action="store_true", default=False)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp = with_sg("hunt", "numeric completeness search")
    sp.add_argument("--equation", choices=("sine", "subtraction"), default="sine")
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--tol", type=float, default=1e-6)
    sp.add_argument("--verbose", action="store_true", default=False)
    return p


COMMANDS = {"catalog": cmd_catalog, "characters": cmd_characters, "solve": cmd_solve,
            "verify": cmd_verify, "hunt": cmd_hunt}


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    manifest = RunManifest(command=" ".join(["semisine"] + argv), timestamp=_timestamp())
    try:
        if hasattr(args, "semigroup"):
            S, meta = _resolve_semigroup(args.semigroup)
            args._S = S
            manifest.inputs.append(meta)
            if hasattr(args, "z0"):
                args._z = _z0(S, args.z0)
                manifest.z0 = args.z0
        if args.command == "hunt":
            manifest.seed = args.seed
            manifest.options.update(trials=args.trials, tol=args.tol, equation=args.equation)
        rep = Report(manifest)
        status = COMMANDS[args.command](args, rep)
    except (UsageError, SemigroupError, ValueError) as exc:
        print(f"semisine: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"semisine: error: {exc}", file=sys.stderr)
        return 2
    text = rep.text(args.format)
    out = args.out or os.environ.get(OUT_ENV)
    if out and args.command != "catalog":
        d = Path(out)
        try:
            d.mkdir(parents=True, exist_ok=True)
            ext = "csv" if args.format == "csv" else "txt"
            (d / f"{args.command}.{ext}").write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"semisine: error: cannot write report to {d}: {exc}", file=sys.stderr)
            return 2
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
