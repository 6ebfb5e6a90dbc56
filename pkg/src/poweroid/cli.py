"""Command-line front end.

Exit codes: 0 success, 1 domain or usage error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import formats, interp, poweroids, verify
from .errors import PoweroidError, SpecError
from .operators import OperatorSpec, op_compose, parse_spec, series_spec
from .series import Polynomial, format_rational, parse_rational

DEFAULT_MAX_ORDER = 64
SUBCOMMANDS = ("triangle", "poweroid", "invert", "compose", "connect", "interpolate", "expand", "verify")
FORMATS = ("json", "csv", "pretty")


class UsageError(PoweroidError):
    def __init__(self, message, token=None, position=None):
        self.token = token
        self.position = position
        where = f"argv[{position}] {token!r}: " if position is not None else ""
        super().__init__(f"usage error: {where}{message}")


@dataclass(frozen=True)
class Command:
    subcommand: str
    ops: tuple[OperatorSpec, ...] = ()
    n: int | None = None
    format: str = "json"
    out: str | None = None
    seed: int = 0
    kind: str = "g"
    route: str = "transfer"
    poly: tuple[Fraction, ...] | None = None
    exp: Fraction | None = None
    table: str | None = None
    suite: str = "all"
    max_order: int = DEFAULT_MAX_ORDER

    def to_argv(self) -> list[str]:
        """Render an invocation that parses back to this command."""
        argv = [self.subcommand]
        if self.subcommand in ("compose", "connect"):
            argv += ["--op1", self.ops[0].render(), "--op2", self.ops[1].render()]
        elif self.ops:
            argv += ["--op", self.ops[0].render()]
        if self.n is not None:
            argv += ["--n", str(self.n)]
        if self.subcommand == "triangle":
            argv += ["--kind", self.kind]
        if self.subcommand == "poweroid":
            argv += ["--route", self.route]
        if self.poly is not None:
            argv += ["--poly", ",".join(format_rational(c) for c in self.poly)]
        if self.exp is not None:
            argv += ["--exp", format_rational(self.exp)]
        if self.table is not None:
            argv += ["--table", self.table]
        if self.subcommand == "verify":
            argv += ["--suite", self.suite, "--seed", str(self.seed)]
        argv += ["--format", self.format, "--max-order", str(self.max_order)]
        if self.out is not None:
            argv += ["--out", self.out]
        return argv


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational_list(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(parse_rational(c) for c in text.split(","))
    except PoweroidError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except PoweroidError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="poweroid", description="Exact delta-operator and poweroid calculus.")
    sub = parser.add_subparsers(dest="subcommand", metavar="{" + ",".join(SUBCOMMANDS) + "}")
    sub.required = True

    def add(name, help_text, single_op=True, pair=False, needs_n=True):
        p = sub.add_parser(name, help=help_text)
        if single_op:
            p.add_argument("--op", required=True, metavar="SPEC", help="operator spec")
        if pair:
            p.add_argument("--op1", "--from", dest="op1", required=True, metavar="SPEC")
            p.add_argument("--op2", "--to", dest="op2", required=True, metavar="SPEC")
        if needs_n:
            p.add_argument("--n", type=int, required=True, metavar="INT", help="largest index N")
        p.add_argument("--format", choices=FORMATS, default="json")
        p.add_argument("--out", metavar="PATH", help="write the document here instead of stdout")
        p.add_argument("--max-order", type=int, default=None, metavar="INT", help="order ceiling")
        return p

    p = add("triangle", "first- or second-kind coefficient triangle")
    p.add_argument("--kind", choices=("g", "gbar"), default="g")
    p = add("poweroid", "poweroid sequence b_0..b_N")
    p.add_argument("--route", choices=("transfer", "rodrigues"), default="transfer")
    add("invert", "second-kind triangle, checked as the inverse of the first kind")
    add("compose", "umbral composition of two poweroid sequences", single_op=False, pair=True)
    add("connect", "connection constants expressing b1_n in the b2 basis", single_op=False, pair=True)
    p = add("interpolate", "polynomial from a table of generalized differences at 0", needs_n=False)
    p.add_argument("--table", default="-", metavar="PATH", help="one rational per line; '-' is stdin")
    p = add("expand", "poweroid expansion of a polynomial, or of exp(r x) in powers of phi", needs_n=False)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--poly", type=_rational_list, metavar="C0,C1,...", help="polynomial coefficients")
    group.add_argument("--exp", type=_rational, metavar="RAT", help="expand exp(r x); needs --n")
    p.add_argument("--n", type=int, default=None, metavar="INT")
    p = add("verify", "run the self-check suite", single_op=False, needs_n=False)
    p.add_argument("--suite", choices=verify.SUITES, default="all")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _locate(argv: list[str], token: str) -> int | None:
    for i, tok in enumerate(argv):
        if tok == token or tok.endswith("=" + token):
            return i
    return None


def _ceiling(env) -> int:
    raw = env.get("POWEROID_MAX_ORDER")
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"POWEROID_MAX_ORDER must be an integer, got {raw!r}") from None


def parse_args(argv: list[str], env=None) -> Command:
    """Validate ``argv`` into a :class:`Command`; raises :class:`UsageError`."""
    argv = list(argv)
    env = os.environ if env is None else env
    if argv and not argv[0].startswith("-") and argv[0] not in SUBCOMMANDS:
        raise UsageError(f"unknown subcommand; choose from {', '.join(SUBCOMMANDS)}", argv[0], 0)
    try:
        ns = build_parser().parse_args(argv)
    except UsageError as exc:
        msg = str(exc).removeprefix("usage error: ")
        for i, tok in enumerate(argv):
            if f"'{tok}'" in msg or (tok.startswith("--") and tok in msg.split()):
                raise UsageError(msg, tok, i) from None
        raise
    max_order = ns.max_order if ns.max_order is not None else _ceiling(env)

    texts = [ns.op] if getattr(ns, "op", None) else []
    if getattr(ns, "op1", None):
        texts = [ns.op1, ns.op2]
    specs = []
    for text in texts:
        try:
            specs.append(parse_spec(text))
        except SpecError as exc:
            raise UsageError(str(exc), text, _locate(argv, text)) from None

    n = getattr(ns, "n", None)
    if n is not None:
        if n < 0:
            raise UsageError("--n must be non-negative", str(n), _locate(argv, str(n)))
        if n > max_order:
            raise UsageError(f"order {n} exceeds ceiling {max_order} (raise with --max-order)", str(n), _locate(argv, str(n)))
    if ns.subcommand == "expand" and ns.exp is not None and n is None:
        raise UsageError("expand --exp needs --n")
    poly = getattr(ns, "poly", None)
    if poly is not None and len(poly) - 1 > max_order:
        raise UsageError(f"polynomial degree exceeds ceiling {max_order}", None, _locate(argv, "--poly"))

    # Delta-operator invariants are checked here so bad specs fail before dispatch.
    order = max(n or 0, len(poly) - 1 if poly else 0, 2)
    for text, spec in zip(texts, specs):
        try:
            spec.build(order)
        except PoweroidError as exc:
            raise UsageError(str(exc), text, _locate(argv, text)) from None

    return Command(
        subcommand=ns.subcommand,
        ops=tuple(specs),
        n=n,
        format=ns.format,
        out=ns.out,
        seed=getattr(ns, "seed", 0),
        kind=getattr(ns, "kind", "g"),
        route=getattr(ns, "route", "transfer"),
        poly=poly,
        exp=getattr(ns, "exp", None),
        table=getattr(ns, "table", None),
        suite=getattr(ns, "suite", "all"),
        max_order=max_order,
    )


# ---------------------------------------------------------------------------
# dispatch


def _emit_triangle(cmd: Command, tri, label: str, phi, **extra) -> str:
    if cmd.format == "csv":
        return formats.triangle_to_csv(tri)
    if cmd.format == "pretty":
        return formats.triangle_to_pretty(tri, label, phi)
    return formats.triangle_to_json(tri, label, **extra)


def _emit_sequence(cmd: Command, seq, label: str, **extra) -> str:
    if cmd.format == "csv":
        return formats.sequence_to_csv(seq)
    if cmd.format == "pretty":
        return formats.sequence_to_pretty(seq, label)
    return formats.dumps(formats.sequence_document(seq, label, **extra))


def _emit_coeffs(cmd: Command, label: str, coeffs, **extra) -> str:
    if cmd.format == "csv":
        return formats._csv([formats.rationals(coeffs)])
    if cmd.format == "pretty":
        body = "\n".join(f"c_{nu} = {format_rational(c)}" for nu, c in enumerate(coeffs))
        return f"# expansion for {label}\n{body}\n"
    doc = {"operator": label}
    doc.update(extra)
    doc["coeffs"] = formats.rationals(coeffs)
    return formats.dumps(doc)


def _read_table(path: str, stdin) -> list[Fraction]:
    text = stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    values = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            values.append(parse_rational(line))
        except PoweroidError as exc:
            raise PoweroidError(f"difference table line {lineno}: {exc}") from None
    if not values:
        raise PoweroidError("difference table is empty")
    return values


def _render(cmd: Command, stdin) -> tuple[str, int]:
    sc = cmd.subcommand
    if sc == "verify":
        results = verify.run_suite(cmd.suite, cmd.seed)
        failed = sum(not r.passed for r in results)
        if cmd.format == "json":
            doc = {
                "suite": cmd.suite,
                "seed": cmd.seed,
                "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
                "passed": len(results) - failed,
                "failed": failed,
            }
            text = formats.dumps(doc)
        elif cmd.format == "csv":
            text = formats._csv([["check", "passed", "detail"]] + [[r.name, str(r.passed).lower(), r.detail] for r in results])
        else:
            lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name}" + (f"  ({r.detail})" if r.detail else "") for r in results]
            lines.append(f"verify suite={cmd.suite} seed={cmd.seed}: {len(results)} checks, {len(results) - failed} passed, {failed} failed")
            text = "\n".join(lines) + "\n"
        return text, 2 if failed else 0

    label = cmd.ops[0].render() if cmd.ops else None
    if sc in ("triangle", "poweroid", "invert"):
        op = cmd.ops[0].build(max(cmd.n, 2))
        if sc == "triangle":
            build = poweroids.triangle_first_kind if cmd.kind == "g" else poweroids.triangle_second_kind
            return _emit_triangle(cmd, build(op, cmd.n), label, op.phi), 0
        if sc == "poweroid":
            gen = poweroids.basic_sequence_transfer if cmd.route == "transfer" else poweroids.basic_sequence_rodrigues
            return _emit_sequence(cmd, gen(op, cmd.n), label), 0
        g = poweroids.triangle_first_kind(op, cmd.n)
        gbar = poweroids.triangle_second_kind(op, cmd.n)
        check = poweroids.triangle_invert_check(g, gbar)
        if not check.ok:
            raise _VerificationFailed(f"g @ gbar is not the identity; first bad entry {check.witness}")
        return _emit_triangle(cmd, gbar, label, op.phi), 0

    if sc in ("compose", "connect"):
        order = max(cmd.n, 2)
        op1, op2 = (s.build(order) for s in cmd.ops)
        names = {"op1": cmd.ops[0].render(), "op2": cmd.ops[1].render()}
        if sc == "compose":
            seq = poweroids.umbral_compose(
                poweroids.basic_sequence_transfer(op1, cmd.n), poweroids.basic_sequence_transfer(op2, cmd.n)
            )
            return _emit_sequence(cmd, seq, series_spec(op_compose(op1, op2)).render(), **names), 0
        theta3 = poweroids.connection_operator(op1, op2)
        tri = poweroids.connection_constants(op1, op2, cmd.n)
        return _emit_triangle(cmd, tri, series_spec(theta3).render(), theta3.phi, **names), 0

    if sc == "interpolate":
        diffs = _read_table(cmd.table, stdin)
        if len(diffs) - 1 > cmd.max_order:
            raise PoweroidError(f"difference table longer than order ceiling {cmd.max_order}")
        op = cmd.ops[0].build(max(len(diffs) - 1, 2))
        p = interp.interpolate(op, diffs)
        if cmd.format == "csv":
            return formats.polynomial_to_csv(p), 0
        if cmd.format == "pretty":
            return f"# interpolant for {label}\n{p}\n", 0
        return formats.polynomial_to_json(p), 0

    # expand
    if cmd.exp is not None:
        op = cmd.ops[0].build(max(cmd.n, 2))
        coeffs = interp.expand_in_phi(cmd.exp, op, cmd.n)
        return _emit_coeffs(cmd, label, coeffs, r=format_rational(cmd.exp)), 0
    f = Polynomial(cmd.poly)
    op = cmd.ops[0].build(max(f.degree, cmd.n or 0, 2))
    e = interp.expand(op, f)
    return _emit_coeffs(cmd, label, e.coeffs, polynomial=formats.rationals(f.coeffs)), 0


class _VerificationFailed(Exception):
    pass


def run(cmd: Command, stdout=None, stderr=None, stdin=None) -> int:
    """Execute ``cmd``; the document goes to ``cmd.out`` or ``stdout``."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    stdin = sys.stdin if stdin is None else stdin
    try:
        text, code = _render(cmd, stdin)
    except _VerificationFailed as exc:
        print(f"poweroid: verification failed: {exc}", file=stderr)
        return 2
    except (PoweroidError, OSError) as exc:
        print(f"poweroid: error: {exc}", file=stderr)
        return 1
    if cmd.out:
        with open(cmd.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cmd = parse_args(argv)
    except UsageError as exc:
        print(f"poweroid: {exc}", file=sys.stderr)
        return 1
    return run(cmd)


if __name__ == "__main__":
    sys.exit(main())
