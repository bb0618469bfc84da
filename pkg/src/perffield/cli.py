"""Calculator-style command interface over the whole library.

A session fixes a prime p, a variable count d, a mode (perfect or
level0), and a level cap; commands then evaluate expressions in the
perfect closure, decompose polynomials in t, and poke at the finite
fields. Output is canonical text, or single-line JSON objects
(schema 1) when JSON mode is on.

Exit codes in batch mode: 0 clean, 1 evaluation error, 2 usage or
parse error. The first error stops a batch run unless --keep-going.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import fqtower, parser, septools
from .errors import (
    BoundExceeded,
    DivisionByZero,
    EvalError,
    NotPerfectMode,
    ParseError,
    PerffieldError,
    SourceError,
    UnknownCommand,
    UnknownVariable,
    UsageError,
)
from .perfclosure import PerfContext, PerfElem
from .primefield import is_prime
from .septools import UniPoly

# desk-scale guards on expression evaluation
MAX_T_DEGREE = 1 << 16
MAX_MULTITERM_EXP = 1 << 12

_LET_RE = re.compile(r"^\s*([A-Za-z_]\w*)\s*=\s*(\S.*)$")
_RESERVED = {"t", "root"}


class Session:
    """Mutable REPL state: the algebra context plus bindings and flags."""

    def __init__(
        self,
        p: int,
        nvars: int,
        mode: str = "perfect",
        max_level: int = 64,
        json_mode: bool = False,
    ):
        if mode not in ("perfect", "level0"):
            raise UsageError(f"mode must be 'perfect' or 'level0', got {mode!r}")
        self.ctx = PerfContext(p, nvars, max_level)
        self.mode = mode
        self.json_mode = json_mode
        self.bindings: dict[str, object] = {}
        self.var_index = {f"x{i + 1}": i for i in range(nvars)}

    @property
    def p(self) -> int:
        return self.ctx.p


# -- expression evaluation ------------------------------------------------------


def _wrap(err: Exception, node: parser.Node, base: int) -> EvalError:
    return EvalError(err, base + node.start, base + node.end)


def _promote(a, b, session: Session):
    if isinstance(a, UniPoly) and isinstance(b, PerfElem):
        return a, UniPoly.const(a.ctx, b, a.mode)
    if isinstance(a, PerfElem) and isinstance(b, UniPoly):
        return UniPoly.const(b.ctx, a, b.mode), b
    return a, b


def eval_ast(node: parser.Node, session: Session, base: int = 0):
    """Evaluate a parsed expression to a PerfElem or a UniPoly; algebra
    failures come back as EvalError with the offending source span."""
    try:
        return _ev(node, session, base)
    except SourceError:
        raise
    except PerffieldError as err:
        raise _wrap(err, node, base) from err


def _ev(node: parser.Node, session: Session, base: int):
    ctx = session.ctx
    if isinstance(node, parser.Num):
        return ctx.const(node.value)
    if isinstance(node, parser.Name):
        return _resolve_name(node, session, base)
    if isinstance(node, parser.Unary):
        return -_ev(node.operand, session, base)
    if isinstance(node, parser.BinOp):
        lhs = _ev(node.lhs, session, base)
        rhs = _ev(node.rhs, session, base)
        lhs, rhs = _promote(lhs, rhs, session)
        try:
            if node.op == "+":
                return lhs + rhs
            if node.op == "-":
                return lhs - rhs
            if node.op == "*":
                return lhs * rhs
            # division: exact division for polynomials, field division otherwise
            if isinstance(lhs, UniPoly):
                if rhs.is_zero:
                    raise DivisionByZero("polynomial division by zero")
                if rhs.is_constant:
                    return lhs.scale(rhs.coeff(0).inv())
                return lhs.divexact(rhs)
            return lhs / rhs
        except PerffieldError as err:
            raise _wrap(err, node, base) from err
    if isinstance(node, parser.Pow):
        value = _ev(node.base, session, base)
        try:
            return _checked_pow(value, node.exponent)
        except (PerffieldError, ValueError) as err:
            raise _wrap(err, node, base) from err
    if isinstance(node, parser.Root):
        arg = _ev(node.arg, session, base)
        if isinstance(arg, UniPoly):
            raise _wrap(
                UsageError("the indeterminate t cannot appear under root(...)"),
                node,
                base,
            )
        try:
            out = arg.pn_root(node.depth)
        except PerffieldError as err:
            raise _wrap(err, node, base) from err
        if session.mode == "level0" and out.level > 0:
            raise _wrap(
                NotPerfectMode(
                    f"root leaves Z_{session.p}(X); level0 mode has no p-th roots "
                    f"for this element"
                ),
                node,
                base,
            )
        return out
    raise TypeError(f"unhandled syntax node {type(node).__name__}")


def _resolve_name(node: parser.Name, session: Session, base: int):
    name = node.name
    if name == "t":
        return UniPoly.t_var(session.ctx, session.mode)
    idx = session.var_index.get(name)
    if idx is not None:
        return session.ctx.variable(idx)
    bound = session.bindings.get(name)
    if bound is None:
        raise UnknownVariable(name, base + node.start, base + node.end)
    if isinstance(bound, PerfElem):
        if session.mode == "level0" and bound.level > 0:
            raise _wrap(
                NotPerfectMode(f"binding '{name}' lies outside Z_{session.p}(X)"),
                node,
                base,
            )
        return bound
    if bound.mode != session.mode:
        try:
            return bound.with_mode(session.mode)
        except PerffieldError as err:
            raise _wrap(err, node, base) from err
    return bound


def _checked_pow(value, e: int):
    if isinstance(value, UniPoly):
        if e < 0:
            raise ValueError("polynomials cannot be raised to negative powers")
        deg = value.degree
        if deg and deg * e > MAX_T_DEGREE:
            raise BoundExceeded(
                f"resulting t-degree {deg * e} exceeds the limit {MAX_T_DEGREE}"
            )
        return value**e
    multiterm = len(value.body.num.terms) > 1 or len(value.body.den.terms) > 1
    if multiterm and abs(e) > MAX_MULTITERM_EXP:
        raise BoundExceeded(
            f"exponent {e} too large for a multi-term base (limit {MAX_MULTITERM_EXP})"
        )
    return value**e


def _parse_full(text: str, base: int) -> parser.Node:
    try:
        return parser.parse_expression(text)
    except SourceError as err:
        err.start += base
        err.end += base
        raise


def _parse_prefix(text: str, base: int):
    try:
        return parser.parse_prefix(text)
    except SourceError as err:
        err.start += base
        err.end += base
        raise


def eval_text(session: Session, text: str, base: int = 0):
    return eval_ast(_parse_full(text, base), session, base)


# -- value rendering -------------------------------------------------------------


def value_json(value) -> dict:
    if isinstance(value, PerfElem):
        out = {"kind": "element"}
        out.update(value.to_json())
        return out
    return {
        "kind": "poly",
        "mode": value.mode,
        "coeffs": [value_json(c) for c in value.coeffs],
    }


def _render_value(value) -> str:
    return str(value)


# -- command dispatch --------------------------------------------------------------


_WORD_RE = re.compile(r"\s*(\S+)\s*")


def run_command(line: str, session: Session) -> str | None:
    """Execute one command line; returns the output text (None for lines
    that produce none), raising structured errors otherwise."""
    if not line.strip() or line.lstrip().startswith("#"):
        return None
    m = _WORD_RE.match(line)
    word = m.group(1)
    handler = _COMMANDS.get(word)
    if handler is None:
        raise UnknownCommand(
            f"unknown command '{word}' (expected one of: {', '.join(sorted(_COMMANDS))})"
        )
    base = m.end()
    return handler(session, line[base:].rstrip(), base)


def _reply(session: Session, text: str, **fields) -> str:
    if not session.json_mode:
        return text
    payload = {"schema": 1, "ok": True}
    payload.update(fields)
    return json.dumps(payload)


def _cmd_let(session: Session, rest: str, base: int) -> str:
    m = _LET_RE.match(rest)
    if not m:
        raise UsageError("usage: let <name> = <expr>")
    name = m.group(1)
    if name in _RESERVED or name in session.var_index:
        raise UsageError(f"'{name}' is reserved and cannot be rebound")
    expr = m.group(2)
    value = eval_text(session, expr, base + m.start(2))
    session.bindings[name] = value
    return _reply(
        session,
        f"{name} = {_render_value(value)}",
        command="let",
        name=name,
        value=value_json(value),
    )


def _cmd_eval(session: Session, rest: str, base: int) -> str:
    if not rest:
        raise UsageError("usage: eval <expr>")
    value = eval_text(session, rest, base)
    return _reply(
        session, _render_value(value), command="eval", value=value_json(value)
    )


def _expr_then_int(session: Session, rest: str, base: int, default=None):
    node, stop = _parse_prefix(rest, base)
    tail = rest[stop:].strip()
    if not tail:
        if default is None:
            raise UsageError("missing trailing integer argument")
        k = default
    else:
        if not tail.lstrip("-").isdigit():
            raise UsageError(f"expected an integer after the expression, got {tail!r}")
        k = int(tail)
    value = eval_ast(node, session, base)
    return value, k, node


def _cmd_pthroot(session: Session, rest: str, base: int) -> str:
    if not rest:
        raise UsageError("usage: pthroot <expr> [k]")
    value, k, node = _expr_then_int(session, rest, base, default=1)
    if isinstance(value, UniPoly):
        raise UsageError("pthroot applies to field elements; use prootpoly for polynomials")
    if k < 0:
        raise UsageError("root depth must be non-negative")
    try:
        out = value.pn_root(k)
    except PerffieldError as err:
        raise _wrap(err, node, base) from err
    if session.mode == "level0" and out.level > 0:
        raise _wrap(
            NotPerfectMode(f"root leaves Z_{session.p}(X) in level0 mode"), node, base
        )
    return _reply(session, _render_value(out), command="pthroot", value=value_json(out))


def _cmd_frob(session: Session, rest: str, base: int) -> str:
    if not rest:
        raise UsageError("usage: frob <expr> [k]")
    value, k, node = _expr_then_int(session, rest, base, default=1)
    if isinstance(value, UniPoly):
        raise UsageError("frob applies to field elements")
    if k < 0:
        raise UsageError("frobenius count must be non-negative")
    out = value.frobenius_iter(k)
    return _reply(session, _render_value(out), command="frob", value=value_json(out))


def _cmd_level(session: Session, rest: str, base: int) -> str:
    if not rest:
        raise UsageError("usage: level <expr>")
    value = eval_text(session, rest, base)
    if isinstance(value, UniPoly):
        raise UsageError("level applies to field elements")
    return _reply(session, str(value.level), command="level", value=value.level)


def _poly_arg(session: Session, rest: str, base: int):
    node = _parse_full(rest, base)
    value = eval_ast(node, session, base)
    if isinstance(value, PerfElem):
        value = UniPoly.const(session.ctx, value, session.mode)
    return value, node


def _cmd_issep(session: Session, rest: str, base: int) -> str:
    if not rest:
        raise UsageError("usage: issep <poly>")
    f, node = _poly_arg(session, rest, base)
    try:
        ans = septools.is_separable(f)
    except PerffieldError as err:
        raise _wrap(err, node, base) from err
    return _reply(session, "true" if ans else "false", command="issep", value=ans)


def _cmd_sqfree(session: Session, rest: str, base: int) -> str:
    if not rest:
        raise UsageError("usage: sqfree <poly>")
    f, node = _poly_arg(session, rest, base)
    try:
        dec = septools.squarefree_decomposition(f)
    except PerffieldError as err:
        raise _wrap(err, node, base) from err
    return _reply(
        session,
        str(dec),
        command="sqfree",
        unit=value_json(dec.unit),
        parts=[
            {"factor": value_json(g), "multiplicity": m} for g, m in dec.parts
        ],
    )


def _cmd_sepdec(session: Session, rest: str, base: int) -> str:
    if not rest:
        raise UsageError("usage: sepdec <poly>")
    f, node = _poly_arg(session, rest, base)
    try:
        dec = septools.separable_decomposition(f)
    except PerffieldError as err:
        raise _wrap(err, node, base) from err
    return _reply(
        session,
        f"s = {dec.s}, e = {dec.e}",
        command="sepdec",
        s=value_json(dec.s),
        e=dec.e,
    )


def _cmd_prootpoly(session: Session, rest: str, base: int) -> str:
    if not rest:
        raise UsageError("usage: prootpoly <poly>")
    f, node = _poly_arg(session, rest, base)
    try:
        g = septools.pth_root_poly(f)
    except PerffieldError as err:
        raise _wrap(err, node, base) from err
    return _reply(session, _render_value(g), command="prootpoly", value=value_json(g))


def _ints(parts: list[str], n: int, usage: str) -> list[int]:
    if len(parts) != n or not all(s.lstrip("-").isdigit() for s in parts):
        raise UsageError(usage)
    return [int(s) for s in parts]


def _cmd_fq(session: Session, rest: str, base: int) -> str:
    parts = rest.split()
    if not parts:
        raise UsageError(
            "usage: fq make|frob|invfrob|perfect-check|embed ..."
        )
    sub, args = parts[0], parts[1:]
    if sub == "make":
        p, n = _ints(args, 2, "usage: fq make <p> <n>")
        field = fqtower.make_field(p, n)
        return _reply(
            session,
            f"F_{p}^{n}: modulus {field.modulus_str()}",
            command="fq make",
            p=p,
            n=n,
            modulus=field.modulus_str(),
        )
    if sub in ("frob", "invfrob"):
        p, n, enc = _ints(args, 3, f"usage: fq {sub} <p> <n> <element-encoding>")
        field = fqtower.make_field(p, n)
        if not 0 <= enc < field.order:
            raise UsageError(
                f"element encoding must lie in [0, {field.order}), got {enc}"
            )
        a = field.from_encoding(enc)
        out = a.frobenius() if sub == "frob" else a.inv_frobenius()
        return _reply(
            session,
            f"{out} (encoding {out.encode()})",
            command=f"fq {sub}",
            result=str(out),
            encoding=out.encode(),
        )
    if sub == "perfect-check":
        p, n = _ints(args, 2, "usage: fq perfect-check <p> <n>")
        report = fqtower.check_perfect(fqtower.make_field(p, n))
        return _reply(
            session,
            report.summary(),
            command="fq perfect-check",
            passed=report.passed,
            size=report.size,
            order=report.order,
        )
    if sub == "embed":
        p, m, n, enc = _ints(args, 4, "usage: fq embed <p> <m> <n> <element-encoding>")
        source = fqtower.make_field(p, m)
        target = fqtower.make_field(p, n)
        if not 0 <= enc < source.order:
            raise UsageError(
                f"element encoding must lie in [0, {source.order}), got {enc}"
            )
        out = fqtower.embed(source.from_encoding(enc), target)
        return _reply(
            session,
            f"{out} (encoding {out.encode()})",
            command="fq embed",
            result=str(out),
            encoding=out.encode(),
        )
    raise UsageError(f"unknown fq subcommand '{sub}'")


def _cmd_mode(session: Session, rest: str, base: int) -> str:
    if rest not in ("perfect", "level0"):
        raise UsageError("usage: mode perfect|level0")
    session.mode = rest
    return _reply(session, f"mode = {rest}", command="mode", value=rest)


def _cmd_json(session: Session, rest: str, base: int) -> str:
    if rest not in ("on", "off"):
        raise UsageError("usage: json on|off")
    session.json_mode = rest == "on"
    return _reply(session, f"json = {rest}", command="json", value=rest)


_COMMANDS = {
    "let": _cmd_let,
    "eval": _cmd_eval,
    "pthroot": _cmd_pthroot,
    "frob": _cmd_frob,
    "level": _cmd_level,
    "issep": _cmd_issep,
    "sqfree": _cmd_sqfree,
    "sepdec": _cmd_sepdec,
    "prootpoly": _cmd_prootpoly,
    "fq": _cmd_fq,
    "mode": _cmd_mode,
    "json": _cmd_json,
}


# -- error rendering and process entry ------------------------------------------------


def classify_exit(err: Exception) -> int:
    """2 for usage/parse problems, 1 for evaluation failures."""
    if isinstance(err, (ParseError, UnknownVariable, UsageError)):
        return 2
    return 1


def render_error(err: Exception, json_mode: bool) -> str:
    if json_mode:
        payload: dict = {
            "schema": 1,
            "ok": False,
            "error": {"kind": type(err).__name__, "message": str(err)},
        }
        if isinstance(err, SourceError):
            payload["error"]["start"] = err.start
            payload["error"]["end"] = err.end
        return json.dumps(payload)
    if isinstance(err, SourceError):
        if err.start == err.end:
            return f"error[offset {err.start}]: {err}"
        return f"error[{err.start}..{err.end}]: {err}"
    return f"error: {err}"


def _run_lines(lines, session: Session, keep_going: bool) -> int:
    worst = 0
    for line in lines:
        try:
            out = run_command(line, session)
        except PerffieldError as err:
            code = classify_exit(err)
            print(render_error(err, session.json_mode), file=sys.stderr)
            if not keep_going:
                return code
            worst = max(worst, code)
            continue
        if out is not None:
            print(out)
    return worst


def _repl(session: Session) -> int:
    print(
        f"perffield: p={session.p}, vars={session.ctx.nvars}, mode={session.mode} "
        f"(commands: {', '.join(sorted(_COMMANDS))})"
    )
    while True:
        try:
            line = input("perffield> ")
        except EOFError:
            print()
            return 0
        except KeyboardInterrupt:
            print()
            continue
        try:
            out = run_command(line, session)
        except PerffieldError as err:
            print(render_error(err, session.json_mode), file=sys.stderr)
            continue
        if out is not None:
            print(out)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="perffield",
        description=(
            "calculator for the perfect closure of Z_p(x1..xd): expression "
            "evaluation, p-th roots, separability decompositions, and finite "
            "subfield checks"
        ),
    )
    ap.add_argument("--p", type=int, default=2, help="prime characteristic (default 2)")
    ap.add_argument("--vars", type=int, default=1, help="number of ground variables")
    ap.add_argument(
        "--mode", choices=("perfect", "level0"), default="perfect",
        help="perfect closure, or its level-0 subfield Z_p(X)",
    )
    ap.add_argument("--script", metavar="FILE", help="run commands from FILE and exit")
    ap.add_argument("--json", action="store_true", help="start with JSON output on")
    ap.add_argument("--max-level", type=int, default=64, help="cap on root-taking depth")
    ap.add_argument(
        "--keep-going", action="store_true",
        help="in batch mode, report errors but keep running",
    )
    args = ap.parse_args(argv)

    if not is_prime(args.p):
        print(f"error: --p must be prime, got {args.p}", file=sys.stderr)
        return 2
    if args.vars < 0:
        print(f"error: --vars must be non-negative, got {args.vars}", file=sys.stderr)
        return 2
    if args.max_level < 0:
        print(f"error: --max-level must be non-negative", file=sys.stderr)
        return 2

    session = Session(
        args.p, args.vars, mode=args.mode, max_level=args.max_level,
        json_mode=args.json,
    )

    if args.script:
        try:
            with open(args.script, "r", encoding="utf-8") as fh:
                lines = fh.read().splitlines()
        except OSError as err:
            print(f"error: cannot read script: {err}", file=sys.stderr)
            return 2
        return _run_lines(lines, session, args.keep_going)

    if sys.stdin.isatty():
        return _repl(session)
    lines = (line.rstrip("\n") for line in sys.stdin)
    return _run_lines(lines, session, args.keep_going)


if __name__ == "__main__":
    sys.exit(main())
