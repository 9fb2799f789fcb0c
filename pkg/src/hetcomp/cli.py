"""The hetcomp command-line driver.

Subcommands:

    hetcomp run <script>      execute a composition script
    hetcomp check <script>    same, but emit statements are skipped
    hetcomp convert <in.dot> --to uppaal|lotos|dot

Exit codes: 0 when every executed check holds, 1 when some check is
false, 3 when none is false but some is unknown (state bound hit), and
2 on any error.  The default state bound can be set through the
HETCOMP_BOUND environment variable; --bound overrides it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import checker, emitters
from .algebra import (ChannelMode, Process, SystemNet, compose, extract_chan,
                      remove, rename, replace, select, with_channel_modes)
from .dotio import document_to_lts, parse_dot_document
from .errors import HetcompError, ScriptError
from .lts import channels_of, filter_facet, is_token
from .scriptlang import (Binding, Call, ChannelDecl, Command, Expr,
                         ScriptProgram, Var, parse_script)
from .semantics import product


@dataclass
class RunOptions:
    bound: int | None = None
    trace_len: int | None = None
    out_dir: str | None = None
    fmt: str = "text"
    skip_emit: bool = False


def _name_from(graph_name: str, path: Path) -> str:
    if is_token(graph_name):
        return graph_name
    stem = "".join(c if c.isalnum() or c == "_" else "_" for c in path.stem)
    return stem if is_token(stem) else "process"


def load_process(path: Path) -> Process:
    """Read a DOT file as a Process named after its graph (or file)."""
    text = path.read_text(encoding="utf-8")
    doc = parse_dot_document(text, source=str(path))
    return Process(_name_from(doc.graph_name, path),
                   document_to_lts(doc, source=str(path)))


class Interpreter:
    """Executes a parsed script statement by statement."""

    def __init__(self, script_path: Path, options: RunOptions):
        self.script_path = script_path
        self.options = options
        self.env: dict[str, Process | SystemNet] = {}
        self.modes: dict[str, ChannelMode] = {}
        self.outcomes: list[str] = []

    def run(self, program: ScriptProgram) -> None:
        for stmt in program.statements:
            try:
                self._exec(stmt)
            except ScriptError:
                raise
            except (HetcompError, OSError) as e:
                raise ScriptError(str(e), line=stmt.line,
                                  source=str(self.script_path)) from e

    def exit_code(self) -> int:
        if "false" in self.outcomes:
            return 1
        if "unknown" in self.outcomes:
            return 3
        return 0

    # ---- statement dispatch ----

    def _exec(self, stmt) -> None:
        if isinstance(stmt, ChannelDecl):
            if stmt.kind == "sync":
                self.modes[stmt.channel] = ChannelMode("sync")
            else:
                self.modes[stmt.channel] = ChannelMode("async", stmt.capacity)
        elif isinstance(stmt, Binding):
            value = self._eval(stmt.expr)
            if isinstance(value, Process):
                value = Process(stmt.name, value.body, value.interface)
            self.env[stmt.name] = value
        else:
            assert isinstance(stmt, Command)
            self._command(stmt.call)

    def _command(self, call: Call) -> None:
        if call.func == "chans":
            value = self._eval(call.args[0])
            if isinstance(value, Process):
                chans = extract_chan(value)
            else:
                chans = sorted({c for _, p in value.components
                                for c in channels_of(p.body)})
            print(" ".join(chans))
        elif call.func == "check":
            self._check(call)
        elif call.func in ("emit_uppaal", "emit_dot", "emit_lotos"):
            self._emit(call)
        else:
            assert call.func == "filter"
            self._eval(call)  # bare filter: evaluated, result discarded

    def _check(self, call: Call) -> None:
        net = self._as_net(self._eval(call.args[0]))
        net = with_channel_modes(net, self.modes)
        qtext = call.args[1].value
        query = checker.parse_query(qtext)
        verdict = checker.check(net, query, self.options.bound)
        self.outcomes.append(verdict.outcome)
        if self.options.fmt == "json":
            print(json.dumps(checker.verdict_to_json(verdict), sort_keys=True))
            return
        print(f"check {query.text}: {verdict.outcome}")
        if verdict.witness is not None:
            steps = [checker.step_to_json(t) for t in verdict.witness]
            shown = steps if self.options.trace_len is None \
                else steps[:self.options.trace_len]
            print(f"  witness ({len(steps)} steps):")
            for i, step in enumerate(shown, start=1):
                print(f"    {i}. {step['label']}")
            if len(shown) < len(steps):
                print(f"    ... ({len(shown)} of {len(steps)} steps shown)")

    def _emit(self, call: Call) -> None:
        value = self._eval(call.args[0])
        filename = call.args[1].value
        if call.func == "emit_uppaal":
            net = with_channel_modes(self._as_net(value), self.modes)
            text = emitters.emit_uppaal(net)
        elif call.func == "emit_lotos":
            if not isinstance(value, Process):
                raise ScriptError("emit_lotos expects a process",
                                  line=call.line, source=str(self.script_path))
            text = emitters.emit_lotos(value)
        else:
            if isinstance(value, Process):
                text = emitters.emit_dot(value)
            else:
                net = with_channel_modes(value, self.modes)
                text = emitters.emit_dot(product(net, self.options.bound))
        if self.options.skip_emit:
            return
        out = Path(filename)
        if not out.is_absolute() and self.options.out_dir:
            out = Path(self.options.out_dir) / out
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
        print(f"wrote {out}")

    # ---- expressions ----

    def _eval(self, expr: Expr) -> Process | SystemNet:
        if isinstance(expr, Var):
            try:
                return self.env[expr.name]
            except KeyError:
                raise ScriptError(f"name {expr.name!r} is not bound",
                                  line=expr.line,
                                  source=str(self.script_path)) from None
        assert isinstance(expr, Call), "strings never reach _eval"
        f = expr.func
        if f == "dot":
            rel = Path(expr.args[0].value)
            path = rel if rel.is_absolute() else self.script_path.parent / rel
            return load_process(path)
        if f == "compose":
            return compose(*(self._eval(a) for a in expr.args))
        if f == "rename":
            return rename(self._expect_process(expr.args[0], "rename"),
                          expr.args[1].name, expr.args[2].name)
        if f == "replace":
            return replace(self._expect_net(expr.args[0], "replace"),
                           expr.args[1].name,
                           self._expect_process(expr.args[2], "replace"))
        if f == "remove":
            return remove(self._expect_net(expr.args[0], "remove"),
                          expr.args[1].name)
        if f == "select":
            return select(self._expect_net(expr.args[0], "select"),
                          expr.args[1].name)
        assert f == "filter"
        keep = {a.name for a in expr.args[1:]}
        value = self._eval(expr.args[0])
        if isinstance(value, Process):
            return Process(value.name, filter_facet(value.body, keep),
                           value.interface)
        return SystemNet(
            tuple((n, Process(p.name, filter_facet(p.body, keep), p.interface))
                  for n, p in value.components),
            value.channel_modes)

    def _expect_process(self, expr: Expr, op: str) -> Process:
        value = self._eval(expr)
        if not isinstance(value, Process):
            raise ScriptError(f"{op} expects a process here, got a net",
                              line=expr.line, source=str(self.script_path))
        return value

    def _expect_net(self, expr: Expr, op: str) -> SystemNet:
        value = self._eval(expr)
        if isinstance(value, Process):
            raise ScriptError(f"{op} expects a composed net here, got a "
                              "process", line=expr.line,
                              source=str(self.script_path))
        return value

    def _as_net(self, value: Process | SystemNet) -> SystemNet:
        return compose(value) if isinstance(value, Process) else value


def run_script(path: str | Path, options: RunOptions) -> int:
    script = Path(path)
    try:
        text = script.read_text(encoding="utf-8")
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    try:
        program = parse_script(text, source=str(script))
        interp = Interpreter(script, options)
        interp.run(program)
    except HetcompError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return interp.exit_code()


def _cmd_convert(args: argparse.Namespace) -> int:
    path = Path(args.input)
    try:
        proc = load_process(path)
        if args.to == "uppaal":
            text = emitters.emit_uppaal(compose(proc))
        elif args.to == "lotos":
            text = emitters.emit_lotos(proc)
        else:
            text = emitters.emit_dot(proc)
    except (HetcompError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.output:
        out = Path(args.output)
        if not out.is_absolute() and args.out_dir:
            out = Path(args.out_dir) / out
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
        print(f"wrote {out}")
    else:
        sys.stdout.write(text)
    return 0


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--bound", type=int, default=None,
                   help="max global states to explore "
                        "(default: HETCOMP_BOUND or 1000000)")
    p.add_argument("--trace-len", type=int, default=None, metavar="K",
                   help="truncate text-format witness display to K steps")
    p.add_argument("--out-dir", default=None,
                   help="directory prefix for emitted files")
    p.add_argument("--format", choices=["json", "text"], default="text",
                   dest="fmt", help="verdict output format")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="hetcomp",
        description="Compose heterogeneous behavioural models over a "
                    "transition-system core and analyse the result.")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="execute a composition script")
    run_p.add_argument("script")
    _add_common(run_p)

    check_p = sub.add_parser(
        "check", help="execute a script without writing emitted files")
    check_p.add_argument("script")
    _add_common(check_p)

    conv_p = sub.add_parser("convert", help="translate a DOT model")
    conv_p.add_argument("input")
    conv_p.add_argument("--to", choices=["uppaal", "lotos", "dot"],
                        required=True)
    conv_p.add_argument("-o", "--output", default=None,
                        help="output file (default: stdout)")
    conv_p.add_argument("--out-dir", default=None,
                        help="directory prefix for the output file")

    args = parser.parse_args(argv)

    if args.command == "convert":
        return _cmd_convert(args)

    bound = args.bound
    if bound is None and os.environ.get("HETCOMP_BOUND"):
        try:
            bound = int(os.environ["HETCOMP_BOUND"])
        except ValueError:
            print("error: HETCOMP_BOUND must be an integer", file=sys.stderr)
            return 2
    options = RunOptions(bound=bound, trace_len=args.trace_len,
                         out_dir=args.out_dir, fmt=args.fmt,
                         skip_emit=args.command == "check")
    return run_script(args.script, options)


if __name__ == "__main__":
    sys.exit(main())
