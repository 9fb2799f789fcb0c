"""Rendering nets and processes into tool formats: Uppaal XML, DOT, LOTOS.

All three emitters are deterministic: components, states and edges are
sorted canonically, so emitting the same value twice gives identical
bytes.  Facets never vanish silently; whatever a format cannot express
natively travels in its comment channel (Uppaal `comments` labels, the
DOT `facets` attribute, LOTOS comments).
"""

from __future__ import annotations

import math
import re
from xml.sax.saxutils import escape

from .algebra import Process, SystemNet, shared_channels
from .errors import EmitError
from .lts import Direction, Lts

_UPPAAL_ID_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _grid(states: list[str]) -> dict[str, tuple[int, int]]:
    cols = max(1, math.ceil(math.sqrt(len(states))))
    return {s: (100 * (i % cols), 100 * (i // cols))
            for i, s in enumerate(states)}


def emit_uppaal(net: SystemNet) -> str:
    """Render a sync-only net as a flat-1.1 Uppaal XML document.

    One template per component; edges on shared channels carry `c!`/`c?`
    synchronisation labels, other edges are unlabelled.  Every edge also
    carries the full original label text as a comments label.  Channel,
    instance and (named) location identifiers must be valid Uppaal
    identifiers; locations whose state name is not stay anonymous.
    """
    interface_channels = sorted({c for _, p in net.components
                                 for c in p.interface})
    for c in interface_channels:
        if net.mode_of(c).kind == "async":
            raise EmitError(f"cannot emit Uppaal XML: channel {c} is "
                            "asynchronous (only handshake channels translate)")
        if not _UPPAAL_ID_RE.match(c):
            raise EmitError(f"channel {c!r} is not a valid Uppaal identifier")
    shared = sorted(shared_channels(net))

    lines = [
        '<?xml version="1.0" encoding="utf-8"?>',
        "<!DOCTYPE nta PUBLIC '-//Uppaal Team//DTD Flat System 1.1//EN' "
        "'http://www.it.uu.se/research/group/darts/uppaal/flat-1_1.dtd'>",
        "<nta>",
        "  <declaration>// channels shared by the composed processes",
    ]
    lines.extend(f"chan {c};" for c in shared)
    lines.append("</declaration>")

    next_id = 0
    for inst, proc in net.components:
        if not _UPPAAL_ID_RE.match(inst):
            raise EmitError(f"instance name {inst!r} is not a valid "
                            "Uppaal identifier")
        if not proc.body.states:
            raise EmitError(f"component {inst} has no states")
        states = sorted(proc.body.states)
        pos = _grid(states)
        ids = {}
        for s in states:
            ids[s] = f"id{next_id}"
            next_id += 1
        lines.append("  <template>")
        lines.append(f'    <name x="0" y="0">{escape(inst)}</name>')
        for s in states:
            x, y = pos[s]
            lines.append(f'    <location id="{ids[s]}" x="{x}" y="{y}">')
            if _UPPAAL_ID_RE.match(s):
                lines.append(f'      <name x="{x + 8}" y="{y - 24}">'
                             f"{escape(s)}</name>")
            lines.append("    </location>")
        lines.append(f'    <init ref="{ids[proc.body.initial]}"/>')
        for t in proc.body.sorted_transitions():
            x, y = pos[t.source]
            lines.append("    <transition>")
            lines.append(f'      <source ref="{ids[t.source]}"/>')
            lines.append(f'      <target ref="{ids[t.target]}"/>')
            comm = t.label.comm
            if comm.direction is not Direction.INTERNAL and comm.channel in shared:
                lines.append(f'      <label kind="synchronisation" '
                             f'x="{x + 8}" y="{y + 8}">'
                             f"{escape(comm.text)}</label>")
            lines.append(f'      <label kind="comments" x="{x + 8}" '
                         f'y="{y + 32}">{escape(t.label.text)}</label>')
            lines.append("    </transition>")
        lines.append("  </template>")

    instances = ", ".join(inst for inst, _ in net.components)
    lines.append(f"  <system>system {instances};</system>")
    lines.append("</nta>")
    return "\n".join(lines) + "\n"


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(x: Process | Lts) -> str:
    """Render a process body or a bare Lts in the DOT subset we parse.

    Node and edge statements come out sorted; the initial state carries
    init=true; non-communication facets go into a facets attribute.
    """
    if isinstance(x, Process):
        name, lts = x.name, x.body
    else:
        name, lts = "g", x
    lines = [f"digraph {name} {{"]
    for s in sorted(lts.states):
        attrs = " [init=true]" if s == lts.initial else ""
        lines.append(f"  {_dot_quote(s)}{attrs};")
    for t in lts.sorted_transitions():
        attrs = f"label={_dot_quote(t.label.comm.text)}"
        if t.label.facets:
            attrs += f", facets={_dot_quote(t.label.facets_text)}"
        lines.append(f"  {_dot_quote(t.source)} -> {_dot_quote(t.target)} "
                     f"[{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _lotos_comment(text: str) -> str:
    return "(* " + text.replace("*)", "* )") + " *)"


def emit_lotos(p: Process) -> str:
    """Render a process as mutually recursive LOTOS process definitions.

    One definition per state, offering its outgoing actions as a choice
    of action prefixes.  LOTOS gates are directionless, so the original
    `!`/`?` direction of each action rides along in a comment.
    """
    gates = sorted({t.label.comm.channel for t in p.body.transitions
                    if t.label.comm.direction is not Direction.INTERNAL})
    gate_list = f" [{', '.join(gates)}]" if gates else ""

    proc_names: dict[str, str] = {}
    taken: set[str] = set()
    for s in sorted(p.body.states):
        base = f"{p.name}_" + re.sub(r"[^A-Za-z0-9_]", "_", s)
        cand, k = base, 2
        while cand in taken:
            cand = f"{base}_{k}"
            k += 1
        taken.add(cand)
        proc_names[s] = cand

    lines = [
        f"(* LOTOS rendering of process {p.name} *)",
        "(* gates are directionless; each action keeps its original",
        "   direction and extra facets in the trailing comment *)",
        f"process {p.name}{gate_list} : noexit :=",
        f"  {proc_names[p.body.initial]}{gate_list}",
        "where",
        "",
    ]
    for s in sorted(p.body.states):
        lines.append(f"process {proc_names[s]}{gate_list} : noexit :=")
        outgoing = p.body.outgoing(s)
        if not outgoing:
            lines.append("  stop")
        else:
            terms = []
            for t in outgoing:
                comm = t.label.comm
                prefix = "i" if comm.direction is Direction.INTERNAL \
                    else comm.channel
                terms.append(f"{prefix}; {_lotos_comment(t.label.text)} "
                             f"{proc_names[t.target]}{gate_list}")
            if len(terms) == 1:
                lines.append(f"  {terms[0]}")
            else:
                for i, term in enumerate(terms):
                    lines.append(f"    {term}")
                    if i < len(terms) - 1:
                        lines.append("  []")
        lines.append("endproc")
        lines.append("")
    lines.append("endproc")
    return "\n".join(lines) + "\n"
