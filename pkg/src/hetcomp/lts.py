"""Labelled transition systems with multi-facet labels.

This is the semantic ground every supported formalism is mapped onto: a
set of named states, one initial state, and a set of labelled
transitions.  A label always carries one communication action (send,
receive, or internal step) and may stack further named facets (guard,
time, data, other) which are stored verbatim and never interpreted.

Label text grammar::

    label  = comm ('|' facet)*
    comm   = ident '!'            send on channel ident
           | ident '?'            receive on channel ident
           | ident                internal action
    facet  = name ':' payload     name in {guard, time, data, other}
           | payload              stored under name 'other'

Facets repeating a name are merged in first-occurrence order with ';'
between payloads, so re-parsing a formatted label is stable.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable

from .errors import HetcompError, ParseError

#: Channel names must stay plain tokens: they become Uppaal channel
#: declarations and LOTOS gates, both of which want identifiers.
TOKEN_RE = re.compile(r"[A-Za-z0-9_]+\Z")

#: State names and internal-action names are looser so that product
#: states such as ``P1:s0,P2:t1`` stay representable.  Whitespace,
#: quotes and backslashes are banned to keep emitter quoting trivial.
NAME_RE = re.compile(r'[^\s"\\]+\Z')

FACET_NAMES = ("guard", "time", "data", "other")


def is_token(s: str) -> bool:
    return bool(TOKEN_RE.match(s))


def _check_name(s: str, what: str) -> None:
    if not NAME_RE.match(s):
        raise HetcompError(f"invalid {what} {s!r}: must be non-empty, "
                           "without whitespace, quotes or backslashes")


class Direction(enum.Enum):
    SEND = "!"
    RECEIVE = "?"
    INTERNAL = ""


@dataclass(frozen=True)
class ChannelAction:
    """Communication part of a label: a channel plus a direction."""

    channel: str
    direction: Direction

    def __post_init__(self):
        if self.direction is Direction.INTERNAL:
            _check_name(self.channel, "internal action name")
            # a trailing !/? or an embedded | would not survive re-parsing
            if self.channel.endswith(("!", "?")):
                raise HetcompError(
                    f"internal action name {self.channel!r} must not end in '!' or '?'")
            if "|" in self.channel:
                raise HetcompError(
                    f"internal action name {self.channel!r} must not contain '|'")
        elif not is_token(self.channel):
            raise HetcompError(f"invalid channel name {self.channel!r}: "
                               "must be letters, digits or underscores")

    @property
    def text(self) -> str:
        return self.channel + self.direction.value


@dataclass(frozen=True)
class Label:
    """A faceted transition label; the communication facet is mandatory."""

    comm: ChannelAction
    facets: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        seen = set()
        for name, payload in self.facets:
            if name not in FACET_NAMES:
                raise HetcompError(f"unknown facet name {name!r} "
                                   f"(expected one of {', '.join(FACET_NAMES)})")
            if name in seen:
                raise HetcompError(f"duplicate facet {name!r} in one label")
            seen.add(name)
            if "|" in payload or "\n" in payload:
                raise HetcompError(
                    f"facet payload {payload!r} must not contain '|' or newlines")

    @classmethod
    def send(cls, channel: str, facets: Iterable[tuple[str, str]] = ()) -> "Label":
        return cls(ChannelAction(channel, Direction.SEND), tuple(facets))

    @classmethod
    def receive(cls, channel: str, facets: Iterable[tuple[str, str]] = ()) -> "Label":
        return cls(ChannelAction(channel, Direction.RECEIVE), tuple(facets))

    @classmethod
    def internal(cls, name: str = "tau", facets: Iterable[tuple[str, str]] = ()) -> "Label":
        return cls(ChannelAction(name, Direction.INTERNAL), tuple(facets))

    @property
    def text(self) -> str:
        parts = [self.comm.text]
        parts.extend(f"{name}:{payload}" for name, payload in self.facets)
        return "|".join(parts)

    @property
    def facets_text(self) -> str:
        return "|".join(f"{name}:{payload}" for name, payload in self.facets)

    def facet(self, name: str) -> str | None:
        for n, payload in self.facets:
            if n == name:
                return payload
        return None


def parse_label(text: str) -> Label:
    """Parse a label from its text form (see the module grammar)."""
    segments = text.split("|")
    comm_text = segments[0].strip()
    if not comm_text:
        raise ParseError(f"label {text!r} has an empty communication part")
    if comm_text.endswith("!"):
        comm = ChannelAction(_comm_token(comm_text, text), Direction.SEND)
    elif comm_text.endswith("?"):
        comm = ChannelAction(_comm_token(comm_text, text), Direction.RECEIVE)
    else:
        comm = ChannelAction(comm_text, Direction.INTERNAL)
    facets: list[tuple[str, str]] = []
    index: dict[str, int] = {}
    for seg in segments[1:]:
        if not seg.strip():
            raise ParseError(f"label {text!r} has an empty facet segment")
        name, _, payload = seg.partition(":")
        if name.strip() in FACET_NAMES and _ == ":":
            name, payload = name.strip(), payload
        else:
            name, payload = "other", seg
        if name in index:
            i = index[name]
            facets[i] = (name, facets[i][1] + ";" + payload)
        else:
            index[name] = len(facets)
            facets.append((name, payload))
    return Label(comm, tuple(facets))


def _comm_token(comm_text: str, whole: str) -> str:
    channel = comm_text[:-1]
    if not is_token(channel):
        raise ParseError(f"label {whole!r}: channel {channel!r} is not a plain token")
    return channel


@dataclass(frozen=True)
class Transition:
    source: str
    label: Label
    target: str


@dataclass(frozen=True)
class Lts:
    """States, one initial state, and a set of labelled transitions."""

    states: frozenset[str]
    initial: str
    transitions: frozenset[Transition]

    def __init__(self, states: Iterable[str], initial: str,
                 transitions: Iterable[Transition]):
        object.__setattr__(self, "states", frozenset(states))
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "transitions", frozenset(transitions))
        for s in self.states:
            _check_name(s, "state name")
        if self.initial not in self.states:
            raise HetcompError(f"initial state {self.initial!r} is not a state")
        for t in self.transitions:
            if t.source not in self.states or t.target not in self.states:
                raise HetcompError(
                    f"transition {t.source!r} -> {t.target!r} leaves the state set")

    def sorted_transitions(self) -> list[Transition]:
        return sorted(self.transitions, key=_transition_key)

    def outgoing(self, state: str) -> list[Transition]:
        return sorted((t for t in self.transitions if t.source == state),
                      key=_transition_key)


def _transition_key(t: Transition) -> tuple[str, str, str]:
    return (t.source, t.label.text, t.target)


def channels_of(lts: Lts) -> set[str]:
    """Channels used by send/receive actions; internal actions carry none."""
    return {t.label.comm.channel for t in lts.transitions
            if t.label.comm.direction is not Direction.INTERNAL}


def filter_facet(lts: Lts, keep: Iterable[str]) -> Lts:
    """Drop every facet whose name is not in ``keep``.

    The communication facet is always retained.  Transitions that become
    identical triples after relabelling merge, since the transition
    relation is a set.
    """
    keep = set(keep)
    transitions = frozenset(
        Transition(t.source,
                   Label(t.label.comm,
                         tuple(f for f in t.label.facets if f[0] in keep)),
                   t.target)
        for t in lts.transitions)
    return Lts(lts.states, lts.initial, transitions)


def rename_channel(lts: Lts, old: str, new: str) -> Lts:
    """Rename every channel action called ``old`` to ``new``.

    Applies to all directions, internal actions included (an internal
    action's name is its bare channel field).  Renaming an absent
    channel is a no-op; merged duplicates may shrink the transition set.
    """
    if old == new:
        return lts

    def ren(label: Label) -> Label:
        if label.comm.channel != old:
            return label
        return Label(ChannelAction(new, label.comm.direction), label.facets)

    transitions = frozenset(
        Transition(t.source, ren(t.label), t.target) for t in lts.transitions)
    return Lts(lts.states, lts.initial, transitions)


def isomorphic(a: Lts, b: Lts) -> bool:
    """Whether a state bijection maps ``a`` onto ``b``.

    The bijection must carry initial to initial and transitions to
    transitions with identical labels.  Candidate pairings are pruned by
    iterated neighbourhood colouring before backtracking, which is
    plenty for the model sizes this package targets.
    """
    if len(a.states) != len(b.states) or len(a.transitions) != len(b.transitions):
        return False
    if sorted(t.label.text for t in a.transitions) != \
            sorted(t.label.text for t in b.transitions):
        return False

    def refine(lts: Lts) -> dict[str, int]:
        colors = {s: (s == lts.initial) for s in lts.states}
        out: dict[str, list[Transition]] = {s: [] for s in lts.states}
        inc: dict[str, list[Transition]] = {s: [] for s in lts.states}
        for t in lts.transitions:
            out[t.source].append(t)
            inc[t.target].append(t)
        for _ in range(len(lts.states)):
            sig = {
                s: (colors[s],
                    tuple(sorted((t.label.text, colors[t.target]) for t in out[s])),
                    tuple(sorted((t.label.text, colors[t.source]) for t in inc[s])))
                for s in lts.states
            }
            palette = {v: i for i, v in enumerate(sorted(set(sig.values()), key=repr))}
            new = {s: palette[sig[s]] for s in lts.states}
            if new == colors:
                break
            colors = new
        return colors

    ca, cb = refine(a), refine(b)
    if sorted(ca.values()) != sorted(cb.values()):
        return False

    by_color: dict[int, list[str]] = {}
    for s, c in cb.items():
        by_color.setdefault(c, []).append(s)
    # smallest candidate sets first keeps the backtracking shallow
    order = sorted(a.states, key=lambda s: (len(by_color.get(ca[s], ())), s))
    a_out: dict[str, list[Transition]] = {s: [] for s in a.states}
    a_in: dict[str, list[Transition]] = {s: [] for s in a.states}
    for t in a.transitions:
        a_out[t.source].append(t)
        a_in[t.target].append(t)
    b_trans = {(t.source, t.label, t.target) for t in b.transitions}

    mapping: dict[str, str] = {}
    used: set[str] = set()

    def place(i: int) -> bool:
        if i == len(order):
            return True
        s = order[i]
        for cand in sorted(by_color.get(ca[s], ())):
            if cand in used:
                continue
            if (s == a.initial) != (cand == b.initial):
                continue
            ok = all((cand, t.label, mapping[t.target]) in b_trans
                     for t in a_out[s] if t.target in mapping)
            ok = ok and all((mapping[t.source], t.label, cand) in b_trans
                            for t in a_in[s] if t.source in mapping)
            ok = ok and all((cand, t.label, cand) in b_trans
                            for t in a_out[s] if t.target == s)
            if not ok:
                continue
            mapping[s] = cand
            used.add(cand)
            if place(i + 1):
                return True
            del mapping[s]
            used.discard(cand)
        return False

    return place(0)
