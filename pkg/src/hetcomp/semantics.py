"""Global semantics of a net: the reachable synchronous product.

A global state holds one local state per component plus the contents
of the asynchronous buffers.  Global transitions follow the channel
discipline:

* a shared synchronous channel moves by binary rendezvous: one sender
  and one distinct receiver step together, lone offers block;
* a shared asynchronous channel buffers abstract tokens: sending is
  enabled while the buffer has room, receiving only while it is
  non-empty (receiving on an empty buffer is disabled, not a skip);
* a channel appearing in a single component's interface has nobody to
  talk to, so its sends and receives interleave freely as local steps;
* internal actions are always local.

"Shared" means: present in at least two component interfaces.  Buffers
are tracked for shared asynchronous channels only.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Union

from .algebra import SystemNet
from .errors import SemanticsError, StateBoundExceeded
from .lts import Direction, Label, Lts, Transition, parse_label

DEFAULT_STATE_BOUND = 1_000_000


@dataclass(frozen=True)
class GlobalState:
    """Locals sorted by instance name; buffers sorted by channel."""

    locals: tuple[tuple[str, str], ...]
    buffers: tuple[tuple[str, tuple[str, ...]], ...] = ()

    def local_of(self, instance: str) -> str:
        for inst, state in self.locals:
            if inst == instance:
                return state
        raise SemanticsError(f"no local state for instance {instance!r}")

    def buffer_of(self, channel: str) -> tuple[str, ...]:
        for chan, toks in self.buffers:
            if chan == channel:
                return toks
        raise SemanticsError(f"no buffer tracked for channel {channel!r}")

    @property
    def text(self) -> str:
        s = ",".join(f"{inst}:{state}" for inst, state in self.locals)
        for chan, toks in self.buffers:
            s += f";{chan}=" + ".".join(toks)
        return s


@dataclass(frozen=True)
class Handshake:
    channel: str
    sender: str
    receiver: str


@dataclass(frozen=True)
class AsyncSend:
    channel: str
    instance: str


@dataclass(frozen=True)
class AsyncReceive:
    channel: str
    instance: str


@dataclass(frozen=True)
class Local:
    instance: str
    action: str


Kind = Union[Handshake, AsyncSend, AsyncReceive, Local]


@dataclass(frozen=True)
class GlobalTransition:
    source: GlobalState
    kind: Kind
    target: GlobalState
    local_label: Label | None = field(default=None, compare=False)

    @property
    def label(self) -> Label:
        """The product-level label this step carries."""
        k = self.kind
        if isinstance(k, Handshake):
            return Label.internal(f"{k.channel}#{k.sender}>{k.receiver}")
        if isinstance(k, AsyncSend):
            return Label.internal(f"{k.channel}!@{k.instance}")
        if isinstance(k, AsyncReceive):
            return Label.internal(f"{k.channel}?@{k.instance}")
        if self.local_label is not None:
            return self.local_label
        return parse_label(k.action)


def _kind_sort_key(kind: Kind) -> tuple:
    if isinstance(kind, AsyncReceive):
        return ("async_receive", kind.channel, kind.instance, "", "")
    if isinstance(kind, AsyncSend):
        return ("async_send", kind.channel, kind.instance, "", "")
    if isinstance(kind, Handshake):
        return ("handshake", kind.channel, kind.sender, kind.receiver, "")
    return ("local", "", kind.instance, "", kind.action)


def step_sort_key(t: GlobalTransition) -> tuple:
    return _kind_sort_key(t.kind) + (t.target.text,)


def _interface_counts(net: SystemNet) -> dict[str, int]:
    counts: dict[str, int] = {}
    for _, proc in net.components:
        for c in proc.interface:
            counts[c] = counts.get(c, 0) + 1
    return counts


def tracked_buffers(net: SystemNet) -> list[str]:
    """Shared async channels, the ones whose buffers are part of state."""
    counts = _interface_counts(net)
    return sorted(c for c, n in counts.items()
                  if n >= 2 and net.mode_of(c).kind == "async")


def initial_state(net: SystemNet) -> GlobalState:
    locals_ = tuple((inst, proc.body.initial) for inst, proc in net.components)
    buffers = tuple((c, ()) for c in tracked_buffers(net))
    return GlobalState(locals_, buffers)


def _check_consistent(net: SystemNet, g: GlobalState) -> None:
    if [inst for inst, _ in g.locals] != net.instance_names():
        raise SemanticsError("global state does not match the net's components")
    for inst, state in g.locals:
        if state not in net.get(inst).body.states:
            raise SemanticsError(
                f"state {state!r} is not a state of component {inst}")
    expected = tracked_buffers(net)
    if [c for c, _ in g.buffers] != expected:
        raise SemanticsError("global state tracks the wrong buffer set")
    for chan, toks in g.buffers:
        cap = net.mode_of(chan).capacity
        if len(toks) > cap:
            raise SemanticsError(f"buffer of {chan} exceeds capacity {cap}")


def enabled(net: SystemNet, g: GlobalState) -> list[GlobalTransition]:
    """All global transitions permitted from g, in canonical order."""
    _check_consistent(net, g)
    counts = _interface_counts(net)
    locals_map = dict(g.locals)
    buffers_map = {c: toks for c, toks in g.buffers}

    def moved(inst: str, to: str, buffer_change: tuple[str, tuple[str, ...]] | None = None
              ) -> GlobalState:
        new_locals = tuple((i, to if i == inst else s) for i, s in g.locals)
        if buffer_change is None:
            return GlobalState(new_locals, g.buffers)
        chan, toks = buffer_change
        new_buffers = tuple((c, toks if c == chan else old)
                            for c, old in g.buffers)
        return GlobalState(new_locals, new_buffers)

    out: list[GlobalTransition] = []
    receivers: dict[str, list[tuple[str, Transition]]] = {}
    senders: dict[str, list[tuple[str, Transition]]] = {}

    for inst, proc in net.components:
        here = locals_map[inst]
        for t in proc.body.outgoing(here):
            comm = t.label.comm
            if comm.direction is Direction.INTERNAL or counts.get(comm.channel, 0) < 2:
                out.append(GlobalTransition(g, Local(inst, t.label.text),
                                            moved(inst, t.target), t.label))
                continue
            mode = net.mode_of(comm.channel)
            if mode.kind == "sync":
                side = senders if comm.direction is Direction.SEND else receivers
                side.setdefault(comm.channel, []).append((inst, t))
            elif comm.direction is Direction.SEND:
                buf = buffers_map[comm.channel]
                if len(buf) < mode.capacity:
                    out.append(GlobalTransition(
                        g, AsyncSend(comm.channel, inst),
                        moved(inst, t.target, (comm.channel, buf + (inst,)))))
            else:
                buf = buffers_map[comm.channel]
                if buf:
                    out.append(GlobalTransition(
                        g, AsyncReceive(comm.channel, inst),
                        moved(inst, t.target, (comm.channel, buf[1:]))))

    for chan, sends in senders.items():
        for s_inst, s_t in sends:
            for r_inst, r_t in receivers.get(chan, ()):
                if r_inst == s_inst:
                    continue
                new_locals = tuple(
                    (i, s_t.target if i == s_inst
                     else r_t.target if i == r_inst else s)
                    for i, s in g.locals)
                out.append(GlobalTransition(
                    g, Handshake(chan, s_inst, r_inst),
                    GlobalState(new_locals, g.buffers)))

    out = sorted(set(out), key=step_sort_key)
    return out


def explore(net: SystemNet, bound: int | None = None
            ) -> tuple[list[GlobalState], dict[GlobalState, list[GlobalTransition]]]:
    """BFS over reachable global states.

    Returns the states in discovery order plus each state's enabled
    list.  Raises StateBoundExceeded when more than `bound` states are
    discovered.
    """
    if bound is None:
        bound = DEFAULT_STATE_BOUND
    start = initial_state(net)
    seen: dict[GlobalState, None] = {start: None}
    queue: deque[GlobalState] = deque([start])
    steps: dict[GlobalState, list[GlobalTransition]] = {}
    while queue:
        g = queue.popleft()
        here = enabled(net, g)
        steps[g] = here
        for t in here:
            assert t.source == g
            if t.target not in seen:
                _check_consistent(net, t.target)
                if len(seen) >= bound:
                    raise StateBoundExceeded(bound, len(queue) + 1)
                seen[t.target] = None
                queue.append(t.target)
    return list(seen), steps


def product(net: SystemNet, bound: int | None = None) -> Lts:
    """The reachable global LTS, with canonical state names and labels."""
    states, steps = explore(net, bound)
    names = [g.text for g in states]
    transitions = [
        Transition(g.text, t.label, t.target.text)
        for g in states for t in steps[g]
    ]
    return Lts(names, initial_state(net).text, transitions)


def traces(net: SystemNet, k: int, bound: int | None = None
           ) -> set[tuple[str, ...]]:
    """All label-text sequences of length <= k, as a set."""
    lts = product(net, bound)
    succ: dict[str, list[tuple[str, str]]] = {s: [] for s in lts.states}
    for t in lts.sorted_transitions():
        succ[t.source].append((t.label.text, t.target))
    out: set[tuple[str, ...]] = set()

    def walk(state: str, prefix: tuple[str, ...]) -> None:
        out.add(prefix)
        if len(prefix) == k:
            return
        for text, target in succ[state]:
            walk(target, prefix + (text,))

    walk(lts.initial, ())
    return out


def traces_equal(a: SystemNet, b: SystemNet, k: int,
                 bound: int | None = None) -> bool:
    """Whether both nets have the same label traces up to length k.

    Runs a synchronized subset walk over the two products instead of
    materializing the trace sets, so it stays polynomial in the product
    sizes even when the trace sets explode.
    """
    pa, pb = product(a, bound), product(b, bound)

    def succ_map(lts: Lts) -> dict[str, dict[str, frozenset[str]]]:
        m: dict[str, dict[str, set[str]]] = {s: {} for s in lts.states}
        for t in lts.transitions:
            m[t.source].setdefault(t.label.text, set()).add(t.target)
        return {s: {l: frozenset(v) for l, v in by.items()}
                for s, by in m.items()}

    sa, sb = succ_map(pa), succ_map(pb)

    def letters(states: frozenset[str], smap) -> dict[str, frozenset[str]]:
        merged: dict[str, set[str]] = {}
        for s in states:
            for letter, targets in smap[s].items():
                merged.setdefault(letter, set()).update(targets)
        return {l: frozenset(v) for l, v in merged.items()}

    start = (frozenset([pa.initial]), frozenset([pb.initial]))
    frontier = [start]
    visited = {start}
    for _ in range(k):
        nxt = []
        for setA, setB in frontier:
            la = letters(setA, sa)
            lb = letters(setB, sb)
            if set(la) != set(lb):
                return False
            for letter in la:
                pair = (la[letter], lb[letter])
                if pair not in visited:
                    visited.add(pair)
                    nxt.append(pair)
        if not nxt:
            break
        frontier = nxt
    return True
