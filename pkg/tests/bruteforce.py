"""Brute-force oracle for the global semantics.

Materializes the FULL global graph: every combination of local states
and buffer contents, with edges computed straight from the channel
rules. Verdicts are then decided by definition over this graph. None
of hetcomp's semantics/checker code is used, only the net data model,
so agreement is meaningful evidence.
"""

from itertools import product as iproduct

from hetcomp import Direction

# a node is (locals_tuple, buffers_tuple):
#   locals_tuple = ((inst, state), ...) sorted by inst
#   buffers_tuple = ((chan, (sender, ...)), ...) sorted by chan


def interface_counts(net):
    counts = {}
    for _, proc in net.components:
        for c in proc.interface:
            counts[c] = counts.get(c, 0) + 1
    return counts


def shared_async_channels(net):
    counts = interface_counts(net)
    return sorted(c for c, n in counts.items()
                  if n >= 2 and net.mode_of(c).kind == "async")


def all_buffer_contents(net, chan):
    cap = net.mode_of(chan).capacity
    alphabet = net.instance_names()
    out = [()]
    for length in range(1, cap + 1):
        out.extend(iproduct(alphabet, repeat=length))
    return out


def all_nodes(net):
    insts = net.instance_names()
    state_axes = [sorted(net.get(i).body.states) for i in insts]
    chans = shared_async_channels(net)
    buffer_axes = [all_buffer_contents(net, c) for c in chans]
    nodes = []
    for states in iproduct(*state_axes):
        for bufs in iproduct(*buffer_axes):
            nodes.append((tuple(zip(insts, states)),
                          tuple(zip(chans, bufs))))
    return nodes


def node_edges(net, node):
    """Successor nodes by definition of the channel rules."""
    locals_t, buffers_t = node
    local = dict(locals_t)
    buffers = dict(buffers_t)
    counts = interface_counts(net)
    edges = []

    def with_local(inst, state, new_buffers=None):
        nl = tuple((i, state if i == inst else s) for i, s in locals_t)
        nb = buffers_t if new_buffers is None else tuple(
            (c, new_buffers.get(c, dict(buffers_t)[c])) for c, _ in buffers_t)
        return (nl, nb)

    for inst, _ in locals_t:
        body = net.get(inst).body
        for t in body.transitions:
            if t.source != local[inst]:
                continue
            d = t.label.comm.direction
            chan = t.label.comm.channel
            if d is Direction.INTERNAL or counts.get(chan, 0) < 2:
                edges.append(with_local(inst, t.target))
            elif net.mode_of(chan).kind == "sync":
                if d is Direction.SEND:
                    for other, _ in locals_t:
                        if other == inst:
                            continue
                        obody = net.get(other).body
                        for u in obody.transitions:
                            if (u.source == local[other]
                                    and u.label.comm.direction is Direction.RECEIVE
                                    and u.label.comm.channel == chan):
                                nl = tuple(
                                    (i, t.target if i == inst
                                     else u.target if i == other else s)
                                    for i, s in locals_t)
                                edges.append((nl, buffers_t))
            elif d is Direction.SEND:
                buf = buffers[chan]
                if len(buf) < net.mode_of(chan).capacity:
                    edges.append(with_local(inst, t.target,
                                            {chan: buf + (inst,)}))
            else:
                buf = buffers[chan]
                if buf:
                    edges.append(with_local(inst, t.target, {chan: buf[1:]}))
    return edges


def initial_node(net):
    locals_t = tuple((i, net.get(i).body.initial)
                     for i in net.instance_names())
    buffers_t = tuple((c, ()) for c in shared_async_channels(net))
    return (locals_t, buffers_t)


def full_graph(net):
    """Every node (reachable or not) mapped to its successor list."""
    return {node: node_edges(net, node) for node in all_nodes(net)}


def reachable_nodes(net, graph=None):
    if graph is None:
        graph = full_graph(net)
    start = initial_node(net)
    seen = {start}
    stack = [start]
    while stack:
        node = stack.pop()
        for succ in graph[node]:
            if succ not in seen:
                seen.add(succ)
                stack.append(succ)
    return seen


def bf_deadlock_free(net):
    graph = full_graph(net)
    return all(graph[node] for node in reachable_nodes(net, graph))


def bf_reachable(net, conjuncts):
    want = dict(conjuncts)
    for node in reachable_nodes(net):
        local = dict(node[0])
        if all(local[i] == s for i, s in want.items()):
            return True
    return False
