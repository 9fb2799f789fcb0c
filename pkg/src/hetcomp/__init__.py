"""Composing heterogeneous behavioural models over a shared LTS core.

The package turns models written in different notations into labelled
transition systems, composes them as a net of named processes talking
over shared channels, computes the global behaviour under handshake or
buffered-channel semantics, checks deadlock-freedom and reachability,
and renders the results for downstream tools (Uppaal, DOT, LOTOS).
"""

from .algebra import (SYNC, ChannelMode, Process, SystemNet, async_mode,
                      compose, extract_chan, remove, rename, replace, select,
                      shared_channels, with_channel_modes)
from .checker import (DEADLOCK_FREE, Query, Verdict, check, parse_query,
                      reach, step_to_json, verdict_to_json)
from .dotio import DotDocument, parse_dot, parse_dot_document, strip_markup
from .emitters import emit_dot, emit_lotos, emit_uppaal
from .errors import (AlgebraError, EmitError, HetcompError, ParseError,
                     QueryError, ScriptError, SemanticsError,
                     StateBoundExceeded)
from .lts import (FACET_NAMES, ChannelAction, Direction, Label, Lts,
                  Transition, channels_of, filter_facet, isomorphic,
                  parse_label, rename_channel)
from .scriptlang import ScriptProgram, parse_script
from .semantics import (DEFAULT_STATE_BOUND, AsyncReceive, AsyncSend,
                        GlobalState, GlobalTransition, Handshake, Local,
                        enabled, explore, initial_state, product, traces,
                        traces_equal)

__all__ = [
    "AlgebraError", "AsyncReceive", "AsyncSend", "ChannelAction",
    "ChannelMode", "DEADLOCK_FREE", "DEFAULT_STATE_BOUND", "Direction",
    "DotDocument", "EmitError", "FACET_NAMES", "GlobalState",
    "GlobalTransition", "Handshake", "HetcompError", "Label", "Local", "Lts",
    "ParseError", "Process", "Query", "QueryError", "SYNC", "ScriptError",
    "ScriptProgram", "SemanticsError", "StateBoundExceeded", "SystemNet",
    "Transition", "Verdict", "async_mode", "channels_of", "check", "compose",
    "emit_dot", "emit_lotos", "emit_uppaal", "enabled", "extract_chan",
    "explore", "filter_facet", "initial_state", "isomorphic", "parse_dot",
    "parse_dot_document", "parse_label", "parse_query", "parse_script",
    "product", "reach", "remove", "rename", "rename_channel", "replace",
    "select", "shared_channels", "step_to_json", "strip_markup", "traces",
    "traces_equal", "verdict_to_json", "with_channel_modes",
]
