"""System-level Petri net construction and scheduled-event replay.

Machines and independent buffers become places; every declared method
becomes a transition; arcs run origin place -> transition -> dest place
(transformation and storage loop on the host place).  The scheduled event
list fully determines the trajectory: replay tracks individual tokens, so
an event whose token is not sitting at the origin place is rejected rather
than clamped.

Token-count matrices have one column per unique event time; when an event
fires at t=0 a leading synthetic column preserves the pristine initial
marking, so the delta stays visible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleEventError, PetriModelError
from .ingest import RawEventList
from .matrices import HfgtBundle
from .metamodel import ResolvedForm, ResolvedPort, SystemModel


@dataclass(frozen=True)
class PetriPlace:
    index: int
    name: str
    x: float
    y: float
    init_tokens: int


@dataclass(frozen=True)
class PetriTransition:
    index: int
    name: str
    x: float
    y: float
    init_tokens: int
    dt: float
    kind: str  # "form" | "port"
    resource: int
    process: int  # system process index
    origin_place: int
    dest_place: int


@dataclass(frozen=True)
class PetriArc:
    place: int
    transition: int
    direction: str  # "pt" (place→transition) or "tp"


@dataclass(frozen=True)
class MappedEvent:
    """One scheduled event resolved to a capability and its token path."""

    token: int
    t_start: float
    t_end: float
    row: int
    process: int
    resource: int
    transition: int
    origin_place: int
    dest_place: int
    operand_in: int | None
    operand_out: int | None


@dataclass
class PetriNetwork:
    """The induced net plus, after simulation, the token-count timelines."""

    system_name: str
    places: tuple[PetriPlace, ...]
    transitions: tuple[PetriTransition, ...]
    arcs: tuple[PetriArc, ...]
    operands: tuple[str, ...]
    timeline: tuple[float, ...] = ()
    has_init_column: bool = False
    qb: np.ndarray | None = None
    qt: np.ndarray | None = None
    events: tuple[MappedEvent, ...] = ()
    # per column, per token: ("place" | "transition", index, operand index or None)
    token_states: tuple[tuple[tuple[str, int, int | None], ...], ...] = ()

    @property
    def num_columns(self) -> int:
        return (1 if self.has_init_column else 0) + len(self.timeline)

    def column_times(self) -> list[float]:
        """Times per column; a leading synthetic column repeats the first
        time and holds the pristine initial marking."""
        times = list(self.timeline)
        return ([times[0]] + times) if self.has_init_column else times


def canonical_transitions(model: SystemModel) -> list[ResolvedForm | ResolvedPort]:
    """Transition order: resources in global order, forms before ports."""
    by_resource: dict[int, list[ResolvedForm | ResolvedPort]] = {}
    for form in model.forms:
        by_resource.setdefault(form.resource, []).append(form)
    for port in model.ports:
        by_resource.setdefault(port.resource, []).append(port)
    ordered: list[ResolvedForm | ResolvedPort] = []
    for resource in range(1, model.resources.num_resources + 1):
        ordered.extend(by_resource.get(resource, []))
    return ordered


def build_petri_network(model: SystemModel) -> PetriNetwork:
    """Build the net; missing gps, initTokens, or dT attributes are fatal
    and reported together, naming every offending element."""
    missing: list[str] = []

    places: list[PetriPlace] = []
    buffer_raws = list(model.raw.machines) + list(model.raw.ind_buffers)
    for idx, raw in enumerate(buffer_raws, start=1):
        if raw.gps_x is None or raw.gps_y is None:
            missing.append(f"{raw.name}: gpsX/gpsY")
        if raw.init_tokens is None:
            missing.append(f"{raw.name}: initTokens")
        places.append(
            PetriPlace(
                index=idx,
                name=raw.name,
                x=raw.gps_x if raw.gps_x is not None else 0.0,
                y=raw.gps_y if raw.gps_y is not None else 0.0,
                init_tokens=raw.init_tokens or 0,
            )
        )

    host_xy = {p.name: (p.x, p.y) for p in places}
    transitions: list[PetriTransition] = []
    arcs: list[PetriArc] = []
    for idx, resolved in enumerate(canonical_transitions(model), start=1):
        method = resolved.method
        label = f"{resolved.resource_name}/{method.name}"
        if method.dt is None:
            missing.append(f"{label}: dT")
        if method.init_tokens is None:
            missing.append(f"{label}: initTokens")
        base_x, base_y = host_xy.get(resolved.resource_name, (0.0, 0.0))
        if isinstance(resolved, ResolvedForm):
            kind = "form"
            process = resolved.idx_form
            origin = dest = resolved.resource
        else:
            kind = "port"
            process = model.catalog.num_transform + resolved.idx_port_ref
            origin, dest = resolved.idx_origin, resolved.idx_dest
        transitions.append(
            PetriTransition(
                index=idx,
                name=method.name,
                x=base_x + (method.gps_offset_x or 0.0),
                y=base_y + (method.gps_offset_y or 0.0),
                init_tokens=method.init_tokens or 0,
                dt=method.dt if method.dt is not None else 0.0,
                kind=kind,
                resource=resolved.resource,
                process=process,
                origin_place=origin,
                dest_place=dest,
            )
        )
        arcs.append(PetriArc(place=origin, transition=idx, direction="pt"))
        arcs.append(PetriArc(place=dest, transition=idx, direction="tp"))

    if missing:
        raise PetriModelError(
            "replay requires gps, initTokens, and dT attributes; missing on: " + "; ".join(missing)
        )
    return PetriNetwork(
        system_name=model.raw.name,
        places=tuple(places),
        transitions=tuple(transitions),
        arcs=tuple(arcs),
        operands=model.operands,
    )


def _first_operand(model: SystemModel, names: list[str]) -> int | None:
    if not names:
        return None
    return model.operand_index(names[0])


def map_events(
    events: RawEventList,
    model: SystemModel,
    bundle: HfgtBundle,
    *,
    local_process_index: bool = False,
) -> list[MappedEvent]:
    """Resolve each event row to a realized capability and its token path.

    `idxProcess` indexes the system process set; with `local_process_index`
    it instead indexes the resource's own method list (forms before ports,
    file order).
    """
    ordered = canonical_transitions(model)
    transition_of: dict[int, int] = {id(r): i for i, r in enumerate(ordered, start=1)}
    locals_by_resource: dict[int, list[ResolvedForm | ResolvedPort]] = {}
    for resolved in ordered:
        locals_by_resource.setdefault(resolved.resource, []).append(resolved)

    mapped: list[MappedEvent] = []
    for event in events.rows:
        v = event.idx_resource
        if not 1 <= v <= model.resources.num_resources:
            raise InfeasibleEventError(
                f"infeasible event at row {event.row}: resource index {v} out of range",
                row=event.row,
            )
        resource_name = model.resources.resource_names[v - 1]

        if local_process_index:
            local = locals_by_resource.get(v, [])
            if not 1 <= event.idx_process <= len(local):
                raise InfeasibleEventError(
                    f"infeasible event at row {event.row}: resource '{resource_name}' has no "
                    f"local method {event.idx_process}",
                    row=event.row,
                )
            resolved = local[event.idx_process - 1]
            if isinstance(resolved, ResolvedForm):
                process = resolved.idx_form
            else:
                process = model.catalog.num_transform + resolved.idx_port_ref
        else:
            process = event.idx_process
            if not 1 <= process <= model.catalog.num_system_processes:
                raise InfeasibleEventError(
                    f"infeasible event at row {event.row}: process index {process} out of range",
                    row=event.row,
                )
            resolved = _find_method(model, ordered, process, v)

        if (process, v) not in bundle.system.a:
            label = model.catalog.process_label(process, model.resources.buffer_names)
            raise InfeasibleEventError(
                f"infeasible event at row {event.row}: {label} is not a realized capability "
                f"of resource '{resource_name}'",
                row=event.row,
            )
        if resolved is None:  # realized but no declaring instance: unreachable
            raise InfeasibleEventError(
                f"infeasible event at row {event.row}: no method instance found", row=event.row
            )

        method = resolved.method
        if method.dt is None:
            raise PetriModelError(f"{resource_name}/{method.name}: dT required for replay")
        if isinstance(resolved, ResolvedForm):
            origin = dest = resolved.resource
            operand_in = _first_operand(model, method.operand)
            operand_out = _first_operand(model, method.output)
        else:
            origin, dest = resolved.idx_origin, resolved.idx_dest
            hold_operand, hold_output = model.holding_signature(resolved.idx_hold)
            operand_in = _first_operand(model, hold_operand)
            operand_out = _first_operand(model, hold_output)
        mapped.append(
            MappedEvent(
                token=event.idx_token,
                t_start=event.t_start,
                t_end=event.t_start + method.dt,
                row=event.row,
                process=process,
                resource=v,
                transition=transition_of[id(resolved)],
                origin_place=origin,
                dest_place=dest,
                operand_in=operand_in,
                operand_out=operand_out,
            )
        )
    return mapped


def _find_method(model: SystemModel, ordered, process: int, resource: int):
    """Active declaring instance of (process, resource), if any."""
    best = None
    for resolved in ordered:
        if resolved.resource != resource:
            continue
        if isinstance(resolved, ResolvedForm):
            candidate = resolved.idx_form
        else:
            candidate = model.catalog.num_transform + resolved.idx_port_ref
        if candidate != process:
            continue
        if resolved.method.status == "active":
            return resolved
        if best is None:
            best = resolved
    return best


def simulate_token_flow(net: PetriNetwork, events: list[MappedEvent]) -> PetriNetwork:
    """Replay the mapped events, populating the Qb/Qt timelines.

    Tokens are tracked individually: ids are assigned to the initial
    marking in place order, an event moves its own token, and a token that
    is not at the event's origin place is an inconsistency, not a clamp.
    A token's operand before its first event is inferred retroactively from
    that event; transformations relabel the token with their output.

    Columns cover the sorted unique event times ({0} always included); when
    a delta occurs at t=0, a synthetic leading column preserves the
    pristine initial marking so the delta stays visible.
    """
    total_tokens = sum(p.init_tokens for p in net.places)
    if total_tokens and not net.operands:
        raise PetriModelError("system declares initial tokens but no operands")

    place_name = {p.index: p.name for p in net.places}
    for event in events:
        if not 1 <= event.token <= total_tokens:
            raise InfeasibleEventError(
                f"infeasible event at row {event.row}: token {event.token} does not exist "
                f"({total_tokens} initial tokens)",
                row=event.row,
            )

    location: dict[int, tuple[str, int]] = {}
    token = 1
    for place in net.places:
        for _ in range(place.init_tokens):
            location[token] = ("place", place.index)
            token += 1

    operand_of: dict[int, int | None] = {}
    default_operand = 1 if net.operands else None
    for event in events:  # events are in time order; first one wins
        for candidate in (event.operand_in, event.operand_out):
            if event.token not in operand_of and candidate is not None:
                operand_of[event.token] = candidate
    for k in range(1, total_tokens + 1):
        operand_of.setdefault(k, default_operand)

    times = sorted({t for e in events for t in (e.t_start, e.t_end)} | {0.0})
    has_init = any(e.t_start == 0.0 for e in events)
    columns = (1 if has_init else 0) + len(times)
    qb = np.zeros((len(net.places), columns), dtype=int)
    qt = np.zeros((len(net.transitions), columns), dtype=int)
    states: list[tuple[tuple[str, int, int | None], ...]] = []

    transition_tokens = {t.index: t.init_tokens for t in net.transitions}

    def snapshot(col: int) -> None:
        for k in range(1, total_tokens + 1):
            kind, idx = location[k]
            if kind == "place":
                qb[idx - 1, col] += 1
            else:
                qt[idx - 1, col] += 1
        for t in net.transitions:  # static initial tokens sit in the transition
            qt[t.index - 1, col] += transition_tokens[t.index]
        states.append(tuple((*location[k], operand_of[k]) for k in range(1, total_tokens + 1)))

    if has_init:
        snapshot(0)

    arrivals: dict[float, list[MappedEvent]] = {}
    departures: dict[float, list[MappedEvent]] = {}
    for event in events:
        if event.t_end > event.t_start:
            arrivals.setdefault(event.t_end, []).append(event)
        departures.setdefault(event.t_start, []).append(event)

    for col, t in enumerate(times, start=1 if has_init else 0):
        for event in arrivals.get(t, ()):
            location[event.token] = ("place", event.dest_place)
            if event.operand_out is not None:
                operand_of[event.token] = event.operand_out
        for event in departures.get(t, ()):
            kind, idx = location[event.token]
            if kind != "place" or idx != event.origin_place:
                raise InfeasibleEventError(
                    f"infeasible event at row {event.row}: token {event.token} is not at place "
                    f"'{place_name[event.origin_place]}' at t={t:g}",
                    row=event.row,
                )
            if event.operand_in is not None:
                operand_of[event.token] = event.operand_in
            if event.t_end > event.t_start:
                location[event.token] = ("transition", event.transition)
            else:
                location[event.token] = ("place", event.dest_place)
                if event.operand_out is not None:
                    operand_of[event.token] = event.operand_out
        snapshot(col)

    net.timeline = tuple(times)
    net.has_init_column = has_init
    net.qb = qb
    net.qt = qt
    net.events = tuple(events)
    net.token_states = tuple(states)
    return net


def derive_draw_matrices(net: PetriNetwork) -> tuple[dict[str, np.ndarray], dict[str, np.ndarray]]:
    """Per-operand decomposition of Qb/Qt; slices sum to the totals exactly.

    Static transition init tokens (never moved by events) are attributed to
    the first operand.
    """
    if net.qb is None or net.qt is None:
        raise PetriModelError("simulation has not run")
    columns = net.num_columns
    qb_draw = {name: np.zeros((len(net.places), columns), dtype=int) for name in net.operands}
    qt_draw = {name: np.zeros((len(net.transitions), columns), dtype=int) for name in net.operands}
    for col, state in enumerate(net.token_states):
        for kind, idx, operand in state:
            name = net.operands[(operand or 1) - 1]
            if kind == "place":
                qb_draw[name][idx - 1, col] += 1
            else:
                qt_draw[name][idx - 1, col] += 1
    if net.operands:
        first = net.operands[0]
        for t in net.transitions:
            if t.init_tokens:
                qt_draw[first][t.index - 1, :] += t.init_tokens
    return qb_draw, qt_draw


def export_frames(net: PetriNetwork) -> dict:
    """Serialize the net and its timeline as an animation frame document."""
    if net.qb is None or net.qt is None:
        raise PetriModelError("simulation has not run")
    qb_draw, qt_draw = derive_draw_matrices(net)
    times = net.column_times()

    frames = []
    for col in range(net.num_columns):
        time = times[col]
        fired = [
            {
                "token": e.token,
                "transition": e.transition,
                "origin": e.origin_place,
                "dest": e.dest_place,
                "start": e.t_start,
                "end": e.t_end,
            }
            for e in net.events
            if col > 0 and e.t_start == time
        ]
        frames.append(
            {
                "index": col,
                "time": time,
                "initial": col == 0,
                "places": {
                    "total": [int(x) for x in net.qb[:, col]],
                    "byOperand": {
                        name: [int(x) for x in qb_draw[name][:, col]] for name in net.operands
                    },
                },
                "transitions": {
                    "total": [int(x) for x in net.qt[:, col]],
                    "byOperand": {
                        name: [int(x) for x in qt_draw[name][:, col]] for name in net.operands
                    },
                },
                "fired": fired,
            }
        )

    return {
        "schema": "hfgt-frames/1",
        "system": net.system_name,
        "operands": list(net.operands),
        "places": [
            {"index": p.index, "name": p.name, "x": p.x, "y": p.y, "initTokens": p.init_tokens}
            for p in net.places
        ],
        "transitions": [
            {"index": t.index, "name": t.name, "x": t.x, "y": t.y, "dt": t.dt}
            for t in net.transitions
        ],
        "arcs": [
            {"place": a.place, "transition": a.transition, "direction": a.direction}
            for a in net.arcs
        ],
        "legend": {
            "places": [f"{p.index} {p.name}" for p in net.places],
            "transitions": [f"{t.index} {t.name}" for t in net.transitions],
        },
        "frames": frames,
    }
