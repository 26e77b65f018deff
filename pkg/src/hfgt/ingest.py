"""LFES XML ingestion: parsing, serialization, cross-reference validation.

The input file describes one large flexible engineering system (LFES): its
transformation resources (machines), independent buffers, transporters,
controllers, services, operands, and the abstraction layer (holding process
refinements and permitted process sequences).  Parsing mirrors the element
hierarchy into plain dataclasses without computing anything; `validate_raw`
mechanizes the cross-reference checks and returns positioned diagnostics
instead of raising.

Set-valued attributes ("operand", "output") are comma-separated inside a
single XML attribute; whitespace around commas is trimmed.  A missing
"status" means active.  GPS coordinates, initial token counts, and process
durations are optional here; the Petri replay path rejects their absence.
"""

from __future__ import annotations

import csv
import io
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from .errors import EventListError, LfesParseError, LfesSchemaError

VALID_STATUS = ("active", "inactive")


# ---------------------------------------------------------------------------
# Raw structures (one per XML element)
# ---------------------------------------------------------------------------

@dataclass
class RawMethodxForm:
    """A transformation process declared by a machine."""

    name: str
    status: str = "active"
    operand: list[str] = field(default_factory=list)
    output: list[str] = field(default_factory=list)
    gps_offset_x: float | None = None
    gps_offset_y: float | None = None
    init_tokens: int | None = None
    dt: float | None = None
    extra: dict[str, str] = field(default_factory=dict)


@dataclass
class RawMethodxPort:
    """A refined transportation process declared by a resource.

    Storage is transportation with origin == dest.  `ref` names the holding
    process that refines the move and must appear in the abstraction list.
    """

    name: str
    origin: str
    dest: str
    status: str = "active"
    ref: str | None = None
    operand: list[str] = field(default_factory=list)
    output: list[str] = field(default_factory=list)
    gps_offset_x: float | None = None
    gps_offset_y: float | None = None
    init_tokens: int | None = None
    dt: float | None = None
    extra: dict[str, str] = field(default_factory=dict)


@dataclass
class RawMachine:
    name: str
    controller: str | None = None
    gps_x: float | None = None
    gps_y: float | None = None
    init_tokens: int | None = None
    methods_form: list[RawMethodxForm] = field(default_factory=list)
    methods_port: list[RawMethodxPort] = field(default_factory=list)
    extra: dict[str, str] = field(default_factory=dict)


@dataclass
class RawIndBuffer:
    name: str
    controller: str | None = None
    gps_x: float | None = None
    gps_y: float | None = None
    init_tokens: int | None = None
    methods_port: list[RawMethodxPort] = field(default_factory=list)
    extra: dict[str, str] = field(default_factory=dict)


@dataclass
class RawTransporter:
    name: str
    controller: str | None = None
    methods_port: list[RawMethodxPort] = field(default_factory=list)
    extra: dict[str, str] = field(default_factory=dict)


@dataclass
class RawController:
    name: str
    status: str = "active"
    peer_recipients: list[str] = field(default_factory=list)
    extra: dict[str, str] = field(default_factory=dict)


@dataclass
class RawServiceTransition:
    name: str
    preset: str
    postset: str
    method_link_name: str
    method_link_ref: str | None = None
    extra: dict[str, str] = field(default_factory=dict)


@dataclass
class RawService:
    name: str
    status: str = "active"
    operand: str | None = None
    places: list[str] = field(default_factory=list)
    transitions: list[RawServiceTransition] = field(default_factory=list)
    extra: dict[str, str] = field(default_factory=dict)


@dataclass
class RawAbstractMethod:
    """A holding-process refinement with its operand signature."""

    name: str
    ref: str
    operand: list[str] = field(default_factory=list)
    output: list[str] = field(default_factory=list)
    extra: dict[str, str] = field(default_factory=dict)


@dataclass
class RawMethodPair:
    """A permitted succession: the first process may be followed by the second."""

    name1: str
    name2: str
    ref1: str | None = None
    ref2: str | None = None
    extra: dict[str, str] = field(default_factory=dict)


@dataclass
class RawAbstractions:
    methods_port: list[RawAbstractMethod] = field(default_factory=list)
    method_pairs: list[RawMethodPair] = field(default_factory=list)


@dataclass
class RawLfes:
    """Direct image of one LFES XML document, before any computation."""

    name: str
    type: str = ""
    data_state: str = "raw"
    machines: list[RawMachine] = field(default_factory=list)
    ind_buffers: list[RawIndBuffer] = field(default_factory=list)
    transporters: list[RawTransporter] = field(default_factory=list)
    controllers: list[RawController] = field(default_factory=list)
    services: list[RawService] = field(default_factory=list)
    operands: list[str] = field(default_factory=list)
    abstractions: RawAbstractions = field(default_factory=RawAbstractions)
    extra: dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.severity}: {self.path}: {self.message}"


@dataclass(frozen=True)
class RawEvent:
    idx_token: int
    t_start: float
    idx_resource: int
    idx_process: int
    row: int  # 1-based data row in the source CSV


@dataclass(frozen=True)
class RawEventList:
    rows: tuple[RawEvent, ...] = ()


# ---------------------------------------------------------------------------
# XML parsing
# ---------------------------------------------------------------------------

def split_list(value: str | None) -> list[str]:
    """Split a comma-separated attribute value, trimming whitespace."""
    if value is None:
        return []
    return [part.strip() for part in value.split(",") if part.strip()]


class _Attrs:
    """Attribute reader that tracks which keys were consumed."""

    def __init__(self, element: ET.Element, path: str):
        self.raw = dict(element.attrib)
        self.path = path
        self._used: set[str] = set()

    def get(self, key: str) -> str | None:
        self._used.add(key)
        return self.raw.get(key)

    def require(self, key: str) -> str:
        value = self.get(key)
        if value is None or value == "":
            raise LfesSchemaError(f"missing required attribute '{key}'", self.path)
        return value

    def get_float(self, key: str) -> float | None:
        value = self.get(key)
        if value is None:
            return None
        try:
            return float(value)
        except ValueError:
            raise LfesSchemaError(f"attribute '{key}' is not a number: {value!r}", self.path) from None

    def get_nonneg_float(self, key: str) -> float | None:
        value = self.get_float(key)
        if value is not None and value < 0:
            raise LfesSchemaError(f"attribute '{key}' must be non-negative: {value}", self.path)
        return value

    def get_nonneg_int(self, key: str) -> int | None:
        value = self.get(key)
        if value is None:
            return None
        try:
            parsed = int(value)
        except ValueError:
            raise LfesSchemaError(f"attribute '{key}' is not an integer: {value!r}", self.path) from None
        if parsed < 0:
            raise LfesSchemaError(f"attribute '{key}' must be non-negative: {parsed}", self.path)
        return parsed

    def get_status(self) -> str:
        value = self.get("status")
        if value is None:
            return "active"
        if value not in VALID_STATUS:
            raise LfesSchemaError(f"attribute 'status' must be active or inactive: {value!r}", self.path)
        return value

    def leftovers(self) -> dict[str, str]:
        return {k: v for k, v in self.raw.items() if k not in self._used}


def _child_path(parent: str, element: ET.Element, ordinal: int) -> str:
    label = element.get("name") or str(ordinal)
    return f"{parent}/{element.tag}[{label}]"


def _reject_children(element: ET.Element, path: str, allowed: tuple[str, ...]) -> None:
    for child in element:
        if child.tag not in allowed:
            raise LfesSchemaError(f"unexpected element <{child.tag}>", path)


def _parse_form(element: ET.Element, path: str) -> RawMethodxForm:
    a = _Attrs(element, path)
    form = RawMethodxForm(
        name=a.require("name"),
        status=a.get_status(),
        operand=split_list(a.require("operand")),
        output=split_list(a.require("output")),
        gps_offset_x=a.get_float("gpsOffSetX"),
        gps_offset_y=a.get_float("gpsOffSetY"),
        init_tokens=a.get_nonneg_int("initTokens"),
        dt=a.get_nonneg_float("dT"),
    )
    form.extra = a.leftovers()
    _reject_children(element, path, ())
    return form


def _parse_port(element: ET.Element, path: str) -> RawMethodxPort:
    a = _Attrs(element, path)
    port = RawMethodxPort(
        name=a.require("name"),
        origin=a.require("origin"),
        dest=a.require("dest"),
        status=a.get_status(),
        ref=a.get("ref"),
        operand=split_list(a.get("operand")),
        output=split_list(a.get("output")),
        gps_offset_x=a.get_float("gpsOffSetX"),
        gps_offset_y=a.get_float("gpsOffSetY"),
        init_tokens=a.get_nonneg_int("initTokens"),
        dt=a.get_nonneg_float("dT"),
    )
    port.extra = a.leftovers()
    _reject_children(element, path, ())
    return port


def _parse_methods(element: ET.Element, path: str, allow_forms: bool) -> tuple[list[RawMethodxForm], list[RawMethodxPort]]:
    allowed = ("MethodxForm", "MethodxPort") if allow_forms else ("MethodxPort",)
    _reject_children(element, path, allowed)
    forms: list[RawMethodxForm] = []
    ports: list[RawMethodxPort] = []
    for n, child in enumerate(element, start=1):
        child_path = _child_path(path, child, n)
        if child.tag == "MethodxForm":
            forms.append(_parse_form(child, child_path))
        else:
            ports.append(_parse_port(child, child_path))
    return forms, ports


def _parse_machine(element: ET.Element, path: str) -> RawMachine:
    a = _Attrs(element, path)
    machine = RawMachine(
        name=a.require("name"),
        controller=a.get("controller"),
        gps_x=a.get_float("gpsX"),
        gps_y=a.get_float("gpsY"),
        init_tokens=a.get_nonneg_int("initTokens"),
    )
    machine.extra = a.leftovers()
    machine.methods_form, machine.methods_port = _parse_methods(element, path, allow_forms=True)
    return machine


def _parse_ind_buffer(element: ET.Element, path: str) -> RawIndBuffer:
    a = _Attrs(element, path)
    buffer = RawIndBuffer(
        name=a.require("name"),
        controller=a.get("controller"),
        gps_x=a.get_float("gpsX"),
        gps_y=a.get_float("gpsY"),
        init_tokens=a.get_nonneg_int("initTokens"),
    )
    buffer.extra = a.leftovers()
    _, buffer.methods_port = _parse_methods(element, path, allow_forms=False)
    return buffer


def _parse_transporter(element: ET.Element, path: str) -> RawTransporter:
    a = _Attrs(element, path)
    transporter = RawTransporter(
        name=a.require("name"),
        controller=a.get("controller"),
    )
    transporter.extra = a.leftovers()
    _, transporter.methods_port = _parse_methods(element, path, allow_forms=False)
    return transporter


def _parse_controller(element: ET.Element, path: str) -> RawController:
    a = _Attrs(element, path)
    controller = RawController(name=a.require("name"), status=a.get_status())
    controller.extra = a.leftovers()
    _reject_children(element, path, ("PeerRecipient",))
    for n, child in enumerate(element, start=1):
        child_path = _child_path(path, child, n)
        ca = _Attrs(child, child_path)
        controller.peer_recipients.append(ca.require("name"))
    return controller


def _parse_service(element: ET.Element, path: str) -> RawService:
    a = _Attrs(element, path)
    service = RawService(name=a.require("name"), status=a.get_status(), operand=a.get("operand"))
    service.extra = a.leftovers()
    _reject_children(element, path, ("ServicePlace", "ServiceTransition"))
    for n, child in enumerate(element, start=1):
        child_path = _child_path(path, child, n)
        ca = _Attrs(child, child_path)
        if child.tag == "ServicePlace":
            service.places.append(ca.require("name"))
        else:
            transition = RawServiceTransition(
                name=ca.require("name"),
                preset=ca.require("preset"),
                postset=ca.require("postset"),
                method_link_name=ca.require("methodLinkName"),
                method_link_ref=ca.get("methodLinkRef"),
            )
            transition.extra = ca.leftovers()
            service.transitions.append(transition)
    return service


def _parse_abstractions(element: ET.Element, path: str) -> RawAbstractions:
    abstractions = RawAbstractions()
    _reject_children(element, path, ("MethodxPort", "MethodPair"))
    for n, child in enumerate(element, start=1):
        child_path = _child_path(path, child, n)
        ca = _Attrs(child, child_path)
        if child.tag == "MethodxPort":
            method = RawAbstractMethod(
                name=ca.require("name"),
                ref=ca.require("ref"),
                operand=split_list(ca.get("operand")),
                output=split_list(ca.get("output")),
            )
            method.extra = ca.leftovers()
            abstractions.methods_port.append(method)
        else:
            pair = RawMethodPair(
                name1=ca.require("name1"),
                name2=ca.require("name2"),
                ref1=ca.get("ref1"),
                ref2=ca.get("ref2"),
            )
            pair.extra = ca.leftovers()
            abstractions.method_pairs.append(pair)
    return abstractions


_ROOT_CHILDREN = ("Machine", "IndBuffer", "Transporter", "Controller", "Service", "Operand", "Abstractions")


def parse_lfes(xml_bytes: bytes | str) -> RawLfes:
    """Parse one LFES XML document into its raw in-memory mirror.

    Raises `LfesParseError` on malformed XML (with line/column) and
    `LfesSchemaError` when the document is well-formed but violates the
    grammar (unknown elements, missing names, bad numbers).  Attributes the
    grammar does not know are preserved per element in `extra`.
    """
    if isinstance(xml_bytes, str):
        xml_bytes = xml_bytes.encode("utf-8")
    try:
        root = ET.fromstring(xml_bytes)
    except ET.ParseError as exc:
        line, column = exc.position if exc.position else (None, None)
        reason = str(exc).split(":")[0]
        raise LfesParseError(f"malformed XML: {reason}", line, column) from exc

    if root.tag != "LFES":
        raise LfesSchemaError(f"root element must be <LFES>, found <{root.tag}>", root.tag)

    a = _Attrs(root, "LFES")
    data_state = a.get("dataState") or "raw"
    if data_state != "raw":
        raise LfesSchemaError(f"attribute 'dataState' must be 'raw' on input: {data_state!r}", "LFES")
    lfes = RawLfes(name=a.require("name"), type=a.get("type") or "", data_state=data_state)
    lfes.extra = a.leftovers()

    _reject_children(root, "LFES", _ROOT_CHILDREN)
    for n, child in enumerate(root, start=1):
        path = _child_path("LFES", child, n)
        if child.tag == "Machine":
            lfes.machines.append(_parse_machine(child, path))
        elif child.tag == "IndBuffer":
            lfes.ind_buffers.append(_parse_ind_buffer(child, path))
        elif child.tag == "Transporter":
            lfes.transporters.append(_parse_transporter(child, path))
        elif child.tag == "Controller":
            lfes.controllers.append(_parse_controller(child, path))
        elif child.tag == "Service":
            lfes.services.append(_parse_service(child, path))
        elif child.tag == "Operand":
            lfes.operands.append(_Attrs(child, path).require("name"))
        elif child.tag == "Abstractions":
            lfes.abstractions = _parse_abstractions(child, path)
    return lfes


# ---------------------------------------------------------------------------
# XML serialization (inverse of parse_lfes, up to attribute formatting)
# ---------------------------------------------------------------------------

def _fmt(value: float | int) -> str:
    return repr(value) if isinstance(value, float) else str(value)


def _set_common(el: ET.Element, extra: dict[str, str]) -> None:
    for key in sorted(extra):
        el.set(key, extra[key])


def _emit_method_attrs(el: ET.Element, m: RawMethodxForm | RawMethodxPort) -> None:
    el.set("status", m.status)
    if m.operand:
        el.set("operand", ", ".join(m.operand))
    if m.output:
        el.set("output", ", ".join(m.output))
    if m.gps_offset_x is not None:
        el.set("gpsOffSetX", _fmt(m.gps_offset_x))
    if m.gps_offset_y is not None:
        el.set("gpsOffSetY", _fmt(m.gps_offset_y))
    if m.init_tokens is not None:
        el.set("initTokens", _fmt(m.init_tokens))
    if m.dt is not None:
        el.set("dT", _fmt(m.dt))
    _set_common(el, m.extra)


def _emit_resource_attrs(el: ET.Element, r: RawMachine | RawIndBuffer) -> None:
    if r.controller is not None:
        el.set("controller", r.controller)
    if r.gps_x is not None:
        el.set("gpsX", _fmt(r.gps_x))
    if r.gps_y is not None:
        el.set("gpsY", _fmt(r.gps_y))
    if r.init_tokens is not None:
        el.set("initTokens", _fmt(r.init_tokens))
    _set_common(el, r.extra)


def serialize_lfes(lfes: RawLfes) -> bytes:
    """Render a raw LFES back to XML; reparsing yields an equal structure."""
    root = ET.Element("LFES", name=lfes.name)
    if lfes.type:
        root.set("type", lfes.type)
    root.set("dataState", lfes.data_state)
    _set_common(root, lfes.extra)

    for operand in lfes.operands:
        ET.SubElement(root, "Operand", name=operand)
    for machine in lfes.machines:
        el = ET.SubElement(root, "Machine", name=machine.name)
        _emit_resource_attrs(el, machine)
        for form in machine.methods_form:
            fe = ET.SubElement(el, "MethodxForm", name=form.name)
            _emit_method_attrs(fe, form)
        for port in machine.methods_port:
            pe = ET.SubElement(el, "MethodxPort", name=port.name, origin=port.origin, dest=port.dest)
            if port.ref is not None:
                pe.set("ref", port.ref)
            _emit_method_attrs(pe, port)
    for buffer in lfes.ind_buffers:
        el = ET.SubElement(root, "IndBuffer", name=buffer.name)
        _emit_resource_attrs(el, buffer)
        for port in buffer.methods_port:
            pe = ET.SubElement(el, "MethodxPort", name=port.name, origin=port.origin, dest=port.dest)
            if port.ref is not None:
                pe.set("ref", port.ref)
            _emit_method_attrs(pe, port)
    for transporter in lfes.transporters:
        el = ET.SubElement(root, "Transporter", name=transporter.name)
        if transporter.controller is not None:
            el.set("controller", transporter.controller)
        _set_common(el, transporter.extra)
        for port in transporter.methods_port:
            pe = ET.SubElement(el, "MethodxPort", name=port.name, origin=port.origin, dest=port.dest)
            if port.ref is not None:
                pe.set("ref", port.ref)
            _emit_method_attrs(pe, port)
    for controller in lfes.controllers:
        el = ET.SubElement(root, "Controller", name=controller.name, status=controller.status)
        _set_common(el, controller.extra)
        for peer in controller.peer_recipients:
            ET.SubElement(el, "PeerRecipient", name=peer)
    for service in lfes.services:
        el = ET.SubElement(root, "Service", name=service.name, status=service.status)
        if service.operand is not None:
            el.set("operand", service.operand)
        _set_common(el, service.extra)
        for place in service.places:
            ET.SubElement(el, "ServicePlace", name=place)
        for transition in service.transitions:
            te = ET.SubElement(
                el,
                "ServiceTransition",
                name=transition.name,
                preset=transition.preset,
                postset=transition.postset,
                methodLinkName=transition.method_link_name,
            )
            if transition.method_link_ref is not None:
                te.set("methodLinkRef", transition.method_link_ref)
            _set_common(te, transition.extra)
    if lfes.abstractions.methods_port or lfes.abstractions.method_pairs:
        ab = ET.SubElement(root, "Abstractions")
        for method in lfes.abstractions.methods_port:
            me = ET.SubElement(ab, "MethodxPort", name=method.name, ref=method.ref)
            if method.operand:
                me.set("operand", ", ".join(method.operand))
            if method.output:
                me.set("output", ", ".join(method.output))
            _set_common(me, method.extra)
        for pair in lfes.abstractions.method_pairs:
            pe = ET.SubElement(ab, "MethodPair", name1=pair.name1)
            if pair.ref1 is not None:
                pe.set("ref1", pair.ref1)
            pe.set("name2", pair.name2)
            if pair.ref2 is not None:
                pe.set("ref2", pair.ref2)
            _set_common(pe, pair.extra)

    tree = ET.ElementTree(root)
    ET.indent(tree)
    out = io.BytesIO()
    tree.write(out, encoding="utf-8", xml_declaration=True)
    return out.getvalue()


# ---------------------------------------------------------------------------
# Cross-reference validation
# ---------------------------------------------------------------------------

def _iter_ports(lfes: RawLfes):
    for machine in lfes.machines:
        yield f"LFES/Machine[{machine.name}]", machine.methods_port
    for buffer in lfes.ind_buffers:
        yield f"LFES/IndBuffer[{buffer.name}]", buffer.methods_port
    for transporter in lfes.transporters:
        yield f"LFES/Transporter[{transporter.name}]", transporter.methods_port


def known_process_names(lfes: RawLfes) -> set[str]:
    """Names usable as a service methodLinkName target."""
    names = {form.name for machine in lfes.machines for form in machine.methods_form}
    for _, ports in _iter_ports(lfes):
        names.update(port.name for port in ports)
    names.update(method.name for method in lfes.abstractions.methods_port)
    return names


def validate_raw(lfes: RawLfes) -> list[Diagnostic]:
    """Check every cross-reference in a raw LFES; empty result means valid."""
    diags: list[Diagnostic] = []

    def error(path: str, message: str) -> None:
        diags.append(Diagnostic("error", path, message))

    def warning(path: str, message: str) -> None:
        diags.append(Diagnostic("warning", path, message))

    resource_paths: dict[str, str] = {}
    for kind, items in (
        ("Machine", lfes.machines),
        ("IndBuffer", lfes.ind_buffers),
        ("Transporter", lfes.transporters),
    ):
        for item in items:
            path = f"LFES/{kind}[{item.name}]"
            if item.name in resource_paths:
                error(path, f"duplicate resource name '{item.name}' also declared at {resource_paths[item.name]}")
            else:
                resource_paths[item.name] = path

    buffer_names = {m.name for m in lfes.machines} | {b.name for b in lfes.ind_buffers}
    transporter_names = {t.name for t in lfes.transporters}

    controller_names: set[str] = set()
    for controller in lfes.controllers:
        path = f"LFES/Controller[{controller.name}]"
        if controller.name in controller_names:
            error(path, f"duplicate controller name '{controller.name}'")
        controller_names.add(controller.name)
    for controller in lfes.controllers:
        path = f"LFES/Controller[{controller.name}]"
        for peer in controller.peer_recipients:
            if peer not in controller_names:
                error(path, f"unknown controller '{peer}' named as PeerRecipient")

    for kind, items in (
        ("Machine", lfes.machines),
        ("IndBuffer", lfes.ind_buffers),
        ("Transporter", lfes.transporters),
    ):
        for item in items:
            if item.controller is not None and item.controller not in controller_names:
                error(f"LFES/{kind}[{item.name}]", f"unknown controller '{item.controller}'")

    holding_refs: set[str] = set()
    for method in lfes.abstractions.methods_port:
        path = f"LFES/Abstractions/MethodxPort[{method.name}]"
        if method.ref in holding_refs:
            error(path, f"duplicate holding process ref '{method.ref}'")
        holding_refs.add(method.ref)

    for owner_path, ports in _iter_ports(lfes):
        for port in ports:
            path = f"{owner_path}/MethodxPort[{port.name}]"
            for attr, target in (("origin", port.origin), ("dest", port.dest)):
                if target in buffer_names:
                    continue
                if target in transporter_names:
                    error(path, f"{attr} '{target}' is a transporter, not a buffer")
                else:
                    error(path, f"unknown buffer {target}")
            if port.ref is None:
                error(path, "missing holding process ref")
            elif port.ref not in holding_refs:
                error(path, f"holding process ref '{port.ref}' not declared under Abstractions")

    for transporter in lfes.transporters:
        if not transporter.methods_port:
            error(f"LFES/Transporter[{transporter.name}]", "transporter declares no MethodxPort")

    process_names = known_process_names(lfes)
    operand_universe = set(lfes.operands)
    for machine in lfes.machines:
        for form in machine.methods_form:
            operand_universe.update(form.operand)
            operand_universe.update(form.output)
    for _, ports in _iter_ports(lfes):
        for port in ports:
            operand_universe.update(port.operand)
            operand_universe.update(port.output)
    for method in lfes.abstractions.methods_port:
        operand_universe.update(method.operand)
        operand_universe.update(method.output)

    service_names: set[str] = set()
    for service in lfes.services:
        path = f"LFES/Service[{service.name}]"
        if service.name in service_names:
            warning(path, f"duplicate service name '{service.name}'")
        service_names.add(service.name)
        place_names = set(service.places)
        for transition in service.transitions:
            tpath = f"{path}/ServiceTransition[{transition.name}]"
            for attr, target in (("preset", transition.preset), ("postset", transition.postset)):
                if target not in place_names:
                    error(tpath, f"{attr} '{target}' is not a declared ServicePlace")
            if transition.method_link_name not in process_names:
                error(tpath, f"methodLinkName '{transition.method_link_name}' matches no declared process")
            if transition.method_link_ref is not None and transition.method_link_ref not in holding_refs:
                error(tpath, f"methodLinkRef '{transition.method_link_ref}' matches no holding process")
        if service.operand is not None and service.operand not in operand_universe:
            error(path, f"operand '{service.operand}' is not an operand of the system")

    for n, pair in enumerate(lfes.abstractions.method_pairs, start=1):
        path = f"LFES/Abstractions/MethodPair[{n}]"
        for name, ref in ((pair.name1, pair.ref1), (pair.name2, pair.ref2)):
            if name not in process_names:
                error(path, f"process name '{name}' matches no declared process")
            if ref is not None and ref not in holding_refs:
                error(path, f"ref '{ref}' matches no holding process")

    return diags


# ---------------------------------------------------------------------------
# Scheduled event list CSV
# ---------------------------------------------------------------------------

EVENT_COLUMNS = ("idxToken", "tStart", "idxResource", "idxProcess")


def parse_event_list(csv_bytes: bytes | str) -> RawEventList:
    """Parse a scheduled event list, sorted ascending by start time (stable).

    The header must contain exactly the four column names, in any order.
    Indices are 1-based as published; conversion happens at the consumer.
    """
    if isinstance(csv_bytes, bytes):
        text = csv_bytes.decode("utf-8")
    else:
        text = csv_bytes
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise EventListError("empty file: missing header row") from None
    header = [cell.strip() for cell in header]
    if sorted(header) != sorted(EVENT_COLUMNS):
        raise EventListError(f"header must contain exactly {', '.join(EVENT_COLUMNS)}; found {', '.join(header)}")
    column = {name: header.index(name) for name in EVENT_COLUMNS}

    events: list[RawEvent] = []
    row_number = 0
    for cells in reader:
        if not cells or all(not cell.strip() for cell in cells):
            continue
        row_number += 1
        if len(cells) != len(header):
            raise EventListError(f"expected {len(header)} cells, found {len(cells)}", row_number)

        def _int(name: str) -> int:
            cell = cells[column[name]].strip()
            try:
                return int(cell)
            except ValueError:
                raise EventListError(f"column {name} is not an integer: {cell!r}", row_number) from None

        def _float(name: str) -> float:
            cell = cells[column[name]].strip()
            try:
                return float(cell)
            except ValueError:
                raise EventListError(f"column {name} is not a number: {cell!r}", row_number) from None

        event = RawEvent(
            idx_token=_int("idxToken"),
            t_start=_float("tStart"),
            idx_resource=_int("idxResource"),
            idx_process=_int("idxProcess"),
            row=row_number,
        )
        if event.t_start < 0:
            raise EventListError(f"tStart must be non-negative: {event.t_start}", row_number)
        for name, value in (("idxToken", event.idx_token), ("idxResource", event.idx_resource), ("idxProcess", event.idx_process)):
            if value < 1:
                raise EventListError(f"column {name} must be a positive index: {value}", row_number)
        events.append(event)

    events.sort(key=lambda e: e.t_start)  # stable: file order preserved on ties
    return RawEventList(tuple(events))
