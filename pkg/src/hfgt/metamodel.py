"""Canonical indexing of resources, processes, and declared methods.

Every matrix builder consumes the indices fixed here.  The conventions:

* Resources are ordered machines, then independent buffers, then
  transporters, each in file order; indices are 1-based.  Machines double
  as buffers, so the buffer set is machines followed by independent
  buffers.
* Transportation processes are all ordered (origin, dest) buffer pairs,
  origin-major: ``idxPort = numBuffers * (origin - 1) + dest``.
* Refined transportation processes are holding-major:
  ``idxPortRef = numBuffers**2 * (hold - 1) + idxPort``.
* The system process axis is transformation processes followed by refined
  transportation processes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MetamodelError
from .ingest import RawLfes, RawMethodxForm, RawMethodxPort


@dataclass(frozen=True)
class ResourceIndex:
    """Within-class and global 1-based indices for every resource."""

    machines: tuple[str, ...]
    ind_buffers: tuple[str, ...]
    transporters: tuple[str, ...]
    num_controllers: int
    num_services: int

    @property
    def num_machines(self) -> int:
        return len(self.machines)

    @property
    def num_ind_buffers(self) -> int:
        return len(self.ind_buffers)

    @property
    def num_buffers(self) -> int:
        return self.num_machines + self.num_ind_buffers

    @property
    def num_transporters(self) -> int:
        return len(self.transporters)

    @property
    def num_resources(self) -> int:
        return self.num_buffers + self.num_transporters

    @property
    def buffer_names(self) -> tuple[str, ...]:
        return self.machines + self.ind_buffers

    @property
    def resource_names(self) -> tuple[str, ...]:
        return self.machines + self.ind_buffers + self.transporters

    def global_index(self, name: str) -> int:
        try:
            return self.resource_names.index(name) + 1
        except ValueError:
            raise MetamodelError(f"unknown resource '{name}'") from None

    def buffer_index(self, name: str) -> int:
        """Index within the buffer set; transporters are rejected."""
        try:
            return self.buffer_names.index(name) + 1
        except ValueError:
            pass
        if name in self.transporters:
            raise MetamodelError(f"'{name}' is a transporter, not a buffer")
        raise MetamodelError(f"unknown buffer '{name}'")


def index_resources(lfes: RawLfes) -> ResourceIndex:
    """Assign canonical indices; duplicate names across classes are rejected."""
    seen: dict[str, str] = {}
    for kind, items in (
        ("Machine", lfes.machines),
        ("IndBuffer", lfes.ind_buffers),
        ("Transporter", lfes.transporters),
    ):
        for item in items:
            where = f"{kind}[{item.name}]"
            if item.name in seen:
                raise MetamodelError(
                    f"duplicate resource name '{item.name}' ({seen[item.name]} and {where})"
                )
            seen[item.name] = where
    return ResourceIndex(
        machines=tuple(m.name for m in lfes.machines),
        ind_buffers=tuple(b.name for b in lfes.ind_buffers),
        transporters=tuple(t.name for t in lfes.transporters),
        num_controllers=len(lfes.controllers),
        num_services=len(lfes.services),
    )


@dataclass(frozen=True)
class ProcessCatalog:
    """The four enumerated process sets with their linearizations."""

    transform_names: tuple[str, ...]
    holding_names: tuple[str, ...]
    num_buffers: int

    @property
    def num_transform(self) -> int:
        return len(self.transform_names)

    @property
    def num_transport(self) -> int:
        return self.num_buffers ** 2

    @property
    def num_holding(self) -> int:
        return len(self.holding_names)

    @property
    def num_refined(self) -> int:
        return self.num_holding * self.num_transport

    @property
    def num_system_processes(self) -> int:
        return self.num_transform + self.num_refined

    def transport_pairs(self) -> list[tuple[int, int]]:
        """All (origin, dest) buffer pairs in index order."""
        nb = self.num_buffers
        return [(o, d) for o in range(1, nb + 1) for d in range(1, nb + 1)]

    def transport_index(self, origin: int, dest: int) -> int:
        return self.num_buffers * (origin - 1) + dest

    def transport_parts(self, idx_port: int) -> tuple[int, int]:
        origin, dest = divmod(idx_port - 1, self.num_buffers)
        return origin + 1, dest + 1

    def refined_index(self, hold: int, origin: int, dest: int) -> int:
        return self.num_transport * (hold - 1) + self.transport_index(origin, dest)

    def refined_parts(self, idx_port_ref: int) -> tuple[int, int, int]:
        hold, port = divmod(idx_port_ref - 1, self.num_transport)
        origin, dest = self.transport_parts(port + 1)
        return hold + 1, origin, dest

    def transform_index(self, name: str) -> int:
        return self.transform_names.index(name) + 1

    def holding_index(self, ref: str) -> int:
        try:
            return self.holding_names.index(ref) + 1
        except ValueError:
            raise MetamodelError(f"holding process '{ref}' not declared under Abstractions") from None

    # -- system process axis (transformations, then refined transports) --

    def is_transform(self, process: int) -> bool:
        return 1 <= process <= self.num_transform

    def refined_of_process(self, process: int) -> int:
        return process - self.num_transform

    def process_label(self, process: int, buffer_names: tuple[str, ...] = ()) -> str:
        if self.is_transform(process):
            return f"transform '{self.transform_names[process - 1]}'"
        hold, origin, dest = self.refined_parts(self.refined_of_process(process))
        o = buffer_names[origin - 1] if buffer_names else f"b{origin}"
        d = buffer_names[dest - 1] if buffer_names else f"b{dest}"
        return f"transport {o}->{d} holding '{self.holding_names[hold - 1]}'"


def build_process_catalog(lfes: RawLfes, resources: ResourceIndex) -> ProcessCatalog:
    """Enumerate the process sets from declarations and abstractions.

    Transformation names deduplicate in first-appearance order; holding
    processes come from the abstraction list, which is the sole authority:
    a concrete port ref missing there is an error.
    """
    transform_names: list[str] = []
    for machine in lfes.machines:
        for form in machine.methods_form:
            if form.name not in transform_names:
                transform_names.append(form.name)

    holding_names: list[str] = []
    for method in lfes.abstractions.methods_port:
        if method.ref in holding_names:
            raise MetamodelError(f"duplicate holding process ref '{method.ref}'")
        holding_names.append(method.ref)

    catalog = ProcessCatalog(
        transform_names=tuple(transform_names),
        holding_names=tuple(holding_names),
        num_buffers=resources.num_buffers,
    )
    for owner, port in _iter_owned_ports(lfes):
        if port.ref is None:
            raise MetamodelError(f"{owner}: MethodxPort '{port.name}' has no holding process ref")
        if port.ref not in holding_names:
            raise MetamodelError(
                f"{owner}: holding process '{port.ref}' not declared under Abstractions"
            )
    return catalog


def _iter_owned_ports(lfes: RawLfes):
    for machine in lfes.machines:
        for port in machine.methods_port:
            yield machine.name, port
    for buffer in lfes.ind_buffers:
        for port in buffer.methods_port:
            yield buffer.name, port
    for transporter in lfes.transporters:
        for port in transporter.methods_port:
            yield transporter.name, port


@dataclass(frozen=True)
class ResolvedForm:
    """A machine's transformation method with its resolved indices."""

    resource: int  # global resource index == buffer index for machines
    resource_name: str
    idx_form: int
    method: RawMethodxForm


@dataclass(frozen=True)
class ResolvedPort:
    """A declared refined-transportation method with all five indices."""

    resource: int
    resource_name: str
    idx_origin: int
    idx_dest: int
    idx_hold: int
    idx_port: int
    idx_port_ref: int
    method: RawMethodxPort


@dataclass(frozen=True)
class MethodIndices:
    forms: tuple[ResolvedForm, ...]
    ports: tuple[ResolvedPort, ...]


def resolve_method_indices(
    lfes: RawLfes, resources: ResourceIndex, catalog: ProcessCatalog
) -> MethodIndices:
    """Resolve every declared method to its canonical indices.

    Origins and destinations must be buffers; a port whose endpoint resolves
    to a transporter (or to nothing) is an error.
    """
    forms: list[ResolvedForm] = []
    for machine in lfes.machines:
        g = resources.global_index(machine.name)
        for form in machine.methods_form:
            forms.append(
                ResolvedForm(
                    resource=g,
                    resource_name=machine.name,
                    idx_form=catalog.transform_index(form.name),
                    method=form,
                )
            )

    ports: list[ResolvedPort] = []
    for owner_name, port in _iter_owned_ports(lfes):
        g = resources.global_index(owner_name)
        try:
            idx_origin = resources.buffer_index(port.origin)
            idx_dest = resources.buffer_index(port.dest)
        except MetamodelError as exc:
            raise MetamodelError(f"{owner_name}/MethodxPort[{port.name}]: {exc}") from None
        if port.ref is None:
            raise MetamodelError(f"{owner_name}/MethodxPort[{port.name}]: missing holding process ref")
        idx_hold = catalog.holding_index(port.ref)
        idx_port = catalog.transport_index(idx_origin, idx_dest)
        ports.append(
            ResolvedPort(
                resource=g,
                resource_name=owner_name,
                idx_origin=idx_origin,
                idx_dest=idx_dest,
                idx_hold=idx_hold,
                idx_port=idx_port,
                idx_port_ref=catalog.refined_index(idx_hold, idx_origin, idx_dest),
                method=port,
            )
        )
    return MethodIndices(tuple(forms), tuple(ports))


def collect_operands(lfes: RawLfes) -> tuple[str, ...]:
    """Operand set: explicit declarations first, then first-appearance order
    of names found on methods and abstraction entries."""
    seen: list[str] = []

    def add(names) -> None:
        for name in names:
            if name not in seen:
                seen.append(name)

    add(lfes.operands)
    for machine in lfes.machines:
        for form in machine.methods_form:
            add(form.operand)
            add(form.output)
    for _, port in _iter_owned_ports(lfes):
        add(port.operand)
        add(port.output)
    for method in lfes.abstractions.methods_port:
        add(method.operand)
        add(method.output)
    return tuple(seen)


@dataclass(frozen=True)
class SystemModel:
    """A fully indexed LFES, ready for matrix construction and replay."""

    raw: RawLfes
    resources: ResourceIndex
    catalog: ProcessCatalog
    forms: tuple[ResolvedForm, ...]
    ports: tuple[ResolvedPort, ...]
    operands: tuple[str, ...]

    @classmethod
    def build(cls, lfes: RawLfes) -> SystemModel:
        resources = index_resources(lfes)
        catalog = build_process_catalog(lfes, resources)
        methods = resolve_method_indices(lfes, resources, catalog)
        return cls(
            raw=lfes,
            resources=resources,
            catalog=catalog,
            forms=methods.forms,
            ports=methods.ports,
            operands=collect_operands(lfes),
        )

    def operand_index(self, name: str) -> int | None:
        try:
            return self.operands.index(name) + 1
        except ValueError:
            return None

    def holding_signature(self, hold: int) -> tuple[list[str], list[str]]:
        """(operand, output) lists of the holding process with this index."""
        ref = self.catalog.holding_names[hold - 1]
        for method in self.raw.abstractions.methods_port:
            if method.ref == ref:
                return method.operand, method.output
        return [], []
