"""Construction of the hetero-functional graph structures.

Outputs, over the catalog fixed by `metamodel`:

* knowledge base / constraint / concept triples (J, K, A = J AND NOT K) for
  transformation, transportation, refined transportation, and the stacked
  system concept, in matrix and tensor form;
* process-operand incidence (MLg, MLP, positive and negative);
* hetero-functional incidence tensors (MRT) over the capability axis
  ``psi = numResources * (process - 1) + resource`` and their projections
  onto realized capabilities;
* the hetero-functional adjacency matrix (AR) with the continuity
  degree-of-freedom partition;
* controller agency (AQ) and controller adjacency (AC);
* per-service Petri nets and feasibility (Lambda) matrices;
* the assembled system adjacency over capabilities, controllers, and
  service transitions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ModelValueError
from .metamodel import SystemModel
from .sparse import SparseBoolMatrix, SparseBoolTensor3, SparseIntTensor3


@dataclass(frozen=True)
class ConceptTriple:
    j: SparseBoolMatrix
    k: SparseBoolMatrix
    a: SparseBoolMatrix


@dataclass(frozen=True)
class ConceptTensorTriple:
    j: SparseBoolTensor3
    k: SparseBoolTensor3
    a: SparseBoolTensor3


def _concept(rows: int, cols: int, declared: set, inactive: set) -> ConceptTriple:
    j = SparseBoolMatrix(rows, cols, frozenset(declared))
    k = SparseBoolMatrix(rows, cols, frozenset(inactive))
    return ConceptTriple(j, k, j.and_not(k))


def transformation_concept(model: SystemModel) -> ConceptTriple:
    """J/K/A over (transformation process, machine)."""
    declared: set = set()
    inactive: set = set()
    for form in model.forms:
        coord = (form.idx_form, form.resource)
        declared.add(coord)
        if form.method.status == "inactive":
            inactive.add(coord)
    return _concept(model.catalog.num_transform, model.resources.num_machines, declared, inactive)


def transport_concept(model: SystemModel) -> tuple[ConceptTriple, ConceptTensorTriple]:
    """J/K/A over (transportation process, resource), plus the
    (dest, origin, resource) tensor forms."""
    declared: set = set()
    inactive: set = set()
    for port in model.ports:
        coord = (port.idx_port, port.resource)
        declared.add(coord)
        if port.method.status == "inactive":
            inactive.add(coord)
    triple = _concept(model.catalog.num_transport, model.resources.num_resources, declared, inactive)
    dims = (model.catalog.num_buffers, model.catalog.num_buffers, model.resources.num_resources)
    tensors = ConceptTensorTriple(
        _tensorize_transport(triple.j, model, dims),
        _tensorize_transport(triple.k, model, dims),
        _tensorize_transport(triple.a, model, dims),
    )
    return triple, tensors


def _tensorize_transport(m: SparseBoolMatrix, model: SystemModel, dims) -> SparseBoolTensor3:
    entries = set()
    for idx_port, resource in m.entries:
        origin, dest = model.catalog.transport_parts(idx_port)
        entries.add((dest, origin, resource))
    return SparseBoolTensor3(dims, frozenset(entries))


def refined_transport_concept(model: SystemModel) -> tuple[ConceptTriple, ConceptTensorTriple]:
    """As `transport_concept` but over refined (holding-resolved) rows.

    Tensor rows stack holding over destination in mode 1:
    ``m1 = numBuffers * (hold - 1) + dest``, mode 2 is the origin.
    """
    declared: set = set()
    inactive: set = set()
    for port in model.ports:
        coord = (port.idx_port_ref, port.resource)
        declared.add(coord)
        if port.method.status == "inactive":
            inactive.add(coord)
    triple = _concept(model.catalog.num_refined, model.resources.num_resources, declared, inactive)
    nb = model.catalog.num_buffers
    dims = (model.catalog.num_holding * nb, nb, model.resources.num_resources)
    tensors = ConceptTensorTriple(
        _tensorize_refined(triple.j, model, dims),
        _tensorize_refined(triple.k, model, dims),
        _tensorize_refined(triple.a, model, dims),
    )
    return triple, tensors


def _tensorize_refined(m: SparseBoolMatrix, model: SystemModel, dims) -> SparseBoolTensor3:
    nb = model.catalog.num_buffers
    entries = set()
    for idx_ref, resource in m.entries:
        hold, origin, dest = model.catalog.refined_parts(idx_ref)
        entries.add((nb * (hold - 1) + dest, origin, resource))
    return SparseBoolTensor3(dims, frozenset(entries))


def matricize_transport_tensor(t: SparseBoolTensor3, model: SystemModel) -> SparseBoolMatrix:
    """Inverse of the (dest, origin, resource) tensor form."""
    rows = model.catalog.num_transport
    entries = frozenset(
        (model.catalog.transport_index(origin, dest), resource) for dest, origin, resource in t.entries
    )
    return SparseBoolMatrix(rows, t.dims[2], entries)


def matricize_refined_tensor(t: SparseBoolTensor3, model: SystemModel) -> SparseBoolMatrix:
    nb = model.catalog.num_buffers
    entries = set()
    for m1, origin, resource in t.entries:
        hold, dest = divmod(m1 - 1, nb)
        entries.add((model.catalog.refined_index(hold + 1, origin, dest + 1), resource))
    return SparseBoolMatrix(model.catalog.num_refined, t.dims[2], frozenset(entries))


def stack_system_concept(
    model: SystemModel, transform: ConceptTriple, refined: ConceptTriple
) -> ConceptTriple:
    """Stack [transformation (machine columns only); refined transportation]
    into the system concept over (system process, resource)."""
    rows = model.catalog.num_system_processes
    cols = model.resources.num_resources
    offset = model.catalog.num_transform

    def stack(top: SparseBoolMatrix, bottom: SparseBoolMatrix) -> SparseBoolMatrix:
        entries = set(top.entries)  # machine column indices equal resource indices
        entries.update((r + offset, c) for r, c in bottom.entries)
        return SparseBoolMatrix(rows, cols, frozenset(entries))

    j = stack(transform.j, refined.j)
    k = stack(transform.k, refined.k)
    return ConceptTriple(j, k, j.and_not(k))


def structural_dof(transform: ConceptTriple, transport: ConceptTriple, refined: ConceptTriple) -> tuple[int, int, int]:
    """Structural degrees of freedom: entry counts of the concept matrices."""
    return transform.a.nnz, transport.a.nnz, refined.a.nnz


# ---------------------------------------------------------------------------
# Operand incidence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OperandIncidence:
    mlg_neg: SparseBoolMatrix  # operands x holding processes
    mlg_pos: SparseBoolMatrix
    mlp_neg: SparseBoolMatrix  # operands x system processes
    mlp_pos: SparseBoolMatrix


def operand_incidence(model: SystemModel) -> OperandIncidence:
    """Which operands each process consumes (neg) and produces (pos).

    Transformation columns union the signatures of every machine declaring
    the process; refined-transportation columns inherit the column of their
    holding process.
    """
    num_l = len(model.operands)
    catalog = model.catalog

    def op_idx(name: str) -> int:
        idx = model.operand_index(name)
        if idx is None:
            raise ModelValueError(f"operand '{name}' missing from the operand set")
        return idx

    mlg_neg: set = set()
    mlg_pos: set = set()
    for method in model.raw.abstractions.methods_port:
        g = catalog.holding_index(method.ref)
        mlg_neg.update((op_idx(name), g) for name in method.operand)
        mlg_pos.update((op_idx(name), g) for name in method.output)

    mlp_neg: set = set()
    mlp_pos: set = set()
    for form in model.forms:
        mlp_neg.update((op_idx(name), form.idx_form) for name in form.method.operand)
        mlp_pos.update((op_idx(name), form.idx_form) for name in form.method.output)
    offset = catalog.num_transform
    for refined in range(1, catalog.num_refined + 1):
        hold, _, _ = catalog.refined_parts(refined)
        col = offset + refined
        mlp_neg.update((l, col) for l, g in mlg_neg if g == hold)
        mlp_pos.update((l, col) for l, g in mlg_pos if g == hold)

    return OperandIncidence(
        mlg_neg=SparseBoolMatrix(num_l, catalog.num_holding, frozenset(mlg_neg)),
        mlg_pos=SparseBoolMatrix(num_l, catalog.num_holding, frozenset(mlg_pos)),
        mlp_neg=SparseBoolMatrix(num_l, catalog.num_system_processes, frozenset(mlp_neg)),
        mlp_pos=SparseBoolMatrix(num_l, catalog.num_system_processes, frozenset(mlp_pos)),
    )


# ---------------------------------------------------------------------------
# Capability axis helpers
# ---------------------------------------------------------------------------

def capability_index(model: SystemModel, process: int, resource: int) -> int:
    """psi = numResources * (process - 1) + resource (process-major)."""
    return model.resources.num_resources * (process - 1) + resource


def capability_parts(model: SystemModel, psi: int) -> tuple[int, int]:
    process, resource = divmod(psi - 1, model.resources.num_resources)
    return process + 1, resource + 1


def realized_capabilities(model: SystemModel, system: ConceptTriple) -> tuple[int, ...]:
    """Capability indices with a system-concept entry, in axis order."""
    return tuple(
        sorted(capability_index(model, process, resource) for process, resource in system.a.entries)
    )


def process_endpoints(model: SystemModel, process: int, resource: int) -> tuple[int, int]:
    """(origin, dest) buffer indices of a capability.

    Transformation processes begin and end at the machine's own buffer.
    """
    catalog = model.catalog
    if catalog.is_transform(process):
        return resource, resource
    _, origin, dest = catalog.refined_parts(catalog.refined_of_process(process))
    return origin, dest


# ---------------------------------------------------------------------------
# Hetero-functional incidence tensors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IncidenceTensors:
    mrt_neg: SparseBoolTensor3  # operand x buffer x capability
    mrt_pos: SparseBoolTensor3
    mrt: SparseIntTensor3
    mrt_proj_neg: SparseBoolTensor3  # capability axis restricted to realized
    mrt_proj_pos: SparseBoolTensor3
    mrt_proj: SparseIntTensor3


def incidence_tensors(
    model: SystemModel,
    system: ConceptTriple,
    operands: OperandIncidence,
    realized: tuple[int, ...],
) -> IncidenceTensors:
    """Consumption (neg) and production (pos) of each realized capability."""
    num_l = len(model.operands)
    nb = model.catalog.num_buffers
    num_psi = model.catalog.num_system_processes * model.resources.num_resources

    neg_by_process: dict[int, set[int]] = {}
    for l, i in operands.mlp_neg.entries:
        neg_by_process.setdefault(i, set()).add(l)
    pos_by_process: dict[int, set[int]] = {}
    for l, i in operands.mlp_pos.entries:
        pos_by_process.setdefault(i, set()).add(l)

    neg: set = set()
    pos: set = set()
    for process, resource in system.a.entries:
        psi = capability_index(model, process, resource)
        origin, dest = process_endpoints(model, process, resource)
        for l in neg_by_process.get(process, ()):
            neg.add((l, origin, psi))
        for l in pos_by_process.get(process, ()):
            pos.add((l, dest, psi))

    dims = (num_l, nb, num_psi)
    mrt_neg = SparseBoolTensor3(dims, frozenset(neg))
    mrt_pos = SparseBoolTensor3(dims, frozenset(pos))

    remap = {psi: new for new, psi in enumerate(realized, start=1)}
    proj_dims = (num_l, nb, len(realized))
    proj_neg = SparseBoolTensor3(
        proj_dims, frozenset((l, y, remap[psi]) for l, y, psi in neg if psi in remap)
    )
    proj_pos = SparseBoolTensor3(
        proj_dims, frozenset((l, y, remap[psi]) for l, y, psi in pos if psi in remap)
    )
    return IncidenceTensors(
        mrt_neg=mrt_neg,
        mrt_pos=mrt_pos,
        mrt=SparseIntTensor3.difference(mrt_pos, mrt_neg),
        mrt_proj_neg=proj_neg,
        mrt_proj_pos=proj_pos,
        mrt_proj=SparseIntTensor3.difference(proj_pos, proj_neg),
    )


# ---------------------------------------------------------------------------
# Hetero-functional adjacency and continuity degrees of freedom
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdjacencyResult:
    ar: SparseBoolMatrix  # full capability axis
    ar_proj: SparseBoolMatrix  # realized capabilities only
    dof_r1: int
    dof_r2: int
    dof_r3: int
    dof_r4: int
    dof_r5: int
    dof_r: int


def _pair_family(name: str, ref: str | None) -> tuple[str, str]:
    return ("port", ref) if ref else ("form", name)


def _process_family(model: SystemModel, process: int) -> tuple[str, str]:
    catalog = model.catalog
    if catalog.is_transform(process):
        return ("form", catalog.transform_names[process - 1])
    hold, _, _ = catalog.refined_parts(catalog.refined_of_process(process))
    return ("port", catalog.holding_names[hold - 1])


def hf_adjacency(
    model: SystemModel, tensors: IncidenceTensors, realized: tuple[int, ...]
) -> AdjacencyResult:
    """Capability succession: psi1 feeds psi2 when some operand produced by
    psi1 at a buffer is consumed there by psi2 (mode-3 matricized boolean
    product of the incidence tensors)."""
    consumers: dict[tuple[int, int], set[int]] = {}
    for l, y, psi in tensors.mrt_neg.entries:
        consumers.setdefault((l, y), set()).add(psi)
    entries: set = set()
    for l, y, psi1 in tensors.mrt_pos.entries:
        for psi2 in consumers.get((l, y), ()):
            entries.add((psi1, psi2))

    num_psi = tensors.mrt_neg.dims[2]
    ar = SparseBoolMatrix(num_psi, num_psi, frozenset(entries))

    remap = {psi: new for new, psi in enumerate(realized, start=1)}
    ar_proj = SparseBoolMatrix(
        len(realized),
        len(realized),
        frozenset((remap[a], remap[b]) for a, b in entries if a in remap and b in remap),
    )

    r1 = r2 = r3 = r4 = 0
    for psi1, psi2 in entries:
        i1, v1 = capability_parts(model, psi1)
        i2, v2 = capability_parts(model, psi2)
        if psi1 == psi2:
            r1 += 1
        elif v1 == v2:
            r2 += 1
        elif i1 == i2:
            r3 += 1
        else:
            r4 += 1

    pairs = model.raw.abstractions.method_pairs
    if pairs:
        allowed = {
            (_pair_family(p.name1, p.ref1), _pair_family(p.name2, p.ref2)) for p in pairs
        }
        r5 = sum(
            1
            for psi1, psi2 in entries
            if (
                _process_family(model, capability_parts(model, psi1)[0]),
                _process_family(model, capability_parts(model, psi2)[0]),
            )
            in allowed
        )
    else:
        r5 = len(entries)

    return AdjacencyResult(ar, ar_proj, r1, r2, r3, r4, r5, r5)


# ---------------------------------------------------------------------------
# Controllers
# ---------------------------------------------------------------------------

def controller_matrices(
    model: SystemModel, *, transpose_ac: bool = False, implicit_controllers: bool = False
) -> tuple[SparseBoolMatrix, SparseBoolMatrix, tuple[str, ...]]:
    """Controller agency (controllers x resources) and controller adjacency.

    Adjacency is stored sender -> receiver with diagonal self-adjacency;
    `transpose_ac` flips the off-diagonal direction.  With
    `implicit_controllers`, each resource additionally gets a dependent
    controller of its own, appended after the declared ones.
    """
    names = [c.name for c in model.raw.controllers]
    index = {name: q for q, name in enumerate(names, start=1)}

    agency: set = set()
    resources = (
        list(model.raw.machines) + list(model.raw.ind_buffers) + list(model.raw.transporters)
    )
    for resource in resources:
        if resource.controller is None:
            continue
        q = index.get(resource.controller)
        if q is None:
            raise ModelValueError(
                f"resource '{resource.name}' names undeclared controller '{resource.controller}'"
            )
        agency.add((q, model.resources.global_index(resource.name)))

    adjacency: set = set()
    for q, controller in enumerate(model.raw.controllers, start=1):
        adjacency.add((q, q))
        for peer in controller.peer_recipients:
            target = index.get(peer)
            if target is None:
                raise ModelValueError(
                    f"controller '{controller.name}' names undeclared peer '{peer}'"
                )
            if transpose_ac:
                adjacency.add((target, q))
            else:
                adjacency.add((q, target))

    all_names = list(names)
    if implicit_controllers:
        base = len(names)
        for v, resource_name in enumerate(model.resources.resource_names, start=1):
            q = base + v
            agency.add((q, v))
            adjacency.add((q, q))
            all_names.append(f"{resource_name}::controller")

    num_q = len(all_names)
    aq = SparseBoolMatrix(num_q, model.resources.num_resources, frozenset(agency))
    ac = SparseBoolMatrix(num_q, num_q, frozenset(adjacency))
    return aq, ac, tuple(all_names)


# ---------------------------------------------------------------------------
# Services
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ServiceGraph:
    """One service's operand-state Petri net and feasibility matrices."""

    name: str
    operand: str
    places: tuple[str, ...]
    transitions: tuple[str, ...]
    mneg: SparseBoolMatrix  # places x transitions (preset arcs)
    mpos: SparseBoolMatrix  # places x transitions (postset arcs)
    dual_adjacency: SparseBoolMatrix  # boolean(Mneg^T . Mpos)
    raw_lambda: SparseBoolMatrix  # transitions x full capability axis
    raw_lambda_neg: SparseBoolMatrix
    raw_lambda_pos: SparseBoolMatrix
    lam: SparseBoolMatrix  # transitions x realized capabilities
    raw_xform_lambda: SparseBoolMatrix
    raw_xform_lambda_neg: SparseBoolMatrix
    raw_xform_lambda_pos: SparseBoolMatrix
    xform_lambda: SparseBoolMatrix
    raw_xport_lambda: SparseBoolMatrix
    raw_xport_lambda_neg: SparseBoolMatrix
    raw_xport_lambda_pos: SparseBoolMatrix
    xport_lambda: SparseBoolMatrix


def service_nets(model: SystemModel) -> list[tuple[str, tuple[str, ...], tuple[str, ...], SparseBoolMatrix, SparseBoolMatrix, SparseBoolMatrix]]:
    """Incidence and dual adjacency of each declared service net."""
    nets = []
    for service in model.raw.services:
        places = tuple(service.places)
        place_index = {name: s for s, name in enumerate(places, start=1)}
        transitions = tuple(t.name for t in service.transitions)
        mneg_entries: set = set()
        mpos_entries: set = set()
        for e, transition in enumerate(service.transitions, start=1):
            preset = place_index.get(transition.preset)
            postset = place_index.get(transition.postset)
            if preset is None and postset is None:
                raise ModelValueError(
                    f"service '{service.name}' transition '{transition.name}' has no preset or postset place"
                )
            if preset is not None:
                mneg_entries.add((preset, e))
            if postset is not None:
                mpos_entries.add((postset, e))
        mneg = SparseBoolMatrix(len(places), len(transitions), frozenset(mneg_entries))
        mpos = SparseBoolMatrix(len(places), len(transitions), frozenset(mpos_entries))
        dual = mneg.transpose().bool_matmul(mpos)
        nets.append((service.name, places, transitions, mneg, mpos, dual))
    return nets


def _service_operand(model: SystemModel, service) -> str:
    name = service.operand if service.operand is not None else service.name
    if model.operand_index(name) is None:
        raise ModelValueError(
            f"service '{service.name}' is bound to operand '{name}', which is not an operand of the system"
        )
    return name


def service_feasibility(
    model: SystemModel,
    system: ConceptTriple,
    operands: OperandIncidence,
    realized: tuple[int, ...],
) -> list[ServiceGraph]:
    """Feasibility of realizing each service transition with a capability.

    A transition matches a capability when its methodLinkName (and
    methodLinkRef, when given) resolves to the capability's process on that
    resource and the system concept realizes it.  The negative (positive)
    split additionally requires the service operand to be consumed
    (produced) by the process.
    """
    catalog = model.catalog
    nets = service_nets(model)
    num_psi = catalog.num_system_processes * model.resources.num_resources

    forms_by_name: dict[str, set[int]] = {}
    for form in model.forms:
        if form.method.status == "inactive":
            continue
        psi = capability_index(model, form.idx_form, form.resource)
        forms_by_name.setdefault(form.method.name, set()).add(psi)
    ports_by_link: dict[tuple[str, str | None], set[int]] = {}
    for port in model.ports:
        if port.method.status == "inactive":
            continue
        process = catalog.num_transform + port.idx_port_ref
        psi = capability_index(model, process, port.resource)
        ports_by_link.setdefault((port.method.name, port.method.ref), set()).add(psi)
        ports_by_link.setdefault((port.method.name, None), set()).add(psi)
    port_names = {port.method.name for port in model.ports}
    port_names.update(method.name for method in model.raw.abstractions.methods_port)

    realized_set = {capability_index(model, i, v) for i, v in system.a.entries}
    neg_ops: dict[int, set[int]] = {}
    for l, i in operands.mlp_neg.entries:
        neg_ops.setdefault(i, set()).add(l)
    pos_ops: dict[int, set[int]] = {}
    for l, i in operands.mlp_pos.entries:
        pos_ops.setdefault(i, set()).add(l)

    graphs: list[ServiceGraph] = []
    for service, (name, places, transitions, mneg, mpos, dual) in zip(model.raw.services, nets):
        operand_name = _service_operand(model, service)
        operand_idx = model.operand_index(operand_name)
        num_e = len(transitions)

        lam_entries: set = set()
        lam_neg: set = set()
        lam_pos: set = set()
        xform_rows: list[int] = []
        xport_rows: list[int] = []
        for e, transition in enumerate(service.transitions, start=1):
            link_name = transition.method_link_name
            link_ref = transition.method_link_ref
            if link_ref is not None:
                if link_ref not in catalog.holding_names:
                    raise ModelValueError(
                        f"service '{service.name}' transition '{transition.name}' links to "
                        f"unknown holding process '{link_ref}'"
                    )
                xport_rows.append(e)
                matched = ports_by_link.get((link_name, link_ref), set())
            elif link_name in catalog.transform_names:
                xform_rows.append(e)
                matched = forms_by_name.get(link_name, set())
            elif link_name in port_names:
                xport_rows.append(e)
                matched = ports_by_link.get((link_name, None), set())
            else:
                raise ModelValueError(
                    f"service '{service.name}' transition '{transition.name}' links to "
                    f"unknown process '{link_name}'"
                )
            for psi in matched:
                if psi not in realized_set:
                    continue
                process, _ = capability_parts(model, psi)
                lam_entries.add((e, psi))
                if operand_idx in neg_ops.get(process, ()):
                    lam_neg.add((e, psi))
                if operand_idx in pos_ops.get(process, ()):
                    lam_pos.add((e, psi))

        raw_lambda = SparseBoolMatrix(num_e, num_psi, frozenset(lam_entries))
        raw_lambda_neg = SparseBoolMatrix(num_e, num_psi, frozenset(lam_neg))
        raw_lambda_pos = SparseBoolMatrix(num_e, num_psi, frozenset(lam_pos))

        def proj(m: SparseBoolMatrix) -> SparseBoolMatrix:
            return m.restrict_cols(realized)

        graphs.append(
            ServiceGraph(
                name=name,
                operand=operand_name,
                places=places,
                transitions=transitions,
                mneg=mneg,
                mpos=mpos,
                dual_adjacency=dual,
                raw_lambda=raw_lambda,
                raw_lambda_neg=raw_lambda_neg,
                raw_lambda_pos=raw_lambda_pos,
                lam=proj(raw_lambda),
                raw_xform_lambda=raw_lambda.restrict_rows(xform_rows),
                raw_xform_lambda_neg=raw_lambda_neg.restrict_rows(xform_rows),
                raw_xform_lambda_pos=raw_lambda_pos.restrict_rows(xform_rows),
                xform_lambda=proj(raw_lambda.restrict_rows(xform_rows)),
                raw_xport_lambda=raw_lambda.restrict_rows(xport_rows),
                raw_xport_lambda_neg=raw_lambda_neg.restrict_rows(xport_rows),
                raw_xport_lambda_pos=raw_lambda_pos.restrict_rows(xport_rows),
                xport_lambda=proj(raw_lambda.restrict_rows(xport_rows)),
            )
        )
    return graphs


# ---------------------------------------------------------------------------
# System adjacency assembly
# ---------------------------------------------------------------------------

def _place_block(target: set, block: SparseBoolMatrix, row_offset: int, col_offset: int) -> None:
    target.update((r + row_offset, c + col_offset) for r, c in block.entries)


def system_adjacency(
    model: SystemModel,
    adjacency: AdjacencyResult,
    aq: SparseBoolMatrix,
    ac: SparseBoolMatrix,
    realized: tuple[int, ...],
    services: list[ServiceGraph],
) -> tuple[SparseBoolMatrix, SparseBoolMatrix]:
    """Assemble the projected system adjacency matrix.

    The partial form covers realized capabilities and controllers:
    ``[[ARproj, AQ~^T], [AQ~, AC]]`` with the agency matrix lifted to
    capabilities through each capability's resource.  The full form appends
    every service's transitions, tied to capabilities by the projected
    feasibility matrix and to each other by the service dual adjacency.
    """
    n_dof = len(realized)
    num_q = aq.rows

    lifted: set = set()
    for q, v in aq.entries:
        for new, psi in enumerate(realized, start=1):
            _, resource = capability_parts(model, psi)
            if resource == v:
                lifted.add((q, new))
    aq_tilde = SparseBoolMatrix(num_q, n_dof, frozenset(lifted))

    partial: set = set()
    _place_block(partial, adjacency.ar_proj, 0, 0)
    _place_block(partial, aq_tilde.transpose(), 0, n_dof)
    _place_block(partial, aq_tilde, n_dof, 0)
    _place_block(partial, ac, n_dof, n_dof)
    partial_sam = SparseBoolMatrix(n_dof + num_q, n_dof + num_q, frozenset(partial))

    total = n_dof + num_q + sum(len(s.transitions) for s in services)
    full: set = set(partial)
    offset = n_dof + num_q
    for service in services:
        _place_block(full, service.lam, offset, 0)
        _place_block(full, service.lam.transpose(), 0, offset)
        _place_block(full, service.dual_adjacency, offset, offset)
        offset += len(service.transitions)
    sam = SparseBoolMatrix(total, total, frozenset(full))
    return partial_sam, sam


# ---------------------------------------------------------------------------
# Bundle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HfgtBundle:
    """Every computed structure for one system, plus the DOF counters."""

    transform: ConceptTriple
    transport: ConceptTriple
    transport_tensors: ConceptTensorTriple
    refined: ConceptTriple
    refined_tensors: ConceptTensorTriple
    system: ConceptTriple
    operand_maps: OperandIncidence
    tensors: IncidenceTensors
    adjacency: AdjacencyResult
    aq: SparseBoolMatrix
    ac: SparseBoolMatrix
    controller_names: tuple[str, ...]
    services: tuple[ServiceGraph, ...]
    partial_sam: SparseBoolMatrix
    sam: SparseBoolMatrix
    realized: tuple[int, ...]
    dof_m: int
    dof_h: int
    dof_h_ref: int

    @property
    def dof_r(self) -> int:
        return self.adjacency.dof_r

    @property
    def system_dof(self) -> int:
        return self.system.a.nnz


def compute_bundle(
    model: SystemModel, *, transpose_ac: bool = False, implicit_controllers: bool = False
) -> HfgtBundle:
    """Run the full computation pipeline over an indexed model."""
    transform = transformation_concept(model)
    transport, transport_tensors = transport_concept(model)
    refined, refined_tensors = refined_transport_concept(model)
    system = stack_system_concept(model, transform, refined)
    dof_m, dof_h, dof_h_ref = structural_dof(transform, transport, refined)
    operands = operand_incidence(model)
    realized = realized_capabilities(model, system)
    tensors = incidence_tensors(model, system, operands, realized)
    adjacency = hf_adjacency(model, tensors, realized)
    aq, ac, controller_names = controller_matrices(
        model, transpose_ac=transpose_ac, implicit_controllers=implicit_controllers
    )
    services = service_feasibility(model, system, operands, realized)
    partial_sam, sam = system_adjacency(model, adjacency, aq, ac, realized, services)
    return HfgtBundle(
        transform=transform,
        transport=transport,
        transport_tensors=transport_tensors,
        refined=refined,
        refined_tensors=refined_tensors,
        system=system,
        operand_maps=operands,
        tensors=tensors,
        adjacency=adjacency,
        aq=aq,
        ac=ac,
        controller_names=controller_names,
        services=tuple(services),
        partial_sam=partial_sam,
        sam=sam,
        realized=realized,
        dof_m=dof_m,
        dof_h=dof_h,
        dof_h_ref=dof_h_ref,
    )
