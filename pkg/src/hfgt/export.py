"""File exports: Matrix Market matrices, coordinate-text tensors, the
artifact manifest, and replay CSVs.

Everything written here is deterministic: entries are sorted, no
timestamps are embedded, and repeated runs over the same input produce
byte-identical files.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

import numpy as np

from .matrices import HfgtBundle
from .metamodel import SystemModel
from .petri import PetriNetwork
from .sparse import SparseBoolMatrix, SparseBoolTensor3, SparseIntTensor3

MANIFEST_SCHEMA = "hfgt-manifest/1"

PSI_RULE = "psi = numResources * (process - 1) + resource"
PORT_RULE = "idxPort = numBuffers * (origin - 1) + dest"
PORT_REF_RULE = "idxPortRef = numBuffers^2 * (hold - 1) + idxPort"


def _fmt_num(value: float) -> str:
    return f"{value:g}"


def write_matrix_market(m: SparseBoolMatrix, path: Path) -> None:
    """Boolean matrix as Matrix Market coordinate pattern, 1-based, sorted."""
    lines = ["%%MatrixMarket matrix coordinate pattern general"]
    lines.append(f"{m.rows} {m.cols} {m.nnz}")
    lines.extend(f"{r} {c}" for r, c in m.sorted_entries())
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_tensor(
    t: SparseBoolTensor3 | SparseIntTensor3, path: Path, modes: tuple[str, str, str]
) -> None:
    """Coordinate text tensor: one JSON header line, then `i j k value` rows."""
    header = {
        "dims": list(t.dims),
        "modes": list(modes),
        "indexBase": 1,
        "value": "integer" if isinstance(t, SparseIntTensor3) else "pattern",
    }
    lines = [json.dumps(header, separators=(", ", ": "))]
    if isinstance(t, SparseIntTensor3):
        lines.extend(f"{i} {j} {k} {v}" for (i, j, k), v in t.sorted_items())
    else:
        lines.extend(f"{i} {j} {k} 1" for i, j, k in t.sorted_entries())
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _slug(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "_", name).strip("_").lower() or "unnamed"


_TRANSPORT_MODES = ("dest", "origin", "resource")
_REFINED_MODES = ("hold_dest", "origin", "resource")
_INCIDENCE_MODES = ("operand", "buffer", "capability")


def _bundle_artifacts(bundle: HfgtBundle):
    """(name, object, modes-or-None) for every exported structure, in order."""
    items: list[tuple[str, object, tuple[str, str, str] | None]] = [
        ("JM", bundle.transform.j, None),
        ("KM", bundle.transform.k, None),
        ("AM", bundle.transform.a, None),
        ("JH", bundle.transport.j, None),
        ("KH", bundle.transport.k, None),
        ("AH", bundle.transport.a, None),
        ("JHref", bundle.refined.j, None),
        ("KHref", bundle.refined.k, None),
        ("AHref", bundle.refined.a, None),
        ("JS", bundle.system.j, None),
        ("KS", bundle.system.k, None),
        ("AS", bundle.system.a, None),
        ("JHT", bundle.transport_tensors.j, _TRANSPORT_MODES),
        ("KHT", bundle.transport_tensors.k, _TRANSPORT_MODES),
        ("AHT", bundle.transport_tensors.a, _TRANSPORT_MODES),
        ("JHrefT", bundle.refined_tensors.j, _REFINED_MODES),
        ("KHrefT", bundle.refined_tensors.k, _REFINED_MODES),
        ("AHrefT", bundle.refined_tensors.a, _REFINED_MODES),
        ("MLg_neg", bundle.operand_maps.mlg_neg, None),
        ("MLg_pos", bundle.operand_maps.mlg_pos, None),
        ("MLP_neg", bundle.operand_maps.mlp_neg, None),
        ("MLP_pos", bundle.operand_maps.mlp_pos, None),
        ("MRT_neg", bundle.tensors.mrt_neg, _INCIDENCE_MODES),
        ("MRT_pos", bundle.tensors.mrt_pos, _INCIDENCE_MODES),
        ("MRT", bundle.tensors.mrt, _INCIDENCE_MODES),
        ("MRTproj_neg", bundle.tensors.mrt_proj_neg, _INCIDENCE_MODES),
        ("MRTproj_pos", bundle.tensors.mrt_proj_pos, _INCIDENCE_MODES),
        ("MRTproj", bundle.tensors.mrt_proj, _INCIDENCE_MODES),
        ("AR", bundle.adjacency.ar, None),
        ("ARproj", bundle.adjacency.ar_proj, None),
        ("AQ", bundle.aq, None),
        ("AC", bundle.ac, None),
        ("partialSAMproj", bundle.partial_sam, None),
        ("SAMproj", bundle.sam, None),
    ]
    for n, service in enumerate(bundle.services, start=1):
        prefix = f"service{n}_{_slug(service.name)}"
        for suffix, matrix in (
            ("Mneg", service.mneg),
            ("Mpos", service.mpos),
            ("dualAdjacency", service.dual_adjacency),
            ("rawLambda", service.raw_lambda),
            ("rawLambda_neg", service.raw_lambda_neg),
            ("rawLambda_pos", service.raw_lambda_pos),
            ("Lambda", service.lam),
            ("rawXFormLambda", service.raw_xform_lambda),
            ("rawXFormLambda_neg", service.raw_xform_lambda_neg),
            ("rawXFormLambda_pos", service.raw_xform_lambda_pos),
            ("xFormLambda", service.xform_lambda),
            ("rawXPortLambda", service.raw_xport_lambda),
            ("rawXPortLambda_neg", service.raw_xport_lambda_neg),
            ("rawXPortLambda_pos", service.raw_xport_lambda_pos),
            ("xPortLambda", service.xport_lambda),
        ):
            items.append((f"{prefix}_{suffix}", matrix, None))
    return items


def export_bundle(bundle: HfgtBundle, model: SystemModel, outdir: Path) -> dict:
    """Write every bundle structure plus `manifest.json`; returns the manifest."""
    outdir.mkdir(parents=True, exist_ok=True)
    artifacts = []
    for name, obj, modes in _bundle_artifacts(bundle):
        if isinstance(obj, SparseBoolMatrix):
            filename = f"{name}.mtx"
            write_matrix_market(obj, outdir / filename)
            artifacts.append(
                {
                    "name": name,
                    "path": filename,
                    "kind": "matrix",
                    "format": "matrix-market-pattern",
                    "rows": obj.rows,
                    "cols": obj.cols,
                    "nnz": obj.nnz,
                }
            )
        else:
            filename = f"{name}.tns"
            write_tensor(obj, outdir / filename, modes)
            artifacts.append(
                {
                    "name": name,
                    "path": filename,
                    "kind": "tensor",
                    "format": "coordinate-text",
                    "dims": list(obj.dims),
                    "nnz": obj.nnz,
                }
            )

    resources = model.resources
    catalog = model.catalog
    manifest = {
        "schema": MANIFEST_SCHEMA,
        "system": model.raw.name,
        "type": model.raw.type,
        "counts": {
            "machines": resources.num_machines,
            "indBuffers": resources.num_ind_buffers,
            "buffers": resources.num_buffers,
            "transporters": resources.num_transporters,
            "resources": resources.num_resources,
            "controllers": resources.num_controllers,
            "services": resources.num_services,
            "operands": len(model.operands),
            "transformProcesses": catalog.num_transform,
            "transportProcesses": catalog.num_transport,
            "holdingProcesses": catalog.num_holding,
            "refinedTransportProcesses": catalog.num_refined,
            "systemProcesses": catalog.num_system_processes,
        },
        "dof": {
            "DOFM": bundle.dof_m,
            "DOFH": bundle.dof_h,
            "DOFHref": bundle.dof_h_ref,
            "DOFR1": bundle.adjacency.dof_r1,
            "DOFR2": bundle.adjacency.dof_r2,
            "DOFR3": bundle.adjacency.dof_r3,
            "DOFR4": bundle.adjacency.dof_r4,
            "DOFR5": bundle.adjacency.dof_r5,
            "DOFR": bundle.adjacency.dof_r,
            "systemDOF": bundle.system.a.nnz,
        },
        "conventions": {
            "indexBase": 1,
            "resourceOrder": "machines, independent buffers, transporters (file order)",
            "processOrder": "transformation processes, then refined transportation processes",
            "transportLinearization": PORT_RULE,
            "refinedLinearization": PORT_REF_RULE,
            "capabilityLinearization": PSI_RULE,
        },
        "operands": list(model.operands),
        "resources": list(resources.resource_names),
        "controllers": list(bundle.controller_names),
        "realizedCapabilities": [
            {
                "psi": psi,
                "process": (psi - 1) // resources.num_resources + 1,
                "resource": (psi - 1) % resources.num_resources + 1,
            }
            for psi in bundle.realized
        ],
        "artifacts": artifacts,
    }
    (outdir / "manifest.json").write_text(
        json.dumps(manifest, indent=2) + "\n", encoding="utf-8"
    )
    return manifest


def dof_summary(bundle: HfgtBundle) -> str:
    """Plain-text degree-of-freedom table, one counter per line."""
    rows = [
        ("DOFM", bundle.dof_m),
        ("DOFH", bundle.dof_h),
        ("DOFHref", bundle.dof_h_ref),
        ("DOFR1", bundle.adjacency.dof_r1),
        ("DOFR2", bundle.adjacency.dof_r2),
        ("DOFR3", bundle.adjacency.dof_r3),
        ("DOFR4", bundle.adjacency.dof_r4),
        ("DOFR5", bundle.adjacency.dof_r5),
        ("DOFR", bundle.adjacency.dof_r),
        ("sigma(AS)", bundle.system.a.nnz),
    ]
    width = max(len(name) for name, _ in rows)
    return "\n".join(f"{name:<{width}}  {value}" for name, value in rows)


def write_replay_csvs(net: PetriNetwork, outdir: Path) -> tuple[Path, Path]:
    """Qb and Qt as CSV: a name column and one column per timeline entry."""
    outdir.mkdir(parents=True, exist_ok=True)
    times = net.column_times()
    header = ["name"]
    for col, t in enumerate(times):
        if col == 0 and net.has_init_column:
            header.append("init")
        else:
            header.append(_fmt_num(t))

    def rows(names: list[str], matrix: np.ndarray) -> str:
        lines = [",".join(header)]
        for i, name in enumerate(names):
            lines.append(",".join([name] + [str(int(x)) for x in matrix[i, :]]))
        return "\n".join(lines) + "\n"

    qb_path = outdir / "Qb.csv"
    qt_path = outdir / "Qt.csv"
    qb_path.write_text(rows([p.name for p in net.places], net.qb), encoding="utf-8")
    qt_path.write_text(rows([t.name for t in net.transitions], net.qt), encoding="utf-8")
    return qb_path, qt_path


def write_frames(document: dict, path: Path, *, pretty: bool = False) -> None:
    if pretty:
        text = json.dumps(document, indent=2)
    else:
        text = json.dumps(document, separators=(",", ":"))
    path.write_text(text + "\n", encoding="utf-8")
