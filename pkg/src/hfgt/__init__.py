"""Hetero-functional graph construction and Petri-net replay for LFES models."""

__version__ = "0.1.0"

from .errors import (
    EventListError,
    HfgtError,
    InfeasibleEventError,
    LfesParseError,
    LfesSchemaError,
    MetamodelError,
    ModelValueError,
    PetriModelError,
)
from .ingest import (
    Diagnostic,
    RawEventList,
    RawLfes,
    parse_event_list,
    parse_lfes,
    serialize_lfes,
    validate_raw,
)
from .matrices import HfgtBundle, compute_bundle
from .metamodel import (
    ProcessCatalog,
    ResourceIndex,
    SystemModel,
    build_process_catalog,
    index_resources,
    resolve_method_indices,
)
from .petri import (
    PetriNetwork,
    build_petri_network,
    derive_draw_matrices,
    export_frames,
    map_events,
    simulate_token_flow,
)
from .sparse import SparseBoolMatrix, SparseBoolTensor3, SparseIntTensor3

__all__ = [
    "Diagnostic",
    "EventListError",
    "HfgtBundle",
    "HfgtError",
    "InfeasibleEventError",
    "LfesParseError",
    "LfesSchemaError",
    "MetamodelError",
    "ModelValueError",
    "PetriModelError",
    "PetriNetwork",
    "ProcessCatalog",
    "RawEventList",
    "RawLfes",
    "ResourceIndex",
    "SparseBoolMatrix",
    "SparseBoolTensor3",
    "SparseIntTensor3",
    "SystemModel",
    "build_petri_network",
    "build_process_catalog",
    "compute_bundle",
    "derive_draw_matrices",
    "export_frames",
    "index_resources",
    "map_events",
    "parse_event_list",
    "parse_lfes",
    "resolve_method_indices",
    "serialize_lfes",
    "simulate_token_flow",
    "validate_raw",
]
