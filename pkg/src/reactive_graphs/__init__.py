"""Modelling, simulation and analysis of multi-action reactive graphs."""

from .model import (
    Configuration,
    Diagnostic,
    EdgeNotEnabled,
    Ground,
    Hyper,
    InvalidGraph,
    ModelError,
    OFF,
    ON,
    ReactiveGraph,
    StepEffect,
    UnknownEdge,
    enabled,
    from_,
    from_star,
    initial_configuration,
    off_set,
    on_set,
    step,
    validate,
)
from .dsl import ParsedInput, ParseFailure, SourceSpan, parse, pretty
from .expansion import InducedLts, SizeStats, expand, stats
from .analysis import (
    BisimResult,
    ConflictWitness,
    Counterexample,
    Trace,
    bisimilar,
    find_conflicts,
    find_deadlocks,
    replay,
    unreachable_edges,
    unreachable_states,
)
from .products import (
    ASYNC,
    SYNC,
    IntrusionSpec,
    InvalidIntrusions,
    MoveNotEnabled,
    ProductConfiguration,
    ProductMove,
    ProductSystem,
    intrusive_effect,
    parse_intrusions,
    product_enabled,
    product_expand,
    product_step,
)
from .export import SchemaError, from_json, to_diagram, to_json

__all__ = [
    "ASYNC",
    "BisimResult",
    "Configuration",
    "ConflictWitness",
    "Counterexample",
    "Diagnostic",
    "EdgeNotEnabled",
    "Ground",
    "Hyper",
    "InducedLts",
    "IntrusionSpec",
    "InvalidGraph",
    "InvalidIntrusions",
    "ModelError",
    "MoveNotEnabled",
    "OFF",
    "ON",
    "ParsedInput",
    "ParseFailure",
    "ProductConfiguration",
    "ProductMove",
    "ProductSystem",
    "ReactiveGraph",
    "SYNC",
    "SchemaError",
    "SizeStats",
    "SourceSpan",
    "StepEffect",
    "Trace",
    "UnknownEdge",
    "bisimilar",
    "enabled",
    "expand",
    "find_conflicts",
    "find_deadlocks",
    "from_",
    "from_json",
    "from_star",
    "initial_configuration",
    "intrusive_effect",
    "off_set",
    "on_set",
    "parse",
    "parse_intrusions",
    "pretty",
    "product_enabled",
    "product_expand",
    "product_step",
    "replay",
    "stats",
    "step",
    "to_diagram",
    "to_json",
    "unreachable_edges",
    "unreachable_states",
    "validate",
]
