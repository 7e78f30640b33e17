"""Link diagrams, their classical invariants, and bounded searches for
unlinking and splitting sequences."""

from __future__ import annotations

from .diagram import (
    ComponentPairTag,
    DiagramError,
    ParseError,
    PlanarDiagram,
    canonical_form,
    classify_crossing,
    crossing_change,
    format_diagram,
    parse_diagram,
    structurally_equal,
    sublink,
)

__version__ = "0.1.0"

__all__ = [
    "ComponentPairTag",
    "DiagramError",
    "ParseError",
    "PlanarDiagram",
    "canonical_form",
    "classify_crossing",
    "crossing_change",
    "format_diagram",
    "parse_diagram",
    "structurally_equal",
    "sublink",
]
