"""JSON wire formats: instances, edges, traces, search and verify reports.

An instance file is {"shape": [n1, ..., nd], "t": T, "r": R,
"cells": [[c1, ..., cd], ...]} with 1-based coordinates. Parsing validates
every structural invariant and raises InstanceError with a diagnostic.

Trace files carry the declared "phases" / "steps" payloads plus the
instance header fields (shape, t, r) so they can be rendered standalone.
"""

from __future__ import annotations

import json
from typing import Any

from .engine import PhaseTrace, StepTrace
from .lattice import CellSet, Edge, GridShape, Params, check_compatible
from .search import ReachResult, SearchReport
from .transforms import PRowDecomposition, ShiftRecord


class InstanceError(ValueError):
    """Raised when an instance or trace document fails validation."""


def _require(obj: dict, key: str, kind, where: str):
    if key not in obj:
        raise InstanceError(f"{where}: missing required field {key!r}")
    value = obj[key]
    if not isinstance(value, kind):
        raise InstanceError(f"{where}: field {key!r} must be {kind.__name__}")
    return value


def parse_instance(doc: str | dict) -> tuple[CellSet, Params]:
    """Parse and validate an instance document (JSON text or dict)."""
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InstanceError("instance document must be a JSON object")
    shape_list = _require(doc, "shape", list, "instance")
    t = _require(doc, "t", int, "instance")
    r = _require(doc, "r", int, "instance")
    cells = _require(doc, "cells", list, "instance")
    try:
        shape = GridShape(tuple(shape_list))
        params = Params(t, r)
        check_compatible(shape, params)
        cellset = CellSet.from_cells(shape, cells)
    except (ValueError, TypeError) as exc:
        raise InstanceError(f"invalid instance: {exc}") from exc
    return cellset, params


def instance_to_json(a: CellSet, params: Params) -> dict:
    return {
        "shape": list(a.shape.dims),
        "t": params.t,
        "r": params.r,
        "cells": [list(v) for v in a.cells()],
    }


def edge_to_json(edge: Edge) -> dict:
    return {
        "axes": list(edge.axes),
        "varying": {str(k): list(v) for k, v in edge.varying().items()},
        "fixed": {str(k): v for k, v in edge.fixed().items()},
    }


def edge_from_json(obj: dict, d: int) -> Edge:
    varying = {int(k): tuple(v) for k, v in _require(obj, "varying", dict, "edge").items()}
    fixed = {int(k): v for k, v in obj.get("fixed", {}).items()}
    sets = []
    for axis in range(1, d + 1):
        if axis in varying:
            sets.append(tuple(varying[axis]))
        elif axis in fixed:
            sets.append((fixed[axis],))
        else:
            raise InstanceError(f"edge: axis {axis} neither varying nor fixed")
    try:
        return Edge(tuple(sets))
    except ValueError as exc:
        raise InstanceError(f"invalid edge: {exc}") from exc


def phase_trace_to_json(trace: PhaseTrace, params: Params) -> dict:
    shape = trace.phases[0].shape
    return {
        "shape": list(shape.dims),
        "t": params.t,
        "r": params.r,
        "phases": [[list(v) for v in a.cells()] for a in trace.phases],
    }


def step_trace_to_json(trace: StepTrace, params: Params) -> dict:
    shape = trace.start.shape
    return {
        "shape": list(shape.dims),
        "t": params.t,
        "r": params.r,
        "start": [list(v) for v in trace.start.cells()],
        "steps": [
            {"v": list(v), "edge": edge_to_json(e)} for v, e in trace.steps
        ],
    }


def shift_record_to_json(rec: ShiftRecord) -> dict:
    return {
        "edge": edge_to_json(rec.edge),
        "infected": list(rec.infected),
        "removed": list(rec.removed),
        "maximal": rec.maximal,
    }


def decomposition_to_json(d: PRowDecomposition) -> dict:
    return {
        "classes": [list(c) for c in d.classes],
        "representatives": [list(r) for r in d.representatives],
        "representative_rows": list(d.rep_rows),
    }


def search_report_to_json(report: SearchReport) -> dict:
    return {
        "shape": list(report.shape.dims),
        "t": report.params.t,
        "r": report.params.r,
        "target": report.target,
        "minimum": report.minimum,
        "witness": None
        if report.witness is None
        else [list(v) for v in report.witness.cells()],
        "examined_per_size": {str(k): v for k, v in report.examined.items()},
        "examined": report.examined_total,
        "checks": report.checks,
        "duration_ms": report.duration_ms,
        "exact": report.exact,
        "dedup": report.dedup,
        "budget": report.budget,
        "refuted_below": report.refuted_below,
    }


def search_report_csv_row(report: SearchReport) -> str:
    shape = "x".join(str(n) for n in report.shape.dims)
    return ",".join(
        str(x)
        for x in (
            shape,
            report.params.t,
            report.params.r,
            report.target,
            "" if report.minimum is None else report.minimum,
            report.examined_total,
            report.duration_ms,
            str(report.exact).lower(),
        )
    )


SEARCH_CSV_HEADER = "shape,t,r,target,minimum,examined,duration_ms,exact"


def reach_result_to_json(result: ReachResult) -> dict:
    return {
        "status": result.status,
        "records": None
        if result.records is None
        else [shift_record_to_json(r) for r in result.records],
        "states_explored": result.states_explored,
        "depth_reached": result.depth_reached,
    }


def parse_trace(doc: str | dict) -> tuple[Params, list[CellSet], str, list[Edge]]:
    """Parse a phases or steps trace document into per-stage cell sets.

    Returns (params, stages, kind, edges): stages[i] is the infected set
    after stage i, kind is "phases" or "steps", and for step traces
    edges[i] is the hyperedge witnessing step i + 1 (empty for phases).
    """
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise InstanceError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InstanceError("trace document must be a JSON object")
    shape = GridShape(tuple(_require(doc, "shape", list, "trace")))
    params = Params(_require(doc, "t", int, "trace"), _require(doc, "r", int, "trace"))
    try:
        if "phases" in doc:
            stages = [CellSet.from_cells(shape, cells) for cells in doc["phases"]]
            return params, stages, "phases", []
        if "steps" in doc:
            current = CellSet.from_cells(shape, doc.get("start", []))
            stages = [current]
            edges = []
            for step in doc["steps"]:
                current = current.with_cells([step["v"]])
                stages.append(current)
                edges.append(edge_from_json(step["edge"], shape.d))
            return params, stages, "steps", edges
    except (ValueError, TypeError, KeyError) as exc:
        raise InstanceError(f"invalid trace: {exc}") from exc
    raise InstanceError("trace document needs a 'phases' or 'steps' field")


def dumps(obj: Any) -> str:
    """Stable JSON encoding used by the command line."""
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
