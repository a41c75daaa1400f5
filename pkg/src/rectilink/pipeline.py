"""End-to-end helpers: prepare a domain, run all engines, cross-check everything."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .errors import OutsidePointError
from .geometry import (
    Decomposition,
    Domain,
    Point,
    SCALE,
    horizontal_decomposition,
    require_valid,
    vertical_decomposition,
)
from .graph import DistanceMatrix, GraphSummary, OrientedGraph, all_pairs, build_graph, summarize
from .metrics import (
    DIAMETER_ALGOS,
    DiameterResult,
    ORACLE,
    RADIUS_ALGOS,
    RadiusResult,
    compute_diameter,
    compute_radius,
)
from .oracle import GridModel, build_grid, oracle_diameter, oracle_distance, oracle_eccentricity, oracle_radius


@dataclass(frozen=True)
class Prepared:
    domain: Domain
    hdec: Decomposition
    vdec: Decomposition
    graph: OrientedGraph
    dm: DistanceMatrix
    summary: GraphSummary


def prepare(domain: Domain, validated: bool = False) -> Prepared:
    """Decompositions, crossing graph, all-pairs distances and their extremes."""
    if not validated:
        require_valid(domain)
    hdec = horizontal_decomposition(domain)
    vdec = vertical_decomposition(domain)
    graph = build_graph(hdec, vdec)
    dm = all_pairs(graph)
    return Prepared(domain, hdec, vdec, graph, dm, summarize(dm))


def point_out(p: Point):
    """Internal (doubled) point to original units, integer when exact."""
    return [c // SCALE if c % SCALE == 0 else c / SCALE for c in p]


def diameter_payload(result: DiameterResult, routed: bool) -> dict:
    return {
        "value": result.value,
        "engine": result.engine,
        "routed_to_fallback": routed,
        "witness": {
            "pair": [point_out(result.pair[0]), point_out(result.pair[1])],
            "rects": list(result.witness_rects),
        },
    }


def radius_payload(result: RadiusResult, routed: bool) -> dict:
    kind, ids = result.witness
    return {
        "value": result.value,
        "engine": result.engine,
        "routed_to_fallback": routed,
        "witness": {"center": point_out(result.center), kind: list(ids)},
    }


def instance_stats(prep: Prepared) -> dict:
    return {
        "n": prep.domain.n,
        "h": prep.domain.h,
        "m": prep.graph.m,
        "chi": prep.graph.chi,
        "ordiam": prep.summary.ordiam,
        "orrad": prep.summary.orrad,
    }


def _check_pair(grid: GridModel, result: DiameterResult) -> bool | None:
    try:
        return oracle_distance(grid, *result.pair) == result.value
    except OutsidePointError:
        return None  # witness on the boundary: the oracle cannot price it


def _check_center(grid: GridModel, result: RadiusResult) -> bool | None:
    try:
        return oracle_eccentricity(grid, result.center) == result.value
    except OutsidePointError:
        return None


def run_verify(domain: Domain, prep: Prepared | None = None, grid: GridModel | None = None) -> dict:
    """Every engine plus the oracle, with witness validation and a verdict."""
    t0 = time.perf_counter()
    if prep is None:
        prep = prepare(domain)
    prep_seconds = time.perf_counter() - t0
    if grid is None:
        grid = build_grid(domain)

    diameters = {}
    for algo in DIAMETER_ALGOS:
        t = time.perf_counter()
        result, routed = compute_diameter(prep.graph, prep.dm, algo)
        entry = diameter_payload(result, routed)
        entry["seconds"] = time.perf_counter() - t
        entry["witness_ok"] = _check_pair(grid, result)
        diameters[algo] = entry
    radii = {}
    for algo in RADIUS_ALGOS:
        t = time.perf_counter()
        result, routed = compute_radius(prep.graph, prep.dm, algo)
        entry = radius_payload(result, routed)
        entry["seconds"] = time.perf_counter() - t
        entry["witness_ok"] = _check_center(grid, result)
        radii[algo] = entry

    t = time.perf_counter()
    odia = oracle_diameter(grid)
    orad = oracle_radius(grid)
    oracle_seconds = time.perf_counter() - t
    diameters[ORACLE] = diameter_payload(odia, False) | {
        "seconds": oracle_seconds,
        "witness_ok": _check_pair(grid, odia),
    }
    radii[ORACLE] = radius_payload(orad, False) | {
        "seconds": oracle_seconds,
        "witness_ok": _check_center(grid, orad),
    }

    diameter_values = {entry["value"] for entry in diameters.values()}
    radius_values = {entry["value"] for entry in radii.values()}
    witnesses_ok = all(
        e["witness_ok"] is not False for e in list(diameters.values()) + list(radii.values())
    )
    ok = len(diameter_values) == 1 and len(radius_values) == 1 and witnesses_ok
    return {
        "instance": instance_stats(prep),
        "diameter": diameters,
        "radius": radii,
        "verdict": "ok" if ok else "disagree",
        "timings": {"prepare_seconds": prep_seconds},
    }
