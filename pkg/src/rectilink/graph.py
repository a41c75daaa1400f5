"""Bipartite crossing graph over the two decompositions and its distance table.

Vertices are the rectangles of both decompositions (horizontal block first),
edges join pairs of opposite orientation whose interiors overlap.  The
oriented distance between two rectangles is the hop distance in this graph
plus one; it equals the fewest links of a path that starts along the first
rectangle's orientation and ends along the second's.
"""

from __future__ import annotations

import dataclasses
from collections import deque
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path
from sortedcontainers import SortedList

from .crossing import StoredSegment
from .geometry import Decomposition, Orientation, Rect

DistanceMatrix = np.ndarray  # (m, m) uint16, entry = hop distance + 1


@dataclass(frozen=True)
class OrientedGraph:
    """Crossing graph; ``rects[i].id == i`` for the combined numbering."""

    rects: tuple[Rect, ...]
    nh: int
    nv: int
    adj: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int], ...]  # (horizontal id, vertical id)

    @property
    def m(self) -> int:
        return len(self.rects)

    @property
    def chi(self) -> int:
        return len(self.edges)

    def orientation_of(self, i: int) -> Orientation:
        return Orientation.HORIZONTAL if i < self.nh else Orientation.VERTICAL

    def ids_of(self, orientation: Orientation) -> range:
        if orientation is Orientation.HORIZONTAL:
            return range(self.nh)
        return range(self.nh, self.nh + self.nv)


@dataclass(frozen=True)
class GraphSummary:
    ordiam: int
    orrad: int
    diam_pair: tuple[int, int]
    center_rect: int


def middle_segment(rect: Rect) -> StoredSegment:
    """Axis-parallel segment joining the midpoints of the rectangle's short sides.

    Exact because all domain coordinates are doubled on ingest.  Two
    decomposition rectangles of opposite orientation overlap properly if and
    only if their middle segments cross.
    """
    if rect.orientation is Orientation.HORIZONTAL:
        return StoredSegment(
            axis=Orientation.HORIZONTAL,
            fixed=(rect.ymin + rect.ymax) // 2,
            lo=rect.xmin,
            hi=rect.xmax,
            owner=rect.id,
        )
    return StoredSegment(
        axis=Orientation.VERTICAL,
        fixed=(rect.xmin + rect.xmax) // 2,
        lo=rect.ymin,
        hi=rect.ymax,
        owner=rect.id,
    )


def rects_cross(a: Rect, b: Rect) -> bool:
    """Opposite orientations and positive-area intersection."""
    if a.orientation is b.orientation:
        return False
    return (
        min(a.xmax, b.xmax) > max(a.xmin, b.xmin)
        and min(a.ymax, b.ymax) > max(a.ymin, b.ymin)
    )


def _edges_quadratic(rects, nh: int):
    edges = []
    for h in range(nh):
        for v in range(nh, len(rects)):
            if rects_cross(rects[h], rects[v]):
                edges.append((h, v))
    return edges


def _edges_sweep(rects, nh: int):
    """Middle-segment sweep: O((m + chi) log m) orthogonal crossing reporting."""
    ADD, QUERY, REMOVE = 0, 1, 2
    events = []
    for i in range(nh):
        seg = middle_segment(rects[i])
        events.append((seg.lo, ADD, seg.fixed, i))
        events.append((seg.hi, REMOVE, seg.fixed, i))
    for j in range(nh, len(rects)):
        seg = middle_segment(rects[j])
        events.append((seg.fixed, QUERY, seg.lo, seg.hi, j))
    events.sort(key=lambda e: (e[0], e[1]))
    active = SortedList()
    edges = []
    for ev in events:
        kind = ev[1]
        if kind == ADD:
            active.add((ev[2], ev[3]))
        elif kind == REMOVE:
            active.remove((ev[2], ev[3]))
        else:
            _, _, ylo, yhi, j = ev
            for _, i in active.irange((ylo, -1), (yhi, float("inf"))):
                edges.append((i, j))
    edges.sort()
    return edges


def build_graph(hdec: Decomposition, vdec: Decomposition, method: str = "sweep") -> OrientedGraph:
    """Assemble the crossing graph from both decompositions of one domain.

    ``method`` selects the edge construction: the default middle-segment sweep,
    or ``"quadratic"`` (direct area tests over all pairs), which serves as the
    independent reference for the sweep.
    """
    nh, nv = len(hdec.rects), len(vdec.rects)
    rects = tuple(
        dataclasses.replace(r, id=k)
        for k, r in enumerate(list(hdec.rects) + list(vdec.rects))
    )
    if method == "quadratic":
        edges = _edges_quadratic(rects, nh)
    elif method == "sweep":
        edges = _edges_sweep(rects, nh)
    else:
        raise ValueError(f"unknown edge construction method: {method}")
    adj_lists: list[list[int]] = [[] for _ in rects]
    for i, j in edges:
        adj_lists[i].append(j)
        adj_lists[j].append(i)
    return OrientedGraph(
        rects=rects,
        nh=nh,
        nv=nv,
        adj=tuple(tuple(sorted(a)) for a in adj_lists),
        edges=tuple(sorted(edges)),
    )


def bfs_from(graph: OrientedGraph, source: int) -> np.ndarray:
    """Oriented distances (hops + 1) from one rectangle to all others."""
    m = graph.m
    dist = np.full(m, 0, dtype=np.uint16)
    seen = bytearray(m)
    seen[source] = 1
    dist[source] = 1
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        for w in graph.adj[u]:
            if not seen[w]:
                seen[w] = 1
                dist[w] = du + 1
                queue.append(w)
    if not all(seen):
        raise ValueError("crossing graph is disconnected; the domain is not connected")
    return dist


def all_pairs(graph: OrientedGraph, chunk: int = 256) -> DistanceMatrix:
    """All oriented distances: one BFS per source, chunked through scipy."""
    m = graph.m
    if m + 1 >= np.iinfo(np.uint16).max:
        raise ValueError("distance matrix would overflow uint16")
    indptr = np.zeros(m + 1, dtype=np.int64)
    for i, neigh in enumerate(graph.adj):
        indptr[i + 1] = indptr[i] + len(neigh)
    indices = np.fromiter(
        (w for neigh in graph.adj for w in neigh), dtype=np.int64, count=indptr[-1]
    )
    sparse = csr_matrix((np.ones(len(indices), dtype=np.uint8), indices, indptr), shape=(m, m))
    dm = np.empty((m, m), dtype=np.uint16)
    for start in range(0, m, chunk):
        rows = shortest_path(
            sparse,
            method="D",
            directed=False,
            unweighted=True,
            indices=np.arange(start, min(start + chunk, m)),
        )
        if np.isinf(rows).any():
            raise ValueError("crossing graph is disconnected; the domain is not connected")
        dm[start : start + rows.shape[0]] = rows.astype(np.uint16) + 1
    return dm


def summarize(dm: DistanceMatrix) -> GraphSummary:
    """Extremes of the distance table with witnesses."""
    flat = int(np.argmax(dm))
    i, j = divmod(flat, dm.shape[1])
    row_max = dm.max(axis=1)
    return GraphSummary(
        ordiam=int(dm[i, j]),
        orrad=int(row_max.min()),
        diam_pair=(i, j),
        center_rect=int(np.argmin(row_max)),
    )


def far_set(dm: DistanceMatrix, i: int, t: int) -> np.ndarray:
    """Ids at oriented distance exactly ``t`` from ``i`` (all one orientation)."""
    return np.nonzero(dm[i] == t)[0]
