"""Dijkstra's algorithm, generic over the priority queue.

Vertices are inserted lazily: on first relaxation a dummy +infinity key goes
in, immediately lowered by decrease-key.  Decrease-key is called on every
relaxation of a non-finalized endpoint, even when the key did not improve,
and edges into finalized vertices are never touched.

Each run records, besides the linearization, distances and both trees:

* the exploration tree (parent = vertex whose exploration first inserted v),
* the shortest-path tree (parent = first relaxer achieving the final
  distance), and
* the induced interval set: per vertex the closed span [l, r] between its
  insert and extract events, counting every queue insert/extract as one tick.

Runs on audit-mode arenas verify the output order with n-1 comparisons on a
side arena; counters report only this run's comparisons and additions.
"""

from __future__ import annotations

from .base_heap import BinaryQueue, FibonacciQueue, PairingQueue
from .errors import UsageError
from .graph_core import Graph, SpanningTree
from .weights import INFINITY
from .workset_heap import WorkSetHeap

HEAP_KINDS = ("workset", "fibonacci", "binary", "pairing")


def make_queue(kind: str, arena):
    if kind == "workset":
        return WorkSetHeap(arena)
    if kind == "fibonacci":
        return FibonacciQueue(arena)
    if kind == "binary":
        return BinaryQueue(arena)
    if kind == "pairing":
        return PairingQueue(arena)
    raise UsageError(f"unknown heap kind {kind!r}")


class DijkstraRun:
    """Everything one run produces, ready for auditing."""

    __slots__ = ("linearization", "dist", "sssp", "explore", "intervals",
                 "comparisons", "additions", "heap_kind", "sssp_arcs",
                 "extract_comparisons")

    def __init__(self, linearization, dist, sssp, explore, intervals,
                 comparisons, additions, heap_kind, sssp_arcs=None):
        self.linearization = linearization
        self.dist = dist
        self.sssp = sssp
        self.explore = explore
        self.intervals = intervals
        self.comparisons = comparisons
        self.additions = additions
        self.heap_kind = heap_kind
        self.sssp_arcs = sssp_arcs  # arc index behind each sssp parent link
        self.extract_comparisons = 0  # workset runs: comparisons inside extracts

    def report_lines(self) -> list[str]:
        return [
            f"heap {self.heap_kind}",
            f"comparisons {self.comparisons}",
            f"additions {self.additions}",
            "sssp_edges " + " ".join(
                f"{p}->{v}" for v, p in enumerate(self.sssp.parent) if p >= 0),
            "explore_edges " + " ".join(
                f"{p}->{v}" for v, p in enumerate(self.explore.parent) if p >= 0),
            "linearization " + " ".join(map(str, self.linearization)),
        ]


def run_dijkstra(g: Graph, heap_kind: str = "workset") -> DijkstraRun:
    """Run Dijkstra on g with the chosen queue; all weight access is counted."""
    arena = g.arena
    cmp0, add0 = arena.counters()
    q = make_queue(heap_kind, arena)
    n = g.n
    s = g.s
    dist: list[int] = [INFINITY] * n
    token: list = [None] * n
    finalized = [False] * n
    lo = [0] * n
    hi = [0] * n
    sssp = [-1] * n
    sssp_arc = [-1] * n
    explore = [-1] * n
    order: list[int] = []
    adj = g.adj
    heads = g.heads
    weights = g.weights
    compare = arena.compare
    add = arena.add
    q_insert = q.insert
    q_extract = q.extract_min
    q_decrease = q.decrease_key

    event = 1
    dist[s] = arena.zero()
    lo[s] = event
    token[s] = q_insert(dist[s], s)
    while len(q):
        du, u = q_extract()
        event += 1
        hi[u] = event
        finalized[u] = True
        order.append(u)
        for i in adj[u]:
            v = heads[i]
            if finalized[v]:
                continue
            w = weights[i]
            if type(w) is not int:
                w = w.resolve()
            if token[v] is None:
                event += 1
                lo[v] = event
                token[v] = q_insert(INFINITY, v)
                explore[v] = u
            nd = add(du, w)
            if compare(nd, dist[v]) < 0:
                dist[v] = nd
                sssp[v] = u
                sssp_arc[v] = i
            q_decrease(token[v], dist[v])

    cmp1, add1 = arena.counters()
    run = DijkstraRun(
        linearization=order,
        dist=dist,
        sssp=SpanningTree(sssp, s, "sssp"),
        explore=SpanningTree(explore, s, "exploration"),
        intervals=[(lo[v], hi[v]) for v in range(n)],
        comparisons=cmp1 - cmp0,
        additions=add1 - add0,
        heap_kind=heap_kind,
        sssp_arcs=sssp_arc,
    )
    if heap_kind == "workset":
        run.extract_comparisons = q.extract_comparisons
    if arena.audit:
        _verify_order(arena, run)
    return run


def _verify_order(arena, run: DijkstraRun) -> None:
    """n-1 comparisons on a side arena: the output is sorted by distance."""
    handles = [run.dist[v] for v in run.linearization]
    side, side_handles = arena.fork_values(handles)
    for a, b in zip(side_handles, side_handles[1:]):
        assert side.compare(a, b) <= 0, "linearization out of distance order"
