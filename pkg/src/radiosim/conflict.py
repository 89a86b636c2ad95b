"""Interference conflicts between nodes, links and tours.

A tour is a packet bundled with its injection round and the simple
oriented path it must traverse.  A node w conflicts with a link u->v when
w's transmission could prevent a message on u->v from being heard at v:
w = u, w = v, or w neighbors v.  Two tours conflict when they share a
node, or a non-destination node of one conflicts with the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .network import Network


class TourError(ValueError):
    """Raised for invalid tours or conflict-graph inputs."""


@dataclass(frozen=True)
class Tour:
    """A packet with its injection round and oriented path."""

    id: int
    injection_round: int
    path: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "path", tuple(self.path))

    @property
    def source(self) -> int:
        return self.path[0]

    @property
    def destination(self) -> int:
        return self.path[-1]

    @property
    def length(self) -> int:
        """Number of links in the path."""
        return len(self.path) - 1

    def links(self) -> list[tuple[int, int]]:
        return [(self.path[i], self.path[i + 1]) for i in range(self.length)]


def validate_tour(net: Network, tour: Tour) -> None:
    """Check that the tour's path is a simple path of the network with >= 1 link."""
    if len(tour.path) < 2:
        raise TourError(f"tour {tour.id}: path must have at least one link")
    if len(set(tour.path)) != len(tour.path):
        raise TourError(f"tour {tour.id}: path {tour.path} is not simple")
    for v in tour.path:
        if not 1 <= v <= net.n:
            raise TourError(f"tour {tour.id}: node {v} out of range [1, {net.n}]")
    for u, v in tour.links():
        if not net.has_edge(u, v):
            raise TourError(f"tour {tour.id}: ({u}, {v}) is not an edge of the network")


def node_link_conflicts(net: Network, w: int, link: tuple[int, int]) -> bool:
    """True iff node w conflicts with the oriented link tail->head."""
    tail, head = link
    if not (1 <= w <= net.n):
        raise TourError(f"node {w} out of range [1, {net.n}]")
    if not net.has_edge(tail, head):
        raise TourError(f"({tail}, {head}) is not an edge of the network")
    return w == tail or w == head or net.has_edge(w, head)


def node_tour_conflicts(net: Network, w: int, tour: Tour) -> bool:
    """True iff w conflicts with at least one link of the tour."""
    validate_tour(net, tour)
    return any(node_link_conflicts(net, w, link) for link in tour.links())


def conflict_node_set(net: Network, tour: Tour) -> frozenset[int]:
    """All nodes that conflict with the tour: its own nodes plus every
    neighbor of a link head."""
    nodes = set(tour.path)
    for head in tour.path[1:]:
        nodes |= net.neighbors(head)
    return frozenset(nodes)


def tours_conflict(net: Network, f0: Tour, f1: Tour) -> bool:
    """True iff the tours share a node or a non-destination node of one
    conflicts with the other."""
    validate_tour(net, f0)
    validate_tour(net, f1)
    if set(f0.path) & set(f1.path):
        return True
    for a, b in ((f0, f1), (f1, f0)):
        # every node of a except its destination
        for x in a.path[:-1]:
            if any(node_link_conflicts(net, x, link) for link in b.links()):
                return True
    return False


class ConflictGraph:
    """Simple graph on tour ids with edges between conflicting tours."""

    __slots__ = ("vertices", "edges", "_adj")

    def __init__(self, vertices: frozenset[int], edges: frozenset[tuple[int, int]]):
        self.vertices = vertices
        self.edges = edges
        adj: dict[int, set[int]] = {v: set() for v in vertices}
        for a, b in edges:
            adj[a].add(b)
            adj[b].add(a)
        self._adj = {v: frozenset(nbrs) for v, nbrs in adj.items()}

    def adjacent(self, a: int, b: int) -> bool:
        return (a, b) in self.edges if a < b else (b, a) in self.edges

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def __repr__(self) -> str:
        return f"ConflictGraph(vertices={len(self.vertices)}, edges={len(self.edges)})"


def build_conflict_graph(net: Network, tours: Iterable[Tour]) -> ConflictGraph:
    """Pairwise conflict check over the tour set.

    Each tour is validated once; the pair test uses per-tour node sets and
    conflict-node sets, which is the same predicate as tours_conflict
    (conflict_node_set(f) is exactly the set of nodes that conflict with f).
    """
    tour_list = sorted(tours, key=lambda f: f.id)
    ids = [f.id for f in tour_list]
    if len(set(ids)) != len(ids):
        raise TourError(f"duplicate tour ids in {ids}")
    nodes = []
    non_dest = []
    conflicts_with = []
    for f in tour_list:
        validate_tour(net, f)
        nodes.append(frozenset(f.path))
        non_dest.append(frozenset(f.path[:-1]))
        conflicts_with.append(conflict_node_set(net, f))
    edges = set()
    for i in range(len(tour_list)):
        for j in range(i + 1, len(tour_list)):
            if (nodes[i] & nodes[j]
                    or non_dest[i] & conflicts_with[j]
                    or non_dest[j] & conflicts_with[i]):
                edges.add((tour_list[i].id, tour_list[j].id))
    return ConflictGraph(frozenset(ids), frozenset(edges))


def max_degree(cg: ConflictGraph) -> int:
    """Maximum vertex degree; 0 for an empty or edgeless graph."""
    if not cg.vertices:
        return 0
    return max(cg.degree(v) for v in cg.vertices)


def format_tour(tour: Tour) -> str:
    """One line per tour: `t <id> <injection_round> <v1> ... <vk>`."""
    return f"t {tour.id} {tour.injection_round} " + " ".join(map(str, tour.path))


def parse_tour_line(line: str, lineno: int = 0) -> Tour:
    parts = line.split()
    if len(parts) < 5 or parts[0] != "t":
        raise TourError(f"line {lineno}: expected `t <id> <round> <v1> <v2> ...`")
    try:
        tid = int(parts[1])
        rnd = int(parts[2])
        path = tuple(int(p) for p in parts[3:])
    except ValueError as exc:
        raise TourError(f"line {lineno}: {exc}") from None
    return Tour(tid, rnd, path)
