"""Homogeneous trees with a basin, layers, heights, and the way out.

The tree is homogeneous of degree ``m + 1``.  Three basin shapes are
supported: a single vertex (unramified), a single edge (ramified), and a
bi-infinite apartment (split).  Vertices carry basin-relative addresses
``(anchor, word)``: the anchor names the nearest basin vertex and the word
lists child indices along the path leaving the basin, so the height of a
vertex (its layer index) is simply the word length.

Anchors are encoded as integers: the unramified basin has the single anchor
0; the ramified edge has anchors 0 and 1 (1 being the second endpoint); the
split apartment has one anchor per integer position j.  Child index 0 is
reserved for the way-out direction, so the way-out vertex of height n is
always ``(0, (0,) * n)``.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from enum import Enum

from .errors import LimitExceeded, RadiusTooSmall, UnknownVertex

DEFAULT_MAX_VERTICES = 200_000


class BasinKind(Enum):
    UNRAMIFIED = "unramified"
    RAMIFIED = "ramified"
    SPLIT = "split"


@dataclass(frozen=True)
class BuildingSpec:
    """A basin kind together with the branching parameter m (degree m + 1)."""

    kind: BasinKind
    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("branching parameter m must be at least 2")


def _line_spec(kind: BasinKind) -> BuildingSpec:
    # Degenerate m = 1 fixture: the tree is a line.  Only the test
    # constructor below uses this; it bypasses the m >= 2 validation.
    spec = object.__new__(BuildingSpec)
    object.__setattr__(spec, "kind", kind)
    object.__setattr__(spec, "m", 1)
    return spec


@dataclass(frozen=True)
class VertexAddr:
    """Canonical basin-relative address of a vertex."""

    anchor: int
    word: tuple[int, ...] = ()

    @property
    def height(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        body = ".".join(str(i) for i in self.word)
        return f"{self.anchor}" if not body else f"{self.anchor}:{body}"


def first_arity(kind: BasinKind, m: int) -> int:
    """Number of off-basin children of a basin vertex."""
    if kind is BasinKind.UNRAMIFIED:
        return m + 1
    if kind is BasinKind.RAMIFIED:
        return m
    return m - 1


class TruncatedTree:
    """An explicit finite piece of the tree, immutable after construction."""

    def __init__(self, spec, radius, halfwidth, vertices, adjacency):
        self.spec = spec
        self.radius = radius
        self.halfwidth = halfwidth
        self.vertices = tuple(sorted(vertices, key=lambda v: (v.anchor, v.word)))
        self.adjacency = adjacency
        self._vertex_set = frozenset(vertices)
        self._dist_cache: dict[VertexAddr, dict[VertexAddr, int]] = {}

    def __contains__(self, v: VertexAddr) -> bool:
        return v in self._vertex_set

    def __len__(self) -> int:
        return len(self.vertices)

    def neighbors(self, v: VertexAddr) -> tuple[VertexAddr, ...]:
        if v not in self._vertex_set:
            raise UnknownVertex(str(v))
        return self.adjacency[v]

    def bfs_distances(self, source: VertexAddr) -> dict[VertexAddr, int]:
        """Graph distances from ``source`` to every truncation vertex."""
        if source not in self._vertex_set:
            raise UnknownVertex(str(source))
        cached = self._dist_cache.get(source)
        if cached is not None:
            return cached
        dist = {source: 0}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            du = dist[u]
            for w in self.adjacency[u]:
                if w not in dist:
                    dist[w] = du + 1
                    queue.append(w)
        self._dist_cache[source] = dist
        return dist


def _anchor_range(spec: BuildingSpec, halfwidth: int):
    if spec.kind is BasinKind.UNRAMIFIED:
        return [0]
    if spec.kind is BasinKind.RAMIFIED:
        return [0, 1]
    return list(range(-halfwidth, halfwidth + 1))


def build_truncated(
    spec: BuildingSpec, radius: int, apartment_halfwidth: int = 0
) -> TruncatedTree:
    """Materialize all vertices of height <= radius (split: |j| <= halfwidth).

    Adjacency is complete for vertices of height < radius.  Raises
    :class:`LimitExceeded` when the vertex count would exceed the cap from
    the ``IMPACTZETA_MAX_VERTICES`` environment variable.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if spec.kind is BasinKind.SPLIT and apartment_halfwidth < radius:
        raise ValueError("split truncation needs apartment_halfwidth >= radius")
    halfwidth = apartment_halfwidth if spec.kind is BasinKind.SPLIT else 0
    cap = int(os.environ.get("IMPACTZETA_MAX_VERTICES", DEFAULT_MAX_VERTICES))

    m = spec.m
    anchors = _anchor_range(spec, halfwidth)
    vertices: list[VertexAddr] = []
    adjacency: dict[VertexAddr, list[VertexAddr]] = {}

    def add_vertex(v: VertexAddr):
        if len(vertices) >= cap:
            raise LimitExceeded(f"vertex cap {cap} exceeded")
        vertices.append(v)
        adjacency[v] = []

    for j in anchors:
        add_vertex(VertexAddr(j))
    # Basin edges.
    if spec.kind is BasinKind.RAMIFIED:
        adjacency[VertexAddr(0)].append(VertexAddr(1))
        adjacency[VertexAddr(1)].append(VertexAddr(0))
    elif spec.kind is BasinKind.SPLIT:
        for j in anchors[:-1]:
            adjacency[VertexAddr(j)].append(VertexAddr(j + 1))
            adjacency[VertexAddr(j + 1)].append(VertexAddr(j))

    frontier = [VertexAddr(j) for j in anchors]
    for depth in range(radius):
        next_frontier = []
        for parent in frontier:
            arity = first_arity(spec.kind, m) if depth == 0 else m
            for i in range(arity):
                child = VertexAddr(parent.anchor, parent.word + (i,))
                add_vertex(child)
                adjacency[parent].append(child)
                adjacency[child].append(parent)
                next_frontier.append(child)
        frontier = next_frontier

    adj = {v: tuple(sorted(ns, key=lambda w: (w.anchor, w.word))) for v, ns in adjacency.items()}
    return TruncatedTree(spec, radius, halfwidth, vertices, adj)


def build_line_tree(kind: BasinKind, radius: int) -> TruncatedTree:
    """Degenerate m = 1 constructor: the tree is a bi-infinite line.

    Test-only fixture for the unramified / ramified basins sitting on a
    line; the split basin would be the whole tree and is not supported.
    """
    if kind is BasinKind.SPLIT:
        raise ValueError("the split basin has no m = 1 line form")
    spec = _line_spec(kind)
    m = 1
    anchors = _anchor_range(spec, 0)
    vertices = [VertexAddr(j) for j in anchors]
    adjacency: dict[VertexAddr, list[VertexAddr]] = {v: [] for v in vertices}
    if kind is BasinKind.RAMIFIED:
        adjacency[VertexAddr(0)].append(VertexAddr(1))
        adjacency[VertexAddr(1)].append(VertexAddr(0))
    frontier = list(vertices)
    for depth in range(radius):
        next_frontier = []
        for parent in frontier:
            arity = first_arity(kind, m) if depth == 0 else m
            for i in range(arity):
                child = VertexAddr(parent.anchor, parent.word + (i,))
                vertices.append(child)
                adjacency.setdefault(child, []).append(parent)
                adjacency[parent].append(child)
                next_frontier.append(child)
        frontier = next_frontier
    adj = {v: tuple(sorted(ns, key=lambda w: (w.anchor, w.word))) for v, ns in adjacency.items()}
    return TruncatedTree(spec, radius, 0, vertices, adj)


def height(tree: TruncatedTree, v: VertexAddr) -> int:
    """Layer index of v: its graph distance to the nearest basin vertex."""
    if v not in tree:
        raise UnknownVertex(str(v))
    return v.height


def _anchor_separation(kind: BasinKind, a: int, b: int) -> int:
    if a == b:
        return 0
    if kind is BasinKind.RAMIFIED:
        return 1
    if kind is BasinKind.SPLIT:
        return abs(a - b)
    raise AssertionError("unramified basin has a single anchor")


def distance(tree: TruncatedTree, u: VertexAddr, v: VertexAddr) -> int:
    """Length of the unique geodesic, from the closed-form address rule.

    Same anchor: drop the common word prefix and count remaining letters.
    Different anchors: both words in full, plus the basin separation of the
    anchors.  The BFS route is available separately for cross-checks.
    """
    if u not in tree:
        raise UnknownVertex(str(u))
    if v not in tree:
        raise UnknownVertex(str(v))
    if u.anchor == v.anchor:
        common = 0
        for a, b in zip(u.word, v.word):
            if a != b:
                break
            common += 1
        return len(u.word) + len(v.word) - 2 * common
    sep = _anchor_separation(tree.spec.kind, u.anchor, v.anchor)
    return len(u.word) + len(v.word) + sep


def bfs_distance(tree: TruncatedTree, u: VertexAddr, v: VertexAddr) -> int:
    return tree.bfs_distances(u)[v]


def layer_members(tree: TruncatedTree, n: int) -> frozenset[VertexAddr]:
    """All truncation vertices of height exactly n."""
    if n > tree.radius:
        raise RadiusTooSmall(f"layer {n} not covered by radius {tree.radius}")
    return frozenset(v for v in tree.vertices if v.height == n)


def way_out_vertex(spec: BuildingSpec, n: int) -> VertexAddr:
    """The canonical height-n vertex on the way out: all-zero word off anchor 0."""
    if n < 0:
        raise ValueError("height must be nonnegative")
    return VertexAddr(0, (0,) * n)
