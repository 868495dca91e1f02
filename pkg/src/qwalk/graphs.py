"""Core graph model: weighted graphs, tails, pure states, and the on-disk format.

Vertices of the finite core are dense integer indices ``0..n-1``.  Semi-infinite
path tails are metadata (:class:`TailSpec`); they are only materialized by the
spectral module when a truncation length is chosen.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DuplicateEdgeConflict,
    MissingEdge,
    ParseError,
    SameVertex,
    SelfLoop,
    ZeroWeight,
)

FORMAT_TAG = "qwalk/1"

_NORM_TOL = 1e-12


def _edge_key(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class TailSpec:
    """A semi-infinite path attached at a core vertex.

    ``prefix`` holds the leading edge weights; every weight past the prefix is 1
    (the all-ones infinite path).  An empty prefix is the plain unit tail.
    """

    attach: int
    prefix: tuple[float, ...] = ()

    def weight(self, k: int) -> float:
        """Weight of the k-th tail edge (k=0 joins the attach vertex)."""
        return self.prefix[k] if k < len(self.prefix) else 1.0


@dataclass(frozen=True)
class WeightedGraph:
    """Finite-core undirected weighted graph with optional path tails.

    Edges are stored once per unordered pair, sorted canonically; weights are
    nonzero reals.  Instances are immutable and safe to share.
    """

    n: int
    edges: tuple[tuple[int, int, float], ...]
    tails: tuple[TailSpec, ...] = ()

    def __post_init__(self):
        seen = {}
        for a, b, w in self.edges:
            if a == b:
                raise SelfLoop(f"self-loop at vertex {a}")
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise ParseError(f"edge ({a},{b}) out of range for n={self.n}")
            if w == 0:
                raise ZeroWeight(f"edge ({a},{b}) has zero weight")
            key = _edge_key(a, b)
            if key in seen:
                raise DuplicateEdgeConflict(f"edge {key} declared twice")
            seen[key] = w
        canon = tuple(sorted((min(a, b), max(a, b), float(w)) for a, b, w in self.edges))
        object.__setattr__(self, "edges", canon)
        for t in self.tails:
            if not 0 <= t.attach < self.n:
                raise ParseError(f"tail attach vertex {t.attach} out of range")
            if any(w == 0 for w in t.prefix):
                raise ZeroWeight("tail prefix contains a zero weight")

    # -- queries ---------------------------------------------------------

    @property
    def weight_map(self) -> dict[tuple[int, int], float]:
        try:
            return self._wm  # type: ignore[attr-defined]
        except AttributeError:
            wm = {_edge_key(a, b): w for a, b, w in self.edges}
            object.__setattr__(self, "_wm", wm)
            return wm

    def weight(self, a: int, b: int) -> float:
        if a == b:
            return 0.0
        return self.weight_map.get(_edge_key(a, b), 0.0)

    def has_edge(self, a: int, b: int) -> bool:
        return _edge_key(a, b) in self.weight_map

    def neighbors(self, a: int) -> list[int]:
        out = []
        for (u, v), _ in self.weight_map.items():
            if u == a:
                out.append(v)
            elif v == a:
                out.append(u)
        return sorted(out)

    def core_adjacency(self) -> np.ndarray:
        """Adjacency matrix of the finite core, tails ignored."""
        a = np.zeros((self.n, self.n))
        for u, v, w in self.edges:
            a[u, v] = w
            a[v, u] = w
        return a

    # -- transforms ------------------------------------------------------

    def with_weights(self, weights: dict[tuple[int, int], float]) -> "WeightedGraph":
        edges = tuple((a, b, w) for (a, b), w in weights.items() if w != 0)
        return WeightedGraph(self.n, edges, self.tails)


@dataclass(frozen=True)
class DegreeProfile:
    """Per-vertex (signed and absolute) degrees of the core, and the global
    maximum absolute degree M with tails included."""

    degree: tuple[float, ...]
    absolute_degree: tuple[float, ...]
    m: float


@dataclass(frozen=True)
class PureState:
    """Unit vector supported on finitely many core vertices."""

    support: tuple[tuple[int, complex], ...]

    def __post_init__(self):
        verts = [v for v, _ in self.support]
        if len(set(verts)) != len(verts):
            raise ParseError("pure state support vertices must be distinct")
        norm2 = sum(abs(c) ** 2 for _, c in self.support)
        if abs(norm2 - 1.0) > _NORM_TOL:
            raise ParseError(f"pure state is not unit (|u|^2 = {norm2})")

    def vector(self, dim: int) -> np.ndarray:
        v = np.zeros(dim, dtype=complex)
        for vertex, amp in self.support:
            if vertex >= dim:
                raise ParseError(f"state vertex {vertex} outside dimension {dim}")
            v[vertex] = amp
        return v

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.support)

    def is_parallel_to(self, other: "PureState", tol: float = 1e-9) -> bool:
        overlap = sum(
            complex(np.conj(ca)) * cb
            for (va, ca) in self.support
            for (vb, cb) in other.support
            if va == vb
        )
        return abs(abs(overlap) - 1.0) <= tol


def vertex_state(a: int) -> PureState:
    return PureState(((a, 1.0 + 0j),))


def pair_state(a: int, b: int) -> PureState:
    if a == b:
        raise SameVertex("pair state needs two distinct vertices")
    s = 1.0 / math.sqrt(2.0)
    return PureState(((a, s + 0j), (b, -s + 0j)))


def plus_state(a: int, b: int) -> PureState:
    if a == b:
        raise SameVertex("plus state needs two distinct vertices")
    s = 1.0 / math.sqrt(2.0)
    return PureState(((a, s + 0j), (b, s + 0j)))


def state_from_vector(vec: np.ndarray, tol: float = 1e-12) -> PureState:
    support = tuple(
        (int(i), complex(vec[i])) for i in np.nonzero(np.abs(vec) > tol)[0]
    )
    return PureState(support)


# -- degree / boundedness ------------------------------------------------


def degree_profile(g: WeightedGraph) -> DegreeProfile:
    deg = [0.0] * g.n
    adeg = [0.0] * g.n
    for a, b, w in g.edges:
        deg[a] += w
        deg[b] += w
        adeg[a] += abs(w)
        adeg[b] += abs(w)
    m = max(adeg, default=0.0)
    for t in g.tails:
        # attach vertex gains the first tail edge; interior tail vertex k
        # carries |w_k| + |w_{k+1}|, which is 2 past the prefix
        attach_abs = adeg[t.attach] + abs(t.weight(0))
        m = max(m, attach_abs)
        for k in range(len(t.prefix) + 1):
            m = max(m, abs(t.weight(k)) + abs(t.weight(k + 1)))
    return DegreeProfile(tuple(deg), tuple(adeg), m)


def negate_edges(g: WeightedGraph, edges) -> WeightedGraph:
    """Multiply the weights of the listed edges by -1."""
    wm = dict(g.weight_map)
    for a, b in edges:
        key = _edge_key(a, b)
        if key not in wm:
            raise MissingEdge(f"edge {key} not present")
        wm[key] = -wm[key]
    return g.with_weights(wm)


# -- interchange format --------------------------------------------------


def build_graph(doc) -> WeightedGraph:
    """Build a graph from a qwalk/1 document (dict or JSON string).

    String vertex labels are accepted via an optional "labels" list and are
    mapped to their indices on load.
    """
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("graph document must be a JSON object")
    fmt = doc.get("format", FORMAT_TAG)
    if fmt != FORMAT_TAG:
        raise ParseError(f"unsupported format {fmt!r}")
    if "n" not in doc:
        raise ParseError("graph document missing 'n'")
    n = doc["n"]
    if not isinstance(n, int) or n < 0:
        raise ParseError("'n' must be a nonnegative integer")

    labels = doc.get("labels")
    index = None
    if labels is not None:
        if len(labels) != n or len(set(labels)) != n:
            raise ParseError("'labels' must list n distinct names")
        index = {name: i for i, name in enumerate(labels)}

    def vid(x) -> int:
        if index is not None and isinstance(x, str):
            if x not in index:
                raise ParseError(f"unknown vertex label {x!r}")
            return index[x]
        if not isinstance(x, int):
            raise ParseError(f"vertex reference {x!r} is not an index")
        if not 0 <= x < n:
            raise ParseError(f"vertex index {x} out of range")
        return x

    seen: dict[tuple[int, int], float] = {}
    for entry in doc.get("edges", []):
        if len(entry) == 2:
            a, b = entry
            w = 1.0
        elif len(entry) == 3:
            a, b, w = entry
        else:
            raise ParseError(f"bad edge entry {entry!r}")
        a, b = vid(a), vid(b)
        if a == b:
            raise SelfLoop(f"self-loop at vertex {a}")
        w = float(w)
        if w == 0:
            raise ZeroWeight(f"edge ({a},{b}) has zero weight")
        key = _edge_key(a, b)
        if key in seen and seen[key] != w:
            raise DuplicateEdgeConflict(
                f"edge {key} declared with conflicting weights {seen[key]} and {w}"
            )
        seen[key] = w

    tails = []
    for tdoc in doc.get("tails", []):
        tails.append(TailSpec(vid(tdoc["attach"]), tuple(float(w) for w in tdoc.get("prefix", ()))))

    return WeightedGraph(n, tuple((a, b, w) for (a, b), w in seen.items()), tuple(tails))


def graph_to_document(g: WeightedGraph) -> dict:
    doc = {
        "format": FORMAT_TAG,
        "n": g.n,
        "edges": [[a, b, w] for a, b, w in g.edges],
    }
    if g.tails:
        doc["tails"] = [{"attach": t.attach, "prefix": list(t.prefix)} for t in g.tails]
    return doc


def state_to_document(s: PureState) -> dict:
    return {
        "format": FORMAT_TAG,
        "amplitudes": [[v, c.real, c.imag] for v, c in s.support],
    }


def build_state(doc) -> PureState:
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
    if doc.get("format", FORMAT_TAG) != FORMAT_TAG:
        raise ParseError(f"unsupported format {doc.get('format')!r}")
    amps = doc.get("amplitudes")
    if not amps:
        raise ParseError("state document missing 'amplitudes'")
    return PureState(tuple((int(v), complex(re, im)) for v, re, im in amps))
