"""Diagonal +/-1 switching of weighted graphs.

Switching by D (entries +/-1) maps A to delta*D*A*D and carries state transfer
along: fidelity from u to v at t equals fidelity from Du to Dv at delta*t in
the switched graph.  This module also provides balanced / anti-balanced
detection, the pair<->plus transfer generators, and edge-disjoint signed
composition A(H) - A(K) for commuting H, K.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CommuteError,
    EdgeOverlap,
    NoTransfer,
    ParseError,
    QwalkError,
    UnsupportedOverlap,
)
from .graphs import PureState, WeightedGraph, pair_state, plus_state
from .spectral import fidelity

COMMUTE_TOL = 1e-10
CERTIFY_TOL = 1e-9


@dataclass(frozen=True)
class SignVector:
    """Diagonal switching data: d over core vertices, plus a global sign delta."""

    d: tuple[int, ...]
    delta: int = 1

    def __post_init__(self):
        if any(x not in (-1, 1) for x in self.d):
            raise ParseError("sign vector entries must be +1 or -1")
        if self.delta not in (-1, 1):
            raise ParseError("delta must be +1 or -1")

    @classmethod
    def flipping(cls, n: int, flipped, delta: int = 1) -> "SignVector":
        d = [1] * n
        for v in flipped:
            d[v] = -1
        return cls(tuple(d), delta)

    def apply_to_state(self, s: PureState) -> PureState:
        return PureState(tuple((v, self.d[v] * c) for v, c in s.support))

    def to_document(self) -> dict:
        return {"d": list(self.d), "delta": self.delta}


def build_sign_vector(doc) -> SignVector:
    if not isinstance(doc, dict) or "d" not in doc:
        raise ParseError("sign vector document needs a 'd' list")
    return SignVector(tuple(int(x) for x in doc["d"]), int(doc.get("delta", 1)))


def switch(g: WeightedGraph, sv: SignVector) -> WeightedGraph:
    """Graph with adjacency delta * D * A(g) * D.

    Tail vertices inherit the sign of their attach vertex, so tail weights are
    unchanged; a global delta = -1 is only supported on tail-free graphs (an
    all-negative infinite tail is not representable).
    """
    if len(sv.d) != g.n:
        raise ParseError(f"sign vector length {len(sv.d)} != core size {g.n}")
    if sv.delta == -1 and g.tails:
        raise QwalkError("delta = -1 is not supported on graphs with tails")
    edges = tuple(
        (a, b, sv.delta * sv.d[a] * sv.d[b] * w) for a, b, w in g.edges
    )
    return WeightedGraph(g.n, edges, g.tails)


def _sign_match(gt: WeightedGraph, g: WeightedGraph, target: int) -> SignVector | None:
    """D with D*A(g)*D = target*A(gt), by BFS sign propagation; None if impossible."""
    if gt.n != g.n:
        return None
    wm_g = g.weight_map
    wm_t = gt.weight_map
    if set(wm_g) != set(wm_t):
        return None
    for key, w in wm_g.items():
        if abs(abs(wm_t[key]) - abs(w)) > 1e-12:
            return None
    if len(gt.tails) != len(g.tails):
        return None
    for ta, tb in zip(sorted(gt.tails, key=lambda t: t.attach),
                      sorted(g.tails, key=lambda t: t.attach)):
        if ta.attach != tb.attach or len(ta.prefix) != len(tb.prefix):
            return None
        if any(abs(abs(x) - abs(y)) > 1e-12 for x, y in zip(ta.prefix, tb.prefix)):
            return None

    d = [0] * g.n
    for root in range(g.n):
        if d[root]:
            continue
        d[root] = 1
        queue = [root]
        while queue:
            u = queue.pop()
            for v in g.neighbors(u):
                want = d[u] * (1 if target * wm_t[(min(u, v), max(u, v))]
                               * wm_g[(min(u, v), max(u, v))] > 0 else -1)
                if d[v] == 0:
                    d[v] = want
                    queue.append(v)
                elif d[v] != want:
                    return None
    return SignVector(tuple(d), target)


def is_balanced(gt: WeightedGraph, g: WeightedGraph) -> SignVector | None:
    """SignVector with D*A(g)*D = A(gt), or None."""
    return _sign_match(gt, g, 1)


def is_antibalanced(gt: WeightedGraph, g: WeightedGraph) -> SignVector | None:
    """SignVector with D*A(g)*D = -A(gt), or None."""
    return _sign_match(gt, g, -1)


def _two_point(s: PureState) -> tuple[int, int, int]:
    """Decompose a pair/plus state as (a, b, sign) with s = (e_a + sign*e_b)/sqrt2."""
    if len(s.support) != 2:
        raise UnsupportedOverlap("state is not supported on exactly two vertices")
    (va, ca), (vb, cb) = s.support
    for c in (ca, cb):
        if abs(c.imag) > 1e-12 or abs(abs(c.real) - 1 / np.sqrt(2)) > 1e-9:
            raise UnsupportedOverlap("state is not a pair or plus state")
    if ca.real < 0:
        # normalize global phase so the first amplitude is positive
        ca, cb = -ca, -cb
    return va, vb, 1 if cb.real > 0 else -1


def _canonical(s: PureState) -> PureState:
    a, b, sign = _two_point(s)
    return plus_state(a, b) if sign > 0 else pair_state(a, b)


def pairplus_transforms(g: WeightedGraph, src: PureState, dst: PureState,
                        tau: float) -> list[tuple[WeightedGraph, PureState, PureState]]:
    """Signed variants of g converting pair <-> plus transfer at the same time.

    src and dst must be pair or plus states with transfer at tau in g.  Each
    output (g~, src~, dst~) differs from the input in at least one state type
    and is re-certified by a fidelity check at tau.
    """
    sa, sb, _ = _two_point(src)
    da, db, _ = _two_point(dst)
    base = fidelity(g, src, dst, tau)
    if base < 1 - CERTIFY_TOL:
        raise NoTransfer(base, f"input has no transfer at t={tau:.12g}")

    # generators: negate every edge at the second source vertex,
    # at the second destination vertex, or at both (their joining edge, if any,
    # switches back to positive automatically)
    flip_sets = [{sb}, {db}, {sb, db}]
    seen: set[tuple] = set()
    out: list[tuple[WeightedGraph, PureState, PureState]] = []
    for flips in flip_sets:
        sv = SignVector.flipping(g.n, flips)
        gt = switch(g, sv)
        src_t = _canonical(sv.apply_to_state(src))
        dst_t = _canonical(sv.apply_to_state(dst))
        key = (gt.edges, src_t.support, dst_t.support)
        if key in seen:
            continue
        seen.add(key)
        if src_t.is_parallel_to(src) and dst_t.is_parallel_to(dst) and gt.edges == g.edges:
            continue
        f = fidelity(gt, src_t, dst_t, tau)
        if f < 1 - CERTIFY_TOL:
            raise QwalkError(
                f"switched transfer failed to re-certify (fidelity {f:.12g})"
            )
        out.append((gt, src_t, dst_t))
    return out


def compose_signed(h: WeightedGraph, k: WeightedGraph) -> WeightedGraph:
    """Signed union with adjacency A(h) - A(k).

    h and k must share the vertex set, be edge-disjoint, tail-free, and have
    commuting adjacency matrices.
    """
    if h.n != k.n:
        raise ParseError("operands must share a vertex set")
    if h.tails or k.tails:
        raise QwalkError("signed composition is defined on tail-free graphs")
    overlap = set(h.weight_map) & set(k.weight_map)
    if overlap:
        raise EdgeOverlap(f"edge {min(overlap)} appears in both operands")
    ah, ak = h.core_adjacency(), k.core_adjacency()
    resid = float(np.max(np.abs(ah @ ak - ak @ ah)))
    if resid > COMMUTE_TOL:
        raise CommuteError(f"adjacency matrices do not commute (residual {resid:.3g})")
    edges = h.edges + tuple((a, b, -w) for a, b, w in k.edges)
    return WeightedGraph(h.n, edges)
