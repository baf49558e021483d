"""Graph states, local complementation orbits, and determination bounds.

The graph state of a simple graph is the unique joint +1 eigenstate of the
stabilizers ``X_i prod_{j ~ i} Z_j``; equivalently CZ gates applied to
``|+>^n`` along the edges.  Determination length is invariant under local
unitaries, and local complementation at a vertex realizes exactly the local
Clifford orbit of the state, so scanning that orbit for the smallest
maximum degree tightens the generic upper bound 1 + max degree.  The lower
bound 3 holds for every graph state on three or more qubits.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

import numpy as np

from . import qcore
from .errors import EdlkitError

LOWER_BOUND = 3


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on vertices 1..n, stored as frozen edge set."""

    n: int
    edges: tuple  # sorted tuple of (u, v) pairs with u < v

    def __post_init__(self):
        if self.n < 1:
            raise EdlkitError("DIM_MISMATCH", "need at least one vertex")
        norm = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise EdlkitError("BAD_VERTEX", "self-loop at vertex %d" % u)
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise EdlkitError("BAD_VERTEX", "edge (%d,%d) outside 1..%d" % (u, v, self.n))
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @classmethod
    def from_edges(cls, n, pairs):
        return cls(n, tuple((int(u), int(v)) for u, v in pairs))

    @classmethod
    def path(cls, n):
        return cls.from_edges(n, [(j, j + 1) for j in range(1, n)])

    @classmethod
    def cycle(cls, n):
        if n < 3:
            raise EdlkitError("BAD_VERTEX", "a cycle needs n >= 3")
        return cls.from_edges(n, [(j, j + 1) for j in range(1, n)] + [(1, n)])

    def neighbors(self, v):
        out = set()
        for a, b in self.edges:
            if a == v:
                out.add(b)
            elif b == v:
                out.add(a)
        return out

    def degree(self, v):
        return len(self.neighbors(v))

    def max_degree(self):
        return max((self.degree(v) for v in range(1, self.n + 1)), default=0)

    def is_connected(self):
        if self.n == 1:
            return True
        seen = {1}
        frontier = deque([1])
        while frontier:
            cur = frontier.popleft()
            for nb in self.neighbors(cur):
                if nb not in seen:
                    seen.add(nb)
                    frontier.append(nb)
        return len(seen) == self.n

    def _key(self):
        return (self.n, self.edges)


def graph_state(graph):
    """State vector of the graph state: CZ along every edge applied to |+>^n.

    The amplitudes are ``2^(-n/2) (-1)^(number of edges with both endpoints
    excited)``.  The stabilizer conditions are verified before returning.
    """
    n = graph.n
    if n > qcore.MAX_QUBITS:
        raise EdlkitError("TOO_LARGE", "n=%d exceeds the dense cap" % n)
    d = 1 << n
    amp = np.full(d, 2.0 ** (-n / 2.0), dtype=complex)
    for u, v in graph.edges:
        bu, bv = n - u, n - v  # particle j sits on index bit n-j
        for idx in range(d):
            if idx >> bu & 1 and idx >> bv & 1:
                amp[idx] = -amp[idx]
    psi = qcore.PureVector(n, amp)
    for v in range(1, n + 1):
        if np.max(np.abs(_apply_stabilizer(psi.amplitudes, graph, v) - psi.amplitudes)) > 1e-10:
            raise EdlkitError("SOLVER_FAIL", "stabilizer check failed at vertex %d" % v)
    return psi


def _apply_stabilizer(amp, graph, v):
    """Apply X_v prod_{j ~ v} Z_j to a state vector."""
    n = graph.n
    d = amp.shape[0]
    bv = n - v
    zmask = 0
    for nb in graph.neighbors(v):
        zmask |= 1 << (n - nb)
    out = np.empty_like(amp)
    for idx in range(d):
        src = idx ^ (1 << bv)
        sign = -1.0 if bin(src & zmask).count("1") % 2 else 1.0
        out[idx] = sign * amp[src]
    return out


def local_complement(graph, v):
    """Toggle every edge inside the neighborhood of ``v`` (an involution)."""
    if not 1 <= v <= graph.n:
        raise EdlkitError("BAD_VERTEX", "vertex %d outside 1..%d" % (v, graph.n))
    nbs = sorted(graph.neighbors(v))
    edges = set(graph.edges)
    for a, b in itertools.combinations(nbs, 2):
        pair = (a, b)
        if pair in edges:
            edges.remove(pair)
        else:
            edges.add(pair)
    return SimpleGraph(graph.n, tuple(sorted(edges)))


@dataclass(frozen=True)
class OrbitResult:
    min_max_degree: int
    exhausted: bool
    visited: int
    witness: SimpleGraph  # a graph in the orbit achieving the minimum


def lc_orbit_min_max_degree(graph, budget=100000):
    """Smallest maximum degree over the local-complementation orbit.

    Breadth-first search with the labeled edge set as canonical form.  The
    result is exact (``exhausted=True``) when the orbit fits in the budget
    or the theoretical minimum 2 is reached (a connected graph on three or
    more vertices cannot have maximum degree below 2).
    """
    if not graph.is_connected():
        raise EdlkitError("DISCONNECTED", "local-complementation orbit scan needs a connected graph")
    start = graph
    best = start.max_degree()
    best_graph = start
    seen = {start._key()}
    frontier = deque([start])
    floor = 2 if graph.n >= 3 else 1
    while frontier and len(seen) < budget and best > floor:
        cur = frontier.popleft()
        for v in range(1, graph.n + 1):
            nxt = local_complement(cur, v)
            key = nxt._key()
            if key in seen:
                continue
            seen.add(key)
            frontier.append(nxt)
            deg = nxt.max_degree()
            if deg < best:
                best = deg
                best_graph = nxt
            if best <= floor:
                break
    exhausted = not frontier or best <= floor
    return OrbitResult(best, exhausted, len(seen), best_graph)


@dataclass(frozen=True)
class GraphBounds:
    lo: int
    hi: int
    exact_hi: bool
    orbit: OrbitResult


def graph_bounds(graph, budget=100000):
    """Determination-length bounds (lo, hi) for a connected graph state.

    lo is always 3; hi is 1 plus the smallest maximum degree over the
    local-complementation orbit (local unitaries preserve the length).
    """
    if graph.n < 3:
        raise EdlkitError("BAD_VERTEX", "bounds need n >= 3")
    if not graph.is_connected():
        raise EdlkitError("DISCONNECTED", "graph state bounds need a connected graph")
    orbit = lc_orbit_min_max_degree(graph, budget=budget)
    return GraphBounds(LOWER_BOUND, 1 + orbit.min_max_degree, orbit.exhausted, orbit)


def uniformity_level(psi, tol=1e-9):
    """Largest k such that every k-qubit marginal is maximally mixed (0 if none).

    A k-uniform state cannot be determined, nor its entanglement detected,
    by marginals of k or fewer qubits.
    """
    n = psi.n
    if n > 8:
        raise EdlkitError("TOO_LARGE", "uniformity scan capped at 8 qubits")
    rho = psi.to_density().matrix
    level = 0
    for k in range(1, n):
        eye = np.eye(1 << k) / (1 << k)
        for combo in itertools.combinations(range(1, n + 1), k):
            marg = qcore.partial_trace(rho, combo)
            if np.max(np.abs(marg - eye)) > tol:
                return level
        level = k
    return level
