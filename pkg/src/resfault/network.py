"""Resistive network model and exact effective-resistance computation.

A network is a connected weighted simple graph; weights are conductances
(reciprocal resistances) kept as exact rationals throughout.  Effective
resistance between a probe pair is obtained from entries of the inverse
reduced Laplacian, and the single-fault perturbed resistance comes from
the rank-one update closed form with the grounded vertex placed at one
endpoint of the faulted edge.  A direct oracle that rebuilds the altered
graph from scratch is kept alongside as an independent cross-check.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .linalg import fraction_free_invert


class InfiniteResistance:
    """Open-circuit reading: the fault separated the probed pair.

    All instances compare equal to each other and unequal to every finite
    value, so signature entries containing them group correctly.
    """

    __slots__ = ()

    def __eq__(self, other):
        return isinstance(other, InfiniteResistance)

    def __hash__(self):
        return hash("InfiniteResistance")

    def __repr__(self):
        return "INFINITE"


INFINITE = InfiniteResistance()

Resistance = Union[Fraction, InfiniteResistance]


class FaultMode(enum.Enum):
    """How the adversary alters the chosen edge.

    REMOVED: conductance drops to 0 (the resistor is gone, resistance -> inf).
    SHORTED: conductance grows without bound (resistance -> 0, the edge is
    effectively contracted).
    """

    REMOVED = "removed"
    SHORTED = "shorted"


@dataclass(frozen=True, order=True)
class Edge:
    u: int
    v: int
    conductance: Fraction

    def __post_init__(self):
        if self.u == self.v:
            raise ValueError(f"self loop at vertex {self.u}")
        if self.u > self.v:
            u, v = self.v, self.u
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", v)
        object.__setattr__(self, "conductance", Fraction(self.conductance))
        if self.conductance <= 0:
            raise ValueError(f"conductance must be positive, got {self.conductance}")

    @property
    def pair(self) -> tuple[int, int]:
        return (self.u, self.v)


@dataclass(frozen=True, order=True)
class Measurement:
    """Unordered probe pair; normalized so r < s."""

    r: int
    s: int

    def __post_init__(self):
        if self.r == self.s:
            raise ValueError(f"measurement endpoints must differ, got {self.r}")
        if self.r > self.s:
            r, s = self.s, self.r
            object.__setattr__(self, "r", r)
            object.__setattr__(self, "s", s)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.r, self.s)


@dataclass(frozen=True)
class Network:
    """Connected simple graph with positive rational conductances.

    Vertices are 0..n-1.  Construction validates simplicity, ranges and
    connectivity; use `from_edge_list` to merge parallel edges first.
    """

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("network needs at least one vertex")
        seen = set()
        for e in self.edges:
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise ValueError(f"edge {e.pair} out of range for n={self.n}")
            if e.pair in seen:
                raise ValueError(f"duplicate edge {e.pair}; merge parallel edges first")
            seen.add(e.pair)
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))
        if not _is_connected(self.n, [e.pair for e in self.edges]):
            raise ValueError("network must be connected")

    @classmethod
    def from_edge_list(cls, n: int, edges: Iterable[tuple[int, int, object]]) -> "Network":
        """Build a network, merging parallel edges by summing conductances."""
        merged: dict[tuple[int, int], Fraction] = {}
        for u, v, w in edges:
            if u == v:
                raise ValueError(f"self loop at vertex {u}")
            key = (min(u, v), max(u, v))
            merged[key] = merged.get(key, Fraction(0)) + Fraction(w)
        return cls(n, tuple(Edge(u, v, w) for (u, v), w in merged.items()))

    def edge_between(self, u: int, v: int) -> Edge:
        key = (min(u, v), max(u, v))
        edge = _edge_lookup(self).get(key)
        if edge is None:
            raise KeyError(f"no edge between {u} and {v}")
        return edge

    def measurements(self) -> list[Measurement]:
        """All unordered vertex pairs: the default probe universe."""
        return [Measurement(r, s) for r in range(self.n) for s in range(r + 1, self.n)]


def _is_connected(n: int, pairs: list[tuple[int, int]]) -> bool:
    if n == 1:
        return True
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in pairs:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * n
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if not seen[y]:
                seen[y] = True
                count += 1
                stack.append(y)
    return count == n


def build_reduced_laplacian(net: Network, ground: int) -> list[list[Fraction]]:
    """Laplacian of the network with the ground row and column deleted."""
    if not (0 <= ground < net.n):
        raise ValueError(f"ground vertex {ground} out of range")
    m = net.n - 1
    idx = lambda v: v if v < ground else v - 1
    lap = [[Fraction(0)] * m for _ in range(m)]
    for e in net.edges:
        w = e.conductance
        if e.u != ground and e.v != ground:
            iu, iv = idx(e.u), idx(e.v)
            lap[iu][iv] -= w
            lap[iv][iu] -= w
        for x in (e.u, e.v):
            if x != ground:
                lap[idx(x)][idx(x)] += w
    return lap


def _instance_cache(net: Network, name: str) -> dict:
    """Per-network memo dict, attached lazily; identity-keyed, so hot paths
    never rehash the (potentially large) edge tuple."""
    cache = net.__dict__.get(name)
    if cache is None:
        cache = {}
        object.__setattr__(net, name, cache)
    return cache


def _reduced_inverse(net: Network, ground: int):
    """Inverse reduced Laplacian at `ground` as a dense Fraction matrix, memoized."""
    cache = _instance_cache(net, "_inverse_cache")
    inv = cache.get(ground)
    if inv is None:
        adj, det, scale = fraction_free_invert(build_reduced_laplacian(net, ground))
        inv = tuple(tuple(Fraction(x * scale, det) for x in row) for row in adj)
        cache[ground] = inv
    return inv


def _edge_lookup(net: Network) -> dict:
    cache = _instance_cache(net, "_edge_cache")
    if "map" not in cache:
        cache["map"] = {e.pair: e for e in net.edges}
    return cache["map"]


def _inv_entry(inv, ground: int, i: int, j: int) -> Fraction:
    ii = i if i < ground else i - 1
    jj = j if j < ground else j - 1
    return inv[ii][jj]


def reduced_inverse_entry(net: Network, ground: int, i: int, j: int) -> Fraction:
    """Exact (i, j) entry of the inverse reduced Laplacian.

    Solves one linear system by fraction-free elimination rather than
    inverting the whole matrix.
    """
    if i == ground or j == ground:
        raise ValueError("requested entry indexes the deleted ground row/column")
    from .linalg import solve_unit_column

    lap = build_reduced_laplacian(net, ground)
    jj = j if j < ground else j - 1
    ii = i if i < ground else i - 1
    return solve_unit_column(lap, jj)[ii]


def effective_resistance(net: Network, m: Measurement, ground: int = 0) -> Fraction:
    """Effective resistance between the probe pair (exact, ground-invariant)."""
    r, s = m.r, m.s
    if s >= net.n or r < 0:
        raise ValueError(f"measurement {m.pair} out of range for n={net.n}")
    inv = _reduced_inverse(net, ground)
    if r == ground:
        return _inv_entry(inv, ground, s, s)
    if s == ground:
        return _inv_entry(inv, ground, r, r)
    return (
        _inv_entry(inv, ground, r, r)
        + _inv_entry(inv, ground, s, s)
        - 2 * _inv_entry(inv, ground, r, s)
    )


def perturbed_effective_resistance(
    net: Network, m: Measurement, fault: Edge, mode: FaultMode
) -> Resistance:
    """Effective resistance after the fault alters one edge.

    Uses the rank-one update closed form with the ground at the fault edge
    endpoint `b`: R' = R - beta * x**2, where x is built from inverse
    reduced-Laplacian entries and beta encodes the weight change (the
    limit value for a short, the negated conductance for a removal).
    When a removal makes the update denominator vanish the edge is a
    bridge; we fall back to the rebuilt-graph oracle.
    """
    if _edge_lookup(net).get(fault.pair) != fault:
        raise ValueError(f"fault edge {fault.pair} is not in the network")
    a, b = fault.u, fault.v
    inv = _reduced_inverse(net, b)
    laa = _inv_entry(inv, b, a, a)
    r, s = m.r, m.s
    if s == b:
        x = _inv_entry(inv, b, a, r)
    elif r == b:
        x = _inv_entry(inv, b, a, s)
    else:
        x = _inv_entry(inv, b, a, r) - _inv_entry(inv, b, a, s)
    base = effective_resistance(net, m, ground=b)
    if mode is FaultMode.SHORTED:
        delta = x * x / laa
        return base - delta
    denom = 1 - fault.conductance * laa
    if denom == 0:
        # Bridge removal: the update is singular, answer from the altered graph.
        return direct_effective_resistance_oracle(net, m, fault, mode)
    beta = -fault.conductance / denom
    return base - beta * x * x


def _deleted_edge_view(net: Network, fault: Edge):
    """Edge-deleted graph, split into relabeled connected components.

    Returns (component id per vertex, local index per vertex, component
    subnetworks; None for single-vertex components).  Memoized per network.
    """
    cache = _instance_cache(net, "_deleted_cache")
    hit = cache.get(fault.pair)
    if hit is not None:
        return hit
    kept = [e for e in net.edges if e != fault]
    pairs = [e.pair for e in kept]
    comp_id = [-1] * net.n
    networks = []
    locals_ = [0] * net.n
    for start in range(net.n):
        if comp_id[start] != -1:
            continue
        comp = sorted(_component_of(net.n, pairs, start))
        cid = len(networks)
        for local, v in enumerate(comp):
            comp_id[v] = cid
            locals_[v] = local
        if len(comp) == 1:
            networks.append(None)
        else:
            members = set(comp)
            networks.append(
                Network.from_edge_list(
                    len(comp),
                    [
                        (locals_[e.u], locals_[e.v], e.conductance)
                        for e in kept
                        if e.u in members and e.v in members
                    ],
                )
            )
    view = (tuple(comp_id), tuple(locals_), tuple(networks))
    cache[fault.pair] = view
    return view


def _contracted_view(net: Network, fault: Edge):
    """Graph with the fault edge contracted and parallels merged; plus the relabeling."""
    cache = _instance_cache(net, "_contracted_cache")
    hit = cache.get(fault.pair)
    if hit is not None:
        return hit
    a, b = fault.u, fault.v

    def remap(x: int) -> int:
        if x == b:
            x = a
        return x if x < b else x - 1

    merged = Network.from_edge_list(
        net.n - 1,
        [(remap(e.u), remap(e.v), e.conductance) for e in net.edges if e != fault],
    )
    view = (merged, tuple(remap(x) for x in range(net.n)))
    cache[fault.pair] = view
    return view


def direct_effective_resistance_oracle(
    net: Network, m: Measurement, fault: Edge, mode: FaultMode
) -> Resistance:
    """Recompute the faulted resistance by building the altered graph.

    Removal deletes the edge (answer INFINITE if the pair is separated);
    shorting contracts it, merging parallel edges that appear.  This path
    shares no update formula with `perturbed_effective_resistance` and is
    the verification oracle for it.
    """
    if _edge_lookup(net).get(fault.pair) != fault:
        raise ValueError(f"fault edge {fault.pair} is not in the network")
    if mode is FaultMode.REMOVED:
        comp_id, locals_, networks = _deleted_edge_view(net, fault)
        if comp_id[m.r] != comp_id[m.s]:
            return INFINITE
        sub = networks[comp_id[m.r]]
        return effective_resistance(sub, Measurement(locals_[m.r], locals_[m.s]))
    merged, remap = _contracted_view(net, fault)
    rr, ss = remap[m.r], remap[m.s]
    if rr == ss:
        return Fraction(0)
    return effective_resistance(merged, Measurement(rr, ss))


def _component_of(n: int, pairs: list[tuple[int, int]], start: int) -> set[int]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in pairs:
        adj[u].append(v)
        adj[v].append(u)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen
