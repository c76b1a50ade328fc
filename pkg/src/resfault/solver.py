"""Exact and greedy solvers for the minimum distinguishing probe set.

The problem is a test cover: the universe is all unordered pairs of
candidate fault edges, and a probe "covers" the pairs it tells apart
(different exact readings).  A probe set distinguishes every fault iff
its covered pairs are the whole universe.

solve_exact runs iterative-deepening branch and bound over bitmask pair
sets: targets grow from a counting lower bound until a plan of the target
size exists, so the first plan found is provably minimum.  Branching
picks an uncovered pair with the fewest covering probes and tries each of
them; subtrees are cut when even the best single-probe coverage cannot
finish within the target.  For vertex-transitive families the caller can
supply first-probe orbit representatives, which shrinks the root fanout
to the number of probe types.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import ceil
from typing import Sequence

from .families import KPartiteShape
from .network import Edge, FaultMode, Measurement, Network
from .signatures import build_signature
from .strategies import MeasurementPlan


@dataclass(frozen=True)
class ExactSolution:
    plan: MeasurementPlan
    optimal: bool = True


@dataclass(frozen=True)
class Infeasible:
    """Even the full candidate pool cannot separate these edge pairs."""

    witness_pairs: tuple[tuple[Edge, Edge], ...]


@dataclass(frozen=True)
class TimedOut:
    """Search budget exhausted: best known plan and the size proven necessary."""

    incumbent: MeasurementPlan | None
    lower_bound: int


class _Deadline(Exception):
    pass


class _CoverInstance:
    """Bitmask view of the test-cover problem for one network and mode."""

    def __init__(self, net: Network, candidates: Sequence[Measurement], mode: FaultMode):
        self.net = net
        self.candidates = list(candidates)
        self.mode = mode
        sig = build_signature(net, self.candidates, mode)
        ne = len(net.edges)
        self.edge_count = ne
        self.pair_count = ne * (ne - 1) // 2
        offsets = []
        acc = 0
        for i in range(ne):
            offsets.append(acc - i - 1)  # pair (i, j) -> acc + (j - i - 1)
            acc += ne - i - 1
        self.full = (1 << self.pair_count) - 1
        self.masks: list[int] = []
        for row in sig.entries:
            groups: dict[object, list[int]] = {}
            for j, value in enumerate(row):
                groups.setdefault(value, []).append(j)
            same = 0
            for group in groups.values():
                for x in range(len(group)):
                    gi = group[x]
                    base = offsets[gi]
                    for y in range(x + 1, len(group)):
                        same |= 1 << (base + group[y])
            self.masks.append(self.full & ~same)
        self._offsets = offsets

    def pair_edges(self, bit: int) -> tuple[Edge, Edge]:
        for i in range(self.edge_count):
            width = self.edge_count - i - 1
            if bit < width:
                return self.net.edges[i], self.net.edges[i + bit + 1]
            bit -= width
        raise IndexError(bit)

    def uncovered_pairs(self, covered: int) -> list[tuple[Edge, Edge]]:
        missing = self.full & ~covered
        out = []
        bit = 0
        while missing:
            if missing & 1:
                out.append(self.pair_edges(bit))
            missing >>= 1
            bit += 1
        return out


def _bit_positions(mask: int) -> list[int]:
    out = []
    pos = 0
    while mask:
        if mask & 1:
            out.append(pos)
        mask >>= 1
        pos += 1
    return out


def solve_exact(
    net: Network,
    candidates: Sequence[Measurement] | None = None,
    mode: FaultMode = FaultMode.REMOVED,
    budget_seconds: float = 300.0,
    first_probe_orbits: Sequence[Measurement] | None = None,
    family: str = "network",
) -> ExactSolution | Infeasible | TimedOut:
    """Minimum distinguishing probe set, with proof of optimality.

    Returns Infeasible when even the whole candidate pool leaves some
    fault pair merged, and TimedOut (carrying the greedy incumbent and
    the size proven insufficient so far) when the budget expires.
    """
    cands = list(candidates) if candidates is not None else net.measurements()
    if not cands:
        raise ValueError("candidate pool must be nonempty")
    deadline = time.monotonic() + budget_seconds
    inst = _CoverInstance(net, cands, mode)
    if inst.pair_count == 0:
        return ExactSolution(MeasurementPlan((), (), family, mode))
    union = 0
    for m in inst.masks:
        union |= m
    if union != inst.full:
        return Infeasible(tuple(inst.uncovered_pairs(union)))

    greedy_plan = solve_greedy(net, cands, mode, family=family)
    assert isinstance(greedy_plan, MeasurementPlan)
    upper = len(greedy_plan)

    max_single = max(m.bit_count() for m in inst.masks)
    root_lower = max(1, ceil(inst.pair_count / max_single))

    root_indices = None
    if first_probe_orbits is not None:
        index_of = {m: i for i, m in enumerate(cands)}
        root_indices = [index_of[m] for m in first_probe_orbits if m in index_of]

    # Pairs -> covering candidate indices, for pivot selection.
    coverers: dict[int, list[int]] = {}
    for j, m in enumerate(inst.masks):
        for bit in _bit_positions(m):
            coverers.setdefault(bit, []).append(j)

    def search(target: int, chosen: list[int], covered: int) -> list[int] | None:
        if covered == inst.full:
            return chosen
        if len(chosen) >= target:
            return None
        if time.monotonic() > deadline:
            raise _Deadline
        missing = inst.full & ~covered
        remaining = target - len(chosen)
        best_single = 0
        reachable = 0
        for m in inst.masks:
            hit = m & missing
            if hit:
                reachable |= hit
                count = hit.bit_count()
                if count > best_single:
                    best_single = count
        if reachable != missing:
            return None
        if ceil(missing.bit_count() / best_single) > remaining:
            return None
        # Pivot: uncovered pair with the fewest covering probes (static counts);
        # probes already chosen cannot cover it, so its coverer list is live.
        pivot = min(_bit_positions(missing), key=lambda bit: (len(coverers[bit]), bit))
        order = sorted(
            coverers[pivot], key=lambda j: (-(inst.masks[j] & missing).bit_count(), j)
        )
        for j in order:
            result = search(target, chosen + [j], covered | inst.masks[j])
            if result is not None:
                return result
        return None

    try:
        for target in range(root_lower, upper):
            if root_indices is not None:
                found = None
                for j in sorted(root_indices):
                    found = search(target, [j], inst.masks[j])
                    if found is not None:
                        break
            else:
                found = search(target, [], 0)
            if found is not None:
                ms = tuple(cands[j] for j in found)
                return ExactSolution(
                    MeasurementPlan(ms, ("exact",) * len(ms), family, mode)
                )
    except _Deadline:
        return TimedOut(incumbent=greedy_plan, lower_bound=target)
    # No smaller set exists: the greedy plan is optimal.
    return ExactSolution(
        MeasurementPlan(
            greedy_plan.measurements, ("exact",) * len(greedy_plan), family, mode
        )
    )


def solve_greedy(
    net: Network,
    candidates: Sequence[Measurement] | None = None,
    mode: FaultMode = FaultMode.REMOVED,
    family: str = "network",
) -> MeasurementPlan | Infeasible:
    """Greedy distinguishing set: repeatedly add the probe that splits the most.

    Each step picks the candidate whose readings raise the number of
    fault equivalence classes the most (ties to the earliest candidate).
    The result is distinguishing whenever the full pool is, but not
    necessarily minimum; the exact solver uses it as its incumbent.
    """
    cands = list(candidates) if candidates is not None else net.measurements()
    if not cands:
        raise ValueError("candidate pool must be nonempty")
    sig = build_signature(net, cands, mode)
    ne = len(net.edges)
    labels: list[tuple] = [()] * ne
    chosen: list[int] = []
    classes = 1 if ne else 0
    while classes < ne:
        best_j, best_classes = None, classes
        for j in range(len(cands)):
            if j in chosen:
                continue
            row = sig.entries[j]
            count = len({(labels[e], row[e]) for e in range(ne)})
            if count > best_classes:
                best_j, best_classes = j, count
        if best_j is None:
            union = 0
            inst = _CoverInstance(net, cands, mode)
            for m in inst.masks:
                union |= m
            return Infeasible(tuple(inst.uncovered_pairs(union)))
        row = sig.entries[best_j]
        labels = [labels[e] + (row[e],) for e in range(ne)]
        chosen.append(best_j)
        classes = best_classes
    ms = tuple(cands[j] for j in chosen)
    return MeasurementPlan(ms, ("greedy",) * len(ms), family, mode)


@dataclass(frozen=True)
class MeasurementGraphReport:
    """Component structure of the probe pairs viewed as a graph on the vertices."""

    n: int
    components: tuple[tuple[int, ...], ...]
    isolated: tuple[int, ...]
    size_two_components: tuple[tuple[int, int], ...]
    isolated_by_partition: tuple[int, ...] | None
    violations: tuple[str, ...]


def analyze_measurement_graph(
    n: int, measurements: Sequence[Measurement], shape: KPartiteShape | None = None
) -> MeasurementGraphReport:
    """Check a probe set against the structural conditions every solution obeys.

    Any distinguishing set must leave at most one vertex isolated per
    partition (one in total for complete graphs), and no component of
    exactly two vertices inside a single partition (none at all for
    complete graphs).  Violations are reported by name; an empty tuple
    means the necessary conditions hold.
    """
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in measurements:
        ra, rb = find(m.r), find(m.s)
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    components = tuple(tuple(sorted(g)) for g in sorted(groups.values()))
    isolated = tuple(c[0] for c in components if len(c) == 1)
    size_two = tuple((c[0], c[1]) for c in components if len(c) == 2)

    violations: list[str] = []
    isolated_by_partition = None
    if shape is None:
        if len(isolated) > 1:
            violations.append(
                f"{len(isolated)} isolated vertices (a complete graph allows at most one)"
            )
        for c in size_two:
            violations.append(f"component of size two {c} (none are allowed)")
    else:
        if shape.n != n:
            raise ValueError("shape does not match vertex count")
        counts = [0] * shape.k
        for v in isolated:
            counts[shape.partition_of(v)] += 1
        isolated_by_partition = tuple(counts)
        for i, cnt in enumerate(counts):
            if cnt > 1:
                violations.append(
                    f"partition {i} has {cnt} isolated vertices (at most one is allowed)"
                )
        for c in size_two:
            if shape.partition_of(c[0]) == shape.partition_of(c[1]):
                violations.append(
                    f"component of size two {c} inside partition {shape.partition_of(c[0])}"
                )
        need = ceil((n - shape.k) / 2)
        if len(measurements) < need:
            violations.append(
                f"only {len(measurements)} measurements, fewer than the handshake "
                f"minimum ceil((n-k)/2) = {need}"
            )
    return MeasurementGraphReport(
        n, components, isolated, size_two, isolated_by_partition, tuple(violations)
    )
