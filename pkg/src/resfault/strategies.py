"""Measurement-plan generators for complete and complete k-partite graphs.

Plans are built from a small vocabulary of moves: butterfly wings (two
probes sharing a center vertex), zig-zag schemes (two interleaved
butterflies across two partitions), hairpins (center in one partition,
wings in the other), partition butterflies (all three vertices in one
partition), cross matchings, and single leftover links.  Every probe in a
plan carries the name of the move that produced it.

Vertex choices follow one rule everywhere: when any eligible vertex will
do, take the lowest index.  Plans are therefore fully deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil

from .bounds import table4_triple_count, val
from .families import KPartiteShape
from .network import FaultMode, Measurement


@dataclass(frozen=True)
class MeasurementPlan:
    """Ordered probe list with per-probe provenance tags."""

    measurements: tuple[Measurement, ...]
    provenance: tuple[str, ...]
    family: str
    mode: FaultMode = FaultMode.REMOVED

    def __post_init__(self):
        if len(self.measurements) != len(self.provenance):
            raise ValueError("provenance must tag every measurement")
        if len(set(self.measurements)) != len(self.measurements):
            raise ValueError("duplicate measurement in plan")

    def __len__(self) -> int:
        return len(self.measurements)


class _Builder:
    def __init__(self, family: str):
        self.family = family
        self.measurements: list[Measurement] = []
        self.tags: list[str] = []
        self.used: set[int] = set()

    def add(self, a: int, b: int, tag: str):
        self.measurements.append(Measurement(a, b))
        self.tags.append(tag)
        self.used.update((a, b))

    def plan(self, mode: FaultMode = FaultMode.REMOVED) -> MeasurementPlan:
        return MeasurementPlan(tuple(self.measurements), tuple(self.tags), self.family, mode)


def complete_strategy(n: int) -> MeasurementPlan:
    """Butterfly wings on vertex triples, leftovers probed against the first center.

    Produces ceil(2n/3) probes: triples (0,1,2), (3,4,5), ... each get the
    two probes (x, x+1), (x+1, x+2); one or two ungrouped vertices are
    each probed against vertex 1 (the first center).
    """
    if n < 6:
        raise ValueError(f"complete-graph strategy needs n >= 6, got {n}")
    b = _Builder(f"complete({n})")
    for g in range(n // 3):
        x = 3 * g
        b.add(x, x + 1, "butterfly")
        b.add(x + 1, x + 2, "butterfly")
    for v in range(3 * (n // 3), n):
        b.add(1, v, "hub-link")
    return b.plan()


def _chunk3(pool: list[int]):
    while len(pool) >= 3:
        yield pool[:3]
        del pool[:3]


def bipartite_strategy(b_size: int, g_size: int) -> MeasurementPlan:
    """Probe plan for a complete bipartite graph, sizes b_size <= g_size.

    Different sizes: one designated node per partition, a cross matching
    of the smaller side, butterflies over the larger side's surplus, and
    the one/two-leftover closing rules.  Equal sizes: disjoint zig-zag
    schemes plus hairpin closings.  The plan size matches the exact
    optimum for this family.
    """
    if not (2 <= b_size <= g_size):
        raise ValueError("need 2 <= b_size <= g_size")
    shape = KPartiteShape((b_size, g_size))
    builder = _Builder(f"k_partite{shape.parts}")
    beta = list(shape.vertices(0))
    gamma = list(shape.vertices(1))
    des_b, des_g = beta[0], gamma[0]
    beta_pool, gamma_pool = beta[1:], gamma[1:]

    if b_size < g_size:
        for u in beta_pool:
            builder.add(u, gamma_pool.pop(0), "cross-matching")
        for x1, x2, x3 in _chunk3(gamma_pool):
            builder.add(x1, x2, "butterfly")
            builder.add(x2, x3, "butterfly")
        if len(gamma_pool) == 1:
            v = gamma_pool[0]
            w = min(x for x in gamma if x not in (v, des_g))
            builder.add(v, w, "leftover-link")
        elif len(gamma_pool) == 2:
            u, v = gamma_pool
            builder.add(u, v, "leftover-butterfly")
            builder.add(v, des_g, "leftover-butterfly")
        return builder.plan()

    # Equal sizes: zig-zag schemes, then hairpin closings.
    while len(beta_pool) >= 3 and len(gamma_pool) >= 3:
        g1, g2, g3 = gamma_pool[:3]
        b1, b2, b3 = beta_pool[:3]
        del gamma_pool[:3], beta_pool[:3]
        builder.add(g1, b1, "zigzag")
        builder.add(b1, g2, "zigzag")
        builder.add(b2, g3, "zigzag")
        builder.add(g3, b3, "zigzag")
    if len(beta_pool) == 1:
        v = beta_pool[0]
        builder.add(v, gamma_pool[0], "hairpin")
        builder.add(v, des_g, "hairpin")
    elif len(beta_pool) == 2:
        u, v = beta_pool
        w, t = gamma_pool[0], gamma_pool[1]
        builder.add(u, w, "hairpin")
        builder.add(w, v, "hairpin")
        builder.add(t, w, "leftover-link")
    return builder.plan()


def _surplus_cover(builder: _Builder, pool: list[int], designated: int, partition: list[int]):
    """Cover leftover vertices of one partition: butterflies, then closing rules."""
    for x1, x2, x3 in _chunk3(pool):
        builder.add(x1, x2, "partition-butterfly")
        builder.add(x2, x3, "partition-butterfly")
    if len(pool) == 1:
        w = min(x for x in partition if x in builder.used and x != pool[0])
        builder.add(pool[0], w, "leftover-link")
    elif len(pool) == 2:
        v1, v2 = pool
        builder.add(v1, v2, "partition-butterfly")
        builder.add(v2, designated, "partition-butterfly")


def tripartite_strategy(a: int, b: int, c: int) -> MeasurementPlan:
    """Probe plan for a complete tripartite graph, sizes a <= b <= c.

    Four regimes by size coincidences.  All sizes equal: tripartite
    butterflies.  All distinct: designated vertices plus a cross matching
    (with one tripartite butterfly absorbing the odd vertex when n is
    even); when the largest partition outweighs the other two, its
    surplus is covered by partition butterflies instead, which costs
    extra probes for surpluses of 2 mod 3 or >= 4 -- no plan of the
    nominal size exists there.  Two equal sizes: matchings plus partition
    butterflies, pooling the two leftover partitions through hairpins.
    """
    if not (2 <= a <= b <= c):
        raise ValueError("need 2 <= a <= b <= c")
    shape = KPartiteShape((a, b, c))
    builder = _Builder(f"k_partite{shape.parts}")
    parts = [list(shape.vertices(i)) for i in range(3)]
    designated = [p[0] for p in parts]
    pools = [p[1:] for p in parts]

    if a == b == c:
        for i in range(a - 1):
            builder.add(pools[0][i], pools[2][i], "tripartite-butterfly")
            builder.add(pools[2][i], pools[1][i], "tripartite-butterfly")
        return builder.plan()

    if a < b < c:
        surplus = c - a - b + 1
        if surplus <= 0:
            if shape.n % 2 == 0:
                builder.add(pools[0][0], pools[2][0], "tripartite-butterfly")
                builder.add(pools[2][0], pools[1][0], "tripartite-butterfly")
                pools = [p[1:] for p in pools]
            while any(pools):
                order = sorted(range(3), key=lambda i: (-len(pools[i]), i))
                first, second = order[0], order[1]
                builder.add(pools[first].pop(0), pools[second].pop(0), "matching")
            return builder.plan()
        for u in pools[0]:
            builder.add(u, pools[2].pop(0), "matching")
        for u in pools[1]:
            builder.add(u, pools[2].pop(0), "matching")
        _surplus_cover(builder, pools[2], designated[2], parts[2])
        return builder.plan()

    if a == b < c:
        for u in pools[0]:
            builder.add(u, pools[2].pop(0), "matching")
        while pools[1] and pools[2]:
            builder.add(pools[1].pop(0), pools[2].pop(0), "matching")
        side = 1 if pools[1] else 2
        _surplus_cover(builder, pools[side], designated[side], parts[side])
        return builder.plan()

    # a < b == c: matching into the middle partition, pooled leftovers.
    for u in pools[0]:
        builder.add(u, pools[1].pop(0), "matching")
    rem1, rem2 = len(pools[1]) % 3, len(pools[2]) % 3
    left1 = pools[1][len(pools[1]) - rem1 :]
    left2 = pools[2][len(pools[2]) - rem2 :]
    for x1, x2, x3 in _chunk3(pools[1][: len(pools[1]) - rem1]):
        builder.add(x1, x2, "partition-butterfly")
        builder.add(x2, x3, "partition-butterfly")
    for x1, x2, x3 in _chunk3(pools[2][: len(pools[2]) - rem2]):
        builder.add(x1, x2, "partition-butterfly")
        builder.add(x2, x3, "partition-butterfly")
    if (rem1, rem2) in ((1, 2), (2, 1)):
        # Mixed remainder: a hairpin covers all three leftover vertices.
        wings, center = (left2, left1[0]) if rem1 == 1 else (left1, left2[0])
        builder.add(wings[0], center, "hairpin")
        builder.add(center, wings[1], "hairpin")
    elif (rem1, rem2) == (2, 2):
        builder.add(left1[0], left2[0], "hairpin")
        builder.add(left2[0], left1[1], "hairpin")
        w = min(x for x in parts[2] if x in builder.used and x != left2[1])
        builder.add(left2[1], w, "leftover-link")
    else:
        for rem, left, side in ((rem1, left1, 1), (rem2, left2, 2)):
            if rem == 1:
                w = min(x for x in parts[side] if x in builder.used and x != left[0])
                builder.add(left[0], w, "leftover-link")
            elif rem == 2:
                builder.add(left[0], left[1], "partition-butterfly")
                builder.add(left[1], designated[side], "partition-butterfly")
    return builder.plan()


def _triple_block(builder: _Builder, shape: KPartiteShape, indices: tuple[int, int, int]):
    """Per-triple building block of the k-partite composition.

    One designated vertex per partition, tripartite butterflies while the
    smallest partition lasts, zig-zag schemes between the two larger
    ones, hairpin closings for the middle partition's remainder, and
    partition butterflies plus closing rules for the largest.
    """
    order = sorted(indices, key=lambda i: (shape.parts[i], i))
    pa, pb, pc = (list(shape.vertices(i)) for i in order)
    des = [pa[0], pb[0], pc[0]]
    pa, pb, pc = pa[1:], pb[1:], pc[1:]
    centers_c: list[int] = []
    for i in range(len(pa)):
        builder.add(pa[i], pc[i], "tripartite-butterfly")
        builder.add(pc[i], pb[i], "tripartite-butterfly")
        centers_c.append(pc[i])
    pb, pc = pb[len(pa) :], pc[len(pa) :]
    while len(pb) >= 3 and len(pc) >= 3:
        g1, g2, g3 = pc[:3]
        b1, b2, b3 = pb[:3]
        del pc[:3], pb[:3]
        builder.add(g1, b1, "zigzag")
        builder.add(b1, g2, "zigzag")
        builder.add(b2, g3, "zigzag")
        builder.add(g3, b3, "zigzag")
        centers_c.append(g3)
    if len(pb) == 1:
        wings = (pc + [des[2]])[:2]
        builder.add(pb[0], wings[0], "hairpin")
        builder.add(pb[0], wings[1], "hairpin")
        pc = [x for x in pc if x not in wings]
    elif len(pb) == 2:
        w = pc.pop(0)
        builder.add(pb[0], w, "hairpin")
        builder.add(w, pb[1], "hairpin")
        centers_c.append(w)
    for x1, x2, x3 in _chunk3(pc):
        builder.add(x1, x2, "partition-butterfly")
        builder.add(x2, x3, "partition-butterfly")
        centers_c.append(x2)
    if len(pc) == 1:
        builder.add(pc[0], centers_c[0], "leftover-link")
    elif len(pc) == 2:
        u, w2 = pc
        builder.add(u, w2, "partition-butterfly")
        builder.add(w2, des[2], "partition-butterfly")


def _select_isolated_partition(shape: KPartiteShape) -> int:
    """Index of the partition set aside when k = 1 mod 3.

    Minimizes the strategy-selection formula; ties resolved toward the
    stated upper-bound formula, then the lowest index, so the generated
    plan never exceeds the stated bound.
    """
    sizes = list(shape.parts)

    def key(i: int):
        rest = sizes[:i] + sizes[i + 1 :]
        sel = ceil(2 * (sizes[i] - 1) / 3) + val(rest)
        bound = ceil(2 * sizes[i] / 3) + val(rest)
        return (sel, bound, i)

    return min(range(len(sizes)), key=key)


def _select_bipartite_pair(shape: KPartiteShape) -> tuple[int, int]:
    """Index pair set aside when k = 2 mod 3; same tie policy as above."""
    sizes = list(shape.parts)

    def key(pair: tuple[int, int]):
        i, j = pair
        rest = [sizes[x] for x in range(len(sizes)) if x not in (i, j)]
        s = sizes[i] + sizes[j]
        sel = ceil(2 * (s - 2) / 3) + val(rest)
        bound = ceil(2 * (s - 1) / 3) + val(rest)
        return (sel, bound, i, j)

    pairs = [(i, j) for i in range(len(sizes)) for j in range(i + 1, len(sizes))]
    return min(pairs, key=key)


def kpartite_strategy(shape: KPartiteShape) -> MeasurementPlan:
    """Probe plan for a complete k-partite graph with all partition sizes >= 2.

    k = 2 delegates to the bipartite plan (it is exactly optimal, tighter
    than the general composition).  Otherwise the partitions are grouped
    into consecutive sorted triples, each handled by the tripartite
    building block; when k is not a multiple of 3 a leftover partition
    (k = 1 mod 3) or partition pair (k = 2 mod 3) is chosen by the stated
    minimization and covered by partition butterflies or the bipartite
    leftover step.
    """
    if any(p < 2 for p in shape.parts):
        raise ValueError("k-partite strategy needs every partition size >= 2")
    k = shape.k
    if k == 2:
        return bipartite_strategy(shape.parts[0], shape.parts[1])
    builder = _Builder(f"k_partite{shape.parts}")
    indices = list(range(k))
    if k % 3 == 1:
        p_idx = _select_isolated_partition(shape)
        indices.remove(p_idx)
        for t in range(0, len(indices), 3):
            _triple_block(builder, shape, tuple(indices[t : t + 3]))
        _isolated_partition_step(builder, shape, p_idx)
    elif k % 3 == 2:
        i_idx, j_idx = _select_bipartite_pair(shape)
        indices.remove(i_idx)
        indices.remove(j_idx)
        for t in range(0, len(indices), 3):
            _triple_block(builder, shape, tuple(indices[t : t + 3]))
        _bipartite_pair_step(builder, shape, i_idx, j_idx)
    else:
        for t in range(0, len(indices), 3):
            _triple_block(builder, shape, tuple(indices[t : t + 3]))
    return builder.plan()


def _isolated_partition_step(builder: _Builder, shape: KPartiteShape, p_idx: int):
    """Cover the set-aside partition with butterflies plus links to a center."""
    pool = list(shape.vertices(p_idx))
    centers: list[int] = []
    for x1, x2, x3 in _chunk3(pool):
        builder.add(x1, x2, "partition-butterfly")
        builder.add(x2, x3, "partition-butterfly")
        centers.append(x2)
    if pool:
        if centers:
            w = centers[0]
            for v in pool:
                builder.add(v, w, "partition-link")
        else:
            # Partition too small for a butterfly: anchor to a used outside vertex.
            anchor = min(x for x in builder.used if shape.partition_of(x) != p_idx)
            for v in pool:
                builder.add(v, anchor, "partition-link")


def _bipartite_pair_step(builder: _Builder, shape: KPartiteShape, i_idx: int, j_idx: int):
    """Cover the set-aside partition pair: zig-zags, hairpins, butterflies."""
    pi = list(shape.vertices(i_idx))
    pj = list(shape.vertices(j_idx))
    pi = pi[1:]  # pi[0] is the designated node
    centers_j: list[int] = []
    while len(pi) >= 3 and len(pj) >= 3:
        g1, g2, g3 = pj[:3]
        b1, b2, b3 = pi[:3]
        del pj[:3], pi[:3]
        builder.add(g1, b1, "zigzag")
        builder.add(b1, g2, "zigzag")
        builder.add(b2, g3, "zigzag")
        builder.add(g3, b3, "zigzag")
        centers_j.append(g3)
    if len(pi) == 1:
        w1, w2 = pj[0], pj[1]
        builder.add(pi[0], w1, "hairpin")
        builder.add(pi[0], w2, "hairpin")
        del pj[:2]
    elif len(pi) == 2:
        w = pj.pop(0)
        builder.add(pi[0], w, "hairpin")
        builder.add(w, pi[1], "hairpin")
        centers_j.append(w)
    for x1, x2, x3 in _chunk3(pj):
        builder.add(x1, x2, "partition-butterfly")
        builder.add(x2, x3, "partition-butterfly")
        centers_j.append(x2)
    if pj:
        w = centers_j[0] if centers_j else min(
            x for x in builder.used if shape.partition_of(x) == j_idx
        )
        if len(pj) == 1:
            builder.add(pj[0], w, "leftover-link")
        else:
            builder.add(pj[0], w, "partition-butterfly")
            builder.add(w, pj[1], "partition-butterfly")


def plan_size_by_rule(family: str | tuple, shape_or_n) -> int:
    """Predicted plan size from the counting rules, without generating the plan.

    family "complete": ceil(2n/3).  k = 2: the exact bipartite count.
    k = 3: the tripartite table value.  k >= 4: the composed count (triple
    table entries plus the leftover-step terms at the selected
    partitions), which equals the stated k-partite upper bound.
    """
    from .bounds import bipartite_bound, tripartite_bound

    if family == "complete":
        n = shape_or_n
        return ceil(2 * n / 3)
    if family != "k_partite":
        raise ValueError(f"unknown family {family!r}")
    shape: KPartiteShape = shape_or_n
    if shape.k == 2:
        return bipartite_bound(*shape.parts).upper
    if shape.k == 3:
        return tripartite_bound(*shape.parts).upper
    sizes = list(shape.parts)
    indices = list(range(shape.k))
    extra = 0
    if shape.k % 3 == 1:
        i = _select_isolated_partition(shape)
        indices.remove(i)
        extra = ceil(2 * sizes[i] / 3)
    elif shape.k % 3 == 2:
        i, j = _select_bipartite_pair(shape)
        indices.remove(i)
        indices.remove(j)
        extra = ceil(2 * (sizes[i] + sizes[j] - 1) / 3)
    total = extra
    for t in range(0, len(indices), 3):
        tri = [sizes[x] for x in indices[t : t + 3]]
        total += table4_triple_count(*sorted(tri))
    return total
