"""Measurement-count bounds for the supported graph families.

Each function evaluates the published bound formulas for one family and
returns a BoundReport carrying the numbers plus the formula each one came
from.  `best_bound` merges every applicable formula into the tightest
pair for a family descriptor.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil

from .families import KPartiteShape


@dataclass(frozen=True)
class BoundReport:
    family: str
    lower: int
    upper: int
    lower_formula: str
    upper_formula: str

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")

    @property
    def exact(self) -> int | None:
        return self.lower if self.lower == self.upper else None


def val(sizes) -> int:
    """Sum of (2*size - 2) over every third entry of a nondecreasing list.

    With the list grouped into consecutive sorted triples this totals the
    per-triple worst-case cost 2*max - 2.
    """
    sizes = list(sizes)
    if sizes != sorted(sizes):
        raise ValueError("sizes must be nondecreasing")
    return sum(2 * p - 2 for i, p in enumerate(sizes, start=1) if i % 3 == 0)


def table4_triple_count(a: int, b: int, c: int) -> int:
    """Probe count of the tripartite building block for sizes a <= b <= c.

    2(a+b+c)/3 minus 2, 5/3 or 4/3 according to the size differences
    modulo 3; always an integer.
    """
    if not (a <= b <= c):
        raise ValueError("sizes must be nondecreasing")
    d1, d2 = (b - a) % 3, (c - b) % 3
    offset = {0: 6, 1: 5, 2: 4}[(d2 - d1) % 3]
    total = 2 * (a + b + c) - offset
    assert total % 3 == 0
    return total // 3


def complete_bound(n: int) -> BoundReport:
    """Exact count for complete graphs: ceil(2n/3), stated for n >= 6."""
    if n < 6:
        raise ValueError(f"complete-graph bound is stated for n >= 6, got {n}")
    value = ceil(2 * n / 3)
    return BoundReport(f"complete({n})", value, value, "ceil(2n/3)", "ceil(2n/3)")


def bipartite_bound(b: int, g: int) -> BoundReport:
    """Exact count for complete bipartite graphs, sizes b <= g >= 2."""
    if not (2 <= b <= g):
        raise ValueError("need 2 <= b <= g")
    n = b + g
    if b < g:
        base = (2 * g + b) // 3
        if (g - b) % 3 == 0:
            value, formula = base - 1, "floor(2g/3 + b/3) - 1  [g-b = 0 mod 3]"
        else:
            value, formula = base, "floor(2g/3 + b/3)  [g-b = 1,2 mod 3]"
    else:
        if b % 3 == 2:
            value, formula = (2 * n) // 3, "floor(2n/3)  [b = g = 2 mod 3]"
        else:
            value, formula = (2 * n) // 3 - 1, "floor(2n/3) - 1  [b = g = 0,1 mod 3]"
    return BoundReport(f"k_partite({b}, {g})", value, value, formula, formula)


def tripartite_bound(a: int, b: int, c: int) -> BoundReport:
    """Tripartite table bounds, sizes 2 <= a <= b <= c.

    Three of the four size-coincidence rows give matching lower and upper
    values; the a = b < c row gives the min and max of two expressions.
    """
    if not (2 <= a <= b <= c):
        raise ValueError("need 2 <= a <= b <= c")
    n = a + b + c
    fam = f"k_partite({a}, {b}, {c})"
    if a < b < c:
        value = ceil((n - 3) / 2)
        f = "ceil((n-3)/2)"
        return BoundReport(fam, value, value, f, f)
    if a == b < c:
        e1 = ceil((2 * n - 2 * a - 4) / 3)
        e2 = ceil((2 * n - c - 5) / 3)
        return BoundReport(
            fam,
            min(e1, e2),
            max(e1, e2),
            "min{ceil(2n/3 - 2a/3 - 4/3), ceil(2n/3 - c/3 - 5/3)}",
            "max{ceil(2n/3 - 2a/3 - 4/3), ceil(2n/3 - c/3 - 5/3)}",
        )
    if a < b == c:
        value = ceil((2 * n - a - 5) / 3)
        f = "ceil(2n/3 - a/3 - 5/3)"
        return BoundReport(fam, value, value, f, f)
    value = ceil((2 * n - 6) / 3)
    f = "ceil(2n/3 - 2)"
    return BoundReport(fam, value, value, f, f)


def kpartite_bound(shape: KPartiteShape) -> BoundReport:
    """General k-partite bounds: handshake lower, composed-triple upper.

    Upper bound by k mod 3: val(L) for 0; min over one set-aside
    partition of ceil(2p/3) + val(rest) for 1; min over set-aside pairs
    of ceil(2(p_i + p_j - 1)/3) + val(rest) for 2.
    """
    if any(p < 2 for p in shape.parts):
        raise ValueError("k-partite bound is stated for partition sizes >= 2")
    sizes = list(shape.parts)
    k, n = shape.k, shape.n
    lower = ceil((n - k) / 2)
    if k % 3 == 0:
        upper = val(sizes)
        uf = "val(L)  [k = 0 mod 3]"
    elif k % 3 == 1:
        upper = min(
            ceil(2 * sizes[i] / 3) + val(sizes[:i] + sizes[i + 1 :]) for i in range(k)
        )
        uf = "min_i ceil(2|p_i|/3) + val(L \\ {i})  [k = 1 mod 3]"
    else:
        upper = min(
            ceil(2 * (sizes[i] + sizes[j] - 1) / 3)
            + val([sizes[x] for x in range(k) if x not in (i, j)])
            for i in range(k)
            for j in range(i + 1, k)
        )
        uf = "min_{i<j} ceil(2(|p_i|+|p_j|-1)/3) + val(L \\ {i,j})  [k = 2 mod 3]"
    return BoundReport(f"k_partite{shape.parts}", lower, upper, "ceil((n-k)/2)", uf)


def best_bound(family: str, shape_or_n) -> BoundReport:
    """Tightest applicable bounds for a family descriptor.

    Complete graphs and bipartite/tripartite shapes get their exact
    family formulas; every k-partite shape also gets the general bound,
    and the report keeps the tighter number on each side.
    """
    if family == "complete":
        return complete_bound(shape_or_n)
    if family != "k_partite":
        raise ValueError(f"unknown family {family!r}")
    shape: KPartiteShape = shape_or_n
    reports = [kpartite_bound(shape)]
    if shape.k == 2:
        reports.append(bipartite_bound(*shape.parts))
    elif shape.k == 3:
        reports.append(tripartite_bound(*shape.parts))
    lower = max(reports, key=lambda r: r.lower)
    upper = min(reports, key=lambda r: r.upper)
    return BoundReport(
        reports[0].family, lower.lower, upper.upper, lower.lower_formula, upper.upper_formula
    )
