"""Degree and genus bookkeeping for admissible double covers of nodal curves.

A stable curve is modelled by its dual graph: one vertex per irreducible
component (with its geometric genus) and one edge per node.  Self-loops are
nodes of a single component.  The arithmetic genus of a component is its
geometric genus plus its number of self-loops, and ``b_i`` counts the nodes
joining component ``i`` to the *other* components.
"""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "CoverGraph",
    "CoverGraphError",
    "ComponentReport",
    "CoverVerdict",
    "CliffordVerdict",
    "degree_on_component",
    "genus_upstairs",
    "check_cover_graph",
    "crossing_number",
    "clifford_bound",
    "classify_case",
    "case3_partitions",
]


class CoverGraphError(ValueError):
    """Malformed or disconnected dual graph."""


def degree_on_component(pbar: int, b: int) -> int:
    """Degree of the restricted bundle, ``2*pbar - 2 + b``."""
    if pbar < 0 or b < 0:
        raise ValueError("genus and branch count must be nonnegative")
    return 2 * pbar - 2 + b


def genus_upstairs(pbar: int, b: int) -> int:
    """Genus of the double cover of a component of genus ``pbar`` branched at ``b`` points."""
    if pbar < 0 or b < 0:
        raise ValueError("genus and branch count must be nonnegative")
    if b % 2:
        raise ValueError(f"a double cover has an even number of branch points, got {b}")
    p = 2 * pbar - 1 + b // 2
    if b < 4:
        warnings.warn(f"b = {b} is below the admissible range b >= 4", RuntimeWarning, stacklevel=2)
    elif p < 1:  # pragma: no cover - impossible for b >= 4
        raise AssertionError("upstairs genus must be positive when b >= 4")
    return p


@dataclass(frozen=True)
class CoverGraph:
    """Components ``{id: genus}`` and a multiset of edges (nodes)."""

    genera: dict
    edges: tuple

    def __post_init__(self):
        if not self.genera:
            raise CoverGraphError("graph has no components")
        for cid, g in self.genera.items():
            if not isinstance(g, int) or isinstance(g, bool) or g < 0:
                raise CoverGraphError(f"component {cid}: genus must be a nonnegative integer")
        edges = []
        for e in self.edges:
            i, j = e
            for c in (i, j):
                if c not in self.genera:
                    raise CoverGraphError(f"edge {list(e)} mentions unknown component {c}")
            edges.append((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", tuple(sorted(edges)))

    @classmethod
    def from_json(cls, text: str | dict) -> "CoverGraph":
        data = json.loads(text) if isinstance(text, str) else text
        if not isinstance(data, dict) or "components" not in data:
            raise CoverGraphError('expected an object with a "components" list')
        genera = {}
        for comp in data["components"]:
            try:
                cid, g = comp["id"], comp["genus"]
            except (KeyError, TypeError):
                raise CoverGraphError(f"bad component record {comp!r}") from None
            if cid in genera:
                raise CoverGraphError(f"duplicate component id {cid}")
            genera[cid] = g
        edges = []
        for e in data.get("edges", []):
            if not isinstance(e, (list, tuple)) or len(e) != 2:
                raise CoverGraphError(f"bad edge {e!r}")
            edges.append(tuple(e))
        return cls(genera, tuple(edges))

    def to_json(self) -> dict:
        return {
            "components": [{"id": c, "genus": g} for c, g in self.genera.items()],
            "edges": [list(e) for e in self.edges],
        }

    @property
    def components(self) -> list:
        return list(self.genera)

    def self_loops(self, cid) -> int:
        return sum(1 for i, j in self.edges if i == j == cid)

    def arithmetic_genus(self, cid) -> int:
        """``pbar_i``: geometric genus plus self-nodes."""
        return self.genera[cid] + self.self_loops(cid)

    def branch_count(self, cid) -> int:
        """``b_i``: nodes joining ``cid`` to other components."""
        return sum(1 for i, j in self.edges if i != j and cid in (i, j))

    def total_genus(self) -> int:
        return sum(self.genera.values()) + len(self.edges) - len(self.genera) + 1

    def is_connected(self) -> bool:
        nodes = self.components
        adj = {c: set() for c in nodes}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            for nxt in adj[stack.pop()] - seen:
                seen.add(nxt)
                stack.append(nxt)
        return len(seen) == len(nodes)


@dataclass(frozen=True)
class ComponentReport:
    id: object
    pbar: int
    b: int
    degree: int
    genus_upstairs: int | None

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "pbar": self.pbar,
            "b": self.b,
            "degree": self.degree,
            "genus_upstairs": self.genus_upstairs,
        }


@dataclass(frozen=True)
class CoverVerdict:
    components: tuple
    arithmetic_genus: int
    degree: int
    violations: tuple = field(default=())

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "arithmetic_genus": self.arithmetic_genus,
            "degree": self.degree,
            "components": [c.to_json() for c in self.components],
            "violations": list(self.violations),
        }


def crossing_number(G: CoverGraph, side: Iterable) -> int:
    """Number of nodes joining ``side`` to its complement."""
    side = set(side)
    return sum(1 for i, j in G.edges if (i in side) != (j in side))


def _splits(components: Sequence):
    # fix the first component on side one so each unordered split appears once
    first, rest = components[0], components[1:]
    for mask in range(2 ** len(rest) - 1):
        yield (first,) + tuple(c for k, c in enumerate(rest) if mask >> k & 1)


def check_cover_graph(G: CoverGraph, required_genus: int | None = None) -> CoverVerdict:
    """Check the numerical constraints for an admissible double cover.

    Violations are listed in a fixed order: genus, then splits (in
    enumeration order), then per-component degrees.
    """
    if not G.is_connected():
        raise CoverGraphError("the dual graph is disconnected")
    violations = []
    pa = G.total_genus()
    if required_genus is not None and pa != required_genus:
        violations.append(f"arithmetic genus {pa} != {required_genus}")
    comps = G.components
    for side in _splits(comps):
        n = crossing_number(G, side)
        label = "{" + ", ".join(map(str, side)) + "}"
        if n < 4:
            violations.append(f"split {label}: crossing < 4 ({n})")
        elif n % 2:
            violations.append(f"split {label}: crossing {n} is odd")
    multi = len(comps) > 1
    reports = []
    for cid in comps:
        pbar, b = G.arithmetic_genus(cid), G.branch_count(cid)
        deg = degree_on_component(pbar, b)
        upstairs = 2 * pbar - 1 + b // 2 if b % 2 == 0 else None
        reports.append(ComponentReport(cid, pbar, b, deg, upstairs))
        if multi:
            if b < 1:
                violations.append(f"component {cid}: meets no other component")
            if deg % 2:
                violations.append(f"component {cid}: degree {deg} is odd")
            if deg < 2 * pbar + 2:
                violations.append(f"component {cid}: degree {deg} < 2*pbar + 2 = {2 * pbar + 2}")
    total = sum(r.degree for r in reports)
    return CoverVerdict(tuple(reports), pa, total, tuple(violations))


@dataclass(frozen=True)
class CliffordVerdict:
    d: int
    h0: int | None
    bound: int

    @property
    def allowed(self) -> bool:
        return self.h0 is None or self.h0 <= self.bound

    @property
    def equality(self) -> bool:
        return self.h0 == self.bound

    def to_json(self) -> dict:
        return {"d": self.d, "h0": self.h0, "bound": self.bound,
                "allowed": self.allowed, "equality": self.equality}


def clifford_bound(d: int, h0: int | None = None) -> CliffordVerdict:
    """``h0 <= d // 2 + 1``; equality holds only for O_C, canonical or hyperelliptic bundles."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    return CliffordVerdict(d, h0, d // 2 + 1)


_CASES = {
    (4, 0): "impossible",
    (3, 1): "plane quintic or dim Xi_sing >= 1",
    (2, 2): "multiplicity 2",
    (2, 0): "multiplicity 2",
    (1, 1): "smooth point",
}
HYPERELLIPTIC = "hyperelliptic; dim Xi_sing >= 1"


def classify_case(n1: int, n2: int) -> str:
    """Verdict for a splitting ``h0(L) = n1 + n2`` of sections into eigenspaces."""
    if n1 < 0 or n2 < 0:
        raise ValueError("dimensions must be nonnegative")
    if n1 < n2:
        raise ValueError(f"expected n1 >= n2, got ({n1}, {n2})")
    total = n1 + n2
    if total % 2 or total not in (2, 4, 6):
        raise ValueError(f"h0 total {total} is outside {{2, 4, 6}}")
    if total == 6:
        return HYPERELLIPTIC
    try:
        return _CASES[n1, n2]
    except KeyError:
        raise ValueError(f"({n1}, {n2}) is not a classified case") from None


def case3_partitions(total: int = 5, parts_min: int = 1) -> list[tuple[int, ...]]:
    """Partitions of ``total`` into at least two parts, each ``>= parts_min``.

    Parts descend within a partition; partitions are listed with longer
    leading parts first (reverse lexicographic).
    """
    if total < 2:
        raise ValueError("total must be at least 2")
    if parts_min < 1:
        raise ValueError("parts must be positive")

    def gen(n, cap):
        if n == 0:
            yield ()
            return
        for first in range(min(n, cap), parts_min - 1, -1):
            for rest in gen(n - first, first):
                yield (first,) + rest

    return [p for p in gen(total, total) if len(p) >= 2]
