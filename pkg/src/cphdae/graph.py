"""Circuit graph machinery: incidence matrix, well-posedness, optimal tree.

Well-posedness here means the two topological conditions every ideal-element
network needs:

* no loop made of voltage sources only (otherwise KVL around it is either
  contradictory or redundant), and
* no cutset made of current sources only (dually, KCL across it fails).

Both are rank statements about the reduced incidence matrix and are decided
in exact integer arithmetic; witnesses are recovered by graph search.

Tree selection follows the classical preference order for network trees:
voltage sources first, then capacitors, resistors, inductors, and current
sources last.  A greedy maximum-weight spanning tree over the graphic matroid
attains the optimum "most C/V twigs, fewest L/I twigs", and under the two
conditions above it always takes every V edge and rejects every I edge.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exactla import rank_exact
from .netlist import Circuit, ElementKind


class AssumptionError(ValueError):
    """A well-posedness assumption the pipeline relies on does not hold."""


@dataclass(frozen=True)
class IncidenceMatrix:
    """m x n edge-by-node incidence matrix, +1 at the start node, -1 at the end."""

    a: np.ndarray
    labels: tuple[str, ...]

    @property
    def m(self) -> int:
        return self.a.shape[0]

    @property
    def n(self) -> int:
        return self.a.shape[1]

    def endpoints(self, edge: int) -> tuple[int, int]:
        """(start, end) node positions (0-based) of an edge."""
        row = self.a[edge]
        return int(np.where(row == 1)[0][0]), int(np.where(row == -1)[0][0])

    def reduced(self, grounded: int | None = None) -> np.ndarray:
        """A with one node column removed (default: the last node)."""
        g = self.n - 1 if grounded is None else grounded
        return np.delete(self.a, g, axis=1)


@dataclass(frozen=True)
class TreeDecomposition:
    """A spanning tree as ordered twig/link edge positions (0-based)."""

    twigs: tuple[int, ...]
    links: tuple[int, ...]


@dataclass(frozen=True)
class Witness:
    kind: str  # "V-loop" | "I-cutset"
    edges: tuple[str, ...]

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "edges": list(self.edges)}


@dataclass(frozen=True)
class WellPosednessReport:
    a1: bool
    a2: bool
    witnesses: tuple[Witness, ...]

    @property
    def ok(self) -> bool:
        return self.a1 and self.a2

    def to_json_dict(self) -> dict:
        return {"a1": self.a1, "a2": self.a2, "witnesses": [w.to_json_dict() for w in self.witnesses]}


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[rx] = ry
        return True

    def joined(self, x: int, y: int) -> bool:
        return self.find(x) == self.find(y)


def incidence_matrix(circuit: Circuit) -> IncidenceMatrix:
    a = np.zeros((circuit.m, circuit.n), dtype=np.int64)
    for i, e in enumerate(circuit.elements):
        a[i, e.from_node - 1] = 1
        a[i, e.to_node - 1] = -1
    return IncidenceMatrix(a=a, labels=circuit.labels)


def _find_cycle_among(inc: IncidenceMatrix, edges: list[int]) -> tuple[str, ...]:
    """Labels of some cycle inside the given edge subset (one must exist)."""
    uf = _UnionFind(inc.n)
    added: list[int] = []
    for idx in edges:
        u, v = inc.endpoints(idx)
        if uf.union(u, v):
            added.append(idx)
            continue
        # idx closes a cycle: find the u-v path among previously added edges
        adj: dict[int, list[tuple[int, int]]] = {}
        for j in added:
            a, b = inc.endpoints(j)
            adj.setdefault(a, []).append((b, j))
            adj.setdefault(b, []).append((a, j))
        prev: dict[int, tuple[int, int]] = {u: (-1, -1)}
        queue = [u]
        while queue:
            node = queue.pop(0)
            if node == v:
                break
            for w, j in adj.get(node, ()):
                if w not in prev:
                    prev[w] = (node, j)
                    queue.append(w)
        cycle = [idx]
        node = v
        while prev[node][0] != -1:
            cycle.append(prev[node][1])
            node = prev[node][0]
        return tuple(inc.labels[i] for i in sorted(cycle))
    raise AssertionError("no cycle found in dependent edge set")


def _components_without_current_sources(inc: IncidenceMatrix, kinds) -> list[set[int]]:
    adj: dict[int, set[int]] = {v: set() for v in range(inc.n)}
    for i, k in enumerate(kinds):
        if k != ElementKind.CURRENT_SOURCE:
            u, v = inc.endpoints(i)
            adj[u].add(v)
            adj[v].add(u)
    comps = []
    seen: set[int] = set()
    for start in range(inc.n):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            for w in adj[stack.pop()]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        comps.append(comp)
    return comps


def check_well_posed(inc: IncidenceMatrix, kinds: tuple[ElementKind, ...]) -> WellPosednessReport:
    """Check the no-V-loop / no-I-cutset conditions.

    Violations become report entries with witnesses, never exceptions.  The
    decisions are exact rank computations on the reduced incidence matrix;
    witnesses come from a search over the offending subgraph.
    """
    b = inc.reduced()
    v_rows = [i for i, k in enumerate(kinds) if k == ElementKind.VOLTAGE_SOURCE]
    non_i_rows = [i for i, k in enumerate(kinds) if k != ElementKind.CURRENT_SOURCE]

    a1 = rank_exact(b[v_rows].tolist()) == len(v_rows) if v_rows else True
    a2 = rank_exact(b[non_i_rows].tolist()) == inc.n - 1

    witnesses: list[Witness] = []
    if not a1:
        witnesses.append(Witness("V-loop", _find_cycle_among(inc, v_rows)))
    if not a2:
        part = min(_components_without_current_sources(inc, kinds), key=len)
        crossing = []
        for i in range(inc.m):
            u, v = inc.endpoints(i)
            if (u in part) != (v in part):
                crossing.append(inc.labels[i])
        witnesses.append(Witness("I-cutset", tuple(crossing)))
    return WellPosednessReport(a1=a1, a2=a2, witnesses=tuple(witnesses))


#: greedy tree preference; higher weight is taken first
TREE_WEIGHTS = {
    ElementKind.VOLTAGE_SOURCE: 5,
    ElementKind.CAPACITOR: 4,
    ElementKind.RESISTOR: 3,
    ElementKind.INDUCTOR: 2,
    ElementKind.CURRENT_SOURCE: 1,
}


def optimal_tree(inc: IncidenceMatrix, kinds: tuple[ElementKind, ...]) -> TreeDecomposition:
    """Greedy maximum-weight spanning tree with deterministic index tie-break.

    Raises AssumptionError when the well-posedness checks fail.  The returned
    tree is verified to contain every V edge and no I edge, the property the
    later block-structure results rest on.
    """
    report = check_well_posed(inc, kinds)
    if not report.ok:
        failed = " and ".join(w.kind for w in report.witnesses)
        raise AssumptionError(
            f"circuit is not well posed ({failed}): "
            + "; ".join(f"{w.kind} {list(w.edges)}" for w in report.witnesses)
        )

    order = sorted(range(inc.m), key=lambda i: (-TREE_WEIGHTS[kinds[i]], i))
    uf = _UnionFind(inc.n)
    twigs = []
    for i in order:
        u, v = inc.endpoints(i)
        if uf.union(u, v):
            twigs.append(i)
    twigs.sort()
    if len(twigs) != inc.n - 1:
        raise AssumptionError("graph is disconnected; no spanning tree exists")
    twig_set = set(twigs)
    links = tuple(i for i in range(inc.m) if i not in twig_set)
    for i in range(inc.m):
        if kinds[i] == ElementKind.VOLTAGE_SOURCE and i not in twig_set:
            raise AssumptionError(f"voltage source {inc.labels[i]} left out of the tree")
        if kinds[i] == ElementKind.CURRENT_SOURCE and i in twig_set:
            raise AssumptionError(f"current source {inc.labels[i]} forced into the tree")
    return TreeDecomposition(twigs=tuple(twigs), links=links)


def tree_weight(td: TreeDecomposition, kinds) -> int:
    return sum(TREE_WEIGHTS[kinds[i]] for i in td.twigs)
