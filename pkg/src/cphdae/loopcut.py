"""Loop-cutset matrix and the eight-way edge partition.

For a spanning tree T with links N, the loop-cutset matrix F is the
(m-n+1) x (n-1) sign matrix with F[e, f] nonzero exactly when twig f lies on
the fundamental loop of link e, equivalently when link e crosses the
fundamental cutset of twig f.  It is computed exactly as

    F = -A[N, :-1] @ inverse(A[T, :-1])

by fraction-free elimination; every entry is verified to land in {-1, 0, +1}.

Under an optimal tree the partition of edges by (kind, tree membership) gives
F a block pattern with three identically-zero blocks: no cotree capacitor
loops through a tree inductor or resistor, and no cotree resistor loops
through a tree inductor.  ``block_view`` checks and exposes that structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactla import bareiss_solve
from .graph import IncidenceMatrix, TreeDecomposition
from .netlist import ElementKind


class LoopCutError(RuntimeError):
    """Internal inconsistency while building F (tree precondition broken)."""


class PartitionError(ValueError):
    """Edge landed on the wrong side of the tree for its kind."""


class OptimalityError(ValueError):
    """The tree is not optimal: a forbidden block of F has a nonzero entry."""


@dataclass(frozen=True)
class LoopCutsetMatrix:
    f: np.ndarray  # (m-n+1) x (n-1), entries in {-1, 0, +1}
    row_edges: tuple[int, ...]  # link edge positions
    col_edges: tuple[int, ...]  # twig edge positions
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]

    def entry(self, link: int, twig: int) -> int:
        """F[link, twig] addressed by edge positions."""
        return int(self.f[self.row_edges.index(link), self.col_edges.index(twig)])


@dataclass(frozen=True)
class EdgePartition:
    """Ordered index sets: lowercase on the tree, uppercase off it.

    Union of all eight is 0..m-1; original edge order is kept inside each
    set, which makes every downstream matrix deterministic.
    """

    c: tuple[int, ...]
    l: tuple[int, ...]
    v: tuple[int, ...]
    r: tuple[int, ...]
    L: tuple[int, ...]
    C: tuple[int, ...]
    I: tuple[int, ...]
    R: tuple[int, ...]

    @property
    def sizes(self) -> dict[str, int]:
        return {name: len(getattr(self, name)) for name in ("c", "l", "v", "r", "L", "C", "I", "R")}

    def as_dict(self) -> dict[str, tuple[int, ...]]:
        return {name: getattr(self, name) for name in ("c", "l", "v", "r", "L", "C", "I", "R")}


def compute_F(inc: IncidenceMatrix, td: TreeDecomposition) -> LoopCutsetMatrix:
    """Exact loop-cutset matrix of a spanning tree."""
    reduced = inc.reduced()  # drop the last node column
    a_t = reduced[list(td.twigs)].tolist()
    a_n = reduced[list(td.links)].tolist()
    nt = len(td.twigs)

    # F = -A_N @ inv(A_T)  via  A_T^T X = -A_N^T,  F = X^T
    at_t = [[a_t[r][c] for r in range(nt)] for c in range(nt)]
    rhs = [[-a_n[r][c] for r in range(len(td.links))] for c in range(nt)]
    try:
        x = bareiss_solve(at_t, rhs)
    except ValueError as exc:
        raise LoopCutError(f"twig rows are singular; not a spanning tree: {exc}") from None

    f = np.zeros((len(td.links), nt), dtype=np.int64)
    for i in range(nt):
        for j in range(len(td.links)):
            val = x[i][j]
            if val.denominator != 1 or val not in (Fraction(-1), Fraction(0), Fraction(1)):
                raise LoopCutError(
                    f"entry F[{inc.labels[td.links[j]]}, {inc.labels[td.twigs[i]]}] = {val} "
                    "outside {-1, 0, +1}"
                )
            f[j, i] = int(val)
    return LoopCutsetMatrix(
        f=f,
        row_edges=tuple(td.links),
        col_edges=tuple(td.twigs),
        row_labels=tuple(inc.labels[i] for i in td.links),
        col_labels=tuple(inc.labels[i] for i in td.twigs),
    )


def partition_edges(td: TreeDecomposition, kinds: tuple[ElementKind, ...]) -> EdgePartition:
    """Split twigs and links by element kind, preserving edge order."""
    def pick(edges, kind):
        return tuple(i for i in edges if kinds[i] == kind)

    for i in td.links:
        if kinds[i] == ElementKind.VOLTAGE_SOURCE:
            raise PartitionError(f"voltage source edge {i} is a link; tree is invalid")
    for i in td.twigs:
        if kinds[i] == ElementKind.CURRENT_SOURCE:
            raise PartitionError(f"current source edge {i} is a twig; tree is invalid")

    return EdgePartition(
        c=pick(td.twigs, ElementKind.CAPACITOR),
        l=pick(td.twigs, ElementKind.INDUCTOR),
        v=pick(td.twigs, ElementKind.VOLTAGE_SOURCE),
        r=pick(td.twigs, ElementKind.RESISTOR),
        L=pick(td.links, ElementKind.INDUCTOR),
        C=pick(td.links, ElementKind.CAPACITOR),
        I=pick(td.links, ElementKind.CURRENT_SOURCE),
        R=pick(td.links, ElementKind.RESISTOR),
    )


_ROW_ORDER = ("L", "C", "I", "R")
_COL_ORDER = ("c", "l", "v", "r")
_FORBIDDEN = (("C", "l"), ("C", "r"), ("R", "l"))


@dataclass(frozen=True)
class BlockF:
    """F reordered to rows (L, C, I, R) x columns (c, l, v, r) with named blocks."""

    matrix: np.ndarray
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    row_sizes: dict[str, int]
    col_sizes: dict[str, int]

    def block(self, row: str, col: str) -> np.ndarray:
        r0 = sum(self.row_sizes[k] for k in _ROW_ORDER[: _ROW_ORDER.index(row)])
        c0 = sum(self.col_sizes[k] for k in _COL_ORDER[: _COL_ORDER.index(col)])
        return self.matrix[r0 : r0 + self.row_sizes[row], c0 : c0 + self.col_sizes[col]]

    # Named accessors for the blocks the assembly uses.
    @property
    def Lc(self): return self.block("L", "c")
    @property
    def Ll(self): return self.block("L", "l")
    @property
    def Lv(self): return self.block("L", "v")
    @property
    def Lr(self): return self.block("L", "r")
    @property
    def Cc(self): return self.block("C", "c")
    @property
    def Cv(self): return self.block("C", "v")
    @property
    def Ic(self): return self.block("I", "c")
    @property
    def Il(self): return self.block("I", "l")
    @property
    def Iv(self): return self.block("I", "v")
    @property
    def Ir(self): return self.block("I", "r")
    @property
    def Rc(self): return self.block("R", "c")
    @property
    def Rv(self): return self.block("R", "v")
    @property
    def Rr(self): return self.block("R", "r")


def block_view(fm: LoopCutsetMatrix, part: EdgePartition) -> BlockF:
    """Reorder F by partition and assert the three forbidden blocks vanish."""
    row_edges = part.L + part.C + part.I + part.R
    col_edges = part.c + part.l + part.v + part.r
    rperm = [fm.row_edges.index(e) for e in row_edges]
    cperm = [fm.col_edges.index(e) for e in col_edges]
    matrix = fm.f[np.ix_(rperm, cperm)]
    bf = BlockF(
        matrix=matrix,
        row_labels=tuple(fm.row_labels[i] for i in rperm),
        col_labels=tuple(fm.col_labels[i] for i in cperm),
        row_sizes={k: len(getattr(part, k)) for k in _ROW_ORDER},
        col_sizes={k: len(getattr(part, k)) for k in _COL_ORDER},
    )
    for row, col in _FORBIDDEN:
        blk = bf.block(row, col)
        if blk.size and np.any(blk != 0):
            i, j = np.argwhere(blk != 0)[0]
            r0 = sum(bf.row_sizes[k] for k in _ROW_ORDER[: _ROW_ORDER.index(row)])
            c0 = sum(bf.col_sizes[k] for k in _COL_ORDER[: _COL_ORDER.index(col)])
            raise OptimalityError(
                f"tree is not optimal: block {row}{col} has nonzero entry at "
                f"({bf.row_labels[r0 + i]}, {bf.col_labels[c0 + j]})"
            )
    return bf
