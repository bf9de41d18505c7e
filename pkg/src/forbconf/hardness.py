"""Graph colouring to X(F): the matrix ``F(G)`` with ``chi(G) = X(F(G)) - 2M + 1``."""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .config import Configuration, FactorKind, from_columns
from .errors import ConfigurationError, FormatError, GraphError, GuardExceeded, IsolatedVertexError
from .xcompute import x_of

log = logging.getLogger(__name__)

CHROMATIC_MAX_VERTICES = 12


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]  # 1-based, u < v, sorted

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphError(f"edge ({u}, {v}) has a vertex outside 1..{self.n}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        touched = {x for e in self.edges for x in e}
        isolated = sorted(set(range(1, self.n + 1)) - touched)
        if isolated:
            raise IsolatedVertexError(f"isolated vertices not allowed: {isolated}")

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        return cls(n, tuple(tuple(e) for e in edges))


def parse_dimacs(text: str) -> Graph:
    """Parse the DIMACS edge format; repeated edges are merged (logged as a warning)."""
    n = None
    declared = None
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "edge" or n is not None:
                raise FormatError(f"line {lineno}: bad problem line {line!r}")
            try:
                n, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(f"line {lineno}: bad problem line {line!r}") from None
        elif parts[0] == "e":
            if n is None:
                raise FormatError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise FormatError(f"line {lineno}: bad edge line {line!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise FormatError(f"line {lineno}: bad edge line {line!r}") from None
            edges.append((u, v))
        else:
            raise FormatError(f"line {lineno}: unknown line type {parts[0]!r}")
    if n is None:
        raise FormatError("missing 'p edge n m' line")
    if len(edges) != declared:
        log.warning("problem line declares %d edges, found %d", declared, len(edges))
    unique = {(min(u, v), max(u, v)) if u != v else (u, v) for u, v in edges}
    if len(unique) < len(edges):
        log.warning("collapsed %d duplicate edges", len(edges) - len(unique))
    return Graph(n, tuple(sorted(unique)))


def incidence_matrix(G: Graph) -> Configuration:
    """Rows are vertices, one column per edge with 1s at its endpoints."""
    n = G.n
    return from_columns(n, [(1 << (n - u)) | (1 << (n - v)) for u, v in G.edges])


def default_M(G: Graph) -> int:
    return G.n + 2


def reduction_matrix(G: Graph, M: int | None = None) -> Configuration:
    """The ``(2M + n) x (e + M + 1)`` matrix::

        [ 1 | 0_M  I^c_M ]
        [ 1 | T_M        ]
        [ S | 0          ]

    where ``1`` is an all-ones ``M x e`` block and ``S`` the incidence matrix.
    """
    n = G.n
    M = default_M(G) if M is None else M
    if M < n + 2:
        raise ConfigurationError(f"M must be at least n + 2 = {n + 2}, got {M}")
    rows = 2 * M + n
    top = ((1 << 2 * M) - 1) << n
    left = [top | (1 << (n - u)) | (1 << (n - v)) for u, v in G.edges]
    full_m = (1 << M) - 1
    right = []
    for j in range(M + 1):
        upper = 0 if j == 0 else full_m ^ (1 << (M - j))
        tower = ((1 << j) - 1) << (M - j)
        right.append((upper << M | tower) << n)
    F = from_columns(rows, left + right)
    if not F.is_simple():
        raise AssertionError("reduction matrix must be simple")
    return F


def chromatic_number(G: Graph) -> int:
    """Exact chromatic number by backtracking (new colours introduced in order)."""
    n = G.n
    if n > CHROMATIC_MAX_VERTICES:
        raise GuardExceeded(f"chromatic_number supports at most {CHROMATIC_MAX_VERTICES} vertices")
    adj = [set() for _ in range(n)]
    for u, v in G.edges:
        adj[u - 1].add(v - 1)
        adj[v - 1].add(u - 1)
    order = sorted(range(n), key=lambda x: -len(adj[x]))
    colour = [-1] * n

    def colourable(idx, k, used):
        if idx == n:
            return True
        v = order[idx]
        bad = {colour[w] for w in adj[v]}
        for c in range(min(used + 1, k)):
            if c not in bad:
                colour[v] = c
                if colourable(idx + 1, k, max(used, c + 1)):
                    return True
        colour[v] = -1
        return False

    for k in range(1, n + 1):
        if colourable(0, k, 0):
            return k
    return n


@dataclass(frozen=True)
class ReductionCheck:
    chi: int
    x_value: int
    avoiding_shape: tuple
    M: int

    @property
    def ok(self) -> bool:
        a, b, c = self.avoiding_shape
        return self.chi == self.x_value - 2 * self.M + 1 and b == 0 and c == 0


def reduction_report(G: Graph, M: int | None = None, jobs: int = 1) -> ReductionCheck:
    M = default_M(G) if M is None else M
    res = x_of(reduction_matrix(G, M), jobs=jobs)
    return ReductionCheck(chromatic_number(G), res.x_value, tuple(res.avoiding_shape), M)


def check_reduction(G: Graph, M: int | None = None, jobs: int = 1) -> bool:
    """True iff ``chi(G) == X(F(G)) - 2M + 1`` and the reported avoider has no I^c or T factor."""
    return reduction_report(G, M, jobs).ok
