"""Subconfiguration tests: ``F < A`` means a row/column permutation of F is a submatrix of A."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .config import Configuration, _permuted_vector, restrict_counts, rows_of, rowset, to_dense
from .errors import GuardExceeded, MalformedEmbedding

NAIVE_MAX_ROWS = 7
NAIVE_MAX_COLS = 12


@dataclass(frozen=True)
class Embedding:
    """``row_map[i]`` is the row of A that row ``i`` of F lands on."""

    row_map: tuple[int, ...]
    witness_counts: dict = field(default_factory=dict, compare=False)


@lru_cache(maxsize=1024)
def row_permutations(F: Configuration) -> tuple[tuple[tuple[int, ...], ...], np.ndarray]:
    """Distinct row permutations of F as ``(orders, vectors)``.

    Orders are in ``itertools.permutations`` order; a permutation whose vector
    equals an earlier one is dropped.
    """
    seen = {}
    for order in itertools.permutations(range(F.rows)):
        vec = _permuted_vector(F, order).tobytes()
        seen.setdefault(vec, order)
    orders = tuple(seen.values())
    vecs = np.array([np.frombuffer(v, dtype=np.uint8) for v in seen], dtype=np.int64)
    return orders, vecs


def _subsets(m: int, s: int):
    """All ``s``-row subsets of ``m`` rows as masks, in increasing value."""
    if s == 0:
        yield 0
        return
    S = (1 << s) - 1
    while S < 1 << m:
        yield S
        c = S & -S
        r = S + c
        S = (((r ^ S) >> 2) // c) | r


def _mapped_column(alpha: int, s: int, row_map, image: list[int]) -> int:
    """Column of ``A|_image`` that F's column ``alpha`` becomes under ``row_map``."""
    pos = {r: k for k, r in enumerate(image)}
    out = 0
    for i in range(s):
        if alpha >> (s - 1 - i) & 1:
            out |= 1 << (s - 1 - pos[row_map[i]])
    return out


def _make_embedding(F: Configuration, A: Configuration, row_map) -> Embedding:
    image = sorted(row_map)
    counts = restrict_counts(A, rowset(A.rows, image))
    witness = {a: int(counts[_mapped_column(a, F.rows, row_map, image)]) for a, _ in F.support}
    return Embedding(tuple(row_map), witness)


def contains(F: Configuration, A: Configuration, speedups: bool = True) -> Embedding | None:
    """Return an embedding of F into A, or None if ``F`` is not a subconfiguration.

    Row subsets of A are tried in increasing mask value, and F's distinct row
    permutations in a fixed order; the first hit is returned.
    """
    s, m = F.rows, A.rows
    if s > m:
        return None
    if speedups and (F.ncols > A.ncols or F.ones > A.ones):
        return None
    orders, vecs = row_permutations(F)
    for S in _subsets(m, s):
        counts = restrict_counts(A, S)
        ok = np.flatnonzero((vecs <= counts).all(axis=1))
        if len(ok):
            order = orders[ok[0]]
            rows = rows_of(m, S)
            row_map = [0] * s
            for j, i in enumerate(order):
                row_map[i] = rows[j]
            return _make_embedding(F, A, row_map)
    return None


def contains_naive(F: Configuration, A: Configuration) -> bool:
    """Literal definition on dense matrices: pick ordered rows, then match columns injectively."""
    if A.rows > NAIVE_MAX_ROWS or A.ncols > NAIVE_MAX_COLS:
        raise GuardExceeded("contains_naive limited to 7 rows and 12 columns")
    fd, ad = to_dense(F), to_dense(A)
    fcols = [tuple(r[j] for r in fd) for j in range(F.ncols)]
    n = A.ncols
    if F.ncols > n or F.rows > A.rows:
        return False

    def match(sub, k, used):
        if k == len(fcols):
            return True
        for j in range(n):
            if not used[j] and sub[j] == fcols[k]:
                used[j] = True
                if match(sub, k + 1, used):
                    return True
                used[j] = False
        return False

    for rows in itertools.permutations(range(A.rows), F.rows):
        sub = [tuple(ad[i][j] for i in rows) for j in range(n)]
        if match(sub, 0, [False] * n):
            return True
    return False


def verify_embedding(F: Configuration, A: Configuration, e: Embedding) -> bool:
    """Check the embedding from scratch; the stored witness counts are ignored.

    Raises MalformedEmbedding when ``row_map`` is not an injective map into A's rows.
    """
    rm = tuple(e.row_map)
    if len(rm) != F.rows:
        raise MalformedEmbedding(f"row_map has {len(rm)} entries, F has {F.rows} rows")
    if any(not isinstance(r, int) or not 0 <= r < A.rows for r in rm):
        raise MalformedEmbedding(f"row_map {rm} points outside A's {A.rows} rows")
    if len(set(rm)) != len(rm):
        raise MalformedEmbedding(f"row_map {rm} is not injective")
    image = sorted(rm)
    counts = restrict_counts(A, rowset(A.rows, image))
    return all(c <= counts[_mapped_column(a, F.rows, rm, image)] for a, c in F.support)
