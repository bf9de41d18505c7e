"""Exact ``forb(m, F)`` for tiny m by branch and bound.

Columns of the full m-row simple matrix are bits of an integer mask.  A
"copy" of F is a minimal set of those columns that realises F on some
ordered choice of rows; a simple matrix avoids F iff it contains no copy.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .config import Configuration, from_columns
from .errors import ConfigurationError, GuardExceeded

FORB_MAX_ROWS = 5


@dataclass(frozen=True)
class ForbResult:
    value: int
    witness: Configuration


def _copies(m: int, F: Configuration) -> set[int]:
    s = F.rows
    out = set()
    for rows in itertools.permutations(range(m), s):
        pre = {}
        for beta in range(1 << m):
            key = 0
            for r in rows:
                key = key << 1 | (beta >> (m - 1 - r) & 1)
            pre.setdefault(key, []).append(beta)
        choices = []
        for alpha, lam in F.support:
            cand = pre.get(alpha, [])
            if lam > len(cand):
                break
            choices.append([sum(1 << b for b in c) for c in itertools.combinations(cand, lam)])
        else:
            for combo in itertools.product(*choices):
                out.add(sum(combo))
    return out


def forb_exact(m: int, F: Configuration) -> ForbResult:
    """Largest simple m-row matrix with no copy of F, plus a witness.

    Among maximum witnesses the one with the smallest column-set mask is returned.
    """
    if not 1 <= m <= FORB_MAX_ROWS:
        raise GuardExceeded(f"forb_exact supports 1 <= m <= {FORB_MAX_ROWS}, got {m}")
    if F.ncols == 0:
        raise ConfigurationError("every matrix contains a configuration with no columns")
    N = 1 << m
    if F.rows > m:
        return ForbResult(N, from_columns(m, range(N)))

    copies = _copies(m, F)
    by_col = [[] for _ in range(N)]
    for c in copies:
        for b in range(N):
            if c >> b & 1:
                by_col[b].append(c)
    free = [not any(c == 1 << b for c in by_col[b]) for b in range(N)]
    free_upto = list(itertools.accumulate(free))

    def ok_with(mask: int, b: int) -> bool:
        new = mask | 1 << b
        return all(c & new != c for c in by_col[b])

    # greedy lower bound
    greedy = 0
    for b in range(N):
        if ok_with(greedy, b):
            greedy |= 1 << b
    need = greedy.bit_count()
    best = None

    # exclude-first from the top column enumerates masks in increasing order
    def dfs(pos: int, mask: int, size: int):
        nonlocal need, best
        if size + (free_upto[pos] if pos >= 0 else 0) < need:
            return
        if pos < 0:
            best, need = mask, size + 1
            return
        dfs(pos - 1, mask, size)
        if free[pos] and ok_with(mask, pos):
            dfs(pos - 1, mask | 1 << pos, size + 1)

    dfs(N - 1, 0, 0)
    cols = [b for b in range(N) if best >> b & 1]
    return ForbResult(len(cols), from_columns(m, cols))
