"""Boundary configurations: the minimal and maximal F on s rows with X(F) = k.

The search grows configurations one column at a time (multiplicities at most
2) and drops any node whose X already exceeds k, since X never decreases
when a column is added.  Equivalent configurations are merged by
``canonical_key`` up to ``dedup_depth`` columns; deeper nodes are merged only
when their multiplicity vectors coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .config import Configuration, canonical_key
from .errors import GuardExceeded
from .xcompute import x_of

CLASSIFY_MAX_ROWS = 4
CLASSIFY_MAX_COLS = 8


@dataclass
class BoundaryReport:
    s: int
    k: int
    minimal: list = field(default_factory=list)
    maximal: list = field(default_factory=list)
    explored_count: int = 0


class _XCache:
    def __init__(self):
        self.values = {}

    def __call__(self, F: Configuration) -> int:
        v = self.values.get(F.mult)
        if v is None:
            v = self.values[F.mult] = x_of(F).x_value
        return v


def _add(F: Configuration, alpha: int) -> Configuration:
    m = bytearray(F.mult)
    m[alpha] += 1
    return Configuration(F.rows, bytes(m))


def _remove(F: Configuration, alpha: int) -> Configuration:
    m = bytearray(F.mult)
    m[alpha] -= 1
    return Configuration(F.rows, bytes(m))


def is_minimal(F: Configuration, k: int, xfun) -> bool:
    """Every single-column deletion leaves X below k (or nothing at all)."""
    if F.ncols == 1:
        return True
    return all(xfun(_remove(F, a)) < k for a, _ in F.support)


def is_maximal(F: Configuration, k: int, xfun) -> bool:
    """Every single-column addition (multiplicity kept at most 2) pushes X above k."""
    return all(xfun(_add(F, a)) > k for a in range(1 << F.rows) if F.mult[a] < 2)


def _sort_key(F: Configuration):
    return (F.ncols, canonical_key(F))


def enumerate_boundary(s: int, k: int, max_cols: int, dedup_depth: int | None = 2,
                       xfun=None) -> BoundaryReport:
    """Search all configurations on ``s`` rows with at most ``max_cols`` columns.

    ``dedup_depth=None`` merges equivalent configurations at every depth.
    """
    if not 1 <= s <= CLASSIFY_MAX_ROWS or not 1 <= max_cols <= CLASSIFY_MAX_COLS:
        raise GuardExceeded(f"classify limited to s <= {CLASSIFY_MAX_ROWS}, "
                            f"max_cols <= {CLASSIFY_MAX_COLS}")
    xfun = xfun or _XCache()
    report = BoundaryReport(s, k)
    found = {}
    seen = set()
    frontier = [Configuration(s, bytes(1 << s))]
    for depth in range(1, max_cols + 1):
        nxt = []
        for F in frontier:
            for a in range(1 << s):
                if F.mult[a] >= 2:
                    continue
                G = _add(F, a)
                full = dedup_depth is None or depth <= dedup_depth
                key = canonical_key(G) if full else G.mult
                if key in seen:
                    continue
                seen.add(key)
                report.explored_count += 1
                x = xfun(G)
                if x > k:
                    continue
                if x == k:
                    found.setdefault(canonical_key(G), G)
                nxt.append(G)
        frontier = nxt
    cands = sorted(found.values(), key=_sort_key)
    report.minimal = [F for F in cands if is_minimal(F, k, xfun)]
    report.maximal = [F for F in cands if is_maximal(F, k, xfun)]
    return report
