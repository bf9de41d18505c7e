"""Configurations stored as column-multiplicity arrays.

A configuration on ``m`` rows is an array of length ``2**m``; entry ``alpha``
counts how many times the column whose bits read ``alpha`` appears.  The top
row is the most significant bit, so on three rows ``3 == 0b011`` is the column
``(0, 1, 1)``.  Row subsets (``RowSet``) use the same bit convention.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigurationError, GuardExceeded

MAX_ROWS = 20
MAX_MULT = 255
CANONICAL_MAX_ROWS = 12


class FactorKind(enum.Enum):
    IDENTITY = "identity"
    IDENTITY_COMPLEMENT = "identityc"
    TOWER = "tower"


@dataclass(frozen=True)
class Configuration:
    """Immutable {0,1}-configuration: ``rows`` and a byte per column index."""

    rows: int
    mult: bytes

    def __post_init__(self):
        if not isinstance(self.rows, int) or self.rows < 0:
            raise ConfigurationError(f"row count must be a nonnegative int, got {self.rows!r}")
        if self.rows > MAX_ROWS:
            raise ConfigurationError(f"{self.rows} rows exceeds the limit of {MAX_ROWS}")
        mult = self.mult
        if not isinstance(mult, bytes):
            try:
                mult = bytes(int(x) for x in mult)
            except ValueError:
                bad = max(int(x) for x in self.mult)
                raise ConfigurationError(
                    f"multiplicity {bad} outside [0, {MAX_MULT}]") from None
            object.__setattr__(self, "mult", mult)
        if len(mult) != 1 << self.rows:
            raise ConfigurationError(
                f"multiplicity vector has length {len(mult)}, expected {1 << self.rows}")

    @cached_property
    def array(self) -> np.ndarray:
        """Read-only ``uint8`` view of the multiplicities."""
        return np.frombuffer(self.mult, dtype=np.uint8)

    @cached_property
    def support(self) -> tuple[tuple[int, int], ...]:
        """Distinct columns as ``(alpha, multiplicity)`` pairs, increasing alpha."""
        return tuple((a, c) for a, c in enumerate(self.mult) if c)

    @property
    def ncols(self) -> int:
        return sum(self.mult)

    @property
    def ones(self) -> int:
        """Total number of 1 entries."""
        return sum(c * a.bit_count() for a, c in self.support)

    @property
    def max_mult(self) -> int:
        return max(self.mult)

    def is_simple(self) -> bool:
        return self.max_mult <= 1

    def columns(self) -> list[int]:
        """Column indices with repetition, increasing order."""
        return [a for a, c in self.support for _ in range(c)]

    def dense(self) -> list[str]:
        return to_dense(self)

    def __repr__(self):
        cols = " ".join(f"{a:0{self.rows}b}" + (f"x{c}" if c > 1 else "")
                        for a, c in self.support) if self.rows else f"[]x{self.mult[0]}"
        return f"Configuration(rows={self.rows}, cols={self.ncols}: {cols})"


def _check_rows(m: int):
    if m > MAX_ROWS:
        raise ConfigurationError(f"{m} rows exceeds the limit of {MAX_ROWS}")


def from_columns(m: int, columns: Iterable[int]) -> Configuration:
    """Build a configuration from column indices (repeats allowed)."""
    _check_rows(m)
    counts = [0] * (1 << m)
    for a in columns:
        if not 0 <= a < 1 << m:
            raise ConfigurationError(f"column {a} out of range for {m} rows")
        counts[a] += 1
    return Configuration(m, counts)


def from_dense(rows: Sequence[str]) -> Configuration:
    """Parse a matrix given as equal-length strings of '0'/'1', one per row."""
    rows = list(rows)
    m = len(rows)
    _check_rows(m)
    if m == 0:
        return Configuration(0, [0])
    n = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != n:
            raise ConfigurationError(f"row {i} has length {len(r)}, expected {n}")
        if set(r) - {"0", "1"}:
            raise ConfigurationError(f"row {i} contains characters other than 0/1: {r!r}")
    cols = (int("".join(r[j] for r in rows), 2) for j in range(n))
    return from_columns(m, cols)


def to_dense(A: Configuration) -> list[str]:
    """Rows as '0'/'1' strings; columns in increasing index order."""
    cols = A.columns()
    return ["".join("1" if a >> (A.rows - 1 - i) & 1 else "0" for a in cols)
            for i in range(A.rows)]


def unit() -> Configuration:
    """The 0-row configuration with a single (empty) column; neutral for ``product``."""
    return Configuration(0, [1])


def column_multiplicity(A: Configuration, alpha: int) -> int:
    if not 0 <= alpha < 1 << A.rows:
        raise ConfigurationError(f"column {alpha} out of range for {A.rows} rows")
    return A.mult[alpha]


def complement(A: Configuration) -> Configuration:
    # index full ^ alpha runs backwards through the array
    return Configuration(A.rows, A.mult[::-1])


def rowset(m: int, rows: Iterable[int]) -> int:
    """Bitmask of 0-based row indices (top row = most significant bit)."""
    S = 0
    for i in rows:
        if not 0 <= i < m:
            raise ConfigurationError(f"row {i} out of range for {m} rows")
        S |= 1 << (m - 1 - i)
    return S


def rows_of(m: int, S: int) -> list[int]:
    """Row indices selected by mask ``S``, top to bottom."""
    return [i for i in range(m) if S >> (m - 1 - i) & 1]


@lru_cache(maxsize=4096)
def restriction_table(m: int, S: int) -> np.ndarray:
    """``table[alpha]`` is the column ``alpha`` restricted to the rows in ``S``."""
    if not 0 <= S < 1 << m:
        raise ConfigurationError(f"row set {S:#b} invalid for {m} rows")
    alphas = np.arange(1 << m, dtype=np.int64)
    out = np.zeros(1 << m, dtype=np.int64)
    for i in rows_of(m, S):
        out = (out << 1) | ((alphas >> (m - 1 - i)) & 1)
    out.setflags(write=False)
    return out


def restrict_counts(A: Configuration, S: int) -> np.ndarray:
    """Multiplicity vector of ``A|_S`` as an int64 array (no 255 cap)."""
    s = S.bit_count()
    table = restriction_table(A.rows, S)
    return np.bincount(table, weights=A.array, minlength=1 << s).astype(np.int64)


def restrict(A: Configuration, S: int) -> Configuration:
    """Submatrix on the rows of ``S``, kept in top-to-bottom order."""
    counts = restrict_counts(A, S)
    if counts.max(initial=0) > MAX_MULT:
        raise ConfigurationError("restriction has a column repeated more than 255 times")
    return Configuration(S.bit_count(), counts.tolist())


def concatenate(parts: Iterable) -> Configuration:
    """``[t1*A1 | t2*A2 | ...]``; items are configurations or ``(A, t)`` pairs."""
    total = None
    m = None
    for part in parts:
        A, t = part if isinstance(part, tuple) else (part, 1)
        if t < 1:
            raise ConfigurationError(f"replication factor must be positive, got {t}")
        if m is None:
            m, total = A.rows, A.array.astype(np.int64) * t
        elif A.rows != m:
            raise ConfigurationError(f"cannot concatenate {A.rows}-row and {m}-row configurations")
        else:
            total = total + A.array.astype(np.int64) * t
    if m is None:
        raise ConfigurationError("nothing to concatenate")
    if total.max() > MAX_MULT:
        raise ConfigurationError("concatenation repeats a column more than 255 times")
    return Configuration(m, total.tolist())


def replicate(A: Configuration, t: int) -> Configuration:
    return concatenate([(A, t)])


def product(A: Configuration, B: Configuration) -> Configuration:
    """Every column of ``A`` stacked on top of every column of ``B``."""
    m = A.rows + B.rows
    _check_rows(m)
    out = np.outer(A.array.astype(np.int64), B.array.astype(np.int64)).ravel()
    if out.max() > MAX_MULT:
        raise ConfigurationError("product repeats a column more than 255 times")
    return Configuration(m, out.tolist())


def product_all(factors: Iterable[Configuration]) -> Configuration:
    out = unit()
    for f in factors:
        out = product(out, f)
    return out


def generator(kind: FactorKind, r: int) -> Configuration:
    """``I_r``, ``I^c_r`` or the tower ``T_r`` (column j has 1s in the top j rows)."""
    _check_rows(r)
    kind = FactorKind(kind)
    full = (1 << r) - 1
    if kind is FactorKind.IDENTITY:
        cols = [1 << (r - 1 - j) for j in range(r)]
    elif kind is FactorKind.IDENTITY_COMPLEMENT:
        cols = [full ^ (1 << (r - 1 - j)) for j in range(r)]
    else:
        cols = [((1 << j) - 1) << (r - j) for j in range(r + 1)]
    return from_columns(r, cols)


def permute_rows(A: Configuration, order: Sequence[int]) -> Configuration:
    """Reorder rows so that new row ``j`` is old row ``order[j]``."""
    m = A.rows
    if sorted(order) != list(range(m)):
        raise ConfigurationError(f"{order!r} is not a permutation of {m} rows")
    return Configuration(m, _permuted_vector(A, order).tobytes())


def _permuted_vector(A: Configuration, order: Sequence[int]) -> np.ndarray:
    m = A.rows
    supp = np.array([a for a, _ in A.support], dtype=np.int64)
    vals = np.array([c for _, c in A.support], dtype=np.uint8)
    new = np.zeros(len(supp), dtype=np.int64)
    for j, i in enumerate(order):
        new |= ((supp >> (m - 1 - i)) & 1) << (m - 1 - j)
    out = np.zeros(1 << m, dtype=np.uint8)
    out[new] = vals
    return out


def _row_classes(A: Configuration) -> list[int]:
    """Isomorphism-invariant row colouring by bipartite colour refinement."""
    m = A.rows
    supp = A.support
    row_col = [0] * m
    col_col = [c for _, c in supp]
    bits = [[a >> (m - 1 - i) & 1 for a, _ in supp] for i in range(m)]
    n_classes = (1, len(set(col_col)))
    while True:
        rsig = [(row_col[i], tuple(sorted(col_col[j] for j in range(len(supp)) if bits[i][j])))
                for i in range(m)]
        csig = [(col_col[j], tuple(sorted(row_col[i] for i in range(m) if bits[i][j])))
                for j in range(len(supp))]
        rrank = {s: k for k, s in enumerate(sorted(set(rsig)))}
        crank = {s: k for k, s in enumerate(sorted(set(csig)))}
        row_col = [rrank[s] for s in rsig]
        col_col = [crank[s] for s in csig]
        now = (len(rrank), len(crank))
        if now == n_classes:
            return row_col
        n_classes = now


def canonical_key(A: Configuration) -> bytes:
    """Key equal for two configurations iff they are equivalent.

    Rows are first split into classes by colour refinement; the key is the
    lexicographically smallest multiplicity vector over all row orders that
    list the classes in rank order.
    """
    m = A.rows
    if m > CANONICAL_MAX_ROWS:
        raise GuardExceeded(f"canonical_key supports at most {CANONICAL_MAX_ROWS} rows, got {m}")
    if m == 0:
        return bytes([0]) + A.mult
    classes = _row_classes(A)
    groups = [[i for i in range(m) if classes[i] == k] for k in sorted(set(classes))]
    best = None
    for perms in itertools.product(*(itertools.permutations(g) for g in groups)):
        order = [i for p in perms for i in p]
        vec = _permuted_vector(A, order).tobytes()
        if best is None or vec < best:
            best = vec
    return bytes([m]) + best
