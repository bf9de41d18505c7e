"""Product constructions ``P_r(a, b, c) = I_r^a x (I^c_r)^b x T_r^c`` and membership in them.

``member_of_family`` answers "is F contained in P_r(a, b, c) for some r" by
searching over assignments of F's rows to the ``a + b + c`` factors.  For a
fixed assignment the multiplicity of a column of F inside the product is the
product of per-factor multiplicities, each of which is 0, 1 or "as large as
needed" (``t = ||F||``).  An empty factor contributes ``t``.
"""

from __future__ import annotations

import itertools
from math import comb
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .config import (Configuration, FactorKind, concatenate, from_columns, generator,
                     permute_rows, product_all, replicate)
from .errors import ConfigurationError, GuardExceeded

I, IC, T = FactorKind.IDENTITY, FactorKind.IDENTITY_COMPLEMENT, FactorKind.TOWER

ORACLE_MAX_WORK = 2 * 10**8


class ProductShape(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def k(self) -> int:
        return self.a + self.b + self.c

    def kinds(self) -> list[FactorKind]:
        """Factor kinds by index: identities, then complements, then towers."""
        return [I] * self.a + [IC] * self.b + [T] * self.c


@dataclass(frozen=True)
class RowPartition:
    """Placement of F's rows into the factors of a product.

    ``factor_of[i]`` is the factor holding row ``i``; ``order[i]`` is the
    row's position (from the top) inside that factor.
    """

    factor_of: tuple[int, ...]
    order: tuple[int, ...]

    def parts(self, k: int) -> list[list[int]]:
        out = [[] for _ in range(k)]
        for i in sorted(range(len(self.factor_of)), key=lambda i: self.order[i]):
            out[self.factor_of[i]].append(i)
        return out


def compositions(k: int) -> list[ProductShape]:
    """All shapes with ``a + b + c == k``, lexicographically increasing."""
    return [ProductShape(a, b, k - a - b) for a in range(k + 1) for b in range(k - a + 1)]


def factor_multiplicity(kind: FactorKind, s: int, t: int, pattern: int) -> int:
    """Closed form of ``avoid_factor_matrix(kind, s, t).mult[pattern]``."""
    full = (1 << s) - 1
    if kind is I:
        return t if pattern == 0 else 1 if pattern.bit_count() == 1 else 0
    if kind is IC:
        return t if pattern == full else 1 if (full ^ pattern).bit_count() == 1 else 0
    q = full ^ pattern
    return t if q & (q + 1) == 0 else 0


def avoid_factor_matrix(kind: FactorKind, s: int, t: int) -> Configuration:
    """``[t*0_s | I_s]``, ``[t*1_s | I^c_s]`` or ``t*T_s``."""
    kind = FactorKind(kind)
    if kind is T:
        return replicate(generator(T, s), t)
    const = 0 if kind is I else (1 << s) - 1
    return concatenate([(from_columns(s, [const]), t), generator(kind, s)])


def extremal_sub(kind: FactorKind, x: int, r: int) -> Configuration:
    """An x-row submatrix of the r-row factor whose repeated columns grow with r.

    For towers, x rows of ``T_r`` cut its ``r + 1`` columns into ``x + 1``
    runs, so ``(r + 1) // (x + 1)`` copies of ``T_x`` always fit.
    """
    kind = FactorKind(kind)
    if not 1 <= x <= r:
        raise ConfigurationError(f"need 1 <= x <= r, got x={x}, r={r}")
    if kind is T:
        return replicate(generator(T, x), (r + 1) // (x + 1))
    if r == x:
        return generator(kind, x)
    const = 0 if kind is I else (1 << x) - 1
    return concatenate([(from_columns(x, [const]), r - x), generator(kind, x)])


def explicit_product(shape: ProductShape, r: int) -> Configuration:
    shape = ProductShape(*shape)
    if r * shape.k > 20:
        raise ConfigurationError(f"P_{r}{tuple(shape)} has {r * shape.k} rows, limit is 20")
    return product_all(generator(kind, r) for kind in shape.kinds())


def product_columns(shape: ProductShape, r: int) -> np.ndarray:
    """Dense 0/1 array (columns x rows) of ``P_r(shape)``; no row limit."""
    cols = np.zeros((1, 0), dtype=np.uint8)
    for kind in ProductShape(*shape).kinds():
        g = generator(kind, r)
        f = np.array([[a >> (r - 1 - i) & 1 for i in range(r)] for a in g.columns()],
                     dtype=np.uint8).reshape(-1, r)
        n0, n1 = len(cols), len(f)
        cols = np.hstack([np.repeat(cols, n1, axis=0), np.tile(f, (n0, 1))])
    return cols


def member_of_family(F: Configuration, shape: ProductShape) -> RowPartition | None:
    """Find a row partition showing ``F < P_r(shape)`` for large r, or None."""
    if F.rows < 1 or F.ncols < 1:
        raise ConfigurationError("member_of_family needs at least one row and one column")
    shape = ProductShape(*shape)
    kinds = shape.kinds()
    k, s = shape.k, F.rows
    supp = F.support
    full = (1 << len(supp)) - 1
    rowmask = [sum(1 << j for j, (a, _) in enumerate(supp) if a >> (s - 1 - i) & 1)
               for i in range(s)]
    multi = sum(1 << j for j, (_, c) in enumerate(supp) if c >= 2)
    group_start = [0] * shape.a + [shape.a] * shape.b + [shape.a + shape.b] * shape.c

    size = [0] * k
    # identity: columns already holding a 1; complement: columns already holding a 0
    spent = [0] * k
    tower = [[] for _ in range(k)]
    assign = [-1] * s

    def big() -> int:
        out = 0
        for f in range(k):
            out |= full if size[f] == 0 or kinds[f] is T else full & ~spent[f]
        return out

    def place(i: int) -> bool:
        if i == s:
            return True
        r = rowmask[i]
        for f in range(k):
            if size[f] == 0 and f > group_start[f] and size[f - 1] == 0:
                continue
            kind = kinds[f]
            old = spent[f]
            if kind is I:
                if old & r:
                    continue
                spent[f] = old | r
            elif kind is IC:
                z = full & ~r
                if old & z:
                    continue
                spent[f] = old | z
            else:
                if any(m & r != m and m & r != r for m in tower[f]):
                    continue
                tower[f].append(r)
            size[f] += 1
            assign[i] = f
            if multi & ~big() == 0 and place(i + 1):
                return True
            size[f] -= 1
            spent[f] = old
            if kind is T:
                tower[f].pop()
        assign[i] = -1
        return False

    if not place(0):
        return None
    order = [0] * s
    for f in range(k):
        rows = [i for i in range(s) if assign[i] == f]
        if kinds[f] is T:
            rows.sort(key=lambda i: (-rowmask[i].bit_count(), i))
        for q, i in enumerate(rows):
            order[i] = q
    return RowPartition(tuple(assign), tuple(order))


def partition_realizes(F: Configuration, shape: ProductShape, part: RowPartition,
                       t: int | None = None) -> bool:
    """Build ``A = x_i avoid_factor_matrix(kind_i, s_i, t)`` and test F against it directly.

    F's rows are laid out factor by factor in the stated order, so no search
    is involved.  Empty factors enter as ``t`` copies of the empty column.
    """
    shape = ProductShape(*shape)
    t = F.ncols if t is None else t
    parts = part.parts(shape.k)
    layout = [i for p in parts for i in p]
    # int64 counts: t ** k may exceed the configuration multiplicity cap
    A = np.ones(1, dtype=np.int64)
    for kind, p in zip(shape.kinds(), parts):
        A = np.outer(A, avoid_factor_matrix(kind, len(p), t).array).ravel()
    return bool((permute_rows(F, layout).array <= A).all())


def _distinct_perm_vectors(F: Configuration) -> np.ndarray:
    s = F.rows
    vecs = set()
    for order in itertools.permutations(range(s)):
        v = [0] * (1 << s)
        for a, c in F.support:
            b = 0
            for j, i in enumerate(order):
                b |= (a >> (s - 1 - i) & 1) << (s - 1 - j)
            v[b] = c
        vecs.add(tuple(v))
    return np.array(sorted(vecs), dtype=np.int64)


def default_r_max(F: Configuration) -> int:
    return F.rows * F.ncols + F.rows


def family_membership_oracle(F: Configuration, shape: ProductShape,
                             r_max: int | None = None) -> bool:
    """Does F embed in the explicitly built ``P_{r_max}(shape)``?

    Factors only grow with r, so a single ``r = r_max`` suffices.  The product
    is materialised column by column and every row subset is counted.
    """
    shape = ProductShape(*shape)
    r = default_r_max(F) if r_max is None else r_max
    R, s = r * shape.k, F.rows
    if shape.k == 0 or s > R:
        return False
    bits = product_columns(shape, r).astype(np.int64)
    if comb(R, s) * len(bits) > ORACLE_MAX_WORK:
        raise GuardExceeded(f"explicit product P_{r}{tuple(shape)} too large for the oracle")
    perms = _distinct_perm_vectors(F)
    weights = np.array([1 << (s - 1 - j) for j in range(s)], dtype=np.int64)
    combos = itertools.combinations(range(R), s)
    while True:
        chunk = np.array(list(itertools.islice(combos, 2048)), dtype=np.int64).reshape(-1, s)
        if not len(chunk):
            return False
        codes = bits[:, chunk] @ weights          # (ncols, nchunk)
        flat = codes + np.arange(len(chunk)) * (1 << s)
        counts = np.bincount(flat.ravel(), minlength=len(chunk) << s).reshape(len(chunk), -1)
        if (counts[:, None, :] >= perms[None, :, :]).all(axis=2).any():
            return True

