"""The exponent ``X(F)``: the largest ``a + b + c`` with ``F`` avoiding every ``P_r(a, b, c)``.

Shapes are searched level by level (``k = a + b + c``).  A shape whose
predecessor already contains F is marked without a search, since adding a
factor can only help F embed.  The first level at which every shape contains
F stops the search; its witnesses form a certificate that ``X(F) < k``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .config import Configuration
from .errors import ConfigurationError, GuardExceeded, MalformedCertificate
from .products import (ProductShape, RowPartition, compositions, factor_multiplicity,
                       member_of_family)

X_MAX_ROWS = 12


@dataclass(frozen=True)
class Certificate:
    """Witnesses that F embeds in ``P_r(shape)`` for every shape of size ``k``."""

    k: int
    entries: dict  # ProductShape -> RowPartition


@dataclass(frozen=True)
class XResult:
    x_value: int
    avoiding_shape: ProductShape
    certificate: Certificate


def reduce_multiplicities(F: Configuration) -> Configuration:
    """Cap every column multiplicity at 2; X is unchanged by this."""
    return Configuration(F.rows, bytes(min(c, 2) for c in F.mult))


def _lift(part: RowPartition, shape: ProductShape, added: int) -> RowPartition:
    """Witness for ``shape`` plus one empty factor of kind index ``added`` (0=I, 1=Ic, 2=T)."""
    cut = sum(shape[:added + 1])
    return RowPartition(tuple(f + 1 if f >= cut else f for f in part.factor_of), part.order)


def _search_level(F, shapes, known, jobs):
    """Witness or None for each shape in ``shapes``; lattice-implied ones come from ``known``."""
    out = {}
    todo = []
    for sh in shapes:
        for kind in range(3):
            if sh[kind] == 0:
                continue
            prev = list(sh)
            prev[kind] -= 1
            prev = ProductShape(*prev)
            if known.get(prev) is not None:
                out[sh] = _lift(known[prev], prev, kind)
                break
        else:
            todo.append(sh)
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            found = list(pool.map(member_of_family, [F] * len(todo), todo))
    else:
        found = [member_of_family(F, sh) for sh in todo]
    out.update(zip(todo, found))
    return out


def x_of(F: Configuration, jobs: int = 1) -> XResult:
    """Compute X(F) together with an avoiding shape and a certificate for ``X(F) < X + 1``.

    Among avoiding shapes of the top level the lexicographically largest is
    reported, which favours identity factors.
    """
    if F.rows < 1 or F.ncols < 1:
        raise ConfigurationError("X is undefined for configurations without rows or columns")
    if F.rows > X_MAX_ROWS:
        raise GuardExceeded(f"x_of supports at most {X_MAX_ROWS} rows, got {F.rows}")
    R = reduce_multiplicities(F)
    known = {}
    x, avoider = 0, ProductShape(0, 0, 0)
    for k in range(1, F.rows + 2):
        level = _search_level(R, compositions(k), known, jobs)
        known.update(level)
        avoiders = [sh for sh in compositions(k) if level[sh] is None]
        if not avoiders:
            cert = Certificate(k, {sh: level[sh] for sh in compositions(k)})
            return XResult(x, avoider, cert)
        x, avoider = k, avoiders[-1]
    raise AssertionError(f"every shape of size {F.rows + 1} must contain {F!r}")


def emit_certificate(F: Configuration, k: int) -> Certificate | None:
    """Certificate that ``X(F) < k``, or None when some shape of size k avoids F."""
    if not 1 <= k <= F.rows + 1:
        raise ConfigurationError(f"k must lie in [1, {F.rows + 1}], got {k}")
    entries = {}
    for sh in compositions(k):
        w = member_of_family(F, sh)
        if w is None:
            return None
        entries[sh] = w
    return Certificate(k, entries)


def _check_partition(F: Configuration, shape: ProductShape, part: RowPartition,
                     stats: dict | None) -> bool:
    s, k = F.rows, shape.k
    fo, order = tuple(part.factor_of), tuple(part.order)
    if len(fo) != s or len(order) != s:
        raise MalformedCertificate(f"partition for {tuple(shape)} covers {len(fo)} of {s} rows")
    if any(not isinstance(f, int) or not 0 <= f < k for f in fo):
        raise MalformedCertificate(f"factor index out of range [0, {k}) in {fo}")
    sizes = [0] * k
    for f in fo:
        sizes[f] += 1
    for f in range(k):
        got = sorted(order[i] for i in range(s) if fo[i] == f)
        if got != list(range(sizes[f])):
            raise MalformedCertificate(f"factor {f} has order positions {got}")
    kinds = shape.kinds()
    t = F.ncols
    steps = 0
    ok = True
    for alpha, lam in F.support:
        pats = [0] * k
        for i in range(s):
            if alpha >> (s - 1 - i) & 1:
                f = fo[i]
                pats[f] |= 1 << (sizes[f] - 1 - order[i])
            steps += 1
        avail = 1
        for f in range(k):
            avail *= factor_multiplicity(kinds[f], sizes[f], t, pats[f])
            steps += 1
        if lam > avail:
            ok = False
            break
    if stats is not None:
        stats["steps"] = stats.get("steps", 0) + steps
    return ok


def verify_certificate(F: Configuration, cert: Certificate, stats: dict | None = None) -> bool:
    """Polynomial-time check of a certificate that ``X(F) < cert.k``.

    Returns False when coverage is wrong or some witness fails its counts;
    raises MalformedCertificate for partitions that are not partitions.
    ``stats['steps']`` accumulates a basic-operation count when given.
    """
    if not isinstance(cert.k, int) or cert.k < 1:
        raise MalformedCertificate(f"k must be a positive integer, got {cert.k!r}")
    need = set(compositions(cert.k))
    given = {ProductShape(*sh) for sh in cert.entries}
    if given != need or len(cert.entries) != len(need):
        return False
    result = True
    for sh, part in cert.entries.items():
        if not _check_partition(F, ProductShape(*sh), part, stats):
            result = False
    return result

