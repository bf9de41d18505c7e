"""Text formats.

``.fc``   dense: ``m n`` then m rows of n characters from {0,1}.
``.fcm``  multiplicities: ``m`` then ``2**m`` integers, index 0 first.
X-CERT v1 certificates for ``X(F) < k``.

``#`` lines are comments in every format.
"""

from __future__ import annotations

import re
from pathlib import Path

from .config import Configuration, from_dense, to_dense
from .errors import ConfigurationError, FormatError, MalformedCertificate
from .products import ProductShape, RowPartition
from .xcompute import Certificate

_HEADER = re.compile(r"^(\d+) (\d+)$")


def _data_lines(text: str) -> list[str]:
    return [ln.rstrip("\r") for ln in text.splitlines()
            if ln.strip() and not ln.startswith("#")]


def parse_fc(text: str) -> Configuration:
    lines = _data_lines(text)
    if not lines:
        raise FormatError("empty .fc input")
    h = _HEADER.match(lines[0])
    if not h:
        raise FormatError(f"bad .fc header {lines[0]!r}, expected 'm n'")
    m, n = int(h.group(1)), int(h.group(2))
    body = lines[1:]
    if n == 0 and not body:
        # the m rows are empty lines
        if m > 20:
            raise FormatError(f"{m} rows exceeds the limit of 20")
        return Configuration(m, bytes(1 << m))
    if len(body) != m:
        raise FormatError(f".fc declares {m} rows, found {len(body)}")
    for i, r in enumerate(body):
        if len(r) != n or set(r) - {"0", "1"}:
            raise FormatError(f"row {i} must be {n} characters of 0/1, got {r!r}")
    if m == 0:
        return Configuration(0, [n])
    try:
        return from_dense(body)
    except ConfigurationError as e:
        raise FormatError(str(e)) from None


def format_fc(A: Configuration, comment: str | None = None) -> str:
    out = [f"# {comment}"] if comment else []
    out.append(f"{A.rows} {A.ncols}")
    out.extend(to_dense(A))
    return "\n".join(out) + "\n"


def parse_fcm(text: str) -> Configuration:
    lines = _data_lines(text)
    if len(lines) != 2 or not lines[0].isdigit():
        raise FormatError(".fcm needs a row-count line and one multiplicity line")
    m = int(lines[0])
    try:
        vals = [int(x) for x in lines[1].split(" ")]
    except ValueError:
        raise FormatError(f"bad multiplicity line {lines[1]!r}") from None
    if m > 20:
        raise FormatError(f"{m} rows exceeds the limit of 20")
    if len(vals) != 1 << m:
        raise FormatError(f".fcm for {m} rows needs {1 << m} values, got {len(vals)}")
    try:
        return Configuration(m, vals)
    except ConfigurationError as e:
        raise FormatError(str(e)) from None


def format_fcm(A: Configuration) -> str:
    return f"{A.rows}\n" + " ".join(str(c) for c in A.mult) + "\n"


def parse_config(text: str, fmt: str = "dense") -> Configuration:
    return parse_fcm(text) if fmt == "mult" else parse_fc(text)


def format_config(A: Configuration, fmt: str = "dense") -> str:
    return format_fcm(A) if fmt == "mult" else format_fc(A)


def guess_format(path: str | Path) -> str:
    return "mult" if str(path).endswith(".fcm") else "dense"


def format_certificate(cert: Certificate) -> str:
    out = ["X-CERT 1", f"k: {cert.k}"]
    for sh in sorted(cert.entries):
        part = cert.entries[sh]
        out.append("shape: " + " ".join(map(str, sh)))
        out.append("assign: " + " ".join(map(str, part.factor_of)))
        out.append("order: " + " ".join(map(str, part.order)))
    out.append("end")
    return "\n".join(out) + "\n"


def _ints(line: str, prefix: str, lineno: int) -> list[int]:
    if not line.startswith(prefix):
        raise FormatError(f"line {lineno}: expected {prefix!r}, got {line!r}")
    rest = line[len(prefix):].strip()
    try:
        return [int(x) for x in rest.split()] if rest else []
    except ValueError:
        raise FormatError(f"line {lineno}: non-integer field in {line!r}") from None


def parse_certificate(text: str) -> Certificate:
    lines = _data_lines(text)
    if not lines or lines[0].strip() != "X-CERT 1":
        raise FormatError("missing 'X-CERT 1' header")
    if len(lines) < 3:
        raise FormatError("truncated certificate")
    kv = _ints(lines[1], "k:", 2)
    if len(kv) != 1:
        raise FormatError(f"bad k line {lines[1]!r}")
    k = kv[0]
    if lines[-1].strip() != "end":
        raise FormatError("certificate not terminated by 'end'")
    body = lines[2:-1]
    if len(body) % 3:
        raise FormatError("shape blocks must have shape/assign/order lines")
    entries = {}
    for b in range(0, len(body), 3):
        sh = _ints(body[b], "shape:", b + 3)
        if len(sh) != 3:
            raise FormatError(f"shape needs three integers, got {sh}")
        assign = _ints(body[b + 1], "assign:", b + 4)
        order = _ints(body[b + 2], "order:", b + 5)
        key = ProductShape(*sh)
        if key in entries:
            raise MalformedCertificate(f"shape {tuple(key)} listed twice")
        entries[key] = RowPartition(tuple(assign), tuple(order))
    return Certificate(k, entries)


def format_report(report) -> str:
    out = [f"# boundary configurations: s={report.s} k={report.k} explored={report.explored_count}"]
    for name, items in (("minimal", report.minimal), ("maximal", report.maximal)):
        out.append(f"# {name}")
        blocks = [format_fc(A).rstrip("\n") for A in items]
        out.append("\n---\n".join(blocks) if blocks else "# (none)")
    return "\n".join(out) + "\n"
