"""graph6 encoding and family-file loading.

Only the 1-byte and 4-byte size forms are supported (``n <= 258047``).
Adjacency bits ``x(i, j)``, ``i < j``, are packed in the order
``x(0,1), x(0,2), x(1,2), x(0,3), ...``, six bits per byte, most significant
first, each byte offset by 63.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .graph import Graph

log = logging.getLogger(__name__)

HEADER = b">>graph6<<"
MAX_N = 258047


class Graph6Error(ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def _as_bytes(line: Union[bytes, str]) -> bytes:
    if isinstance(line, str):
        try:
            line = line.encode("ascii")
        except UnicodeEncodeError:
            raise Graph6Error("non-ASCII character in graph6 record") from None
    return line.rstrip(b"\r\n")


def _triangle_order(n: int) -> tuple[np.ndarray, np.ndarray]:
    # column-major upper triangle: for j in 1..n-1, for i in 0..j-1
    j, i = np.tril_indices(n, -1)
    return i, j


def decode_graph6(line: Union[bytes, str]) -> Graph:
    data = _as_bytes(line)
    if data.startswith(HEADER):
        data = data[len(HEADER):]
    if not data:
        raise Graph6Error("empty graph6 record")
    raw = np.frombuffer(data, dtype=np.uint8).astype(np.int64)
    bad = np.nonzero((raw < 63) | (raw > 126))[0]
    if len(bad):
        raise Graph6Error(f"byte {data[bad[0]]!r} at offset {bad[0]} outside [63, 126]")
    vals = raw - 63
    if data[0] != 126:
        n, pos = int(vals[0]), 1
    else:
        if len(data) >= 2 and data[1] == 126:
            raise Graph6Error(f"graphs with more than {MAX_N} vertices are not supported")
        if len(data) < 4:
            raise Graph6Error("truncated size field")
        n = (int(vals[1]) << 12) | (int(vals[2]) << 6) | int(vals[3])
        if n < 63:
            raise Graph6Error(f"non-canonical 4-byte size field for n={n}")
        pos = 4
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    body = vals[pos:]
    if len(body) != nbytes:
        raise Graph6Error(f"expected {nbytes} adjacency bytes for n={n}, got {len(body)}")
    bits = ((body[:, None] >> np.arange(5, -1, -1)) & 1).ravel()
    if bits[nbits:].any():
        raise Graph6Error("nonzero padding bits")
    i, j = _triangle_order(n)
    on = bits[:nbits].astype(bool)
    return Graph(n, tuple(zip(i[on].tolist(), j[on].tolist())))


def encode_graph6(g: Graph) -> bytes:
    n = g.n
    if n > MAX_N:
        raise Graph6Error(f"n={n} exceeds the supported maximum {MAX_N}")
    if n <= 62:
        head = bytes([n + 63])
    else:
        head = bytes([126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)])
    nbits = n * (n - 1) // 2
    i, j = _triangle_order(n)
    bits = np.zeros(-(-nbits // 6) * 6, dtype=np.int64)
    bits[:nbits] = g.adjacency()[i, j]
    groups = bits.reshape(-1, 6) @ (1 << np.arange(5, -1, -1))
    return head + (groups + 63).astype(np.uint8).tobytes()


@dataclass
class FamilyFile:
    path: str
    graphs: list[Graph] = field(default_factory=list)
    source_line_numbers: list[int] = field(default_factory=list)
    skipped: list[tuple[int, str]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.graphs)

    @property
    def name(self) -> str:
        return os.path.splitext(os.path.basename(self.path))[0]


def load_family(path: Union[str, os.PathLike], skip_bad: bool = False) -> FamilyFile:
    """Read one graph6 record per line.

    Graphs are named ``G1, G2, ...`` in file order. Blank lines are ignored;
    a leading ``>>graph6<<`` header is stripped. Malformed lines raise
    Graph6Error, or are logged and skipped when ``skip_bad`` is set.
    """
    path = os.fspath(path)
    fam = FamilyFile(path)
    with open(path, "rb") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if line.startswith(HEADER):
                line = line[len(HEADER):].strip()
            if not line:
                continue
            try:
                g = decode_graph6(line)
            except Graph6Error as err:
                if not skip_bad:
                    raise Graph6Error(str(err), lineno) from None
                log.warning("%s:%d: skipped malformed record (%s)", path, lineno, err)
                fam.skipped.append((lineno, str(err)))
                continue
            fam.graphs.append(g.with_name(f"G{len(fam.graphs) + 1}"))
            fam.source_line_numbers.append(lineno)
    return fam


def write_family(path: Union[str, os.PathLike], graphs: list[Graph]) -> None:
    with open(path, "wb") as fh:
        for g in graphs:
            fh.write(encode_graph6(g) + b"\n")
