"""JSON operator files.

Layout::

    {"dims": [2, 2], "kind": "witness",
     "matrix": [[[re, im], ...], ...],
     "metadata": {...}}

``kind`` is one of ``state``, ``witness``, ``choi`` or ``raw``; everything
but ``raw`` must be Hermitian. A single-system matrix (the input of the
``apply`` command) uses ``dims: [d]`` with kind ``state`` or ``raw``.
Floats are written with ``repr`` precision, so a round trip is bit-exact.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Union

import numpy as np

from .errors import OperatorFileError
from .linalg import BipartiteOperator, hermiticity_defect, is_hermitian

KINDS = ("state", "witness", "choi", "raw")


@dataclass
class OperatorFile:
    dims: list[int]
    matrix: np.ndarray
    kind: str = "witness"
    metadata: dict = field(default_factory=dict)

    @property
    def bipartite(self) -> bool:
        return len(self.dims) == 2

    def operator(self) -> BipartiteOperator:
        if not self.bipartite:
            raise OperatorFileError(f"expected a bipartite operator, got dims {self.dims}")
        return BipartiteOperator(self.matrix, self.dims[0], self.dims[1], hermitian=self.kind != "raw")

    @classmethod
    def from_operator(cls, o: BipartiteOperator, kind: str = "witness", **metadata) -> "OperatorFile":
        return cls([o.dim_a, o.dim_b], np.array(o.matrix), kind, dict(metadata))

    def to_json(self) -> dict:
        rows = [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(self.matrix, dtype=complex)]
        out = {"dims": list(self.dims), "kind": self.kind, "matrix": rows}
        if self.metadata:
            out["metadata"] = self.metadata
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _parse_entry(entry, r: int, c: int) -> complex:
    if isinstance(entry, (int, float)) and not isinstance(entry, bool):
        re_, im = float(entry), 0.0
    elif isinstance(entry, list) and len(entry) == 2 and all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry
    ):
        re_, im = float(entry[0]), float(entry[1])
    else:
        raise OperatorFileError(f"row {r}, column {c}: expected [re, im], got {entry!r}")
    if not (math.isfinite(re_) and math.isfinite(im)):
        raise OperatorFileError(f"row {r}, column {c}: non-finite entry")
    return complex(re_, im)


def parse(data: dict) -> OperatorFile:
    if not isinstance(data, dict):
        raise OperatorFileError("operator file must contain a JSON object")
    dims = data.get("dims")
    if not (isinstance(dims, list) and len(dims) in (1, 2) and all(isinstance(d, int) and d >= 1 for d in dims)):
        raise OperatorFileError(f"'dims' must be [d_A, d_B] or [d], got {dims!r}")
    kind = data.get("kind", "witness")
    if kind not in KINDS:
        raise OperatorFileError(f"'kind' must be one of {KINDS}, got {kind!r}")
    rows = data.get("matrix")
    n = math.prod(dims)
    if not isinstance(rows, list) or len(rows) != n:
        raise OperatorFileError(f"'matrix' must have {n} rows")
    m = np.empty((n, n), dtype=complex)
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise OperatorFileError(f"row {r}: expected {n} entries")
        for c, entry in enumerate(row):
            m[r, c] = _parse_entry(entry, r, c)
    if kind != "raw" and not is_hermitian(m):
        raise OperatorFileError(f"matrix is not Hermitian (defect {hermiticity_defect(m):.3e})")
    if len(dims) == 2 and min(dims) < 2:
        raise OperatorFileError("bipartite dims must both be >= 2")
    metadata = data.get("metadata", {})
    return OperatorFile(list(dims), m, kind, metadata if isinstance(metadata, dict) else {})


def loads(text: str) -> OperatorFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise OperatorFileError(f"invalid JSON: {exc}") from None
    return parse(data)


def read(path: Union[str, Path]) -> OperatorFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise OperatorFileError(f"cannot read {path}: {exc}") from None
    return loads(text)


def write(path: Union[str, Path], f: OperatorFile) -> None:
    Path(path).write_text(f.dumps() + "\n")

