"""Combinatorics of the n-cube orbit polytope and characteristic matrices.

Facet convention everywhere (files, reports, ring generators): positions
1..n are the facets F_1..F_n carrying the classes v_j, positions n+1..2n
are the opposite facets F'_1..F'_n carrying u_j.  A vertex picks one facet
from each opposite pair; its n chosen columns must form a matrix of
determinant +-1 over the integers for the matrix to be valid.

The two built-in families share one building block: the primed columns of a
group of size g form the lower-triangular all-ones pattern, column i having
ones in rows i..g of the group.  Row-reducing the linear ideal then yields
v_i = u_1 + ... + u_i within each group, which is what makes the familiar
quadratic relations come out.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Sequence

from ._config import HARD_MAX_N
from .errors import InvalidMatrixError

MATRIX_SCHEMA_VERSION = 1


def facet_name(index: int, n: int) -> str:
    """Column index (0-based) to label: 0..n-1 -> F1..Fn, n..2n-1 -> F'1..F'n."""
    return f"F{index + 1}" if index < n else f"F'{index - n + 1}"


@dataclass(frozen=True)
class CubeCombinatorics:
    """Facet pairing and vertex enumeration of the n-cube."""

    n: int

    @property
    def num_facets(self) -> int:
        return 2 * self.n

    @property
    def num_vertices(self) -> int:
        return 2**self.n

    @property
    def facet_names(self) -> tuple[str, ...]:
        return tuple(facet_name(j, self.n) for j in range(2 * self.n))

    def vertices(self) -> Iterator[int]:
        """Vertex masks; bit i set means the primed facet of pair i is chosen."""
        return iter(range(2**self.n))

    def vertex_facets(self, mask: int) -> tuple[int, ...]:
        """Column indices of the n facets meeting at the vertex."""
        return tuple(i + self.n if mask >> i & 1 else i for i in range(self.n))

    def vertex_label(self, mask: int) -> str:
        return " ∩ ".join(facet_name(j, self.n) for j in self.vertex_facets(mask))


def cube(n: int, max_n: int = HARD_MAX_N) -> CubeCombinatorics:
    if not 1 <= n <= max_n:
        raise ValueError(f"cube dimension must be in 1..{max_n}, got {n}")
    return CubeCombinatorics(n)


@dataclass(frozen=True)
class CharacteristicMatrix:
    """n x 2n integer matrix; column j is the facet vector of facet j."""

    n: int
    columns: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be positive")
        if len(self.columns) != 2 * self.n:
            raise ValueError(f"expected {2 * self.n} columns, got {len(self.columns)}")
        normalized = tuple(tuple(int(x) for x in col) for col in self.columns)
        for col in normalized:
            if len(col) != self.n:
                raise ValueError("every column must have length n")
        object.__setattr__(self, "columns", normalized)

    def entry(self, row: int, col: int) -> int:
        return self.columns[col][row]

    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(col[i] for col in self.columns) for i in range(self.n))

    def unprimed(self) -> tuple[tuple[int, ...], ...]:
        return self.columns[: self.n]

    def primed(self) -> tuple[tuple[int, ...], ...]:
        return self.columns[self.n :]

    def to_json_dict(self) -> dict:
        return {
            "schema_version": MATRIX_SCHEMA_VERSION,
            "n": self.n,
            "columns": [list(col) for col in self.columns],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "CharacteristicMatrix":
        if not isinstance(data, dict):
            raise ValueError("matrix file must contain a JSON object")
        version = data.get("schema_version", 1)
        if version != MATRIX_SCHEMA_VERSION:
            raise ValueError(f"unsupported matrix schema version {version}")
        try:
            n = int(data["n"])
            columns = tuple(tuple(int(x) for x in col) for col in data["columns"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed matrix file: {exc}") from exc
        return cls(n, columns)

    @classmethod
    def load(cls, path: str | Path) -> "CharacteristicMatrix":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json_dict(json.load(fh))

    def dump(self, path: str | Path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_json_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")


def binary_groups(n: int) -> tuple[int, ...]:
    """Binary decomposition n = 2^r1 + 2^r2 + ..., largest part first."""
    if n < 1:
        raise ValueError("n must be positive")
    return tuple(1 << k for k in range(n.bit_length() - 1, -1, -1) if n >> k & 1)


def _grouped_primed_columns(n: int, groups: Sequence[int]) -> list[tuple[int, ...]]:
    columns = []
    offset = 0
    for size in groups:
        for i in range(1, size + 1):
            col = [0] * n
            for row in range(offset + i - 1, offset + size):
                col[row] = 1
            columns.append(tuple(col))
        offset += size
    return columns


def lambda_MI(n: int) -> CharacteristicMatrix:
    """The single-group family: identity block plus lower-triangular all-ones."""
    if n < 1:
        raise ValueError("n must be positive")
    identity = [tuple(1 if r == j else 0 for r in range(n)) for j in range(n)]
    return CharacteristicMatrix(n, tuple(identity + _grouped_primed_columns(n, (n,))))


def lambda_Q(n: int) -> CharacteristicMatrix:
    """Facet pairs split into binary-size groups, each with the MI block."""
    if n < 1:
        raise ValueError("n must be positive")
    identity = [tuple(1 if r == j else 0 for r in range(n)) for j in range(n)]
    return CharacteristicMatrix(
        n, tuple(identity + _grouped_primed_columns(n, binary_groups(n)))
    )


def det_exact(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    size = len(rows)
    if size == 0:
        return 1
    a = [[int(x) for x in row] for row in rows]
    if any(len(row) != size for row in a):
        raise ValueError("matrix must be square")
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            for i in range(k + 1, size):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[size - 1][size - 1]


@dataclass(frozen=True)
class VertexFailure:
    mask: int
    facets: tuple[str, ...]
    label: str
    det: int


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the all-vertex minor test.

    ``valid`` demands exact determinant +-1 per vertex; ``mod2_valid`` only
    demands odd determinants (what the GF(2) cohomology actually uses) and
    can hold when ``valid`` fails.
    """

    n: int
    checked: int
    valid: bool
    mod2_valid: bool
    first_failure: VertexFailure | None
    first_mod2_failure: VertexFailure | None

    def to_json_dict(self) -> dict:
        def failure(f):
            return (
                None
                if f is None
                else {"vertex": list(f.facets), "label": f.label, "det": f.det}
            )

        return {
            "n": self.n,
            "checked": self.checked,
            "valid": self.valid,
            "mod2_valid": self.mod2_valid,
            "first_failure": failure(self.first_failure),
            "first_mod2_failure": failure(self.first_mod2_failure),
        }


def validate(cm: CharacteristicMatrix) -> ValidationReport:
    """Exhaustively check the 2^n vertex minors with exact determinants."""
    geometry = cube(cm.n)
    first_failure = None
    first_mod2_failure = None
    for mask in geometry.vertices():
        cols = geometry.vertex_facets(mask)
        minor = [[cm.columns[c][r] for c in cols] for r in range(cm.n)]
        det = det_exact(minor)
        if abs(det) != 1 and first_failure is None:
            first_failure = VertexFailure(
                mask,
                tuple(facet_name(c, cm.n) for c in cols),
                geometry.vertex_label(mask),
                det,
            )
        if det % 2 == 0 and first_mod2_failure is None:
            first_mod2_failure = VertexFailure(
                mask,
                tuple(facet_name(c, cm.n) for c in cols),
                geometry.vertex_label(mask),
                det,
            )
        if first_failure is not None and first_mod2_failure is not None:
            break  # both verdicts settled; nothing more to learn
    return ValidationReport(
        n=cm.n,
        checked=geometry.num_vertices,
        valid=first_failure is None,
        mod2_valid=first_mod2_failure is None,
        first_failure=first_failure,
        first_mod2_failure=first_mod2_failure,
    )


def require_valid(cm: CharacteristicMatrix) -> ValidationReport:
    report = validate(cm)
    if not report.valid:
        fail = report.first_failure
        raise InvalidMatrixError(
            f"characteristic matrix is invalid at vertex {fail.label} (det {fail.det})",
            report,
        )
    return report


def random_characteristic_matrix(n: int, rng: random.Random) -> CharacteristicMatrix:
    """A random valid matrix: triangular +-1-diagonal primed block, then a
    unimodular row mix and random swaps within opposite pairs."""
    lower = rng.random() < 0.5
    block = [[0] * n for _ in range(n)]
    for i in range(n):
        block[i][i] = rng.choice((-1, 1))
        span = range(i) if lower else range(i + 1, n)
        for j in span:
            block[i][j] = rng.choice((-2, -1, 0, 0, 1, 2))
    matrix = [[1 if i == j else 0 for j in range(n)] + block[i] for i in range(n)]
    for _ in range(2 * n):
        src, dst = rng.randrange(n), rng.randrange(n)
        if src == dst:
            continue
        c = rng.choice((-1, 1))
        for j in range(2 * n):
            matrix[dst][j] += c * matrix[src][j]
    columns = [tuple(matrix[i][j] for i in range(n)) for j in range(2 * n)]
    for i in range(n):
        if rng.random() < 0.5:
            columns[i], columns[n + i] = columns[n + i], columns[i]
    cm = CharacteristicMatrix(n, tuple(columns))
    require_valid(cm)  # by construction; guards the generator itself
    return cm
