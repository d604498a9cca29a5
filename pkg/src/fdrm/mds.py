"""Systematic generators of MDS codes and a brute-force Hamming distance check."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from fdrm.errors import BudgetExceededError, ParseError, PreconditionError
from fdrm.field import Field
from fdrm.linalg import Mat, parse_matrix_block
from fdrm.search import DEFAULT_BUDGET, projective_min_rank, projective_size


@dataclass(frozen=True)
class GeneratorMatrix:
    """A generator matrix with the metric it is meant for and its claimed minimum distance.

    For rank-metric generators ``mu`` is the extension degree of the entries
    over GF(q); codewords are compared after coordinate expansion.
    """

    matrix: Mat
    metric: str
    distance: int
    mu: int | None = None

    @property
    def k(self) -> int:
        return self.matrix.rows

    @property
    def n(self) -> int:
        return self.matrix.cols

    @property
    def field(self) -> Field:
        return self.matrix.field

    def encode(self, message: Sequence[int]) -> list[int]:
        return encode(self, message)

    def header(self) -> str:
        if self.metric == "hamming":
            return f"metric=hamming d={self.distance}"
        return f"metric=rank mu={self.mu} q={self.field.q} d={self.distance}"

    def to_text(self) -> str:
        return self.header() + "\n" + self.matrix.to_text()

    @classmethod
    def from_text(cls, text: str) -> GeneratorMatrix:
        lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
        lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
        if not lines or not lines[0][1].startswith("metric="):
            raise ParseError("expected a 'metric=' header", lines[0][0] if lines else None)
        lineno, head = lines[0]
        try:
            tags = dict(tok.split("=", 1) for tok in head.split())
            metric = tags["metric"]
            distance = int(tags["d"])
            mu = int(tags["mu"]) if "mu" in tags else None
        except (KeyError, ValueError):
            raise ParseError("malformed generator header", lineno) from None
        if metric not in ("hamming", "rank"):
            raise ParseError(f"unknown metric {metric!r}", lineno)
        mat, rest = parse_matrix_block(lines[1:], None)
        if rest:
            raise ParseError("trailing content after generator", rest[0][0])
        if metric == "rank" and mu != mat.field.m:
            raise ParseError("mu does not match the matrix field", lineno)
        return cls(mat, metric, distance, mu)


def encode(G: GeneratorMatrix | Mat, message: Sequence[int]) -> list[int]:
    """Codeword ``message @ G``."""
    M = G.matrix if isinstance(G, GeneratorMatrix) else G
    if len(message) != M.rows:
        raise PreconditionError(f"message length {len(message)} != k={M.rows}")
    return (Mat(M.field, [list(message)]) @ M).row(0)


def grs_points(field: Field, n: int) -> list[int]:
    """First ``n`` field elements in canonical (integer) order."""
    return list(range(min(n, field.order)))


def mds_generator(n: int, d: int, field: Field) -> GeneratorMatrix:
    """Systematic generator of an ``[n, n-d+1, d]`` MDS code over ``field``."""
    if not 1 <= d <= n:
        raise PreconditionError(f"need 1 <= d <= n, got n={n}, d={d}")
    k = n - d + 1
    F = field
    if d == 1:
        return GeneratorMatrix(Mat.identity(F, n), "hamming", 1)
    if d == 2:
        ones = np.ones((k, 1), dtype=np.int64)
        return GeneratorMatrix(Mat(F, np.hstack([np.eye(k, dtype=np.int64), ones])), "hamming", 2)
    if d == n:
        return GeneratorMatrix(Mat(F, np.ones((1, n), dtype=np.int64)), "hamming", n)
    if n > F.order + 1:
        raise PreconditionError(f"no [{n},{k},{d}] MDS code realized over GF({F.order}): need n <= q+1")
    points = grs_points(F, n)
    columns = [[F.pow(x, i) for i in range(k)] for x in points]
    if n == F.order + 1:
        columns.append([0] * (k - 1) + [1])
    V = Mat.from_columns(F, columns, rows=k)
    R, _, pivots = V.row_reduce()
    if pivots != list(range(k)):
        raise AssertionError("evaluation matrix lost its leading identity")
    return GeneratorMatrix(R, "hamming", d)


def min_hamming_distance_bruteforce(G: GeneratorMatrix | Mat, budget: int = DEFAULT_BUDGET) -> int:
    """Minimum Hamming weight over the nonzero codewords, one representative per scalar multiple."""
    M = G.matrix if isinstance(G, GeneratorMatrix) else G
    if M.rows == 0:
        raise PreconditionError("the zero code has no minimum distance")
    if M.field.m != 1:
        raise PreconditionError("Hamming distance check expects a code over a base field GF(q)")
    q = M.field.order
    needed = projective_size([1] * M.rows, q)
    if needed > budget:
        raise BudgetExceededError(needed, budget)
    groups = [M.data[i : i + 1][None] for i in range(M.rows)]
    res = projective_min_rank(groups, M.field, measure="hamming")
    return int(res.min_rank)


def is_systematic(G: GeneratorMatrix | Mat) -> bool:
    M = G.matrix if isinstance(G, GeneratorMatrix) else G
    return bool(np.array_equal(M.data[:, : M.rows], np.eye(M.rows, dtype=np.int64)))


def parse_generator(text: str) -> GeneratorMatrix:
    return GeneratorMatrix.from_text(text)


__all__ = [
    "GeneratorMatrix",
    "encode",
    "grs_points",
    "is_systematic",
    "min_hamming_distance_bruteforce",
    "mds_generator",
    "parse_generator",
]
