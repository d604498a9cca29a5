"""Dense matrices over a finite field.

Entries are the integer encodings used by :mod:`fdrm.field`.  Matrices are
immutable values; every operation returns a new :class:`Mat`.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import TYPE_CHECKING

import numpy as np

from fdrm.errors import FieldMismatchError, ParseError

if TYPE_CHECKING:
    from fdrm.field import Field


class Mat:
    """An ``rows x cols`` matrix over ``field``."""

    __slots__ = ("field", "_data")

    def __init__(self, field: Field, data: np.ndarray | Sequence[Sequence[int]]) -> None:
        arr = np.array(data, dtype=np.int64)
        if arr.ndim != 2:
            if arr.size == 0:
                arr = arr.reshape(0, 0)
            else:
                raise ValueError("matrix data must be two-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= field.order):
            raise ValueError(f"entries outside {field.descriptor}")
        arr.setflags(write=False)
        self.field = field
        self._data = arr

    # -- constructors -----------------------------------------------------------

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> Mat:
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: Field, n: int) -> Mat:
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Iterable[int]], cols: int | None = None) -> Mat:
        rows = [list(r) for r in rows]
        if not rows:
            return cls(field, np.zeros((0, cols or 0), dtype=np.int64))
        return cls(field, rows)

    @classmethod
    def from_columns(
        cls, field: Field, columns: Iterable[Iterable[int]], rows: int | None = None
    ) -> Mat:
        columns = [list(c) for c in columns]
        if not columns:
            return cls(field, np.zeros((rows or 0, 0), dtype=np.int64))
        return cls(field, np.array(columns, dtype=np.int64).T)

    # -- views ------------------------------------------------------------------

    @property
    def data(self) -> np.ndarray:
        return self._data

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, key):
        out = self._data[key]
        if np.ndim(out) == 0:
            return int(out)
        if np.ndim(out) == 1:
            return [int(x) for x in out]
        return Mat(self.field, out)

    def row(self, i: int) -> list[int]:
        return [int(x) for x in self._data[i]]

    def column(self, j: int) -> list[int]:
        return [int(x) for x in self._data[:, j]]

    def tolist(self) -> list[list[int]]:
        return self._data.tolist()

    @property
    def T(self) -> Mat:
        return Mat(self.field, self._data.T)

    def is_zero(self) -> bool:
        return not self._data.any()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self._data, other._data))
        )

    def __hash__(self) -> int:
        return hash((self.field, self.shape, self._data.tobytes()))

    def __repr__(self) -> str:
        return f"Mat({self.field.descriptor}, {self.tolist()})"

    # -- arithmetic ---------------------------------------------------------------

    def _same(self, other: Mat) -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field.descriptor} vs {other.field.descriptor}")
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: Mat) -> Mat:
        self._same(other)
        return Mat(self.field, self.field.add_array(self._data, other._data))

    def __sub__(self, other: Mat) -> Mat:
        self._same(other)
        return Mat(self.field, self.field.sub_array(self._data, other._data))

    def __neg__(self) -> Mat:
        return Mat(self.field, self.field.neg_array(self._data))

    def scale(self, c: int) -> Mat:
        return Mat(self.field, self.field.mul_array(self._data, int(c)))

    def __matmul__(self, other: Mat) -> Mat:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field.descriptor} vs {other.field.descriptor}")
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        F = self.field
        out = np.zeros((self.rows, other.cols), dtype=np.int64)
        for t in range(self.cols):
            out = F.add_array(out, F.mul_array(self._data[:, t : t + 1], other._data[t : t + 1, :]))
        return Mat(F, out)

    # -- elimination --------------------------------------------------------------

    def row_reduce(self) -> tuple[Mat, Mat, list[int]]:
        """Reduced row echelon form ``R = T @ self`` with invertible ``T`` and the pivot columns.

        Pivoting is deterministic: columns left to right, first nonzero row.
        """
        F = self.field
        R = [list(map(int, r)) for r in self._data]
        T = [[int(i == j) for j in range(self.rows)] for i in range(self.rows)]
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            if r == self.rows:
                break
            piv = next((i for i in range(r, self.rows) if R[i][c]), None)
            if piv is None:
                continue
            R[r], R[piv] = R[piv], R[r]
            T[r], T[piv] = T[piv], T[r]
            inv = F.inv(R[r][c])
            R[r] = [F.mul(inv, x) for x in R[r]]
            T[r] = [F.mul(inv, x) for x in T[r]]
            for i in range(self.rows):
                if i != r and R[i][c]:
                    f = R[i][c]
                    R[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(R[i], R[r])]
                    T[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(T[i], T[r])]
            pivots.append(c)
            r += 1
        return (
            Mat.from_rows(F, R, cols=self.cols),
            Mat.from_rows(F, T, cols=self.rows),
            pivots,
        )

    def rank(self) -> int:
        if self.rows > self.cols:
            return self.T.rank()
        return len(self.row_reduce()[2])

    def inverse(self) -> Mat:
        if self.rows != self.cols:
            raise ValueError("only square matrices are invertible")
        R, T, pivots = self.row_reduce()
        if len(pivots) != self.rows:
            raise ZeroDivisionError("matrix is singular")
        return T

    def solve(self, b: Sequence[int]) -> list[int] | None:
        """One solution ``x`` of ``self @ x = b`` (free variables zero), or None."""
        if len(b) != self.rows:
            raise ValueError("right-hand side has wrong length")
        aug = hstack([self, Mat.from_columns(self.field, [b], rows=self.rows)])
        R, _, pivots = aug.row_reduce()
        if self.cols in pivots:
            return None
        x = [0] * self.cols
        for i, c in enumerate(pivots):
            x[c] = R[i, self.cols]
        return x

    # -- text form ------------------------------------------------------------------

    def to_text(self, header: bool = True) -> str:
        lines = []
        if header:
            lines.append(f"field: {self.field.descriptor}")
        lines.append(f"shape: {self.rows} {self.cols}")
        lines.extend(" ".join(str(int(x)) for x in r) for r in self._data)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, field: Field | None = None) -> Mat:
        lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
        lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
        mat, rest = parse_matrix_block(lines, field)
        if rest:
            raise ParseError("trailing content after matrix", rest[0][0])
        return mat


def parse_matrix_block(
    lines: list[tuple[int, str]], field: Field | None
) -> tuple[Mat, list[tuple[int, str]]]:
    """Parse one matrix from numbered, non-empty lines; return it and the unconsumed lines."""
    from fdrm.field import parse_descriptor

    pos = 0
    if pos < len(lines) and lines[pos][1].startswith("field:"):
        lineno, text = lines[pos]
        try:
            parsed = parse_descriptor(text.split(":", 1)[1])
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        if field is not None and parsed != field:
            raise ParseError("matrix field differs from enclosing field", lineno)
        field = parsed
        pos += 1
    if field is None:
        raise ParseError("missing field header", lines[0][0] if lines else None)
    if pos >= len(lines) or not lines[pos][1].startswith("shape:"):
        raise ParseError("expected 'shape: <rows> <cols>'", lines[pos][0] if pos < len(lines) else None)
    lineno, text = lines[pos]
    try:
        r, c = (int(x) for x in text.split(":", 1)[1].split())
    except ValueError:
        raise ParseError("bad shape line", lineno) from None
    pos += 1
    data = []
    for _ in range(r):
        if pos >= len(lines):
            raise ParseError(f"matrix truncated: expected {r} rows", lines[-1][0] if lines else None)
        lineno, text = lines[pos]
        try:
            row = [int(x) for x in text.split()]
        except ValueError:
            raise ParseError("non-integer entry", lineno) from None
        if len(row) != c:
            raise ParseError(f"expected {c} entries, got {len(row)}", lineno)
        if any(not 0 <= x < field.order for x in row):
            raise ParseError(f"entry outside {field.descriptor}", lineno)
        data.append(row)
        pos += 1
    mat = Mat(field, np.array(data, dtype=np.int64).reshape(r, c))
    return mat, lines[pos:]


def hstack(mats: Sequence[Mat]) -> Mat:
    field = mats[0].field
    if any(m.field != field for m in mats):
        raise FieldMismatchError("hstack over different fields")
    return Mat(field, np.hstack([m.data for m in mats]))


def vstack(mats: Sequence[Mat]) -> Mat:
    field = mats[0].field
    if any(m.field != field for m in mats):
        raise FieldMismatchError("vstack over different fields")
    return Mat(field, np.vstack([m.data for m in mats]))


def rank(A: Mat) -> int:
    return A.rank()


def rank_distance(A: Mat, B: Mat) -> int:
    """Rank of ``A - B``."""
    return (A - B).rank()


def row_reduce(A: Mat) -> tuple[Mat, Mat, list[int]]:
    return A.row_reduce()


def solve(A: Mat, b: Sequence[int]) -> list[int] | None:
    return A.solve(b)
