"""Ferrers diagram rank-metric codes represented by an explicit basis, and their file formats."""

from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass, field as dc_field

import numpy as np

from fdrm.errors import BudgetExceededError, ParseError, PreconditionError
from fdrm.ferrers import FerrersDiagram, anti_transpose_matrix
from fdrm.field import Field, parse_descriptor
from fdrm.linalg import Mat, parse_matrix_block
from fdrm.search import DEFAULT_BUDGET, SearchResult, projective_min_rank, projective_size


@dataclass(frozen=True)
class FerrersCode:
    """A GF(q)-linear code of ``m x n`` matrices supported on a Ferrers diagram.

    ``delta`` is the distance the construction claims; :mod:`fdrm.verify`
    certifies it by enumeration.  ``provenance`` records how the code was built.
    """

    diagram: FerrersDiagram
    field: Field
    delta: int
    basis: tuple[Mat, ...]
    provenance: dict = dc_field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "basis", tuple(self.basis))
        if self.field.m != 1:
            raise PreconditionError("codes are linear over a base field GF(q)")
        for B in self.basis:
            if B.field != self.field:
                raise PreconditionError("basis matrix over a different field")
            if B.shape != self.diagram.shape:
                raise PreconditionError(f"basis matrix has shape {B.shape}, diagram is {self.diagram.shape}")

    @property
    def k(self) -> int:
        return len(self.basis)

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def stack(self) -> np.ndarray:
        """Basis as a ``(k, m, n)`` integer array."""
        m, n = self.diagram.shape
        if not self.basis:
            return np.zeros((0, m, n), dtype=np.int64)
        return np.stack([B.data for B in self.basis])

    def conforms(self) -> bool:
        return all(self.diagram.conforms(B) for B in self.basis)

    def is_independent(self) -> bool:
        if not self.basis:
            return True
        flat = Mat(self.field, self.stack.reshape(self.k, -1))
        return flat.rank() == self.k

    def codeword(self, message: Sequence[int]) -> Mat:
        if len(message) != self.k:
            raise PreconditionError(f"message length {len(message)} != k={self.k}")
        F = self.field
        out = np.zeros(self.diagram.shape, dtype=np.int64)
        for c, B in zip(message, self.basis):
            if c:
                out = F.add_array(out, F.mul_array(B.data, int(c)))
        return Mat(F, out)

    # -- transforms ------------------------------------------------------------------

    def anti_transpose(self) -> FerrersCode:
        return FerrersCode(
            self.diagram.anti_transpose(),
            self.field,
            self.delta,
            tuple(Mat(self.field, anti_transpose_matrix(B.data)) for B in self.basis),
            {"method": "anti_transpose", "of": self.provenance},
        )

    def embed_top_right(self, host: FerrersDiagram, note: str = "embed") -> FerrersCode:
        """Place the code in the top-right corner of a larger diagram containing its dots."""
        a, b = self.diagram.shape
        if a > host.m or b > host.n:
            raise PreconditionError("code does not fit in the host diagram")
        if not _dots_within(self.diagram, host):
            raise PreconditionError("code's dots are not dots of the host diagram")
        basis = []
        for B in self.basis:
            out = np.zeros(host.shape, dtype=np.int64)
            out[:a, host.n - b :] = B.data
            basis.append(Mat(self.field, out))
        return FerrersCode(
            host, self.field, self.delta, tuple(basis), {"method": note, "of": self.provenance}
        )

    def truncate(self, k: int) -> FerrersCode:
        """Subcode spanned by the first ``k`` basis matrices."""
        if not 0 <= k <= self.k:
            raise PreconditionError(f"cannot keep {k} of {self.k} basis matrices")
        if k == self.k:
            return self
        return FerrersCode(
            self.diagram, self.field, self.delta, self.basis[:k], {"method": "truncate", "k": k, "of": self.provenance}
        )

    # -- certification -----------------------------------------------------------------

    def search_size(self) -> int:
        return projective_size([1] * self.k, self.q)

    def search(self, budget: int = DEFAULT_BUDGET, workers: int = 1) -> SearchResult:
        """Exhaustive minimum rank over the nonzero codewords (one per GF(q)-line)."""
        if self.k == 0:
            raise PreconditionError("the zero code has no minimum distance")
        needed = self.search_size()
        if needed > budget:
            raise BudgetExceededError(needed, budget)
        stack = self.stack
        groups = [stack[i : i + 1] for i in range(self.k)]
        return projective_min_rank(groups, self.field, workers=workers)

    # -- serialization -------------------------------------------------------------------

    def to_text(self) -> str:
        lines = [
            "ferrers-code",
            f"field: {self.field.descriptor}",
            f"delta: {self.delta}",
            f"m: {self.diagram.m}",
            f"gamma: {' '.join(map(str, self.diagram.gamma))}",
            f"provenance: {json.dumps(self.provenance, sort_keys=True)}",
            f"basis: {self.k}",
        ]
        text = "\n".join(lines) + "\n"
        for B in self.basis:
            text += B.to_text(header=False)
        return text

    @classmethod
    def from_text(cls, text: str) -> FerrersCode:
        lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
        lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
        if not lines or lines[0][1] != "ferrers-code":
            raise ParseError("expected 'ferrers-code' header", lines[0][0] if lines else None)
        header: dict[str, tuple[int, str]] = {}
        pos = 1
        for key in ("field", "delta", "m", "gamma", "provenance", "basis"):
            if pos >= len(lines):
                raise ParseError(f"file truncated before '{key}:'", lines[-1][0])
            lineno, ln = lines[pos]
            name, _, value = ln.partition(":")
            if name.strip() != key:
                raise ParseError(f"expected '{key}:'", lineno)
            header[key] = (lineno, value.strip())
            pos += 1

        def get(key, conv):
            lineno, value = header[key]
            try:
                return conv(value)
            except (ValueError, PreconditionError) as exc:
                raise ParseError(f"bad {key}: {exc}", lineno) from None

        field = get("field", parse_descriptor)
        delta = get("delta", int)
        m = get("m", int)
        gamma = get("gamma", lambda v: tuple(int(x) for x in v.split()))
        diagram = get("gamma", lambda v: FerrersDiagram(m, gamma))
        provenance = get("provenance", json.loads)
        k = get("basis", int)
        rest = lines[pos:]
        basis = []
        for _ in range(k):
            if not rest:
                raise ParseError(f"file truncated: expected {k} basis matrices", lines[-1][0])
            lineno = rest[0][0]
            mat, rest = parse_matrix_block(rest, field)
            if mat.shape != diagram.shape:
                raise ParseError(f"basis matrix shape {mat.shape} differs from diagram", lineno)
            basis.append(mat)
        if rest:
            raise ParseError("trailing content after basis", rest[0][0])
        return cls(diagram, field, delta, tuple(basis), provenance)

    def to_json(self) -> dict:
        return {
            "field": self.field.descriptor,
            "q": self.q,
            "delta": self.delta,
            "diagram": self.diagram.to_json(),
            "provenance": self.provenance,
            "k": self.k,
            "basis": [B.tolist() for B in self.basis],
        }

    @classmethod
    def from_json(cls, obj: dict) -> FerrersCode:
        field = parse_descriptor(obj["field"])
        diagram = FerrersDiagram.from_json(obj["diagram"])
        basis = tuple(Mat(field, b) for b in obj["basis"])
        return cls(diagram, field, int(obj["delta"]), basis, obj.get("provenance", {}))


def _dots_within(small: FerrersDiagram, host: FerrersDiagram) -> bool:
    a, b = small.shape
    return bool(np.all(host.mask[:a, host.n - b :] | ~small.mask))


def zero_code(diagram: FerrersDiagram, field: Field, delta: int, provenance: dict | None = None) -> FerrersCode:
    return FerrersCode(diagram, field, delta, (), provenance or {"method": "zero"})
