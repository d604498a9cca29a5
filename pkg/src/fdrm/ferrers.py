"""Ferrers diagrams and the upper bound on the dimension of Ferrers diagram codes.

A diagram is stored by its column heights: column ``j`` holds dots in its
top ``gamma[j]`` rows.  Heights are nondecreasing from left to right and the
rightmost column is full (``gamma[-1] == m``), so the top row and the
rightmost column are always completely dotted.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from fdrm.errors import ParseError, PreconditionError


@dataclass(frozen=True)
class BoundResult:
    value: int
    nu: tuple[int, ...]
    argmin: int


@dataclass(frozen=True)
class FerrersDiagram:
    """An ``m x n`` Ferrers diagram with column heights ``gamma``."""

    m: int
    gamma: tuple[int, ...]

    def __post_init__(self) -> None:
        g = tuple(int(x) for x in self.gamma)
        object.__setattr__(self, "gamma", g)
        if self.m < 1 or not g:
            raise PreconditionError("a diagram needs at least one row and one column")
        if g[0] < 1:
            raise PreconditionError("every column must contain a dot")
        if any(a > b for a, b in zip(g, g[1:])):
            raise PreconditionError(f"column heights must be nondecreasing: {g}")
        if g[-1] != self.m:
            raise PreconditionError(f"rightmost column must have height m={self.m}, got {g[-1]}")

    @classmethod
    def from_gamma(cls, gamma: Sequence[int], m: int | None = None) -> FerrersDiagram:
        gamma = tuple(int(x) for x in gamma)
        return cls(gamma[-1] if m is None else m, gamma)

    @classmethod
    def from_rows(cls, rho: Sequence[int]) -> FerrersDiagram:
        """Build from row lengths (dots right-aligned, nonincreasing from top)."""
        rho = [int(x) for x in rho]
        n = rho[0]
        return cls(len(rho), tuple(sum(1 for r in rho if r > n - 1 - j) for j in range(n)))

    @classmethod
    def full(cls, m: int, n: int) -> FerrersDiagram:
        return cls(m, (m,) * n)

    @classmethod
    def from_mask(cls, mask: np.ndarray | Sequence[Sequence[bool]]) -> FerrersDiagram:
        mask = np.asarray(mask, dtype=bool)
        gamma = tuple(int(mask[:, j].sum()) for j in range(mask.shape[1]))
        d = cls(mask.shape[0], gamma)
        if not np.array_equal(d.mask, mask):
            raise PreconditionError("dot pattern is not a Ferrers diagram")
        return d

    # -- shape --------------------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.gamma)

    @property
    def shape(self) -> tuple[int, int]:
        return self.m, self.n

    @cached_property
    def rho(self) -> tuple[int, ...]:
        """Row lengths, top to bottom."""
        return tuple(sum(1 for h in self.gamma if h > i) for i in range(self.m))

    @property
    def total(self) -> int:
        return sum(self.gamma)

    def has_dot(self, r: int, c: int) -> bool:
        return 0 <= c < self.n and 0 <= r < self.gamma[c]

    @cached_property
    def mask(self) -> np.ndarray:
        out = np.zeros((self.m, self.n), dtype=bool)
        for j, h in enumerate(self.gamma):
            out[:h, j] = True
        out.setflags(write=False)
        return out

    def dots(self) -> list[tuple[int, int]]:
        """All dot positions, column by column, top to bottom."""
        return [(r, c) for c, h in enumerate(self.gamma) for r in range(h)]

    def conforms(self, M) -> bool:
        """True if the matrix is zero outside the dots."""
        data = np.asarray(getattr(M, "data", M))
        return data.shape == self.shape and not data[~self.mask].any()

    # -- diagonals ------------------------------------------------------------------

    def diagonal(self, i: int) -> list[tuple[int, int]]:
        """Cells of diagonal ``i``: ``(i - t, n - 1 - t)`` inside the grid, from the top-right going up-left."""
        cells = []
        for t in range(self.n):
            r, c = i - t, self.n - 1 - t
            if 0 <= r < self.m:
                cells.append((r, c))
        return cells

    @property
    def n_diagonals(self) -> int:
        return self.m + self.n - 1

    def diagonal_of(self, r: int, c: int) -> int:
        return r + self.n - 1 - c

    @cached_property
    def theta(self) -> tuple[int, ...]:
        """Number of dots on each diagonal."""
        counts = [0] * self.n_diagonals
        for r, c in self.dots():
            counts[self.diagonal_of(r, c)] += 1
        return tuple(counts)

    # -- bound ------------------------------------------------------------------------

    def nu(self, delta: int) -> tuple[int, ...]:
        """Dots left after deleting the top ``i`` rows and the ``delta - 1 - i`` rightmost columns, for each i."""
        self._check_delta(delta)
        out = []
        for i in range(delta):
            keep = self.n - (delta - 1 - i)
            out.append(sum(max(0, h - i) for h in self.gamma[:keep]))
        return tuple(out)

    def bound(self, delta: int) -> BoundResult:
        nu = self.nu(delta)
        value = min(nu)
        return BoundResult(value, nu, nu.index(value))

    def upper_bound(self, delta: int) -> int:
        return self.bound(delta).value

    def _check_delta(self, delta: int) -> None:
        if not 1 <= delta <= min(self.m, self.n):
            raise PreconditionError(
                f"delta must satisfy 1 <= delta <= min(m, n) = {min(self.m, self.n)}, got {delta}"
            )

    # -- transforms -----------------------------------------------------------------

    def anti_transpose(self) -> FerrersDiagram:
        """Reflection in the anti-diagonal: cell (r, c) goes to (n - 1 - c, m - 1 - r)."""
        return FerrersDiagram(self.n, tuple(reversed(self.rho)))

    def top_right(self, a: int, b: int | None = None) -> FerrersDiagram:
        """The diagram restricted to the top ``a`` rows and rightmost ``b`` columns."""
        b = a if b is None else b
        if not (1 <= a <= self.m and 1 <= b <= self.n):
            raise PreconditionError(f"subdiagram {a}x{b} does not fit in {self.m}x{self.n}")
        return FerrersDiagram(a, tuple(min(h, a) for h in self.gamma[self.n - b :]))

    def contains(self, other: FerrersDiagram) -> bool:
        """True if ``other`` has the same shape and its dots are a subset of ours."""
        return other.shape == self.shape and all(a <= b for a, b in zip(other.gamma, self.gamma))

    # -- text forms ---------------------------------------------------------------------

    def render(self) -> str:
        return "\n".join(
            "".join("X" if self.mask[r, c] else "." for c in range(self.n)) for r in range(self.m)
        )

    def to_text(self) -> str:
        return f"m: {self.m}\ngamma: {' '.join(map(str, self.gamma))}\n"

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "gamma": list(self.gamma),
            "rho": list(self.rho),
            "theta": list(self.theta),
            "total": self.total,
        }

    @classmethod
    def from_json(cls, obj: dict) -> FerrersDiagram:
        return cls(int(obj["m"]), tuple(obj["gamma"]))

    @classmethod
    def parse(cls, text: str) -> FerrersDiagram:
        """Parse either a dot picture (rows of ``X``/``.``) or ``gamma:`` with optional ``m:`` lines."""
        lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
        lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
        if not lines:
            raise ParseError("empty diagram", None)
        if any(":" in ln for _, ln in lines):
            fields: dict[str, tuple[int, str]] = {}
            for lineno, ln in lines:
                key, _, value = ln.partition(":")
                key = key.strip().lower()
                if key not in ("m", "gamma"):
                    raise ParseError(f"unknown key {key!r}", lineno)
                fields[key] = (lineno, value)
            if "gamma" not in fields:
                raise ParseError("missing 'gamma:' line", lines[0][0])
            lineno, value = fields["gamma"]
            try:
                gamma = [int(x) for x in value.replace(",", " ").split()]
                m = int(fields["m"][1]) if "m" in fields else None
            except ValueError:
                raise ParseError("expected integers", lineno) from None
            if not gamma:
                raise ParseError("gamma is empty", lineno)
            try:
                return cls.from_gamma(gamma, m)
            except PreconditionError as exc:
                raise ParseError(str(exc), lineno) from None
        width = len(lines[0][1])
        rows = []
        for lineno, ln in lines:
            if len(ln) != width or set(ln) - set("X."):
                raise ParseError("dot rows must use X and . with equal widths", lineno)
            rows.append([ch == "X" for ch in ln])
        try:
            return cls.from_mask(rows)
        except PreconditionError as exc:
            raise ParseError(str(exc), lines[0][0]) from None

    def __str__(self) -> str:
        return self.render()


def anti_transpose_matrix(data: np.ndarray) -> np.ndarray:
    """Map an ``m x n`` array to the ``n x m`` array with (r, c) -> (n - 1 - c, m - 1 - r)."""
    return np.asarray(data)[::-1, ::-1].T.copy()


def enumerate_diagrams(m: int, n: int) -> Iterator[FerrersDiagram]:
    """All ``m x n`` Ferrers diagrams in lexicographic order of ``gamma``."""
    for head in itertools.combinations_with_replacement(range(1, m + 1), n - 1):
        yield FerrersDiagram(m, head + (m,))

