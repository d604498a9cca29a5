"""Vectorized exhaustive rank search over GF(q)-linear spans of matrices.

A span ``{offset + sum_i c_i B_i : c in GF(q)^k}`` is enumerated as a
radix-q counter over the basis (basis 0 varies fastest).  The low digits
are materialized as one numpy block; the high digits are walked one
offset at a time, so memory stays bounded while the ranks of each block
are computed by a batched Gaussian elimination.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from fdrm.errors import PreconditionError
from fdrm.field import Field

# Upper limit on entries (matrices * rows * cols) held in one block.
BLOCK_ENTRIES = 1 << 22

# Default number of matrices an exhaustive search may visit.
DEFAULT_BUDGET = 1 << 22


class Arith:
    """Numpy arithmetic for a base field GF(q); picklable for worker processes."""

    def __init__(self, field: Field) -> None:
        if field.m != 1:
            raise PreconditionError("vectorized arithmetic needs a base field GF(q)")
        self.q = field.q
        self.binary = field.q == 2
        self.prime = field.is_prime_field
        if self.binary:
            self.dtype = np.uint8
        elif self.prime and field.q < 1 << 15:
            self.dtype = np.int32
        else:
            add, mul, neg, inv = field.dense_tables
            self.dtype = np.intp
            self._add = add.astype(np.intp)
            self._mul = mul.astype(np.intp)
            self._neg = neg.astype(np.intp)
        inv = np.zeros(field.q, dtype=np.int64)
        for a in range(1, field.q):
            inv[a] = field.inv(a)
        self.inv = inv.astype(self.dtype)

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.binary:
            return a ^ b
        if self.prime:
            return (a + b) % self.q
        return self._add[a, b]

    def sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.binary:
            return a ^ b
        if self.prime:
            return (a - b) % self.q
        return self._add[a, self._neg[b]]

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.binary:
            return a & b
        if self.prime:
            return (a * b) % self.q
        return self._mul[a, b]

    def asarray(self, x) -> np.ndarray:
        return np.asarray(x).astype(self.dtype)


def batch_rank(mats: np.ndarray, arith: Arith) -> np.ndarray:
    """Ranks of a stack ``(N, r, c)`` of matrices over GF(q)."""
    A = arith.asarray(mats)
    N, r, c = A.shape
    if c > r:
        A = np.ascontiguousarray(A.transpose(0, 2, 1))
        r, c = c, r
    used = np.zeros((N, r), dtype=bool)
    idx = np.arange(N)
    for j in range(c):
        col = A[:, :, j]
        cand = (col != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = cand.argmax(axis=1)
        prow = A[idx, piv]  # (N, c)
        scale = arith.inv[prow[:, j]]  # inv[0] == 0 kills rows without pivot
        factors = arith.mul(col, scale[:, None])
        factors[idx, piv] = 0
        factors[used] = 0
        A = arith.sub(A, arith.mul(factors[:, :, None], prow[:, None, :]))
        used[idx[has], piv[has]] = True
    return used.sum(axis=1)


@dataclass(frozen=True)
class SearchResult:
    """Outcome of an exhaustive search; ``witness`` is a matrix attaining ``min_rank``."""

    min_rank: int | None
    checked: int
    witness: np.ndarray | None = None

    def merge(self, other: SearchResult) -> SearchResult:
        if other.min_rank is None:
            return SearchResult(self.min_rank, self.checked + other.checked, self.witness)
        if self.min_rank is None or other.min_rank < self.min_rank:
            return SearchResult(other.min_rank, self.checked + other.checked, other.witness)
        return SearchResult(self.min_rank, self.checked + other.checked, self.witness)


def hamming_weights(vectors: np.ndarray, arith: Arith | None = None) -> np.ndarray:
    """Number of nonzero entries of each matrix in a stack."""
    return (np.asarray(vectors) != 0).reshape(len(vectors), -1).sum(axis=1)


_MEASURES = {"rank": batch_rank, "hamming": hamming_weights}


def _low_block(basis: np.ndarray, arith: Arith) -> np.ndarray:
    r, c = basis.shape[1:]
    S = np.zeros((1, r, c), dtype=arith.dtype)
    for B in basis:
        B = arith.asarray(B)
        blocks = [S]
        for coef in range(1, arith.q):
            blocks.append(arith.add(S, arith.mul(arith.asarray(coef), B)[None]))
        S = np.concatenate(blocks, axis=0)
    return S


def _scan(
    arith: Arith,
    low: np.ndarray,
    high: np.ndarray,
    offset: np.ndarray,
    start: int,
    stop: int,
    skip_zero: bool,
    measure: str = "rank",
) -> SearchResult:
    weigh = _MEASURES[measure]
    result = SearchResult(None, 0)
    nh = len(high)
    for h in range(start, stop):
        off = offset
        rest = h
        for i in range(nh):
            rest, d = divmod(rest, arith.q)
            if d:
                off = arith.add(off, arith.mul(arith.asarray(d), high[i]))
        block = arith.add(low, off[None])
        ranks = weigh(block, arith)
        if skip_zero and h == 0:
            ranks[0] = np.iinfo(np.int64).max
            count = len(block) - 1
        else:
            count = len(block)
        if count == 0:
            continue
        i = int(ranks.argmin())
        result = result.merge(SearchResult(int(ranks[i]), count, block[i].astype(np.int64)))
    return result


def span_min_rank(
    basis: np.ndarray,
    field: Field,
    offset: np.ndarray | None = None,
    *,
    workers: int = 1,
    measure: str = "rank",
) -> SearchResult:
    """Minimum weight (rank or Hamming) over ``offset + span(basis)``.

    Without an offset the zero combination is excluded, so the result is the
    minimum weight of the nonzero elements of the span.
    """
    arith = Arith(field)
    basis = arith.asarray(basis)
    k = len(basis)
    if offset is None:
        if k == 0:
            return SearchResult(None, 0)
        r, c = basis.shape[1:]
        offset_arr = np.zeros((r, c), dtype=arith.dtype)
        skip_zero = True
    else:
        offset_arr = arith.asarray(offset)
        r, c = offset_arr.shape
        basis = basis.reshape(k, r, c)
        skip_zero = False
    per_matrix = max(r * c, 1)
    L = 0
    while L < k and arith.q ** (L + 1) * per_matrix <= BLOCK_ENTRIES:
        L += 1
    low = _low_block(basis[:L], arith) if L else np.zeros((1, r, c), dtype=arith.dtype)
    high = basis[L:]
    n_high = arith.q ** len(high)
    if workers <= 1 or n_high < 2 * workers:
        return _scan(arith, low, high, offset_arr, 0, n_high, skip_zero, measure)
    bounds = np.linspace(0, n_high, workers + 1).astype(int)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(
            _scan,
            itertools.repeat(arith),
            itertools.repeat(low),
            itertools.repeat(high),
            itertools.repeat(offset_arr),
            bounds[:-1].tolist(),
            bounds[1:].tolist(),
            itertools.repeat(skip_zero),
            itertools.repeat(measure),
        )
        result = SearchResult(None, 0)
        for part in parts:
            result = result.merge(part)
    return result


def span_size(k: int, q: int) -> int:
    """Nonzero elements visited by :func:`span_min_rank` on a k-element basis."""
    return q**k - 1


def projective_size(group_sizes: list[int], q: int) -> int:
    """Matrices visited by :func:`projective_min_rank` for groups of the given sizes."""
    total = 0
    for i, g in enumerate(group_sizes):
        if g:
            total += q ** sum(group_sizes[i + 1 :])
    return total


def projective_min_rank(
    groups: list[np.ndarray], field: Field, *, workers: int = 1, measure: str = "rank"
) -> SearchResult:
    """Minimum rank weight of a code invariant under scaling, one representative per line.

    ``groups[i]`` spans the contribution of message coordinate i, with
    ``groups[i][0]`` the image of the unit coordinate.  When every nonzero
    scalar acts on codewords by a rank-preserving map (GF(q) scaling for
    GF(q)-linear codes, GF(q^mu) scaling for vector-represented codes), the
    messages whose leading nonzero coordinate is 1 already realize every
    rank that occurs.
    """
    result = SearchResult(None, 0)
    shapes = [g.shape[1:] for g in groups if len(g)]
    if not shapes:
        return result
    r, c = shapes[0]
    for i0, g in enumerate(groups):
        if not len(g):
            continue
        rest = [h for h in groups[i0 + 1 :] if len(h)]
        tail = np.concatenate(rest, axis=0) if rest else np.zeros((0, r, c), dtype=np.int64)
        result = result.merge(
            span_min_rank(tail, field, offset=g[0], workers=workers, measure=measure)
        )
    return result
