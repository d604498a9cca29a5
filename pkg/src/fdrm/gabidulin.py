"""Gabidulin codes from Moore matrices, their systematic forms, and a structured generator
whose row and column blocks are MRD codes of prescribed distances (used by the subcode
construction)."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from fdrm.errors import BudgetExceededError, PreconditionError
from fdrm.field import Field, find_independent, linearly_independent_over_base
from fdrm.linalg import Mat
from fdrm.mds import GeneratorMatrix
from fdrm.search import DEFAULT_BUDGET, SearchResult, projective_min_rank, projective_size


def polynomial_basis(field: Field) -> list[int]:
    """``1, alpha, ..., alpha^(m-1)`` as encoded elements."""
    return [field.q**j for j in range(field.m)]


def moore_matrix(field: Field, elements: Sequence[int], rows: int) -> Mat:
    """Matrix with entry (i, j) equal to ``elements[j]`` raised to ``q^i``."""
    return Mat(field, [[field.frobenius(g, i) for g in elements] for i in range(rows)])


def gabidulin_generator(mu: int, eta: int, delta: int, field: Field) -> GeneratorMatrix:
    """Moore generator of a Gab(mu x eta, delta) code on the first eta polynomial basis elements."""
    if field.m != mu:
        raise PreconditionError(f"field has extension degree {field.m}, expected {mu}")
    if not 1 <= eta <= mu:
        raise PreconditionError(f"need 1 <= eta <= mu, got eta={eta}, mu={mu}")
    if not 1 <= delta <= eta:
        raise PreconditionError(f"need 1 <= delta <= eta, got delta={delta}")
    kappa = eta - delta + 1
    g = polynomial_basis(field)[:eta]
    return GeneratorMatrix(moore_matrix(field, g, kappa), "rank", delta, mu)


def systematize(G: GeneratorMatrix | Mat) -> GeneratorMatrix | Mat:
    """Row-reduce so the first k columns form the identity; same code."""
    M = G.matrix if isinstance(G, GeneratorMatrix) else G
    R, _, pivots = M.row_reduce()
    if pivots != list(range(M.rows)):
        raise AssertionError("leading columns of the generator are singular")
    if isinstance(G, GeneratorMatrix):
        return GeneratorMatrix(R, G.metric, G.distance, G.mu)
    return R


def lemma3_matrix(mu: int, eta: int, d: int, field: Field) -> Mat:
    """A (eta - d) x eta generator over GF(q^mu) with an identity left block, a zero
    top-right corner and three MRD sub-blocks.

    With ``kappa = eta - d`` the result satisfies:

    * the first ``eta - 1`` columns generate an MRD code of distance ``d``;
    * rows ``1..kappa-1`` restricted to columns ``1..eta-2`` generate an MRD code of distance ``d``;
    * rows ``1..kappa-1`` restricted to columns ``1..eta-1`` generate an MRD code of distance ``d + 1``.

    Built from a Moore matrix by left multiplications with invertible matrices,
    so the code spanned by the first ``eta - 1`` columns is never changed.
    """
    if field.m != mu:
        raise PreconditionError(f"field has extension degree {field.m}, expected {mu}")
    if not 2 <= eta <= mu + 1:
        raise PreconditionError(f"need 2 <= eta <= mu + 1, got eta={eta}, mu={mu}")
    if not 1 <= d <= eta - 1:
        raise PreconditionError(f"need 1 <= d <= eta - 1, got d={d}")
    F = field
    kappa = eta - d
    g = polynomial_basis(F)[: eta - 1]
    if kappa == 1:
        return Mat(F, [g + [0]])

    rows = moore_matrix(F, g, kappa).tolist()
    # clear column 0 below the first row (g_0 = 1, so that column is all ones)
    for i in range(1, kappa):
        rows[i] = [F.sub(a, b) for a, b in zip(rows[i], rows[0])]
    # add a combination of the lower rows to the first one so that its entries 1..kappa-1 vanish
    system = Mat(F, [[rows[i][c] for i in range(1, kappa)] for c in range(1, kappa)])
    t = system.solve([F.neg(rows[0][c]) for c in range(1, kappa)])
    if t is None:
        raise AssertionError("first-row elimination system is singular")
    for i, ti in zip(range(1, kappa), t):
        rows[0] = [F.add(a, F.mul(ti, b)) for a, b in zip(rows[0], rows[i])]
    # consecutive differences turn rows 1.. into a Moore matrix on h_j = g_j^q - g_j
    for i in range(kappa - 1, 1, -1):
        rows[i] = [F.sub(a, b) for a, b in zip(rows[i], rows[i - 1])]
    h = [F.sub(F.frobenius(x), x) for x in g[1:]]
    extra = find_independent(F, h)
    rows[0].append(0)
    for i in range(1, kappa):
        rows[i].append(F.frobenius(extra, i - 1))
    M = Mat(F, rows)
    # normalize the lower block so its first kappa-1 columns are the identity
    T = M[1:, 1:kappa].inverse()
    lower = T @ M[1:, :]
    return Mat(F, np.vstack([M.data[:1], lower.data]))


# -- brute force ---------------------------------------------------------------------


def expand_rows(G: Mat, basis: Sequence[int] | None = None) -> list[np.ndarray]:
    """For each row g_i, the stack of expanded matrices of ``b * g_i`` over the basis elements b."""
    F = G.field
    basis = polynomial_basis(F) if basis is None else list(basis)
    if len(basis) != F.m or not linearly_independent_over_base(F, basis):
        raise PreconditionError("expansion needs a basis of the field over GF(q)")
    if basis[0] != 1:
        raise PreconditionError("first basis element must be 1")
    q, mu = F.q, F.m
    powers = q ** np.arange(mu, dtype=np.int64)
    groups = []
    for i in range(G.rows):
        row = G.data[i]
        scaled = np.array([[F.mul(b, int(x)) for x in row] for b in basis], dtype=np.int64)
        groups.append((scaled[:, None, :] // powers[None, :, None]) % q)
    return groups


def mrd_search(G: GeneratorMatrix | Mat, budget: int = DEFAULT_BUDGET, workers: int = 1) -> SearchResult:
    M = G.matrix if isinstance(G, GeneratorMatrix) else G
    if M.rows == 0:
        raise PreconditionError("the zero code has no minimum distance")
    F = M.field
    needed = projective_size([F.m] * M.rows, F.q)
    if needed > budget:
        raise BudgetExceededError(needed, budget)
    return projective_min_rank(expand_rows(M), F.base, workers=workers)


def mrd_min_rank_distance_bruteforce(
    G: GeneratorMatrix | Mat, budget: int = DEFAULT_BUDGET, workers: int = 1
) -> int:
    """Minimum rank of the expanded codewords ``u @ G`` over all nonzero messages u."""
    return int(mrd_search(G, budget, workers).min_rank)
