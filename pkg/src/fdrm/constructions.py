"""Constructions of Ferrers diagram rank-metric codes and an automatic selector.

Every construction returns a :class:`~fdrm.code.FerrersCode` given by an
explicit basis.  Subcodes are always obtained by restricting message
coordinates, so building a code never enumerates codewords.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field as dc_field

import numpy as np

from fdrm.code import FerrersCode, zero_code
from fdrm.errors import BudgetExceededError, PreconditionError
from fdrm.ferrers import FerrersDiagram
from fdrm.field import Field, field_create, gf, phi_expand
from fdrm.gabidulin import gabidulin_generator, lemma3_matrix, polynomial_basis, systematize
from fdrm.linalg import Mat
from fdrm.mds import mds_generator
from fdrm.search import DEFAULT_BUDGET


def base_field(q: int | Field) -> Field:
    if isinstance(q, Field):
        if q.m != 1:
            raise PreconditionError("codes are linear over a base field GF(q)")
        return q
    return gf(q)


def extension(field: Field, mu: int) -> Field:
    """GF(q^mu) over the given GF(q)."""
    return field_create(field.p, field.e, mu, base_modulus=field.base_modulus)


def _expand(E: Field, scalar: int, row: list[int]) -> np.ndarray:
    return phi_expand(E, [E.mul(scalar, x) for x in row]).data


def _tall(F: FerrersDiagram) -> bool:
    return F.n <= F.m


# -- systematic shortened MRD codes --------------------------------------------------


def es_dimension(F: FerrersDiagram, delta: int) -> int:
    """Dimension of :func:`construct_es`, or PreconditionError if it does not apply."""
    F._check_delta(delta)
    if not _tall(F):
        return es_dimension(F.anti_transpose(), delta)
    short = [j for j in range(F.n - delta + 1, F.n) if F.gamma[j] != F.m]
    if short:
        raise PreconditionError(
            f"the {delta - 1} rightmost columns must be full (height {F.m}); columns {short} are not"
        )
    return sum(F.gamma[: F.n - delta + 1])


def construct_es(F: FerrersDiagram, delta: int, q: int | Field) -> FerrersCode:
    """Subcode of a systematic Gabidulin code whose information columns follow the diagram.

    Needs the ``delta - 1`` rightmost columns full.  A diagram wider than it
    is tall is handled through its anti-transpose (then the top ``delta - 1``
    rows must be full).
    """
    field = base_field(q)
    es_dimension(F, delta)
    if not _tall(F):
        inner = construct_es(F.anti_transpose(), delta, field).anti_transpose()
        return FerrersCode(F, field, delta, inner.basis, {"method": "es", "delta": delta, "orientation": "anti_transpose"})
    m, n = F.shape
    E = extension(field, m)
    G = systematize(gabidulin_generator(m, n, delta, E)).matrix
    betas = polynomial_basis(E)
    basis = []
    for i in range(n - delta + 1):
        row = G.row(i)
        for r in range(F.gamma[i]):
            basis.append(Mat(field, _expand(E, betas[r], row)))
    return FerrersCode(F, field, delta, tuple(basis), {"method": "es", "delta": delta})


# -- MDS codes on diagonals --------------------------------------------------------


def diagonal_dots(F: FerrersDiagram, i: int) -> list[tuple[int, int]]:
    """Dotted cells of diagonal i, top to bottom."""
    return sorted(c for c in F.diagonal(i) if F.has_dot(*c))


def mds_dimension(F: FerrersDiagram, delta: int, q: int) -> int:
    F._check_delta(delta)
    k = 0
    for theta in F.theta:
        if theta < delta:
            continue
        if delta not in (1, 2, theta) and theta > q + 1:
            raise PreconditionError(f"no [{theta}, {theta - delta + 1}, {delta}] MDS code over GF({q}): need q >= {theta - 1}")
        k += theta - delta + 1
    return k


def construct_mds_diagonals(F: FerrersDiagram, delta: int, q: int | Field) -> FerrersCode:
    """Independent MDS codes of distance delta on the dots of each diagonal.

    A nonzero codeword has a lowest nonzero diagonal; the cells of that
    diagonal span a triangular submatrix, so the rank is at least the Hamming
    weight there.
    """
    field = base_field(q)
    mds_dimension(F, delta, field.order)
    basis = []
    for i, theta in enumerate(F.theta):
        if theta < delta:
            continue
        cells = diagonal_dots(F, i)
        G = mds_generator(theta, delta, field).matrix
        for row in G.tolist():
            out = np.zeros(F.shape, dtype=np.int64)
            for (r, c), x in zip(cells, row):
                out[r, c] = x
            basis.append(Mat(field, out))
    return FerrersCode(F, field, delta, tuple(basis), {"method": "mds", "delta": delta})


# -- subcodes of MRD codes -------------------------------------------------------------


def subcode_dimension(F: FerrersDiagram, delta: int) -> int:
    F._check_delta(delta)
    if not _tall(F):
        return subcode_dimension(F.anti_transpose(), delta)
    m, n = F.shape
    if n < 2 or delta < 2:
        raise PreconditionError("the subcode construction needs n >= 2 and delta >= 2")
    short = [j for j in range(n - delta + 1, n) if F.gamma[j] < n - 1]
    if short:
        raise PreconditionError(f"the {delta - 1} rightmost columns need at least {n - 1} dots; columns {short} do not")
    s = m - n + 1
    kappa = n - delta + 1
    return min(s, F.gamma[0], n - 1) + sum(min(F.gamma[i], n - 1) for i in range(1, kappa))


def construct_subcode(F: FerrersDiagram, delta: int, q: int | Field) -> FerrersCode:
    """Subcode of an MRD code on ``n - 1`` rows, extended by ``m - n + 1`` rows that repeat
    the first message coordinate in the rightmost column.

    The generator comes from :func:`fdrm.gabidulin.lemma3_matrix` over
    GF(q^(n-1)) with distance ``delta - 1``.
    """
    field = base_field(q)
    subcode_dimension(F, delta)
    if not _tall(F):
        inner = construct_subcode(F.anti_transpose(), delta, field).anti_transpose()
        return FerrersCode(
            F, field, delta, inner.basis, {"method": "subcode", "delta": delta, "orientation": "anti_transpose"}
        )
    m, n = F.shape
    s = m - n + 1
    kappa = n - delta + 1
    E = extension(field, n - 1)
    G = lemma3_matrix(n - 1, n, delta - 1, E)
    betas = polynomial_basis(E)
    basis = []
    for i in range(kappa):
        free = min(s, F.gamma[0], n - 1) if i == 0 else min(F.gamma[i], n - 1)
        row = G.row(i)
        for r in range(free):
            out = np.zeros((m, n), dtype=np.int64)
            out[: n - 1] = _expand(E, betas[r], row)
            if i == 0:
                out[n - 1 + r, n - 1] = 1
            basis.append(Mat(field, out))
    return FerrersCode(F, field, delta, tuple(basis), {"method": "subcode", "delta": delta})


# -- combining codes ------------------------------------------------------------------


def combine_same_dimension(
    C1: FerrersCode, C2: FerrersCode, filler: tuple[int, int] | None = None
) -> FerrersCode:
    """Block-diagonal pairing of two codes of equal dimension; distances add.

    The result has ``C1`` in the top-left, a full ``m3 x n3`` filler block in
    the top-right (default ``m1 x n2``) and ``C2`` in the bottom-right.
    """
    if C1.field != C2.field:
        raise PreconditionError("codes over different fields")
    if C1.k != C2.k:
        raise PreconditionError(f"dimensions differ: {C1.k} vs {C2.k}")
    if C1.k == 0:
        raise PreconditionError("combining zero-dimensional codes gives no distance guarantee")
    (m1, n1), (m2, n2) = C1.diagram.shape, C2.diagram.shape
    m3, n3 = filler if filler is not None else (m1, n2)
    if m3 < m1 or n3 < n2:
        raise PreconditionError(f"filler {m3}x{n3} must be at least {m1}x{n2}")
    gamma = C1.diagram.gamma + (m3,) * (n3 - n2) + tuple(m3 + g for g in C2.diagram.gamma)
    F = FerrersDiagram(m3 + m2, gamma)
    m, n = F.shape
    basis = []
    for A, B in zip(C1.basis, C2.basis):
        out = np.zeros((m, n), dtype=np.int64)
        out[:m1, :n1] = A.data
        out[m3:, n - n2 :] = B.data
        basis.append(Mat(C1.field, out))
    prov = {
        "method": "combine_same_dimension",
        "filler": [m3, n3],
        "parts": [C1.provenance, C2.provenance],
    }
    return FerrersCode(F, C1.field, C1.delta + C2.delta, tuple(basis), prov)


def combine_same_distance(C1: FerrersCode, C2: FerrersCode, ell: int) -> FerrersCode:
    """Stack two codes of the same distance sharing ``ell`` full columns; dimensions add.

    ``C2`` occupies the top rows on the right; ``C1`` is split so that its
    first ``n1 - ell`` columns sit top-left and its last ``ell`` columns sit
    below ``C2`` in the rightmost columns.  With ``ell = 0`` the codes are
    simply placed side by side.
    """
    if C1.field != C2.field:
        raise PreconditionError("codes over different fields")
    if C1.delta != C2.delta:
        raise PreconditionError(f"distances differ: {C1.delta} vs {C2.delta}")
    F1, F2 = C1.diagram, C2.diagram
    (m1, n1), (m2, n2) = F1.shape, F2.shape
    if not 0 <= ell <= min(n1, n2):
        raise PreconditionError(f"ell={ell} out of range")
    if any(h != m1 for h in F1.gamma[n1 - ell :]) or any(h != m2 for h in F2.gamma[n2 - ell :]):
        raise PreconditionError(f"the {ell} rightmost columns of both diagrams must be full")
    c = n1 - ell
    if c and F2.gamma[0] < F1.gamma[c - 1]:
        raise PreconditionError("second diagram's first column is shorter than the first diagram's last kept column")
    if ell == 0:
        if m1 > m2:
            raise PreconditionError("side-by-side placement needs m1 <= m2")
        gamma = F1.gamma + F2.gamma
        F = FerrersDiagram(m2, gamma)
    else:
        gamma = F1.gamma[:c] + F2.gamma[: n2 - ell] + (m1 + m2,) * ell
        F = FerrersDiagram(m1 + m2, gamma)
    m, n = F.shape
    basis = []
    for A in C1.basis:
        out = np.zeros((m, n), dtype=np.int64)
        out[:m1, :c] = A.data[:, :c]
        if ell:
            out[m2:, n - ell :] = A.data[:, c:]
        basis.append(Mat(C1.field, out))
    for B in C2.basis:
        out = np.zeros((m, n), dtype=np.int64)
        out[:m2, c:] = B.data
        basis.append(Mat(C1.field, out))
    prov = {"method": "combine_same_distance", "ell": ell, "parts": [C1.provenance, C2.provenance]}
    return FerrersCode(F, C1.field, C1.delta, tuple(basis), prov)


# -- square diagrams, distance 3 ----------------------------------------------------------


def construct_square_delta3(F: FerrersDiagram, q: int | Field = 2) -> FerrersCode:
    """Code attaining the dimension bound for a square diagram and distance 3.

    If the bound is attained by deleting two full columns (or two full rows)
    the shortened MRD construction applies.  Otherwise the first column has a
    single dot and a top-right square subdiagram carries a subcode
    construction; the dots outside it are not needed.
    """
    field = base_field(q)
    if F.m != F.n:
        raise PreconditionError(f"diagram must be square, got {F.m}x{F.n}")
    n = F.n
    if n < 3:
        raise PreconditionError("distance 3 needs at least 3 columns")
    bound = F.bound(3)
    nu0, _, nu2 = bound.nu
    gamma, rho = F.gamma, F.rho
    if gamma[n - 2] == n and nu0 == bound.value:
        code = construct_es(F, 3, field)
        return _tag(code, "square3", case="columns")
    if rho[1] == n and nu2 == bound.value:
        code = construct_es(F.anti_transpose(), 3, field).anti_transpose()
        return _tag(FerrersCode(F, field, 3, code.basis), "square3", case="rows")
    if gamma[n - 2] >= rho[1]:
        a = gamma[n - 2] + 1
        if a < 3:
            return zero_code(F, field, 3, {"method": "square3", "case": "empty"})
        sub = F.top_right(a)
        code = construct_subcode(sub, 3, field).embed_top_right(F, "embed")
        return _tag(code, "square3", case="subdiagram", size=a)
    T = F.anti_transpose()
    a = T.gamma[n - 2] + 1
    if a < 3:
        return zero_code(F, field, 3, {"method": "square3", "case": "empty"})
    code = construct_subcode(T.top_right(a), 3, field).embed_top_right(T, "embed").anti_transpose()
    return _tag(FerrersCode(F, field, 3, code.basis, code.provenance), "square3", case="subdiagram_transposed", size=a)


def _tag(code: FerrersCode, method: str, **params) -> FerrersCode:
    prov = {"method": method, **params, "of": code.provenance}
    return FerrersCode(code.diagram, code.field, code.delta, code.basis, prov)


# -- automatic selection ----------------------------------------------------------------------


@dataclass
class Plan:
    """A candidate construction: its dimension (known in advance) and how to build it."""

    k: int
    path: str
    build: Callable[[], FerrersCode] = dc_field(repr=False)


@dataclass
class AutoReport:
    k: int
    bound: int
    optimal: bool
    path: str
    attempts: list[tuple[str, int | str]]
    verified_distance: int | None = None
    diagnostic: str = ""

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "bound": self.bound,
            "optimal": self.optimal,
            "path": self.path,
            "attempts": [list(a) for a in self.attempts],
            "verified_distance": self.verified_distance,
            "diagnostic": self.diagnostic,
        }


class _Planner:
    """Dimension-first search over constructions and their combinations, memoized per diagram."""

    def __init__(self, field: Field) -> None:
        self.field = field
        self.memo: dict[tuple, Plan | None] = {}

    def direct(self, F: FerrersDiagram, delta: int, log: list | None = None) -> list[Plan]:
        field, q = self.field, self.field.order
        plans: list[Plan] = []

        def attempt(name: str, dim: Callable[[], int], build: Callable[[], FerrersCode]) -> None:
            try:
                k = dim()
            except PreconditionError as exc:
                if log is not None:
                    log.append((name, f"n/a: {exc}"))
                return
            if log is not None:
                log.append((name, k))
            plans.append(Plan(k, name, build))

        attempt("es", lambda: es_dimension(F, delta), lambda: construct_es(F, delta, field))
        if F.m == F.n and delta == 3:
            attempt(
                "square3",
                lambda: construct_square_delta3(F, field).k,
                lambda: construct_square_delta3(F, field),
            )
        attempt("subcode", lambda: subcode_dimension(F, delta), lambda: construct_subcode(F, delta, field))
        if F.m == F.n:
            T = F.anti_transpose()
            attempt(
                "subcode(anti_transpose)",
                lambda: subcode_dimension(T, delta),
                lambda: _retag(construct_subcode(T, delta, field).anti_transpose(), F),
            )
        attempt("mds", lambda: mds_dimension(F, delta, q), lambda: construct_mds_diagonals(F, delta, field))
        return plans

    def embedded(self, F: FerrersDiagram, delta: int) -> list[Plan]:
        plans = []
        for a in range(delta, F.m + 1):
            for b in range(delta, F.n + 1):
                if (a, b) == F.shape:
                    continue
                S = F.top_right(a, b)
                for p in self.direct(S, delta):
                    plans.append(
                        Plan(p.k, f"embed[{a}x{b}]({p.path})", _embedder(p.build, F, a, b))
                    )
        return plans

    def splits(self, F: FerrersDiagram, delta: int, depth: int) -> list[Plan]:
        plans = []
        m, n = F.shape
        g = F.gamma
        # same-dimension splits: top-left part, full filler, bottom-right part
        if delta >= 2:
            for n1 in range(1, n):
                m1 = g[n1 - 1]
                for m3 in range(m1, min(g[n1], m - 1) + 1):
                    if m3 < 1:
                        continue
                    F1 = FerrersDiagram(m1, g[:n1])
                    tail = tuple(h - m3 for h in g[n1:] if h > m3)
                    F2 = FerrersDiagram(m - m3, tail)
                    for d1 in range(1, delta):
                        d2 = delta - d1
                        if d1 > min(F1.shape) or d2 > min(F2.shape):
                            continue
                        p1 = self.best(F1, d1, depth - 1)
                        p2 = self.best(F2, d2, depth - 1)
                        if p1 is None or p2 is None:
                            continue
                        k = min(p1.k, p2.k)
                        if k == 0:
                            continue
                        path = f"combine_same_dimension[n1={n1},m3={m3},d1={d1}]({p1.path} | {p2.path})"
                        plans.append(Plan(k, path, _pairer(p1.build, p2.build, k, (m3, n - n1))))
        # same-distance splits: cut off the top rows on the right, share ell full columns
        full = sum(1 for h in g if h == m)
        for ell in range(1, full + 1):
            for m2 in range(1, m):
                m1 = m - m2
                for c in range(0, n - ell + 1):
                    if c and g[c - 1] > m1:
                        continue
                    if any(h > m2 for h in g[c : n - ell]):
                        continue
                    F1 = FerrersDiagram(m1, g[:c] + (m1,) * ell)
                    F2 = FerrersDiagram(m2, g[c : n - ell] + (m2,) * ell)
                    if delta > min(F1.shape) or delta > min(F2.shape):
                        continue
                    p1 = self.best(F1, delta, depth - 1)
                    p2 = self.best(F2, delta, depth - 1)
                    if p1 is None or p2 is None or p1.k + p2.k == 0:
                        continue
                    path = f"combine_same_distance[ell={ell},m2={m2},c={c}]({p1.path} | {p2.path})"
                    plans.append(Plan(p1.k + p2.k, path, _stacker(p1.build, p2.build, ell)))
        return plans

    def candidates(self, F: FerrersDiagram, delta: int, depth: int, log: list | None = None) -> list[Plan]:
        plans = self.direct(F, delta, log)
        plans += self.embedded(F, delta)
        if depth > 0:
            plans += self.splits(F, delta, depth)
        return plans

    def best(self, F: FerrersDiagram, delta: int, depth: int) -> Plan | None:
        key = (F.m, F.gamma, delta, depth)
        if key not in self.memo:
            plans = self.candidates(F, delta, depth)
            self.memo[key] = _pick(plans)
        return self.memo[key]


def _pick(plans: list[Plan]) -> Plan | None:
    best = None
    for p in plans:
        if best is None or p.k > best.k:
            best = p
    return best


def _retag(code: FerrersCode, F: FerrersDiagram) -> FerrersCode:
    return FerrersCode(F, code.field, code.delta, code.basis, code.provenance)


def _embedder(build, F: FerrersDiagram, a: int, b: int):
    def run() -> FerrersCode:
        return build().embed_top_right(F, f"embed[{a}x{b}]")

    return run


def _pairer(build1, build2, k: int, filler: tuple[int, int]):
    def run() -> FerrersCode:
        return combine_same_dimension(build1().truncate(k), build2().truncate(k), filler)

    return run


def _stacker(build1, build2, ell: int):
    def run() -> FerrersCode:
        return combine_same_distance(build1(), build2(), ell)

    return run


def auto_construct(
    F: FerrersDiagram,
    delta: int,
    q: int | Field,
    *,
    depth: int = 2,
    budget: int = DEFAULT_BUDGET,
) -> tuple[FerrersCode, AutoReport]:
    """Best code found among all constructions and bounded combinations of them.

    Candidates are ranked by dimension (ties keep the first in a fixed
    order).  The winner is certified by enumeration when its size is within
    ``budget``; a candidate failing certification is discarded.
    """
    field = base_field(q)
    F._check_delta(delta)
    bound = F.upper_bound(delta)
    planner = _Planner(field)
    log: list[tuple[str, int | str]] = []
    plans = planner.candidates(F, delta, depth, log)
    ranked = sorted(enumerate(plans), key=lambda t: (-t[1].k, t[0]))
    diagnostic = ""
    for _, plan in ranked:
        if plan.k == 0:
            break
        code = plan.build()
        if code.k != plan.k or code.diagram != F or not code.conforms():
            diagnostic += f"{plan.path}: built code is inconsistent; "
            continue
        verified = None
        try:
            verified = code.search(budget).min_rank
        except BudgetExceededError:
            pass
        if verified is not None and verified < delta:
            diagnostic += f"{plan.path}: certified distance {verified} < {delta}; "
            continue
        report = AutoReport(code.k, bound, code.k == bound, plan.path, log, verified, diagnostic.strip())
        return code, report
    diagnostic += "no construction applies; returning the zero code"
    code = zero_code(F, field, delta, {"method": "zero"})
    return code, AutoReport(0, bound, bound == 0, "zero", log, None, diagnostic.strip())


def describe(provenance: dict) -> str:
    """One-line summary of a provenance tree."""
    method = provenance.get("method", "?")
    params = ",".join(f"{k}={v}" for k, v in provenance.items() if k not in ("method", "parts", "of"))
    head = f"{method}[{params}]" if params else method
    if "parts" in provenance:
        return head + "(" + " | ".join(describe(p) for p in provenance["parts"]) + ")"
    if "of" in provenance:
        return head + "(" + describe(provenance["of"]) + ")"
    return head
