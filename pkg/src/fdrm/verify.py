"""Certification of Ferrers diagram codes: conformance, independence, exact distance, optimality."""

from __future__ import annotations

import csv
import io
from dataclasses import asdict, dataclass

from fdrm.code import FerrersCode
from fdrm.constructions import auto_construct, base_field
from fdrm.errors import BudgetExceededError
from fdrm.ferrers import enumerate_diagrams
from fdrm.search import DEFAULT_BUDGET


def min_rank_distance(code: FerrersCode, budget: int = DEFAULT_BUDGET, workers: int = 1) -> int:
    """Exact minimum rank weight of the nonzero codewords; raises if the code is zero or too large."""
    return int(code.search(budget, workers).min_rank)


@dataclass
class CheckReport:
    k: int
    delta: int
    conforms: bool
    independent: bool
    verified_distance: int | None
    status: str  # "verified", "unverified" (over budget) or "vacuous" (zero code)
    bound: int
    optimal: bool

    def to_json(self) -> dict:
        return asdict(self)

    def to_table(self) -> str:
        rows = [(name, str(value)) for name, value in asdict(self).items()]
        width = max(len(name) for name, _ in rows)
        return "\n".join(f"{name.ljust(width)}  {value}" for name, value in rows) + "\n"


def check_code(code: FerrersCode, budget: int = DEFAULT_BUDGET, workers: int = 1) -> CheckReport:
    conforms = code.conforms()
    independent = code.is_independent()
    bound = code.diagram.upper_bound(code.delta)
    distance = None
    if code.k == 0:
        status = "vacuous"
    else:
        try:
            distance = min_rank_distance(code, budget, workers)
            status = "verified"
        except BudgetExceededError:
            status = "unverified"
    certified = code.k == 0 or (distance is not None and distance >= code.delta)
    optimal = conforms and independent and code.k == bound and certified
    return CheckReport(code.k, code.delta, conforms, independent, distance, status, bound, optimal)


@dataclass
class SweepRow:
    gamma: tuple[int, ...]
    k: int
    bound: int
    path: str
    verified: str

    @property
    def gap(self) -> int:
        return self.bound - self.k


def sweep(m: int, n: int, delta: int, q: int, budget: int = DEFAULT_BUDGET, depth: int = 2) -> list[SweepRow]:
    """Best construction for every m x n diagram, with the gap to the dimension bound."""
    field = base_field(q)
    rows = []
    for F in enumerate_diagrams(m, n):
        if delta > min(m, n):
            continue
        code, report = auto_construct(F, delta, field, depth=depth, budget=budget)
        if code.k == 0:
            verified = "vacuous"
        elif report.verified_distance is None:
            verified = "unverified"
        else:
            verified = str(report.verified_distance)
        rows.append(SweepRow(F.gamma, code.k, report.bound, report.path, verified))
    return rows


def sweep_csv(rows: list[SweepRow]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["gamma", "k", "bound", "gap", "path", "verified"])
    for r in rows:
        writer.writerow([" ".join(map(str, r.gamma)), r.k, r.bound, r.gap, r.path, r.verified])
    return out.getvalue()
