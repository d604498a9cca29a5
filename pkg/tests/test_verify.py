from __future__ import annotations

import csv
import io
import json
from dataclasses import replace

import numpy as np
import pytest

from fdrm.code import FerrersCode
from fdrm.constructions import construct_es, construct_mds_diagonals, construct_subcode
from fdrm.errors import BudgetExceededError
from fdrm.ferrers import FerrersDiagram
from fdrm.linalg import Mat
from fdrm.verify import check_code, min_rank_distance, sweep, sweep_csv

D = FerrersDiagram.from_gamma


def test_check_optimal_code():
    report = check_code(construct_subcode(D((1, 3, 3, 4)), 3, 2))
    assert report.conforms and report.independent
    assert report.status == "verified" and report.verified_distance == 3
    assert report.bound == report.k == 4 and report.optimal


def test_check_suboptimal_but_correct_code():
    code = construct_es(FerrersDiagram.full(3, 3), 2, 2).truncate(4)
    report = check_code(code)
    assert report.verified_distance == 2 and report.bound == 6
    assert not report.optimal


def test_duplicate_basis_is_not_independent():
    code = construct_subcode(D((1, 3, 3, 4)), 3, 2)
    dup = replace(code, basis=code.basis[:3] + (code.basis[0],))
    report = check_code(dup)
    assert not report.independent and not report.optimal
    # a dependent basis has a nontrivial zero combination
    assert report.verified_distance == 0


def test_corrupted_codeword_breaks_conformance():
    code = construct_subcode(D((1, 3, 3, 4)), 3, 2)
    bad = code.basis[0].data.copy()
    bad[3, 0] = 1  # outside the diagram
    corrupt = replace(code, basis=(Mat(code.basis[0].field, bad),) + code.basis[1:])
    report = check_code(corrupt)
    assert not report.conforms and not report.optimal


def test_wrong_claimed_distance_is_caught():
    code = construct_es(FerrersDiagram.full(3, 3), 2, 2)
    report = check_code(replace(code, delta=3))
    assert report.verified_distance == 2
    assert not report.optimal


def test_over_budget_is_unverified():
    code = construct_es(FerrersDiagram.full(4, 4), 2, 2)
    report = check_code(code, budget=100)
    assert report.status == "unverified" and report.verified_distance is None
    assert not report.optimal
    with pytest.raises(BudgetExceededError) as exc:
        min_rank_distance(code, budget=100)
    assert exc.value.budget == 100 and exc.value.needed > 100


def test_zero_code_is_vacuous():
    code = construct_mds_diagonals(FerrersDiagram(3, (1, 1, 3)), 3, 2)
    report = check_code(code)
    assert report.status == "vacuous" and report.k == 0 == report.bound
    assert report.optimal


def test_report_formats():
    report = check_code(construct_subcode(D((1, 3, 3, 4)), 3, 2))
    obj = json.loads(json.dumps(report.to_json()))
    assert obj["verified_distance"] == 3 and obj["optimal"] is True
    table = report.to_table().splitlines()
    assert table[0].split() == ["k", "4"]
    assert len({line.index(line.split()[1]) for line in table}) == 1


def test_parallel_check_matches_serial():
    code = construct_mds_diagonals(D((1, 2, 3, 4, 5)), 3, 4)
    assert check_code(code, workers=2) == check_code(code)


def test_sweep_square_delta3_has_no_gap():
    rows = sweep(4, 4, 3, 2)
    assert len(rows) == 20
    assert all(r.gap == 0 and r.verified in ("3", "vacuous") for r in rows)


def test_sweep_delta2_all_optimal():
    rows = sweep(3, 4, 2, 2)
    assert len(rows) == 10
    assert all(r.gap == 0 and r.verified == "2" for r in rows)


def test_sweep_single_cell():
    rows = sweep(1, 1, 1, 2)
    assert [(r.gamma, r.k, r.bound, r.verified) for r in rows] == [((1,), 1, 1, "1")]


def test_sweep_reports_known_gap():
    rows = {r.gamma: r for r in sweep(5, 4, 3, 2)}
    assert rows[(3, 3, 3, 5)].gap == 1


def test_sweep_csv_format():
    text = sweep_csv(sweep(2, 2, 2, 2))
    parsed = list(csv.reader(io.StringIO(text)))
    assert parsed[0] == ["gamma", "k", "bound", "gap", "path", "verified"]
    assert [row[0] for row in parsed[1:]] == ["1 2", "2 2"]
    assert all(row[3] == "0" for row in parsed[1:])


def test_independence_uses_field_rank():
    # over GF(3), B and 2B are dependent even though their entries differ
    code = construct_es(FerrersDiagram.full(2, 2), 2, 3)
    B = code.basis[0]
    twice = Mat(B.field, (2 * B.data) % 3)
    dup = FerrersCode(code.diagram, code.field, 2, (B, twice), {"method": "test"})
    assert not dup.is_independent()
    assert np.array_equal((B + B).data, twice.data)
