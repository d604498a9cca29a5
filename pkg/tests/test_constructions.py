from __future__ import annotations

import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fdrm.code import FerrersCode
from fdrm.constructions import (
    auto_construct,
    combine_same_dimension,
    combine_same_distance,
    construct_es,
    construct_mds_diagonals,
    construct_square_delta3,
    construct_subcode,
    describe,
    es_dimension,
    mds_dimension,
    subcode_dimension,
)
from fdrm.errors import ParseError, PreconditionError
from fdrm.ferrers import FerrersDiagram, enumerate_diagrams
from fdrm.field import field_create, gf
from fdrm.linalg import Mat
from fdrm.verify import min_rank_distance
from tests.oracles import OracleField, naive_min_rank

D = FerrersDiagram.from_gamma


def _sound(code: FerrersCode) -> int:
    assert code.conforms()
    assert code.is_independent()
    d = min_rank_distance(code)
    assert d >= code.delta
    return d


# -- shortened MRD ----------------------------------------------------------------


def test_es_full_rectangle_is_mrd():
    code = construct_es(FerrersDiagram.full(4, 3), 2, 2)
    assert code.k == 4 * 2
    assert _sound(code) == 2


def test_es_example_diagram_delta_two():
    F = FerrersDiagram.parse("XXXX\nXXXX\n..XX\n..XX\n...X\n")
    code = construct_es(F, 2, 2)
    assert code.k == 8 == F.upper_bound(2)
    assert _sound(code) == 2
    assert naive_min_rank([B.tolist() for B in code.basis], OracleField(2, 2)) == 2


def test_es_needs_full_right_columns():
    with pytest.raises(PreconditionError, match="rightmost"):
        construct_es(D((1, 3, 3, 4)), 3, 2)


def test_es_wide_diagram_uses_rows():
    F = FerrersDiagram.full(2, 3)
    code = construct_es(F, 2, 2)
    assert code.diagram == F and code.k == 3
    assert _sound(code) == 2


def test_es_single_column():
    code = construct_es(FerrersDiagram.full(5, 1), 1, 3)
    assert code.k == 5


# -- MDS on diagonals ----------------------------------------------------------------


@pytest.mark.parametrize(
    "gamma,delta,q,k",
    [
        ((1, 2, 3, 4, 5), 3, 4, 6),
        ((2, 4, 4, 6, 8), 3, 4, 10),
        ((1, 1, 1, 3, 4, 6), 3, 3, 5),
    ],
)
def test_mds_diagonal_examples(gamma, delta, q, k):
    F = D(gamma)
    assert mds_dimension(F, delta, q) == k
    code = construct_mds_diagonals(F, delta, q)
    assert code.k == k == F.upper_bound(delta)
    assert code.conforms() and code.is_independent()


def test_mds_six_by_six_certified():
    code = construct_mds_diagonals(D((1, 1, 1, 3, 4, 6)), 3, 3)
    assert _sound(code) == 3


def test_mds_places_codewords_along_diagonals():
    F = D((1, 2, 3, 4, 5))
    code = construct_mds_diagonals(F, 3, 4)
    for B in code.basis:
        diagonals = {F.diagonal_of(r, c) for r, c in zip(*np.nonzero(B.data))}
        assert len(diagonals) == 1


def test_mds_empty_when_delta_exceeds_diagonals():
    F = FerrersDiagram(3, (1, 1, 3))
    code = construct_mds_diagonals(F, 3, 2)
    assert code.k == 0 and code.basis == ()


def test_mds_field_too_small():
    with pytest.raises(PreconditionError, match="MDS"):
        construct_mds_diagonals(D((1, 2, 3, 4, 5)), 3, 2)


@given(st.integers(2, 6), st.integers(2, 6), st.data())
@settings(max_examples=40, deadline=None)
def test_mds_dimension_formula(m, n, data):
    diagrams = list(enumerate_diagrams(m, n))
    F = data.draw(st.sampled_from(diagrams))
    delta = data.draw(st.integers(1, min(m, n)))
    code = construct_mds_diagonals(F, delta, 7)
    assert code.k == sum(max(0, t - delta + 1) for t in F.theta)
    assert code.conforms()


# -- subcodes of MRD codes ---------------------------------------------------------------


def test_subcode_square_example():
    code = construct_subcode(D((1, 3, 3, 4)), 3, 2)
    assert code.k == 4
    assert _sound(code) == 3
    assert naive_min_rank([B.tolist() for B in code.basis], OracleField(2, 2)) == 3


def test_subcode_staircase():
    code = construct_subcode(D((1, 2, 3, 4)), 3, 2)
    assert code.k == 3
    assert _sound(code) == 3


def test_subcode_three_by_three_delta_two():
    code = construct_subcode(D((1, 2, 3)), 2, 2)
    assert code.k == 3 == code.diagram.upper_bound(2)
    assert _sound(code) == 2


def test_subcode_tall_diagram_uses_extra_rows():
    # s = m - n + 1 = 3 extra rows; the bottom block repeats the first message coordinates
    F = D((2, 3, 4, 6))
    assert subcode_dimension(F, 3) == min(3, 2) + 3
    code = construct_subcode(F, 3, 2)
    assert _sound(code) >= 3
    assert code.k == F.upper_bound(3)


def test_subcode_dimension_formula_and_optimality():
    # columns taller than the n - 1 expanded rows cannot be filled, so compare only where they fit
    compared = optimal = 0
    for m in range(2, 7):
        for n in range(2, m + 1):
            for F in enumerate_diagrams(m, n):
                g, s = F.gamma, m - n + 1
                for delta in range(2, n + 1):
                    if any(h < n - 1 for h in g[n - delta + 1 :]):
                        continue
                    if min(s, g[0]) > n - 1 or any(h > n - 1 for h in g[1 : n - delta + 1]):
                        continue
                    k = subcode_dimension(F, delta)
                    assert k == min(s, g[0]) + sum(g[1 : n - delta + 1])
                    compared += 1
                    if m >= n - 1 + g[0] and delta <= n - 1:
                        assert k == F.upper_bound(delta), (g, delta)
                        optimal += 1
    assert compared > 500 and optimal > 200


def test_subcode_preconditions():
    with pytest.raises(PreconditionError):
        construct_subcode(D((1, 1, 4)), 3, 2)  # middle column too short
    with pytest.raises(PreconditionError):
        construct_subcode(D((1, 3, 3, 4)), 1, 2)
    with pytest.raises(PreconditionError):
        construct_subcode(FerrersDiagram(1, (1,)), 1, 2)


def test_subcode_other_field():
    code = construct_subcode(D((1, 3, 3, 4)), 3, 3)
    assert code.k == 4
    assert _sound(code) == 3


# -- combinations -----------------------------------------------------------------------


def _example6() -> FerrersCode:
    C1 = construct_es(FerrersDiagram.full(2, 3), 2, 2)
    C2 = construct_es(FerrersDiagram.full(3, 1), 1, 2)
    return combine_same_dimension(C1, C2)


def test_combine_same_dimension_example():
    code = _example6()
    assert code.diagram.gamma == (2, 2, 2, 5)
    assert code.delta == 3 and code.k == 3 == code.diagram.upper_bound(3)
    assert _sound(code) == 3


def test_combine_two_full_spaces():
    C = construct_es(FerrersDiagram.full(2, 2), 1, 2)
    code = combine_same_dimension(C, C)
    assert code.diagram == D((2, 2, 4, 4))
    assert code.k == 4
    assert _sound(code) == 2


def test_combine_same_dimension_larger_filler():
    C1 = construct_es(FerrersDiagram.full(2, 3), 2, 2)
    C2 = construct_es(FerrersDiagram.full(3, 1), 1, 2)
    code = combine_same_dimension(C1, C2, filler=(3, 2))
    assert code.diagram.gamma == (2, 2, 2, 3, 6)
    assert _sound(code) == 3


def test_combine_same_dimension_errors():
    C1 = construct_es(FerrersDiagram.full(2, 2), 1, 2)
    C2 = construct_es(FerrersDiagram.full(3, 1), 1, 2)
    with pytest.raises(PreconditionError, match="dimensions"):
        combine_same_dimension(C1, C2)
    Z = construct_mds_diagonals(FerrersDiagram(3, (1, 1, 3)), 3, 2)
    with pytest.raises(PreconditionError, match="zero"):
        combine_same_dimension(Z, Z)
    with pytest.raises(PreconditionError, match="filler"):
        combine_same_dimension(C1, C1, filler=(1, 2))


def test_combine_same_distance_example():
    F1 = construct_subcode(D((1, 2, 3, 4)), 3, 2)
    F2 = combine_same_dimension(construct_es(FerrersDiagram.full(3, 3), 2, 2), construct_es(FerrersDiagram.full(6, 1), 1, 2))
    assert F2.diagram.gamma == (3, 3, 3, 9)
    code = combine_same_distance(F1, F2, 1)
    assert code.diagram == D((1, 2, 3, 3, 3, 3, 13))
    assert code.k == 9 == code.diagram.upper_bound(3)
    assert _sound(code) == 3


def test_combine_two_square_mrd_codes():
    C = construct_es(FerrersDiagram.full(2, 2), 2, 2)
    code = combine_same_distance(C, C, 1)
    assert code.diagram.shape == (4, 3)
    assert code.k == 4
    assert _sound(code) == 2


def test_combine_same_distance_side_by_side():
    C1 = construct_es(FerrersDiagram.full(2, 2), 2, 2)
    C2 = construct_es(FerrersDiagram.full(3, 3), 2, 2)
    code = combine_same_distance(C1, C2, 0)
    assert code.diagram.gamma == (2, 2, 3, 3, 3)
    assert code.k == 2 + 6
    assert _sound(code) == 2


def test_combine_same_distance_errors():
    C2 = construct_es(FerrersDiagram.full(2, 2), 2, 2)
    C3 = construct_es(FerrersDiagram.full(3, 3), 3, 2)
    with pytest.raises(PreconditionError, match="distances"):
        combine_same_distance(C2, C3, 1)
    C1 = construct_subcode(D((1, 2, 3, 4)), 3, 2)
    with pytest.raises(PreconditionError, match="full"):
        combine_same_distance(C1, C3, 2)


# -- square diagrams with distance 3 ----------------------------------------------------------


@pytest.mark.parametrize(
    "gamma,k,case",
    [
        ((1, 3, 3, 4), 4, "subdiagram"),
        ((4, 4, 4, 4), 8, "columns"),
        ((1, 2, 3, 4), 3, "subdiagram"),
        ((5, 5, 5, 5, 5), 15, "columns"),
    ],
)
def test_square_delta3_cases(gamma, k, case):
    code = construct_square_delta3(D(gamma), 2)
    assert code.k == k == code.diagram.upper_bound(3)
    assert code.provenance["case"] == case
    assert _sound(code) == 3


def test_square_delta3_all_five_by_five_reach_bound():
    for F in enumerate_diagrams(5, 5):
        code = construct_square_delta3(F, 2)
        assert code.k == F.upper_bound(3), F.gamma
        assert code.conforms() and code.is_independent()


def test_square_delta3_preconditions():
    with pytest.raises(PreconditionError):
        construct_square_delta3(D((2, 2, 2, 5)), 2)
    with pytest.raises(PreconditionError):
        construct_square_delta3(FerrersDiagram.full(2, 2), 2)


# -- automatic selection ---------------------------------------------------------------------------


def test_auto_square_example():
    code, report = auto_construct(D((1, 3, 3, 4)), 3, 2)
    assert report.k == 4 and report.optimal and report.verified_distance == 3
    assert code.diagram == D((1, 3, 3, 4))


def test_auto_triangular_over_gf2():
    code, report = auto_construct(D((1, 2, 3, 4, 5)), 3, 2)
    assert report.k == 6 and report.optimal


def test_auto_single_column():
    code, report = auto_construct(FerrersDiagram.full(4, 1), 1, 2)
    assert code.k == 4 and report.optimal


def test_auto_finds_combined_constructions():
    code, report = auto_construct(D((2, 2, 2, 5)), 3, 2)
    assert report.k == 3 and report.optimal
    assert report.path.startswith("combine_same_dimension")
    code, report = auto_construct(D((1, 2, 3, 3, 3, 3, 13)), 3, 2)
    assert report.k == 9 and report.optimal and report.verified_distance == 3


@pytest.mark.parametrize("gamma,delta,k,bound", [((3, 3, 3, 5), 3, 5, 6), ((2, 2, 4, 4, 6, 6), 4, 6, 8)])
def test_auto_expected_gaps(gamma, delta, k, bound):
    code, report = auto_construct(D(gamma), delta, 2)
    assert (report.k, report.bound) == (k, bound)
    assert not report.optimal
    assert report.verified_distance >= delta


@st.composite
def small_cases(draw):
    m = draw(st.integers(1, 4))
    n = draw(st.integers(1, 4))
    head = sorted(draw(st.lists(st.integers(1, m), min_size=n - 1, max_size=n - 1)))
    F = FerrersDiagram(m, tuple(head) + (m,))
    return F, draw(st.integers(1, min(m, n))), draw(st.sampled_from([2, 3]))


@given(small_cases())
@settings(max_examples=40, deadline=None)
def test_auto_codes_are_sound(case):
    F, delta, q = case
    code, report = auto_construct(F, delta, q)
    assert code.diagram == F and code.q == q
    assert code.k == report.k <= report.bound == F.upper_bound(delta)
    if code.k:
        assert _sound(code) >= delta


def test_auto_reports_zero_code_with_diagnostic():
    F = FerrersDiagram(3, (1, 1, 3))
    code, report = auto_construct(F, 3, 2)
    assert code.k == 0 and report.bound == 0
    assert "zero" in report.diagnostic


def test_auto_attempt_log_lists_preconditions():
    _, report = auto_construct(D((1, 3, 3, 4)), 3, 2)
    names = [name for name, _ in report.attempts]
    assert names[0] == "es" and "mds" in names
    assert any(isinstance(v, str) and v.startswith("n/a") for _, v in report.attempts)


# -- files -------------------------------------------------------------------------------


def test_text_and_json_round_trip():
    code = _example6()
    again = FerrersCode.from_text(code.to_text())
    assert again == code and again.provenance == code.provenance
    assert FerrersCode.from_json(json.loads(json.dumps(code.to_json()))) == code
    assert "combine_same_dimension" in describe(code.provenance)


def test_code_file_errors():
    text = construct_subcode(D((1, 3, 3, 4)), 3, 2).to_text()
    lines = text.splitlines()
    with pytest.raises(ParseError, match="truncated"):
        FerrersCode.from_text("\n".join(lines[:-2]))
    with pytest.raises(ParseError, match="ferrers-code"):
        FerrersCode.from_text("\n".join(lines[1:]))
    bad = text.replace("gamma: 1 3 3 4", "gamma: 1 3 2 4")
    with pytest.raises(ParseError, match="line 5"):
        FerrersCode.from_text(bad)


def test_codeword_and_embedding():
    code = construct_subcode(D((1, 3, 3, 4)), 3, 2)
    F = gf(2)
    w = code.codeword([1, 1, 0, 0])
    assert w == code.basis[0] + code.basis[1]
    host = D((1, 3, 3, 3, 5))
    big = code.embed_top_right(host)
    assert big.conforms() and big.k == code.k
    with pytest.raises(PreconditionError):
        code.embed_top_right(D((1, 1, 1, 4)))
    assert isinstance(w, Mat) and w.field == F


def test_constructions_with_other_modulus():
    F8 = field_create(2, 3, base_modulus=(1, 0, 1, 1))  # x^3 + x^2 + 1
    assert F8 != gf(8)
    code = construct_mds_diagonals(D((1, 2, 3, 4, 5)), 3, F8)
    assert code.k == 6 and _sound(code) == 3
    code = construct_subcode(D((1, 3, 3, 4)), 3, field_create(3, 1))
    assert _sound(code) == 3
