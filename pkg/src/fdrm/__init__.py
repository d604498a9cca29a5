"""Ferrers diagram rank-metric codes over finite fields.

Field and matrix arithmetic, the dimension upper bound for Ferrers diagram
codes, constructions (shortened MRD, MDS codes on diagonals, MRD subcodes,
and two ways of combining codes), and exhaustive certification.
"""

from __future__ import annotations

from fdrm.code import FerrersCode
from fdrm.constructions import (
    auto_construct,
    combine_same_dimension,
    combine_same_distance,
    construct_es,
    construct_mds_diagonals,
    construct_square_delta3,
    construct_subcode,
)
from fdrm.errors import BudgetExceededError, FieldMismatchError, ParseError, PreconditionError
from fdrm.ferrers import FerrersDiagram, enumerate_diagrams
from fdrm.field import Field, field_create, gf, phi_compress, phi_expand
from fdrm.gabidulin import gabidulin_generator, lemma3_matrix, systematize
from fdrm.linalg import Mat
from fdrm.mds import GeneratorMatrix, mds_generator
from fdrm.verify import check_code, min_rank_distance, sweep

__all__ = [
    "BudgetExceededError",
    "FerrersCode",
    "FerrersDiagram",
    "Field",
    "FieldMismatchError",
    "GeneratorMatrix",
    "Mat",
    "ParseError",
    "PreconditionError",
    "auto_construct",
    "check_code",
    "combine_same_dimension",
    "combine_same_distance",
    "construct_es",
    "construct_mds_diagonals",
    "construct_square_delta3",
    "construct_subcode",
    "enumerate_diagrams",
    "field_create",
    "gabidulin_generator",
    "gf",
    "lemma3_matrix",
    "mds_generator",
    "min_rank_distance",
    "phi_compress",
    "phi_expand",
    "sweep",
    "systematize",
]
