"""Exact membership tests for the third secant variety of a Segre product.

>>> from segre_sigma3 import Tensor, simple_tensor, sigma3
>>> t = simple_tensor([[1, 0], [0, 1], [1, 1]])
>>> sigma3(t).verdict.value
'member'
"""
from .certificate import Certificate, TraceEntry, Verdict
from .errors import (
    ContractError,
    DegenerateInputError,
    ShapeError,
    Sigma3Error,
    TensorFileError,
    UnsupportedError,
)
from .exact import ExactMatrix, Rational, adjugate, det, det3_adjugate, identity, inverse, kernel_basis, rank
from .flattening import Bipartition, ConciseCore, bipartitions, concise_core, flatten, flattening_rank, mode_rank
from .membership import CaseLabel, classify_case, sigma2, sigma3
from .normal_forms import Family, NormalFormSpec, assemble, derivative_oracle, generate, parse_family
from .strassen import (
    PairMap,
    StrassenReport,
    Tripartition,
    exterior_flattening,
    kernel_full_rank_element,
    strassen_commutator,
    strassen_ok,
    symmetrize_pair,
)
from .symmetric import PipelineResult, SymTensor, binary_sigma3, catalecticant, symmetrization_pipeline
from .tensor import ModeMap, Tensor, add, apply_mode_map, permute_modes, scale, simple_tensor
from .tensorfile import read_tensor, write_tensor

__version__ = "0.1.0"
