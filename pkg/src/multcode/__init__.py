"""Systematic encoding of multiplicity codes via fast Hermite interpolation and evaluation."""

from .code import CodeParams, code_params, encode, encode_high_rate, encode_low_rate, extract_message
from .field import GF, FieldElement, binom_mod_p, fq_arith
from .hermite_multi import SegVector, multi_hermite_eval, multi_hermite_eval_R, multi_hermite_interp

__version__ = "0.1.0"

__all__ = [
    "GF",
    "FieldElement",
    "binom_mod_p",
    "fq_arith",
    "CodeParams",
    "code_params",
    "encode",
    "encode_low_rate",
    "encode_high_rate",
    "extract_message",
    "SegVector",
    "multi_hermite_eval",
    "multi_hermite_interp",
    "multi_hermite_eval_R",
    "__version__",
]
