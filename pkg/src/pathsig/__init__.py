"""Exact signatures of piecewise-linear paths and the algebra around them.

Core pieces: a dense truncated tensor algebra over exact rationals, floats,
or complex floats; Chen-product signatures with a Riemann-sum oracle;
shuffle-identity verification; zero-pattern semigroup arithmetic; normalized
norm asymptotics; and complexified dilation-invariance checks.  A FastAPI
service (``pathsig.service``) exposes everything over HTTP and the CLI
(``pathsig.cli``) is a thin client of that service.
"""

__version__ = "0.1.0"

from .algebra import (NormKind, ScalarKind, ShapeMismatchError, TruncatedTensor,
                      dilate, level_norm, max_abs_diff, permute, root_of_unity,
                      tensor_exp, tensor_log, word_index)
from .asymptotics import AsymptoticsReport, analyze, length_estimate
from .complexify import (DilationReport, LieElement, complexify,
                         dilation_invariance_check, lie_generator, taylor_norm)
from .paths import (PiecewiseLinearPath, concat, insert_midpoints, path_length,
                    riemann_signature, signature, tree_reduce)
from .semigroup import (AdditiveCheck, DegreePattern, extract_pattern,
                        frobenius_number, min_modulus, semigroup_window,
                        verify_additive)
from .serialize import (canonical_dumps, path_from_csv, path_from_dict,
                        path_to_csv, path_to_dict, tensor_from_dict,
                        tensor_to_dict)
from .shuffle import (GroupLikeReport, ShuffleSet, enumerate_shuffles,
                      group_like_check, shuffle_project)

__all__ = [
    "AdditiveCheck", "AsymptoticsReport", "DegreePattern", "DilationReport",
    "GroupLikeReport", "LieElement", "NormKind", "PiecewiseLinearPath",
    "ScalarKind", "ShapeMismatchError", "ShuffleSet", "TruncatedTensor",
    "analyze", "canonical_dumps", "complexify", "concat", "dilate",
    "dilation_invariance_check", "enumerate_shuffles", "extract_pattern",
    "frobenius_number", "group_like_check", "insert_midpoints",
    "length_estimate", "level_norm", "lie_generator", "max_abs_diff",
    "min_modulus", "path_from_csv", "path_from_dict", "path_length",
    "path_to_csv", "path_to_dict", "permute", "riemann_signature",
    "root_of_unity", "semigroup_window", "signature", "shuffle_project",
    "tensor_exp", "tensor_from_dict", "tensor_log", "tensor_to_dict",
    "tree_reduce", "verify_additive", "word_index",
]
