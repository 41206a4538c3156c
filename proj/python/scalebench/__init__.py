"""Python bindings for the scalebench numerical core."""

import json

from . import _core
from ._core import (
    ScalebenchError,
    SpecParseError,
    WeakHessian,
    beta_block_hadamard,
    canonical_spec,
    contour_projection,
    corollary_matrix,
    eigenprojection_oracle,
    equivalence_report,
    example_iii_matrix,
    extract_pair_growth,
    hadamard_q,
    is_scale_invariant,
    is_shift_invariant,
    kang,
    kang_decompose,
    level_norm,
    obstruction_limits,
    obstruction_window,
    projection_continuity_check,
    projection_derivative,
    riesz_operator,
    run_cli,
    sample,
    schur_norm_lower_bound,
    signed_growth,
    stein_check,
)


def verify_all(seed=20240601, smoke=None):
    """Run the acceptance suite; returns one certificate dict per criterion."""
    return json.loads(_core.verify_all_json(seed, smoke))


__all__ = [name for name in dir() if not name.startswith("_") and name not in ("json",)]
