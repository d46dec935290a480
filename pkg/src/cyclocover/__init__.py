"""Realization verdicts for PSL/PSU groups from cyclic covers, with a finite-field monodromy checker."""

from .arith import (
    Family,
    RealizationVerdict,
    corollary_enumerate,
    realization_verdict,
    subfield_descriptor,
    theorem_main_verdict,
)
from .burau import BurauRep, DegenerateSpecialization, quotient_rep, reduced_burau
from .covering import CoverSpec, genus, orbit_character, validate_cover
from .ffield import FFElement, FieldTower, ord_mod
from .formsolve import FormDimensionError, SesquiForm, invariant_form
from .matgroup import GroupReport, GroupTarget, bfs_enumerate, group_order, schreier_sims_order, verify_image
from .matrix import MatrixFq

__version__ = "0.1.0"

__all__ = [
    "BurauRep",
    "CoverSpec",
    "DegenerateSpecialization",
    "FFElement",
    "Family",
    "FieldTower",
    "FormDimensionError",
    "GroupReport",
    "GroupTarget",
    "MatrixFq",
    "RealizationVerdict",
    "SesquiForm",
    "bfs_enumerate",
    "corollary_enumerate",
    "genus",
    "group_order",
    "invariant_form",
    "orbit_character",
    "ord_mod",
    "quotient_rep",
    "realization_verdict",
    "reduced_burau",
    "schreier_sims_order",
    "subfield_descriptor",
    "theorem_main_verdict",
    "validate_cover",
    "verify_image",
]
