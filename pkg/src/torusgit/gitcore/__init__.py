"""Torus GIT on projective space: stability, walls, chambers and strata."""
from .chambers import (CellDesc, CellKind, ChamberComplex, Signature, SimplexTable, WallDesc,
                       cells, chamber_complex, chambers, from_mask, git_class, mask_key,
                       signature_direct, to_mask, walls)
from .model import (LinearizationClass, OneParamSubgroup, ProjPoint, Stability, StateSet,
                    WeightConfiguration)
from .stability import (Adapted, GAmpleCone, Stratification, Stratum, adapted, all_state_sets,
                        bigM, classify, classify_by_membership, classify_by_sign, fixed_components,
                        g_ample_cone, is_effective, limit_point, mu, mu_raw, stabilizer_dim,
                        state_key, state_set, stratify)

__all__ = [
    "Adapted", "CellDesc", "CellKind", "ChamberComplex", "GAmpleCone", "LinearizationClass",
    "OneParamSubgroup", "ProjPoint", "Signature", "SimplexTable", "Stability", "StateSet",
    "Stratification", "Stratum", "WallDesc", "WeightConfiguration", "adapted", "all_state_sets",
    "bigM", "cells", "chamber_complex", "chambers", "classify", "classify_by_membership",
    "classify_by_sign", "fixed_components", "from_mask", "g_ample_cone", "git_class",
    "is_effective", "limit_point", "mask_key", "mu", "mu_raw", "signature_direct",
    "stabilizer_dim", "state_key", "state_set", "stratify", "to_mask", "walls",
]
