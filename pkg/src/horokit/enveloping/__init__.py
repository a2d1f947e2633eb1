"""Exact PBW arithmetic, the center, the Harish-Chandra map and Lie-identity certificates."""

from .pbw import PbwAlgebra, PbwElement, canonical_algebra
from .harish_chandra import (
    hc_project,
    delta_shift,
    harish_chandra,
    hpoly_coefficients,
    weyl_act,
    is_weyl_invariant,
)
from .center import CenterBasis, center_basis
from .certificate import (
    LieIdentityCertificate,
    lie_identity_certificate,
    continuity_spotcheck,
    certificate_to_json,
    verify_certificate_json,
)
