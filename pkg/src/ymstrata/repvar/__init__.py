"""Numerical models of representation varieties of surface groups."""

from .linalg import clock, commutator, haar_so3, haar_unitary, m_product, r_reverse, shift
from .maps import embed_fixed, phi, phi_section, sample_orbit, tau_involution
from .obstruction import (
    LiftError,
    obstruction,
    obstruction_class,
    obstruction_laws,
    obstruction_prime,
    obstruction_so3,
    quaternion_lift,
    random_flat_so3,
    random_flat_so3_nonorientable,
)
from .points import (
    DEFAULT_TOL,
    GroupTuplePoint,
    Kind,
    ResidualReport,
    membership,
    point_from_json,
    point_to_json,
)
from .witness import (
    UnsupportedCase,
    bundle_sign,
    central_handle,
    det_reduction_check,
    e_mu,
    orientable_point,
    witness_point,
)

__all__ = [
    "DEFAULT_TOL",
    "GroupTuplePoint",
    "Kind",
    "LiftError",
    "ResidualReport",
    "UnsupportedCase",
    "bundle_sign",
    "central_handle",
    "clock",
    "commutator",
    "det_reduction_check",
    "e_mu",
    "embed_fixed",
    "haar_so3",
    "haar_unitary",
    "m_product",
    "membership",
    "obstruction",
    "obstruction_class",
    "obstruction_laws",
    "obstruction_prime",
    "obstruction_so3",
    "orientable_point",
    "phi",
    "phi_section",
    "point_from_json",
    "point_to_json",
    "quaternion_lift",
    "r_reverse",
    "random_flat_so3",
    "random_flat_so3_nonorientable",
    "sample_orbit",
    "shift",
    "tau_involution",
    "witness_point",
]
