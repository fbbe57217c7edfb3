"""Hermite-interpolation certificates of global entropy maximizers."""

from .certificate import (
    CertificateError,
    CertificateReport,
    build_certificate,
    node_set,
)
from .designs import is_t_design, moment_spread
from .groups import (
    INVARIANTS,
    SymmetryGroup,
    check_group_axioms,
    group_orbit,
    primary_invariant,
    symmetry_group,
)
from .hermite import (
    HermiteSpec,
    Polynomial,
    ScalarFunction,
    check_from_above,
    eta_derivative,
    from_above_spec,
    h_target,
    hermite_interpolate,
    theta_target,
)
