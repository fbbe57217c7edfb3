"""Pure states of maximum uncertainty for finite quantum measurements.

Build POVMs (SICs, qubit HS-POVMs, n-gons, PVMs), evaluate Shannon / Tsallis /
Renyi entropies of their outcome statistics, search for extremal pure states,
and certify global maximizers with Hermite interpolation from above.
"""

__version__ = "0.1.0"

from .bloch import BlochVector, bloch_vector, povm_bloch_vectors, state_from_bloch
from .catalog import (
    FiducialRecord,
    NotASicFiducial,
    PolyhedronSpec,
    builtin_sic,
    hs_povm,
    ngon_povm,
    polyhedron,
    pvm_from_basis,
    sic_from_fiducial,
)
from .entropy import (
    Ensemble,
    alpha_entropy,
    entropy,
    entropy_from_bloch,
    h_function,
    index_of_coincidence,
    jones_average,
    mutual_information,
    relative_entropy,
    shannon_entropy,
    sic_min_relative_entropy,
)
from .optimize import (
    OptConfig,
    OptResult,
    landscape_scan,
    maximize_entropy,
    verify_maximizer_set,
)
from .quantum import (
    DensityMatrix,
    Povm,
    PureState,
    StructuralError,
    fidelity,
    is_informationally_complete,
    outcome_probabilities,
    validate_povm,
)
