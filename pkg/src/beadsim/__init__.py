"""beadsim: colored-sphere phase-space simulator for 1-3 qubit states."""

__version__ = "0.1.0"

from .states import (  # noqa: F401
    DensityOperator,
    PureState,
    bell_state,
    bloch_vector,
    expectation,
    ghz_state,
    ket,
    partial_trace,
    schmidt_state,
    w_state,
)
from .gates import (  # noqa: F401
    GateSpec,
    apply_gate,
    gate,
    hamiltonian_evolution,
    propagator_fraction,
)
from .circuits import (  # noqa: F401
    Circuit,
    GateStep,
    Measurement,
    MeasurementBranch,
    MixBranches,
    measure_qubit,
    mix_branches,
    run,
    sample_outcomes,
)
from .lisa import (  # noqa: F401
    BeadLabel,
    LisaDecomposition,
    decompose,
    label_catalog,
    lisa_operator,
    reconstruct,
)
from .beads import (  # noqa: F401
    BeadFunction,
    BeadSet,
    ScalingConfig,
    bead_coefficients,
    bead_value,
    beads_to_operator,
    eta,
    global_unitary_bound,
    husimi,
    majorana_stars,
    xi,
    zeta,
)
from .correlations import (  # noqa: F401
    CorrelationDecomposition,
    connected_corr,
    connected_operator,
    correlation_beads,
    entanglement_norm,
    total_corr,
)
from .harmonics import real_sph_harm  # noqa: F401
from .colors import blend_total, correlation_angle, parity_probability, scheme_color  # noqa: F401
from .geometry import SphericalDirection, direction_vector  # noqa: F401
