"""Atomic quantum memory for photonic polarization qubits via cavity-QED scattering."""
from .errors import (
    DegenerateOperatingPointError,
    InvalidParameterError,
    NumericDomainError,
    QuadratureError,
    ResolutionError,
)
from .oracle import oracle_entangle, oracle_memory, oracle_swap
from .protocols import (
    AtomQubit,
    DetectorModel,
    EntanglementOutcome,
    MemoryOutcome,
    PhotonQubit,
    TwoQubitAmplitudes,
    atomic_readout_probability,
    fidelity_given_overlap,
    ideal_swap,
    overlap_D,
    r_ratio,
    run_entanglement_transfer,
    run_memory,
    swap_fidelity,
    two_qubit_ideal_swap,
)
from .scattering import SystemParams, TMatrix, bright_amplitude, bright_fraction, coupling, t_matrix
from .spectral import SpectralProfile, gaussian_profile, lorentzian_profile, weighted_average

__version__ = "0.1.0"
