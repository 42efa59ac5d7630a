"""Atomic filters for graph signals.

Spectral shift operators built from frequency responses with distinct
components, conjugate-paired Fourier bases that make them real-preserving,
a property battery mirroring the classical shift, and windowed Fourier
frames with exact weighted reconstruction.
"""

from .errors import (
    AtomfiltError,
    DegenerateWindowError,
    FrameConditionError,
    GenerationError,
    GraphStructureError,
    NoNormalBasisError,
    NotAtomicError,
    ParameterError,
    PreconditionError,
)
from .filters import (
    ComparisonResult,
    Expansion,
    Filter,
    PropertyReport,
    apply,
    check_properties,
    classical_shift_matrix,
    comparison_shift,
    detect_conjugate_pairing,
    is_atomic,
    make_filter,
    make_from_thetas,
    polynomial_expand,
    smoothness,
    smoothness_spectral,
)
from .frames import (
    DftFactors,
    FrameDictionary,
    analyze,
    build_frame,
    dft_factorization,
    power_responses,
    synthesize,
)
from .graphs import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    circulant_graph,
    gen_sensor,
    generate,
    is_circulant,
    is_regular,
    load_graph,
    path_graph,
    ring_graph,
    save_graph,
)
from .signals import gaussian_signal, load_signal, pulse_signal, save_signal, sine_signal
from .spectral import (
    FourierBasis,
    MultiplicityGroups,
    Pairing,
    RealSpectrum,
    as_fourier_basis,
    circulant_eigenvalues,
    dft_basis,
    eigendecompose,
    gft,
    load_spectrum,
    multiplicity_partition,
    normal_basis,
    save_spectrum,
    supports_normal_atomic,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
