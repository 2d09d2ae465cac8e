"""Zero-error capacity toolkit: confusability graphs, exact independence
numbers, and certificates for noisy-classical + perfect-quantum superadditivity."""

from .certificates import Certificate, certify
from .channel import (
    ChannelHypergraph,
    ChannelSpec,
    confusability_graph,
    parallel_compose,
    perfect_classical,
    support,
    uniform_channel_from_hypergraph,
    zero_error_code,
)
from .constructions import NamedConstruction, cabello18, verify_construction, xu_family
from .errors import FormatError, SolverLimitError, StructureError, ZerrError
from .graphs import (
    Graph,
    clique_number,
    complement,
    complete,
    connected_components,
    edgeless,
    independence_number,
    independence_number_bruteforce,
    independence_number_exact,
    is_perfect,
    strong_product,
)
from .protocol import (
    classical_baseline,
    decode,
    encode,
    full_codebook,
    simulate_monte_carlo,
    verify_zero_error_exhaustive,
)
from .quantum import (
    Measurement,
    VectorSet,
    born_probabilities,
    inner_product,
    measurement_from_hyperedge,
    orthogonality_graph,
    verify_orthonormal_basis,
)

__version__ = "0.1.0"
