"""Exact parametrization of state-feedback gains assigning a similarity class.

Given a controllable pair (F, G) and a prescribed set of invariant
polynomials (as factored spectral data), this package decides feasibility
and builds explicit local charts x -> K(x) of the manifold of gains K with
F + G K in that class, entirely in exact rational arithmetic.
"""

from .canonical import (
    CentralizerBasis,
    SpectralData,
    WeyrStructure,
    centralizer_basis,
    centralizer_dimension,
    centralizer_dimension_weyr,
    centralizer_element,
    invariant_chain,
    jordan_from_spectral,
    jordan_weyr_permutation,
    weyr_from_spectral,
    weyr_union,
)
from .chart import (
    Chart,
    FeedbackGain,
    build_chart,
    chart_for_gain,
    coordinates,
    default_multi_index,
    in_domain,
    manifold_dimension,
    nu,
    phi,
    synthesize,
)
from .errors import (
    ChartDomainError,
    GainchartError,
    InfeasibleError,
    NotInChartError,
    NotInClassError,
    ParseError,
    UncontrollableError,
    VerificationError,
)
from .feedback import (
    BrunovskyData,
    ControlPair,
    controllability_indices,
    p_brunovsky_pair,
    rosenbrock_feasible,
    to_p_brunovsky,
)
from .gaussian import GaussRat
from .linalg import RatMatrix, SingularMatrixError
from .observability import (
    AdmissibleSeq,
    RankDeficientError,
    TruncObsMatrix,
    assemble,
    block_memberships,
    diamond,
    find_admissible,
    find_multi_index,
    is_admissible,
    nonempty,
)
from .partitions import Partition, partitions_of
from .poly import InvariantChain, UniPoly, charpoly, invariant_polynomials
from .reduction import ReducedForm, reduce, reduce_complex, reduce_real

__version__ = "0.1.0"

__all__ = [
    "AdmissibleSeq",
    "BrunovskyData",
    "CentralizerBasis",
    "Chart",
    "ChartDomainError",
    "ControlPair",
    "FeedbackGain",
    "GainchartError",
    "GaussRat",
    "InfeasibleError",
    "InvariantChain",
    "NotInChartError",
    "NotInClassError",
    "ParseError",
    "Partition",
    "RankDeficientError",
    "RatMatrix",
    "ReducedForm",
    "SingularMatrixError",
    "SpectralData",
    "TruncObsMatrix",
    "UncontrollableError",
    "UniPoly",
    "VerificationError",
    "WeyrStructure",
    "assemble",
    "block_memberships",
    "build_chart",
    "centralizer_basis",
    "centralizer_dimension",
    "centralizer_dimension_weyr",
    "centralizer_element",
    "chart_for_gain",
    "charpoly",
    "controllability_indices",
    "coordinates",
    "default_multi_index",
    "diamond",
    "find_admissible",
    "find_multi_index",
    "in_domain",
    "invariant_chain",
    "invariant_polynomials",
    "is_admissible",
    "jordan_from_spectral",
    "jordan_weyr_permutation",
    "manifold_dimension",
    "nonempty",
    "nu",
    "p_brunovsky_pair",
    "partitions_of",
    "phi",
    "reduce",
    "reduce_complex",
    "reduce_real",
    "rosenbrock_feasible",
    "synthesize",
    "to_p_brunovsky",
    "weyr_from_spectral",
    "weyr_union",
]
