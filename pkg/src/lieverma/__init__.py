"""Exact computations with Verma modules, enveloping algebras and their
p-adically deformed and completed versions for small-rank Lie algebras."""

__version__ = "0.1.0"

from .roots import (  # noqa: E402
    ConfigurationError,
    Root,
    RootSystem,
    Weight,
    build_root_system,
    height,
    is_dominant,
    is_regular,
    lambda_star,
    rho_and_delta,
)
from .lie import LieAlgebra, StructureError, build_structure_constants  # noqa: E402
from .enveloping import UEA, UEAElement, NotCentralError  # noqa: E402
from .padic import (  # noqa: E402
    ConvergenceCertificate,
    GaugeStaircase,
    PScalar,
    certify_convergence,
    coefficient_gauge,
    valuation,
)
from .verma import (  # noqa: E402
    AffinoidVector,
    SubmoduleBasis,
    TruncationError,
    VermaModule,
    VermaVector,
    WeightDomainError,
)
from .ideals import IdealBasis, TModule, UnsupportedScopeError  # noqa: E402

__all__ = [name for name in dir() if not name.startswith("_")]
