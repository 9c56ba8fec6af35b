"""Joint spectral radii of matrix tuples over operator space structures."""
from .cpmaps import CpMap, PerronPair, apply, cp_map, ehk_minimizer, perron_pair, rho_cp
from .errors import (
    BudgetError,
    ConvergenceError,
    DegenerateClusteringError,
    DomainError,
    InvalidWordError,
    NcSpecError,
    PreconditionError,
    ShapeError,
    SingularSimilarityError,
    UnsupportedStructureError,
)
from .fock import (
    ExteriorSpec,
    FockSpec,
    alpha_certificate,
    compressed_shift,
    exterior_creation,
    fock_creation,
    qn_norms,
    vacuum_pencil_growth,
)
from .opspace import (
    Col,
    ConcreteQ,
    MaxRowCol,
    MinV,
    NormedSpaceSpec,
    OppositeOf,
    Row,
    hc_power_norm,
    min_power_norm,
    min_tensor_power_norm,
    tuple_norm,
)
from .pencil import Pencil, Realization, domain_radius, pencil_eval, pencil_margin, realization_eval
from .specrad import (
    JointSpectrum,
    OrbitOptions,
    RadiusEstimate,
    is_quasinilpotent,
    joint_spectrum,
    mueller_sequence,
    rho_commuting,
    rho_orbit_upper,
    rho_rota_strang,
    rho_rowcol,
)
from .tuple_core import (
    MatrixTuple,
    conjugate_by,
    is_commuting,
    is_irreducible,
    selfadjoint_double,
    word_product,
)

__version__ = "0.1.0"
