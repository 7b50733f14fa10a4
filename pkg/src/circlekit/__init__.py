"""Circle-diffeomorphism and loop-group arithmetic at spectral resolution.

Smooth periodic functions on power-of-two grids, the universal cover of the
orientation-preserving diffeomorphism group, SU(n) loop groups with their
central-extension cocycles, continuous fragmentation over three-interval
covers, and exact-rational checks of the Virasoro commutation relations on
truncated lowest-weight modules.
"""

from .cocycles import (
    VectField,
    VirasoroElement,
    bott,
    bott_mixed_derivative,
    cocycle_identity_residual,
    vect_bracket,
    vect_cocycle,
    vir_multiply,
)
from .diffeo import (
    BumpFunction,
    CircleDiffeo,
    CoverConfig,
    IntervalArc,
    compose,
    inverse,
    make_bump,
    make_normalized_bump,
    support,
)
from .errors import (
    AliasingError,
    BranchError,
    CirclekitError,
    ConvergenceError,
    DerivativeError,
    GeometryError,
    MassError,
    NeighbourhoodError,
    TruncationError,
)
from .frag_diff import (
    DiffeoFragmenter,
    EpsilonNeighbourhood,
    FragmentationResult,
    alpha1,
    alpha1_bound,
    beta1,
    beta1_bound,
    beta1_integral_form,
    fragment,
    fragment_pair,
)
from .loops import (
    LoopAlgebraElement,
    LoopElement,
    bracket,
    exp_loop,
    fragment_loop,
    fragment_loop_sequential,
    inverse_loop,
    killing_form,
    log_loop,
    loop_support,
    multiply,
    omega,
    precompose,
)
from .periodic import PeriodicFunction, grid
from .verma import (
    VermaModule,
    VermaState,
    act,
    commutator_check,
    exact_determinant,
    gram_matrix,
    partitions,
)

__version__ = "0.1.0"
