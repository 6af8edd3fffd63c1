"""Reeb parameter and transverse Kaehler-Einstein profile for S^1-bundles over
P^1-bundles M = P(L + O) on Kaehler-Einstein Fano bases."""

__version__ = "0.1.0"

from .catalog import (  # noqa: E402
    FanoBaseSpec,
    fermat_hypersurface,
    grassmannian,
    load_spec,
    make_spec,
    product_projective_spaces,
)
from .errors import (  # noqa: E402
    DomainError,
    EigenvalueOutOfRange,
    EmptySpec,
    InvalidSpec,
    PositivityViolation,
    QuadratureFailure,
    ReebParameterOutOfRange,
    SolverFailure,
)
from .ratpoly import Enclosure, RationalPoly  # noqa: E402
from .reeb import (  # noqa: E402
    Irregular,
    QuasiRegular,
    ReebSolution,
    exact_numerator_poly,
    F_value,
    futaki_obstruction,
    solve_reeb_parameter,
)
