"""Exact equivariant, orbifold and level-N orbifold elliptic genera by localization."""

from .errors import OrbigenusError
from .exactnum import Cyclotomic, root_of_unity
from .genera import (
    GenusSeries,
    SigmaSpec,
    equivariant_elliptic_genus,
    modified_orbifold_genus,
    orbifold_elliptic_genus,
    point_contributions,
    stabilize,
    ty_family,
    unstabilize,
)
from .groups import FiniteGroup
from .model import (
    FixedPointDatum,
    LineBundlePolicy,
    OrbifoldModel,
    TangentWeight,
    load_model,
    save_model,
    validate_model,
    weighted_projective_model,
)
from .series import BiLaurent, QSeries, RationalFunction
from .verify import (
    CheckReport,
    check_divisibility,
    check_modular_numeric,
    check_rigidity,
    cross_check_q0,
    predict_and_check_vanishing,
    ty_limit_decomposition,
)

__version__ = "0.1.0"


def fixture_path(name: str) -> str:
    """Path of a bundled fixture model, e.g. ``fixture_path("p113")``."""
    from importlib.resources import files

    return str(files(__package__) / "fixtures" / f"{name}.json")
