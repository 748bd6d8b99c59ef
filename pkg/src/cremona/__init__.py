"""Generalized Cremona-Richmond configurations and their projective realizations."""

from .crspace import build_cr, build_sylvester, predicted_params
from .exactalg import FieldSpec
from .incidence import IncidenceStructure, verify_configuration
from .realize import verify_realization
from .setcomb import ParameterError, SubsetCode

__all__ = [
    "FieldSpec",
    "IncidenceStructure",
    "ParameterError",
    "SubsetCode",
    "build_cr",
    "build_sylvester",
    "predicted_params",
    "verify_configuration",
    "verify_realization",
]
