"""Gold-type codes of higher relative dimension: exhaustive DC-component and
rank distributions checked against exact closed forms."""

from .field import FieldCtx, FieldError, field_new
from .forms import CodeParams, ParamsError, validate
from .table import DistTable

__all__ = ["CodeParams", "DistTable", "FieldCtx", "FieldError", "ParamsError", "field_new", "validate"]
__version__ = "0.1.0"
