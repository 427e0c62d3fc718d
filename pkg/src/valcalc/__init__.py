"""Exact double-form calculus for the highest weight valuations phi_{r,k,m}."""

from .forms import HwvId, hwv_form, valid_ids
from .scalar import ExactScalar, parse_scalar, render_scalar

__version__ = "0.1.0"

__all__ = ["HwvId", "hwv_form", "valid_ids", "ExactScalar", "parse_scalar", "render_scalar", "__version__"]
