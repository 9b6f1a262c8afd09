"""Spectra of the algebraically defined graphs D(k, q) and their point graphs."""

from dkq.gf import FieldSpec, FieldError, field_new, field_of_order

__all__ = ["FieldSpec", "FieldError", "field_new", "field_of_order"]
__version__ = "0.1.0"
