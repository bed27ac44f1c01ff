"""Exact face algebras from fusion categories."""

__version__ = "0.1.0"
