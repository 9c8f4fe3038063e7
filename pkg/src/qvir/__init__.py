"""Exact algebra for the deformed Virasoro algebra and the 5d AGT relation."""

__version__ = "0.1.0"
