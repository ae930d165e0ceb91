"""Alternating sign matrices, TSSCPP boolean triangles and the pipe dreams between them."""

__version__ = "0.1.0"
