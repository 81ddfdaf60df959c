"""stlplan: robust planning from signal temporal logic specifications."""

__version__ = "1.0.0"
