"""Universal Dependencies to first-order logic with scoped negation."""

__version__ = "0.1.0"
