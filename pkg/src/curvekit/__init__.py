"""curvekit: certified solving and topology analysis of plane algebraic curves."""

__version__ = "0.1.0"
