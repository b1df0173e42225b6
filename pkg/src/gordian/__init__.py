"""Knot diagram toolkit: DT codes, invariants, unknotting certificates, searches."""

__version__ = "0.1.0"
