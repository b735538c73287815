"""Finite-quotient computations for second-countable profinite groups."""

__version__ = "0.1.0"
