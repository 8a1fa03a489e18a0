"""Exact construction and verification of standard universal R-matrices
for generalized quantum groups, their twist deformations, and the
associated classical r-matrix families."""

__version__ = "0.1.0"
