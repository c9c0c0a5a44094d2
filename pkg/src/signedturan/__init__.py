"""Signed graphs without unbalanced K4: extremal families, spectra and censuses."""
from .canon import CanonicalForm, canonical_form
from .graph import SignedGraph, is_balanced, negate, permute, switch
from .linalg import ConvergenceError, IntPolynomial
from .spectral import Spectrum, eigenvalues

__all__ = [
    "CanonicalForm",
    "ConvergenceError",
    "IntPolynomial",
    "SignedGraph",
    "Spectrum",
    "canonical_form",
    "eigenvalues",
    "is_balanced",
    "negate",
    "permute",
    "switch",
]
