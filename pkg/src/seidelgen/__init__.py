"""Exhaustive generation and spectral classification of Seidel matrices."""
from .core import SeidelMatrix, SignedPermutation, apply, s6_decode, s6_encode

__all__ = ["SeidelMatrix", "SignedPermutation", "apply", "s6_decode", "s6_encode"]
