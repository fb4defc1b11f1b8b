"""planebif: exact bifurcation sets of rational functions f/g on C^2.

The library computes the critical values K0(F), the Milnor-jump values
K1(F), the critical values at infinity B_infty(F) and their union B(F) for
F = f/g with rational coefficients, cross-checks B_infty through Euler
characteristics of fibers, and produces floating-point evidence for the
Fedoryuk / Malgrange / M-tameness conditions along curves to infinity.
"""

from .polyalg import MultiPoly, QQ, NumberField, FunctionField, SplitRequest

__all__ = [
    "MultiPoly",
    "QQ",
    "NumberField",
    "FunctionField",
    "SplitRequest",
]

__version__ = "0.1.0"
