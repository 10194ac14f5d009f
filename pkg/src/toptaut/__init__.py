"""Exact computations around the top tautological group of M_{g,n}.

Rational arithmetic and Bernoulli numbers, sparse exact linear algebra,
packed multivariate polynomials, top-degree psi/kappa pairings, Hain's
formula, a symbolic double ramification calculus, the V/Z change of
variables, and finite membership certificates for the socle reductions.
"""
from .arith import DomainError, Rat, a_g, bernoulli, c_const, double_factorial
from .kernels import BACKEND

__all__ = ["BACKEND", "DomainError", "Rat", "a_g", "bernoulli", "c_const", "double_factorial"]
__version__ = "0.1.0"
