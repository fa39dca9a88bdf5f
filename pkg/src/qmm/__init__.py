"""Exact q,t computer algebra for Macdonald polynomials and affine Hecke
operators, with a verification harness for difference Mehta-type
constant-term, evaluation, Gaussian-Fourier, shift-operator and
Jackson-integral identities."""

__version__ = "0.1.0"
