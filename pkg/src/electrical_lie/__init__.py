"""Exact verification of electrical Lie algebra identities in Kac-Moody and matrix models."""

__version__ = "0.1.0"
