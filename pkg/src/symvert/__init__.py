"""Exact tools for invariant bilinear forms of finite groups in characteristic 2.

Subpackages cover finite-field arithmetic, exact linear algebra, permutation
groups, modular representations, invariant forms, vertex theory and 2-blocks.
"""

__version__ = "0.1.0"
