"""Finite-model computation workbench for involutive residuated lattices,
De Morgan monoids, Sugihara monoids and relevant algebras."""

__version__ = "0.1.0"
