"""Finite-dimensional model spaces, truncated Toeplitz operators and Sedlock algebras."""
