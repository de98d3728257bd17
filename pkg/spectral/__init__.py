"""Spectral gradient stepsizes: the BB family, quadratic test problems,
gradient method drivers and convergence diagnostics."""
