"""Exact variation of GIT quotients for torus actions on projective space."""
__version__ = "0.1.0"
