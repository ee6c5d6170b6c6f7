"""Braid actions, permutation-group descent obstructions and Weil descent for curves."""

__version__ = "0.1.0"
