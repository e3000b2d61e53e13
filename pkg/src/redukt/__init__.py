"""Stutter-length sensitivity of LTL properties and model checking under
language-level Petri net reductions."""

__version__ = "0.1.0"
