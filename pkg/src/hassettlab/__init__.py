"""Lattice classification and explicit cubic fourfolds for two families of special cubics."""

__version__ = "0.1.0"
