"""Mechanized constructions around self-reference, foundation and Gödel's sentence."""

__version__ = "0.1.0"
