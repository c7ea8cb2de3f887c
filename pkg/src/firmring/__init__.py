"""Exact workbench for nonunital rings, modules, and separability."""

__version__ = "0.1.0"
