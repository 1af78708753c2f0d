"""Cyclically presented groups, tadpole LOG groups and their natural HNN extensions."""

__version__ = "0.1.0"
