"""hecke2: Hecke operators on modular forms modulo 2 of level 1."""

__version__ = "0.4.0"
