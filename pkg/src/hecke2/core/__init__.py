"""Core computation modules for hecke2."""
