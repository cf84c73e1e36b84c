"""Test package for hecke2."""
