"""Command modules for hecke2 CLI."""

__all__ = [
    "cache",
    "compute",
    "tables",
    "verify",
]
