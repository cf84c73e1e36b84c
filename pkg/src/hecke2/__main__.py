"""Entry point for hecke2 when run as a module."""

from hecke2.cli import app

if __name__ == "__main__":
    app()
