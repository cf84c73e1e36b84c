"""Manages path operations for the hecke2 cache."""

from __future__ import annotations

import re
from pathlib import Path

from hecke2.core.config import cache_root

_FP_FILE = re.compile(r"fp_([0-9]+)\.json")


class PathManager:
    """Manages paths of cached F_p tables."""

    def __init__(self, base_dir: str | Path | None = None) -> None:
        """Initialize the path manager.

        Args:
            base_dir: Cache directory. Defaults to the platform cache
                directory
        """
        if base_dir is None:
            base_dir = cache_root()
        self.base_dir = Path(base_dir)

    def ensure(self) -> Path:
        """Create the cache directory if needed and return it."""
        self.base_dir.mkdir(parents=True, exist_ok=True)
        return self.base_dir

    def get_fp_path(self, p: int) -> Path:
        """Get the cache file path for F_p.

        Args:
            p: Odd prime

        Returns:
            Path to the fp_<p>.json file
        """
        return self.base_dir / f"fp_{p}.json"

    def list_cached_primes(self) -> list[int]:
        """List the primes with a cache file, in increasing order."""
        if not self.base_dir.exists():
            return []

        primes = []
        for item in self.base_dir.iterdir():
            match = _FP_FILE.fullmatch(item.name)
            if match and item.is_file():
                primes.append(int(match.group(1)))

        return sorted(primes)
