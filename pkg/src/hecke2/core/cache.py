"""On-disk cache of F_p tables."""

from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path

from hecke2.core.paths import PathManager
from hecke2.core.recurrence import FpPolynomial, compute_fp
from hecke2.core.utils import validate_odd_prime

logger = logging.getLogger(__name__)


class FpCacheManager:
    """Loads, stores and clears the JSON renderings of F_p."""

    def __init__(self, base_dir: str | Path | None = None) -> None:
        """Initialize the cache manager.

        Args:
            base_dir: Cache directory
        """
        self.path_manager = PathManager(base_dir)

    def load(self, p: int) -> FpPolynomial | None:
        """Read F_p from the cache.

        Files that do not parse, belong to another prime or fail the F_p
        invariants are treated as missing.

        Args:
            p: Odd prime

        Returns:
            The cached polynomial, or None
        """
        path = self.path_manager.get_fp_path(p)
        if not path.exists():
            logger.debug("cache miss for F_%d", p)
            return None
        try:
            with open(path) as f:
                fp = FpPolynomial.from_dict(json.load(f))
        except (OSError, ValueError) as e:
            logger.warning("ignoring unreadable cache file %s: %s", path, e)
            return None
        if fp.p != p:
            logger.warning("ignoring %s: it holds F_%d", path, fp.p)
            return None
        problems = fp.violations()
        if problems:
            logger.warning("ignoring %s: %s", path, problems[0])
            return None
        logger.debug("cache hit for F_%d", p)
        return fp

    def save(self, fp: FpPolynomial) -> Path:
        """Write F_p to the cache atomically.

        Raises:
            RuntimeError: If the file cannot be written
        """
        path = self.path_manager.get_fp_path(fp.p)
        try:
            directory = self.path_manager.ensure()
            fd, tmp_name = tempfile.mkstemp(
                prefix=f".fp_{fp.p}.", suffix=".tmp", dir=directory
            )
            with os.fdopen(fd, "w") as f:
                f.write(fp.to_json() + "\n")
            os.replace(tmp_name, path)
        except OSError as e:
            raise RuntimeError(f"Failed to write cache file {path}: {e}") from e
        logger.debug("cached F_%d at %s", fp.p, path)
        return path

    def get_or_compute(self, p: int, use_cache: bool = True) -> FpPolynomial:
        """F_p from the cache, computing and storing it on a miss.

        Args:
            p: Odd prime
            use_cache: Bypass the cache entirely when False

        Raises:
            PreconditionError: If p is not an odd prime
            SolverInconsistent: If F_p cannot be determined
        """
        validate_odd_prime(p)
        if use_cache:
            cached = self.load(p)
            if cached is not None:
                return cached
        fp = compute_fp(p)
        if use_cache:
            try:
                self.save(fp)
            except RuntimeError as e:
                logger.warning("%s", e)
        return fp

    def entries(self) -> list[int]:
        return self.path_manager.list_cached_primes()

    def clear(self) -> int:
        """Remove every cached F_p.

        Returns:
            Number of files removed

        Raises:
            RuntimeError: If a file cannot be removed
        """
        removed = 0
        for p in self.entries():
            path = self.path_manager.get_fp_path(p)
            try:
                path.unlink()
            except OSError as e:
                raise RuntimeError(f"Failed to remove {path}: {e}") from e
            removed += 1
        return removed
