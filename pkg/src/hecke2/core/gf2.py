"""Incremental Gaussian elimination over GF(2) with bit-packed rows."""

from __future__ import annotations

from hecke2.core.errors import SolverInconsistent


class GF2System:
    """A linear system over GF(2) reduced to echelon form as rows arrive.

    Each row is an integer: bits 0..n-1 are the coefficients of the unknowns
    and bit n is the right-hand side. Stored rows are keyed by their highest
    coefficient bit (the pivot), and no two stored rows share a pivot.
    """

    def __init__(self, unknowns: int) -> None:
        self.unknowns = unknowns
        self._coeff_mask = (1 << unknowns) - 1
        self._pivots: dict[int, int] = {}
        self.equations_seen = 0

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def is_determined(self) -> bool:
        return self.rank == self.unknowns

    def add_equation(self, coefficients: int, rhs: int) -> bool:
        """Add sum(x_i for bits i of coefficients) = rhs.

        Returns:
            True if the equation raised the rank

        Raises:
            SolverInconsistent: If the equation reduces to 0 = 1
        """
        self.equations_seen += 1
        row = (coefficients & self._coeff_mask) | ((rhs & 1) << self.unknowns)
        while True:
            coeffs = row & self._coeff_mask
            if not coeffs:
                if row:
                    raise SolverInconsistent(
                        f"equation {self.equations_seen} contradicts earlier ones"
                    )
                return False
            top = coeffs.bit_length() - 1
            pivot_row = self._pivots.get(top)
            if pivot_row is None:
                self._pivots[top] = row
                return True
            row ^= pivot_row

    def solve(self) -> int:
        """Back-substitute a fully determined system.

        Returns:
            Bit mask of the unknowns equal to 1

        Raises:
            ValueError: If the rank is below the number of unknowns
        """
        if not self.is_determined():
            raise ValueError(
                f"system has rank {self.rank} for {self.unknowns} unknowns"
            )
        values = 0
        for top in sorted(self._pivots):
            row = self._pivots[top]
            lower = row & ((1 << top) - 1)
            bit = ((row >> self.unknowns) ^ (lower & values).bit_count()) & 1
            if bit:
                values |= 1 << top
        return values
