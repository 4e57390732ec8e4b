"""
Simplexe exact (phase un) sur les rationnels, règle de Bland
"""
from fractions import Fraction
from typing import Optional, Sequence
import logging

logger = logging.getLogger(__name__)


class PhaseOneSimplex:
    """
    Recherche d'un point x >= 0 tel que A x = b, en arithmétique exacte.

    Variables artificielles sur chaque ligne, minimisation de leur somme ;
    la règle du plus petit indice (Bland) rend le pivotage déterministe et
    garantit la terminaison.
    """

    def __init__(self, a_eq: Sequence[Sequence[Fraction]], b_eq: Sequence[Fraction]):
        """
        Args:
            a_eq: matrice des contraintes (lignes)
            b_eq: second membre
        """
        if len(a_eq) != len(b_eq):
            raise ValueError("Dimensions incohérentes entre A et b")
        self.n_rows = len(a_eq)
        self.n_cols = len(a_eq[0]) if a_eq else 0
        self.pivots = 0

        # Second membre positif : on retourne les lignes négatives
        self.tableau: list[list[Fraction]] = []
        for row, rhs in zip(a_eq, b_eq):
            row = [Fraction(x) for x in row]
            rhs = Fraction(rhs)
            if rhs < 0:
                row, rhs = [-x for x in row], -rhs
            artificial = [Fraction(0)] * self.n_rows
            artificial[len(self.tableau)] = Fraction(1)
            self.tableau.append(row + artificial + [rhs])

        self.basis = [self.n_cols + i for i in range(self.n_rows)]
        width = self.n_cols + self.n_rows + 1
        self.objective = [Fraction(0)] * width
        for row in self.tableau:
            for j in range(self.n_cols):
                self.objective[j] -= row[j]
            self.objective[-1] -= row[-1]

    def _entering(self) -> Optional[int]:
        for j in range(self.n_cols + self.n_rows):
            if self.objective[j] < 0:
                return j
        return None

    def _leaving(self, col: int) -> Optional[int]:
        best_row, best_ratio = None, None
        for i, row in enumerate(self.tableau):
            if row[col] > 0:
                ratio = row[-1] / row[col]
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and self.basis[i] < self.basis[best_row])
                ):
                    best_row, best_ratio = i, ratio
        return best_row

    def _pivot(self, row_index: int, col: int) -> None:
        pivot_row = self.tableau[row_index]
        factor = pivot_row[col]
        if factor != 1:
            pivot_row[:] = [x / factor for x in pivot_row]
        for i, row in enumerate(self.tableau):
            if i != row_index and row[col] != 0:
                k = row[col]
                row[:] = [x - k * p for x, p in zip(row, pivot_row)]
        k = self.objective[col]
        if k != 0:
            self.objective[:] = [x - k * p for x, p in zip(self.objective, pivot_row)]
        self.basis[row_index] = col
        self.pivots += 1

    def solve(self) -> Optional[list[Fraction]]:
        """
        Returns:
            un point réalisable exact, ou None si le système est irréalisable
        """
        while True:
            col = self._entering()
            if col is None:
                break
            row = self._leaving(col)
            if row is None:
                # Phase un bornée inférieurement par 0 : ne peut arriver
                break
            self._pivot(row, col)

        if -self.objective[-1] != 0:
            return None
        point = [Fraction(0)] * self.n_cols
        for i, var in enumerate(self.basis):
            if var < self.n_cols:
                point[var] = self.tableau[i][-1]
        return point


def find_nonnegative_solution(
    a_eq: Sequence[Sequence[Fraction]], b_eq: Sequence[Fraction]
) -> Optional[list[Fraction]]:
    """Point x >= 0 avec A x = b, ou None."""
    if not a_eq:
        return []
    solver = PhaseOneSimplex(a_eq, b_eq)
    point = solver.solve()
    logger.debug(f"Phase un : {solver.n_rows}x{solver.n_cols}, {solver.pivots} pivots")
    return point
