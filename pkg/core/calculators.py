"""
Module de calcul exact (rationnels, expressions affines en t, intervalles)
"""
from fractions import Fraction
from math import floor, ceil
from typing import Optional, Union
from dataclasses import dataclass

Number = Union[int, Fraction]


def to_fraction(value: Union[int, str, Fraction]) -> Fraction:
    """
    Convertit une valeur en rationnel exact.

    Les flottants sont refusés : aucune valeur approchée ne doit entrer
    dans un certificat.

    Args:
        value: entier, rationnel ou chaîne "p/q"

    Returns:
        Fraction réduite
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"Valeur non exacte refusée : {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"Rationnel illisible : {value!r}") from e
    raise TypeError(f"Type non supporté : {type(value).__name__}")


def format_fraction(value: Fraction) -> str:
    """Forme canonique d'un rationnel : "p/q" réduit, ou "p" si entier."""
    return str(Fraction(value))


@dataclass(frozen=True)
class AffineExpr:
    """Expression constant + t_coefficient * t, évaluée exactement."""

    constant: Fraction = Fraction(0)
    t_coefficient: Fraction = Fraction(0)

    @classmethod
    def const(cls, value: Number) -> "AffineExpr":
        return cls(Fraction(value), Fraction(0))

    @classmethod
    def t(cls) -> "AffineExpr":
        return cls(Fraction(0), Fraction(1))

    def __add__(self, other: Union["AffineExpr", Number]) -> "AffineExpr":
        if not isinstance(other, AffineExpr):
            other = AffineExpr.const(other)
        return AffineExpr(self.constant + other.constant, self.t_coefficient + other.t_coefficient)

    __radd__ = __add__

    def __neg__(self) -> "AffineExpr":
        return AffineExpr(-self.constant, -self.t_coefficient)

    def __sub__(self, other: Union["AffineExpr", Number]) -> "AffineExpr":
        if not isinstance(other, AffineExpr):
            other = AffineExpr.const(other)
        return self + (-other)

    def __rsub__(self, other: Number) -> "AffineExpr":
        return AffineExpr.const(other) - self

    def __mul__(self, scalar: Number) -> "AffineExpr":
        scalar = Fraction(scalar)
        return AffineExpr(self.constant * scalar, self.t_coefficient * scalar)

    __rmul__ = __mul__

    def evaluate(self, t: Number) -> Fraction:
        """Valeur exacte en t."""
        return self.constant + self.t_coefficient * Fraction(t)

    def __str__(self) -> str:
        if self.t_coefficient == 0:
            return format_fraction(self.constant)
        coef = "" if self.t_coefficient == 1 else ("-" if self.t_coefficient == -1 else f"{format_fraction(self.t_coefficient)}*")
        if self.constant == 0:
            return f"{coef}t"
        sign = "+" if self.constant > 0 else "-"
        return f"{coef}t {sign} {format_fraction(abs(self.constant))}"


def affine_sum(terms) -> AffineExpr:
    """Somme d'un itérable d'expressions affines."""
    total = AffineExpr()
    for term in terms:
        total = total + term
    return total


class TInterval:
    """
    Ensemble des t rationnels satisfaisant une conjonction de contraintes
    affines strictes ou larges. Toujours un intervalle (convexe).
    """

    def __init__(self):
        self.lower: Optional[Fraction] = None
        self.lower_strict = False
        self.upper: Optional[Fraction] = None
        self.upper_strict = False
        self.contradiction = False

    def _tighten_lower(self, bound: Fraction, strict: bool) -> None:
        if self.lower is None or bound > self.lower or (bound == self.lower and strict):
            self.lower, self.lower_strict = bound, strict

    def _tighten_upper(self, bound: Fraction, strict: bool) -> None:
        if self.upper is None or bound < self.upper or (bound == self.upper and strict):
            self.upper, self.upper_strict = bound, strict

    def require(self, expr: AffineExpr, relation: str) -> "TInterval":
        """
        Ajoute la contrainte `expr relation 0`.

        Args:
            expr: expression affine en t
            relation: ">", ">=", "<", "<=" ou "=="
        """
        if relation not in (">", ">=", "<", "<=", "=="):
            raise ValueError(f"Relation inconnue : {relation}")
        if relation == "==":
            self.require(expr, ">=")
            return self.require(expr, "<=")
        if relation in ("<", "<="):
            return self.require(-expr, ">" if relation == "<" else ">=")

        strict = relation == ">"
        a, c = expr.t_coefficient, expr.constant
        if a == 0:
            if c < 0 or (strict and c == 0):
                self.contradiction = True
            return self
        root = -c / a
        if a > 0:
            self._tighten_lower(root, strict)
        else:
            self._tighten_upper(root, strict)
        return self

    def is_empty(self) -> bool:
        if self.contradiction:
            return True
        if self.lower is None or self.upper is None:
            return False
        if self.lower < self.upper:
            return False
        return self.lower > self.upper or self.lower_strict or self.upper_strict

    def contains(self, t: Number) -> bool:
        t = Fraction(t)
        if self.contradiction:
            return False
        if self.lower is not None and (t < self.lower or (self.lower_strict and t == self.lower)):
            return False
        if self.upper is not None and (t > self.upper or (self.upper_strict and t == self.upper)):
            return False
        return True

    def minimal_natural(self, start: int = 1) -> Optional[int]:
        """
        Plus petit entier t >= start dans l'intervalle.

        Returns:
            l'entier, ou None si l'intervalle n'en contient aucun
        """
        if self.contradiction:
            return None
        candidate = start
        if self.lower is not None:
            candidate = max(candidate, floor(self.lower) + 1 if self.lower_strict else ceil(self.lower))
        return candidate if self.contains(candidate) else None

    def __repr__(self) -> str:
        left = "]" if self.lower_strict else "["
        right = "[" if self.upper_strict else "]"
        lo = "-inf" if self.lower is None else format_fraction(self.lower)
        hi = "+inf" if self.upper is None else format_fraction(self.upper)
        return f"TInterval({left}{lo}, {hi}{right}{', vide' if self.is_empty() else ''})"
