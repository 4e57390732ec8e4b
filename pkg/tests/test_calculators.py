"""
Tests du module calculators
"""
import pytest
from fractions import Fraction
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).parent.parent))

from core.calculators import AffineExpr, TInterval, affine_sum, format_fraction, to_fraction


class TestFractions:
    """Tests de conversion exacte."""

    def test_to_fraction_string(self):
        """Test chaîne "p/q" réduite."""
        assert to_fraction("6/4") == Fraction(3, 2)

    def test_to_fraction_int(self):
        """Test entier."""
        assert to_fraction(-5) == Fraction(-5)

    def test_float_refused(self):
        """Test refus des flottants."""
        with pytest.raises(TypeError):
            to_fraction(0.5)

    def test_unreadable_string(self):
        """Test chaîne illisible."""
        with pytest.raises(ValueError):
            to_fraction("un demi")

    @pytest.mark.parametrize("value,expected", [(Fraction(3, 2), "3/2"), (Fraction(4, 2), "2"), (Fraction(-1, 3), "-1/3")])
    def test_format(self, value, expected):
        """Test forme canonique."""
        assert format_fraction(value) == expected


class TestAffineExpr:
    """Tests des expressions affines en t."""

    def test_arithmetic(self):
        """Test combinaison et évaluation."""
        t = AffineExpr.t()
        expr = 6 - t * Fraction(1, 2)
        assert expr.evaluate(12) == 0
        assert (expr + t).evaluate(2) == 7

    def test_negation(self):
        """Test -(1 - t/2 + 1 - t/2) = t - 2."""
        t = AffineExpr.t()
        half = 1 - t * Fraction(1, 2)
        assert -(half + half) == t - 2

    def test_sum(self):
        """Test somme de ligne t + 2(1 - t/2) = 2."""
        t = AffineExpr.t()
        half = 1 - t * Fraction(1, 2)
        assert affine_sum([t, half, half]) == AffineExpr.const(2)

    def test_str(self):
        """Test rendu lisible."""
        t = AffineExpr.t()
        assert str(t - 3) == "t - 3"
        assert str(AffineExpr.const(Fraction(5, 2))) == "5/2"


class TestTInterval:
    """Tests des intervalles de t admissibles."""

    def test_minimal_natural(self):
        """Test t > 3 et 6 - t/2 <= 0 : t = 12."""
        t = AffineExpr.t()
        interval = TInterval().require(t - 3, ">").require(6 - t * Fraction(1, 2), "<=")
        assert interval.minimal_natural() == 12

    def test_strict_lower_bound(self):
        """Test t > 4 : t = 5."""
        interval = TInterval().require(AffineExpr.t() - 4, ">")
        assert interval.minimal_natural() == 5

    def test_empty(self):
        """Test t > 5 et t < 5."""
        t = AffineExpr.t()
        interval = TInterval().require(t - 5, ">").require(t - 5, "<")
        assert interval.is_empty()
        assert interval.minimal_natural() is None

    def test_no_integer_inside(self):
        """Test ]1/3, 2/3[ : aucun entier."""
        t = AffineExpr.t()
        interval = TInterval().require(t - Fraction(1, 3), ">").require(t - Fraction(2, 3), "<")
        assert not interval.is_empty()
        assert interval.minimal_natural() is None

    def test_constant_contradiction(self):
        """Test contrainte constante fausse."""
        interval = TInterval().require(AffineExpr.const(-1), ">=")
        assert interval.is_empty()

    def test_unknown_relation(self):
        """Test relation inconnue."""
        with pytest.raises(ValueError):
            TInterval().require(AffineExpr.t(), "!=")
