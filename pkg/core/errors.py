"""
Hiérarchie des exceptions de PMD-KIT
"""
from typing import Optional


class PmdKitError(Exception):
    """Classe de base de toutes les erreurs de la bibliothèque."""


# =============================================
# HYPERGRAPHES
# =============================================
class HypergraphError(PmdKitError, ValueError):
    """Hypergraphe ou paramètre de construction invalide."""


class VertexOutOfRange(HypergraphError):
    pass


class DuplicateVertexInEdge(HypergraphError):
    pass


class NonUniform(HypergraphError):
    pass


class NotAClutter(HypergraphError):
    pass


class InvalidUniformity(HypergraphError):
    pass


class InvalidParameters(HypergraphError):
    pass


class AnchorNotInHost(HypergraphError):
    pass


class FreshVertexCollision(HypergraphError):
    pass


class NotAMatching(HypergraphError):
    """Les arêtes données ne sont pas disjointes ou pas dans l'hôte."""


# =============================================
# CERTIFICATS ET MARCHES
# =============================================
class CertificateError(PmdKitError, ValueError):
    pass


class ScopeMissingVertex(CertificateError):
    pass


class NotLinear(PmdKitError, ValueError):
    pass


class RootNotMatched(PmdKitError, ValueError):
    pass


class NotAGoodForest(PmdKitError, ValueError):
    pass


class RangeViolation(PmdKitError, ValueError):
    pass


class UnknownDialect(PmdKitError, ValueError):
    pass


# =============================================
# BUDGETS
# =============================================
class SearchBudgetExceeded(PmdKitError, RuntimeError):
    """Une recherche exhaustive a dépassé sa limite configurée."""

    def __init__(self, what: str, explored: int, limit: int):
        self.what = what
        self.explored = explored
        self.limit = limit
        super().__init__(f"Budget dépassé ({what}) : {explored} explorés, limite {limit}")


BudgetExceeded = SearchBudgetExceeded


# =============================================
# CONTRADICTIONS AVEC UN THÉORÈME (code de sortie 3)
# =============================================
class TheoremViolation(PmdKitError, RuntimeError):
    """Résultat contredisant un énoncé démontré : bogue ou découverte."""

    def __init__(self, message: str, diagnostic: Optional[dict] = None):
        super().__init__(message)
        self.diagnostic = diagnostic or {}


class NoAdmissibleT(TheoremViolation):
    pass


class CertificateUnobtainable(TheoremViolation):
    pass
