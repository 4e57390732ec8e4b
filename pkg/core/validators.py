"""
Module de validation des documents JSON selon leur type
"""
import pandas as pd
import re
from typing import Dict, List, Tuple, Optional
from dataclasses import dataclass
from enum import Enum
import logging

logger = logging.getLogger(__name__)

FRACTION_PATTERN = re.compile(r"^-?\d+(/[1-9]\d*)?$")


class PayloadType(Enum):
    """Types de documents supportés."""

    HYPERGRAPH = "hypergraph"
    MATCHING = "matching"
    CERTIFICATE = "certificate"
    DECOMPOSITION = "decomposition"
    REPORT = "report"


@dataclass
class ValidationResult:
    """Résultat d'une validation."""

    is_valid: bool
    errors: List[str]
    warnings: List[str]
    row_index: Optional[int] = None


class PayloadValidator:
    """
    Validateur de documents d'échange avant leur passage au moteur.
    """

    # Champs obligatoires par type de document
    REQUIRED_FIELDS = {
        PayloadType.HYPERGRAPH: {"n": int, "edges": list},
        PayloadType.MATCHING: {"matching": list},
        PayloadType.CERTIFICATE: {"weights": dict},
        PayloadType.DECOMPOSITION: {"host": dict, "parts": list},
        PayloadType.REPORT: {"command": str, "instance": str, "checks": list},
    }

    # Champs optionnels par type de document
    OPTIONAL_FIELDS = {
        PayloadType.HYPERGRAPH: {"r": int, "matching": list},
        PayloadType.MATCHING: {},
        PayloadType.CERTIFICATE: {"provenance": str},
        PayloadType.DECOMPOSITION: {"count": int},
        PayloadType.REPORT: {"totals": dict, "number": str},
    }

    def __init__(self, payload_type: PayloadType):
        """
        Args:
            payload_type: Type de document à valider
        """
        self.payload_type = payload_type
        self.required = self.REQUIRED_FIELDS[payload_type]
        self.optional = self.OPTIONAL_FIELDS[payload_type]

    def validate_structure(self, payload) -> ValidationResult:
        """
        Valide la structure du document (champs présents et types).

        Args:
            payload: document JSON décodé

        Returns:
            ValidationResult avec les erreurs/warnings
        """
        errors = []
        warnings = []

        if not isinstance(payload, dict):
            return ValidationResult(False, [f"Objet JSON attendu, reçu {type(payload).__name__}"], [])

        for name, expected_type in self.required.items():
            if name not in payload:
                errors.append(f"Champ obligatoire manquant : '{name}'")
            elif not _is_instance(payload[name], expected_type):
                errors.append(
                    f"'{name}' type incorrect (attendu: {expected_type.__name__}, "
                    f"reçu: {type(payload[name]).__name__})"
                )

        for name, expected_type in self.optional.items():
            if name in payload and payload[name] is not None and not _is_instance(payload[name], expected_type):
                errors.append(f"'{name}' type incorrect (attendu: {expected_type.__name__})")

        known = set(self.required) | set(self.optional)
        unknown = set(payload) - known
        if unknown:
            warnings.append(f"Champs non reconnus (ignorés) : {', '.join(sorted(unknown))}")

        return ValidationResult(is_valid=len(errors) == 0, errors=errors, warnings=warnings)

    def validate_content(self, payload: Dict) -> ValidationResult:
        """Contrôles propres à chaque type de document."""
        errors: List[str] = []
        if self.payload_type == PayloadType.HYPERGRAPH:
            errors.extend(_validate_hypergraph(payload))
        elif self.payload_type == PayloadType.MATCHING:
            errors.extend(_validate_edge_list(payload["matching"], "matching"))
        elif self.payload_type == PayloadType.CERTIFICATE:
            errors.extend(_validate_weights(payload["weights"]))
        elif self.payload_type == PayloadType.DECOMPOSITION:
            errors.extend(_validate_decomposition(payload))
        return ValidationResult(is_valid=len(errors) == 0, errors=errors, warnings=[])

    def validate(self, payload) -> Tuple[bool, List[ValidationResult]]:
        """
        Valide l'ensemble du document.

        Returns:
            Tuple (is_valid, list of ValidationResult)
        """
        structure = self.validate_structure(payload)
        results = [structure]
        if not structure.is_valid:
            logger.error("Erreurs de structure détectées")
            for error in structure.errors:
                logger.error(f"  - {error}")
            return False, results

        content = self.validate_content(payload)
        results.append(content)
        for error in content.errors:
            logger.error(f"  - {error}")
        return content.is_valid, results


def _is_instance(value, expected_type) -> bool:
    if expected_type is int:
        return isinstance(value, int) and not isinstance(value, bool)
    return isinstance(value, expected_type)


def _validate_edge_list(edges, label: str) -> List[str]:
    errors = []
    for i, edge in enumerate(edges):
        if not isinstance(edge, list) or not edge:
            errors.append(f"{label}[{i}] : liste de sommets non vide attendue")
        elif not all(_is_instance(v, int) for v in edge):
            errors.append(f"{label}[{i}] : sommets entiers attendus")
    return errors


def _validate_hypergraph(payload: Dict) -> List[str]:
    errors = []
    if payload["n"] < 1:
        errors.append("'n' doit être >= 1")
    errors.extend(_validate_edge_list(payload["edges"], "edges"))
    if "matching" in payload:
        errors.extend(_validate_edge_list(payload["matching"], "matching"))
    return errors


def _validate_weights(weights: Dict) -> List[str]:
    errors = []
    for vertex, value in weights.items():
        if not str(vertex).isdigit():
            errors.append(f"Sommet non entier dans les poids : '{vertex}'")
        if not isinstance(value, str) or not FRACTION_PATTERN.match(value):
            errors.append(f"Poids du sommet {vertex} : rationnel \"p/q\" attendu, reçu {value!r}")
    return errors


def _validate_decomposition(payload: Dict) -> List[str]:
    errors = PayloadValidator(PayloadType.HYPERGRAPH).validate_structure(payload["host"]).errors
    for i, part in enumerate(payload["parts"]):
        if not isinstance(part, dict):
            errors.append(f"parts[{i}] : objet attendu")
            continue
        for name in ("edges", "certificate"):
            if name not in part:
                errors.append(f"parts[{i}] : champ '{name}' manquant")
        if "edges" in part:
            errors.extend(_validate_edge_list(part["edges"], f"parts[{i}].edges"))
        if isinstance(part.get("certificate"), dict) and "weights" in part["certificate"]:
            errors.extend(_validate_weights(part["certificate"]["weights"]))
    if "count" in payload and payload["count"] != len(payload["parts"]):
        errors.append(f"'count' = {payload['count']} ne correspond pas aux {len(payload['parts'])} parts")
    return errors


def validate_edge_frame(df: pd.DataFrame) -> ValidationResult:
    """
    Valide une liste d'arêtes tabulaire : une arête par ligne, sommets
    entiers positifs, cellules vides tolérées en fin de ligne.
    """
    errors = []
    warnings = []
    if df.empty:
        warnings.append("Aucune arête dans le fichier")
    for idx, row in df.iterrows():
        values = row.dropna().tolist()
        if not values:
            errors.append(f"Ligne {idx + 1} : arête vide")
            continue
        for value in values:
            try:
                number = float(value)
            except (ValueError, TypeError):
                errors.append(f"Ligne {idx + 1} : sommet non numérique {value!r}")
                continue
            if number != int(number) or number < 1:
                errors.append(f"Ligne {idx + 1} : sommet invalide {value!r}")
    return ValidationResult(is_valid=len(errors) == 0, errors=errors, warnings=warnings)


# Fonction utilitaire
def validate_payload(payload, payload_type: str | PayloadType) -> Tuple[bool, List[ValidationResult]]:
    """
    Valide un document pour un type donné.

    Args:
        payload: document JSON décodé
        payload_type: "hypergraph", "matching", "certificate", "decomposition" ou "report"

    Returns:
        Tuple (is_valid, list of ValidationResult)
    """
    if isinstance(payload_type, str):
        payload_type = PayloadType(payload_type.lower())
    return PayloadValidator(payload_type).validate(payload)
