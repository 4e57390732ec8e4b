"""
Module des rapports de vérification (JSON canonique ou tableau pandas)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional
import pandas as pd

from .serializers import canonical_digest


@dataclass
class CheckResult:
    """Un contrôle : nom, succès et pièces justificatives rejouables."""

    name: str
    passed: bool
    detail: str = ""
    evidence: dict[str, Any] = field(default_factory=dict)


@dataclass
class VerificationReport:
    """Rapport d'une commande de vérification."""

    command: str
    instance: str
    checks: list[CheckResult] = field(default_factory=list)
    number: Optional[str] = None

    def add(self, name: str, passed: bool, detail: str = "", **evidence) -> CheckResult:
        check = CheckResult(name, bool(passed), detail, evidence)
        self.checks.append(check)
        return check

    @property
    def passed(self) -> int:
        return sum(1 for c in self.checks if c.passed)

    @property
    def failed(self) -> int:
        return len(self.checks) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        payload = {
            "command": self.command,
            "instance": self.instance,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail, "evidence": c.evidence}
                for c in self.checks
            ],
            "totals": {"passed": self.passed, "failed": self.failed},
        }
        if self.number is not None:
            payload["number"] = self.number
        return payload

    @classmethod
    def from_json(cls, payload: dict) -> "VerificationReport":
        report = cls(payload["command"], payload["instance"], number=payload.get("number"))
        for item in payload.get("checks", []):
            report.add(item["name"], item["passed"], item.get("detail", ""), **item.get("evidence", {}))
        return report

    def digest(self) -> str:
        """SHA-256 du rapport canonique, numéro de journal exclu."""
        payload = self.to_json()
        payload.pop("number", None)
        return canonical_digest(payload)

    def to_dataframe(self) -> pd.DataFrame:
        return pd.DataFrame(
            [{"contrôle": c.name, "statut": "OK" if c.passed else "ÉCHEC", "détail": c.detail} for c in self.checks],
            columns=["contrôle", "statut", "détail"],
        )

    def to_table(self) -> str:
        header = f"{self.command} : {self.instance}"
        if self.number:
            header += f" ({self.number})"
        footer = f"{self.passed} réussi(s), {self.failed} échec(s)"
        if not self.checks:
            return f"{header}\n{footer}"
        return f"{header}\n{self.to_dataframe().to_string(index=False)}\n{footer}"
