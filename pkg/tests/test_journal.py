"""
Tests du journal SQLite et des rapports
"""
import pytest
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).parent.parent))

from config.settings import CURRENT_YEAR
from core.reports import VerificationReport
from database.journal import JournalManager


@pytest.fixture
def journal(tmp_path):
    return JournalManager(tmp_path / "journal.db")


def _report(passed: bool = True) -> VerificationReport:
    report = VerificationReport("verify-conjecture", "r=3, n=4..5")
    report.add("n=4", True, "4 parts rejouées", n=4)
    report.add("n=5", passed, "10 parts rejouées", n=5)
    return report


class TestVerificationReport:
    """Tests des rapports."""

    def test_totals(self):
        """Test compteurs."""
        report = _report(passed=False)
        assert report.passed == 1
        assert report.failed == 1
        assert not report.ok

    def test_json_round_trip(self):
        """Test relecture du JSON."""
        report = _report()
        again = VerificationReport.from_json(report.to_json())
        assert again.to_json() == report.to_json()
        assert again.to_json()["totals"] == {"passed": 2, "failed": 0}

    def test_digest_ignores_number(self):
        """Test empreinte indépendante du numéro de journal."""
        report = _report()
        before = report.digest()
        report.number = "RPT-2024-00007"
        assert report.digest() == before

    def test_table(self):
        """Test rendu tabulaire pandas."""
        table = _report(passed=False).to_table()
        assert "verify-conjecture" in table
        assert "ÉCHEC" in table
        assert "1 réussi(s), 1 échec(s)" in table

    def test_empty_table(self):
        """Test rapport sans contrôle."""
        assert "0 réussi(s)" in VerificationReport("verify", "vide").to_table()


class TestJournalManager:
    """Tests du journal."""

    def test_sequential_numbers(self, journal):
        """Test numérotation RPT-<année>-<00001>."""
        assert journal.get_next_number() == f"RPT-{CURRENT_YEAR}-00001"
        assert journal.get_next_number() == f"RPT-{CURRENT_YEAR}-00002"

    def test_numbering_per_year(self, journal):
        """Test compteur indépendant par année."""
        journal.get_next_number(2023)
        assert journal.get_next_number(2024) == "RPT-2024-00001"

    def test_log_and_lookup(self, journal):
        """Test enregistrement puis recherche par numéro."""
        report = _report()
        entry = journal.log_report(report)
        assert report.number == entry.report_number
        found = journal.get_report_by_number(entry.report_number)
        assert found is not None
        assert found.command == "verify-conjecture"
        assert found.passed == 2
        assert found.digest == report.digest()

    def test_unknown_number(self, journal):
        """Test numéro inconnu."""
        assert journal.get_report_by_number("RPT-1999-00001") is None

    def test_stats(self, journal):
        """Test statistiques par commande."""
        journal.log_report(_report())
        journal.log_report(_report(passed=False))
        journal.log_report(VerificationReport("verify", "x"))
        stats = journal.get_stats()
        assert stats["total_reports"] == 3
        assert stats["verify-conjecture"] == {"count": 2, "failed": 1}
        assert len(journal.get_reports_by_command("verify")) == 1

    def test_persistence(self, tmp_path):
        """Test réouverture de la base."""
        path = tmp_path / "journal.db"
        JournalManager(path).log_report(_report())
        assert JournalManager(path).get_stats()["total_reports"] == 1
