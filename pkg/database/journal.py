"""
Module du journal des rapports et numérotation séquentielle avec SQLite
"""
import sqlite3
from pathlib import Path
from datetime import datetime
from typing import Optional, List
from dataclasses import dataclass
import logging

# Import des paramètres
import sys

sys.path.append(str(Path(__file__).parent.parent))
from config.settings import DATABASE_PATH, REPORT_PREFIX, CURRENT_YEAR
from core.reports import VerificationReport

logger = logging.getLogger(__name__)


@dataclass
class ReportLog:
    """Représente un rapport enregistré."""

    id: Optional[int]
    report_number: str
    command: str
    instance: str
    passed: int
    failed: int
    digest: str
    created_at: datetime


class JournalManager:
    """Gestionnaire du journal SQLite."""

    def __init__(self, db_path: Path = DATABASE_PATH):
        """
        Initialise le journal.

        Args:
            db_path: Chemin vers le fichier SQLite
        """
        self.db_path = Path(db_path)
        self.db_path.parent.mkdir(parents=True, exist_ok=True)
        self._init_database()

    def _get_connection(self) -> sqlite3.Connection:
        """Crée et retourne une connexion à la base."""
        conn = sqlite3.connect(str(self.db_path))
        conn.row_factory = sqlite3.Row
        return conn

    def _init_database(self) -> None:
        """Initialise les tables de la base de données."""
        with self._get_connection() as conn:
            cursor = conn.cursor()

            # Table des rapports émis
            cursor.execute("""
                CREATE TABLE IF NOT EXISTS reports (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    report_number TEXT UNIQUE NOT NULL,
                    command TEXT NOT NULL,
                    instance TEXT,
                    passed INTEGER DEFAULT 0,
                    failed INTEGER DEFAULT 0,
                    digest TEXT NOT NULL,
                    created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
                )
            """)

            # Table de numérotation séquentielle
            cursor.execute("""
                CREATE TABLE IF NOT EXISTS numbering (
                    year INTEGER PRIMARY KEY,
                    last_number INTEGER DEFAULT 0
                )
            """)

            cursor.execute("""
                CREATE INDEX IF NOT EXISTS idx_reports_command
                ON reports(command)
            """)

            conn.commit()

        logger.debug(f"Journal initialisé : {self.db_path}")

    def get_next_number(self, year: int = CURRENT_YEAR) -> str:
        """
        Génère le prochain numéro de rapport.

        Returns:
            Numéro formaté (ex: RPT-2024-00001)
        """
        with self._get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("""
                INSERT INTO numbering (year, last_number)
                VALUES (?, 1)
                ON CONFLICT(year) DO UPDATE SET
                    last_number = last_number + 1
            """, (year,))
            cursor.execute("SELECT last_number FROM numbering WHERE year = ?", (year,))
            number = cursor.fetchone()["last_number"]
            conn.commit()

        return f"{REPORT_PREFIX}-{year}-{number:05d}"

    def log_report(self, report: VerificationReport) -> ReportLog:
        """
        Numérote le rapport (report.number est renseigné) et l'enregistre.

        Returns:
            L'entrée créée
        """
        report.number = self.get_next_number()
        entry = ReportLog(
            id=None,
            report_number=report.number,
            command=report.command,
            instance=report.instance,
            passed=report.passed,
            failed=report.failed,
            digest=report.digest(),
            created_at=datetime.now(),
        )
        with self._get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("""
                INSERT INTO reports (
                    report_number, command, instance, passed, failed, digest, created_at
                )
                VALUES (?, ?, ?, ?, ?, ?, ?)
            """, (
                entry.report_number,
                entry.command,
                entry.instance,
                entry.passed,
                entry.failed,
                entry.digest,
                entry.created_at.isoformat(),
            ))
            conn.commit()
            entry.id = cursor.lastrowid

        logger.info(f"Rapport enregistré : {entry.report_number} (ID: {entry.id})")
        return entry

    @staticmethod
    def _row_to_log(row: sqlite3.Row) -> ReportLog:
        return ReportLog(
            id=row["id"],
            report_number=row["report_number"],
            command=row["command"],
            instance=row["instance"],
            passed=row["passed"],
            failed=row["failed"],
            digest=row["digest"],
            created_at=datetime.fromisoformat(row["created_at"]),
        )

    def get_report_by_number(self, report_number: str) -> Optional[ReportLog]:
        """
        Récupère un rapport par son numéro.

        Returns:
            ReportLog ou None si non trouvé
        """
        with self._get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("SELECT * FROM reports WHERE report_number = ?", (report_number,))
            row = cursor.fetchone()
            if row:
                return self._row_to_log(row)
        return None

    def get_reports_by_command(self, command: str, limit: int = 100, offset: int = 0) -> List[ReportLog]:
        """Rapports d'une commande, du plus récent au plus ancien."""
        with self._get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("""
                SELECT * FROM reports
                WHERE command = ?
                ORDER BY id DESC
                LIMIT ? OFFSET ?
            """, (command, limit, offset))
            return [self._row_to_log(row) for row in cursor.fetchall()]

    def get_stats(self) -> dict:
        """
        Récupère les statistiques du journal.

        Returns:
            Dictionnaire {commande: {count, failed}} plus "total_reports"
        """
        with self._get_connection() as conn:
            cursor = conn.cursor()

            stats = {}
            cursor.execute("""
                SELECT command, COUNT(*) as count, SUM(failed > 0) as failing
                FROM reports
                GROUP BY command
            """)
            for row in cursor.fetchall():
                stats[row["command"]] = {
                    "count": row["count"],
                    "failed": row["failing"] or 0,
                }

            cursor.execute("SELECT COUNT(*) as count FROM reports")
            stats["total_reports"] = cursor.fetchone()["count"]

            return stats


# Instance globale
_journal: Optional[JournalManager] = None


def get_journal() -> JournalManager:
    """Retourne l'instance globale du journal."""
    global _journal
    if _journal is None:
        _journal = JournalManager()
    return _journal


def record_report(report: VerificationReport) -> str:
    """
    Enregistre un rapport dans le journal global.

    Returns:
        Numéro attribué
    """
    return get_journal().log_report(report).report_number
