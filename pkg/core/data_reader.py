"""
Module de lecture des documents d'entrée (JSON et listes d'arêtes CSV)
"""
import io
import json
import sys
import pandas as pd
from pathlib import Path
from typing import Optional
import logging

sys.path.append(str(Path(__file__).parent.parent))
from config.settings import SUPPORTED_ENCODINGS

from .errors import InvalidParameters
from .hypergraph import Hypergraph, make_hypergraph
from .serializers import hypergraph_from_json
from .validators import PayloadType, validate_edge_frame, validate_payload

logger = logging.getLogger(__name__)

STDIN = "-"


class DataReader:
    """
    Lecteur de documents avec support multi-format et multi-encodage.

    `-` désigne l'entrée standard (JSON uniquement).
    """

    SUPPORTED_EXTENSIONS = {".json", ".csv"}
    SUPPORTED_ENCODINGS = SUPPORTED_ENCODINGS

    def __init__(self, file_path: str | Path, stdin: Optional[io.TextIOBase] = None):
        """
        Initialise le lecteur avec le chemin du fichier.

        Args:
            file_path: Chemin vers le fichier JSON ou CSV, ou "-"
            stdin: flux à lire pour "-" (sys.stdin par défaut)
        """
        self.is_stdin = str(file_path) == STDIN
        self.file_path = Path(file_path)
        self.stdin = stdin
        self._validate_file()
        self.data = None

    def _validate_file(self) -> None:
        """Vérifie que le fichier existe et a une extension supportée."""
        if self.is_stdin:
            return
        if not self.file_path.exists():
            raise FileNotFoundError(f"Fichier introuvable : {self.file_path}")

        if self.file_path.suffix.lower() not in self.SUPPORTED_EXTENSIONS:
            raise InvalidParameters(
                f"Extension non supportée : {self.file_path.suffix}. "
                f"Extensions acceptées : {', '.join(sorted(self.SUPPORTED_EXTENSIONS))}"
            )

    @property
    def is_csv(self) -> bool:
        return not self.is_stdin and self.file_path.suffix.lower() == ".csv"

    def read(self):
        """
        Lit le document : dict pour un JSON, DataFrame pour un CSV.
        """
        if self.is_csv:
            self.data = self._read_csv()
            logger.info(f"Fichier lu avec succès : {len(self.data)} arêtes")
        else:
            self.data = self._read_json()
            logger.info(f"Document JSON lu : {self.source}")
        return self.data

    @property
    def source(self) -> str:
        return "<stdin>" if self.is_stdin else str(self.file_path)

    def _read_json(self):
        if self.is_stdin:
            text = (self.stdin or sys.stdin).read()
        else:
            text = self._read_text()
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            raise InvalidParameters(f"JSON invalide dans {self.source} : {e}") from None

    def _read_text(self) -> str:
        """Lit le fichier avec détection de l'encodage."""
        raw = self.file_path.read_bytes()
        for encoding in self.SUPPORTED_ENCODINGS:
            try:
                text = raw.decode(encoding)
                logger.debug(f"Encodage détecté : {encoding}")
                return text
            except UnicodeDecodeError:
                continue

        raise InvalidParameters(
            f"Impossible de lire le fichier avec les encodages : "
            f"{', '.join(self.SUPPORTED_ENCODINGS)}"
        )

    def _read_csv(self) -> pd.DataFrame:
        """
        Lit une liste d'arêtes CSV (une arête par ligne, sans en-tête).

        Returns:
            DataFrame, une colonne par position de sommet
        """
        for encoding in self.SUPPORTED_ENCODINGS:
            try:
                df = pd.read_csv(
                    self.file_path,
                    encoding=encoding,
                    header=None,
                    sep=None,  # Détection automatique du séparateur
                    engine="python",
                    comment="#",
                    skip_blank_lines=True,
                )
                logger.debug(f"Encodage détecté : {encoding}")
                return df
            except UnicodeDecodeError:
                continue
            except pd.errors.EmptyDataError:
                return pd.DataFrame()
            except Exception as e:
                logger.warning(f"Erreur avec encodage {encoding} : {e}")
                continue

        raise InvalidParameters(
            f"Impossible de lire le fichier avec les encodages : "
            f"{', '.join(self.SUPPORTED_ENCODINGS)}"
        )

    def read_hypergraph(self, n: Optional[int] = None) -> Hypergraph:
        """
        Lit et valide un hypergraphe.

        Args:
            n: nombre de sommets pour un CSV (max des sommets par défaut)
        """
        data = self.read() if self.data is None else self.data
        if isinstance(data, pd.DataFrame):
            result = validate_edge_frame(data)
            if not result.is_valid:
                raise InvalidParameters("; ".join(result.errors))
            edges = [[int(v) for v in row.dropna().tolist()] for _, row in data.iterrows()]
            n = n or max((max(e) for e in edges), default=1)
            return make_hypergraph(n, edges)

        is_valid, results = validate_payload(data, PayloadType.HYPERGRAPH)
        for result in results:
            for warning in result.warnings:
                logger.warning(warning)
        if not is_valid:
            raise InvalidParameters("; ".join(e for r in results for e in r.errors))
        return hypergraph_from_json(data)


# Fonction utilitaire pour lecture rapide
def read_document(file_path: str | Path):
    """Lit un document JSON ou CSV."""
    return DataReader(file_path).read()


def read_hypergraph(file_path: str | Path, n: Optional[int] = None) -> Hypergraph:
    """Lit un hypergraphe depuis un JSON ({"n", "edges"}) ou un CSV d'arêtes."""
    return DataReader(file_path).read_hypergraph(n)
