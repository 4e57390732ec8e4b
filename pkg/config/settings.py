"""
Configuration globale de PMD-KIT
"""
import os
from pathlib import Path
from datetime import datetime

# Chemins du projet
BASE_DIR = Path(__file__).resolve().parent.parent
TEMPLATES_DIR = BASE_DIR / "templates"
DATABASE_PATH = Path(os.environ.get("PMDKIT_DB", BASE_DIR / "database" / "pmdkit.db"))
LOG_FILE = Path(os.environ.get("PMDKIT_LOG", BASE_DIR / "pmdkit.log"))

# =============================================
# FORMAT D'ÉCHANGE JSON
# =============================================
JSON_INDENT = 2
SUPPORTED_ENCODINGS = ["utf-8", "latin-1", "cp1252"]

# =============================================
# BUDGETS DE RECHERCHE
# =============================================
# Noeuds développés dans un arbre alterné enraciné (toutes racines confondues)
WALK_TREE_BUDGET = 20_000

# Plafond d'occurrences d'un sommet dans l'arbre : FACTEUR * (deg(v) - 1)
OCCURRENCE_CAP_FACTOR = 2

# Recherche exhaustive des témoins réguliers (N, N1)
REGULAR_SEARCH_BUDGET = 200_000
REGULAR_MAX_MATCHING = 6
REGULAR_MAX_VERTICES = 20

# pmd exact : nombre d'états mémorisés et nombre de parts par défaut
PMD_STATE_BUDGET = 50_000
DEFAULT_PART_BUDGET = 12

# Contraintes ajoutées par tour dans la génération de coupes du simplexe
CUT_BATCH_SIZE = 25

# =============================================
# SUITES ALÉATOIRES
# =============================================
DEFAULT_SEED = 20240131

# =============================================
# EXPORT CALCUL FORMEL
# =============================================
CAS_DIALECTS = {
    "macaulay2": "lss_macaulay2.m2.j2",
    "singular": "lss_singular.sing.j2",
    "sage": "lss_sage.sage.j2",
}

# =============================================
# CODES DE SORTIE
# =============================================
EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_THEOREM = 3

# =============================================
# JOURNAL DES RAPPORTS
# =============================================
REPORT_PREFIX = "RPT"
CURRENT_YEAR = datetime.now().year
