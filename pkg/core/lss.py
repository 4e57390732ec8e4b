"""
Module des idéaux LSS : générateurs f_e^(d), seuils de classification des
bonnes forêts et export de scripts de calcul formel (templates Jinja2)
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional
from jinja2 import Environment, FileSystemLoader
import logging

# Import des paramètres
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent))
from config.settings import CAS_DIALECTS, TEMPLATES_DIR

from .errors import InvalidParameters, NotAGoodForest, UnknownDialect
from .hypergraph import Edge, Hypergraph, good_forest_order, max_degree

logger = logging.getLogger(__name__)

# Variable x_{ij} : (sommet i, copie j) ; un monôme est un produit de variables distinctes
Variable = tuple[int, int]
Monomial = tuple[Variable, ...]


@dataclass(frozen=True)
class LssPresentation:
    """Présentation de L_H(d) : un générateur (d monômes de degré r) par arête."""

    n: int
    d: int
    r: int
    edges: tuple[Edge, ...]
    generators: tuple[tuple[Monomial, ...], ...]

    @property
    def variable_count(self) -> int:
        return self.n * self.d


@dataclass(frozen=True)
class IdealClassification:
    """
    Seuils du théorème sur les bonnes forêts. prime_guaranteed est une
    condition suffisante : False signifie « non garanti », pas « non premier ».
    """

    radical: bool
    complete_intersection: bool
    prime_guaranteed: bool
    max_degree: int
    d: int


def lss_generators(h: Hypergraph, d: int) -> LssPresentation:
    """f_e^(d) = somme sur j = 1..d du produit des x_{ij}, i dans e."""
    if d < 1:
        raise InvalidParameters(f"d doit être >= 1 (d={d})")
    generators = tuple(
        tuple(tuple((i, j) for i in edge) for j in range(1, d + 1))
        for edge in h.edges
    )
    return LssPresentation(h.n, d, h.r, h.edges, generators)


def exponents(monomial: Monomial) -> dict[Variable, int]:
    """Carte des exposants d'un monôme."""
    table: dict[Variable, int] = {}
    for var in monomial:
        table[var] = table.get(var, 0) + 1
    return table


def classify_good_forest_ideal(h: Hypergraph, d: int) -> IdealClassification:
    """
    Raises:
        NotAGoodForest: h n'admet pas d'ordre de bonne forêt
    """
    if d < 1:
        raise InvalidParameters(f"d doit être >= 1 (d={d})")
    if good_forest_order(h) is None:
        raise NotAGoodForest(f"{h.describe()} n'est pas une bonne forêt")
    delta = max_degree(h)
    return IdealClassification(
        radical=True,
        complete_intersection=d >= delta,
        prime_guaranteed=d >= delta + 1,
        max_degree=delta,
        d=d,
    )


def generators_to_json(p: LssPresentation) -> dict:
    return {
        "n": p.n,
        "d": p.d,
        "r": p.r,
        "generators": [
            [{"vars": [list(var) for var in monomial]} for monomial in generator]
            for generator in p.generators
        ],
    }


def classification_to_json(c: IdealClassification) -> dict:
    return {
        "d": c.d,
        "max_degree": c.max_degree,
        "radical": c.radical,
        "complete_intersection": c.complete_intersection,
        "prime_guaranteed": c.prime_guaranteed,
    }


# =============================================
# EXPORT CALCUL FORMEL
# =============================================
class CasScriptExporter:
    """Rendu des scripts par dialecte à partir des templates Jinja2."""

    VARIABLE_FORMATS = {
        "macaulay2": "x_({i},{j})",
        "singular": "x({i})({j})",
        "sage": "x['x_{i}_{j}']",
    }

    def __init__(self, dialect: str, templates_dir: Optional[Path] = None):
        if dialect not in CAS_DIALECTS:
            raise UnknownDialect(
                f"Dialecte inconnu : {dialect}. Dialectes acceptés : {', '.join(sorted(CAS_DIALECTS))}"
            )
        self.dialect = dialect
        self.env = Environment(
            loader=FileSystemLoader(str(templates_dir or TEMPLATES_DIR)),
            autoescape=False,
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
        )
        self.env.filters["monomial"] = self._format_monomial
        self.template = self.env.get_template(CAS_DIALECTS[dialect])

    def _format_monomial(self, monomial: Monomial) -> str:
        pattern = self.VARIABLE_FORMATS[self.dialect]
        return "*".join(pattern.format(i=i, j=j) for i, j in monomial)

    def render(self, p: LssPresentation) -> str:
        return self.template.render(
            n=p.n,
            d=p.d,
            r=p.r,
            edges=[list(e) for e in p.edges],
            generators=p.generators,
        )


def export_cas_script(p: LssPresentation, dialect: str) -> str:
    """
    Raises:
        UnknownDialect: dialecte absent de CAS_DIALECTS
    """
    script = CasScriptExporter(dialect).render(p)
    logger.debug(f"Script {dialect} : {len(p.generators)} générateurs, {p.variable_count} variables")
    return script
