"""
Module oracle des couplages positifs : vérification et synthèse de poids exacts
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Optional, Union
import logging

# Import des paramètres
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent))
from config.settings import CUT_BATCH_SIZE

from .errors import ScopeMissingVertex
from .hypergraph import Edge, Hypergraph, Matching, as_matching, induced_on
from .simplex import find_nonnegative_solution

logger = logging.getLogger(__name__)

MatchingLike = Union[Matching, Iterable[Iterable[int]]]


@dataclass(frozen=True)
class WeightCertificate:
    """
    Poids rationnels w : V_M -> Q témoignant de la positivité d'un couplage.

    provenance : "LP", "constructive", "LP-fallback" ou "singleton".
    detail : conditions relâchées ou équations incompatibles de la
    construction, vide sinon.
    """

    weights: Mapping[int, Fraction]
    provenance: str = "LP"
    detail: str = ""

    @property
    def scope(self) -> frozenset[int]:
        return frozenset(self.weights)

    def edge_sum(self, edge: Edge) -> Fraction:
        try:
            return sum((self.weights[v] for v in edge), Fraction(0))
        except KeyError as e:
            raise ScopeMissingVertex(f"Sommet {e.args[0]} sans poids dans le certificat") from None

    def scaled(self, factor: Fraction) -> "WeightCertificate":
        """Certificat multiplié par un rationnel."""
        return WeightCertificate({v: w * factor for v, w in self.weights.items()}, self.provenance, self.detail)


@dataclass(frozen=True)
class FarkasCertificate:
    """
    Témoin dual de non-positivité : multiplicités y >= 0 sur les arêtes du
    couplage (non toutes nulles) et z >= 0 sur les arêtes complémentaires
    induites, avec y(M(v)) = somme des z(f) pour f contenant v.
    """

    inner: Mapping[Edge, Fraction]
    outer: Mapping[Edge, Fraction] = field(default_factory=dict)

    def integral(self) -> tuple[dict[Edge, int], dict[Edge, int]]:
        """Multiplicités entières proportionnelles (dénominateurs chassés)."""
        values = list(self.inner.values()) + list(self.outer.values())
        scale = lcm(*(v.denominator for v in values)) if values else 1
        return (
            {e: int(v * scale) for e, v in self.inner.items() if v},
            {f: int(v * scale) for f, v in self.outer.items() if v},
        )


def _normalize(h: Hypergraph, m: MatchingLike) -> Matching:
    return m if isinstance(m, Matching) else as_matching(h, m)


def complement_edges(h: Hypergraph, m: Matching) -> tuple[Edge, ...]:
    """Arêtes de H[V_M] qui ne sont pas dans M."""
    return tuple(e for e in induced_on(h, m.vertices).edges if e not in m.edges)


def verify_certificate(h: Hypergraph, m: MatchingLike, w: WeightCertificate) -> bool:
    """
    Rejoue un certificat : somme > 0 sur chaque arête de M, < 0 sur chaque
    autre arête de H[V_M]. Comparaisons exactes.

    Raises:
        ScopeMissingVertex: un sommet de V_M n'a pas de poids
    """
    m = _normalize(h, m)
    missing = sorted(m.vertices - w.scope)
    if missing:
        raise ScopeMissingVertex(f"Sommets sans poids : {missing}")

    for edge in m.edges:
        if w.edge_sum(edge) <= 0:
            return False
    for edge in complement_edges(h, m):
        if w.edge_sum(edge) >= 0:
            return False
    return True


def _solve_margin_system(
    vertices: list[int], positive: list[Edge], negative: list[Edge]
) -> Optional[dict[int, Fraction]]:
    """
    Résout somme >= 1 sur `positive` et somme <= -1 sur `negative`.

    Génération de coupes : on résout sur un sous-ensemble actif de
    contraintes négatives puis on ajoute celles qui sont violées.
    """
    index = {v: i for i, v in enumerate(vertices)}
    k = len(vertices)
    active = list(negative[:CUT_BATCH_SIZE])
    pending = list(negative[CUT_BATCH_SIZE:])

    while True:
        rows = [(e, 1) for e in positive] + [(f, -1) for f in active]
        width = 2 * k + len(rows)
        a_eq, b_eq = [], []
        for r, (edge, sign) in enumerate(rows):
            line = [Fraction(0)] * width
            for v in edge:
                line[index[v]] += sign
                line[k + index[v]] -= sign
            line[2 * k + r] = Fraction(-1)
            a_eq.append(line)
            b_eq.append(Fraction(1))

        point = find_nonnegative_solution(a_eq, b_eq)
        if point is None:
            return None
        weights = {v: point[index[v]] - point[k + index[v]] for v in vertices}

        violated = [f for f in pending if sum(weights[v] for v in f) > -1]
        if not violated:
            return weights
        batch = violated[:CUT_BATCH_SIZE]
        active.extend(batch)
        chosen = set(batch)
        pending = [f for f in pending if f not in chosen]


def synthesize_weights(h: Hypergraph, m: MatchingLike) -> Optional[WeightCertificate]:
    """
    Cherche un certificat de positivité par programmation linéaire exacte.

    Le système strict homogène est remplacé par le système à marge 1
    (équivalent par mise à l'échelle).

    Returns:
        WeightCertificate sur V_M, ou None si M n'est pas positif
    """
    m = _normalize(h, m)
    if not m.edges:
        return WeightCertificate({}, "LP")
    vertices = sorted(m.vertices)
    weights = _solve_margin_system(vertices, list(m.edges), list(complement_edges(h, m)))
    if weights is None:
        return None
    return WeightCertificate(weights, "LP")


def farkas_certificate(h: Hypergraph, m: MatchingLike) -> Optional[FarkasCertificate]:
    """
    Témoin dual de non-positivité, ou None si M est positif.
    """
    m = _normalize(h, m)
    if not m.edges:
        return None
    outer_edges = complement_edges(h, m)
    columns = list(m.edges) + list(outer_edges)
    col_index = {e: j for j, e in enumerate(columns)}

    a_eq, b_eq = [], []
    for v in sorted(m.vertices):
        line = [Fraction(0)] * len(columns)
        line[col_index[m.owner[v]]] += 1
        for f in outer_edges:
            if v in f:
                line[col_index[f]] -= 1
        a_eq.append(line)
        b_eq.append(Fraction(0))
    a_eq.append([Fraction(1) if j < len(m.edges) else Fraction(0) for j in range(len(columns))])
    b_eq.append(Fraction(1))

    point = find_nonnegative_solution(a_eq, b_eq)
    if point is None:
        return None
    inner = {e: point[col_index[e]] for e in m.edges if point[col_index[e]]}
    outer = {f: point[col_index[f]] for f in outer_edges if point[col_index[f]]}
    return FarkasCertificate(inner, outer)


def peel_private_edges(h: Hypergraph, m: MatchingLike) -> Matching:
    """
    Retire itérativement les arêtes de M possédant un sommet privé (contenu
    dans aucune autre arête induite sur V_M) ; la positivité est inchangée.
    """
    m = _normalize(h, m)
    current = list(m.edges)
    changed = True
    while changed and current:
        changed = False
        induced = induced_on(h, {v for e in current for v in e})
        for edge in current:
            if any(induced.incidence.get(v) == (edge,) for v in edge):
                current.remove(edge)
                changed = True
                break
    return Matching(tuple(current))


def is_positive_matching(h: Hypergraph, m: MatchingLike) -> bool:
    """Vrai si M admet un certificat de positivité."""
    m = _normalize(h, m)
    core = peel_private_edges(h, m)
    if not core.edges:
        return True
    return synthesize_weights(h, core) is not None
