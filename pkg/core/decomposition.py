"""
Module des pm-décompositions : bandes certifiées des hypergraphes complets,
recherche exacte, heuristique gloutonne et formules fermées par famille
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional
import logging

# Import des paramètres
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent))
from config.settings import DEFAULT_PART_BUDGET, PMD_STATE_BUDGET

from .bands import Part, enumerate_bands_3, enumerate_bands_r, phi_psi_weights, rho_weights
from .errors import BudgetExceeded, CertificateError, HypergraphError, InvalidUniformity
from .hypergraph import (
    Edge,
    Hypergraph,
    Matching,
    as_matching,
    complete_uniform,
    connected_components,
    good_forest_order,
    induced_on,
    is_linear,
    matchings,
    max_degree,
)
from .pm_oracle import WeightCertificate, is_positive_matching, synthesize_weights, verify_certificate
from .walks import positive_by_walks

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PmDecomposition:
    """Parts ordonnées, chacune positive sur les arêtes qui restent à son étape."""

    host: Hypergraph
    parts: tuple[Part, ...]
    certificates: tuple[WeightCertificate, ...]

    def __len__(self) -> int:
        return len(self.parts)

    def stages(self):
        """(part, certificat, hypergraphe restant avant cette part)."""
        remaining = self.host
        for part, certificate in zip(self.parts, self.certificates):
            yield part, certificate, remaining
            remaining = remaining.without(part.edges)

    @property
    def provenance_counts(self) -> dict[str, int]:
        counts: dict[str, int] = {}
        for certificate in self.certificates:
            counts[certificate.provenance] = counts.get(certificate.provenance, 0) + 1
        return counts


@dataclass
class DecompositionReplay:
    """Résultat du rejeu complet d'une décomposition."""

    partition_ok: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.partition_ok and not self.failures


def replay_decomposition(dec: PmDecomposition) -> DecompositionReplay:
    """Vérifie la partition des arêtes puis chaque certificat sur son reste."""
    failures: list[str] = []
    seen: set[Edge] = set()
    partition_ok = True
    for index, part in enumerate(dec.parts):
        overlap = seen.intersection(part.edges)
        if overlap:
            partition_ok = False
            failures.append(f"Part {index} : arêtes déjà couvertes {sorted(overlap)}")
        seen.update(part.edges)
    if seen != set(dec.host.edges):
        partition_ok = False
        failures.append(f"Union des parts ({len(seen)} arêtes) différente de l'hôte ({len(dec.host)})")
    if len(dec.certificates) != len(dec.parts):
        failures.append("Nombre de certificats différent du nombre de parts")
        return DecompositionReplay(partition_ok, failures)

    for index, (part, certificate, remaining) in enumerate(dec.stages()):
        try:
            matching = as_matching(remaining, part.edges)
            if not verify_certificate(remaining, matching, certificate):
                failures.append(f"Part {index} {part.key or ''} : certificat rejeté")
        except (HypergraphError, CertificateError) as e:
            failures.append(f"Part {index} {part.key or ''} : {e}")
    return DecompositionReplay(partition_ok, failures)


# =============================================
# HYPERGRAPHES COMPLETS
# =============================================
def _certify_bands(
    host: Hypergraph,
    bands: list[Part],
    certify: Callable[[Part, Hypergraph], WeightCertificate],
) -> PmDecomposition:
    remaining = host
    certificates = []
    for part in bands:
        certificates.append(certify(part, remaining))
        remaining = remaining.without(part.edges)
    dec = PmDecomposition(host, tuple(bands), tuple(certificates))
    logger.info(f"Décomposition de {host.describe()} : {len(dec)} parts {dec.provenance_counts}")
    return dec


def pm_decompose_complete_3(n: int) -> PmDecomposition:
    """Décomposition certifiée de K_n^(3) par bandes (l1, l2) croissantes."""
    if n < 3:
        raise InvalidUniformity(f"Il faut n >= 3 (n={n})")
    return _certify_bands(complete_uniform(n, 3), enumerate_bands_3(n), rho_weights)


def pm_decompose_complete_r(n: int, r: int) -> PmDecomposition:
    """Décomposition certifiée de K_n^(r), une part par bande non vide."""
    if r < 3 or n < r:
        raise InvalidUniformity(f"Il faut n >= r >= 3 (n={n}, r={r})")
    return _certify_bands(
        complete_uniform(n, r),
        enumerate_bands_r(n, r),
        lambda part, remaining: phi_psi_weights(part, remaining, r),
    )


# =============================================
# RECHERCHE EXACTE ET GLOUTONNE
# =============================================
class _PositivityCache:
    """Positivité mémorisée par (arêtes induites sur V_M, M)."""

    def __init__(self):
        self.table: dict[tuple[frozenset[Edge], tuple[Edge, ...]], bool] = {}
        self.hits = 0

    def __call__(self, h: Hypergraph, m: Matching) -> bool:
        induced = induced_on(h, m.vertices)
        key = (frozenset(induced.edges), m.edges)
        if key in self.table:
            self.hits += 1
            return self.table[key]
        if is_linear(induced):
            value = positive_by_walks(h, m).positive
        else:
            value = is_positive_matching(h, m)
        self.table[key] = value
        return value


def _stage_certificate(remaining: Hypergraph, part: Part) -> WeightCertificate:
    if len(part) == 1:
        return WeightCertificate({v: Fraction(1) for v in part.edges[0]}, "singleton")
    certificate = synthesize_weights(remaining, part.matching)
    if certificate is None:
        raise CertificateError(f"Part non positive sur son reste : {list(part.edges)}")
    return certificate


def _build(host: Hypergraph, chosen: list[tuple[Edge, ...]]) -> PmDecomposition:
    remaining = host
    parts, certificates = [], []
    for edges in chosen:
        part = Part(None, tuple(sorted(edges)))
        parts.append(part)
        certificates.append(_stage_certificate(remaining, part))
        remaining = remaining.without(edges)
    return PmDecomposition(host, tuple(parts), tuple(certificates))


def pmd_exact(
    h: Hypergraph,
    part_budget: int = DEFAULT_PART_BUDGET,
    state_budget: int = PMD_STATE_BUDGET,
) -> Optional[tuple[int, PmDecomposition]]:
    """
    pmd(H) exact par séparation et évaluation mémorisée sur les restes.

    Seuls les couplages positifs maximaux pour l'inclusion sont essayés
    (pmd décroît quand on retire des arêtes) ; Δ du reste minore la valeur.

    Returns:
        (pmd, décomposition témoin), ou None si pmd > part_budget

    Raises:
        BudgetExceeded: plus de `state_budget` restes mémorisés
    """
    positive = _PositivityCache()
    memo: dict[frozenset[Edge], tuple[int, Optional[tuple[Edge, ...]]]] = {}

    def solve(rest: frozenset[Edge]) -> int:
        if not rest:
            return 0
        if rest in memo:
            return memo[rest][0]
        if len(memo) >= state_budget:
            raise BudgetExceeded("états pmd", len(memo), state_budget)

        current = Hypergraph(h.n, tuple(sorted(rest)), h.r)
        lower = max_degree(current)
        candidates = sorted(matchings(current), key=lambda m: (-len(m), m.edges))
        kept: list[frozenset[Edge]] = []
        best, choice = len(rest) + 1, None
        for m in candidates:
            edge_set = frozenset(m.edges)
            if any(edge_set < other for other in kept):
                continue
            if not positive(current, m):
                continue
            kept.append(edge_set)
            value = 1 + solve(rest - edge_set)
            if value < best:
                best, choice = value, m.edges
            if best <= lower:
                break
        memo[rest] = (best, choice)
        return best

    value = solve(frozenset(h.edges))
    logger.debug(f"pmd exact = {value} ({len(memo)} états, {positive.hits} positivités en cache)")
    if value > part_budget:
        return None

    chosen = []
    rest = frozenset(h.edges)
    while rest:
        edges = memo[rest][1]
        chosen.append(edges)
        rest = rest - frozenset(edges)
    return value, _build(h, chosen)


def pmd_greedy(h: Hypergraph) -> PmDecomposition:
    """
    Majorant glouton : on fait croître un couplage positif en essayant
    d'abord les arêtes disjointes du plus grand nombre d'arêtes restantes.
    """
    remaining = h
    chosen: list[tuple[Edge, ...]] = []
    while remaining.edges:
        edges = remaining.edges
        disjoint = {e: sum(1 for f in edges if not set(e) & set(f)) for e in edges}
        order = sorted(edges, key=lambda e: (-disjoint[e], e))
        grown: list[Edge] = []
        covered: set[int] = set()
        for e in order:
            if covered.intersection(e):
                continue
            if is_positive_matching(remaining, Matching(tuple(sorted(grown + [e])))):
                grown.append(e)
                covered.update(e)
        chosen.append(tuple(sorted(grown)))
        remaining = remaining.without(grown)
    dec = _build(h, chosen)
    logger.debug(f"pmd glouton : {len(dec)} parts")
    return dec


# =============================================
# FORMULES FERMÉES
# =============================================
def _loose_cycle_length(h: Hypergraph) -> Optional[int]:
    """Nombre d'arêtes si h (sommets isolés ignorés) est un cycle lâche, r > 2."""
    m = len(h.edges)
    if h.r <= 2 or m < 2:
        return None
    degrees = {v: len(es) for v, es in h.incidence.items()}
    if any(d > 2 for d in degrees.values()):
        return None
    for edge in h.edges:
        if sum(1 for v in edge if degrees[v] == 2) != 2:
            return None
    if len(connected_components(h)) != 1:
        return None
    return m


def pmd_formula(h: Hypergraph) -> Optional[tuple[int, str]]:
    """
    pmd par formule fermée : bonne forêt (Δ), cycle lâche (2 ou 3 selon la
    parité), ou arêtes pendantes autour d'un noyau résolu (max(pmd', Δ)).

    Returns:
        (pmd, famille) ou None si aucune famille ne s'applique
    """
    if not h.edges:
        return 0, "edgeless"
    if good_forest_order(h) is not None:
        return max_degree(h), "good-forest"

    cycle = _loose_cycle_length(h)
    if cycle is not None:
        return (2 if cycle % 2 == 0 else 3), "loose-cycle"

    degrees = {v: len(es) for v, es in h.incidence.items()}
    pendants = [e for e in h.edges if sum(1 for v in e if degrees[v] == 1) >= h.r - 1]
    if not pendants or len(pendants) == len(h.edges):
        return None
    core = pmd_formula(h.without(pendants))
    if core is None:
        return None
    return max(core[0], max_degree(h)), "pendant"
