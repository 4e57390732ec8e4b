"""
Module des bandes E_{l_1,...,l_{r-1}} des hypergraphes complets et de leurs
certificats constructifs (rho pour r = 3, phi/psi pour r >= 4)
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Optional, Sequence
import logging

from .calculators import AffineExpr, TInterval, affine_sum
from .errors import CertificateUnobtainable, NoAdmissibleT, RangeViolation
from .hypergraph import Edge, Hypergraph, Matching
from .pm_oracle import WeightCertificate, complement_edges, synthesize_weights, verify_certificate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Part:
    """
    Une part de décomposition : couplage et, pour une bande, sa clé
    (l_1, ..., l_{r-1}) des sommes de sommets consécutifs.
    """

    key: Optional[tuple[int, ...]]
    edges: tuple[Edge, ...]

    @property
    def layout(self) -> tuple[Edge, ...]:
        """Lignes x_{i1} < ... < x_{ir}, triées par premier sommet croissant."""
        return tuple(sorted(self.edges, key=lambda e: e[0]))

    @property
    def matching(self) -> Matching:
        return Matching(tuple(sorted(self.edges)))

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)

    def __len__(self) -> int:
        return len(self.edges)


def band_key(edge: Edge) -> tuple[int, ...]:
    return tuple(edge[j] + edge[j + 1] for j in range(len(edge) - 1))


def band_count_formula(n: int) -> int:
    """Nombre de bandes non vides pour r = 3 : (3/2)n² - (15/2)n + 10."""
    return (3 * n * n - 15 * n + 20) // 2


def band_count_bound(n: int, r: int) -> int:
    """Majorant binomial(2n-3, r-1) du nombre de bandes."""
    return comb(2 * n - 3, r - 1)


# =============================================
# ÉNUMÉRATION
# =============================================
def _check_key_range(n: int, r: int, key: tuple[int, ...]) -> None:
    if len(key) != r - 1:
        raise RangeViolation(f"Clé de longueur {len(key)}, attendu {r - 1}")
    for j, l in enumerate(key, start=1):
        low, high = 2 * j + 1, 2 * n - 2 * r + 2 * j + 1
        if not low <= l <= high:
            raise RangeViolation(f"l_{j} = {l} hors de [{low}, {high}]")


def band_edges_3(n: int, l1: int, l2: int) -> Part:
    """
    Bande E_{l1,l2} de K_n^(3) : arêtes {l1 - l2 + λ, l2 - λ, λ} pour
    3 <= λ <= n, strictement croissantes et de premier sommet >= 1.
    """
    if not 3 <= l1 <= 2 * n - 3 or not 5 <= l2 <= 2 * n - 1:
        raise RangeViolation(f"(l1, l2) = ({l1}, {l2}) hors de [3, {2 * n - 3}] x [5, {2 * n - 1}]")
    edges = []
    for lam in range(3, n + 1):
        a, b = l1 - l2 + lam, l2 - lam
        if 1 <= a < b < lam:
            edges.append((a, b, lam))
    return Part((l1, l2), tuple(edges))


def enumerate_bands_3(n: int) -> list[Part]:
    """Bandes non vides dans l'ordre lexicographique des clés (l1, l2)."""
    bands = []
    for l1 in range(3, 2 * n - 2):
        for l2 in range(5, 2 * n):
            part = band_edges_3(n, l1, l2)
            if part.edges:
                bands.append(part)
    return bands


def band_edges_r(n: int, r: int, key: tuple[int, ...]) -> Part:
    """Bande E_{l_1,...,l_{r-1}} de K_n^(r), parcourue par premier sommet."""
    key = tuple(key)
    _check_key_range(n, r, key)
    edges = []
    for x1 in range(1, n + 1):
        edge = [x1]
        for l in key:
            edge.append(l - edge[-1])
        if edge[-1] <= n and all(u < v for u, v in zip(edge, edge[1:])):
            edges.append(tuple(edge))
    return Part(key, tuple(edges))


def enumerate_bands_r(n: int, r: int) -> list[Part]:
    """Toutes les bandes non vides de K_n^(r), clés en ordre lexicographique."""
    groups: dict[tuple[int, ...], list[Edge]] = {}
    for edge in combinations(range(1, n + 1), r):
        groups.setdefault(band_key(edge), []).append(edge)
    return [Part(key, tuple(groups[key])) for key in sorted(groups)]


# =============================================
# STRUCTURE DES CERTIFICATS CONSTRUCTIFS
# =============================================
def row_sums(part: Part, certificate: WeightCertificate) -> list[Fraction]:
    return [certificate.edge_sum(row) for row in part.layout]


def descending_chain_holds(part: Part, certificate: WeightCertificate) -> bool:
    """
    Poids strictement décroissants le long des sommets croissants de la
    bande, sauf égalité permise entre x_{1,i} et x_{1,i+1} (i pair).
    """
    first_row = part.layout[0]
    ties = {(first_row[i], first_row[i + 1]) for i in range(1, len(first_row) - 1, 2)}
    chain = sorted(part.vertices)
    for u, v in zip(chain, chain[1:]):
        wu, wv = certificate.weights[u], certificate.weights[v]
        if wu > wv or ((u, v) in ties and wu == wv):
            continue
        return False
    return True


def _singleton(part: Part) -> WeightCertificate:
    return WeightCertificate({v: Fraction(1) for v in part.edges[0]}, "singleton")


def _fallback(part: Part, remaining: Hypergraph, notes: Sequence[str] = ()) -> WeightCertificate:
    certificate = synthesize_weights(remaining, part.matching)
    if certificate is None:
        raise CertificateUnobtainable(
            f"Aucun certificat pour la bande {part.key}",
            {"key": list(part.key or ()), "edges": [list(e) for e in part.layout], "notes": list(notes)},
        )
    return WeightCertificate(certificate.weights, "LP-fallback", "; ".join(notes))


def certificate_interval(part: Part, remaining: Hypergraph, forms: dict[int, AffineExpr]) -> TInterval:
    """
    Valeurs de t pour lesquelles les poids affines certifient la bande :
    somme > 0 sur chaque ligne, < 0 sur chaque arête restante de H[V_part].
    """
    interval = TInterval()
    for row in part.layout:
        interval.require(affine_sum(forms[v] for v in row), ">")
    for edge in complement_edges(remaining, part.matching):
        interval.require(affine_sum(forms[v] for v in edge), "<")
    return interval


# =============================================
# RHO (r = 3)
# =============================================
def rho_forms(part: Part) -> list[list[AffineExpr]]:
    """Valeurs rho(x_{ij}) comme expressions affines en t, ligne par ligne."""
    t = AffineExpr.t()
    rows = len(part.layout)
    rho: list[list[AffineExpr]] = [[AffineExpr()] * 3 for _ in range(rows)]
    half = -(t * Fraction(1, 2) - 1)
    rho[0] = [t, half, half]
    if rows >= 2:
        rho[1][0] = -(1 + rho[0][1] + rho[0][2])
        rho[1][2] = -(1 + rho[0][0] + rho[0][1])
        rho[1][1] = 1 - (rho[1][0] + rho[1][2])
    for i in range(2, rows):
        rho[i][0] = -(1 + rho[i - 1][1] + rho[i - 2][1])
        rho[i][2] = -(1 + rho[i - 1][0] + rho[i - 1][1])
        rho[i][1] = 1 - (rho[i][0] + rho[i][2])
    return rho


def rho_weights(part: Part, remaining: Hypergraph) -> WeightCertificate:
    """
    Certificat de positivité d'une bande de K_n^(3) sur les arêtes restantes.

    Raises:
        NoAdmissibleT: les conditions rho(x_{a+1,1}) > 0 et rho(x_{a+1,2}) <= 0
            n'admettent aucun t naturel
    """
    if len(part) == 1:
        return _singleton(part)

    forms = rho_forms(part)
    interval = TInterval().require(forms[-1][0], ">").require(forms[-1][1], "<=")
    t = interval.minimal_natural(1)
    if t is None:
        raise NoAdmissibleT(
            f"Aucun t admissible pour la bande {part.key} : {interval!r}",
            {"key": list(part.key or ()), "interval": repr(interval)},
        )

    weights = {
        v: form.evaluate(t)
        for row, row_forms in zip(part.layout, forms)
        for v, form in zip(row, row_forms)
    }
    certificate = WeightCertificate(weights, "constructive")
    if verify_certificate(remaining, part.matching, certificate):
        logger.debug(f"Bande {part.key} : t = {t}")
        return certificate
    logger.warning(f"Certificat rho rejeté pour la bande {part.key} (t = {t}), repli sur le simplexe")
    return _fallback(part, remaining, [f"certificat rho rejeté (t = {t})"])


# =============================================
# PHI / PSI (r >= 4)
# =============================================
class _AffineSystem:
    """
    Élimination de Gauss exacte, forme réduite : inconnues = sommets,
    seconds membres affines en t.
    """

    def __init__(self, unknowns):
        self.unknowns = frozenset(unknowns)
        self.rows: dict[int, tuple[dict[int, Fraction], AffineExpr]] = {}

    def add(self, coeffs: dict[int, Fraction], rhs: AffineExpr) -> str:
        """Ajoute une équation ; renvoie "added", "redundant" ou "inconsistent"."""
        coeffs = {v: Fraction(c) for v, c in coeffs.items() if c}
        for pivot, (row, row_rhs) in self.rows.items():
            c = coeffs.get(pivot)
            if not c:
                continue
            for v, x in row.items():
                coeffs[v] = coeffs.get(v, Fraction(0)) - c * x
            rhs = rhs - row_rhs * c
            coeffs = {v: x for v, x in coeffs.items() if x}
        if not coeffs:
            return "redundant" if rhs == AffineExpr() else "inconsistent"

        pivot = min(coeffs)
        scale = 1 / coeffs[pivot]
        coeffs = {v: x * scale for v, x in coeffs.items()}
        rhs = rhs * scale
        for other, (row, row_rhs) in list(self.rows.items()):
            c = row.get(pivot)
            if not c:
                continue
            updated = dict(row)
            for v, x in coeffs.items():
                updated[v] = updated.get(v, Fraction(0)) - c * x
            self.rows[other] = ({v: x for v, x in updated.items() if x}, row_rhs - rhs * c)
        self.rows[pivot] = (coeffs, rhs)
        return "added"

    @property
    def complete(self) -> bool:
        return len(self.rows) == len(self.unknowns)

    def solution(self) -> dict[int, AffineExpr]:
        return {pivot: rhs for pivot, (_, rhs) in self.rows.items()}


def _sum_equation(target: int, others: list[int]) -> dict[int, Fraction]:
    """target + somme(others) = -1, sous forme de coefficients."""
    coeffs: dict[int, Fraction] = {target: Fraction(1)}
    for v in others:
        coeffs[v] = coeffs.get(v, Fraction(0)) + 1
    return coeffs


def _phi_psi_equations(layout: tuple[Edge, ...], r: int):
    """Équations de la construction, par priorité décroissante."""
    chain = sorted(v for row in layout for v in row)
    position = {v: i for i, v in enumerate(chain)}
    minus_one = AffineExpr.const(-1)

    def following(v: int, count: int) -> Optional[list[int]]:
        start = position[v] + 1
        block = chain[start:start + count]
        return block if len(block) == count else None

    yield {layout[0][0]: Fraction(1)}, AffineExpr.t()
    for row in layout:
        yield {v: Fraction(1) for v in row}, AffineExpr.const(1)

    first = layout[0]
    last_pair = r - 1 if r % 2 else r - 2
    for i in range(2, last_pair + 1, 2):
        left, right = first[i - 1], first[i]
        yield {left: Fraction(1), right: Fraction(-1)}, AffineExpr()
        alphas = following(right, r - i)
        if alphas is not None:
            yield _sum_equation(left, list(first[: i - 1]) + alphas), minus_one

    for ell in range(1, len(layout)):
        row = layout[ell]
        for k in range(1, r):
            betas = following(row[k], r - k)
            if betas is not None:
                yield _sum_equation(row[k - 1], list(row[: k - 1]) + betas), minus_one
        if r % 2:
            yield _sum_equation(row[-1], list(layout[ell - 1][:-1])), minus_one

    if r % 2 == 0:
        for ell in range(len(layout) - 1):
            yield _sum_equation(layout[ell][-1], list(layout[ell + 1][:-1])), minus_one


Condition = tuple[str, AffineExpr, str]


def _phi_psi_conditions(layout: tuple[Edge, ...], forms: dict[int, AffineExpr]) -> list[Condition]:
    """Conditions de la construction : (libellé, expression, relation à 0)."""
    conditions: list[Condition] = []

    def compare(u: int, v: int, relation: str) -> None:
        conditions.append((f"w({u}) {relation} w({v})", forms[u] - forms[v], relation))

    first = layout[0]
    conditions.append((f"w({first[1]}) < 0", forms[first[1]], "<"))
    for u, v in zip(first[1:], first[2:]):
        compare(u, v, ">=")
    for ell in range(1, len(layout)):
        row, previous = layout[ell], layout[ell - 1]
        for u, v in zip(row, row[1:]):
            compare(u, v, ">")
        for p, (above, below) in enumerate(zip(previous, row)):
            # Colonnes impaires (1-based) décroissantes, paires croissantes
            compare(above, below, ">" if p % 2 == 0 else "<")
    last = layout[-1]
    conditions.append((f"w({last[0]}) > 0", forms[last[0]], ">"))
    conditions.append((f"w({last[1]}) <= 0", forms[last[1]], "<="))
    return conditions


def _interval_of(conditions: Sequence[Condition]) -> TInterval:
    interval = TInterval()
    for _, expr, relation in conditions:
        interval.require(expr, relation)
    return interval


def _unsatisfiable(conditions: Sequence[Condition]) -> list[str]:
    """Libellés des conditions fausses pour tout t (égalités imposées par le système)."""
    return [label for label, expr, relation in conditions if TInterval().require(expr, relation).is_empty()]


def _render_equation(coeffs: dict[int, Fraction], rhs: AffineExpr) -> str:
    terms = []
    for v in sorted(coeffs):
        c = coeffs[v]
        sign = "-" if c < 0 else "+"
        magnitude = "" if abs(c) == 1 else f"{abs(c)}*"
        terms.append(f"{sign} {magnitude}w({v})")
    return " ".join(terms).lstrip("+ ") + f" = {rhs}"


@dataclass(frozen=True)
class PhiPsiSystem:
    """Poids phi/psi résolus en t (None si sous-déterminés) et équations écartées."""

    forms: Optional[dict[int, AffineExpr]]
    conflicts: tuple[str, ...] = ()


def phi_psi_forms(part: Part, r: int) -> PhiPsiSystem:
    """
    Résout simultanément toutes les équations de phi (r impair) ou psi
    (r pair), références avant comprises. Une équation incompatible avec
    celles de priorité supérieure est écartée et rapportée.
    """
    system = _AffineSystem(part.vertices)
    conflicts = []
    for coeffs, rhs in _phi_psi_equations(part.layout, r):
        if system.add(coeffs, rhs) == "inconsistent":
            conflicts.append(_render_equation(coeffs, rhs))
    if conflicts:
        logger.info(f"Bande {part.key} : {len(conflicts)} équation(s) incompatible(s) : {conflicts}")
    return PhiPsiSystem(system.solution() if system.complete else None, tuple(conflicts))


def phi_psi_weights(part: Part, remaining: Hypergraph, r: int) -> WeightCertificate:
    """
    Certificat d'une bande de K_n^(r) sur les arêtes restantes.

    t est le plus petit naturel satisfaisant les conditions de la
    construction. Quand celles-ci sont incompatibles (égalités forcées par
    le système), t est pris dans l'intervalle où les mêmes poids certifient
    la bande, et les conditions relâchées sont notées dans `detail`. Repli
    sur le simplexe exact (provenance "LP-fallback") si aucun t ne convient.

    Raises:
        CertificateUnobtainable: ni la construction ni le simplexe n'aboutissent
    """
    if r == 3:
        return rho_weights(part, remaining)
    if len(part) == 1:
        return _singleton(part)

    system = phi_psi_forms(part, r)
    notes = [f"phi/psi incompatible : {equation}" for equation in system.conflicts]
    if system.forms is None:
        notes.append("phi/psi sous-déterminé")
        logger.info(f"Bande {part.key} : construction sous-déterminée, repli sur le simplexe")
        return _fallback(part, remaining, notes)
    forms = system.forms

    conditions = _phi_psi_conditions(part.layout, forms)
    interval = _interval_of(conditions)
    t = interval.minimal_natural(1)
    if t is None:
        relaxed = _unsatisfiable(conditions) or [f"conditions jointes {interval!r}"]
        notes.append("conditions relâchées : " + ", ".join(relaxed))
        interval = certificate_interval(part, remaining, forms)
        t = interval.minimal_natural(1)
        if t is None:
            notes.append(f"aucun t certifiant {interval!r}")
            logger.info(f"Bande {part.key} : aucun t admissible, repli sur le simplexe")
            return _fallback(part, remaining, notes)
        logger.debug(f"Bande {part.key} : {notes[-1]}")

    certificate = WeightCertificate({v: form.evaluate(t) for v, form in forms.items()}, "constructive", "; ".join(notes))
    if verify_certificate(remaining, part.matching, certificate):
        logger.debug(f"Bande {part.key} : t = {t}")
        return certificate
    notes.append(f"certificat phi/psi rejeté (t = {t})")
    logger.warning(f"Certificat phi/psi rejeté pour la bande {part.key} (t = {t}), repli sur le simplexe")
    return _fallback(part, remaining, notes)


def row_sum_forms(part: Part) -> list[AffineExpr]:
    """Sommes de lignes de rho comme expressions en t."""
    return [affine_sum(row) for row in rho_forms(part)]
