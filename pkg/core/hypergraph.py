"""
Module des hypergraphes uniformes : représentation exacte, familles standard
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence
import logging

from .errors import (
    AnchorNotInHost,
    DuplicateVertexInEdge,
    FreshVertexCollision,
    InvalidParameters,
    InvalidUniformity,
    NonUniform,
    NotAClutter,
    NotAMatching,
    VertexOutOfRange,
)

logger = logging.getLogger(__name__)

Edge = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    """
    Hypergraphe r-uniforme sur les sommets 1..n.

    Les arêtes sont des tuples strictement croissants, la liste est triée
    lexicographiquement. Construire via make_hypergraph() pour bénéficier
    de la validation. `ground` restreint l'ensemble de sommets (H[A]) ;
    les labels restent dans 1..n.
    """

    n: int
    edges: tuple[Edge, ...]
    r: int
    ground: Optional[frozenset[int]] = None

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def incidence(self) -> dict[int, tuple[Edge, ...]]:
        """Sommet -> arêtes qui le contiennent (sommets isolés absents)."""
        table: dict[int, list[Edge]] = {}
        for edge in self.edges:
            for v in edge:
                table.setdefault(v, []).append(edge)
        return {v: tuple(es) for v, es in table.items()}

    @property
    def vertices(self) -> Sequence[int]:
        if self.ground is not None:
            return tuple(sorted(self.ground))
        return range(1, self.n + 1)

    def index_of(self, edge: Sequence[int]) -> int:
        """Indice (0-based) d'une arête dans l'ordre lexicographique."""
        key = tuple(sorted(edge))
        try:
            return self.edges.index(key)
        except ValueError:
            raise NotAMatching(f"Arête absente de l'hypergraphe : {list(key)}") from None

    def without(self, removed: Iterable[Edge]) -> "Hypergraph":
        """Même ensemble de sommets, arêtes retirées."""
        removed = set(removed)
        return Hypergraph(self.n, tuple(e for e in self.edges if e not in removed), self.r, self.ground)

    def __len__(self) -> int:
        return len(self.edges)

    def describe(self) -> str:
        return f"Hypergraph(n={self.n}, r={self.r}, {len(self.edges)} arêtes)"


@dataclass(frozen=True)
class Matching:
    """Ensemble d'arêtes deux à deux disjointes d'un hypergraphe hôte."""

    edges: tuple[Edge, ...]

    @cached_property
    def vertices(self) -> frozenset[int]:
        return frozenset(v for e in self.edges for v in e)

    @cached_property
    def owner(self) -> dict[int, Edge]:
        """Sommet couvert -> l'unique arête du couplage qui le contient."""
        return {v: e for e in self.edges for v in e}

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __contains__(self, edge: object) -> bool:
        return edge in self.edges


@dataclass(frozen=True)
class PendantSpec:
    """Arête pendante {anchor} ∪ fresh, les sommets frais étant de degré 1."""

    anchor: int
    fresh: tuple[int, ...] = field(default_factory=tuple)


def _normalize_edge(raw: Iterable[int], n: int) -> Edge:
    """Trie une arête et vérifie bornes et répétitions."""
    vertices = [int(v) for v in raw]
    if not vertices:
        raise InvalidParameters("Arête vide")
    for v in vertices:
        if not 1 <= v <= n:
            raise VertexOutOfRange(f"Sommet {v} hors de 1..{n}")
    if len(set(vertices)) != len(vertices):
        raise DuplicateVertexInEdge(f"Sommet répété dans l'arête {vertices}")
    return tuple(sorted(vertices))


def is_clutter(edges: Sequence[Edge]) -> bool:
    """Vrai si aucune arête n'en contient strictement une autre."""
    sets = [frozenset(e) for e in edges]
    for a, b in combinations(sets, 2):
        if a < b or b < a:
            return False
    return True


def make_hypergraph(n: int, edges: Iterable[Iterable[int]], r: Optional[int] = None) -> Hypergraph:
    """
    Construit un hypergraphe uniforme validé.

    Args:
        n: nombre de sommets (sommets 1..n)
        edges: listes de sommets
        r: uniformité déclarée (obligatoire pour un hypergraphe sans arête)

    Returns:
        Hypergraph aux arêtes dédupliquées et triées
    """
    if n < 1:
        raise InvalidParameters(f"Nombre de sommets invalide : {n}")
    normalized = sorted({_normalize_edge(e, n) for e in edges})

    sizes = {len(e) for e in normalized}
    if len(sizes) > 1:
        raise NonUniform(f"Tailles d'arêtes mélangées : {sorted(sizes)}")
    if not is_clutter(normalized):
        raise NotAClutter("Une arête en contient une autre")

    uniformity = sizes.pop() if sizes else r
    if r is not None and uniformity != r:
        raise NonUniform(f"Uniformité déclarée {r}, arêtes de taille {uniformity}")
    if uniformity is None:
        uniformity = 2
    if uniformity < 2:
        raise InvalidUniformity(f"Une arête compte au moins 2 sommets (taille {uniformity})")
    return Hypergraph(n, tuple(normalized), uniformity)


def as_matching(h: Hypergraph, edges: Iterable[Iterable[int]]) -> Matching:
    """
    Valide un couplage de h.

    Raises:
        NotAMatching: arête absente de h ou arêtes non disjointes
    """
    normalized = sorted({tuple(sorted(int(v) for v in e)) for e in edges})
    seen: set[int] = set()
    for e in normalized:
        if e not in h.edge_set:
            raise NotAMatching(f"Arête absente de l'hôte : {list(e)}")
        if seen.intersection(e):
            raise NotAMatching(f"Arêtes non disjointes autour de {list(e)}")
        seen.update(e)
    return Matching(tuple(normalized))


# =============================================
# FAMILLES STANDARD
# =============================================
def complete_uniform(n: int, r: int) -> Hypergraph:
    """Hypergraphe r-uniforme complet : tous les r-sous-ensembles de [n]."""
    if r < 1 or r > n:
        raise InvalidUniformity(f"Il faut 1 <= r <= n (r={r}, n={n})")
    return Hypergraph(n, tuple(combinations(range(1, n + 1), r)), r)


def loose_cycle(r: int, m: int) -> Hypergraph:
    """
    Cycle lâche C_{(r-1)m} : m arêtes de taille r, deux arêtes consécutives
    partagent exactement un sommet, la dernière revient au sommet 1.
    """
    if r <= 2 or m <= 1:
        raise InvalidParameters(f"Cycle lâche défini pour r > 2 et m > 1 (r={r}, m={m})")
    n = (r - 1) * m
    edges = []
    for i in range(m):
        start = i * (r - 1) + 1
        edge = [start + j for j in range(r)]
        edge[-1] = (edge[-1] - 1) % n + 1
        edges.append(edge)
    return make_hypergraph(n, edges, r)


def grid_3x3() -> Hypergraph:
    """Les trois lignes et les trois colonnes de la grille 3x3 sur [9]."""
    rows = [[1, 2, 3], [4, 5, 6], [7, 8, 9]]
    columns = [[1, 4, 7], [2, 5, 8], [3, 6, 9]]
    return make_hypergraph(9, rows + columns, 3)


def attach_pendants(h: Hypergraph, specs: Sequence[PendantSpec]) -> Hypergraph:
    """
    Ajoute une arête pendante {anchor} ∪ fresh par spécification.

    Les sommets frais doivent être r-1 nouveaux labels (> n), tous distincts.
    """
    if not specs:
        return h
    used: set[int] = set()
    new_edges = list(h.edges)
    n = h.n
    for spec in specs:
        if not 1 <= spec.anchor <= h.n:
            raise AnchorNotInHost(f"Ancre {spec.anchor} hors de l'hôte 1..{h.n}")
        if len(spec.fresh) != h.r - 1:
            raise InvalidParameters(f"Il faut {h.r - 1} sommets frais, reçu {len(spec.fresh)}")
        for v in spec.fresh:
            if v <= h.n or v in used:
                raise FreshVertexCollision(f"Sommet frais {v} déjà utilisé")
            used.add(v)
        n = max(n, *spec.fresh)
        new_edges.append([spec.anchor, *spec.fresh])
    return make_hypergraph(n, new_edges, h.r)


# =============================================
# INVARIANTS ÉLÉMENTAIRES
# =============================================
def is_linear(h: Hypergraph) -> bool:
    """Vrai si deux arêtes distinctes ont au plus un sommet commun."""
    seen_pairs: set[tuple[int, int]] = set()
    for edge in h.edges:
        for pair in combinations(edge, 2):
            if pair in seen_pairs:
                return False
            seen_pairs.add(pair)
    return True


def degree(h: Hypergraph, v: int) -> int:
    if not 1 <= v <= h.n:
        raise VertexOutOfRange(f"Sommet {v} hors de 1..{h.n}")
    return len(h.incidence.get(v, ()))


def max_degree(h: Hypergraph) -> int:
    return max((len(es) for es in h.incidence.values()), default=0)


def induced_on(h: Hypergraph, a: Iterable[int]) -> Hypergraph:
    """Sous-hypergraphe induit H[A] : sommets A, labels d'origine conservés."""
    keep = set(a)
    for v in keep:
        if not 1 <= v <= h.n or (h.ground is not None and v not in h.ground):
            raise VertexOutOfRange(f"Sommet {v} hors de l'ensemble de sommets de {h.describe()}")
    return Hypergraph(h.n, tuple(e for e in h.edges if keep.issuperset(e)), h.r, frozenset(keep))


def connected_components(h: Hypergraph) -> list[frozenset[int]]:
    """Composantes connexes (sommets non isolés), triées par plus petit sommet."""
    parent = {v: v for v in h.incidence}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for edge in h.edges:
        root = find(edge[0])
        for v in edge[1:]:
            other = find(v)
            if other != root:
                parent[other] = root
    groups: dict[int, set[int]] = {}
    for v in parent:
        groups.setdefault(find(v), set()).add(v)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def good_forest_order(h: Hypergraph) -> Optional[tuple[Edge, ...]]:
    """
    Ordre e_1..e_m tel que chaque arête rencontre l'union des précédentes
    en au plus un sommet ; le plus petit lexicographiquement (par indice),
    ou None s'il n'en existe pas.
    """
    m = len(h.edges)
    dead: set[frozenset[int]] = set()

    def extend(order: list[int], placed: frozenset[int], union: frozenset[int]) -> Optional[list[int]]:
        if len(order) == m:
            return order
        if placed in dead:
            return None
        for i, edge in enumerate(h.edges):
            if i in placed or len(union.intersection(edge)) > 1:
                continue
            found = extend(order + [i], placed | {i}, union | frozenset(edge))
            if found is not None:
                return found
        dead.add(placed)
        return None

    found = extend([], frozenset(), frozenset())
    return None if found is None else tuple(h.edges[i] for i in found)


def matchings(h: Hypergraph, max_size: Optional[int] = None, include_empty: bool = False) -> Iterator[Matching]:
    """Énumère les couplages de h, par taille croissante puis ordre lexicographique."""
    limit = len(h.edges) if max_size is None else max_size
    if include_empty:
        yield Matching(())
    for size in range(1, limit + 1):
        found_any = False
        for combo in combinations(h.edges, size):
            covered = [v for e in combo for v in e]
            if len(covered) == len(set(covered)):
                found_any = True
                yield Matching(combo)
        if not found_any:
            return


# =============================================
# GÉNÉRATEURS ALÉATOIRES (graine explicite)
# =============================================
def random_linear_hypergraph(n: int, r: int, m: int, rng: random.Random, attempts: int = 2000) -> Hypergraph:
    """
    Hypergraphe linéaire r-uniforme aléatoire d'au plus m arêtes sur [n].
    """
    edges: list[Edge] = []
    pairs: set[tuple[int, int]] = set()
    for _ in range(attempts):
        if len(edges) >= m:
            break
        candidate = tuple(sorted(rng.sample(range(1, n + 1), r)))
        candidate_pairs = set(combinations(candidate, 2))
        if candidate_pairs & pairs:
            continue
        edges.append(candidate)
        pairs |= candidate_pairs
    return make_hypergraph(n, edges, r)


def random_good_forest(r: int, m: int, rng: random.Random, attach_probability: float = 0.8) -> Hypergraph:
    """
    Bonne forêt aléatoire : chaque nouvelle arête rencontre l'union des
    précédentes en au plus un sommet (éventuellement aucun).
    """
    edges: list[list[int]] = []
    next_label = 1
    for _ in range(m):
        used = sorted({v for e in edges for v in e})
        if used and rng.random() < attach_probability:
            anchor = rng.choice(used)
            fresh = list(range(next_label, next_label + r - 1))
            next_label += r - 1
            edges.append([anchor, *fresh])
        else:
            edges.append(list(range(next_label, next_label + r)))
            next_label += r
    return make_hypergraph(max(next_label - 1, 1), edges, r)
