"""
Module des marches alternées : caractérisation combinatoire de la positivité
(hypergraphes linéaires) par marches fermées fortes et sous-hypergraphes réguliers
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from itertools import combinations, permutations
from typing import Iterator, Mapping, Optional
import logging

# Import des paramètres
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent))
from config.settings import (
    OCCURRENCE_CAP_FACTOR,
    REGULAR_MAX_MATCHING,
    REGULAR_MAX_VERTICES,
    REGULAR_SEARCH_BUDGET,
    WALK_TREE_BUDGET,
)

from .errors import NotLinear, RootNotMatched, SearchBudgetExceeded, TheoremViolation
from .hypergraph import Edge, Hypergraph, Matching, as_matching, induced_on, is_linear
from .pm_oracle import FarkasCertificate, MatchingLike, farkas_certificate

logger = logging.getLogger(__name__)


# =============================================
# TYPES
# =============================================
@dataclass(frozen=True)
class WalkStep:
    """Entrée `vertex` dans l'arête `edge` ; la sortie est le sommet du pas suivant."""

    vertex: int
    edge: Edge
    in_matching: bool


@dataclass(frozen=True)
class WalkWitness:
    """
    Marche fermée u_1, e_1, u_2, ..., e_k, u_1.

    Le pas i entre dans e_i par u_i et en sort par u_{i+1} ; la sortie du
    dernier pas est u_1. `stage` nomme l'étape de recherche qui l'a produite
    ("tree", "regular-witness" ou "farkas") et n'entre pas dans l'égalité.
    """

    steps: tuple[WalkStep, ...]
    stage: str = field(default="", compare=False)

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(step.edge for step in self.steps)

    def exit_of(self, i: int) -> int:
        return self.steps[(i + 1) % len(self.steps)].vertex

    @property
    def middles(self) -> tuple[tuple[int, ...], ...]:
        """Sommets intérieurs de chaque occurrence (ni entrée ni sortie)."""
        result = []
        for i, step in enumerate(self.steps):
            ends = {step.vertex, self.exit_of(i)}
            result.append(tuple(v for v in step.edge if v not in ends))
        return tuple(result)


@dataclass(frozen=True)
class WalkReplay:
    """Recomptage indépendant des propriétés d'une marche."""

    incidence: bool
    alternation: bool
    closure: bool
    distinct_ends: bool
    balanced: bool

    @property
    def is_alternate_closed(self) -> bool:
        return self.incidence and self.alternation and self.closure

    @property
    def is_strong(self) -> bool:
        return self.is_alternate_closed and self.distinct_ends and self.balanced


@dataclass(frozen=True)
class RegularWitness:
    """
    Paire (N, N1) : N ⊆ M, N ⊆ N1 ⊆ H[V_N], et pour chaque arête e de N
    tous ses sommets ont le même degré k_e >= 2 dans N1.
    """

    inner: tuple[Edge, ...]
    outer: tuple[Edge, ...]
    degrees: Mapping[Edge, int] = field(default_factory=dict)

    @property
    def found_with_single_k(self) -> bool:
        """
        Vrai si ce témoin-ci a le même k pour toutes les arêtes de N. Ne dit
        rien d'un autre témoin à k unique quand celui-ci n'en a pas.
        """
        return len(set(self.degrees.values())) <= 1


@dataclass(frozen=True)
class TreeWalk:
    """Chemin racine-feuille de l'arbre alterné : sommets u_1..u_{k+1}, arêtes e_1..e_k."""

    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]

    @property
    def closed(self) -> bool:
        return len(self.edges) >= 2 and len(self.edges) % 2 == 0 and self.vertices[-1] == self.vertices[0]

    def to_witness(self, m: Matching) -> WalkWitness:
        return WalkWitness(
            tuple(WalkStep(v, e, e in m.edges) for v, e in zip(self.vertices, self.edges))
        )


@dataclass
class WalkVerdict:
    """Résultat de positive_by_walks."""

    positive: bool
    witness: Optional[WalkWitness] = None


# =============================================
# CONTEXTE ET BUDGET
# =============================================
class _NodeBudget:
    def __init__(self, limit: int):
        self.limit = limit
        self.spent = 0

    def take(self) -> bool:
        if self.spent >= self.limit:
            return False
        self.spent += 1
        return True

    @property
    def exhausted(self) -> bool:
        return self.spent >= self.limit


@dataclass
class _WalkContext:
    m: Matching
    induced: Hypergraph
    outer_by_vertex: dict[int, tuple[Edge, ...]]
    cap: dict[int, int]

    @classmethod
    def build(cls, h: Hypergraph, m: Matching) -> "_WalkContext":
        induced = induced_on(h, m.vertices)
        if not is_linear(induced):
            raise NotLinear(f"H[V_M] n'est pas linéaire ({induced.describe()})")
        outer_by_vertex = {
            v: tuple(e for e in induced.incidence.get(v, ()) if e not in m.edges)
            for v in m.vertices
        }
        cap = {
            v: OCCURRENCE_CAP_FACTOR * (len(induced.incidence.get(v, ())) - 1)
            for v in m.vertices
        }
        return cls(m, induced, outer_by_vertex, cap)


def _normalize(h: Hypergraph, m: MatchingLike) -> Matching:
    return m if isinstance(m, Matching) else as_matching(h, m)


# =============================================
# REJEU
# =============================================
def replay_walk(h: Hypergraph, m: MatchingLike, walk: WalkWitness) -> WalkReplay:
    """
    Vérifie une marche par recomptage direct : incidence, alternance
    (en commençant par une arête de M), fermeture, entrée distincte de la
    sortie, et équilibre par sommet des occurrences intérieures entre
    arêtes de M et arêtes complémentaires.
    """
    m = _normalize(h, m)
    steps = walk.steps
    k = len(steps)
    if k == 0:
        return WalkReplay(False, False, False, False, False)

    allowed = set(induced_on(h, m.vertices).edges)
    incidence = all(
        step.edge in allowed
        and step.vertex in step.edge
        and walk.exit_of(i) in step.edge
        for i, step in enumerate(steps)
    )
    alternation = k % 2 == 0 and all(
        step.in_matching == (step.edge in m.edges) and step.in_matching == (i % 2 == 0)
        for i, step in enumerate(steps)
    )
    closure = k >= 2 and steps[0].vertex in steps[-1].edge
    distinct_ends = all(step.vertex != walk.exit_of(i) for i, step in enumerate(steps))

    inner_middles: Counter[int] = Counter()
    outer_middles: Counter[int] = Counter()
    for step, middle in zip(steps, walk.middles):
        (inner_middles if step.in_matching else outer_middles).update(middle)
    balanced = inner_middles == outer_middles

    return WalkReplay(incidence, alternation, closure, distinct_ends, balanced)


def replay_regular_witness(h: Hypergraph, m: MatchingLike, witness: RegularWitness) -> bool:
    """Recalcule les degrés dans N1 et contrôle toutes les conditions du témoin."""
    m = _normalize(h, m)
    inner, outer = set(witness.inner), set(witness.outer)
    if not inner or not inner <= set(m.edges) or not inner <= outer:
        return False
    span = {v for e in inner for v in e}
    if any(e not in h.edge_set or not span.issuperset(e) for e in outer):
        return False

    degree = Counter(v for e in outer for v in e)
    for edge in inner:
        values = {degree[v] for v in edge}
        if len(values) != 1:
            return False
        k = values.pop()
        if k < 2 or witness.degrees.get(edge) != k:
            return False
    return True


# =============================================
# ARBRE ALTERNÉ ENRACINÉ
# =============================================
def _grow(
    ctx: _WalkContext,
    root: int,
    vertices: list[int],
    edges: list[Edge],
    used_outer: set[Edge],
    counts: Counter,
    budget: _NodeBudget,
) -> Iterator[TreeWalk]:
    if not budget.take():
        return
    v = vertices[-1]
    after_outer = len(edges) % 2 == 0

    if edges:
        closing = after_outer and v == root
        # Occurrences de v avant ce noeud
        expandable = counts[v] - 1 < ctx.cap[v]
        if closing or not expandable:
            yield TreeWalk(tuple(vertices), tuple(edges))
            return

    if after_outer:
        next_edges = (ctx.m.owner[v],)
    else:
        next_edges = tuple(e for e in ctx.outer_by_vertex[v] if e not in used_outer)

    children = [(e, w) for e in next_edges for w in e if w != v]
    if not children:
        yield TreeWalk(tuple(vertices), tuple(edges))
        return

    for edge, w in children:
        vertices.append(w)
        edges.append(edge)
        counts[w] += 1
        outer_step = edge not in ctx.m.edges
        if outer_step:
            used_outer.add(edge)
        yield from _grow(ctx, root, vertices, edges, used_outer, counts, budget)
        if outer_step:
            used_outer.discard(edge)
        counts[w] -= 1
        edges.pop()
        vertices.pop()


def _tree_walks(ctx: _WalkContext, root: int, budget: _NodeBudget) -> Iterator[TreeWalk]:
    if root not in ctx.m.vertices:
        raise RootNotMatched(f"La racine {root} n'est couverte par aucune arête de N")
    yield from _grow(ctx, root, [root], [], set(), Counter({root: 1}), budget)


def alternate_rooted_tree(
    h: Hypergraph, n_set: MatchingLike, root: int, budget: int = WALK_TREE_BUDGET
) -> Iterator[TreeWalk]:
    """
    Énumère les chemins racine-feuille de l'arbre alterné (H, N, root).

    Règles de croissance : arête de N au départ de la racine ; après une
    arête de N, toute arête complémentaire non encore utilisée sur le
    chemin ; après une arête complémentaire, l'unique arête de N. Un sommet
    n'est plus développé une fois apparu 2(deg-1) fois (degré dans H[V_N]).
    Un retour à la racine après une arête complémentaire est une feuille.

    Args:
        budget: nombre maximal de noeuds développés (0 : énumération vide)

    Raises:
        RootNotMatched: la racine n'est pas couverte par N
        NotLinear: H[V_N] n'est pas linéaire
    """
    n_set = _normalize(h, n_set)
    if root not in n_set.vertices:
        raise RootNotMatched(f"La racine {root} n'est couverte par aucune arête de N")
    ctx = _WalkContext.build(h, n_set)
    tracker = _NodeBudget(budget)
    yield from _tree_walks(ctx, root, tracker)
    if tracker.exhausted:
        logger.warning(f"Arbre alterné tronqué à {budget} noeuds (racine {root})")


# =============================================
# TÉMOINS RÉGULIERS
# =============================================
def _regular_completion(
    inner: tuple[Edge, ...], candidates: list[Edge], explored: list[int], limit: int
) -> Optional[list[Edge]]:
    """
    Sous-ensemble S des candidats rendant, pour chaque arête de N, les
    degrés de ses sommets égaux et >= 1 (k_e = 1 + degré dans S).
    """
    deg = Counter()
    rem = Counter(v for f in candidates for v in f)
    chosen: list[Edge] = []

    def feasible() -> bool:
        for e in inner:
            hi = max(deg[v] for v in e)
            lo = min(deg[v] + rem[v] for v in e)
            if hi > lo or lo < 1:
                return False
        return True

    def search(i: int) -> bool:
        explored[0] += 1
        if explored[0] > limit:
            raise SearchBudgetExceeded("témoin régulier", explored[0], limit)
        if not feasible():
            return False
        if i == len(candidates):
            return True
        f = candidates[i]
        for v in f:
            rem[v] -= 1
        if search(i + 1):
            return True
        for v in f:
            deg[v] += 1
        chosen.append(f)
        if search(i + 1):
            return True
        chosen.pop()
        for v in f:
            deg[v] -= 1
            rem[v] += 1
        return False

    return chosen if search(0) else None


def find_regular_witness(
    h: Hypergraph, m: MatchingLike, budget: int = REGULAR_SEARCH_BUDGET
) -> Optional[RegularWitness]:
    """
    Cherche (N, N1) avec N ⊆ M minimal (cardinal puis ordre lexicographique).

    Raises:
        SearchBudgetExceeded: |M| ou |V_N| au-delà des limites configurées,
            ou plus de `budget` noeuds de retour arrière explorés
    """
    m = _normalize(h, m)
    if len(m) > REGULAR_MAX_MATCHING:
        raise SearchBudgetExceeded("taille du couplage", len(m), REGULAR_MAX_MATCHING)

    explored = [0]
    for size in range(2, len(m) + 1):
        for inner in combinations(m.edges, size):
            span = {v for e in inner for v in e}
            if len(span) > REGULAR_MAX_VERTICES:
                raise SearchBudgetExceeded("sommets de V_N", len(span), REGULAR_MAX_VERTICES)
            candidates = [e for e in induced_on(h, span).edges if e not in inner]
            if not candidates:
                continue
            chosen = _regular_completion(inner, candidates, explored, budget)
            if chosen is None:
                continue
            degree = Counter(v for f in chosen for v in f)
            degrees = {e: 1 + degree[e[0]] for e in inner}
            outer = tuple(sorted(set(inner) | set(chosen)))
            logger.debug(f"Témoin régulier : |N|={size}, |N1|={len(outer)}, {explored[0]} noeuds")
            return RegularWitness(tuple(inner), outer, degrees)
    return None


# =============================================
# ASSEMBLAGE EULÉRIEN
# =============================================
def _walk_from_multiplicities(
    inner: Mapping[Edge, int], outer: Mapping[Edge, int]
) -> Optional[WalkWitness]:
    """
    Chaque unité de multiplicité d'une arête fournit ses r(r-1) passages
    (entrée, sortie) ordonnés. Les noeuds (v, côté) distinguent « doit
    prendre une arête de M » (0) de « doit prendre une arête complémentaire »
    (1) ; l'équilibre des multiplicités rend le graphe eulérien et tout
    circuit est une marche forte.
    """
    adjacency: dict[tuple[int, int], list[tuple[tuple[int, int], WalkStep]]] = {}
    for multiplicities, side, in_matching in ((inner, 0, True), (outer, 1, False)):
        for edge, count in multiplicities.items():
            for a, b in permutations(edge, 2):
                arc = ((b, 1 - side), WalkStep(a, edge, in_matching))
                adjacency.setdefault((a, side), []).extend([arc] * count)
    if not any(count for count in inner.values()):
        return None

    for arcs in adjacency.values():
        arcs.sort(key=lambda arc: (arc[1].edge, arc[1].vertex, arc[0]), reverse=True)

    start_edge = min(e for e, count in inner.items() if count)
    start = (start_edge[0], 0)
    stack: list[tuple[tuple[int, int], Optional[WalkStep]]] = [(start, None)]
    circuit: list[WalkStep] = []
    while stack:
        node, step = stack[-1]
        arcs = adjacency.get(node)
        if arcs:
            head, next_step = arcs.pop()
            stack.append((head, next_step))
        else:
            stack.pop()
            if step is not None:
                circuit.append(step)
    circuit.reverse()
    return WalkWitness(tuple(circuit)) if circuit else None


def walk_from_farkas(h: Hypergraph, m: MatchingLike, certificate: FarkasCertificate) -> Optional[WalkWitness]:
    """Marche forte assemblée à partir d'un témoin dual de non-positivité."""
    m = _normalize(h, m)
    inner, outer = certificate.integral()
    return _walk_from_multiplicities(inner, outer)


def walk_from_regular(witness: RegularWitness) -> Optional[WalkWitness]:
    """Multiplicités y_e = k_e - 1 sur N, z = 1 sur N1 \\ N."""
    inner = {e: k - 1 for e, k in witness.degrees.items()}
    outer = {f: 1 for f in witness.outer if f not in witness.inner}
    return _walk_from_multiplicities(inner, outer)


# =============================================
# RECHERCHE ET VERDICT
# =============================================
def _tree_search(ctx: _WalkContext, h: Hypergraph, m: Matching, tree_budget: int) -> Optional[WalkWitness]:
    """Première feuille fermée forte des arbres alternés, racines croissantes."""
    tracker = _NodeBudget(tree_budget)
    for root in sorted(m.vertices):
        for walk in _tree_walks(ctx, root, tracker):
            if not walk.closed:
                continue
            witness = walk.to_witness(m)
            if replay_walk(h, m, witness).is_strong:
                logger.debug(f"Marche forte de longueur {len(witness)} (racine {root}, {tracker.spent} noeuds)")
                return replace(witness, stage="tree")
        if tracker.exhausted:
            logger.warning(f"Arbres alternés tronqués à {tree_budget} noeuds")
            break
    return None


def _checked(h: Hypergraph, m: Matching, witness: Optional[WalkWitness], stage: str) -> WalkWitness:
    if witness is None or not replay_walk(h, m, witness).is_strong:
        raise TheoremViolation(
            "Multiplicités équilibrées sans marche forte assemblable",
            {"matching": [list(e) for e in m.edges], "stage": stage},
        )
    return replace(witness, stage=stage)


def find_strong_closed_walk(
    h: Hypergraph, m: MatchingLike, tree_budget: int = WALK_TREE_BUDGET, combinatorial: bool = False
) -> Optional[WalkWitness]:
    """
    Marche fermée alternée forte dans H[V_M], ou None s'il n'en existe pas.

    Par défaut l'existence est décidée par le témoin dual exact. Quand il
    existe, on cherche d'abord une marche courte dans les arbres alternés
    de toutes les racines ; à défaut on assemble un circuit eulérien à
    partir d'un témoin régulier ou des multiplicités duales.

    Avec combinatorial=True aucun programme linéaire n'intervient : arbres
    alternés, puis recherche exhaustive d'un témoin régulier dont on tire
    la marche. None signifie alors qu'aucun témoin régulier n'existe.

    Raises:
        NotLinear: H[V_M] n'est pas linéaire
        SearchBudgetExceeded: (combinatorial) témoin régulier hors budget
    """
    m = _normalize(h, m)
    ctx = _WalkContext.build(h, m)
    if len(m) < 2 or not any(ctx.outer_by_vertex.values()):
        return None

    if combinatorial:
        witness = _tree_search(ctx, h, m, tree_budget)
        if witness is not None:
            return witness
        regular = find_regular_witness(h, m)
        if regular is None:
            return None
        return _checked(h, m, walk_from_regular(regular), "regular-witness")

    certificate = farkas_certificate(h, m)
    if certificate is None:
        return None

    witness = _tree_search(ctx, h, m, tree_budget)
    if witness is not None:
        return witness

    try:
        regular = find_regular_witness(h, m)
    except SearchBudgetExceeded as e:
        logger.debug(f"Témoin régulier abandonné : {e}")
        regular = None
    if regular is not None:
        return _checked(h, m, walk_from_regular(regular), "regular-witness")
    return _checked(h, m, walk_from_farkas(h, m, certificate), "farkas")


def positive_by_walks(h: Hypergraph, m: MatchingLike, combinatorial: bool = False) -> WalkVerdict:
    """Positif si et seulement si aucune marche fermée alternée forte n'existe."""
    witness = find_strong_closed_walk(h, m, combinatorial=combinatorial)
    return WalkVerdict(witness is None, witness)
