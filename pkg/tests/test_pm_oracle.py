"""
Tests de l'oracle de positivité
"""
import random
import pytest
from fractions import Fraction
from itertools import combinations, product
from math import lcm
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).parent.parent))

from config.settings import DEFAULT_SEED
from core.errors import ScopeMissingVertex
from core.hypergraph import Matching, complete_uniform, induced_on, loose_cycle, make_hypergraph, matchings
from core.pm_oracle import (
    WeightCertificate,
    complement_edges,
    farkas_certificate,
    is_positive_matching,
    peel_private_edges,
    synthesize_weights,
    verify_certificate,
)


class TestVerifyCertificate:
    """Tests du rejeu des certificats."""

    def test_single_edge(self):
        """Test poids 1 sur une arête isolée."""
        h = make_hypergraph(4, [[1, 2, 3], [2, 3, 4]])
        w = WeightCertificate({1: Fraction(1), 2: Fraction(1), 3: Fraction(1)})
        assert verify_certificate(h, [[1, 2, 3]], w)

    def test_rejects_nonnegative_complement(self):
        """Test arête complémentaire de somme nulle."""
        h = make_hypergraph(6, [[1, 2, 3], [4, 5, 6], [1, 2, 4]])
        w = WeightCertificate({v: Fraction(1) for v in range(1, 7)})
        assert not verify_certificate(h, [[1, 2, 3], [4, 5, 6]], w)

    def test_accepts_valid(self):
        """Test certificat valide à la main."""
        h = make_hypergraph(6, [[1, 2, 3], [4, 5, 6], [1, 2, 4]])
        w = WeightCertificate({1: Fraction(-2), 2: Fraction(-2), 3: Fraction(5), 4: Fraction(1), 5: Fraction(1), 6: Fraction(1)})
        assert verify_certificate(h, [[1, 2, 3], [4, 5, 6]], w)

    def test_missing_vertex(self):
        """Test sommet de V_M sans poids."""
        h = make_hypergraph(3, [[1, 2, 3]])
        with pytest.raises(ScopeMissingVertex):
            verify_certificate(h, [[1, 2, 3]], WeightCertificate({1: Fraction(1), 2: Fraction(1)}))

    def test_scaled(self):
        """Test mise à l'échelle positive."""
        w = WeightCertificate({1: Fraction(1, 3)}, "LP").scaled(Fraction(3))
        assert w.weights[1] == 1
        assert w.provenance == "LP"


class TestSynthesizeWeights:
    """Tests de la synthèse par simplexe exact."""

    def test_positive_pair(self):
        """Test deux arêtes reliées par une arête transverse."""
        h = make_hypergraph(6, [[1, 2, 3], [4, 5, 6], [1, 2, 4]])
        m = Matching(((1, 2, 3), (4, 5, 6)))
        w = synthesize_weights(h, m)
        assert w is not None
        assert verify_certificate(h, m, w)
        assert all(isinstance(x, Fraction) for x in w.weights.values())

    def test_grid_rows_not_positive(self, grid, grid_rows):
        """Test couplage parfait de la grille : non positif."""
        assert synthesize_weights(grid, grid_rows) is None

    def test_empty_matching(self, grid):
        """Test couplage vide : certificat vide."""
        w = synthesize_weights(grid, [])
        assert w is not None
        assert w.weights == {}

    def test_all_matchings_of_k6(self):
        """Test chaque certificat produit se rejoue."""
        h = complete_uniform(6, 3)
        for m in matchings(h):
            w = synthesize_weights(h, m)
            if w is not None:
                assert verify_certificate(h, m, w)


class TestFarkas:
    """Tests du témoin dual."""

    def test_grid_rows(self, grid, grid_rows):
        """Test équilibre y(M(v)) = somme des z sur la grille."""
        certificate = farkas_certificate(grid, grid_rows)
        assert certificate is not None
        assert sum(certificate.inner.values()) == 1
        for v in grid.vertices:
            owner = grid_rows.owner[v]
            load = sum(z for f, z in certificate.outer.items() if v in f)
            assert certificate.inner.get(owner, 0) == load

    def test_integral(self, grid, grid_rows):
        """Test multiplicités entières."""
        inner, outer = farkas_certificate(grid, grid_rows).integral()
        assert all(isinstance(k, int) and k > 0 for k in list(inner.values()) + list(outer.values()))

    def test_positive_has_no_farkas(self, grid):
        """Test arête seule : aucun témoin dual."""
        assert farkas_certificate(grid, [[1, 2, 3]]) is None

    def test_empty_matching(self, grid):
        """Test couplage vide."""
        assert farkas_certificate(grid, []) is None


class TestPeeling:
    """Tests de la réduction par sommets privés."""

    def test_two_rows_peeled_away(self, grid):
        """Test deux lignes : tous les sommets sont privés."""
        assert len(peel_private_edges(grid, [[1, 2, 3], [4, 5, 6]])) == 0

    def test_grid_rows_kept(self, grid, grid_rows):
        """Test couplage parfait : aucun sommet privé."""
        assert peel_private_edges(grid, grid_rows) == grid_rows

    def test_complement_edges(self, grid, grid_rows):
        """Test arêtes complémentaires : les colonnes."""
        assert complement_edges(grid, grid_rows) == ((1, 4, 7), (2, 5, 8), (3, 6, 9))


class TestIsPositiveMatching:
    """Tests de l'oracle complet."""

    def test_grid(self, grid, grid_rows):
        """Test lignes de la grille non positives, paires positives."""
        assert not is_positive_matching(grid, grid_rows)
        assert is_positive_matching(grid, [[1, 2, 3], [4, 5, 6]])

    def test_single_edges_always_positive(self):
        """Test arête seule dans K_6^(3)."""
        h = complete_uniform(6, 3)
        assert all(is_positive_matching(h, [e]) for e in h.edges)

    def test_loose_cycle_opposite_edges(self):
        """Test C_8 : arêtes opposées positives."""
        assert is_positive_matching(loose_cycle(3, 4), [[1, 2, 3], [5, 6, 7]])

    def test_agrees_with_synthesis(self):
        """Test réduction et synthèse directe concordent."""
        h = complete_uniform(6, 3)
        for m in matchings(h):
            assert is_positive_matching(h, m) == (synthesize_weights(h, m) is not None)


def _random_hypergraph(rng: random.Random, n: int, r: int, density: float):
    edges = [e for e in combinations(range(1, n + 1), r) if rng.random() < density]
    return make_hypergraph(n, edges, r)


def _integer_search(h, m: Matching, bound: int) -> bool:
    """Recherche exhaustive de poids entiers dans [-bound, bound]."""
    vertices = sorted(m.vertices)
    index = {v: i for i, v in enumerate(vertices)}
    inner = [[index[v] for v in e] for e in m.edges]
    outer = [[index[v] for v in e] for e in complement_edges(h, m)]
    for w in product(range(-bound, bound + 1), repeat=len(vertices)):
        if all(sum(w[i] for i in e) > 0 for e in inner) and all(sum(w[i] for i in e) < 0 for e in outer):
            return True
    return False


def _integral(certificate: WeightCertificate) -> WeightCertificate:
    scale = lcm(*(w.denominator for w in certificate.weights.values()))
    return certificate.scaled(Fraction(scale))


class TestOracleAgainstIntegerSearch:
    """L'oracle face à une recherche exhaustive de poids entiers (|V_M| <= 6)."""

    def _check(self, h, bound: int) -> int:
        found = 0
        for m in matchings(h):
            if len(m.vertices) > 6:
                continue
            positive = is_positive_matching(h, m)
            if _integer_search(h, m, bound):
                found += 1
                assert positive
            if positive:
                certificate = _integral(synthesize_weights(h, m))
                assert all(w.denominator == 1 for w in certificate.weights.values())
                assert verify_certificate(h, m, certificate)
            else:
                assert synthesize_weights(h, m) is None
        return found

    def test_grid_pairs(self, grid):
        """Test paires de lignes et de colonnes de la grille."""
        assert self._check(grid, 2) > 0

    def test_graphs(self, rng):
        """Test graphes aléatoires (r = 2), couplages d'au plus 3 arêtes."""
        for _ in range(5):
            self._check(_random_hypergraph(rng, 6, 2, 0.5), 1)

    @pytest.mark.slow
    def test_triple_systems(self):
        """Test hypergraphes 3-uniformes aléatoires sur 6 et 7 sommets."""
        rng = random.Random(DEFAULT_SEED)
        for _ in range(15):
            self._check(_random_hypergraph(rng, rng.choice([6, 7]), 3, 0.3), 2)


class TestRestriction:
    """La positivité ne dépend que de H[V_M]."""

    def test_grid(self, grid):
        """Test tous les couplages de la grille."""
        for m in matchings(grid):
            assert is_positive_matching(grid, m) == is_positive_matching(induced_on(grid, m.vertices), m)

    def test_random(self, rng):
        """Test hypergraphes 3-uniformes aléatoires."""
        for _ in range(15):
            h = _random_hypergraph(rng, rng.randint(6, 9), 3, 0.25)
            for m in matchings(h, max_size=3):
                induced = induced_on(h, m.vertices)
                assert is_positive_matching(h, m) == is_positive_matching(induced, m)
                certificate = synthesize_weights(induced, m)
                if certificate is not None:
                    assert verify_certificate(h, m, certificate)
