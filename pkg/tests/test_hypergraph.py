"""
Tests du module hypergraph
"""
import random
import pytest
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).parent.parent))

from core.errors import (
    AnchorNotInHost,
    DuplicateVertexInEdge,
    FreshVertexCollision,
    InvalidParameters,
    InvalidUniformity,
    NonUniform,
    NotAMatching,
    VertexOutOfRange,
)
from core.hypergraph import (
    PendantSpec,
    as_matching,
    attach_pendants,
    complete_uniform,
    connected_components,
    degree,
    good_forest_order,
    induced_on,
    is_linear,
    loose_cycle,
    make_hypergraph,
    matchings,
    max_degree,
    random_good_forest,
    random_linear_hypergraph,
)


class TestMakeHypergraph:
    """Tests pour make_hypergraph."""

    def test_valid(self):
        """Test construction simple."""
        h = make_hypergraph(4, [[1, 2, 3], [2, 3, 4]])
        assert h.n == 4
        assert h.r == 3
        assert len(h) == 2

    def test_edges_sorted_and_deduplicated(self):
        """Test normalisation des arêtes."""
        h = make_hypergraph(4, [[3, 2, 1], [1, 2, 3], [4, 3, 2]])
        assert h.edges == ((1, 2, 3), (2, 3, 4))

    def test_non_uniform(self):
        """Test tailles mélangées."""
        with pytest.raises(NonUniform):
            make_hypergraph(3, [[1, 2], [1, 2, 3]])

    def test_vertex_out_of_range(self):
        """Test sommet hors bornes."""
        with pytest.raises(VertexOutOfRange):
            make_hypergraph(3, [[1, 2, 4]])

    def test_duplicate_vertex(self):
        """Test sommet répété."""
        with pytest.raises(DuplicateVertexInEdge):
            make_hypergraph(3, [[1, 1, 2]])

    def test_errors_are_value_errors(self):
        """Test hiérarchie des erreurs."""
        with pytest.raises(ValueError):
            make_hypergraph(3, [[1, 2], [1, 2, 3]])

    def test_grid_degrees(self, grid):
        """Test grille 3x3 : tous les degrés valent 2."""
        assert len(grid) == 6
        assert all(degree(grid, v) == 2 for v in grid.vertices)

    @pytest.mark.parametrize("edges", [[[1], [2]], [[3]]])
    def test_edge_too_small(self, edges):
        """Test arêtes de moins de 2 sommets refusées."""
        with pytest.raises(InvalidUniformity):
            make_hypergraph(3, edges)

    def test_edgeless_uniformity_one(self):
        """Test uniformité déclarée 1 refusée."""
        with pytest.raises(InvalidUniformity):
            make_hypergraph(3, [], 1)

    def test_edgeless_keeps_declared_uniformity(self):
        """Test hypergraphe sans arête."""
        h = make_hypergraph(5, [], 3)
        assert h.r == 3
        assert max_degree(h) == 0


class TestFamilies:
    """Tests des familles standard."""

    @pytest.mark.parametrize("n,r,expected", [(4, 3, 4), (6, 3, 20), (5, 5, 1), (8, 4, 70)])
    def test_complete_uniform_count(self, n, r, expected):
        """Test nombre d'arêtes de K_n^(r)."""
        assert len(complete_uniform(n, r)) == expected

    def test_complete_uniform_invalid(self):
        """Test r > n."""
        with pytest.raises(InvalidUniformity):
            complete_uniform(3, 4)

    def test_loose_cycle_3_2(self):
        """Test C_4 : deux arêtes qui se referment."""
        h = loose_cycle(3, 2)
        assert h.n == 4
        assert set(h.edges) == {(1, 2, 3), (1, 3, 4)}

    def test_loose_cycle_3_3(self):
        """Test C_6."""
        h = loose_cycle(3, 3)
        assert h.n == 6
        assert set(h.edges) == {(1, 2, 3), (3, 4, 5), (1, 5, 6)}

    def test_loose_cycle_4_2(self):
        """Test C_6 en uniformité 4."""
        h = loose_cycle(4, 2)
        assert set(h.edges) == {(1, 2, 3, 4), (1, 4, 5, 6)}

    @pytest.mark.parametrize("r,m", [(2, 3), (3, 1)])
    def test_loose_cycle_invalid(self, r, m):
        """Test paramètres hors domaine."""
        with pytest.raises(InvalidParameters):
            loose_cycle(r, m)

    def test_loose_cycle_degrees(self):
        """Test degrés au plus 2."""
        h = loose_cycle(4, 5)
        assert max_degree(h) == 2
        assert len(connected_components(h)) == 1


class TestPendants:
    """Tests pour attach_pendants."""

    def test_attach(self):
        """Test ajout d'une arête pendante."""
        h = attach_pendants(loose_cycle(3, 3), [PendantSpec(1, (7, 8))])
        assert h.n == 8
        assert (1, 7, 8) in h.edge_set
        assert degree(h, 1) == 3

    def test_empty_specs(self):
        """Test liste vide : hypergraphe inchangé."""
        h = loose_cycle(3, 3)
        assert attach_pendants(h, []) is h

    def test_anchor_not_in_host(self):
        """Test ancre hors de l'hôte."""
        with pytest.raises(AnchorNotInHost):
            attach_pendants(loose_cycle(3, 3), [PendantSpec(9, (10, 11))])

    def test_fresh_collision(self):
        """Test sommet frais déjà présent."""
        with pytest.raises(FreshVertexCollision):
            attach_pendants(loose_cycle(3, 3), [PendantSpec(1, (6, 7))])

    def test_fresh_shared_between_specs(self):
        """Test sommet frais réutilisé."""
        with pytest.raises(FreshVertexCollision):
            attach_pendants(loose_cycle(3, 3), [PendantSpec(1, (7, 8)), PendantSpec(2, (8, 9))])


class TestInvariants:
    """Tests de linéarité, induction et connexité."""

    def test_is_linear(self, grid):
        """Test grille linéaire, K_4^(3) non linéaire."""
        assert is_linear(grid)
        assert not is_linear(complete_uniform(4, 3))

    def test_loose_cycle_two_edges_not_linear(self):
        """Test C_4 : deux arêtes partagent deux sommets."""
        assert not is_linear(loose_cycle(3, 2))

    def test_induced(self, grid):
        """Test H[V_M] pour deux lignes."""
        induced = induced_on(grid, range(1, 7))
        assert induced.edges == ((1, 2, 3), (4, 5, 6))

    def test_induced_ground_set(self, grid):
        """Test H[A] : sommets A, labels et n d'origine."""
        induced = induced_on(grid, [3, 4, 5, 6, 7, 8])
        assert induced.n == 9
        assert tuple(induced.vertices) == (3, 4, 5, 6, 7, 8)
        assert induced.edges == ((4, 5, 6),)
        assert tuple(induced.without([(4, 5, 6)]).vertices) == tuple(induced.vertices)
        assert max_degree(induced) == 1

    def test_induced_outside_ground_set(self, grid):
        """Test restriction d'un H[A] à un sommet hors de A."""
        induced = induced_on(grid, range(1, 7))
        with pytest.raises(VertexOutOfRange):
            induced_on(induced, [1, 2, 9])

    def test_components(self):
        """Test deux composantes."""
        h = make_hypergraph(6, [[1, 2, 3], [4, 5, 6]])
        assert connected_components(h) == [frozenset({1, 2, 3}), frozenset({4, 5, 6})]

    def test_good_forest_order(self):
        """Test chemin lâche : bonne forêt ; C_6 : non."""
        path = make_hypergraph(7, [[1, 2, 3], [3, 4, 5], [5, 6, 7]])
        assert good_forest_order(path) is not None
        assert good_forest_order(loose_cycle(3, 3)) is None


class TestMatchings:
    """Tests des couplages."""

    def test_as_matching_rejects_overlap(self, grid):
        """Test arêtes non disjointes."""
        with pytest.raises(NotAMatching):
            as_matching(grid, [[1, 2, 3], [1, 4, 7]])

    def test_as_matching_rejects_foreign_edge(self, grid):
        """Test arête absente de l'hôte."""
        with pytest.raises(NotAMatching):
            as_matching(grid, [[1, 5, 9]])

    def test_enumeration_grid(self, grid):
        """Test 6 singletons, 6 paires disjointes, 2 couplages parfaits."""
        sizes = [len(m) for m in matchings(grid)]
        assert sizes.count(1) == 6
        assert sizes.count(2) == 6
        assert sizes.count(3) == 2

    def test_enumeration_with_empty(self, grid):
        """Test couplage vide en tête."""
        first = next(matchings(grid, include_empty=True))
        assert len(first) == 0


class TestRandomGenerators:
    """Tests des générateurs aléatoires."""

    def test_random_linear_is_linear(self, rng):
        """Test linéarité des tirages."""
        for _ in range(20):
            h = random_linear_hypergraph(12, 3, 8, rng)
            assert is_linear(h)
            assert len(h) <= 8

    def test_random_linear_reproducible(self):
        """Test même graine, même hypergraphe."""
        a = random_linear_hypergraph(10, 3, 6, random.Random(7))
        b = random_linear_hypergraph(10, 3, 6, random.Random(7))
        assert a == b

    def test_random_good_forest(self, rng):
        """Test ordre de bonne forêt toujours trouvé."""
        for m in range(1, 8):
            h = random_good_forest(3, m, rng)
            assert len(h) == m
            assert good_forest_order(h) is not None
