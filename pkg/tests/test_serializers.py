"""
Tests des formats d'échange JSON
"""
import json
import pytest
from fractions import Fraction
from pathlib import Path
import sys

sys.path.insert(0, str(Path(__file__).parent.parent))

from core.decomposition import pm_decompose_complete_3, pm_decompose_complete_r, replay_decomposition
from core.errors import InvalidParameters, NonUniform
from core.pm_oracle import WeightCertificate
from core.serializers import (
    canonical_digest,
    certificate_from_json,
    certificate_to_json,
    decomposition_from_json,
    decomposition_to_json,
    dumps,
    hypergraph_from_json,
    hypergraph_to_json,
    matching_from_json,
    parse_edge_list,
    regular_witness_from_json,
    regular_witness_to_json,
    walk_from_json,
    walk_to_json,
)
from core.walks import find_regular_witness, find_strong_closed_walk


class TestHypergraphJson:
    """Tests des hypergraphes et couplages."""

    def test_hypergraph(self, grid, grid_rows):
        """Test champs et couplage."""
        payload = hypergraph_to_json(grid, grid_rows)
        assert payload["n"] == 9
        assert payload["r"] == 3
        assert payload["matching"] == [[1, 2, 3], [4, 5, 6], [7, 8, 9]]
        assert hypergraph_from_json(json.loads(dumps(payload))) == grid

    def test_uniformity_key_optional(self, grid):
        """Test "r" facultatif en lecture, contrôlé quand présent."""
        payload = hypergraph_to_json(grid)
        del payload["r"]
        assert hypergraph_from_json(payload) == grid
        with pytest.raises(NonUniform):
            hypergraph_from_json({"n": 9, "r": 4, "edges": [[1, 2, 3]]})
        assert hypergraph_from_json({"n": 4, "r": 3, "edges": []}).r == 3

    def test_matching_from_dict_or_list(self, grid, grid_rows):
        """Test deux formes acceptées."""
        assert matching_from_json(grid, {"matching": [[7, 8, 9], [1, 2, 3], [4, 5, 6]]}) == grid_rows
        assert matching_from_json(grid, [[1, 2, 3], [4, 5, 6], [7, 8, 9]]) == grid_rows

    def test_parse_edge_list(self):
        """Test séparateurs virgule et espace."""
        assert parse_edge_list("1,2,3; 4 5 6;") == [[1, 2, 3], [4, 5, 6]]

    def test_parse_edge_list_invalid(self):
        """Test sommet illisible."""
        with pytest.raises(InvalidParameters):
            parse_edge_list("1,2,x")


class TestCertificateJson:
    """Tests des certificats."""

    def test_fraction_strings(self):
        """Test rationnels réduits "p/q"."""
        w = WeightCertificate({2: Fraction(4, 6), 1: Fraction(-3)})
        assert certificate_to_json(w) == {"weights": {"1": "-3", "2": "2/3"}}

    def test_back(self):
        """Test relecture exacte."""
        w = certificate_from_json({"weights": {"1": "-3", "2": "2/3"}}, "constructive")
        assert w.weights == {1: Fraction(-3), 2: Fraction(2, 3)}
        assert w.provenance == "constructive"


class TestWitnessJson:
    """Tests des témoins de non-positivité."""

    def test_walk(self, grid, grid_rows):
        """Test marche forte relue à l'identique."""
        walk = find_strong_closed_walk(grid, grid_rows)
        payload = json.loads(dumps(walk_to_json(walk)))
        assert walk_from_json(payload) == walk

    def test_regular_witness(self, grid, grid_rows):
        """Test degrés indexés par arête."""
        witness = find_regular_witness(grid, grid_rows)
        payload = regular_witness_to_json(grid, witness)
        assert payload["found_with_single_k"] is True
        assert set(payload["degrees"].values()) == {2}
        assert regular_witness_from_json(grid, payload) == witness


class TestDecompositionJson:
    """Tests des décompositions."""

    def test_count_and_replay(self):
        """Test relecture puis rejeu."""
        payload = json.loads(dumps(decomposition_to_json(pm_decompose_complete_3(6))))
        assert payload["count"] == 19
        dec = decomposition_from_json(payload)
        assert replay_decomposition(dec).ok

    def test_detail_round_trip(self):
        """Test conditions relâchées conservées à la relecture."""
        dec = pm_decompose_complete_r(8, 4)
        payload = json.loads(dumps(decomposition_to_json(dec)))
        detailed = [part for part in payload["parts"] if "detail" in part]
        assert detailed
        assert all(part["provenance"] == "constructive" for part in detailed)
        back = decomposition_from_json(payload)
        assert [c.detail for c in back.certificates] == [c.detail for c in dec.certificates]
        assert replay_decomposition(back).ok

    def test_digest_stable(self):
        """Test empreinte indépendante de l'ordre des clés."""
        assert canonical_digest({"a": 1, "b": [1, 2]}) == canonical_digest({"b": [1, 2], "a": 1})
        assert canonical_digest({"a": 1}) != canonical_digest({"a": 2})
