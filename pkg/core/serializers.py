"""
Module des formats d'échange JSON (ordre canonique, rationnels "p/q")
"""
from __future__ import annotations

import hashlib
import json
from typing import Any, Optional

# Import des paramètres
import sys
from pathlib import Path

sys.path.append(str(Path(__file__).parent.parent))
from config.settings import JSON_INDENT

from .bands import Part
from .calculators import format_fraction, to_fraction
from .decomposition import PmDecomposition
from .errors import InvalidParameters
from .hypergraph import Hypergraph, Matching, as_matching, make_hypergraph
from .pm_oracle import WeightCertificate
from .walks import RegularWitness, WalkStep, WalkWitness


def dumps(payload: Any) -> str:
    """Sortie lisible, ordre d'insertion conservé (déjà canonique)."""
    return json.dumps(payload, indent=JSON_INDENT, ensure_ascii=False)


def canonical_digest(payload: Any) -> str:
    """SHA-256 de la forme compacte à clés triées."""
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _edges(edges) -> list[list[int]]:
    return [list(e) for e in edges]


# =============================================
# HYPERGRAPHES ET COUPLAGES
# =============================================
def hypergraph_to_json(h: Hypergraph, matching: Optional[Matching] = None) -> dict:
    payload = {"n": h.n, "r": h.r, "edges": _edges(h.edges)}
    if matching is not None:
        payload["matching"] = _edges(matching.edges)
    return payload


def hypergraph_from_json(payload: dict) -> Hypergraph:
    return make_hypergraph(int(payload["n"]), payload["edges"], payload.get("r"))


def matching_from_json(h: Hypergraph, payload) -> Matching:
    """Accepte une liste d'arêtes ou un objet {"matching": [...]}."""
    edges = payload.get("matching", []) if isinstance(payload, dict) else payload
    return as_matching(h, edges)


def parse_edge_list(text: str) -> list[list[int]]:
    """ "1,2,3;4,5,6" -> [[1, 2, 3], [4, 5, 6]] (virgules ou espaces)."""
    edges = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            edges.append([int(v) for v in chunk.replace(",", " ").split()])
        except ValueError:
            raise InvalidParameters(f"Arête illisible : {chunk!r}") from None
    return edges


# =============================================
# CERTIFICATS ET TÉMOINS
# =============================================
def certificate_to_json(certificate: WeightCertificate) -> dict:
    return {"weights": {str(v): format_fraction(certificate.weights[v]) for v in sorted(certificate.weights)}}


def certificate_from_json(payload: dict, provenance: str = "LP", detail: str = "") -> WeightCertificate:
    return WeightCertificate(
        {int(v): to_fraction(w) for v, w in payload["weights"].items()},
        provenance,
        detail,
    )


def walk_to_json(walk: WalkWitness) -> dict:
    payload = {
        "walk": [
            {"vertex": step.vertex, "edge": list(step.edge), "in_matching": step.in_matching}
            for step in walk.steps
        ]
    }
    if walk.stage:
        payload["stage"] = walk.stage
    return payload


def walk_from_json(payload: dict) -> WalkWitness:
    return WalkWitness(
        tuple(
            WalkStep(int(step["vertex"]), tuple(sorted(step["edge"])), bool(step["in_matching"]))
            for step in payload["walk"]
        ),
        str(payload.get("stage", "")),
    )


def regular_witness_to_json(h: Hypergraph, witness: RegularWitness) -> dict:
    """Degrés indexés par la position (0-based) de l'arête dans h."""
    return {
        "inner": _edges(witness.inner),
        "outer": _edges(witness.outer),
        "degrees": {str(h.index_of(e)): witness.degrees[e] for e in witness.inner},
        "found_with_single_k": witness.found_with_single_k,
    }


def regular_witness_from_json(h: Hypergraph, payload: dict) -> RegularWitness:
    degrees = {h.edges[int(i)]: int(k) for i, k in payload["degrees"].items()}
    return RegularWitness(
        tuple(tuple(sorted(e)) for e in payload["inner"]),
        tuple(tuple(sorted(e)) for e in payload["outer"]),
        degrees,
    )


# =============================================
# DÉCOMPOSITIONS
# =============================================
def decomposition_to_json(dec: PmDecomposition) -> dict:
    parts = []
    for part, certificate in zip(dec.parts, dec.certificates):
        parts.append({
            "key": list(part.key) if part.key is not None else None,
            "edges": _edges(part.layout),
            "certificate": certificate_to_json(certificate),
            "provenance": certificate.provenance,
        })
        if certificate.detail:
            parts[-1]["detail"] = certificate.detail
    return {"host": hypergraph_to_json(dec.host), "parts": parts, "count": len(parts)}


def decomposition_from_json(payload: dict) -> PmDecomposition:
    host = hypergraph_from_json(payload["host"])
    parts, certificates = [], []
    for item in payload["parts"]:
        key = tuple(item["key"]) if item.get("key") is not None else None
        parts.append(Part(key, tuple(tuple(sorted(e)) for e in item["edges"])))
        certificates.append(certificate_from_json(item["certificate"], item.get("provenance", "LP"), item.get("detail", "")))
    return PmDecomposition(host, tuple(parts), tuple(certificates))
