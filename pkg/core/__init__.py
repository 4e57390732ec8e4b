"""
Module Core - Moteur exact de PMD-KIT
"""
from .hypergraph import Hypergraph, Matching, PendantSpec, make_hypergraph, complete_uniform, loose_cycle
from .pm_oracle import WeightCertificate, verify_certificate, synthesize_weights, is_positive_matching
from .walks import WalkWitness, RegularWitness, find_strong_closed_walk, positive_by_walks
from .decomposition import PmDecomposition, pm_decompose_complete_3, pm_decompose_complete_r, pmd_exact, pmd_formula
from .lss import lss_generators, classify_good_forest_ideal, export_cas_script
from .reports import VerificationReport
from .data_reader import DataReader
from .validators import PayloadValidator, PayloadType

__all__ = [
    "Hypergraph",
    "Matching",
    "PendantSpec",
    "make_hypergraph",
    "complete_uniform",
    "loose_cycle",
    "WeightCertificate",
    "verify_certificate",
    "synthesize_weights",
    "is_positive_matching",
    "WalkWitness",
    "RegularWitness",
    "find_strong_closed_walk",
    "positive_by_walks",
    "PmDecomposition",
    "pm_decompose_complete_3",
    "pm_decompose_complete_r",
    "pmd_exact",
    "pmd_formula",
    "lss_generators",
    "classify_good_forest_ideal",
    "export_cas_script",
    "VerificationReport",
    "DataReader",
    "PayloadValidator",
    "PayloadType",
]
