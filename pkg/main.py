"""
PMD-KIT - Décompositions en couplages positifs d'hypergraphes uniformes
Point d'entrée principal de l'application
"""
import sys
import json
import random
import argparse
from pathlib import Path
from typing import Optional, Sequence
import logging

logger = logging.getLogger("PMD-KIT")

# Imports des modules
from core.data_reader import DataReader
from core.decomposition import (
    PmDecomposition,
    pm_decompose_complete_3,
    pm_decompose_complete_r,
    pmd_exact,
    pmd_formula,
    pmd_greedy,
    replay_decomposition,
)
from core.bands import band_count_bound, band_count_formula, descending_chain_holds, row_sums
from core.errors import InvalidParameters, SearchBudgetExceeded, TheoremViolation
from core.hypergraph import (
    Hypergraph,
    Matching,
    complete_uniform,
    grid_3x3,
    induced_on,
    is_linear,
    loose_cycle,
    random_good_forest,
    random_linear_hypergraph,
)
from core.lss import classification_to_json, classify_good_forest_ideal, export_cas_script, generators_to_json, lss_generators
from core.pm_oracle import farkas_certificate, synthesize_weights, verify_certificate
from core.reports import VerificationReport
from core.serializers import (
    certificate_from_json,
    certificate_to_json,
    decomposition_from_json,
    decomposition_to_json,
    dumps,
    hypergraph_from_json,
    hypergraph_to_json,
    matching_from_json,
    parse_edge_list,
    regular_witness_to_json,
    walk_from_json,
    walk_to_json,
)
from core.validators import PayloadType, validate_payload
from core.walks import alternate_rooted_tree, find_regular_witness, find_strong_closed_walk, replay_walk
from config.settings import (
    CAS_DIALECTS,
    DEFAULT_PART_BUDGET,
    DEFAULT_SEED,
    EXIT_OK,
    EXIT_THEOREM,
    EXIT_USAGE,
    EXIT_VALIDATION,
    LOG_FILE,
    WALK_TREE_BUDGET,
)


def configure_logging(verbose: bool = False) -> None:
    """Logs sur stderr et dans LOG_FILE ; stdout reste réservé aux résultats."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[
            logging.StreamHandler(sys.stderr),
            logging.FileHandler(LOG_FILE, encoding="utf-8"),
        ],
    )


# =============================================
# ENTRÉES / SORTIES
# =============================================
def _emit(args, payload: dict, text: Optional[str] = None) -> None:
    """JSON si --json (ou sans rendu texte), tableau lisible sinon."""
    rendered = dumps(payload) if args.json or text is None else text
    if getattr(args, "out", None):
        Path(args.out).write_text(dumps(payload) + "\n", encoding="utf-8")
        logger.info(f"Résultat écrit dans {args.out}")
    else:
        print(rendered)


def _load_instance(args) -> tuple[Hypergraph, Optional[Matching], dict]:
    """Hypergraphe de --in, couplage de --matching ou du champ "matching"."""
    reader = DataReader(args.input)
    h = reader.read_hypergraph()
    payload = reader.data if isinstance(reader.data, dict) else {}
    matching = None
    if getattr(args, "matching", None):
        matching = matching_from_json(h, parse_edge_list(args.matching))
    elif "matching" in payload:
        matching = matching_from_json(h, payload)
    return h, matching, payload


def _require_matching(m: Optional[Matching]) -> Matching:
    if m is None:
        raise InvalidParameters("Un couplage est requis (--matching ou champ \"matching\")")
    return m


def _journal(args, report: VerificationReport) -> None:
    if args.no_journal:
        return
    from database.journal import record_report

    number = record_report(report)
    logger.info(f"Rapport {number} journalisé")


# =============================================
# COMMANDES
# =============================================
def cmd_gen(args) -> int:
    """Génère un hypergraphe d'une famille standard."""
    rng = random.Random(args.seed)
    if args.family == "complete":
        h = complete_uniform(args.n, args.r)
    elif args.family == "loose-cycle":
        h = loose_cycle(args.r, args.m)
    elif args.family == "grid":
        h = grid_3x3()
    elif args.family == "random-linear":
        h = random_linear_hypergraph(args.n, args.r, args.m, rng)
    else:
        h = random_good_forest(args.r, args.m, rng)
    matching = None
    if args.family == "grid":
        matching = Matching(((1, 2, 3), (4, 5, 6), (7, 8, 9)))
    logger.info(f"Hypergraphe généré : {h.describe()}")
    _emit(args, hypergraph_to_json(h, matching))
    return EXIT_OK


def _positivity_payload(h: Hypergraph, m: Matching) -> dict:
    payload = {"hypergraph": hypergraph_to_json(h), "matching": [list(e) for e in m.edges]}
    certificate = synthesize_weights(h, m)
    payload["positive"] = certificate is not None
    if certificate is not None:
        payload["certificate"] = certificate_to_json(certificate)
        return payload
    if is_linear(induced_on(h, m.vertices)):
        walk = find_strong_closed_walk(h, m)
        if walk is not None:
            payload.update(walk_to_json(walk))
    return payload


def cmd_check_positive(args) -> int:
    """Positivité d'un couplage : certificat de poids ou marche forte."""
    h, m, _ = _load_instance(args)
    m = _require_matching(m)
    payload = _positivity_payload(h, m)
    lines = [f"{h.describe()}, couplage de {len(m)} arête(s) : "
             + ("POSITIF" if payload["positive"] else "NON POSITIF")]
    if "certificate" in payload:
        lines += [f"  w({v}) = {w}" for v, w in payload["certificate"]["weights"].items()]
    if "walk" in payload:
        lines.append("  marche forte : " + " -> ".join(
            f"{step['vertex']} {step['edge']}{'*' if step['in_matching'] else ''}" for step in payload["walk"]
        ))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_walks(args) -> int:
    """Témoin régulier, statistiques de l'arbre alterné et marche forte."""
    h, m, _ = _load_instance(args)
    m = _require_matching(m)
    root = args.root if args.root is not None else min(m.vertices)
    leaves = closed = 0
    for branch in alternate_rooted_tree(h, m, root, args.budget):
        leaves += 1
        closed += branch.closed
    payload = {
        "hypergraph": hypergraph_to_json(h),
        "matching": [list(e) for e in m.edges],
        "tree": {"root": root, "leaves": leaves, "closed": closed},
    }
    try:
        regular = find_regular_witness(h, m)
    except SearchBudgetExceeded as e:
        logger.warning(f"Témoin régulier non recherché : {e}")
        regular = None
    if regular is not None:
        payload["regular_witness"] = regular_witness_to_json(h, regular)
    walk = find_strong_closed_walk(h, m, args.budget, combinatorial=args.combinatorial)
    if walk is not None:
        payload.update(walk_to_json(walk))
    text = (
        f"Arbre alterné (racine {root}) : {leaves} feuille(s), {closed} fermée(s)\n"
        f"Témoin régulier : {'oui' if regular else 'non'}\n"
        f"Marche forte : {f'longueur {len(walk)} ({walk.stage})' if walk else 'aucune (couplage positif)'}"
    )
    _emit(args, payload, text)
    return EXIT_OK


def _decomposition_report(command: str, instance: str, dec: PmDecomposition) -> VerificationReport:
    report = VerificationReport(command, instance)
    replay = replay_decomposition(dec)
    fallbacks = [
        f"{part.key} : {certificate.detail}"
        for part, certificate in zip(dec.parts, dec.certificates)
        if certificate.provenance == "LP-fallback"
    ]
    detail = f"{len(dec)} parts rejouées {dec.provenance_counts}"
    if fallbacks:
        detail += " ; repli " + " | ".join(fallbacks)
    report.add(
        "replay",
        replay.ok,
        "; ".join(replay.failures) or detail,
        decomposition=decomposition_to_json(dec),
    )
    return report


def cmd_decompose(args) -> int:
    """pm-décomposition certifiée d'un hypergraphe complet ou d'un fichier."""
    if args.input:
        h, _, _ = _load_instance(args)
        if args.greedy:
            dec = pmd_greedy(h)
        else:
            result = pmd_exact(h, args.part_budget)
            if result is None:
                logger.error(f"pmd > {args.part_budget}, relancer avec --greedy ou --part-budget")
                return EXIT_VALIDATION
            dec = result[1]
        instance = h.describe()
    else:
        n, r = args.complete
        dec = pm_decompose_complete_3(n) if r == 3 else pm_decompose_complete_r(n, r)
        instance = f"K_{n}^({r})"

    report = _decomposition_report("decompose", instance, dec)
    _journal(args, report)
    _emit(args, decomposition_to_json(dec), f"{instance} : {len(dec)} parts {dec.provenance_counts}")
    return EXIT_OK if report.ok else EXIT_VALIDATION


def cmd_pmd(args) -> int:
    """pmd(H) par formule fermée, recherche exacte ou heuristique."""
    h, _, _ = _load_instance(args)
    payload: dict = {"hypergraph": h.describe()}
    if args.formula:
        result = pmd_formula(h)
        if result is None:
            logger.error("Aucune formule fermée ne s'applique à cet hypergraphe")
            return EXIT_VALIDATION
        payload.update(pmd=result[0], method="formula", family=result[1])
    elif args.greedy:
        payload.update(pmd=len(pmd_greedy(h)), method="greedy")
    else:
        result = pmd_exact(h, args.part_budget)
        if result is None:
            logger.error(f"pmd > {args.part_budget}")
            return EXIT_VALIDATION
        payload.update(pmd=result[0], method="exact", decomposition=decomposition_to_json(result[1]))
    _emit(args, payload, str(payload["pmd"]))
    return EXIT_OK


def cmd_lss(args) -> int:
    """Générateurs L_H(d), classification ou script de calcul formel."""
    h, _, _ = _load_instance(args)
    presentation = lss_generators(h, args.d)
    if args.script:
        script = export_cas_script(presentation, args.script)
        if args.out:
            Path(args.out).write_text(script, encoding="utf-8")
            logger.info(f"Script {args.script} écrit dans {args.out}")
        else:
            sys.stdout.write(script)
        return EXIT_OK
    if args.classify:
        c = classify_good_forest_ideal(h, args.d)
        text = (
            f"d = {c.d}, Δ = {c.max_degree} : radical={c.radical}, "
            f"intersection complète={c.complete_intersection}, premier garanti={c.prime_guaranteed}"
        )
        _emit(args, classification_to_json(c), text)
        return EXIT_OK
    _emit(args, generators_to_json(presentation))
    return EXIT_OK


# =============================================
# VÉRIFICATION
# =============================================
def _replay_positivity(payload: dict) -> tuple[bool, str]:
    h = hypergraph_from_json(payload["hypergraph"])
    m = matching_from_json(h, payload["matching"])
    if payload["positive"]:
        ok = verify_certificate(h, m, certificate_from_json(payload["certificate"]))
        return ok, "certificat de poids " + ("valide" if ok else "rejeté")
    if "walk" in payload:
        replay = replay_walk(h, m, walk_from_json(payload))
        return replay.is_strong, f"marche forte : {replay}"
    ok = farkas_certificate(h, m) is not None
    return ok, "témoin dual " + ("retrouvé" if ok else "introuvable")


def _replay_check(evidence: dict) -> tuple[bool, str]:
    """Rejoue les pièces justificatives d'un contrôle."""
    if "decomposition" in evidence:
        dec = decomposition_from_json(evidence["decomposition"])
        replay = replay_decomposition(dec)
        if not replay.ok:
            return False, "; ".join(replay.failures)
        if "expected" in evidence and len(dec) != evidence["expected"]:
            return False, f"{len(dec)} parts, attendu {evidence['expected']}"
        if "bound" in evidence and len(dec) > evidence["bound"]:
            return False, f"{len(dec)} parts > {evidence['bound']}"
        if evidence.get("structure"):
            failures = _structure_failures(dec)
            if failures:
                return False, "; ".join(failures)
        return True, f"{len(dec)} parts rejouées"
    if "positive" in evidence:
        return _replay_positivity(evidence)
    return False, "aucune pièce justificative rejouable"


def _verify_payload(payload: dict, source: str) -> VerificationReport:
    if "checks" in payload:
        is_valid, results = validate_payload(payload, PayloadType.REPORT)
        if not is_valid:
            raise InvalidParameters("; ".join(e for r in results for e in r.errors))
        original = VerificationReport.from_json(payload)
        report = VerificationReport("verify", f"{original.command} : {original.instance}")
        for check in original.checks:
            ok, detail = _replay_check(check.evidence)
            report.add(check.name, ok and check.passed, detail)
        return report
    if "parts" in payload:
        is_valid, results = validate_payload(payload, PayloadType.DECOMPOSITION)
        if not is_valid:
            raise InvalidParameters("; ".join(e for r in results for e in r.errors))
        report = VerificationReport("verify", source)
        ok, detail = _replay_check({"decomposition": payload})
        report.add("replay", ok, detail)
        return report
    if "positive" in payload:
        report = VerificationReport("verify", source)
        ok, detail = _replay_positivity(payload)
        report.add("positivity", ok, detail)
        return report
    raise InvalidParameters(f"Document non vérifiable : {source}")


def cmd_verify(args) -> int:
    """Rejoue un rapport, une décomposition ou un verdict de positivité."""
    reader = DataReader(args.input)
    payload = reader.read()
    if not isinstance(payload, dict):
        raise InvalidParameters("Document JSON attendu")
    report = _verify_payload(payload, reader.source)
    _journal(args, report)
    _emit(args, report.to_json(), report.to_table())
    return EXIT_OK if report.ok else EXIT_VALIDATION


def _structure_failures(dec: PmDecomposition) -> list[str]:
    failures = []
    for part, certificate, _ in dec.stages():
        if len(part) < 2 or certificate.provenance != "constructive":
            continue
        sums = row_sums(part, certificate)
        if sums[0] != 2 or any(s != 1 for s in sums[1:]):
            failures.append(f"Bande {part.key} : sommes de lignes {[str(s) for s in sums]}")
        if not descending_chain_holds(part, certificate):
            failures.append(f"Bande {part.key} : chaîne décroissante rompue")
    return failures


def cmd_verify_conjecture(args) -> int:
    """Décompose K_n^(r) pour chaque n de la plage et rejoue tout."""
    if args.n_from > args.n_to:
        raise InvalidParameters(f"Plage vide : {args.n_from} > {args.n_to}")
    report = VerificationReport("verify-conjecture", f"r={args.r}, n={args.n_from}..{args.n_to}")
    for n in range(args.n_from, args.n_to + 1):
        if args.r == 3:
            dec = pm_decompose_complete_3(n)
            evidence = {"n": n, "expected": band_count_formula(n), "structure": True}
        else:
            dec = pm_decompose_complete_r(n, args.r)
            evidence = {"n": n, "bound": band_count_bound(n, args.r)}
        evidence["decomposition"] = decomposition_to_json(dec)
        ok, detail = _replay_check(evidence)
        report.add(f"n={n}", ok, detail, **evidence)
        logger.info(f"n = {n} : {len(dec)} parts, {'OK' if ok else 'ÉCHEC'}")

    _journal(args, report)
    _emit(args, report.to_json(), report.to_table())
    return EXIT_OK if report.ok else EXIT_VALIDATION


# =============================================
# ANALYSE DES ARGUMENTS
# =============================================
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Sortie JSON sur stdout")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Graine des générateurs aléatoires")
    common.add_argument("--no-journal", action="store_true", help="Ne pas journaliser les rapports")
    common.add_argument("--verbose", "-v", action="store_true", help="Logs détaillés")
    common.add_argument("--out", "-o", help="Fichier de sortie JSON")

    instance = argparse.ArgumentParser(add_help=False)
    instance.add_argument("--in", dest="input", required=True, help="Fichier JSON/CSV ou '-' pour stdin")
    instance.add_argument("--matching", help="Couplage, ex. '1,2,3;4,5,6'")

    parser = argparse.ArgumentParser(
        prog="pmdkit",
        description="PMD-KIT - Décompositions en couplages positifs d'hypergraphes uniformes",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Exemples d'utilisation :
  python main.py gen loose-cycle --r 3 --m 3 > c6.json
  python main.py pmd --in c6.json --formula
  python main.py gen grid | python main.py check-positive --in -
  python main.py verify-conjecture --n-from 4 --n-to 12
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", parents=[common], help="Générer un hypergraphe")
    gen.add_argument("family", choices=["complete", "loose-cycle", "grid", "random-linear", "good-forest"])
    gen.add_argument("--n", type=int, default=6)
    gen.add_argument("--r", type=int, default=3)
    gen.add_argument("--m", type=int, default=3)
    gen.set_defaults(handler=cmd_gen)

    check = sub.add_parser("check-positive", parents=[common, instance], help="Tester la positivité d'un couplage")
    check.set_defaults(handler=cmd_check_positive)

    walks = sub.add_parser("walks", parents=[common, instance], help="Marches alternées et témoins réguliers")
    walks.add_argument("--root", type=int)
    walks.add_argument("--budget", type=int, default=WALK_TREE_BUDGET)
    walks.add_argument("--combinatorial", action="store_true", help="Sans programme linéaire : arbres puis témoin régulier")
    walks.set_defaults(handler=cmd_walks)

    decompose = sub.add_parser("decompose", parents=[common], help="pm-décomposition certifiée")
    source = decompose.add_mutually_exclusive_group(required=True)
    source.add_argument("--in", dest="input", help="Hypergraphe quelconque (JSON/CSV ou '-')")
    source.add_argument("--complete", nargs=2, type=int, metavar=("N", "R"), help="Hypergraphe complet K_N^(R)")
    decompose.add_argument("--greedy", action="store_true")
    decompose.add_argument("--part-budget", type=int, default=DEFAULT_PART_BUDGET)
    decompose.set_defaults(handler=cmd_decompose, matching=None)

    pmd = sub.add_parser("pmd", parents=[common, instance], help="Calculer pmd(H)")
    method = pmd.add_mutually_exclusive_group()
    method.add_argument("--formula", action="store_true")
    method.add_argument("--exact", action="store_true")
    method.add_argument("--greedy", action="store_true")
    pmd.add_argument("--part-budget", type=int, default=DEFAULT_PART_BUDGET)
    pmd.set_defaults(handler=cmd_pmd)

    lss = sub.add_parser("lss", parents=[common, instance], help="Idéaux LSS")
    lss.add_argument("--d", type=int, required=True)
    output = lss.add_mutually_exclusive_group()
    output.add_argument("--classify", action="store_true")
    output.add_argument("--script", choices=sorted(CAS_DIALECTS))
    lss.set_defaults(handler=cmd_lss)

    verify = sub.add_parser("verify", parents=[common], help="Rejouer un document émis")
    verify.add_argument("--in", dest="input", required=True)
    verify.set_defaults(handler=cmd_verify)

    conjecture = sub.add_parser("verify-conjecture", parents=[common], help="Vérifier les décompositions de K_n^(r)")
    conjecture.add_argument("--n-from", type=int, required=True)
    conjecture.add_argument("--n-to", type=int, required=True)
    conjecture.add_argument("--r", type=int, default=3)
    conjecture.set_defaults(handler=cmd_verify_conjecture)

    return parser


def run_command(argv: Sequence[str]) -> int:
    """
    Exécute une commande et retourne le code de sortie.

    0 succès, 1 entrée ou vérification invalide, 2 usage, 3 théorème contredit
    (diagnostic JSON sur stderr).
    """
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK

    try:
        return args.handler(args)
    except TheoremViolation as e:
        logger.error(f"Théorème contredit : {e}")
        print(json.dumps({"error": type(e).__name__, "message": str(e), "diagnostic": e.diagnostic},
                         ensure_ascii=False), file=sys.stderr)
        return EXIT_THEOREM
    except SearchBudgetExceeded as e:
        logger.error(f"Budget de recherche dépassé : {e}")
        return EXIT_VALIDATION
    except (ValueError, KeyError, TypeError, FileNotFoundError) as e:
        logger.error(f"Entrée invalide : {e}")
        return EXIT_VALIDATION


def main():
    """Point d'entrée principal avec interface CLI."""
    configure_logging("-v" in sys.argv or "--verbose" in sys.argv)
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
