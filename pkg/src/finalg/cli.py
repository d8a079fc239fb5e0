"""Batch front end: load inputs, run named analyses, emit deterministic reports.

Exit status: 0 all checks passed, 1 some check failed, 2 parse error,
3 precondition failure (size caps, degenerate constants, missing principality).
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .algebra import find_isomorphism, homomorphism_violation, product
from .center import (
    center_algebra,
    check_center_axioms,
    check_product_stability,
    hom_center_check,
)
from .congruence import (
    all_congruences,
    extract_certificate,
    factor_pairs,
    principal_congruence,
    verify_certificate,
)
from .errors import (
    DegenerateConstantsError,
    FinalgError,
    NotAHomomorphismError,
    PairNotRelatedError,
    ParseError,
    PrincipalityError,
    SizeCapExceededError,
)
from .exhaustive import brute_force_congruences, brute_force_principal
from .loaders import load_algebra, load_formula_file, load_homomorphism, load_lattice_site
from .logic import (
    certificate_to_formula,
    check_connected_axioms,
    check_sigma,
    defines_theta1,
    eval_formula,
    pcf_relation,
)
from .pierce import (
    build_pierce,
    check_representation,
    check_sheaf_condition,
    constant_representation,
    decompose,
    partition_object,
    pierce_representation,
    sheaf_coproduct,
    terminal_sheaf,
)
from .report import Report

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_PRECONDITION = 3


def _parse_tuple(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ParseError(f"expected a comma-separated integer tuple, got {text!r}")


def _cmd_con(args, report: Report) -> None:
    algebra = load_algebra(args.algebra)
    congs = all_congruences(algebra, args.cap)
    report.data["algebra"] = algebra.name
    report.data["size"] = algebra.size
    report.data["congruence_count"] = len(congs)
    report.data["congruences"] = [c.format_blocks() for c in congs]
    edges = []
    for i, a in enumerate(congs):
        for j, b in enumerate(congs):
            if i != j and a.partition.refines(b.partition):
                edges.append([i, j])
    report.data["refinement_edges"] = edges
    report.add("lattice_bounds_present", congs[0].is_universal() and congs[-1].is_identity())
    if args.oracle:
        oracle = brute_force_congruences(algebra)
        report.add(
            "oracle_all_congruences",
            [c.partition for c in congs] == sorted(oracle, key=lambda p: p.rep),
        )
        ok = True
        for a in range(algebra.size):
            for b in range(a + 1, algebra.size):
                fast = principal_congruence(algebra, [(a, b)]).partition
                if fast != brute_force_principal(algebra, [(a, b)]):
                    ok = False
        report.add("oracle_principal_congruences", ok)


def _cmd_fc(args, report: Report) -> None:
    algebra = load_algebra(args.algebra)
    pairs = factor_pairs(algebra, args.cap)
    report.data["algebra"] = algebra.name
    report.data["factor_pairs"] = [
        [t.format_blocks(), d.format_blocks()] for t, d in pairs
    ]
    trivial = sum(
        1
        for t, d in pairs
        if (t.is_identity() and d.is_universal()) or (t.is_universal() and d.is_identity())
    )
    report.add("trivial_pairs_present", trivial == 2)


def _cmd_center(args, report: Report) -> None:
    algebra = load_algebra(args.algebra)
    center = center_algebra(algebra, args.cap)
    report.data["algebra"] = algebra.name
    report.data["central_tuples"] = [list(e.tuple) for e in center.elements]
    report.data["atoms"] = [list(center.elements[i].tuple) for i in center.atoms()]
    report.data["hasse_edges"] = [
        [list(center.elements[i].tuple), list(center.elements[j].tuple)]
        for i, j in center.hasse_edges()
    ]
    report.data["meet_table"] = [list(row) for row in center.meet_table]
    report.data["join_table"] = [list(row) for row in center.join_table]
    report.data["complement_table"] = list(center.complement_table)
    report.data["connected"] = center.size == 2
    report.extend(check_center_axioms(algebra, args.cap))


def _cmd_pierce(args, report: Report) -> None:
    algebra = load_algebra(args.algebra)
    sheaf = build_pierce(algebra, args.cap)
    center = sheaf.center
    report.data["algebra"] = algebra.name
    report.data["central_tuples"] = [list(e.tuple) for e in center.elements]
    report.data["section_sizes"] = {
        str(e.tuple): sheaf.section(e.tuple).size for e in center.elements
    }
    for i in range(center.size):
        for j in range(center.size):
            e, f = center.elements[i].tuple, center.elements[j].tuple
            report.add(
                f"sheaf_cover[{e},{f}]",
                check_sheaf_condition(sheaf, e, f),
            )
    dec = decompose(algebra, args.cap)
    report.data["atoms"] = [list(a) for a in dec.atoms]
    report.data["stalk_sizes"] = [s.size for s in dec.stalks]
    report.add("decomposition_isomorphism", dec.is_isomorphism)
    report.add("subdirect_embedding", dec.subdirect)
    for atom, ok in zip(dec.atoms, dec.stalks_connected):
        report.add(f"stalk_connected[{atom}]", ok)
    for note in dec.diagnostics:
        report.data.setdefault("diagnostics", []).append(note)


def _cmd_hom(args, report: Report) -> None:
    try:
        hom = load_homomorphism(args.homfile)
    except NotAHomomorphismError as exc:
        report.add("is_homomorphism", False, witness=str(exc))
        return
    report.data["source"] = hom.source.name
    report.data["target"] = hom.target.name
    report.data["mapping"] = list(hom.mapping)
    report.add("is_homomorphism", True)
    hc = hom_center_check(hom, args.cap)
    report.add(
        "sc_central_elements_preserved",
        hc.sc,
        witness="" if hc.sc else f"central {hc.sc_witness} maps outside the center",
    )
    report.add(
        "csc_complementary_pairs_preserved",
        hc.csc,
        witness="" if hc.csc else (f"pair {hc.csc_witness}" if hc.csc_witness else ""),
    )
    if hc.boolean_hom is None:
        report.data["boolean_restriction"] = "skipped (center not preserved)"
    else:
        report.add("boolean_restriction_homomorphism", hc.boolean_hom)
    if hc.sc:
        for e in center_algebra(hom.source, args.cap).elements:
            stab = check_product_stability(hom, e, args.cap, iso_cap=args.iso_cap)
            report.add(
                f"product_stability[{e.tuple}]",
                stab.holds,
                witness=f"parts {stab.part_sizes}",
            )


def _cmd_certify(args, report: Report) -> None:
    algebra = load_algebra(args.algebra)
    generators = [_parse_tuple(g) for g in args.gen]
    for g in generators:
        if len(g) != 2:
            raise ParseError("--gen expects pairs like 1,3")
    cong, store = principal_congruence(algebra, generators, want_certificates=True)
    report.data["algebra"] = algebra.name
    report.data["congruence"] = cong.format_blocks()
    if args.pair:
        pairs = [tuple(_parse_tuple(p)) for p in args.pair]
    else:
        pairs = [
            (a, b)
            for a in range(algebra.size)
            for b in range(algebra.size)
            if cong.same(a, b)
        ]
    chains = []
    for a, b in pairs:
        try:
            cert = extract_certificate(store, a, b)
        except PairNotRelatedError:
            report.add(f"certificate[{a},{b}]", False, witness="pair not related")
            continue
        ok = verify_certificate(algebra, cert)
        schema = certificate_to_formula(cert)
        replay = eval_formula(
            algebra,
            schema.formula(bind_witnesses=False),
            schema.instance_env(a, b, cert.generators, with_witnesses=True),
        )
        sound = all(cong.same(x, y) for x, y in pcf_relation(algebra, schema, cert.generators))
        report.add(f"certificate[{a},{b}]", ok and replay and sound)
        chains.append(cert.format_lines(algebra))
    report.data["chains"] = chains


def _cmd_defines(args, report: Report) -> None:
    if len(args.algebras) % 2 != 0:
        raise ParseError("defines expects an even number of algebra files (consecutive pairs)")
    algebras = [load_algebra(p) for p in args.algebras]
    phi = load_formula_file(args.formula, algebras[0].signature)
    corpus = list(zip(algebras[0::2], algebras[1::2]))
    result = defines_theta1(phi, corpus, lex_mode=args.lex)
    report.data["pairs"] = [[a.name, b.name] for a, b in corpus]
    report.data["mode"] = "theta0" if args.lex else "theta1"
    witness = "" if result.passed else str(result.counterexample)
    report.add("defines_factor_congruence", result.passed, witness=witness)


def _cmd_sigma(args, report: Report) -> None:
    algebra = load_algebra(args.algebra)
    phi = load_formula_file(args.formula, algebra.signature)
    report.data["algebra"] = algebra.name
    if args.connected:
        from .pierce import is_connected

        axioms = check_connected_axioms(algebra, phi)
        semantic = is_connected(algebra, args.cap)
        report.data["connected_axioms"] = axioms
        report.data["directly_indecomposable"] = semantic
        report.add("connected_axioms_match_semantics", axioms == semantic)
        return
    if args.e is None or args.f is None:
        raise ParseError("sigma needs --e and --f tuples (or --connected)")
    e, f = _parse_tuple(args.e), _parse_tuple(args.f)
    result = check_sigma(algebra, e, f, phi, args.cap)
    report.data["axioms_hold"] = result.holds
    report.data["semantic_complementary_pair"] = result.semantic
    if result.failed_axioms:
        report.data["failed_axiom_indices"] = list(result.failed_axioms)
    report.add("sigma_matches_semantics", result.agrees)


def _cmd_sheaf(args, report: Report) -> None:
    if args.pierce:
        algebra = load_algebra(args.pierce)
        sheaf = build_pierce(algebra, args.cap)
        rep = pierce_representation(sheaf)
        result = check_representation(rep, args.cap)
        report.data["algebra"] = algebra.name
        report.add(
            "representation_conditions",
            result.ok,
            witness="; ".join(result.failures[:2]),
        )
        return
    if not args.lattice:
        raise ParseError("sheaf expects a lattice file or --pierce ALGEBRA")
    site = load_lattice_site(args.lattice)
    report.data["lattice"] = site.name
    report.data["size"] = site.size
    po = partition_object(site)
    report.data["partition_object_sizes"] = [len(po.section(d)) for d in range(site.size)]
    report.add("partition_object_is_sheaf", po.is_sheaf())
    ok_sizes = all(
        len(po.section(d)) == len(site.complemented_below(d)) for d in range(site.size)
    )
    report.add("partition_sizes_match_interval_centers", ok_sizes)
    one = terminal_sheaf(site)
    cop = sheaf_coproduct(site, one, one)
    report.add("terminal_coproduct_is_sheaf", cop.is_sheaf())
    if args.constant:
        algebra = load_algebra(args.constant)
        rep = constant_representation(site, algebra)
        result = check_representation(rep, args.cap)
        report.data["constant_algebra"] = algebra.name
        report.add(
            "constant_representation_conditions",
            result.ok,
            witness="; ".join(result.failures[:2]),
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finalg",
        description="Factor congruences, Boolean centers, and sheaf-style "
        "decompositions of finite algebras.",
    )
    parser.add_argument(
        "--format",
        choices=("text", "structured"),
        default="text",
        help="text report or stable JSON document",
    )
    parser.add_argument(
        "--max-size",
        type=int,
        default=None,
        help="cap for exhaustive enumerations (default 12 for congruence "
        "lattices, 8 for isomorphism searches)",
    )
    parser.add_argument(
        "--oracle",
        action="store_true",
        help="cross-check against the exhaustive partition oracle (small inputs)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("con", help="congruence lattice")
    p.add_argument("algebra")
    p = sub.add_parser("fc", help="complementary factor pairs")
    p.add_argument("algebra")
    p = sub.add_parser("center", help="Boolean center and its axioms")
    p.add_argument("algebra")
    p = sub.add_parser("pierce", help="sheaf over the center, stalks, decomposition")
    p.add_argument("algebra")
    p = sub.add_parser("hom", help="homomorphism center checks")
    p.add_argument("homfile")
    p = sub.add_parser("certify", help="chain certificates for a principal congruence")
    p.add_argument("algebra")
    p.add_argument("--gen", action="append", required=True, help="generator pair c,d")
    p.add_argument("--pair", action="append", help="request pair a,b (default: all related)")
    p = sub.add_parser("defines", help="factor-congruence definability on product pairs")
    p.add_argument("formula")
    p.add_argument("algebras", nargs="+")
    p.add_argument("--lex", action="store_true", help="check the 0-side convention")
    p = sub.add_parser("sigma", help="complementary-pair axioms / connectedness axioms")
    p.add_argument("algebra")
    p.add_argument("formula")
    p.add_argument("--e", help="first tuple, comma separated")
    p.add_argument("--f", help="second tuple, comma separated")
    p.add_argument("--connected", action="store_true")
    p = sub.add_parser("sheaf", help="lattice-site machinery and representations")
    p.add_argument("lattice", nargs="?")
    p.add_argument("--constant", help="constant representation at this algebra")
    p.add_argument("--pierce", help="check the representation of this algebra's sheaf")
    return parser


_HANDLERS = {
    "con": _cmd_con,
    "fc": _cmd_fc,
    "center": _cmd_center,
    "pierce": _cmd_pierce,
    "hom": _cmd_hom,
    "certify": _cmd_certify,
    "defines": _cmd_defines,
    "sigma": _cmd_sigma,
    "sheaf": _cmd_sheaf,
}


def run(argv: Sequence[str]) -> tuple[Report, int, str]:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.cap = args.max_size if args.max_size is not None else 12
    args.iso_cap = args.max_size if args.max_size is not None else 8
    inputs = tuple(
        str(getattr(args, name))
        for name in ("algebra", "homfile", "formula", "lattice")
        if getattr(args, name, None)
    )
    report = Report(command=args.command, inputs=inputs)
    try:
        _HANDLERS[args.command](args, report)
    except (ParseError, FileNotFoundError) as exc:
        report.add("parse", False, witness=str(exc))
        return report, EXIT_PARSE_ERROR, args.format
    except FinalgError as exc:
        report.add("precondition", False, witness=str(exc))
        return report, EXIT_PRECONDITION, args.format
    return report, report.exit_status, args.format


def main(argv: Optional[Sequence[str]] = None) -> int:
    report, status, fmt = run(list(argv) if argv is not None else sys.argv[1:])
    text = report.to_structured() if fmt == "structured" else report.to_text()
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
