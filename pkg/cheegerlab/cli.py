"""
Command-line entry point.

    cheegerlab spectrum graph.txt
    cheegerlab cheeger --family "cycle 5"
    cheegerlab verify --family petersen --out report.json
    cheegerlab cayley z7.group --gens 1,2,5,6
    cheegerlab family hypercube 3
    cheegerlab corpus --seed 42 --out corpus.json

Exit status: 0 when no verdict failed, 1 when one did, 2 for unreadable
input, invalid settings or an exceeded enumeration limit.
"""
import argparse
import logging
import os
import sys

from cheegerlab import utils
from cheegerlab.analysis import CHECKS, analyze
from cheegerlab.cayley import cayley_graph, parse_generators, parse_group
from cheegerlab.config import LabConfig
from cheegerlab.corpus import build_corpus, run_corpus
from cheegerlab.exceptions import (
    CheegerLabError,
    GraphFormatError,
    GroupTableError,
)
from cheegerlab.expansion import cheeger_constant, vertex_expansion
from cheegerlab.families import parse_family
from cheegerlab.graph import format_graph, parse_graph
from cheegerlab.report import (
    build_report,
    format_record,
    format_summary,
    write_report,
)
from cheegerlab.spectra import normalized_spectrum

logger = logging.getLogger(__name__)

# flag name -> setting name
SETTING_FLAGS = {
    "tol": "tol",
    "max_n": "max_n",
    "seed": "seed",
    "workers": "workers",
    "vt_limit": "vt_limit",
    "count": "corpus_count",
}


def _add_settings(parser, corpus=False):
    parser.add_argument("--config", help="JSON file of setting adjustments")
    parser.add_argument("--tol", type=float, help="verdict tolerance")
    parser.add_argument("--max-n", type=int, help="enumeration limit")
    parser.add_argument("--seed", type=int, help="random seed")
    parser.add_argument("--workers", type=int, help="worker processes")
    parser.add_argument(
        "--vt-limit", type=int, help="automorphism search limit"
    )
    if corpus:
        parser.add_argument(
            "--count", type=int, help="number of random graphs"
        )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="log progress"
    )


def _add_graph_input(parser):
    parser.add_argument("graph", nargs="?", help="edge-list file")
    parser.add_argument(
        "--family", help='named family instead of a file, e.g. "cycle 5"'
    )


def _add_checks(parser):
    parser.add_argument(
        "--checks",
        help="comma-separated subset of: " + ", ".join(CHECKS),
    )
    parser.add_argument(
        "--out", help="write the report to OUT.json and OUT.csv"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cheegerlab",
        description="Spectra, exact expansion and checked spectral bounds "
        "of small graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="eigenvalues of D^-1 A")
    _add_graph_input(p)
    _add_settings(p)

    p = sub.add_parser("cheeger", help="exact edge-expansion h")
    _add_graph_input(p)
    p.add_argument(
        "--vertex", action="store_true", help="also compute h_out"
    )
    _add_settings(p)

    p = sub.add_parser("verify", help="run the checks on one graph")
    _add_graph_input(p)
    p.add_argument(
        "--assume-vt",
        action="store_true",
        help="treat the graph as vertex-transitive without searching",
    )
    _add_checks(p)
    _add_settings(p)

    p = sub.add_parser("cayley", help="run the checks on a Cayley graph")
    p.add_argument("group", help="multiplication-table file")
    p.add_argument(
        "--gens", required=True, help="generating set, e.g. 1,4"
    )
    p.add_argument(
        "--assert-simple",
        action="store_true",
        help="declare the group simple",
    )
    _add_checks(p)
    _add_settings(p)

    p = sub.add_parser("family", help="print a named graph as an edge list")
    p.add_argument("name")
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("--out", help="write the edge list to a file")

    p = sub.add_parser("corpus", help="run the checks on the test corpus")
    p.add_argument(
        "--no-random", action="store_true", help="families only"
    )
    p.add_argument(
        "--no-families", action="store_true", help="random graphs only"
    )
    _add_checks(p)
    _add_settings(p, corpus=True)
    return parser


def load_config(args) -> LabConfig:
    config = LabConfig()
    if getattr(args, "config", None):
        config.adjust(args.config)
    overrides = {
        setting: getattr(args, flag)
        for flag, setting in SETTING_FLAGS.items()
        if getattr(args, flag, None) is not None
    }
    if overrides:
        config.adjust(overrides)
    return config


def load_graph(args):
    if args.family:
        return parse_family(args.family)
    if not args.graph:
        raise CheegerLabError("give an edge-list file or --family")
    name = os.path.splitext(os.path.basename(args.graph))[0]
    if not os.path.exists(args.graph):
        raise CheegerLabError(f"no such file: {args.graph}")
    text = utils.read_text(args.graph, error=GraphFormatError)
    return parse_graph(text, name=name)


def _checks(args):
    if not getattr(args, "checks", None):
        return None
    return [c.strip() for c in args.checks.split(",") if c.strip()]


def cmd_spectrum(args, config) -> int:
    graph = load_graph(args)
    spectrum = normalized_spectrum(
        graph, max_sweeps=config.jacobi_sweeps, cluster_tol=config.cluster_tol
    )
    print(f"# {graph.name}: n={graph.n} m={graph.m} sweeps={spectrum.sweeps}")
    for value in spectrum.values:
        print(f"{value + 0.0:.12f}")
    sizes = " ".join(str(len(c)) for c in spectrum.clusters)
    print(f"# multiplicities: {sizes}")
    return 0


def cmd_cheeger(args, config) -> int:
    graph = load_graph(args)
    profile = cheeger_constant(
        graph, max_n=config.max_n, workers=config.workers
    )
    h, witness = profile.h, profile.witness
    print(f"h = {utils.format_rational(h)} = {float(h):.12f}")
    print(
        f"witness S = {{{', '.join(str(v) for v in witness.members)}}} "
        f"|dS| = {witness.boundary_size} vol(S) = {witness.vol_S} "
        f"vol(V-S) = {witness.vol_complement}"
    )
    if args.vertex:
        h_out, members = vertex_expansion(graph, max_n=config.max_n)
        print(
            f"h_out = {utils.format_rational(h_out)} = {float(h_out):.12f} "
            f"S = {{{', '.join(str(v) for v in members)}}}"
        )
    return 0


def _finish(records, config, args) -> int:
    report = build_report(records, config.dump())
    for record in report.graphs:
        print(format_record(record))
    print(format_summary(report.summary))
    if getattr(args, "out", None):
        for path in write_report(report, args.out):
            logger.info("wrote %s", path)
    return report.exit_code


def cmd_verify(args, config) -> int:
    graph = load_graph(args)
    checks = _checks(args)
    source = args.family or args.graph
    record = analyze(
        graph,
        config,
        graph_id=graph.name,
        source=source,
        assume_vt=args.assume_vt,
        checks=checks,
        workers=config.workers,
    )
    return _finish([record], config, args)


def cmd_cayley(args, config) -> int:
    name = os.path.splitext(os.path.basename(args.group))[0]
    if not os.path.exists(args.group):
        raise CheegerLabError(f"no such file: {args.group}")
    group = parse_group(
        utils.read_text(args.group, error=GroupTableError),
        name=name,
        asserted_simple=args.assert_simple,
        associativity_limit=config.associativity_limit,
        associativity_samples=config.associativity_samples,
    )
    gens = parse_generators(args.gens)
    graph = cayley_graph(group, gens)
    record = analyze(
        graph,
        config,
        graph_id=graph.name,
        source=f"{args.group} {args.gens}",
        group=group,
        checks=_checks(args),
        workers=config.workers,
    )
    return _finish([record], config, args)


def cmd_family(args, config) -> int:
    graph = parse_family(" ".join([args.name] + [str(p) for p in args.params]))
    text = format_graph(graph)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_corpus(args, config) -> int:
    items = build_corpus(
        config,
        with_families=not args.no_families,
        with_random=not args.no_random,
    )
    report = run_corpus(config, items, checks=_checks(args))
    for record in report.graphs:
        for v in record.failed:
            print(
                f"FAILED {record.graph_id} {v.name}: lhs={v.lhs!r} "
                f"rhs={v.rhs!r} slack={v.slack!r}"
            )
    print(f"graphs: {len(report.graphs)}  " + format_summary(report.summary))
    if args.out:
        for path in write_report(report, args.out):
            logger.info("wrote %s", path)
    return report.exit_code


COMMANDS = {
    "spectrum": cmd_spectrum,
    "cheeger": cmd_cheeger,
    "verify": cmd_verify,
    "cayley": cmd_cayley,
    "family": cmd_family,
    "corpus": cmd_corpus,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = load_config(args)
        return COMMANDS[args.command](args, config)
    except (CheegerLabError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
