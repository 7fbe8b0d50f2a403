# src/main.py

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from src.scripts.check_cover import check_cover
from src.scripts.corpus import run_corpus
from src.scripts.enumerate import enumerate_skeletons
from src.scripts.learn import learn_grammar
from src.scripts.random_grammar import random_grammar_text
from src.scripts.stats import write_summary
from src.skeletal.trees import format_tree
from src.utils.config import ConfigManager
from src.utils.errors import (
    BoundViolationError,
    GrammarFormatError,
    GrammarGenerationError,
    GrammarValidationError,
    IterationCeilingError,
    MalformedDocumentError,
    TreeSyntaxError,
)
from src.utils.logging_setup import setup_logging


"""
Cover grammar learning toolkit
Command-line front end: one subcommand per script in src/scripts
"""

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_INPUT_ERROR = 2
EXIT_BOUND_VIOLATION = 3
EXIT_ITERATION_CEILING = 4

INPUT_ERRORS = (
    GrammarFormatError,
    GrammarValidationError,
    GrammarGenerationError,
    MalformedDocumentError,
    TreeSyntaxError,
    OSError,
    ValueError,
)


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skeletal-learn",
        description="Learn cover context-free grammars from structural descriptions.",
    )
    parser.add_argument("--config", default="config/settings.yaml", help="YAML settings file")
    parser.add_argument("--log-level", default=None, help="Override logging.level")
    commands = parser.add_subparsers(dest="command", required=True)

    learn = commands.add_parser("learn", help="Learn a cover grammar of a target grammar")
    learn.add_argument("--grammar", required=True, help="Target grammar file")
    learn.add_argument("--ell", type=positive_int, default=None, help="Cover bound (default: learning.default_ell)")
    learn.add_argument("--policy", choices=["minimal", "maximal-depth", "random"], default=None,
                       help="Counterexample policy of the teacher")
    learn.add_argument("--seed", type=int, default=None, help="Seed of the random policy")
    learn.add_argument("--trace", action="store_true", default=None, help="Write a table trace")
    learn.add_argument("--output-dir", default=None, help="Directory for all artifacts")

    learn_exact = commands.add_parser("learn-exact", help="Learn a structurally equivalent grammar (baseline)")
    learn_exact.add_argument("--grammar", required=True, help="Target grammar file")
    learn_exact.add_argument("--trace", action="store_true", default=None, help="Write a table trace")
    learn_exact.add_argument("--output-dir", default=None, help="Directory for all artifacts")

    enum = commands.add_parser("enum", help="List the skeletons of depth <= ell in tree order")
    enum.add_argument("--grammar", required=True)
    enum.add_argument("--ell", type=positive_int, required=True)

    check = commands.add_parser("check-cover", help="Compare two grammars on skeletons of depth <= ell")
    check.add_argument("--grammar", required=True, help="Target grammar file")
    check.add_argument("--hypothesis", required=True, help="Candidate grammar file")
    check.add_argument("--ell", type=positive_int, required=True)

    rand = commands.add_parser("random", help="Write a seeded random target grammar")
    rand.add_argument("--seed", type=int, required=True)
    rand.add_argument("--output", default=None, help="Output file (default: stdout)")

    stats = commands.add_parser("stats", help="Aggregate a directory of stats records")
    stats.add_argument("--dir", default=None, help="Directory of *.stats.json records")
    stats.add_argument("--output", default=None, help="Write the summary as CSV")

    corpus = commands.add_parser("corpus", help="Learn a seeded random corpus and verify every session")
    corpus.add_argument("--size", type=positive_int, default=None)
    corpus.add_argument("--ells", type=positive_int, nargs="+", default=None)
    corpus.add_argument("--seed", type=int, default=None)
    corpus.add_argument("--workers", type=positive_int, default=None)
    corpus.add_argument("--no-exact", action="store_true", help="Skip the exact baseline sessions")
    corpus.add_argument("--output-dir", default=None)

    return parser


def _learn(args, config: ConfigManager, exact: bool) -> int:
    artifacts = learn_grammar(
        args.grammar,
        ell=None if exact else args.ell,
        exact=exact,
        policy=None if exact else args.policy,
        seed=None if exact else args.seed,
        trace=args.trace,
        output_dir=args.output_dir,
        config=config,
    )
    stats = artifacts.result.stats
    print(f"learned {stats.final_states} states, {stats.equivalence_queries} equivalence queries, "
          f"{stats.membership_queries} membership queries")
    for kind, path in artifacts.paths.items():
        print(f"{kind}: {path}")
    return EXIT_OK


def dispatch(args, config: ConfigManager) -> int:
    if args.command == "learn":
        return _learn(args, config, exact=False)
    if args.command == "learn-exact":
        return _learn(args, config, exact=True)
    if args.command == "enum":
        for line in enumerate_skeletons(args.grammar, args.ell):
            print(line)
        return EXIT_OK
    if args.command == "check-cover":
        witness = check_cover(args.grammar, args.hypothesis, args.ell)
        if witness is None:
            print("equal")
            return EXIT_OK
        print(format_tree(witness))
        return EXIT_COUNTEREXAMPLE
    if args.command == "random":
        text = random_grammar_text(args.seed, config=config)
        if args.output is None:
            sys.stdout.write(text)
        else:
            output = Path(args.output)
            output.parent.mkdir(parents=True, exist_ok=True)
            output.write_text(text, encoding='utf-8')
        return EXIT_OK
    if args.command == "stats":
        directory = args.dir or config.artifact_paths.get('stats', 'runs/stats')
        summary = write_summary(directory, args.output)
        print(summary.to_string())
        return EXIT_OK
    if args.command == "corpus":
        manifest = run_corpus(
            size=args.size,
            ells=args.ells,
            seed=args.seed,
            max_workers=args.workers,
            include_exact=not args.no_exact,
            output_dir=args.output_dir,
            config=config,
        )
        print(f"{manifest['sessions']} sessions, {manifest['incorrect']} incorrect, "
              f"{manifest['bound_violations']} bound violations")
        failed = manifest['incorrect'] or manifest['bound_violations'] or manifest['table_disagreements']
        return EXIT_BOUND_VIOLATION if failed else EXIT_OK
    raise ValueError(f"Unknown command {args.command}")


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    args = build_parser().parse_args(argv)

    try:
        config = ConfigManager(args.config)
    except (FileNotFoundError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    logging_settings = config.logging_settings
    setup_logging(
        log_dir=config.artifact_paths.get('logs'),
        level=(args.log_level or logging_settings.get('level', 'INFO')).upper(),
        debug_file=bool(logging_settings.get('debug_file', False)),
    )

    try:
        return dispatch(args, config)
    except BoundViolationError as e:
        logging.error(f"Internal bound violation: {str(e)}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_BOUND_VIOLATION
    except IterationCeilingError as e:
        logging.error(f"Iteration ceiling hit: {str(e)}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ITERATION_CEILING
    except INPUT_ERRORS as e:
        logging.error(f"Input error: {str(e)}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
