"""
excross command-line interface

    excross sg {enumerate, table, oracle-check}
    excross action {validate, induce}
    excross cp {group, semigroup}
    excross check {iso, assoc, covariant, all}

Reports go to stdout (or --out); logs go to stderr. Exit status: 0 when every
requested check passed, 1 when a check failed, 2 on bad input.

Author: excross Team
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from config import settings
from src.algebra import check_associativity
from src.documents import (
    load_action_source,
    load_algebra_source,
    load_group_source,
    sg_action_beta_table,
    sg_action_rows,
    sg_action_table,
)
from src.errors import ExcrossError, GroupMismatch, InputError
from src.semigroup import check_closure, group_semigroup, multiplication_table
from src.fixtures import get_fixture
from src.groups import GroupTable
from src.partial_action import AlgebraPartialAction, SetPartialAction, check_sg_action
from src.reports import CheckResult, Report
from src.verification import (
    Pipeline,
    action_suite,
    assoc_suite,
    covariant_suite,
    full_suite,
    iso_suite,
    oracle_suite,
    pipeline_from_action,
    set_action_suite,
)
from utils.logging_config import get_logger

logger = get_logger("excross.cli")

VERBS = {
    "sg": ["enumerate", "table", "oracle-check"],
    "action": ["validate", "induce"],
    "cp": ["group", "semigroup"],
    "check": ["iso", "assoc", "covariant", "all"],
}

FORMATS = ["json", "csv", "text"]
SUFFIX_FORMATS = {".json": "json", ".csv": "csv", ".txt": "text"}


def positive_int(value: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value!r}")
    if number <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value!r}")
    return number


def report_format(args: argparse.Namespace) -> str:
    """--format when given, else the format named by the --out suffix, else text."""
    if args.format:
        return args.format
    if args.out is not None:
        return SUFFIX_FORMATS.get(args.out.suffix.lower(), "text")
    return "text"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", help='group preset ("cyclic 2", "klein4", "sym3") or group document path')
    common.add_argument("--action", type=Path, help="set-level or algebra-level action document")
    common.add_argument("--fixture", help="named fixture from the catalog, e.g. p1, swap, sym3_partial")
    common.add_argument("--algebra", type=Path, help="algebra or algebra-action document (check assoc)")
    common.add_argument("--out", type=Path, help="write the report here instead of stdout")
    common.add_argument("--format", choices=FORMATS, default=None,
                        help="report format (default: from the --out suffix, otherwise text)")
    common.add_argument("--level", choices=["quick", "exhaustive"], default=None,
                        help=f"verification level (default {settings.VERIFY_LEVEL})")
    common.add_argument("--max-word-len", type=positive_int, default=None, help="word oracle length bound")
    common.add_argument("--seed", type=int, default=settings.RANDOM_SEED, help="seed for randomized checks")

    parser = argparse.ArgumentParser(
        prog="excross",
        description="The inverse semigroup S(G), partial actions and their crossed products, verified exactly",
    )
    verbs = parser.add_subparsers(dest="verb", required=True)
    for verb, commands in VERBS.items():
        verb_parser = verbs.add_parser(verb, help=f"{verb} commands")
        sub = verb_parser.add_subparsers(dest="command", required=True)
        for command in commands:
            sub.add_parser(command, parents=[common])
    return parser


# ============================================================================
# Resolving inputs
# ============================================================================

class Inputs:
    """Group, action pipeline and labels resolved from the command-line flags."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.fixture = get_fixture(args.fixture) if args.fixture else None
        self.cli_group: Optional[GroupTable] = load_group_source(args.group) if args.group else None
        if self.fixture is not None and self.cli_group is not None and self.cli_group != self.fixture.group:
            raise GroupMismatch(
                f"--group does not match the group of fixture {self.fixture.name}",
                witness={"fixture": self.fixture.group.names, "cli": self.cli_group.names},
            )
        self._action = None

    @property
    def action(self):
        if self._action is None:
            if self.fixture is not None:
                self._action = self.fixture.set_action or self.fixture.algebra_action()
            elif self.args.action is not None:
                self._action = load_action_source(self.args.action, self.cli_group)
            else:
                raise InputError("this command needs --action or --fixture", witness="--action")
        return self._action

    @property
    def group(self) -> GroupTable:
        if self.cli_group is not None:
            return self.cli_group
        if self.fixture is not None:
            return self.fixture.group
        if self.args.action is not None:
            return self.action.group
        raise InputError("this command needs --group (or an action/fixture carrying one)", witness="--group")

    def pipeline(self) -> Pipeline:
        name = self.fixture.name if self.fixture else (str(self.args.action) if self.args.action else None)
        return pipeline_from_action(self.action, name=name)

    def label(self) -> Optional[str]:
        if self.fixture is not None:
            return self.fixture.name
        if self.args.action is not None:
            return self.args.action.name
        return None


def group_label(G: GroupTable) -> str:
    return f"order {G.order}: {' '.join(G.names)}"


# ============================================================================
# Commands
# ============================================================================

def cmd_sg(args: argparse.Namespace, inputs: Inputs, report: Report) -> None:
    G = inputs.group
    report.group = group_label(G)
    S = group_semigroup(G)
    report.dimensions["|S(G)|"] = len(S)
    if args.command == "enumerate":
        rendered = [S.render(x) for x in S]
        report.tables["S(G)"] = {
            "elements": rendered,
            "columns": ["bracket", "eps", "idempotent"],
            "table": [[G.name(x.bracket), len(x.eps), x.bracket == 0] for x in S],
        }
        report.notes.append(f"{len(S)} elements: " + ", ".join(rendered))
        report.add(check_closure(S))
    elif args.command == "table":
        report.tables["S(G)"] = multiplication_table(G)
        report.add(check_closure(S))
    else:
        oracle_suite(report, S, args.max_word_len)
        table = report.tables["oracle"]
        stats = dict(zip(table["columns"], table["table"][0]))
        report.notes.append(
            f"agreement {stats['agreement']:g}% on {stats['checked']} of {stats['pairs']} pairs "
            f"(max_len {stats['max_len']}, stable up to {stats['stable_upto']})"
        )


def cmd_action(args: argparse.Namespace, inputs: Inputs, report: Report) -> None:
    action = inputs.action
    report.group = group_label(action.group)
    if args.command == "validate":
        if isinstance(action, SetPartialAction):
            report.dimensions["X"] = action.base_size
            results = set_action_suite(report, action)
            if not all(r.passed for r in results):
                return
        action_suite(report, inputs.pipeline(), level=args.level, seed=args.seed)
        return

    pipeline = inputs.pipeline()
    B = pipeline.sg_action
    report.dimensions["A"] = pipeline.alpha.algebra.dim
    report.dimensions["|S(G)|"] = len(B.semigroup)
    report.tables["E_s"] = sg_action_table(B)
    report.tables["beta"] = sg_action_beta_table(B)
    report.notes.extend(f"{row['element']}: dim E_s = {row['dim']}" for row in sg_action_rows(B))
    report.add(check_sg_action(B))


def cmd_cp(args: argparse.Namespace, inputs: Inputs, report: Report) -> None:
    pipeline = inputs.pipeline()
    report.group = group_label(pipeline.group)
    if args.command == "group":
        cp = pipeline.group_cp
        report.dimensions["A⋊G"] = cp.dim
        report.tables["A⋊G"] = cp.algebra.multiplication_table()
        report.add(check_associativity(cp.algebra))
        return
    scp = pipeline.sg_cp
    report.dimensions.update(scp.dimensions)
    report.tables["L"] = scp.L.algebra.multiplication_table()
    report.tables["L/N"] = scp.quotient.multiplication_table()
    report.add(scp.associativity, scp.certify_n())


def cmd_check(args: argparse.Namespace, inputs: Inputs, report: Report) -> None:
    if args.command == "assoc" and args.algebra is not None:
        source = load_algebra_source(args.algebra, inputs.cli_group)
        if isinstance(source, AlgebraPartialAction):
            report.group = group_label(source.group)
            assoc_suite(report, pipeline_from_action(source, name=args.algebra.name))
        else:
            assoc_suite(report, source)
        return

    pipeline = inputs.pipeline()
    report.group = group_label(pipeline.group)
    if args.command == "iso":
        iso_suite(report, pipeline)
        if report.passed:
            dims = report.dimensions
            report.notes.append(
                f"phi, psi mutually inverse *-isomorphisms; dims {dims['A⋊G']} = {dims['L']} - {dims['N']}"
            )
    elif args.command == "assoc":
        assoc_suite(report, pipeline)
    elif args.command == "covariant":
        covariant_suite(report, pipeline, level=args.level, seed=args.seed)
    else:
        full_suite(report, pipeline, level=args.level, seed=args.seed, max_word_len=args.max_word_len)


COMMANDS = {"sg": cmd_sg, "action": cmd_action, "cp": cmd_cp, "check": cmd_check}


def emit(report: Report, fmt: str, out: Optional[Path]) -> None:
    text = report.render(fmt)
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text, encoding="utf-8")
    logger.info(f"Report written to {out}")


def run(args: argparse.Namespace) -> Report:
    inputs = Inputs(args)
    report = Report(command=f"{args.verb} {args.command}", fixture=inputs.label())
    COMMANDS[args.verb](args, inputs, report)
    return report


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        report = run(args)
    except InputError as exc:
        logger.error(f"Bad input: {exc}", extra={"witness": str(exc.witness)})
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ExcrossError as exc:
        # construction aborted on a violated axiom: still a report, with the witness
        report = Report(command=f"{args.verb} {args.command}")
        report.add(CheckResult(name=type(exc).__name__, passed=False, witness=exc.witness, detail=str(exc)))
        emit(report, report_format(args), args.out)
        return exc.exit_code

    emit(report, report_format(args), args.out)
    if not report.passed:
        failed = [c.name for c in report.checks if not c.passed]
        logger.warning(f"{len(failed)} check(s) failed", extra={"failed": failed})
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
