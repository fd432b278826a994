"""
Verification Suites

Groups the individual checks into the suites behind the CLI verbs and the
acceptance script. Each suite appends CheckResults (and dimensions) to a Report.

Key Features:
- Pipeline: one partial action with its S(G)-action and crossed products built lazily
- quick / exhaustive levels: quick samples the largest sweeps, exhaustive runs all of them
- Seeded randomized checks for reproducible reports

Author: excross Team
"""

from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Union

from config import settings
from src.algebra import StructureAlgebra, check_associativity, ideals_idempotent_check
from src.covariant import (
    check_covariant_rep,
    contractivity_spot_check,
    natural_covariant_rep,
    pi_times_nu,
    recover_covariant_rep,
)
from src.crossed_product import (
    GroupCrossedProduct,
    SgCrossedProduct,
    build_group_cp,
    build_sg_cp,
    check_isomorphism,
    check_quotient_identities,
    check_n_star_closed,
    check_star_algebra,
)
from src.errors import ExcrossError, InvalidAction
from src.semigroup import (
    GroupSemigroup,
    check_associativity as check_s_associativity,
    check_closure,
    check_epsilon_commutation,
    check_gamma_homomorphism,
    check_idempotents_commute,
    check_inverse_uniqueness,
    check_leq_characterization,
    check_order_compatibility,
    check_star_involution,
    check_word_evaluation,
    group_semigroup,
    semigroup_size,
)
from src.fixtures import Fixture
from src.groups import GroupTable
from src.partial_action import (
    AlgebraPartialAction,
    SetPartialAction,
    SgAction,
    check_bijection,
    check_bracket_intersections,
    check_e_monotone,
    check_set_sg_action,
    check_set_universal,
    check_sg_action,
    check_star_compatibility,
    check_word_form,
    induce_algebra_action,
    to_sg_action,
    validate_algebra_action,
    validate_set_action,
)
from src.reports import CheckResult, Report
from src.word_oracle import check_epsilon_orientation, oracle_agreement
from utils.logging_config import get_logger

logger = get_logger("excross.verification")

# groups up to this order get the exhaustive sweeps even at the quick level
SMALL_ORDER = 3
ORACLE_ORDER = 4


def _exhaustive(level: Optional[str]) -> bool:
    return (level or settings.VERIFY_LEVEL) == "exhaustive"


# ============================================================================
# Pipeline
# ============================================================================

@dataclass
class Pipeline:
    """A partial action and everything built from it, constructed on first use."""

    group: GroupTable
    alpha: AlgebraPartialAction
    set_action: Optional[SetPartialAction] = None
    name: Optional[str] = None

    @cached_property
    def semigroup(self) -> GroupSemigroup:
        return group_semigroup(self.group)

    @cached_property
    def sg_action(self) -> SgAction:
        return to_sg_action(self.alpha)

    @cached_property
    def group_cp(self) -> GroupCrossedProduct:
        return build_group_cp(self.alpha)

    @cached_property
    def sg_cp(self) -> SgCrossedProduct:
        return build_sg_cp(self.sg_action)

    @property
    def dimensions(self) -> dict:
        return {
            "A": self.alpha.algebra.dim,
            "A⋊G": self.group_cp.dim,
            **self.sg_cp.dimensions,
        }


def pipeline_from_action(
    action: Union[SetPartialAction, AlgebraPartialAction], name: Optional[str] = None
) -> Pipeline:
    """Raises InvalidAction when a set-level action fails its axioms."""
    if isinstance(action, SetPartialAction):
        return Pipeline(action.group, induce_algebra_action(action), set_action=action, name=name)
    return Pipeline(action.group, action, set_action=action.set_action, name=name)


def pipeline_from_fixture(fixture: Fixture) -> Pipeline:
    if fixture.set_action is not None:
        return pipeline_from_action(fixture.set_action, name=fixture.name)
    return pipeline_from_action(fixture.algebra_action(), name=fixture.name)


# ============================================================================
# S(G)
# ============================================================================

def sg_suite(
    report: Report,
    G: GroupTable,
    level: Optional[str] = None,
    seed: int = 0,
    max_word_len: Optional[int] = None,
    oracle: Optional[bool] = None,
) -> Report:
    S = group_semigroup(G)
    exhaustive = _exhaustive(level)
    full = exhaustive or G.order <= SMALL_ORDER
    samples = None if full else settings.RANDOM_TRIPLES

    report.dimensions["|G|"] = G.order
    report.dimensions["|S(G)|"] = len(S)
    report.add(
        CheckResult(
            name=f"|S(G)| = 2^(n-1) + (n-1)2^(n-2) = {semigroup_size(G.order)}",
            passed=len(S) == semigroup_size(G.order),
            witness=None if len(S) == semigroup_size(G.order) else len(S),
        ),
        check_closure(S),
        check_s_associativity(S, samples=samples, seed=seed),
        check_inverse_uniqueness(S),
        check_star_involution(S),
        check_order_compatibility(S, samples=samples, seed=seed),
        check_leq_characterization(S),
        check_idempotents_commute(S),
        check_gamma_homomorphism(S),
        check_epsilon_commutation(S),
        check_word_evaluation(S),
    )
    if oracle is None:
        oracle = exhaustive or G.order <= ORACLE_ORDER
    if oracle:
        oracle_suite(report, S, max_word_len)
    return report


def oracle_suite(report: Report, S: GroupSemigroup, max_word_len: Optional[int] = None) -> Report:
    results, stats = oracle_agreement(S, max_word_len)
    report.add(results)
    report.add(check_epsilon_orientation(S.group))
    report.tables["oracle"] = {
        "columns": sorted(stats),
        "elements": ["stats"],
        "table": [[stats[k] for k in sorted(stats)]],
    }
    return report


# ============================================================================
# Partial actions
# ============================================================================

def set_action_suite(report: Report, P: SetPartialAction) -> List[CheckResult]:
    results = validate_set_action(P)
    report.add(results)
    if all(r.passed for r in results):
        report.add(check_set_universal(P), check_set_sg_action(P))
    return results


def action_suite(report: Report, pipeline: Pipeline, level: Optional[str] = None, seed: int = 0) -> Report:
    alpha = pipeline.alpha
    samples = 1000 if _exhaustive(level) else 200
    report.dimensions["A"] = alpha.algebra.dim
    report.add(validate_algebra_action(alpha))
    B = pipeline.sg_action
    report.add(
        check_sg_action(B),
        check_e_monotone(B),
        check_bracket_intersections(B),
        check_word_form(B, seed=seed, samples=samples),
        check_bijection(alpha),
    )
    if alpha.algebra.has_involution:
        report.add(check_star_compatibility(B))
    return report


# ============================================================================
# Crossed products
# ============================================================================

def assoc_suite(report: Report, source: Union[StructureAlgebra, Pipeline]) -> Report:
    """Associativity of an algebra, or of A, A⋊G and L for an action."""
    if isinstance(source, StructureAlgebra):
        report.dimensions[source.name] = source.dim
        report.add(check_associativity(source))
        return report

    alpha = source.alpha
    report.add(check_associativity(alpha.algebra))
    report.add(ideals_idempotent_check(alpha))
    try:
        cp = source.group_cp
        report.dimensions["A⋊G"] = cp.dim
        report.add(check_associativity(cp.algebra))
    except ExcrossError as exc:
        report.add(CheckResult(name="A⋊G is well defined", passed=False, witness=exc.witness, detail=str(exc)))
    try:
        scp = build_sg_cp(source.sg_action, check_assoc=False)
    except ExcrossError as exc:
        report.add(CheckResult(name="L is well defined", passed=False, witness=exc.witness, detail=str(exc)))
        return report
    report.dimensions["L"] = scp.L.dim
    report.add(check_associativity(scp.L.algebra))
    return report


def iso_suite(report: Report, pipeline: Pipeline) -> Report:
    try:
        cp, scp = pipeline.group_cp, pipeline.sg_cp
    except ExcrossError as exc:
        report.add(CheckResult(
            name=f"crossed products build ({type(exc).__name__})",
            passed=False,
            witness=exc.witness,
            detail=str(exc),
        ))
        return report
    report.dimensions.update(pipeline.dimensions)
    report.add(check_associativity(cp.algebra), scp.associativity)
    if cp.algebra.has_involution:
        report.add(check_star_algebra(cp.algebra), check_star_algebra(scp.L.algebra), check_n_star_closed(scp))
    report.add(check_isomorphism(cp, scp))
    report.add(check_quotient_identities(scp))
    return report


def covariant_suite(
    report: Report,
    pipeline: Pipeline,
    level: Optional[str] = None,
    seed: int = 0,
    contractivity: bool = True,
) -> Report:
    if pipeline.set_action is None:
        raise InvalidAction(
            "the natural covariant representation needs a set-level action", witness=pipeline.name
        )
    scp = pipeline.sg_cp
    report.dimensions.update(pipeline.dimensions)
    rep = natural_covariant_rep(pipeline.set_action, pipeline.sg_action)
    report.dimensions["H"] = rep.space_dim
    report.add(check_covariant_rep(rep, scp))

    images = [pi_times_nu(rep, scp.L, scp.L.algebra.basis_vector(k)) for k in range(scp.L.dim)]
    _, recovered = recover_covariant_rep(images, scp)
    report.add(recovered)

    if contractivity:
        samples = settings.CONTRACTIVITY_SAMPLES * (10 if _exhaustive(level) else 1)
        report.add(contractivity_spot_check(rep, scp, samples=samples, seed=seed))
    return report


def full_suite(
    report: Report,
    pipeline: Pipeline,
    level: Optional[str] = None,
    seed: int = 0,
    max_word_len: Optional[int] = None,
) -> Report:
    """sg, action, iso, quotient-identity, covariant and contractivity suites in one report."""
    sg_suite(report, pipeline.group, level=level, seed=seed, max_word_len=max_word_len)
    if pipeline.set_action is not None:
        set_action_suite(report, pipeline.set_action)
    action_suite(report, pipeline, level=level, seed=seed)
    iso_suite(report, pipeline)
    if pipeline.set_action is not None and report.passed:
        covariant_suite(report, pipeline, level=level, seed=seed)
    logger.info(f"check all: {sum(c.passed for c in report.checks)}/{len(report.checks)} checks passed")
    return report
