"""
Covariant Representations on Finite-Dimensional Spaces

A covariant representation of an S(G)-action on H = Q^m is a pair (pi, nu):
pi a representation of A, nu_s partial isometries with

    nu_s nu_t = nu_{st}
    nu_s pi(a) nu_{s*} = pi(beta_s(a))                  for a in E_{s*}
    initial space of nu_s = pi(E_{s*})H,  final space = pi(E_s)H

and (pi x nu)(sum a_s δ_s) = sum pi(a_s) nu_s is a representation of L vanishing on N.
Adjoints are transposes (all matrices are rational).

Key Features:
- Natural representation of a set-level action on Q^X (diagonal pi, partial permutations nu)
- Exhaustive covariance checks and the N-vanishing of pi x nu
- Recovery of (pi, nu) from a representation of L that kills N
- Power-iteration operator norm and the contractivity spot-check

Author: excross Team
"""

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config import settings
from src.algebra import ideal_unit
from src.crossed_product import GradedCrossedProduct, SgCrossedProduct, random_element
from src.errors import NotSquare, NotWellDefined, SourceMismatch
from src.semigroup import SElem, s_generator
from src.linalg import (
    Subspace,
    arrays_equal,
    identity_matrix,
    is_zero,
    matmul,
    matrix,
    to_float,
    transpose,
    unit_vector,
    zero_matrix,
)
from src.partial_action import SetPartialAction, SgAction, to_set_sg_action
from src.reports import CheckResult, check
from utils.logging_config import get_logger

logger = get_logger("excross.covariant")


@dataclass
class CovariantRep:
    """pi[i] = pi(b_i) for the basis of A; nu[s] for every s in S(G)."""

    space_dim: int
    pi: List[np.ndarray]
    nu: Dict[SElem, np.ndarray]
    action: SgAction

    def pi_of(self, a: np.ndarray) -> np.ndarray:
        out = zero_matrix(self.space_dim, self.space_dim)
        for i, c in enumerate(a):
            if c != 0:
                out = out + c * self.pi[i]
        return out


def natural_covariant_rep(P: SetPartialAction, B: SgAction) -> CovariantRep:
    """
    H = Q^X, pi(a) = diag(a), nu_s the partial permutation matrix of theta_s.

    B must be the S(G)-action induced from P on the function algebra of X.
    """
    m = P.base_size
    G = P.group
    if B.group != G or B.algebra.dim != m:
        raise SourceMismatch(
            f"S(G)-action over an algebra of dim {B.algebra.dim} is not induced from an action on {m} points",
            witness={"dim A": B.algebra.dim, "|X|": m},
        )
    for g in G.elements:
        expected = Subspace.span((unit_vector(m, x) for x in sorted(P.domain(g))), m)
        if B.E[s_generator(G, g)] != expected:
            raise SourceMismatch(f"E_[{G.name(g)}] is not spanned by X_{G.name(g)}", witness=G.name(g))

    set_sg = to_set_sg_action(P)
    pi = []
    for i in range(m):
        D = zero_matrix(m, m)
        D[i, i] = 1
        pi.append(D)
    nu = {s: matrix(theta.matrix().tolist()) for s, theta in set_sg.theta.items()}
    logger.info(f"Natural covariant representation on Q^{m}: {len(nu)} partial isometries")
    return CovariantRep(m, pi, nu, B)


def pi_times_nu(rep: CovariantRep, L: GradedCrossedProduct, x: np.ndarray) -> np.ndarray:
    """sum over the support of x of pi(a_s) nu_s."""
    out = zero_matrix(rep.space_dim, rep.space_dim)
    for s, a in L.components(x).items():
        out = out + matmul(rep.pi_of(a), rep.nu[s])
    return out


def is_partial_isometry(U: np.ndarray) -> bool:
    """U = U U^T U, cross-checked against U^T U being an orthogonal projection."""
    U = np.asarray(U, dtype=object)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {U.shape}", witness=list(U.shape))
    Ut = transpose(U)
    direct = arrays_equal(matmul(matmul(U, Ut), U), U)
    P = matmul(Ut, U)
    projection = arrays_equal(matmul(P, P), P) and arrays_equal(transpose(P), P)
    if direct != projection:
        logger.warning("U = UU*U and U*U projection tests disagree", extra={"direct": direct})
    return direct and projection


def column_space(M: np.ndarray) -> Subspace:
    return Subspace.span((M[:, j] for j in range(M.shape[1])), M.shape[0])


def _represented_space(rep: CovariantRep, E: Subspace) -> Subspace:
    """pi(E)H, the span of the ranges of pi(a) over a basis of E."""
    vectors = []
    for a in E.vectors():
        M = rep.pi_of(a)
        vectors.extend(M[:, j] for j in range(rep.space_dim))
    return Subspace.span(vectors, rep.space_dim)


def check_covariant_rep(rep: CovariantRep, scp: SgCrossedProduct) -> List[CheckResult]:
    B = rep.action
    S = B.semigroup
    A = B.algebra
    n = rep.space_dim
    identity = identity_matrix(n)

    pi_failures = []
    for i in range(A.dim):
        for j in range(A.dim):
            if not arrays_equal(rep.pi_of(A.product(i, j)), matmul(rep.pi[i], rep.pi[j])):
                pi_failures.append((A.labels[i], A.labels[j]))
    unit_ok = A.unit is None or arrays_equal(rep.pi_of(A.unit), identity)

    isometry_failures = [S.render(s) for s in S if not is_partial_isometry(rep.nu[s])]
    adjoint_failures = [S.render(s) for s in S if not arrays_equal(rep.nu[S.star(s)], transpose(rep.nu[s]))]

    mult_failures = []
    for r in S:
        for s in S:
            if not arrays_equal(matmul(rep.nu[r], rep.nu[s]), rep.nu[S.multiply(r, s)]):
                mult_failures.append((S.render(r), S.render(s)))

    covariance_failures, space_failures = [], []
    total_covariance = 0
    for s in S:
        s_star = S.star(s)
        nu_s, nu_star = rep.nu[s], rep.nu[s_star]
        for a in B.E[s_star].vectors():
            total_covariance += 1
            lhs = matmul(matmul(nu_s, rep.pi_of(a)), nu_star)
            if not arrays_equal(lhs, rep.pi_of(B.apply(s, a))):
                covariance_failures.append({"s": S.render(s), "a": A.render(a)})
        initial = column_space(matmul(transpose(nu_s), nu_s))
        final = column_space(matmul(nu_s, transpose(nu_s)))
        if initial != _represented_space(rep, B.E[s_star]) or final != _represented_space(rep, B.E[s]):
            space_failures.append(S.render(s))

    L = scp.L
    images = [pi_times_nu(rep, L, L.algebra.basis_vector(k)) for k in range(L.dim)]
    l_failures = []
    for i in range(L.dim):
        for j in range(L.dim):
            lhs = pi_times_nu(rep, L, L.algebra.product(i, j))
            if not arrays_equal(lhs, matmul(images[i], images[j])):
                l_failures.append((L.algebra.labels[i], L.algebra.labels[j]))
    n_failures = [L.algebra.render(v) for v in scp.N.vectors() if not is_zero(pi_times_nu(rep, L, v))]

    results = [
        check("pi is multiplicative", pi_failures, A.dim ** 2, "basis pairs"),
        CheckResult(name="pi is unital", passed=unit_ok, detail="" if A.unit is not None else "A has no unit"),
        check("nu_s = nu_s nu_s* nu_s", isometry_failures, len(S), "elements"),
        check("nu_{s*} = nu_s*", adjoint_failures, len(S), "elements"),
        check("nu_s nu_t = nu_{st}", mult_failures, len(S) ** 2, "pairs"),
        check("nu_s pi(a) nu_{s*} = pi(beta_s(a))", covariance_failures, total_covariance, "pairs (s, a)"),
        check("initial space pi(E_{s*})H, final space pi(E_s)H", space_failures, len(S), "elements"),
        check("pi x nu is multiplicative on L", l_failures, L.dim ** 2, "basis pairs"),
        check("pi x nu vanishes on N", n_failures, scp.N.rank, "basis vectors"),
    ]
    passed = sum(r.passed for r in results)
    logger.info(f"Covariance checks: {passed}/{len(results)} passed")
    return results


# ============================================================================
# Reverse direction: representations of L that kill N
# ============================================================================

def representation_of(images: Sequence[np.ndarray]) -> Callable[[np.ndarray], np.ndarray]:
    """The linear map x -> sum x_k images[k]."""
    size = images[0].shape[0] if images else 0

    def rho(x: np.ndarray) -> np.ndarray:
        out = zero_matrix(size, size)
        for k, c in enumerate(x):
            if c != 0:
                out = out + c * images[k]
        return out

    return rho


def recover_covariant_rep(
    images: Sequence[np.ndarray], scp: SgCrossedProduct
) -> Tuple[CovariantRep, List[CheckResult]]:
    """
    From rho(b_k) = images[k] on the basis of L, build pi(a) = rho(a δ_[e]) and
    nu_s = rho(u_s δ_s) with u_s the unit of E_s, then compare rho with pi x nu.

    Raises NotWellDefined when rho is not multiplicative, does not vanish on N, or
    some E_s has no unit.
    """
    L = scp.L
    B = scp.action
    A = B.algebra
    if len(images) != L.dim:
        raise SourceMismatch(f"{len(images)} images for a basis of L of size {L.dim}", witness=len(images))
    rho = representation_of(images)

    for i in range(L.dim):
        for j in range(L.dim):
            if not arrays_equal(rho(L.algebra.product(i, j)), matmul(images[i], images[j])):
                raise NotWellDefined(
                    "rho is not multiplicative on L",
                    witness=(L.algebra.labels[i], L.algebra.labels[j]),
                )
    for v in scp.N.vectors():
        if not is_zero(rho(v)):
            raise NotWellDefined("rho does not vanish on N", witness=L.algebra.render(v))

    unit_grade = s_generator(B.group, 0)
    space_dim = images[0].shape[0]
    pi = [rho(L.embed(unit_grade, A.basis_vector(i))) for i in range(A.dim)]
    nu = {}
    for s in B.semigroup:
        u = ideal_unit(A, B.E[s])
        if u is None:
            raise NotWellDefined(f"E_{B.semigroup.render(s)} has no unit", witness=B.semigroup.render(s))
        nu[s] = rho(L.embed(s, u))
    rep = CovariantRep(space_dim, pi, nu, B)

    failures = [
        L.algebra.labels[k] for k in range(L.dim)
        if not arrays_equal(pi_times_nu(rep, L, L.algebra.basis_vector(k)), images[k])
    ]
    results = [check("rho = pi x nu on the basis of L", failures, L.dim, "basis vectors")]
    return rep, results


# ============================================================================
# Norms and contractivity
# ============================================================================

def operator_norm(M: np.ndarray, iterations: Optional[int] = None, seed: int = 0) -> float:
    """Largest singular value of M by power iteration on M^T M."""
    iterations = iterations or settings.POWER_ITERATIONS
    F = to_float(M) if M.dtype == object else np.asarray(M, dtype=float)
    if F.size == 0 or not np.any(F):
        return 0.0
    gram = F.T @ F
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(F.shape[1])
    v /= np.linalg.norm(v)
    for _ in range(iterations):
        w = gram @ v
        length = np.linalg.norm(w)
        if length == 0:
            return 0.0
        v = w / length
    return float(np.linalg.norm(F @ v))


def contractivity_spot_check(
    rep: CovariantRep,
    scp: SgCrossedProduct,
    samples: Optional[int] = None,
    seed: int = 0,
    tolerance: Optional[float] = None,
) -> CheckResult:
    """||(pi x nu)(x)||_2 <= ||x||_1 + tolerance for seeded random x in L."""
    samples = samples or settings.CONTRACTIVITY_SAMPLES
    tolerance = settings.CONTRACTIVITY_TOLERANCE if tolerance is None else tolerance
    rng = np.random.default_rng(seed)
    failures = []
    worst = 0.0
    for k in range(samples):
        x = random_element(scp.L, rng)
        lhs = operator_norm(pi_times_nu(rep, scp.L, x), seed=seed + k)
        rhs = float(scp.L.one_norm(x))
        if rhs > 0:
            worst = max(worst, lhs / rhs)
        if lhs > rhs + tolerance:
            failures.append({"sample": k, "operator_norm": lhs, "one_norm": rhs})
    result = check(f"||(pi x nu)(x)|| <= ||x||_1 ({samples} samples, seed {seed})", failures, samples, "samples")
    result.detail += f"; max ratio {worst:.6f}"
    return result
