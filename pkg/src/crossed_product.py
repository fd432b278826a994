"""
Algebraic Partial Crossed Products

    A ⋊ G :  (a δ_g)(b δ_h) = alpha_g(alpha_{g^-1}(a) b) δ_{gh},   a in D_g, b in D_h
    L     :  (a δ_r)(b δ_s) = beta_r(beta_{r*}(a) b) δ_{rs},       a in E_r, b in E_s
    N     :  ideal of L generated by a δ_r - a δ_t  (r <= t, a in E_r)
    A ⋊ S(G) = L / N

Both crossed products are graded algebras over a basis (i, k): the i-th RREF basis
vector of the ideal attached to the grade k. The isomorphism
    phi(a δ_g) = class of a δ_[g],     psi(class of a δ_s) = a δ_gamma(s)
is built as a pair of matrices and checked to be a mutually inverse *-isomorphism.

Author: excross Team
"""

from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from src.algebra import (
    StructureAlgebra,
    check_associativity,
    quotient_algebra,
    two_sided_ideal_closure,
)
from src.errors import NonAssociativeL, NotWellDefined, ProductEscapesIdeal, SourceMismatch
from src.semigroup import IDENTITY, SElem, s_generator
from src.linalg import (
    Subspace,
    arrays_equal,
    identity_matrix,
    is_zero,
    matmul,
    matvec,
    stack_rows,
    zero_matrix,
    zeros,
)
from src.partial_action import AlgebraPartialAction, SgAction
from src.reports import CheckResult, check
from utils.logging_config import get_logger

logger = get_logger("excross.crossed_product")


class GradedCrossedProduct:
    """
    Crossed product of A by maps act(k) : I_{k*} -> I_k over a set of grades k.

    `basis[n] = (i, k)` stands for b_i δ_k with b_i the i-th RREF basis vector of I_k.
    """

    def __init__(
        self,
        A: StructureAlgebra,
        grades: Sequence[Hashable],
        ideal: Callable[[Hashable], Subspace],
        act: Callable[[Hashable, np.ndarray], np.ndarray],
        grade_star: Callable[[Hashable], Hashable],
        grade_mul: Callable[[Hashable, Hashable], Hashable],
        grade_name: Callable[[Hashable], str],
        unit_grade: Hashable,
        name: str,
    ):
        self.coefficients = A
        self.grades = list(grades)
        self.ideal = ideal
        self.act = act
        self.grade_star = grade_star
        self.grade_mul = grade_mul
        self.grade_name = grade_name
        self.unit_grade = unit_grade

        self.basis: List[Tuple[int, Hashable]] = []
        self.offsets: Dict[Hashable, int] = {}
        for k in self.grades:
            self.offsets[k] = len(self.basis)
            self.basis.extend((i, k) for i in range(ideal(k).rank))
        self.dim = len(self.basis)

        labels = [self._label(i, k) for i, k in self.basis]
        products = self._products()
        involution = self._involution()
        unit = None
        if A.unit is not None and ideal(unit_grade) == Subspace.full(A.dim):
            unit = self.embed(unit_grade, A.unit)
        self.algebra = StructureAlgebra(labels, products, involution=involution, unit=unit, name=name)
        logger.info(f"Built {name}: dim {self.dim} over {len(self.grades)} grades")

    # --- coordinates -------------------------------------------------------

    def coefficient(self, n: int) -> np.ndarray:
        i, k = self.basis[n]
        return self.ideal(k).basis[i].copy()

    def embed(self, k: Hashable, a: np.ndarray) -> np.ndarray:
        """Coordinates of a δ_k; a must lie in I_k."""
        x = zeros(self.dim)
        coords = self.ideal(k).coordinates(a)
        x[self.offsets[k]: self.offsets[k] + len(coords)] = coords
        return x

    def components(self, x: np.ndarray) -> Dict[Hashable, np.ndarray]:
        """The coefficient a_k in A of every grade with a nonzero block."""
        out = {}
        for k in self.grades:
            I = self.ideal(k)
            start = self.offsets[k]
            block = x[start: start + I.rank]
            if not is_zero(block):
                out[k] = I.from_coordinates(block)
        return out

    def _label(self, i: int, k: Hashable) -> str:
        text = self.coefficients.render(self.ideal(k).basis[i])
        if " " in text:
            text = f"({text})"
        return f"{text}δ{self.grade_name(k)}"

    # --- structure ---------------------------------------------------------

    def _products(self) -> Dict[Tuple[int, int], np.ndarray]:
        A = self.coefficients
        # act(k*, a) for every basis element, computed once
        pulled = []
        for n, (i, k) in enumerate(self.basis):
            pulled.append(self.act(self.grade_star(k), self.coefficient(n)))

        products = {}
        for m, (i, k) in enumerate(self.basis):
            k_star = self.grade_star(k)
            source = self.ideal(k_star)
            for n, (j, l) in enumerate(self.basis):
                b = self.coefficient(n)
                middle = A.multiply(pulled[m], b)
                if is_zero(middle):
                    continue
                if not source.contains(middle):
                    raise ProductEscapesIdeal(
                        f"{self._label(i, k)} · {self._label(j, l)}: act(k*, a)·b leaves I_k*",
                        witness=(self._label(i, k), self._label(j, l)),
                    )
                value = self.act(k, middle)
                target = self.grade_mul(k, l)
                if not self.ideal(target).contains(value):
                    raise ProductEscapesIdeal(
                        f"{self._label(i, k)} · {self._label(j, l)}: product leaves I_{self.grade_name(target)}",
                        witness=(self._label(i, k), self._label(j, l)),
                    )
                products[(m, n)] = self.embed(target, value)
        return products

    def _involution(self) -> Optional[np.ndarray]:
        """(a δ_k)* = act(k*, a*) δ_{k*}, when A has an involution preserving every I_k."""
        A = self.coefficients
        if not A.has_involution:
            return None
        J = zero_matrix(self.dim, self.dim)
        for n, (i, k) in enumerate(self.basis):
            a_star = A.star(self.coefficient(n))
            if not self.ideal(k).contains(a_star):
                logger.warning(f"I_{self.grade_name(k)} is not *-closed; no involution on the crossed product")
                return None
            k_star = self.grade_star(k)
            J[:, n] = self.embed(k_star, self.act(k_star, a_star))
        return J

    # --- norms -------------------------------------------------------------

    def one_norm(self, x: np.ndarray):
        """Sum over the support of the sup norm of each coefficient."""
        return sum((max(abs(c) for c in a) for a in self.components(x).values()), 0)


# ============================================================================
# Group crossed product
# ============================================================================

class GroupCrossedProduct(GradedCrossedProduct):
    def __init__(self, alpha: AlgebraPartialAction):
        G = alpha.group
        self.action = alpha
        super().__init__(
            alpha.algebra,
            list(G.elements),
            alpha.ideal,
            alpha.apply,
            G.inverse,
            G.multiply,
            lambda g: f"_{G.name(g)}",
            IDENTITY,
            name="A⋊G",
        )


def build_group_cp(alpha: AlgebraPartialAction) -> GroupCrossedProduct:
    return GroupCrossedProduct(alpha)


# ============================================================================
# Semigroup crossed product and N
# ============================================================================

class SgCrossedProduct:
    """L, the ideal N, and the quotient L/N."""

    def __init__(self, B: SgAction, check_assoc: bool = True):
        S = B.semigroup
        G = B.group
        self.action = B
        self.L = GradedCrossedProduct(
            B.algebra,
            list(S),
            lambda s: B.E[s],
            B.apply,
            S.star,
            S.multiply,
            lambda s: f"_{S.render(s)}",
            s_generator(G, IDENTITY),
            name="L",
        )
        if check_assoc:
            result = check_associativity(self.L.algebra)
            self.associativity = result
            if not result.passed:
                raise NonAssociativeL(
                    f"multiplication of L is not associative: {result.detail}", witness=result.witness
                )
        self.generators = self.n_generators()
        self.N = two_sided_ideal_closure(self.L.algebra, self.generators)
        self.quotient, self.projection = quotient_algebra(self.L.algebra, self.N, name="L/N")
        logger.info(f"L/N: dim L = {self.L.dim}, dim N = {self.N.rank}, dim L/N = {self.quotient.dim}")

    @property
    def dimensions(self) -> Dict[str, int]:
        return {"L": self.L.dim, "N": self.N.rank, "L/N": self.quotient.dim}

    def n_generators(self) -> List[np.ndarray]:
        """a δ_r - a δ_t for every r <= t, r != t, a over the basis of E_r."""
        S = self.action.semigroup
        gens = []
        for r, t in S.comparable_pairs():
            for a in self.action.E[r].vectors():
                gens.append(self.L.embed(r, a) - self.L.embed(t, a))
        return gens

    def certify_n(self) -> CheckResult:
        """A second closure from the reversed generator order gives the same ideal."""
        again = two_sided_ideal_closure(self.L.algebra, list(reversed(self.generators)))
        failures = [] if again == self.N else [{"first": self.N.rank, "second": again.rank}]
        return check(f"dim N = {self.N.rank} certified by a second closure", failures, 1, "runs")

    def project(self, x: np.ndarray) -> np.ndarray:
        return self.quotient.project(x)

    def element(self, s: SElem, a: np.ndarray) -> np.ndarray:
        """Class of a δ_s in L/N."""
        return self.project(self.L.embed(s, a))


def build_sg_cp(B: SgAction, check_assoc: bool = True) -> SgCrossedProduct:
    return SgCrossedProduct(B, check_assoc=check_assoc)


def check_n_star_closed(scp: SgCrossedProduct) -> CheckResult:
    L = scp.L.algebra
    if not L.has_involution:
        return CheckResult(name="N is *-closed", passed=False, detail="L has no involution")
    failures = [L.render(v) for v in scp.N.vectors() if not scp.N.contains(L.star(v))]
    return check("N is *-closed", failures, scp.N.rank, "basis vectors")


# ============================================================================
# Identities in L/N
# ============================================================================

def check_quotient_identities(scp: SgCrossedProduct) -> List[CheckResult]:
    """
    (1) class(a δ_[g][h]) = class(a δ_[gh])          for a in E_[g][h]
    (2) class(a δ_{e_r1...e_rn[g]}) = class(a δ_[g])  for a in E_{e_r1...e_rn[g]}
    """
    B = scp.action
    G, S = B.group, B.semigroup
    first, second = [], []
    total_first = total_second = 0
    for g in G.elements:
        for h in G.elements:
            s = S.multiply(s_generator(G, g), s_generator(G, h))
            gh = s_generator(G, G.multiply(g, h))
            for a in B.E[s].vectors():
                total_first += 1
                if not arrays_equal(scp.element(s, a), scp.element(gh, a)):
                    first.append({"g": G.name(g), "h": G.name(h), "a": B.algebra.render(a)})
    for s in S:
        bracket = s_generator(G, s.bracket)
        for a in B.E[s].vectors():
            total_second += 1
            if not arrays_equal(scp.element(s, a), scp.element(bracket, a)):
                second.append({"s": S.render(s), "a": B.algebra.render(a)})
    return [
        check("class(a δ_[g][h]) = class(a δ_[gh])", first, total_first, "cases"),
        check("class(a δ_{e..[g]}) = class(a δ_[g])", second, total_second, "cases"),
    ]


# ============================================================================
# The isomorphism A ⋊ G  ≅  L / N
# ============================================================================

def _check_sources(cp: GroupCrossedProduct, scp: SgCrossedProduct) -> None:
    alpha, B = cp.action, scp.action
    if alpha.group != B.group or alpha.algebra is not B.algebra:
        raise SourceMismatch("crossed products are built over different groups or algebras", witness=None)
    for g in alpha.group.elements:
        gen = s_generator(B.group, g)
        if B.E[gen] != alpha.ideal(g) or B.beta[gen] != alpha.alpha[g]:
            raise SourceMismatch(
                f"S(G)-action does not restrict to the partial action at {alpha.group.name(g)}",
                witness=alpha.group.name(g),
            )


def iso_phi(cp: GroupCrossedProduct, scp: SgCrossedProduct) -> np.ndarray:
    """Matrix (dim L/N x dim A⋊G) of phi(a δ_g) = class(a δ_[g])."""
    _check_sources(cp, scp)
    G = cp.action.group
    columns = [scp.element(s_generator(G, k), cp.coefficient(n)) for n, (i, k) in enumerate(cp.basis)]
    return stack_rows(columns, scp.quotient.dim).T.copy() if columns else zero_matrix(scp.quotient.dim, 0)


def psi_on_l(cp: GroupCrossedProduct, scp: SgCrossedProduct) -> np.ndarray:
    """Matrix (dim A⋊G x dim L) of a δ_s -> a δ_gamma(s)."""
    _check_sources(cp, scp)
    columns = [cp.embed(k.bracket, scp.L.coefficient(n)) for n, (i, k) in enumerate(scp.L.basis)]
    return stack_rows(columns, cp.dim).T.copy() if columns else zero_matrix(cp.dim, 0)


def iso_psi(scp: SgCrossedProduct, cp: GroupCrossedProduct) -> np.ndarray:
    """
    Matrix (dim A⋊G x dim L/N) of psi(class a δ_s) = a δ_gamma(s), evaluated on coset
    representatives; raises NotWellDefined unless psi vanishes on N.
    """
    psi = psi_on_l(cp, scp)
    for v in scp.N.vectors():
        image = matvec(psi, v)
        if not is_zero(image):
            raise NotWellDefined(
                "psi does not vanish on N", witness=scp.L.algebra.render(v)
            )
    lift = zero_matrix(scp.L.dim, scp.quotient.dim)
    for a, j in enumerate(scp.quotient.complement):
        lift[j, a] = 1
    return matmul(psi, lift)


def _mult_failures(X: StructureAlgebra, Y: StructureAlgebra, M: np.ndarray) -> List[Tuple[str, str]]:
    """Basis pairs where M(b_i b_j) != M(b_i) M(b_j)."""
    images = [M[:, i] for i in range(X.dim)]
    failures = []
    for i in range(X.dim):
        for j in range(X.dim):
            if not arrays_equal(matvec(M, X.product(i, j)), Y.multiply(images[i], images[j])):
                failures.append((X.labels[i], X.labels[j]))
    return failures


def _star_failures(X: StructureAlgebra, Y: StructureAlgebra, M: np.ndarray) -> List[str]:
    return [
        X.labels[i] for i in range(X.dim)
        if not arrays_equal(matvec(M, X.star(X.basis_vector(i))), Y.star(M[:, i]))
    ]


def check_isomorphism(cp: GroupCrossedProduct, scp: SgCrossedProduct) -> List[CheckResult]:
    """phi and psi are mutually inverse multiplicative *-maps; dim A⋊G = dim L - dim N."""
    phi = iso_phi(cp, scp)
    results = []
    try:
        psi = iso_psi(scp, cp)
        results.append(CheckResult(name="psi vanishes on N", passed=True, detail=f"{scp.N.rank} basis vectors"))
    except NotWellDefined as exc:
        return [CheckResult(name="psi vanishes on N", passed=False, witness=exc.witness, detail=str(exc))]

    A_G, Q = cp.algebra, scp.quotient
    dims_ok = A_G.dim == scp.L.dim - scp.N.rank == Q.dim
    results.append(CheckResult(
        name=f"dim A⋊G = dim L - dim N ({A_G.dim} = {scp.L.dim} - {scp.N.rank})",
        passed=dims_ok,
        witness=None if dims_ok else {"A⋊G": A_G.dim, "L": scp.L.dim, "N": scp.N.rank},
    ))
    results.append(scp.certify_n())

    inverse_ok = dims_ok and arrays_equal(matmul(phi, psi), identity_matrix(Q.dim)) and arrays_equal(
        matmul(psi, phi), identity_matrix(A_G.dim)
    )
    results.append(CheckResult(
        name="phi∘psi = id and psi∘phi = id",
        passed=inverse_ok,
        witness=None if inverse_ok else {"phi": list(phi.shape), "psi": list(psi.shape)},
    ))
    results.append(check("phi is multiplicative", _mult_failures(A_G, Q, phi), A_G.dim ** 2, "basis pairs"))
    results.append(check("psi is multiplicative", _mult_failures(Q, A_G, psi), Q.dim ** 2, "basis pairs"))
    psi_l = psi_on_l(cp, scp)
    results.append(check(
        "psi is multiplicative on L", _mult_failures(scp.L.algebra, A_G, psi_l), scp.L.dim ** 2, "basis pairs"
    ))
    if A_G.has_involution and Q.has_involution:
        results.append(check("phi preserves *", _star_failures(A_G, Q, phi), A_G.dim, "basis vectors"))
        results.append(check("psi preserves *", _star_failures(Q, A_G, psi), Q.dim, "basis vectors"))
    return results


def check_star_algebra(X: StructureAlgebra) -> CheckResult:
    """(xy)* = y*x* and x** = x on the basis."""
    if not X.has_involution:
        return CheckResult(name=f"{X.name} is a *-algebra", passed=False, detail="no involution")
    results = X.check_structure()
    star = results[0]
    return CheckResult(name=f"{X.name} is a *-algebra", passed=star.passed, witness=star.witness, detail=star.detail)


def random_element(X: GradedCrossedProduct, rng: np.random.Generator, low: int = -3, high: int = 3) -> np.ndarray:
    """A seeded random integer combination of basis elements."""
    x = zeros(X.dim)
    values = rng.integers(low, high + 1, size=X.dim)
    for n, value in enumerate(values):
        x[n] = x[n] + int(value)
    return x
