"""
Structure-Constant Algebras

Finite-dimensional algebras over the rationals given by a labeled basis and the
coordinate vectors of all basis products b_i·b_j. Used for the coefficient
algebra A and for every crossed product built from it.

Key Features:
- Sparse exact multiplication; optional involution and unit
- Exhaustive associativity check with a witness triple
- Two-sided ideal closure (worklist fixpoint), ideal units, ideal squares
- Quotient by an ideal on the non-pivot coordinates, with its projection

Author: excross Team
"""

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.errors import DimensionMismatch, NotAnIdeal
from src.linalg import (
    ONE,
    EchelonBasis,
    Subspace,
    arrays_equal,
    format_fraction,
    identity_matrix,
    is_zero,
    matmul,
    matvec,
    rref,
    stack_rows,
    support,
    unit_vector,
    zero_matrix,
    zeros,
)
from src.reports import CheckResult, check
from utils.logging_config import get_logger

logger = get_logger("excross.algebra")

ProductTable = Dict[Tuple[int, int], np.ndarray]


class StructureAlgebra:
    """
    An algebra with basis b_0..b_{dim-1}; `products[(i, j)]` holds the coordinates of
    b_i·b_j (absent pairs multiply to zero).

    The involution is a dim x dim matrix J acting on coordinates, x* = J x.
    """

    def __init__(
        self,
        labels: Sequence[str],
        products: ProductTable,
        involution: Optional[np.ndarray] = None,
        unit: Optional[np.ndarray] = None,
        name: str = "A",
    ):
        self.labels = [str(label) for label in labels]
        self.dim = len(self.labels)
        self.name = name
        self.products: ProductTable = {}
        for (i, j), v in products.items():
            if len(v) != self.dim:
                raise DimensionMismatch(
                    f"product b{i}·b{j} has {len(v)} coordinates, expected {self.dim}", witness=(i, j)
                )
            if not is_zero(v):
                self.products[(int(i), int(j))] = np.asarray(v, dtype=object)
        if involution is not None and involution.shape != (self.dim, self.dim):
            raise DimensionMismatch(f"involution must be {self.dim}x{self.dim}", witness=involution.shape)
        self.involution = involution
        self.unit = unit
        self._left: Dict[int, List[Tuple[int, np.ndarray]]] = {}
        self._right: Dict[int, List[Tuple[int, np.ndarray]]] = {}
        for (i, j), v in self.products.items():
            self._left.setdefault(i, []).append((j, v))
            self._right.setdefault(j, []).append((i, v))

    def __repr__(self) -> str:
        return f"StructureAlgebra({self.name}, dim={self.dim})"

    @property
    def has_involution(self) -> bool:
        return self.involution is not None

    def basis_vector(self, i: int) -> np.ndarray:
        return unit_vector(self.dim, i)

    def product(self, i: int, j: int) -> np.ndarray:
        v = self.products.get((i, j))
        return zeros(self.dim) if v is None else v

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        out = zeros(self.dim)
        ys = support(y)
        if not ys:
            return out
        ys = set(ys)
        for i in support(x):
            for j, v in self._left.get(i, ()):
                if j in ys:
                    out = out + (x[i] * y[j]) * v
        return out

    def left_basis(self, k: int, v: np.ndarray) -> np.ndarray:
        """b_k · v"""
        out = zeros(self.dim)
        for j, w in self._left.get(k, ()):
            if v[j] != 0:
                out = out + v[j] * w
        return out

    def right_basis(self, v: np.ndarray, k: int) -> np.ndarray:
        """v · b_k"""
        out = zeros(self.dim)
        for i, w in self._right.get(k, ()):
            if v[i] != 0:
                out = out + v[i] * w
        return out

    def star(self, x: np.ndarray) -> np.ndarray:
        if self.involution is None:
            raise DimensionMismatch(f"{self.name} has no involution", witness=self.name)
        return matvec(self.involution, x)

    def render(self, v: np.ndarray) -> str:
        terms = []
        for i in support(v):
            c = v[i]
            if c == 1:
                terms.append(self.labels[i])
            elif c == -1:
                terms.append(f"-{self.labels[i]}")
            else:
                terms.append(f"{format_fraction(c)}*{self.labels[i]}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    def multiplication_table(self) -> Dict[str, list]:
        return {
            "elements": list(self.labels),
            "table": [[self.render(self.product(i, j)) for j in range(self.dim)] for i in range(self.dim)],
        }

    def check_structure(self) -> List[CheckResult]:
        """Involution laws (J² = 1, (b_i b_j)* = b_j* b_i*) and the unit law, when present."""
        results = []
        if self.involution is not None:
            failures = []
            if not arrays_equal(matmul(self.involution, self.involution), identity_matrix(self.dim)):
                failures.append("involution is not of order 2")
            stars = [self.star(self.basis_vector(i)) for i in range(self.dim)]
            for i in range(self.dim):
                for j in range(self.dim):
                    lhs = self.star(self.product(i, j))
                    rhs = self.multiply(stars[j], stars[i])
                    if not arrays_equal(lhs, rhs):
                        failures.append((self.labels[i], self.labels[j]))
            results.append(check(f"{self.name}: (xy)* = y*x*, x** = x", failures, self.dim ** 2, "basis pairs"))
        if self.unit is not None:
            failures = [
                self.labels[i]
                for i in range(self.dim)
                if not arrays_equal(self.multiply(self.unit, self.basis_vector(i)), self.basis_vector(i))
                or not arrays_equal(self.multiply(self.basis_vector(i), self.unit), self.basis_vector(i))
            ]
            results.append(check(f"{self.name}: unit law", failures, self.dim, "basis vectors"))
        return results


def function_algebra(size: int, labels: Optional[Sequence[str]] = None, name: str = "A") -> StructureAlgebra:
    """Rational functions on {0..size-1} with pointwise product; basis of point indicators."""
    labels = labels or [f"e{x}" for x in range(size)]
    products = {(x, x): unit_vector(size, x) for x in range(size)}
    unit = np.full(size, ONE, dtype=object)
    return StructureAlgebra(labels, products, involution=identity_matrix(size), unit=unit, name=name)


# ============================================================================
# Associativity
# ============================================================================

SparseVector = Dict[int, Fraction]


def _sparse_table(A: StructureAlgebra) -> Dict[Tuple[int, int], SparseVector]:
    return {key: {m: c for m, c in enumerate(v) if c != 0} for key, v in A.products.items()}


def _dense(A: StructureAlgebra, coefficients: SparseVector) -> np.ndarray:
    out = zeros(A.dim)
    for m, c in coefficients.items():
        out[m] = c
    return out


def check_associativity(A: StructureAlgebra) -> CheckResult:
    """
    (b_i b_j) b_k = b_i (b_j b_k) for all basis triples; the first violation in
    lexicographic order is the witness.

    Both sides vanish unless b_i b_j or b_j b_k is nonzero, so only those triples are
    evaluated, on sparse coordinates.
    """
    table = _sparse_table(A)

    def times_right(coefficients: SparseVector, k: int) -> SparseVector:
        out: SparseVector = {}
        for m, c in coefficients.items():
            for n, d in table.get((m, k), {}).items():
                out[n] = out.get(n, 0) + c * d
        return {n: c for n, c in out.items() if c != 0}

    def times_left(i: int, coefficients: SparseVector) -> SparseVector:
        out: SparseVector = {}
        for m, c in coefficients.items():
            for n, d in table.get((i, m), {}).items():
                out[n] = out.get(n, 0) + c * d
        return {n: c for n, c in out.items() if c != 0}

    basis = range(A.dim)
    triples = {(i, j, k) for (i, j) in table for k in basis}
    triples |= {(i, j, k) for (j, k) in table for i in basis}

    failures = []
    for i, j, k in sorted(triples):
        lhs = times_right(table.get((i, j), {}), k)
        rhs = times_left(i, table.get((j, k), {}))
        if lhs != rhs:
            failures.append({
                "triple": [A.labels[i], A.labels[j], A.labels[k]],
                "(xy)z": A.render(_dense(A, lhs)),
                "x(yz)": A.render(_dense(A, rhs)),
            })
    logger.debug(f"Associativity of {A.name}: {len(triples)} of {A.dim ** 3} triples evaluated")
    return check(f"{A.name}: associativity", failures, A.dim ** 3, "basis triples")


# ============================================================================
# Ideals
# ============================================================================

def two_sided_ideal_closure(A: StructureAlgebra, generators: Sequence[np.ndarray]) -> Subspace:
    """
    Smallest subspace containing the generators and closed under multiplication by
    basis elements on both sides. Every newly independent vector is multiplied on both
    sides by every basis element; the loop ends when nothing new appears.
    """
    eb = EchelonBasis(A.dim)
    queue = []
    for g in generators:
        row = eb.add(g)
        if row is not None:
            queue.append(row)
    while queue:
        v = queue.pop()
        for k in range(A.dim):
            for w in (A.left_basis(k, v), A.right_basis(v, k)):
                if is_zero(w):
                    continue
                row = eb.add(w)
                if row is not None:
                    queue.append(row)
    logger.debug(f"Ideal closure in {A.name}: {len(generators)} generators -> dim {len(eb)}")
    return Subspace(A.dim, eb)


def is_ideal(A: StructureAlgebra, I: Subspace) -> bool:
    return two_sided_ideal_closure(A, I.vectors()) == I


def ideal_square(A: StructureAlgebra, I: Subspace) -> Subspace:
    """span(I·I)."""
    vectors = I.vectors()
    return Subspace.span((A.multiply(u, v) for u in vectors for v in vectors), A.dim)


def ideal_unit(A: StructureAlgebra, I: Subspace) -> Optional[np.ndarray]:
    """The u in I with u·v = v·u = v for all v in I, or None when I has no unit."""
    vectors = I.vectors()
    r = len(vectors)
    if r == 0:
        return zeros(A.dim)
    # unknown coefficients c with u = sum c_k w_k; equations u w_j = w_j and w_j u = w_j
    blocks, rhs = [], []
    for j, wj in enumerate(vectors):
        left_cols = [A.multiply(wk, wj) for wk in vectors]
        right_cols = [A.multiply(wj, wk) for wk in vectors]
        for cols in (left_cols, right_cols):
            for m in range(A.dim):
                blocks.append([cols[k][m] for k in range(r)])
                rhs.append(wj[m])
    system = zero_matrix(len(blocks), r + 1)
    for row_index, (row, b) in enumerate(zip(blocks, rhs)):
        system[row_index, :r] = row
        system[row_index, r] = b
    R, pivots = rref(system)
    if r in pivots:
        return None
    coefficients = zeros(r)
    for i, p in enumerate(pivots):
        coefficients[p] = R[i, r]
    u = zeros(A.dim)
    for c, w in zip(coefficients, vectors):
        if c != 0:
            u = u + c * w
    return u


def ideals_idempotent_check(alpha) -> List[CheckResult]:
    """span(D_g·D_g) = D_g for every ideal of a partial action."""
    A = alpha.algebra
    results = []
    for g in alpha.group.elements:
        D = alpha.ideal(g)
        square = ideal_square(A, D)
        ok = square == D
        results.append(CheckResult(
            name=f"D_{alpha.group.name(g)} is idempotent (span D·D = D)",
            passed=ok,
            witness=None if ok else {"dim D": D.rank, "dim D·D": square.rank},
            detail=f"dim {D.rank}",
        ))
    return results


# ============================================================================
# Quotients
# ============================================================================

class QuotientAlgebra(StructureAlgebra):
    """
    A/I with basis the cosets of the standard basis vectors at the non-pivot columns
    of I's RREF basis. Labels are inherited from those coset representatives.
    """

    def __init__(self, source: StructureAlgebra, ideal: Subspace, name: Optional[str] = None):
        self.source = source
        self.ideal = ideal
        self.complement = [j for j in range(source.dim) if j not in ideal.pivots]
        self._echelon = ideal.echelon()
        q = len(self.complement)

        projection = zero_matrix(q, source.dim)
        for j in range(source.dim):
            projection[:, j] = self._reduce_to_complement(unit_vector(source.dim, j))
        self.projection = projection

        products = {}
        for a, i in enumerate(self.complement):
            for b, j in enumerate(self.complement):
                products[(a, b)] = self.project(source.product(i, j))

        involution = None
        if source.involution is not None and all(
            ideal.contains(source.star(v)) for v in ideal.vectors()
        ):
            involution = stack_rows(
                [self.project(source.star(unit_vector(source.dim, i))) for i in self.complement], q
            ).T.copy() if q else zero_matrix(0, 0)
        unit = self.project(source.unit) if source.unit is not None else None

        super().__init__(
            [source.labels[i] for i in self.complement],
            products,
            involution=involution,
            unit=unit,
            name=name or f"{source.name}/I",
        )

    def _reduce_to_complement(self, v: np.ndarray) -> np.ndarray:
        r = self._echelon.reduce(v)
        out = zeros(len(self.complement))
        for a, j in enumerate(self.complement):
            out[a] = r[j]
        return out

    def project(self, v: np.ndarray) -> np.ndarray:
        return self._reduce_to_complement(v)

    def lift(self, q: np.ndarray) -> np.ndarray:
        v = zeros(self.source.dim)
        for a, j in enumerate(self.complement):
            v[j] = q[a]
        return v


def quotient_algebra(A: StructureAlgebra, I: Subspace, name: Optional[str] = None) -> Tuple[QuotientAlgebra, np.ndarray]:
    """A/I and the projection matrix; raises NotAnIdeal when span(I) is not closed."""
    closure = two_sided_ideal_closure(A, I.vectors())
    if closure != I:
        extra = next(v for v in closure.vectors() if not I.contains(v))
        raise NotAnIdeal(
            f"subspace of dim {I.rank} is not a two-sided ideal of {A.name} (closure has dim {closure.rank})",
            witness=A.render(extra),
        )
    Q = QuotientAlgebra(A, I, name=name)
    logger.info(f"Quotient {Q.name}: dim {A.dim} - {I.rank} = {Q.dim}")
    return Q, Q.projection


def check_projection_multiplicative(Q: QuotientAlgebra) -> CheckResult:
    """pi(b_i b_j) = pi(b_i) pi(b_j) on all basis pairs of the source."""
    A = Q.source
    images = [Q.project(A.basis_vector(i)) for i in range(A.dim)]
    failures = []
    for i in range(A.dim):
        for j in range(A.dim):
            if not arrays_equal(Q.project(A.product(i, j)), Q.multiply(images[i], images[j])):
                failures.append((A.labels[i], A.labels[j]))
    return check(f"projection {A.name} -> {Q.name} is multiplicative", failures, A.dim ** 2, "basis pairs")
