"""
Exact Rational Linear Algebra

Vectors and matrices are numpy object arrays of fractions.Fraction, so every
comparison is exact.

Key Features:
- Incremental reduced row-echelon basis (EchelonBasis) and rref / nullspace
- Subspace: canonical RREF basis, containment, intersection, sum
- LinearIsomorphism between subspaces, in RREF coordinates
- "p/q" string encoding for JSON documents

Author: excross Team
"""

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.errors import DimensionMismatch, DocumentError, NotSquare

Rational = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)

Scalar = Union[int, str, Fraction]


# ============================================================================
# Scalars, vectors, matrices
# ============================================================================

def to_fraction(value: Scalar) -> Fraction:
    """Accepts ints, Fractions and strings "p" or "p/q"."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise DocumentError(f"expected a rational number, got {value!r}", witness=value)
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise DocumentError(f"not a rational number: {value!r}", witness=value)
    raise DocumentError(f"expected an integer or a 'p/q' string, got {value!r}", witness=value)


def format_fraction(value: Fraction) -> str:
    value = to_fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def zeros(n: int) -> np.ndarray:
    return np.full(n, ZERO, dtype=object)


def unit_vector(n: int, i: int) -> np.ndarray:
    v = zeros(n)
    v[i] = ONE
    return v


def vector(values: Iterable[Scalar]) -> np.ndarray:
    values = [to_fraction(x) for x in values]
    v = np.empty(len(values), dtype=object)
    v[:] = values
    return v


def zero_matrix(rows: int, cols: int) -> np.ndarray:
    return np.full((rows, cols), ZERO, dtype=object)


def identity_matrix(n: int) -> np.ndarray:
    M = zero_matrix(n, n)
    for i in range(n):
        M[i, i] = ONE
    return M


def matrix(rows: Sequence[Sequence[Scalar]], cols: Optional[int] = None) -> np.ndarray:
    rows = list(rows)
    if not rows:
        return zero_matrix(0, cols or 0)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise DimensionMismatch("ragged matrix rows", witness=[len(r) for r in rows])
    M = zero_matrix(len(rows), width)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            M[i, j] = to_fraction(x)
    return M


def stack_rows(rows: Sequence[np.ndarray], n: int) -> np.ndarray:
    """Stack vectors as matrix rows; an empty list gives a 0 x n matrix."""
    if len(rows) == 0:
        return zero_matrix(0, n)
    M = zero_matrix(len(rows), n)
    for i, r in enumerate(rows):
        M[i, :] = r
    return M


def is_zero(v: np.ndarray) -> bool:
    return all(x == 0 for x in np.asarray(v).flat)


def support(v: np.ndarray) -> List[int]:
    return [i for i, x in enumerate(v) if x != 0]


def arrays_equal(a: np.ndarray, b: np.ndarray) -> bool:
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and all(x == y for x, y in zip(a.flat, b.flat))


def matvec(M: np.ndarray, v: np.ndarray) -> np.ndarray:
    out = zeros(M.shape[0])
    for j in support(v):
        out = out + M[:, j] * v[j]
    return out


def matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}", witness=(A.shape, B.shape))
    out = zero_matrix(A.shape[0], B.shape[1])
    for k in range(A.shape[1]):
        col = A[:, k]
        row = B[k, :]
        if is_zero(col) or is_zero(row):
            continue
        out = out + np.outer(col, row)
    return out


def lincomb(coefficients: Sequence[Fraction], vectors: Sequence[np.ndarray], n: int) -> np.ndarray:
    out = zeros(n)
    for c, v in zip(coefficients, vectors):
        if c != 0:
            out = out + c * v
    return out


def transpose(M: np.ndarray) -> np.ndarray:
    return np.array(M, dtype=object).T.copy()


def to_float(M: np.ndarray) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in M], dtype=float).reshape(M.shape)


# ============================================================================
# Row reduction
# ============================================================================

class EchelonBasis:
    """
    Incrementally maintained reduced row-echelon basis.

    Every stored row has a leading 1 at its pivot and zeros at all other pivots.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: Dict[int, np.ndarray] = {}

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        r = np.array(v, dtype=object)
        for p, row in self.rows.items():
            c = r[p]
            if c != 0:
                r = r - c * row
        return r

    def contains(self, v: np.ndarray) -> bool:
        return is_zero(self.reduce(v))

    def add(self, v: np.ndarray) -> Optional[np.ndarray]:
        """Add v; returns the new normalized row, or None when v is dependent."""
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.dim}", witness=len(v))
        r = self.reduce(np.array([to_fraction(x) for x in v], dtype=object).reshape(self.dim))
        nz = support(r)
        if not nz:
            return None
        p = nz[0]
        r = r / r[p]
        for q, row in list(self.rows.items()):
            c = row[p]
            if c != 0:
                self.rows[q] = row - c * r
        self.rows[p] = r
        return r

    def matrix(self) -> np.ndarray:
        return stack_rows([self.rows[p] for p in self.pivots], self.dim)


def rref(M: np.ndarray) -> Tuple[np.ndarray, Tuple[int, ...]]:
    """Reduced row-echelon form (same shape, zero rows last) and pivot columns."""
    M = np.asarray(M, dtype=object)
    rows, cols = M.shape
    eb = EchelonBasis(cols)
    for i in range(rows):
        eb.add(M[i])
    R = zero_matrix(rows, cols)
    for i, p in enumerate(eb.pivots):
        R[i, :] = eb.rows[p]
    return R, tuple(eb.pivots)


def rank(M: np.ndarray) -> int:
    return len(rref(M)[1])


def nullspace(M: np.ndarray) -> List[np.ndarray]:
    """Basis of {x : M x = 0}, one vector per free column."""
    M = np.asarray(M, dtype=object)
    cols = M.shape[1]
    R, pivots = rref(M)
    free = [j for j in range(cols) if j not in pivots]
    basis = []
    for f in free:
        x = zeros(cols)
        x[f] = ONE
        for i, p in enumerate(pivots):
            x[p] = -R[i, f]
        basis.append(x)
    return basis


def inverse_matrix(A: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=object)
    n, m = A.shape
    if n != m:
        raise NotSquare(f"cannot invert a {n}x{m} matrix", witness=(n, m))
    augmented = np.concatenate([A, identity_matrix(n)], axis=1)
    R, pivots = rref(augmented)
    if tuple(pivots[:n]) != tuple(range(n)) or len([p for p in pivots if p < n]) != n:
        raise DimensionMismatch("matrix is singular", witness=n)
    return R[:, n:].copy()


# ============================================================================
# Subspaces
# ============================================================================

class Subspace:
    """
    A subspace of Q^dim with its canonical RREF basis.

    Two subspaces are equal exactly when their RREF bases are equal. Coordinates of
    a member v are v[pivots].
    """

    __slots__ = ("dim", "basis", "pivots", "_key")

    def __init__(self, dim: int, echelon: EchelonBasis):
        self.dim = dim
        self.pivots: Tuple[int, ...] = tuple(echelon.pivots)
        self.basis: np.ndarray = echelon.matrix()
        self._key = (dim, self.pivots, tuple(self.basis.flat))

    @classmethod
    def span(cls, vectors: Iterable[np.ndarray], dim: int) -> "Subspace":
        eb = EchelonBasis(dim)
        for v in vectors:
            eb.add(v)
        return cls(dim, eb)

    @classmethod
    def zero(cls, dim: int) -> "Subspace":
        return cls(dim, EchelonBasis(dim))

    @classmethod
    def full(cls, dim: int) -> "Subspace":
        return cls.span((unit_vector(dim, i) for i in range(dim)), dim)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def vectors(self) -> List[np.ndarray]:
        return [self.basis[i].copy() for i in range(self.rank)]

    def echelon(self) -> EchelonBasis:
        eb = EchelonBasis(self.dim)
        for i, p in enumerate(self.pivots):
            eb.rows[p] = self.basis[i].copy()
        return eb

    def reduce(self, v: np.ndarray) -> np.ndarray:
        return self.echelon().reduce(v)

    def contains(self, v: np.ndarray) -> bool:
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} vs ambient {self.dim}", witness=len(v))
        return is_zero(self.reduce(v))

    def coordinates(self, v: np.ndarray, check: bool = True) -> np.ndarray:
        if check and not self.contains(v):
            raise DimensionMismatch("vector is not in the subspace", witness=[str(x) for x in v])
        coords = np.empty(self.rank, dtype=object)
        coords[:] = [to_fraction(v[p]) for p in self.pivots]
        return coords

    def from_coordinates(self, coords: Sequence[Fraction]) -> np.ndarray:
        return lincomb(coords, self.vectors(), self.dim)

    def is_subspace_of(self, other: "Subspace") -> bool:
        self._same_ambient(other)
        return all(other.contains(self.basis[i]) for i in range(self.rank))

    def intersect(self, other: "Subspace") -> "Subspace":
        """span(U) ∩ span(V) from the nullspace of [U; -V]^T."""
        self._same_ambient(other)
        if self.rank == 0 or other.rank == 0:
            return Subspace.zero(self.dim)
        if self.is_subspace_of(other):
            return self
        if other.is_subspace_of(self):
            return other
        system = transpose(np.concatenate([self.basis, -other.basis], axis=0))
        vectors = [
            lincomb(z[: self.rank], self.vectors(), self.dim)
            for z in nullspace(system)
        ]
        return Subspace.span(vectors, self.dim)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        return Subspace.span(self.vectors() + other.vectors(), self.dim)

    def _same_ambient(self, other: "Subspace") -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(
                f"subspaces of Q^{self.dim} and Q^{other.dim}", witness=(self.dim, other.dim)
            )

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, rank={self.rank}, pivots={list(self.pivots)})"

    def to_json(self) -> List[List[str]]:
        return encode_matrix(self.basis)


def intersect_all(subspaces: Sequence[Subspace], dim: int) -> Subspace:
    result = Subspace.full(dim)
    for sub in subspaces:
        result = result.intersect(sub)
    return result


def subspace_intersection(B1: Sequence[np.ndarray], B2: Sequence[np.ndarray], dim: int) -> List[np.ndarray]:
    """Canonical (RREF) basis of span(B1) ∩ span(B2)."""
    return Subspace.span(B1, dim).intersect(Subspace.span(B2, dim)).vectors()


def subspace_sum(B1: Sequence[np.ndarray], B2: Sequence[np.ndarray], dim: int) -> List[np.ndarray]:
    return (Subspace.span(B1, dim) + Subspace.span(B2, dim)).vectors()


# ============================================================================
# Linear isomorphisms between subspaces
# ============================================================================

class LinearIsomorphism:
    """
    A linear bijection domain -> codomain between subspaces of Q^n.

    `matrix` has shape (codomain.rank, domain.rank) and maps RREF coordinates of the
    domain to RREF coordinates of the codomain.
    """

    def __init__(self, domain: Subspace, codomain: Subspace, matrix_: np.ndarray):
        if matrix_.shape != (codomain.rank, domain.rank):
            raise DimensionMismatch(
                f"matrix shape {matrix_.shape} does not match {codomain.rank}x{domain.rank}",
                witness=matrix_.shape,
            )
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix_

    @classmethod
    def identity(cls, subspace: Subspace) -> "LinearIsomorphism":
        return cls(subspace, subspace, identity_matrix(subspace.rank))

    @classmethod
    def from_images(
        cls,
        domain: Subspace,
        codomain: Subspace,
        vectors: Sequence[np.ndarray],
        images: Sequence[np.ndarray],
    ) -> "LinearIsomorphism":
        """The map sending vectors[i] -> images[i]; vectors must be a basis of domain."""
        if len(vectors) != domain.rank or len(images) != len(vectors):
            raise DimensionMismatch(
                f"{len(vectors)} vectors / {len(images)} images for a domain of rank {domain.rank}",
                witness=(len(vectors), len(images), domain.rank),
            )
        if domain.rank == 0:
            return cls(domain, codomain, zero_matrix(codomain.rank, 0))
        C = stack_rows([domain.coordinates(v) for v in vectors], domain.rank)
        D = stack_rows([codomain.coordinates(w) for w in images], codomain.rank)
        M = matmul(transpose(D), inverse_matrix(transpose(C)))
        return cls(domain, codomain, M)

    @property
    def rank(self) -> int:
        return rank(self.matrix) if self.matrix.size else 0

    def is_bijective(self) -> bool:
        return self.domain.rank == self.codomain.rank and self.rank == self.domain.rank

    def apply(self, v: np.ndarray) -> np.ndarray:
        coords = self.domain.coordinates(v)
        return self.codomain.from_coordinates(matvec(self.matrix, coords))

    def image(self, sub: Subspace) -> Subspace:
        if not sub.is_subspace_of(self.domain):
            raise DimensionMismatch("subspace is not inside the domain", witness=repr(sub))
        return Subspace.span((self.apply(v) for v in sub.vectors()), self.codomain.dim)

    def restrict(self, sub: Subspace) -> "LinearIsomorphism":
        vectors = sub.vectors()
        images = [self.apply(v) for v in vectors]
        return LinearIsomorphism.from_images(sub, Subspace.span(images, self.codomain.dim), vectors, images)

    def inverse(self) -> "LinearIsomorphism":
        if not self.is_bijective():
            raise DimensionMismatch("map is not invertible", witness=self.matrix.shape)
        if self.domain.rank == 0:
            return LinearIsomorphism(self.codomain, self.domain, zero_matrix(0, 0))
        return LinearIsomorphism(self.codomain, self.domain, inverse_matrix(self.matrix))

    def compose(self, other: "LinearIsomorphism") -> "LinearIsomorphism":
        """self∘other on the largest domain where it is defined: other^-1(other.codomain ∩ self.domain)."""
        middle = other.codomain.intersect(self.domain)
        start = other.inverse().image(middle)
        vectors = start.vectors()
        images = [self.apply(other.apply(v)) for v in vectors]
        return LinearIsomorphism.from_images(start, Subspace.span(images, self.codomain.dim), vectors, images)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearIsomorphism)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and arrays_equal(self.matrix, other.matrix)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"LinearIsomorphism({self.domain.rank} -> {self.codomain.rank})"


# ============================================================================
# JSON encoding
# ============================================================================

def encode_vector(v: np.ndarray) -> List[str]:
    return [format_fraction(x) for x in v]


def encode_matrix(M: np.ndarray) -> List[List[str]]:
    M = np.asarray(M, dtype=object)
    if M.ndim == 1:
        M = M.reshape(1, -1)
    return [encode_vector(M[i]) for i in range(M.shape[0])]


def decode_vector(values: Sequence[Scalar], dim: Optional[int] = None) -> np.ndarray:
    v = vector(values)
    if dim is not None and len(v) != dim:
        raise DocumentError(f"expected {dim} coordinates, got {len(v)}", witness=list(values))
    return v


def decode_matrix(rows: Sequence[Sequence[Scalar]], cols: Optional[int] = None) -> np.ndarray:
    try:
        return matrix(rows, cols)
    except DimensionMismatch as exc:
        raise DocumentError(str(exc), witness=exc.witness)
