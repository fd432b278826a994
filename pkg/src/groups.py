"""
Finite Groups and Partial Bijections

Finite groups are materialized as validated Cayley tables; partial bijections of a
finite set form the symmetric inverse monoid used by set-level partial actions.

Key Features:
- Cayley-table validation: Latin square, identity, associativity (exhaustive)
- Identity normalized to index 0 so that fixtures index canonically
- Presets: "cyclic N", "klein4", "sym3" and permutation-generator closure
- PartialBijection with composition, converse, restriction

Author: excross Team
"""

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.errors import (
    BadLabels,
    BaseSizeMismatch,
    IndexOutOfRange,
    NoIdentity,
    NonAssociative,
    NonLatinSquare,
)
from utils.logging_config import get_logger

logger = get_logger("excross.groups")

PRESET_PATTERN = re.compile(r"^\s*(cyclic|z)\s*(\d+)\s*$", re.IGNORECASE)


@dataclass(frozen=True)
class GroupTable:
    """
    A finite group as a Cayley table: table[g][h] = g·h.

    Instances are only produced by `build_group`, which validates every axiom and
    moves the identity to index 0.
    """

    names: Tuple[str, ...]
    table: Tuple[Tuple[int, ...], ...]
    identity: int = 0

    @property
    def order(self) -> int:
        return len(self.names)

    @property
    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64).reshape(self.order, self.order)

    @cached_property
    def inverses(self) -> Tuple[int, ...]:
        return tuple(int(np.flatnonzero(self.array[g] == self.identity)[0]) for g in self.elements)

    @cached_property
    def _index(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def check_index(self, g: int) -> int:
        if not isinstance(g, (int, np.integer)) or not 0 <= g < self.order:
            raise IndexOutOfRange(
                f"group element index {g} outside 0..{self.order - 1}", witness=g
            )
        return int(g)

    def multiply(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inverse(self, g: int) -> int:
        return self.inverses[g]

    def product(self, letters: Iterable[int]) -> int:
        result = self.identity
        for g in letters:
            result = self.table[result][g]
        return result

    def name(self, g: int) -> str:
        return self.names[g]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise BadLabels(f"unknown group element {name!r}; known: {list(self.names)}", witness=name)

    def __repr__(self) -> str:
        return f"GroupTable(order={self.order}, names={list(self.names)})"


def build_group(names: Sequence[str], table: Sequence[Sequence[int]]) -> GroupTable:
    """
    Validate a Cayley table and return a GroupTable with identity at index 0.

    Raises:
        BadLabels: wrong number of names, duplicates, empty labels, bad table shape
        NonLatinSquare: some row or column is not a permutation (witness: row/column)
        NoIdentity: no two-sided identity exists
        NonAssociative: (g·h)·k != g·(h·k) (witness: first violating triple)
    """
    names = [str(n) for n in names]
    n = len(names)
    if n == 0:
        raise BadLabels("a group needs at least one element", witness=names)
    if len(set(names)) != n:
        dupes = sorted({x for x in names if names.count(x) > 1})
        raise BadLabels(f"duplicate element names: {dupes}", witness=dupes)
    if any(not x.strip() or not x.isprintable() for x in names):
        raise BadLabels("element names must be non-empty printable labels", witness=names)
    if len(table) != n or any(len(row) != n for row in table):
        raise BadLabels(f"table must be {n}x{n} to match {n} names", witness=[len(r) for r in table])

    T = np.array(table, dtype=np.int64).reshape(n, n)
    if T.min() < 0 or T.max() >= n:
        bad = tuple(int(i) for i in np.argwhere((T < 0) | (T >= n))[0])
        raise NonLatinSquare(f"entry at {bad} is not an element index", witness=bad)

    full = np.arange(n)
    for g in range(n):
        if not np.array_equal(np.sort(T[g]), full):
            raise NonLatinSquare(f"row {g} is not a permutation: {T[g].tolist()}", witness=("row", g))
        if not np.array_equal(np.sort(T[:, g]), full):
            raise NonLatinSquare(f"column {g} is not a permutation: {T[:, g].tolist()}", witness=("column", g))

    identities = [
        e for e in range(n)
        if np.array_equal(T[e], full) and np.array_equal(T[:, e], full)
    ]
    if not identities:
        raise NoIdentity("no element e with e·g = g·e = g for all g", witness=None)
    e = identities[0]

    # (g·h)·k against g·(h·k) for every triple at once
    lhs = T[T]
    rhs = T[full[:, None, None], T[None, :, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        g, h, k = (int(i) for i in bad[0])
        raise NonAssociative(
            f"({names[g]}·{names[h]})·{names[k]} != {names[g]}·({names[h]}·{names[k]})",
            witness=(g, h, k),
        )

    # Move the identity to index 0, keeping the order of the others
    order = [e] + [g for g in range(n) if g != e]
    position = np.empty(n, dtype=np.int64)
    position[order] = np.arange(n)
    relabelled = position[T[np.ix_(order, order)]]

    group = GroupTable(
        names=tuple(names[g] for g in order),
        table=tuple(tuple(int(x) for x in row) for row in relabelled),
    )
    logger.debug(f"Validated group of order {n}")
    return group


def cyclic_group(n: int) -> GroupTable:
    if n < 1:
        raise BadLabels(f"cyclic group order must be positive (got {n})", witness=n)
    names = ["e", "a"] + [f"a{k}" for k in range(2, n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return build_group(names[:n], table)


def klein_four_group() -> GroupTable:
    return build_group(["e", "a", "b", "c"], [[i ^ j for j in range(4)] for i in range(4)])


def cycle_notation(perm: Sequence[int]) -> str:
    """Name a permutation of {0..m-1} by its cycles, e.g. "(0 1 2)"; the identity is "e"."""
    seen = set()
    cycles = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = perm[x]
        cycles.append("(" + " ".join(str(c) for c in cycle) + ")")
    return "".join(cycles) or "e"


def permutation_group(generators: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None) -> GroupTable:
    """
    Close a set of permutations of {0..m-1} under composition, (g·h)(x) = g(h(x)).

    Elements are listed in breadth-first order from the identity. Without explicit
    names each element is named by its cycle notation.
    """
    if not generators:
        raise BadLabels("at least one generator permutation is required", witness=[])
    m = len(generators[0])
    gens = []
    for p in generators:
        if len(p) != m or sorted(p) != list(range(m)):
            raise BadLabels(f"not a permutation of 0..{m - 1}: {list(p)}", witness=list(p))
        gens.append(tuple(int(x) for x in p))

    identity = tuple(range(m))
    elements: List[Tuple[int, ...]] = [identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for s in gens:
                q = tuple(s[p[x]] for x in range(m))
                if q not in seen:
                    seen.add(q)
                    elements.append(q)
                    nxt.append(q)
        frontier = nxt

    index = {p: i for i, p in enumerate(elements)}
    table = [[index[tuple(g[h[x]] for x in range(m))] for h in elements] for g in elements]
    if names is None:
        names = [cycle_notation(p) for p in elements]
    elif len(names) != len(elements):
        raise BadLabels(
            f"{len(names)} names given for a group of order {len(elements)}",
            witness=list(names),
        )
    return build_group(names, table)


def symmetric_group_3() -> GroupTable:
    """S_3 on {0,1,2}, elements in lexicographic permutation order."""
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(g[h[x]] for x in range(3))] for h in perms] for g in perms]
    return build_group([cycle_notation(p) for p in perms], table)


def preset_group(description: str) -> GroupTable:
    """Resolve a preset identifier: "cyclic N", "zN", "klein4", "sym3", "trivial"."""
    key = description.strip().lower()
    match = PRESET_PATTERN.match(key)
    if match:
        return cyclic_group(int(match.group(2)))
    if key in ("klein4", "v4"):
        return klein_four_group()
    if key in ("sym3", "s3"):
        return symmetric_group_3()
    if key == "trivial":
        return cyclic_group(1)
    raise BadLabels(f"unknown group preset {description!r}; expected 'cyclic N', 'klein4' or 'sym3'", witness=description)


def load_group(description) -> GroupTable:
    """
    Load a group from a preset string, a table document {"names", "table"}, or a
    permutation document {"permutations", "names"?}.
    """
    if isinstance(description, GroupTable):
        return description
    if isinstance(description, str):
        return preset_group(description)
    if isinstance(description, dict):
        if "permutations" in description:
            return permutation_group(description["permutations"], description.get("names"))
        if "table" in description:
            names = description.get("names") or [str(i) for i in range(len(description["table"]))]
            return build_group(names, description["table"])
    raise BadLabels(f"cannot interpret group description {description!r}", witness=description)


def group_multiply(G: GroupTable, g: int, h: int) -> int:
    return G.multiply(G.check_index(g), G.check_index(h))


def group_inverse(G: GroupTable, g: int) -> int:
    return G.inverse(G.check_index(g))


# ============================================================================
# Partial bijections
# ============================================================================

@dataclass(frozen=True)
class PartialBijection:
    """
    An injective partial map of {0..base_size-1}, stored as (source, target) pairs.

    Composition follows the convention (f∘g)(x) = f(g(x)).
    """

    base_size: int
    pairs: frozenset

    def __post_init__(self):
        pairs = frozenset((int(s), int(t)) for s, t in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if self.base_size <= 0:
            raise BaseSizeMismatch(f"base_size must be positive (got {self.base_size})", witness=self.base_size)
        for s, t in pairs:
            if not (0 <= s < self.base_size and 0 <= t < self.base_size):
                raise IndexOutOfRange(
                    f"pair ({s}, {t}) outside base set of size {self.base_size}", witness=(s, t)
                )
        sources = [s for s, _ in pairs]
        targets = [t for _, t in pairs]
        if len(set(sources)) != len(sources):
            raise BadLabels("partial bijection maps a source twice", witness=sorted(pairs))
        if len(set(targets)) != len(targets):
            raise BadLabels("partial bijection hits a target twice", witness=sorted(pairs))

    @classmethod
    def identity(cls, base_size: int, subset: Optional[Iterable[int]] = None) -> "PartialBijection":
        subset = range(base_size) if subset is None else subset
        return cls(base_size, frozenset((x, x) for x in subset))

    @classmethod
    def empty(cls, base_size: int) -> "PartialBijection":
        return cls(base_size, frozenset())

    @classmethod
    def from_mapping(cls, base_size: int, mapping: Dict[int, int]) -> "PartialBijection":
        return cls(base_size, frozenset(mapping.items()))

    @cached_property
    def mapping(self) -> Dict[int, int]:
        return dict(self.pairs)

    @property
    def domain(self) -> frozenset:
        return frozenset(s for s, _ in self.pairs)

    @property
    def image(self) -> frozenset:
        return frozenset(t for _, t in self.pairs)

    def __call__(self, x: int) -> Optional[int]:
        return self.mapping.get(x)

    def converse(self) -> "PartialBijection":
        return PartialBijection(self.base_size, frozenset((t, s) for s, t in self.pairs))

    def compose(self, other: "PartialBijection") -> "PartialBijection":
        """self∘other, defined exactly where other maps into the domain of self."""
        if self.base_size != other.base_size:
            raise BaseSizeMismatch(
                f"cannot compose maps on {self.base_size} and {other.base_size} points",
                witness=(self.base_size, other.base_size),
            )
        mine = self.mapping
        return PartialBijection(
            self.base_size,
            frozenset((s, mine[t]) for s, t in other.pairs if t in mine),
        )

    def restrict(self, subset: Iterable[int]) -> "PartialBijection":
        keep = set(subset)
        return PartialBijection(self.base_size, frozenset((s, t) for s, t in self.pairs if s in keep))

    def is_idempotent(self) -> bool:
        return all(s == t for s, t in self.pairs)

    def matrix(self) -> np.ndarray:
        """0/1 matrix M with M[t, s] = 1 for each pair, so M·e_s = e_t."""
        M = np.zeros((self.base_size, self.base_size), dtype=np.int64)
        for s, t in self.pairs:
            M[t, s] = 1
        return M

    def __repr__(self) -> str:
        return f"PartialBijection({self.base_size}, {sorted(self.pairs)})"


def compose_partial_bijections(f: PartialBijection, g: PartialBijection) -> PartialBijection:
    return f.compose(g)


def all_partial_bijections(base_size: int) -> List[PartialBijection]:
    """Every partial bijection of a base set (the symmetric inverse monoid), for small sets."""
    points = range(base_size)
    result = []
    for k in range(base_size + 1):
        for sources in itertools.combinations(points, k):
            for targets in itertools.permutations(points, k):
                result.append(PartialBijection(base_size, frozenset(zip(sources, targets))))
    return result
