"""
The Inverse Semigroup S(G)

S(G) is the universal semigroup on symbols [g], g in G, subject to
  [g^-1][g][h] = [g^-1][gh]
  [g][h][h^-1] = [gh][h^-1]
  [g][e]       = [g]
Every element has a unique standard form e_{s1}...e_{sn}[g] with e_s = [s][s^-1].

Key Features:
- Canonical standard forms (eps set excludes e and the bracket)
- Closed-form product (E1,g)(E2,h) = (E1 ∪ gE2 ∪ {g}, gh), certified by the word oracle
- Involution, idempotents, natural partial order, the grading map gamma
- Full enumeration with a cached multiplication table
- Universal property: relations check and extension of maps G -> semigroup

Author: excross Team
"""

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from config import settings
from src.errors import GroupMismatch, GroupTooLarge, IndexOutOfRange
from src.groups import GroupTable
from src.reports import CheckResult, check
from utils.logging_config import get_logger

logger = get_logger("excross.semigroup")

IDENTITY = 0


@dataclass(frozen=True)
class SElem:
    """
    An element e_{s1}...e_{sn}[g] of S(G) in canonical form.

    eps is sorted, duplicate-free and contains neither the identity nor bracket,
    so structural equality is equality in S(G).
    """

    eps: Tuple[int, ...]
    bracket: int

    @property
    def sort_key(self) -> Tuple:
        return (self.bracket, len(self.eps), self.eps)

    def __lt__(self, other: "SElem") -> bool:
        return self.sort_key < other.sort_key


SWord = Tuple[int, ...]


def canon(eps: Iterable[int], bracket: int) -> SElem:
    return SElem(tuple(sorted(set(eps) - {IDENTITY, bracket})), bracket)


def _check_element(G: GroupTable, x: SElem) -> None:
    if not 0 <= x.bracket < G.order or any(not 0 <= s < G.order for s in x.eps):
        raise GroupMismatch(f"{x} does not belong to S(G) for a group of order {G.order}", witness=x)


def s_generator(G: GroupTable, g: int) -> SElem:
    return SElem((), G.check_index(g))


def s_epsilon(G: GroupTable, g: int) -> SElem:
    """e_g = [g][g^-1]; the unit when g = e."""
    return canon((G.check_index(g),), IDENTITY)


def s_multiply(G: GroupTable, x: SElem, y: SElem) -> SElem:
    _check_element(G, x)
    _check_element(G, y)
    g, h = x.bracket, y.bracket
    row = G.table[g]
    return canon(set(x.eps) | {row[s] for s in y.eps} | {g}, row[h])


def s_star(G: GroupTable, x: SElem) -> SElem:
    _check_element(G, x)
    g_inv = G.inverse(x.bracket)
    row = G.table[g_inv]
    return canon({row[s] for s in x.eps} | {g_inv}, g_inv)


def s_is_idempotent(x: SElem) -> bool:
    return x.bracket == IDENTITY


def s_leq(x: SElem, y: SElem) -> bool:
    """Natural partial order: x = y·f for an idempotent f."""
    return x.bracket == y.bracket and set(y.eps) <= set(x.eps)


def s_gamma(x: SElem) -> int:
    return x.bracket


def word_to_element(G: GroupTable, word: Sequence[int]) -> SElem:
    if len(word) == 0:
        raise IndexOutOfRange("a word needs at least one letter", witness=list(word))
    result = s_generator(G, word[0])
    for g in word[1:]:
        result = s_multiply(G, result, s_generator(G, g))
    return result


def element_to_word(G: GroupTable, x: SElem) -> SWord:
    """Shortest word [s1][s1^-1 s2]...[sn^-1 g] whose prefix products are s1, ..., sn, g."""
    _check_element(G, x)
    stops = list(x.eps) + [x.bracket]
    letters = [stops[0]]
    for prev, nxt in zip(stops, stops[1:]):
        letters.append(G.multiply(G.inverse(prev), nxt))
    return tuple(letters)


def render_element(G: GroupTable, x: SElem) -> str:
    return "".join(f"e_{{{G.name(s)}}}" for s in x.eps) + f"[{G.name(x.bracket)}]"


def semigroup_size(order: int) -> int:
    """|S(G)| = 2^(n-1) + (n-1)·2^(n-2)."""
    if order == 1:
        return 1
    return 2 ** (order - 1) + (order - 1) * 2 ** (order - 2)


def s_enumerate(G: GroupTable, max_order: Optional[int] = None) -> Tuple[SElem, ...]:
    """All canonical elements, sorted by (bracket, |eps|, eps)."""
    max_order = max_order or settings.MAX_GROUP_ORDER
    if G.order > max_order:
        raise GroupTooLarge(
            f"|G| = {G.order} exceeds the enumeration bound {max_order} "
            f"(|S(G)| would be {semigroup_size(G.order)}); raise EXCROSS_MAX_GROUP_ORDER",
            witness=G.order,
        )
    elements = []
    for g in G.elements:
        pool = [s for s in G.elements if s not in (IDENTITY, g)]
        for k in range(len(pool) + 1):
            for eps in itertools.combinations(pool, k):
                elements.append(SElem(eps, g))
    return tuple(elements)


def s_idempotents(G: GroupTable) -> Tuple[SElem, ...]:
    return tuple(x for x in s_enumerate(G) if s_is_idempotent(x))


# ============================================================================
# Enumerated semigroup with cached tables
# ============================================================================

class GroupSemigroup:
    """
    S(G) enumerated, with elements addressed by position in enumeration order.

    The multiplication table is built once from s_multiply; every product must land
    back inside the enumeration.
    """

    def __init__(self, G: GroupTable, max_order: Optional[int] = None):
        self.group = G
        self.elements = s_enumerate(G, max_order)
        self.index: Dict[SElem, int] = {x: i for i, x in enumerate(self.elements)}
        logger.info(f"Enumerated S(G): |G| = {G.order}, |S(G)| = {len(self.elements)}")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> SElem:
        return self.elements[i]

    def position(self, x: SElem) -> int:
        return self.index[x]

    @cached_property
    def table(self) -> np.ndarray:
        n = len(self.elements)
        T = np.empty((n, n), dtype=np.int64)
        for i, x in enumerate(self.elements):
            for j, y in enumerate(self.elements):
                T[i, j] = self.index[s_multiply(self.group, x, y)]
        return T

    @cached_property
    def stars(self) -> np.ndarray:
        return np.array([self.index[s_star(self.group, x)] for x in self.elements], dtype=np.int64)

    @cached_property
    def brackets(self) -> np.ndarray:
        return np.array([x.bracket for x in self.elements], dtype=np.int64)

    @cached_property
    def idempotent_positions(self) -> np.ndarray:
        return np.flatnonzero(self.brackets == IDENTITY)

    @cached_property
    def leq_matrix(self) -> np.ndarray:
        """leq[i, j] iff elements[i] <= elements[j]."""
        n = len(self.elements)
        M = np.zeros((n, n), dtype=bool)
        for i, x in enumerate(self.elements):
            for j, y in enumerate(self.elements):
                M[i, j] = s_leq(x, y)
        return M

    def multiply(self, x: SElem, y: SElem) -> SElem:
        return self.elements[self.table[self.index[x], self.index[y]]]

    def star(self, x: SElem) -> SElem:
        return self.elements[self.stars[self.index[x]]]

    def render(self, x: SElem) -> str:
        return render_element(self.group, x)

    def comparable_pairs(self) -> List[Tuple[SElem, SElem]]:
        """All pairs r <= t with r != t."""
        return [
            (self.elements[i], self.elements[j])
            for i, j in np.argwhere(self.leq_matrix)
            if i != j
        ]


@lru_cache(maxsize=32)
def group_semigroup(G: GroupTable, max_order: Optional[int] = None) -> GroupSemigroup:
    return GroupSemigroup(G, max_order)


def multiplication_table(G: GroupTable) -> Dict[str, Any]:
    S = group_semigroup(G)
    return {
        "elements": [S.render(x) for x in S],
        "table": S.table.tolist(),
    }


# ============================================================================
# Universal property
# ============================================================================

def check_universal_relations(
    G: GroupTable,
    f: Callable[[int], Any],
    compose: Callable[[Any, Any], Any],
    equal: Callable[[Any, Any], bool] = lambda a, b: a == b,
    label: str = "f",
) -> List[CheckResult]:
    """
    Check that g -> f(g) satisfies the defining relations of S(G), so that it extends
    to a homomorphism on S(G). Witnesses are (g, h) index pairs.
    """
    inv = G.inverse
    mul = G.multiply
    failures = {"left": [], "right": [], "right_unit": [], "left_unit": []}
    for g in G.elements:
        for h in G.elements:
            if not equal(compose(compose(f(inv(g)), f(g)), f(h)), compose(f(inv(g)), f(mul(g, h)))):
                failures["left"].append((g, h))
            if not equal(compose(compose(f(g), f(h)), f(inv(h))), compose(f(mul(g, h)), f(inv(h)))):
                failures["right"].append((g, h))
        if not equal(compose(f(g), f(IDENTITY)), f(g)):
            failures["right_unit"].append(g)
        if not equal(compose(f(IDENTITY), f(g)), f(g)):
            failures["left_unit"].append(g)
    n = G.order
    return [
        check(f"{label}: [g^-1][g][h] = [g^-1][gh]", failures["left"], n * n, "pairs"),
        check(f"{label}: [g][h][h^-1] = [gh][h^-1]", failures["right"], n * n, "pairs"),
        check(f"{label}: [g][e] = [g]", failures["right_unit"], n, "elements"),
        check(f"{label}: [e][g] = [g]", failures["left_unit"], n, "elements"),
    ]


def universal_extension(
    G: GroupTable,
    f: Callable[[int], Any],
    compose: Callable[[Any, Any], Any],
    elements: Optional[Iterable[SElem]] = None,
) -> Dict[SElem, Any]:
    """f^(e_{s1}...e_{sn}[h]) = f(s1)f(s1^-1)...f(sn)f(sn^-1)f(h)."""
    elements = group_semigroup(G).elements if elements is None else elements
    result = {}
    for x in elements:
        value = None
        for s in x.eps:
            factor = compose(f(s), f(G.inverse(s)))
            value = factor if value is None else compose(value, factor)
        value = f(x.bracket) if value is None else compose(value, f(x.bracket))
        result[x] = value
    return result


# ============================================================================
# Verification sweeps
# ============================================================================

def check_closure(S: GroupSemigroup) -> CheckResult:
    """The enumeration is closed under product and star and has the expected size."""
    G = S.group
    failures = []
    for x in S:
        for y in S:
            if s_multiply(G, x, y) not in S.index:
                failures.append((S.render(x), S.render(y)))
        if s_star(G, x) not in S.index:
            failures.append((S.render(x), "*"))
    expected = semigroup_size(G.order)
    if len(S) != expected:
        failures.insert(0, {"count": len(S), "expected": expected})
    return check("S(G) closed under product and star", failures, len(S) ** 2, "products")


def check_associativity(S: GroupSemigroup, samples: Optional[int] = None, seed: int = 0) -> CheckResult:
    """Exhaustive over all triples when samples is None, otherwise seeded random triples."""
    T = S.table
    n = len(S)
    if samples is None:
        lhs = T[T]
        rhs = T[np.arange(n)[:, None, None], T[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        total = n ** 3
    else:
        rng = np.random.default_rng(seed)
        triples = rng.integers(0, n, size=(samples, 3))
        a, b, c = triples.T
        bad = triples[T[T[a, b], c] != T[a, T[b, c]]]
        total = samples
    failures = [tuple(S.render(S[i]) for i in triple) for triple in bad[:5]]
    mode = "exhaustive" if samples is None else f"{samples} random, seed {seed}"
    return check(f"S(G) associativity ({mode})", failures, total, "triples")


def check_inverse_uniqueness(S: GroupSemigroup) -> CheckResult:
    """For every x, x* is the only y with xyx = x and yxy = y."""
    T = S.table
    ys = np.arange(len(S))
    failures = []
    for x in range(len(S)):
        xyx = T[T[x, ys], x]
        yxy = T[T[ys, x], ys]
        inverses = np.flatnonzero((xyx == x) & (yxy == ys))
        if inverses.tolist() != [int(S.stars[x])]:
            failures.append({
                "x": S.render(S[x]),
                "star": S.render(S[S.stars[x]]),
                "inverses": [S.render(S[i]) for i in inverses],
            })
    return check("unique inverses (x* is the only inverse)", failures, len(S), "elements")


def check_star_involution(S: GroupSemigroup) -> CheckResult:
    """x** = x and (xy)* = y*x*."""
    T, st = S.table, S.stars
    failures = [S.render(S[i]) for i in np.flatnonzero(st[st] != np.arange(len(S)))]
    # st[T][x, y] = (xy)*, rev[x, y] = y*x*
    rev = T[st[None, :], st[:, None]]
    bad = np.argwhere(st[T] != rev)
    failures += [(S.render(S[i]), S.render(S[j])) for i, j in bad[:5]]
    return check("involution: x** = x, (xy)* = y*x*", failures, len(S) ** 2, "pairs")


def check_order_compatibility(S: GroupSemigroup, samples: Optional[int] = None, seed: int = 0) -> CheckResult:
    """x <= y and u <= v imply xu <= yv."""
    leq = S.leq_matrix
    T = S.table
    pairs = np.argwhere(leq)
    if samples is None:
        left = T[pairs[:, 0][:, None], pairs[:, 0][None, :]]
        right = T[pairs[:, 1][:, None], pairs[:, 1][None, :]]
        bad = np.argwhere(~leq[left, right])
        witnesses = [(tuple(pairs[i]), tuple(pairs[j])) for i, j in bad[:5]]
        total = len(pairs) ** 2
    else:
        rng = np.random.default_rng(seed)
        picks = rng.integers(0, len(pairs), size=(samples, 2))
        p, q = pairs[picks[:, 0]], pairs[picks[:, 1]]
        ok = leq[T[p[:, 0], q[:, 0]], T[p[:, 1], q[:, 1]]]
        witnesses = [(tuple(p[i]), tuple(q[i])) for i in np.flatnonzero(~ok)[:5]]
        total = samples
    failures = [
        {"x<=y": [S.render(S[a]), S.render(S[b])], "u<=v": [S.render(S[c]), S.render(S[d])]}
        for (a, b), (c, d) in witnesses
    ]
    return check("order compatibility: x<=y, u<=v => xu<=yv", failures, total, "pairs of relations")


def check_leq_characterization(S: GroupSemigroup) -> CheckResult:
    """s_leq(x, y) agrees with a brute-force search for an idempotent f with x = y·f."""
    T = S.table
    idem = S.idempotent_positions
    failures = []
    for y in range(len(S)):
        reachable = set(T[y, idem].tolist())
        for x in range(len(S)):
            if bool(S.leq_matrix[x, y]) != (x in reachable):
                failures.append((S.render(S[x]), S.render(S[y])))
    return check("x <= y iff x = y·f for an idempotent f", failures, len(S) ** 2, "pairs")


def check_idempotents_commute(S: GroupSemigroup) -> CheckResult:
    idem = S.idempotent_positions
    block = S.table[np.ix_(idem, idem)]
    bad = np.argwhere(block != block.T)
    failures = [(S.render(S[idem[i]]), S.render(S[idem[j]])) for i, j in bad[:5]]
    squares = S.table[idem, idem]
    failures += [S.render(S[i]) for i in idem[squares != idem]]
    return check("idempotents are exactly the bracket-e elements and commute", failures, len(idem) ** 2, "pairs")


def check_gamma_homomorphism(S: GroupSemigroup) -> CheckResult:
    """gamma(xy) = gamma(x)gamma(y), gamma(x*) = gamma(x)^-1, gamma onto G."""
    G = S.group
    B = S.brackets
    lhs = B[S.table]
    rhs = G.array[B[:, None], B[None, :]]
    bad = np.argwhere(lhs != rhs)
    failures: List[Any] = [(S.render(S[i]), S.render(S[j])) for i, j in bad[:5]]
    inv = np.array(G.inverses, dtype=np.int64)
    failures += [S.render(S[i]) for i in np.flatnonzero(B[S.stars] != inv[B])]
    if set(B.tolist()) != set(G.elements):
        failures.append({"image": sorted(set(B.tolist()))})
    return check("gamma is a *-homomorphism onto G", failures, len(S) ** 2, "pairs")


def check_epsilon_commutation(S: GroupSemigroup) -> CheckResult:
    """[h] e_g = e_{hg} [h] for all g, h."""
    G = S.group
    failures = []
    for g in G.elements:
        for h in G.elements:
            lhs = s_multiply(G, s_generator(G, h), s_epsilon(G, g))
            rhs = s_multiply(G, s_epsilon(G, G.multiply(h, g)), s_generator(G, h))
            if lhs != rhs:
                failures.append({"g": G.name(g), "h": G.name(h), "lhs": render_element(G, lhs), "rhs": render_element(G, rhs)})
    return check("[h]e_g = e_{hg}[h]", failures, G.order ** 2, "pairs")


def check_word_evaluation(S: GroupSemigroup) -> CheckResult:
    """element_to_word is a section of word_to_element and has length |eps| + 1."""
    G = S.group
    failures = []
    for x in S:
        word = element_to_word(G, x)
        if word_to_element(G, word) != x or len(word) != len(x.eps) + 1:
            failures.append(S.render(x))
    return check("representative words evaluate back to their element", failures, len(S), "elements")
