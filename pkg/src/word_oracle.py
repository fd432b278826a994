"""
Word Oracle for S(G)

Ground truth for the normal-form engine, built only from the defining relations:
all words [g1]...[gk] up to a length bound are enumerated, every relation instance
  left:  [g^-1][g][h] -> [g^-1][gh]
  right: [g][h][h^-1] -> [gh][h^-1]
  unit:  [g][e]       -> [g]
found inside them becomes an edge, and the congruence classes are the connected
components of that graph. The closure at bound L is compared with the one at L-1;
queries longer than the length on which the two agree raise BoundTooSmall.

Words are integer ids: offset[len] + (base-|G| code, most significant letter first),
so id order is shortlex order and the class representative is the minimal id.

Author: excross Team
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from config import settings
from src.errors import BoundTooSmall, OracleBudgetExceeded
from src.semigroup import (
    GroupSemigroup,
    element_to_word,
    render_element,
    s_multiply,
)
from src.groups import GroupTable
from src.reports import CheckResult, check
from utils.logging_config import get_logger

logger = get_logger("excross.word_oracle")


def word_count(order: int, max_len: int) -> int:
    """Number of words of length 1..max_len over an alphabet of `order` letters."""
    return sum(order ** m for m in range(1, max_len + 1))


def _relation_edges(T: np.ndarray, inv: np.ndarray, n: int, m: int, offsets: np.ndarray):
    """Edges from words of length m to the words obtained by one relation step."""
    codes = np.arange(n ** m, dtype=np.int64)
    pw = n ** np.arange(m + 1, dtype=np.int64)
    digits = [((codes // pw[m - 1 - p]) % n).astype(np.int16) for p in range(m)]

    sources, targets = [], []

    def merge(mask: np.ndarray, j: int, letter: np.ndarray) -> None:
        # replace letters j, j+1 by a single letter
        sel = codes[mask]
        prefix = sel // pw[m - j]
        suffix = sel % pw[m - j - 2]
        new = (prefix * n + letter[mask]) * pw[m - j - 2] + suffix
        sources.append(offsets[m] + sel)
        targets.append(offsets[m - 1] + new)

    for p in range(1, m):
        # unit: [g][e] -> [g]
        merge(digits[p] == 0, p - 1, digits[p - 1].astype(np.int64))
    for i in range(m - 2):
        a, b, c = digits[i], digits[i + 1], digits[i + 2]
        # left: [g^-1][g][h] -> [g^-1][gh]
        merge(a == inv[b], i + 1, T[b, c])
        # right: [g][h][h^-1] -> [gh][h^-1]
        merge(c == inv[b], i, T[a, b])

    if not sources:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    return np.concatenate(sources), np.concatenate(targets)


def _components(src: np.ndarray, dst: np.ndarray, size: int) -> np.ndarray:
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(size, size))
    _, labels = connected_components(graph, directed=False)
    return labels


def _stable_length(fine: np.ndarray, coarse: np.ndarray, offsets: np.ndarray, max_len: int) -> int:
    """Largest k such that both partitions agree on every word of length <= k."""
    stable = 0
    for k in range(1, max_len):
        end = offsets[k + 1]
        f, c = fine[:end], coarse[:end]
        pairs = np.unique(np.stack([f, c]), axis=1).shape[1]
        if pairs != np.unique(c).size or pairs != np.unique(f).size:
            break
        stable = k
    return stable


@dataclass(frozen=True)
class WordCongruence:
    """Congruence classes of all words up to max_len under the defining relations."""

    group: GroupTable
    max_len: int
    offsets: np.ndarray
    labels: np.ndarray
    representatives: np.ndarray
    stable_upto: int

    @property
    def word_total(self) -> int:
        return int(self.offsets[self.max_len + 1])

    def word_id(self, word: Sequence[int]) -> int:
        n = self.group.order
        code = 0
        for g in word:
            code = code * n + int(g)
        return int(self.offsets[len(word)]) + code

    def word_of(self, word_id: int) -> Tuple[int, ...]:
        n = self.group.order
        m = int(np.searchsorted(self.offsets, word_id, side="right")) - 1
        code = word_id - int(self.offsets[m])
        letters = []
        for _ in range(m):
            code, digit = divmod(code, n)
            letters.append(digit)
        return tuple(reversed(letters))

    def _require(self, word: Sequence[int]) -> None:
        if len(word) == 0:
            raise BoundTooSmall("the empty word is not an element of S(G)", witness=[])
        if len(word) > self.stable_upto:
            raise BoundTooSmall(
                f"word of length {len(word)} exceeds the stable length {self.stable_upto} "
                f"of the closure at max_len={self.max_len}; raise the bound",
                witness={"word": list(word), "stable_upto": self.stable_upto, "max_len": self.max_len},
            )

    def class_of(self, word: Sequence[int]) -> int:
        self._require(word)
        return int(self.labels[self.word_id(word)])

    def representative(self, word: Sequence[int]) -> Tuple[int, ...]:
        """Shortlex-minimal word of the class of `word`."""
        return self.word_of(int(self.representatives[self.class_of(word)]))

    def equivalent(self, w1: Sequence[int], w2: Sequence[int]) -> bool:
        return self.class_of(w1) == self.class_of(w2)

    def class_count(self, upto: Optional[int] = None) -> int:
        """Number of classes met by words of length <= upto (default: the stable length)."""
        upto = self.stable_upto if upto is None else min(upto, self.stable_upto)
        return int(np.unique(self.labels[: self.offsets[upto + 1]]).size)


@lru_cache(maxsize=8)
def word_congruence(G: GroupTable, max_len: int) -> WordCongruence:
    """Build (and cache) the closure of all words up to max_len."""
    n = G.order
    total = word_count(n, max_len)
    if total > settings.ORACLE_MAX_WORDS:
        raise OracleBudgetExceeded(
            f"max_len={max_len} over |G|={n} needs {total:,} words "
            f"(budget {settings.ORACLE_MAX_WORDS:,}; EXCROSS_ORACLE_MAX_WORDS)",
            witness={"max_len": max_len, "words": total},
        )
    if max_len < 2:
        raise BoundTooSmall("the oracle needs max_len >= 2", witness=max_len)

    offsets = np.zeros(max_len + 2, dtype=np.int64)
    for m in range(1, max_len + 1):
        offsets[m + 1] = offsets[m] + n ** m

    T = G.array
    inv = np.array(G.inverses, dtype=np.int64)
    src_parts, dst_parts = [], []
    for m in range(2, max_len + 1):
        s, d = _relation_edges(T, inv, n, m, offsets)
        src_parts.append(s)
        dst_parts.append(d)
    src = np.concatenate(src_parts)
    dst = np.concatenate(dst_parts)

    labels = _components(src, dst, total)
    # closure one step shorter: only words (and edges) of length <= max_len - 1
    inner = src < offsets[max_len]
    coarse = _components(src[inner], dst[inner], int(offsets[max_len]))
    stable = _stable_length(labels, coarse, offsets, max_len)

    representatives = np.full(labels.max() + 1, total, dtype=np.int64)
    np.minimum.at(representatives, labels, np.arange(total, dtype=np.int64))

    logger.info(
        f"Word closure: |G| = {n}, max_len = {max_len}, {total:,} words, "
        f"{len(src):,} relation edges, stable up to length {stable}"
    )
    return WordCongruence(G, max_len, offsets, labels, representatives, stable)


def default_bound(query_len: int) -> int:
    if settings.ORACLE_MAX_WORD_LEN:
        return settings.ORACLE_MAX_WORD_LEN
    return query_len + 2


def oracle_product(
    G: GroupTable,
    w1: Sequence[int],
    w2: Sequence[int],
    max_len: Optional[int] = None,
) -> Tuple[int, ...]:
    """
    Shortlex-minimal word of the class of the concatenation w1 w2.

    Without max_len (or EXCROSS_ORACLE_MAX_WORD_LEN) the bound is |w1 w2| + 2, not
    2·|w1 w2| + 4; the word count grows as |G|^max_len. A bound that is too short
    raises BoundTooSmall from the stabilisation check, it never answers wrongly. Pass
    max_len=2 * (len(w1) + len(w2)) + 4 for the wider bound.
    """
    word = tuple(w1) + tuple(w2)
    closure = word_congruence(G, max_len or default_bound(len(word)))
    return closure.representative(word)


def largest_affordable_bound(order: int, wanted: int) -> int:
    bound = wanted
    while bound > 2 and word_count(order, bound) > settings.ORACLE_MAX_WORDS:
        bound -= 1
    return bound


# ============================================================================
# Agreement with the normal-form engine
# ============================================================================

def oracle_agreement(S: GroupSemigroup, max_len: Optional[int] = None) -> Tuple[List[CheckResult], Dict[str, float]]:
    """
    Compare s_multiply with the oracle on every pair whose concatenated representative
    word fits the stable length; the rest are counted as skipped.

    Without an explicit bound the largest affordable bound up to (longest query + 2)
    is used.
    """
    G = S.group
    words = [element_to_word(G, x) for x in S]
    longest = 2 * max(len(w) for w in words)
    if max_len is None:
        max_len = settings.ORACLE_MAX_WORD_LEN or largest_affordable_bound(G.order, longest + 2)
    closure = word_congruence(G, max_len)
    stable = closure.stable_upto

    failures, checked, skipped = [], 0, 0
    for i, x in enumerate(S):
        for j, y in enumerate(S):
            query = words[i] + words[j]
            expected = words[S.position(s_multiply(G, x, y))]
            if len(query) > stable or len(expected) > stable:
                skipped += 1
                continue
            checked += 1
            if not closure.equivalent(query, expected):
                failures.append({
                    "x": render_element(G, x),
                    "y": render_element(G, y),
                    "normal_form": render_element(G, S[S.position(s_multiply(G, x, y))]),
                    "oracle_representative": list(closure.representative(query)),
                })

    # distinct elements must sit in distinct classes, and the classes met by short
    # words must be exactly |S(G)|
    separated = []
    fits = [w for w in words if len(w) <= stable]
    classes = {}
    for x, w in zip(S, words):
        if len(w) <= stable:
            cls = closure.class_of(w)
            if cls in classes:
                separated.append((render_element(G, classes[cls]), render_element(G, x)))
            classes[cls] = x
    count_failures = []
    if len(fits) == len(S):
        counted = closure.class_count()
        if counted != len(S):
            count_failures.append({"oracle_classes": counted, "enumerated": len(S)})

    stats: Dict[str, float] = {
        "pairs": len(S) ** 2,
        "checked": checked,
        "skipped": skipped,
        "max_len": max_len,
        "stable_upto": stable,
        "words": closure.word_total,
    }
    agreement = 100.0 * (checked - len(failures)) / checked if checked else 0.0
    stats["agreement"] = round(agreement, 2)
    logger.info(f"Oracle agreement {agreement:.1f}% on {checked} pairs ({skipped} skipped)")

    results = [
        check(
            f"oracle agreement {agreement:.0f}% (max_len {max_len}, stable {stable}, {skipped} skipped)",
            failures,
            checked,
            "pairs",
        ),
        check("oracle separates distinct normal forms", separated, len(fits), "elements"),
    ]
    if len(fits) == len(S):
        results.append(check(f"oracle counts |S(G)| = {len(S)}", count_failures, 1, "counts"))
    if checked == 0:
        results[0] = CheckResult(
            name=results[0].name,
            passed=False,
            witness={"stable_upto": stable},
            detail="no pair fits the stable length; raise --max-word-len",
        )
    return results, stats


def check_epsilon_orientation(G: GroupTable, max_len: Optional[int] = None) -> CheckResult:
    """Oracle decides [h]e_g = e_{hg}[h] (left translation of the subscript)."""
    inv = G.inverse
    mul = G.multiply
    closure = word_congruence(G, max_len or default_bound(3))
    failures = []
    for g in G.elements:
        for h in G.elements:
            hg = mul(h, g)
            lhs = (h, g, inv(g))
            rhs = (hg, inv(hg), h)
            if not closure.equivalent(lhs, rhs):
                failures.append({"g": G.name(g), "h": G.name(h)})
    return check("oracle: [h]e_g = e_{hg}[h]", failures, G.order ** 2, "pairs")
