"""
Partial Actions of G and Actions of S(G)

Set-level partial actions (domains X_g, partial bijections theta_g), algebra-level
partial actions (ideals D_g, isomorphisms alpha_g : D_{g^-1} -> D_g), and the
corresponding actions of the inverse semigroup S(G):

    s = e_{s1}...e_{sn}[h]:  E_s    = D_h ∩ D_{s1} ∩ ... ∩ D_{sn}
                             E_{s*} = D_{h^-1} ∩ D_{h^-1 s1} ∩ ... ∩ D_{h^-1 sn}
                             beta_s = alpha_h restricted to E_{s*}

Restricting an S(G)-action to the brackets [g] gives back a partial action of G;
the two constructions are mutually inverse.

Author: excross Team
"""

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from src.algebra import StructureAlgebra, function_algebra, is_ideal
from src.errors import ExcrossError, InvalidAction
from src.semigroup import (
    IDENTITY,
    GroupSemigroup,
    SElem,
    check_universal_relations,
    group_semigroup,
    s_generator,
    s_multiply,
    universal_extension,
    word_to_element,
)
from src.groups import GroupTable, PartialBijection
from src.linalg import (
    LinearIsomorphism,
    Subspace,
    arrays_equal,
    intersect_all,
    lincomb,
    unit_vector,
)
from src.reports import CheckResult, check
from utils.logging_config import get_logger

logger = get_logger("excross.partial_action")


# ============================================================================
# Set level
# ============================================================================

@dataclass
class SetPartialAction:
    """theta[g] : X_{g^-1} -> X_g for every g, with theta[e] the identity of X."""

    group: GroupTable
    base_size: int
    theta: Dict[int, PartialBijection]

    def domain(self, g: int) -> frozenset:
        """X_g, the image of theta_g."""
        return self.theta[g].image

    def source(self, g: int) -> frozenset:
        """X_{g^-1}, the domain of theta_g."""
        return self.theta[g].domain


def set_action(group: GroupTable, base_size: int, maps: Dict[int, Sequence[Tuple[int, int]]]) -> SetPartialAction:
    """
    Build a set-level action from theta_g for g != e. theta_e is the identity; a missing
    theta_{g^-1} is taken to be the converse of theta_g, a missing pair of maps is empty.
    """
    theta: Dict[int, PartialBijection] = {}
    for g, pairs in maps.items():
        g = group.check_index(g)
        if g == IDENTITY:
            continue
        theta[g] = PartialBijection(base_size, frozenset(tuple(p) for p in pairs))
    for g in list(theta):
        g_inv = group.inverse(g)
        if g_inv not in theta:
            theta[g_inv] = theta[g].converse()
    for g in group.elements:
        theta.setdefault(g, PartialBijection.empty(base_size))
    theta[IDENTITY] = PartialBijection.identity(base_size)
    return SetPartialAction(group, base_size, theta)


def validate_set_action(P: SetPartialAction) -> List[CheckResult]:
    """All set-level axioms, exhaustively; witnesses are (g, h, x) in group names."""
    G = P.group
    name = G.name
    X = range(P.base_size)

    identity_failures = [] if P.theta[IDENTITY] == PartialBijection.identity(P.base_size) else [
        sorted(P.theta[IDENTITY].pairs)
    ]

    inverse_failures = [
        name(g) for g in G.elements
        if P.theta[G.inverse(g)] != P.theta[g].converse()
    ]

    intersection_failures = []
    composition_failures = []
    for g in G.elements:
        for h in G.elements:
            gh = G.multiply(g, h)
            lhs = {P.theta[g](x) for x in P.source(g) & P.domain(h)}
            rhs = P.domain(g) & P.domain(gh)
            if lhs != rhs:
                x = sorted(lhs ^ rhs)[0]
                intersection_failures.append({"g": name(g), "h": name(h), "x": x})
            for x in X:
                if x not in P.source(h) or x not in P.source(gh):
                    continue
                y = P.theta[h](x)
                z = P.theta[g](y)
                if z is None or z != P.theta[gh](x):
                    composition_failures.append({"g": name(g), "h": name(h), "x": x})

    n = G.order
    return [
        check("theta_e is the identity of X", identity_failures, 1, "maps"),
        check("theta_{g^-1} = theta_g^-1", inverse_failures, n, "elements"),
        check("theta_g(X_{g^-1} ∩ X_h) = X_g ∩ X_{gh}", intersection_failures, n * n, "pairs"),
        check("theta_g theta_h = theta_{gh} on X_{h^-1} ∩ X_{(gh)^-1}", composition_failures, n * n * P.base_size, "points"),
    ]


def check_set_universal(P: SetPartialAction) -> List[CheckResult]:
    """g -> theta_g satisfies the defining relations of S(G) in the symmetric inverse monoid."""
    return check_universal_relations(P.group, lambda g: P.theta[g], lambda a, b: a.compose(b), label="theta")


@dataclass
class SetSgAction:
    """theta_s for every s in S(G)."""

    group: GroupTable
    semigroup: GroupSemigroup
    base_size: int
    theta: Dict[SElem, PartialBijection]


def to_set_sg_action(P: SetPartialAction) -> SetSgAction:
    G = P.group
    S = group_semigroup(G)
    theta = {}
    for s in S:
        h_inv = G.inverse(s.bracket)
        domain = set(P.domain(h_inv))
        for t in s.eps:
            domain &= P.domain(G.multiply(h_inv, t))
        theta[s] = P.theta[s.bracket].restrict(domain)
    return SetSgAction(G, S, P.base_size, theta)


def check_set_sg_action(P: SetPartialAction) -> List[CheckResult]:
    """theta_r theta_s = theta_{rs} on all pairs; theta_[g] = theta_g; theta equals the universal extension."""
    B = to_set_sg_action(P)
    S = B.semigroup
    G = P.group
    failures = []
    for r in S:
        for s in S:
            if B.theta[r].compose(B.theta[s]) != B.theta[S.multiply(r, s)]:
                failures.append((S.render(r), S.render(s)))
    bracket_failures = [G.name(g) for g in G.elements if B.theta[s_generator(G, g)] != P.theta[g]]
    extension = universal_extension(G, lambda g: P.theta[g], lambda a, b: a.compose(b))
    extension_failures = [S.render(s) for s in S if extension[s] != B.theta[s]]
    return [
        check("set level: theta_r theta_s = theta_{rs}", failures, len(S) ** 2, "pairs"),
        check("set level: theta_[g] = theta_g", bracket_failures, G.order, "elements"),
        check("set level: theta_s is the universal extension of g -> theta_g", extension_failures, len(S), "elements"),
    ]


# ============================================================================
# Algebra level
# ============================================================================

@dataclass
class AlgebraPartialAction:
    """ideals[g] = D_g and alpha[g] : D_{g^-1} -> D_g."""

    group: GroupTable
    algebra: StructureAlgebra
    ideals: Dict[int, Subspace]
    alpha: Dict[int, LinearIsomorphism]
    set_action: Optional[SetPartialAction] = field(default=None, compare=False, repr=False)

    def ideal(self, g: int) -> Subspace:
        return self.ideals[g]

    def apply(self, g: int, v: np.ndarray) -> np.ndarray:
        return self.alpha[g].apply(v)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraPartialAction)
            and self.group == other.group
            and self.algebra is other.algebra
            and all(self.ideals[g] == other.ideals[g] for g in self.group.elements)
            and all(self.alpha[g] == other.alpha[g] for g in self.group.elements)
        )


def algebra_action(
    group: GroupTable,
    algebra: StructureAlgebra,
    ideal_bases: Dict[int, Sequence[np.ndarray]],
    alpha_matrices: Dict[int, np.ndarray],
) -> AlgebraPartialAction:
    """
    Build an algebra-level action from listed ideal bases and matrices.

    Column i of alpha_matrices[g] holds the coordinates, in the listed basis of D_g, of
    the image of the i-th listed basis vector of D_{g^-1}. D_e defaults to A and alpha_e
    to the identity; a missing alpha_{g^-1} is the inverse of alpha_g.
    """
    n = algebra.dim
    listed = {g: list(ideal_bases.get(g, [])) for g in group.elements}
    if IDENTITY not in ideal_bases:
        listed[IDENTITY] = [unit_vector(n, i) for i in range(n)]
    ideals = {}
    for g in group.elements:
        sub = Subspace.span(listed[g], n)
        if sub.rank != len(listed[g]):
            raise InvalidAction(
                f"listed basis of D_{group.name(g)} is linearly dependent", witness=group.name(g)
            )
        ideals[g] = sub

    alpha: Dict[int, LinearIsomorphism] = {}
    for g, M in alpha_matrices.items():
        g_inv = group.inverse(g)
        source, target = listed[g_inv], listed[g]
        if M.shape != (len(target), len(source)):
            raise InvalidAction(
                f"alpha_{group.name(g)} must be {len(target)}x{len(source)} (dim D_g x dim D_g^-1), got {M.shape}",
                witness=group.name(g),
            )
        images = [lincomb(M[:, i], target, n) for i in range(len(source))]
        try:
            alpha[g] = LinearIsomorphism.from_images(ideals[g_inv], ideals[g], source, images)
        except ExcrossError as exc:
            raise InvalidAction(f"alpha_{group.name(g)} is not a bijection D_g^-1 -> D_g: {exc}", witness=group.name(g))
    if IDENTITY not in alpha:
        alpha[IDENTITY] = LinearIsomorphism.identity(ideals[IDENTITY])
    for g in group.elements:
        if g in alpha:
            continue
        g_inv = group.inverse(g)
        if g_inv in alpha:
            alpha[g] = alpha[g_inv].inverse()
        elif ideals[g].rank == 0 and ideals[g_inv].rank == 0:
            alpha[g] = LinearIsomorphism.identity(ideals[g])
        else:
            raise InvalidAction(f"no alpha given for {group.name(g)}", witness=group.name(g))
    return AlgebraPartialAction(group, algebra, ideals, alpha)


def induce_algebra_action(P: SetPartialAction) -> AlgebraPartialAction:
    """Function algebra on X with D_g = span{e_x : x in X_g}, alpha_g(e_x) = e_{theta_g(x)}."""
    failed = [r for r in validate_set_action(P) if not r.passed]
    if failed:
        raise InvalidAction(f"set-level action is invalid: {failed[0].name}", witness=failed[0].witness)
    n = P.base_size
    A = function_algebra(n)
    G = P.group
    ideals = {g: Subspace.span((unit_vector(n, x) for x in sorted(P.domain(g))), n) for g in G.elements}
    alpha = {}
    for g in G.elements:
        sources = sorted(P.source(g))
        alpha[g] = LinearIsomorphism.from_images(
            ideals[G.inverse(g)],
            ideals[g],
            [unit_vector(n, x) for x in sources],
            [unit_vector(n, P.theta[g](x)) for x in sources],
        )
    logger.info(f"Induced algebra action: dim A = {n}, dims D_g = {[ideals[g].rank for g in G.elements]}")
    return AlgebraPartialAction(G, A, ideals, alpha, set_action=P)


def validate_algebra_action(alpha: AlgebraPartialAction) -> List[CheckResult]:
    G = alpha.group
    A = alpha.algebra
    name = G.name
    n = G.order

    full = [] if alpha.ideal(IDENTITY) == Subspace.full(A.dim) else [alpha.ideal(IDENTITY).rank]
    not_ideals = [name(g) for g in G.elements if not is_ideal(A, alpha.ideal(g))]

    shape_failures, mult_failures, inverse_failures = [], [], []
    for g in G.elements:
        a = alpha.alpha[g]
        g_inv = G.inverse(g)
        if a.domain != alpha.ideal(g_inv) or a.codomain != alpha.ideal(g) or not a.is_bijective():
            shape_failures.append(name(g))
            continue
        basis = a.domain.vectors()
        for u in basis:
            for v in basis:
                if not arrays_equal(a.apply(A.multiply(u, v)), A.multiply(a.apply(u), a.apply(v))):
                    mult_failures.append({"g": name(g), "u": A.render(u), "v": A.render(v)})
        if alpha.alpha[g_inv] != a.inverse():
            inverse_failures.append(name(g))

    intersection_failures, composition_failures = [], []
    if not shape_failures:
        for g in G.elements:
            for h in G.elements:
                gh = G.multiply(g, h)
                lhs = alpha.alpha[g].image(alpha.ideal(G.inverse(g)).intersect(alpha.ideal(h)))
                rhs = alpha.ideal(g).intersect(alpha.ideal(gh))
                if lhs != rhs:
                    intersection_failures.append({"g": name(g), "h": name(h), "dims": [lhs.rank, rhs.rank]})
                    continue
                common = alpha.ideal(G.inverse(h)).intersect(alpha.ideal(G.inverse(gh)))
                for v in common.vectors():
                    w = alpha.apply(h, v)
                    if not alpha.ideal(G.inverse(g)).contains(w) or not arrays_equal(
                        alpha.apply(g, w), alpha.apply(gh, v)
                    ):
                        composition_failures.append({"g": name(g), "h": name(h), "v": A.render(v)})

    return [
        check("D_e = A", full, 1, "ideals"),
        check("each D_g is a two-sided ideal", not_ideals, n, "ideals"),
        check("alpha_g is a linear bijection D_{g^-1} -> D_g", shape_failures, n, "maps"),
        check("alpha_g is multiplicative", mult_failures, n, "maps"),
        check("alpha_{g^-1} = alpha_g^-1", inverse_failures, n, "maps"),
        check("alpha_g(D_{g^-1} ∩ D_h) = D_g ∩ D_{gh}", intersection_failures, n * n, "pairs"),
        check("alpha_g alpha_h = alpha_{gh} on D_{h^-1} ∩ D_{(gh)^-1}", composition_failures, n * n, "pairs"),
    ]


# ============================================================================
# Actions of S(G)
# ============================================================================

@dataclass
class SgAction:
    """E[s] and beta[s] : E_{s*} -> E_s for every s in S(G)."""

    group: GroupTable
    semigroup: GroupSemigroup
    algebra: StructureAlgebra
    E: Dict[SElem, Subspace]
    beta: Dict[SElem, LinearIsomorphism]
    source: Optional[AlgebraPartialAction] = field(default=None, compare=False, repr=False)

    def apply(self, s: SElem, v: np.ndarray) -> np.ndarray:
        return self.beta[s].apply(v)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SgAction)
            and self.group == other.group
            and self.algebra is other.algebra
            and all(self.E[s] == other.E[s] for s in self.semigroup)
            and all(self.beta[s] == other.beta[s] for s in self.semigroup)
        )


def _intersection_cache(alpha: AlgebraPartialAction):
    cache: Dict[FrozenSet[int], Subspace] = {}

    def intersection(elements: FrozenSet[int]) -> Subspace:
        if elements not in cache:
            cache[elements] = intersect_all([alpha.ideal(g) for g in sorted(elements)], alpha.algebra.dim)
        return cache[elements]

    return intersection


def to_sg_action(alpha: AlgebraPartialAction) -> SgAction:
    """E_s and beta_s for every s from the standard-form formulas."""
    G = alpha.group
    S = group_semigroup(G)
    intersection = _intersection_cache(alpha)
    interned: Dict[tuple, LinearIsomorphism] = {}
    E, beta = {}, {}
    for s in S:
        h = s.bracket
        h_inv = G.inverse(h)
        E[s] = intersection(frozenset((h,) + s.eps))
        source = intersection(frozenset((h_inv,) + tuple(G.multiply(h_inv, t) for t in s.eps)))
        b = alpha.alpha[h].restrict(source)
        key = (b.domain, b.codomain, tuple(b.matrix.flat))
        beta[s] = interned.setdefault(key, b)
    logger.info(
        f"S(G)-action: {len(S)} elements, {len(set(E.values()))} distinct ideals E_s, "
        f"{len(interned)} distinct maps beta_s"
    )
    return SgAction(G, S, alpha.algebra, E, beta, source=alpha)


def restrict_to_group(B: SgAction) -> AlgebraPartialAction:
    G = B.group
    return AlgebraPartialAction(
        G,
        B.algebra,
        {g: B.E[s_generator(G, g)] for g in G.elements},
        {g: B.beta[s_generator(G, g)] for g in G.elements},
        set_action=B.source.set_action if B.source is not None else None,
    )


def check_e_monotone(B: SgAction) -> CheckResult:
    """E_{st} ⊆ E_s for all pairs."""
    S = B.semigroup
    memo: Dict[Tuple[Subspace, Subspace], bool] = {}
    failures = []
    for i, s in enumerate(S):
        for j, t in enumerate(S):
            st = S[S.table[i, j]]
            key = (B.E[st], B.E[s])
            if key not in memo:
                memo[key] = B.E[st].is_subspace_of(B.E[s])
            if not memo[key]:
                failures.append((S.render(s), S.render(t)))
    return check("E_{st} ⊆ E_s", failures, len(S) ** 2, "pairs")


def check_bracket_intersections(B: SgAction) -> CheckResult:
    """E_{[g][h]} = E_{[gh]} ∩ E_{[g]}."""
    G = B.group
    failures = []
    for g in G.elements:
        for h in G.elements:
            gen_g, gen_h = s_generator(G, g), s_generator(G, h)
            lhs = B.E[s_multiply(G, gen_g, gen_h)]
            rhs = B.E[s_generator(G, G.multiply(g, h))].intersect(B.E[gen_g])
            if lhs != rhs:
                failures.append({"g": G.name(g), "h": G.name(h)})
    return check("E_{[g][h]} = E_{[gh]} ∩ E_{[g]}", failures, G.order ** 2, "pairs")


def check_word_form(B: SgAction, seed: int = 0, samples: int = 200, max_len: int = 4) -> CheckResult:
    """E_r = D_{r1} ∩ D_{r1 r2} ∩ ... ∩ D_{r1...rn} for random words r = [r1]...[rn]."""
    G = B.group
    alpha = restrict_to_group(B)
    rng = np.random.default_rng(seed)
    failures = []
    for _ in range(samples):
        length = int(rng.integers(1, max_len + 1))
        word = [int(x) for x in rng.integers(0, G.order, size=length)]
        prefixes = [G.product(word[: k + 1]) for k in range(length)]
        expected = intersect_all([alpha.ideal(p) for p in prefixes], B.algebra.dim)
        if B.E[word_to_element(G, word)] != expected:
            failures.append([G.name(g) for g in word])
    return check(f"E_r from prefix products ({samples} random words, seed {seed})", failures, samples, "words")


def check_sg_action(B: SgAction) -> List[CheckResult]:
    """E_[e] = A, beta_s : E_{s*} -> E_s, beta_{s*} = beta_s^-1, beta_r beta_s = beta_{rs}."""
    S = B.semigroup
    G = B.group
    unit = s_generator(G, IDENTITY)
    full = [] if B.E[unit] == Subspace.full(B.algebra.dim) else [B.E[unit].rank]

    shape_failures = [
        S.render(s) for s in S
        if B.beta[s].domain != B.E[S.star(s)] or B.beta[s].codomain != B.E[s]
    ]
    inverse_failures = [S.render(s) for s in S if B.beta[S.star(s)] != B.beta[s].inverse()]

    memo: Dict[Tuple[int, int, int], bool] = {}
    composition_failures = []
    for i, r in enumerate(S):
        for j, s in enumerate(S):
            rs = S[S.table[i, j]]
            key = (id(B.beta[r]), id(B.beta[s]), id(B.beta[rs]))
            if key not in memo:
                memo[key] = B.beta[r].compose(B.beta[s]) == B.beta[rs]
            if not memo[key]:
                composition_failures.append((S.render(r), S.render(s)))

    results = [
        check("E_[e] = A", full, 1, "ideals"),
        check("beta_s maps E_{s*} onto E_s", shape_failures, len(S), "elements"),
        check("beta_{s*} = beta_s^-1", inverse_failures, len(S), "elements"),
        check("beta_r beta_s = beta_{rs}", composition_failures, len(S) ** 2, "pairs"),
    ]
    if B.source is not None:
        alpha = B.source
        extension = universal_extension(G, lambda g: alpha.alpha[g], lambda a, b: a.compose(b))
        extension_failures = [S.render(s) for s in S if extension[s] != B.beta[s]]
        results.append(check(
            "beta_s is the universal extension of g -> alpha_g", extension_failures, len(S), "elements"
        ))
    return results


def check_star_compatibility(B: SgAction) -> CheckResult:
    """E_s is closed under * and beta_s(a*) = beta_s(a)*."""
    A = B.algebra
    S = B.semigroup
    if not A.has_involution:
        return CheckResult(name="E_s *-closed, beta_s commutes with *", passed=False, detail="algebra has no involution")
    failures = []
    for s in S:
        if not all(B.E[s].contains(A.star(v)) for v in B.E[s].vectors()):
            failures.append({"s": S.render(s), "problem": "E_s not *-closed"})
            continue
        for v in B.beta[s].domain.vectors():
            if not arrays_equal(B.apply(s, A.star(v)), A.star(B.apply(s, v))):
                failures.append({"s": S.render(s), "a": A.render(v)})
    return check("E_s *-closed, beta_s commutes with *", failures, len(S), "elements")


def check_bijection(alpha: AlgebraPartialAction) -> List[CheckResult]:
    """restrict(to_sg(alpha)) = alpha and to_sg(restrict(B)) = B."""
    B = to_sg_action(alpha)
    back = restrict_to_group(B)
    forward_failures = [] if back == alpha else [
        alpha.group.name(g) for g in alpha.group.elements
        if back.ideals[g] != alpha.ideals[g] or back.alpha[g] != alpha.alpha[g]
    ]
    again = to_sg_action(back)
    S = B.semigroup
    reverse_failures = [] if again == B else [
        S.render(s) for s in S if again.E[s] != B.E[s] or again.beta[s] != B.beta[s]
    ]
    return [
        check("restrict(to_sg_action(alpha)) = alpha", forward_failures, alpha.group.order, "elements"),
        check("to_sg_action(restrict(B)) = B", reverse_failures, len(S), "elements"),
    ]
