"""
Fixture catalog: the named partial actions used by the CLI (--fixture), the tests and
verify_acceptance.py.
"""

import itertools
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from src.algebra import StructureAlgebra
from src.errors import BadLabels
from src.groups import GroupTable, cyclic_group, symmetric_group_3
from src.linalg import matrix, vector
from src.partial_action import (
    AlgebraPartialAction,
    SetPartialAction,
    algebra_action,
    induce_algebra_action,
    set_action,
)


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    group: GroupTable
    set_action: Optional[SetPartialAction] = None
    builder: Optional[Callable[[], AlgebraPartialAction]] = None
    valid: bool = True
    function_algebra: bool = True

    def algebra_action(self) -> AlgebraPartialAction:
        if self.builder is not None:
            return self.builder()
        return induce_algebra_action(self.set_action)


def restricted_action(G: GroupTable, perms: Dict[int, tuple], subset: List[int]) -> SetPartialAction:
    """Global permutation action restricted to a subset Y, relabelled to 0..|Y|-1."""
    position = {y: i for i, y in enumerate(subset)}
    maps = {}
    for g, perm in perms.items():
        maps[g] = [(position[y], position[perm[y]]) for y in subset if perm[y] in position]
    return set_action(G, len(subset), maps)


def p1() -> Fixture:
    G = cyclic_group(2)
    return Fixture("p1", "Z2 on {0,1}, X_a = {0}, theta_a = id", G, set_action(G, 2, {1: [(0, 0)]}))


def swap() -> Fixture:
    G = cyclic_group(2)
    return Fixture(
        "swap", "Z2 on {0,1,2}, X_a = {0,1}, theta_a = (0 1)", G, set_action(G, 3, {1: [(0, 1), (1, 0)]})
    )


def z3_rotation() -> Fixture:
    G = cyclic_group(3)
    rotations = {g: tuple((x + g) % 3 for x in range(3)) for g in G.elements}
    return Fixture(
        "z3_rotation", "rotation of Z3 on {0,1,2} restricted to {0,1}", G, restricted_action(G, rotations, [0, 1])
    )


def sym3_partial() -> Fixture:
    G = symmetric_group_3()
    perms = dict(enumerate(itertools.permutations(range(3))))
    return Fixture(
        "sym3_partial", "natural S3 action on {0,1,2} restricted to {0,1}", G, restricted_action(G, perms, [0, 1])
    )


def global_z2() -> Fixture:
    G = cyclic_group(2)
    return Fixture("global_z2", "Z2 swapping {0,1}, all domains full", G, set_action(G, 2, {1: [(0, 1), (1, 0)]}))


def degenerate() -> Fixture:
    G = cyclic_group(2)
    return Fixture("degenerate", "Z2 on {0,1}, X_a empty", G, set_action(G, 2, {}))


def broken_z4() -> Fixture:
    G = cyclic_group(4)
    # theta_a3 is the converse of theta_a, theta_a2 stays empty
    return Fixture(
        "broken_z4", "Z4 on {0}, X_a = {0}, X_a2 empty, theta_a = id (invalid)", G,
        set_action(G, 1, {1: [(0, 0)]}), valid=False,
    )


def zero_product_algebra() -> StructureAlgebra:
    """span{p, x, y}: p² = p, px = x, yp = y, all other products zero."""
    products = {
        (0, 0): vector([1, 0, 0]),
        (0, 1): vector([0, 1, 0]),
        (2, 0): vector([0, 0, 1]),
    }
    return StructureAlgebra(["p", "x", "y"], products, name="A")


def zero_product() -> Fixture:
    G = cyclic_group(2)

    def build() -> AlgebraPartialAction:
        A = zero_product_algebra()
        # alpha_a: x -> x + y, y -> -y on D_a = span{x, y}
        return algebra_action(
            G,
            A,
            {1: [vector([0, 1, 0]), vector([0, 0, 1])]},
            {1: matrix([[1, 0], [1, -1]])},
        )

    return Fixture(
        "zero_product", "Z2 on span{p,x,y} with D_a = span{x,y} (crossed products not associative)", G,
        builder=build, function_algebra=False,
    )


FIXTURES: Dict[str, Callable[[], Fixture]] = {
    "p1": p1,
    "swap": swap,
    "z3_rotation": z3_rotation,
    "sym3_partial": sym3_partial,
    "global_z2": global_z2,
    "degenerate": degenerate,
    "broken_z4": broken_z4,
    "zero_product": zero_product,
}

# valid function-algebra fixtures, for sweeps over "every fixture"
STANDARD_FIXTURES = ["p1", "swap", "z3_rotation", "sym3_partial", "global_z2", "degenerate"]


def get_fixture(name: str) -> Fixture:
    key = name.strip().lower().replace("-", "_")
    if key not in FIXTURES:
        raise BadLabels(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}", witness=name)
    return FIXTURES[key]()
