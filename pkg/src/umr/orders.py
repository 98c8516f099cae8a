"""Convex linear orders: enumeration, order types, Ramsey degrees, and the
order-invariant hull.

Two convex orders on a space have the same *order type* when the unique
order-preserving bijection between the two ordered copies is an isometry,
i.e. when the two sequences induce the same distance profile.  The number
of order types is the Ramsey degree of the space and equals the quotient
of the convex-order count by the isometry count.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import count, permutations

from .errors import InternalNonIntegerTau
from .spaces import (
    ConvexOrder,
    UltrametricSpace,
    _order_sequence,
    canonical_convex_order,
    is_convex_order,
)
from .trees import (
    LeveledTree,
    TreeNode,
    count_automorphisms,
    count_sibling_orderings,
    space_to_tree,
    tree_to_space,
)


@dataclass(frozen=True)
class OrderTypeClass:
    representative: ConvexOrder
    members: tuple[ConvexOrder, ...]


@dataclass(frozen=True)
class RamseyDegreeReport:
    clo_count: int
    iso_count: int
    tau: int


def enumerate_convex_orders(space: UltrametricSpace) -> list[ConvexOrder]:
    """Every convex order exactly once, in lexicographic index order."""
    return [
        ConvexOrder(perm)
        for perm in permutations(range(space.size))
        if is_convex_order(space, perm)
    ]


def count_convex_orders(space: UltrametricSpace) -> int:
    """Closed form: the product of (child count)! over the internal nodes of
    the space's tree, since convex orders are exactly the sibling
    rearrangements."""
    tree = space_to_tree(space, canonical_convex_order(space))
    return count_sibling_orderings(tree)


def order_profile(space: UltrametricSpace, order) -> tuple[Fraction, ...]:
    """Distance sequence read along an order; equal profiles mean the unique
    order-preserving bijection is an isometry."""
    seq = _order_sequence(order)
    n = len(seq)
    return tuple(
        space.dist[seq[p]][seq[q]] for p in range(n) for q in range(p + 1, n)
    )


def order_type_partition(space: UltrametricSpace) -> list[OrderTypeClass]:
    """Partition of the convex orders into order types, classes listed by
    first appearance; each representative is its class's lexicographic
    minimum."""
    classes: dict[tuple[Fraction, ...], list[ConvexOrder]] = {}
    for order in enumerate_convex_orders(space):
        classes.setdefault(order_profile(space, order), []).append(order)
    return [
        OrderTypeClass(representative=members[0], members=tuple(members))
        for members in classes.values()
    ]


def tau(space: UltrametricSpace) -> RamseyDegreeReport:
    """Ramsey degree report: convex-order count, isometry count, and their
    exact quotient."""
    clo = count_convex_orders(space)
    iso = count_automorphisms(space_to_tree(space, canonical_convex_order(space)))
    if clo % iso != 0:
        raise InternalNonIntegerTau(f"{clo} not divisible by {iso}")
    return RamseyDegreeReport(clo_count=clo, iso_count=iso, tau=clo // iso)


def is_order_invariant(space: UltrametricSpace) -> bool:
    """True iff all convex orderings of the space are isomorphic, which
    happens exactly when its tree branches uniformly on each level."""
    tree = space_to_tree(space, canonical_convex_order(space))
    per_level: dict[int, set[int]] = {}
    for node, depth in tree.iter_nodes():
        if not node.is_leaf:
            per_level.setdefault(depth, set()).add(len(node.children))
    return all(len(counts) == 1 for counts in per_level.values())


def order_invariant_hull(space: UltrametricSpace) -> UltrametricSpace:
    """Smallest-levelwise uniform superspace: pad every tree node to its
    level's maximum branching factor with fresh complete subtrees.

    Original labels survive unchanged; fresh points are labeled ``_h<k>``
    with a counter that skips any colliding input label.  The result
    contains the input isometrically and is order-invariant.
    """
    tree = space_to_tree(space, canonical_convex_order(space))
    height = tree.height
    branch = [1] * height
    for node, depth in tree.iter_nodes():
        if not node.is_leaf:
            branch[depth] = max(branch[depth], len(node.children))

    taken = set(space.labels)
    counter = count(1)

    def fresh_label() -> str:
        for k in counter:
            name = f"_h{k}"
            if name not in taken:
                taken.add(name)
                return name
        raise AssertionError("unreachable")

    def fresh_subtree(depth: int) -> TreeNode:
        if depth == height:
            return TreeNode(label=fresh_label())
        return TreeNode(
            children=tuple(fresh_subtree(depth + 1) for _ in range(branch[depth]))
        )

    def pad(node: TreeNode, depth: int) -> TreeNode:
        if node.is_leaf:
            return node
        kids = [pad(child, depth + 1) for child in node.children]
        while len(kids) < branch[depth]:
            kids.append(fresh_subtree(depth + 1))
        return TreeNode(children=tuple(kids))

    hull_tree = LeveledTree(pad(tree.root, 0), tree.levels)
    hull, _ = tree_to_space(hull_tree)
    return hull
