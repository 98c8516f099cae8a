"""Exhaustive generation of leveled-tree shapes and the extremal scan.

Shapes are unlabeled trees with all leaves at the same depth and at least
one branching node on every level (so each level distance is realized in
the dual space).  They are generated bottom-up as canonically sorted child
multisets, which yields each shape exactly once, then materialized into
``LeveledTree`` values with placeholder labels and power-of-two levels.

The extremal scan walks every shape with a given leaf count, computes the
Ramsey degree of each, and reports the maximum together with the arg-max
shapes and whether those are combs (all branching nodes on one branch).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .errors import InternalNonIntegerTau
from .spaces import DistanceSet
from .trees import (
    CanonicalCode,
    LeveledTree,
    TreeNode,
    canonical_code,
    count_automorphisms,
    count_sibling_orderings,
)

Shape = tuple  # () is a leaf, otherwise a tuple of child shapes sorted by code


def _shape_code(shape: Shape) -> str:
    if not shape:
        return "()"
    return "(" + "".join(_shape_code(child) for child in shape) + ")"


def _shape_leaves(shape: Shape) -> int:
    if not shape:
        return 1
    return sum(_shape_leaves(child) for child in shape)


@lru_cache(maxsize=None)
def _shapes(height: int, leaves: int) -> tuple[Shape, ...]:
    """All uniform-depth shapes with the given height and leaf count;
    unary chains are allowed here and filtered by the level check later."""
    if height == 0:
        return ((),) if leaves == 1 else ()
    options: list[tuple[str, Shape, int]] = []
    for count in range(1, leaves + 1):
        for sub in _shapes(height - 1, count):
            options.append((_shape_code(sub), sub, count))
    options.sort(key=lambda item: item[0])

    result: list[Shape] = []

    def extend(start: int, remaining: int, acc: list[Shape]) -> None:
        if remaining == 0:
            if acc:
                result.append(tuple(acc))
            return
        for idx in range(start, len(options)):
            _, sub, count = options[idx]
            if count > remaining:
                continue
            acc.append(sub)
            extend(idx, remaining - count, acc)
            acc.pop()

    extend(0, leaves, [])
    return tuple(result)


def _levels_all_branch(shape: Shape, height: int) -> bool:
    branching = [False] * height

    def walk(node: Shape, depth: int) -> None:
        if not node:
            return
        if len(node) >= 2:
            branching[depth] = True
        for child in node:
            walk(child, depth + 1)

    walk(shape, 0)
    return all(branching)


def default_levels(height: int) -> DistanceSet:
    return DistanceSet(tuple(Fraction(2 ** (height - 1 - i)) for i in range(height)))


def shape_to_tree(
    shape: Shape, levels: DistanceSet | None = None, prefix: str = "p"
) -> LeveledTree:
    """Materialize a shape with labels ``<prefix>1..<prefix>n`` in leaf
    order and, by default, power-of-two level distances."""

    def height_of(node: Shape) -> int:
        return 0 if not node else 1 + height_of(node[0])

    height = height_of(shape)
    if levels is None:
        levels = default_levels(height)
    counter = iter(range(1, _shape_leaves(shape) + 1))

    def build(node: Shape) -> TreeNode:
        if not node:
            return TreeNode(label=f"{prefix}{next(counter)}")
        return TreeNode(children=tuple(build(child) for child in node))

    return LeveledTree(build(shape), levels)


def all_tree_shapes(leaves: int) -> list[LeveledTree]:
    """Every leveled-tree shape with the given leaf count, all heights,
    deduplicated, in deterministic (height, code) order."""
    if leaves < 1:
        raise ValueError("leaf count must be positive")
    if leaves == 1:
        return [shape_to_tree(())]
    out = []
    for height in range(1, leaves):
        found = [
            shape
            for shape in _shapes(height, leaves)
            if _levels_all_branch(shape, height)
        ]
        found.sort(key=_shape_code)
        out.extend(shape_to_tree(shape) for shape in found)
    return out


def is_comb(tree: LeveledTree) -> bool:
    """True when all branching nodes lie on a single root-to-leaf branch."""
    paths: list[tuple[int, ...]] = []

    def walk(node: TreeNode, path: tuple[int, ...]) -> None:
        if len(node.children) >= 2:
            paths.append(path)
        for i, child in enumerate(node.children):
            walk(child, path + (i,))

    walk(tree.root, ())
    paths.sort(key=len)
    for shorter, longer in zip(paths, paths[1:]):
        if longer[: len(shorter)] != shorter:
            return False
    return True


def comb_tree(leaves: int) -> LeveledTree:
    """The full comb: height leaves-1, one binary split per level, all on
    the leftmost branch."""
    if leaves < 2:
        raise ValueError("a comb needs at least two leaves")
    shape: Shape = ((), ())
    for _ in range(leaves - 2):
        chain: Shape = ()
        depth = 1 if not shape else _height(shape)
        for _ in range(depth):
            chain = (chain,)
        shape = (shape, chain)
    return shape_to_tree(shape)


def _height(shape: Shape) -> int:
    return 0 if not shape else 1 + _height(shape[0])


def tree_degree(tree: LeveledTree) -> int:
    """Ramsey degree straight from the tree: sibling orderings divided by
    automorphisms."""
    orders = count_sibling_orderings(tree)
    autos = count_automorphisms(tree)
    if orders % autos != 0:
        raise InternalNonIntegerTau(f"{orders} not divisible by {autos}")
    return orders // autos


@dataclass(frozen=True)
class ShapeFinding:
    code: CanonicalCode
    degree: int
    comb: bool


@dataclass(frozen=True)
class ExtremalReport:
    leaves: int
    shape_count: int
    max_degree: int
    comb_degree: int
    argmax: tuple[ShapeFinding, ...]
    all_combs: bool


def extremal_scan(leaves: int, max_leaves: int = 7) -> ExtremalReport:
    """Scan every shape with the given leaf count and report the maximum
    Ramsey degree, the shapes attaining it, and whether they are combs."""
    if leaves < 2:
        raise ValueError("scan needs at least two leaves")
    if leaves > max_leaves:
        raise ValueError(f"scan capped at {max_leaves} leaves")
    shapes = all_tree_shapes(leaves)
    degrees = [tree_degree(tree) for tree in shapes]
    best = max(degrees)
    argmax = tuple(
        ShapeFinding(canonical_code(tree), degree, is_comb(tree))
        for tree, degree in zip(shapes, degrees)
        if degree == best
    )
    return ExtremalReport(
        leaves=leaves,
        shape_count=len(shapes),
        max_degree=best,
        comb_degree=tree_degree(comb_tree(leaves)),
        argmax=argmax,
        all_combs=all(finding.comb for finding in argmax),
    )


def branching_vectors(height: int) -> Iterator[tuple[int, ...]]:
    """Uniform branching vectors (every entry >= 2) of the given height in
    nondecreasing leaf count, ties broken lexicographically; infinite for
    height >= 1."""
    if height == 0:
        yield ()
        return
    leaves = 2 ** height
    while True:
        yield from _vectors_with_product(height, leaves)
        leaves += 1


def _vectors_with_product(height: int, product: int) -> Iterator[tuple[int, ...]]:
    if height == 1:
        if product >= 2:
            yield (product,)
        return
    for b in range(2, product + 1):
        if product % b == 0:
            for rest in _vectors_with_product(height - 1, product // b):
                yield (b,) + rest


def uniform_tree(
    vector: tuple[int, ...], levels: DistanceSet, prefix: str = "z"
) -> LeveledTree:
    """Complete tree where every depth-l node has vector[l] children."""
    if len(vector) != len(levels):
        raise ValueError("branching vector length must match the level count")
    counter = iter(range(1, 10 ** 9))

    def build(depth: int) -> TreeNode:
        if depth == len(vector):
            return TreeNode(label=f"{prefix}{next(counter)}")
        return TreeNode(children=tuple(build(depth + 1) for _ in range(vector[depth])))

    return LeveledTree(build(0), levels)
