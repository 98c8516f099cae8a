"""Duality between convexly ordered ultrametric spaces and leveled trees.

A leveled tree of height n is rooted, keeps every leaf at depth n, and
carries a strictly decreasing list of n level distances.  Leaves are the
points of the dual space, the distance between two leaves is the level
distance of their deepest common ancestor, and left-to-right leaf order is
a convex order.  Conversely a space plus a convex order determines such a
tree whose nodes at depth m are the balls of the m-th distance.

Every level above the leaves must contain at least one node with two or
more children; this keeps the level distances exactly the realized
distances of the dual space and makes the correspondence a bijection.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator

from .errors import FormatError, NonConvexOrder
from .rational import format_rational, parse_rational
from .spaces import (
    ConvexOrder,
    DistanceSet,
    UltrametricSpace,
    _order_sequence,
    distance_set,
    is_convex_order,
)

_ZERO = Fraction(0)


@dataclass(frozen=True)
class TreeNode:
    children: tuple["TreeNode", ...] = ()
    label: str | None = None

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True, order=True)
class CanonicalCode:
    """Order-comparable token string identifying a tree up to a
    level-preserving, parent-respecting bijection (sibling order and leaf
    labels ignored)."""

    text: str


@dataclass(frozen=True)
class LeveledTree:
    root: TreeNode
    levels: DistanceSet

    def __post_init__(self):
        height = len(self.levels)
        branching = [False] * height
        labels = []

        def walk(node: TreeNode, depth: int) -> None:
            if node.is_leaf:
                if depth != height:
                    raise ValueError(f"leaf at depth {depth}, expected {height}")
                if node.label is None:
                    raise ValueError("leaf without a label")
                labels.append(node.label)
                return
            if node.label is not None:
                raise ValueError("internal node carries a label")
            if depth >= height:
                raise ValueError("internal node below the leaf level")
            if len(node.children) >= 2:
                branching[depth] = True
            for child in node.children:
                walk(child, depth + 1)

        walk(self.root, 0)
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate leaf labels")
        for depth, has in enumerate(branching):
            if not has:
                raise ValueError(
                    f"level {depth} has no branching node; its distance is unrealized"
                )

    @property
    def height(self) -> int:
        return len(self.levels)

    def leaves(self) -> list[TreeNode]:
        out: list[TreeNode] = []

        def walk(node: TreeNode) -> None:
            if node.is_leaf:
                out.append(node)
                return
            for child in node.children:
                walk(child)

        walk(self.root)
        return out

    def leaf_labels(self) -> tuple[str, ...]:
        return tuple(leaf.label for leaf in self.leaves())  # type: ignore[misc]

    def iter_nodes(self) -> Iterator[tuple[TreeNode, int]]:
        """Depth-first (node, depth) pairs, root first."""
        stack = [(self.root, 0)]
        while stack:
            node, depth = stack.pop()
            yield node, depth
            for child in reversed(node.children):
                stack.append((child, depth + 1))


def space_to_tree(space: UltrametricSpace, order) -> LeveledTree:
    """Tree of the ordered space: depth-m nodes are the balls of the m-th
    realized distance, siblings sorted so the leaf sequence equals the
    given convex order."""
    seq = _order_sequence(order)
    if not is_convex_order(space, seq):
        raise NonConvexOrder(f"order {seq} is not convex for this space")
    radii = distance_set(space)
    height = len(radii)

    def build(lo: int, hi: int, level: int) -> TreeNode:
        if level == height:
            return TreeNode(label=space.labels[seq[lo]])
        threshold = radii[level + 1] if level + 1 < height else _ZERO
        kids = []
        start = lo
        for stop in range(lo + 1, hi + 1):
            if stop == hi or space.dist[seq[start]][seq[stop]] > threshold:
                kids.append(build(start, stop, level + 1))
                start = stop
        return TreeNode(children=tuple(kids))

    return LeveledTree(build(0, space.size, 0), radii)


def tree_to_space(tree: LeveledTree) -> tuple[UltrametricSpace, ConvexOrder]:
    """Dual space of a tree: points are the leaves in left-to-right order,
    the distance of two leaves is the level distance of their deepest
    common ancestor, and the returned order is the identity."""
    labels = tree.leaf_labels()
    n = len(labels)
    dist = [[_ZERO] * n for _ in range(n)]
    counter = iter(range(n))

    def walk(node: TreeNode, depth: int) -> list[int]:
        if node.is_leaf:
            return [next(counter)]
        groups = [walk(child, depth + 1) for child in node.children]
        for gi in range(len(groups)):
            for gj in range(gi + 1, len(groups)):
                for s in groups[gi]:
                    for t in groups[gj]:
                        dist[s][t] = dist[t][s] = tree.levels[depth]
        return [leaf for group in groups for leaf in group]

    walk(tree.root, 0)
    space = UltrametricSpace(labels, tuple(tuple(row) for row in dist))
    return space, ConvexOrder(tuple(range(n)))


def _code_and_aut(node: TreeNode) -> tuple[str, int]:
    # aut(node) = prod of child auts * prod over equal-code groups of mult!
    if node.is_leaf:
        return "()", 1
    coded = sorted(_code_and_aut(child) for child in node.children)
    aut = 1
    run_code, run_length = None, 0
    for code, child_aut in coded:
        aut *= child_aut
        if code == run_code:
            run_length += 1
        else:
            aut *= factorial(run_length)
            run_code, run_length = code, 1
    aut *= factorial(run_length)
    return "(" + "".join(code for code, _ in coded) + ")", aut


def count_automorphisms(tree: LeveledTree) -> int:
    """Number of level-preserving, parent-respecting self-bijections; equals
    the isometry count of the dual space."""
    return _code_and_aut(tree.root)[1]


def canonical_code(tree: LeveledTree) -> CanonicalCode:
    return CanonicalCode(_code_and_aut(tree.root)[0])


def count_sibling_orderings(tree: LeveledTree) -> int:
    """Product of (child count)! over internal nodes: the number of sibling
    rearrangements, i.e. of convex orders of the dual space."""
    total = 1
    for node, _ in tree.iter_nodes():
        if not node.is_leaf:
            total *= factorial(len(node.children))
    return total


# --- UTREE text format -----------------------------------------------------
#
#   utree v1
#   levels <a_0> ... <a_{n-1}>      empty list allowed for a single point
#   ((a b) (c))                     nested parentheses, leaves are labels

def format_utree(tree: LeveledTree) -> str:
    def render(node: TreeNode) -> str:
        if node.is_leaf:
            return node.label  # type: ignore[return-value]
        return "(" + " ".join(render(child) for child in node.children) + ")"

    levels = " ".join(format_rational(v) for v in tree.levels)
    header = f"levels {levels}" if levels else "levels"
    return "\n".join(["utree v1", header, render(tree.root)]) + "\n"


def parse_utree(text: str) -> LeveledTree:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "utree v1":
        raise FormatError("expected 'utree v1' header")
    if len(lines) < 3 or not lines[1].startswith("levels"):
        raise FormatError("expected 'levels' line and a tree line")
    level_tokens = lines[1].split()[1:]
    values = tuple(parse_rational(tok) for tok in level_tokens)
    body = " ".join(lines[2:])

    tokens = body.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse_node() -> TreeNode:
        nonlocal pos
        if pos >= len(tokens):
            raise FormatError("unexpected end of tree text")
        token = tokens[pos]
        pos += 1
        if token == ")":
            raise FormatError("unexpected ')'")
        if token != "(":
            return TreeNode(label=token)
        kids = []
        while pos < len(tokens) and tokens[pos] != ")":
            kids.append(parse_node())
        if pos >= len(tokens):
            raise FormatError("missing ')'")
        pos += 1
        if not kids:
            raise FormatError("internal node with no children")
        return TreeNode(children=tuple(kids))

    root = parse_node()
    if pos != len(tokens):
        raise FormatError("trailing tokens after tree")
    try:
        return LeveledTree(root, DistanceSet(values))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
