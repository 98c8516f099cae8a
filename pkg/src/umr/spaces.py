"""Finite ultrametric spaces with exact rational distances.

An ultrametric space satisfies the strong triangle inequality
``d(x,z) <= max(d(x,y), d(y,z))``, which forces the closed balls of any
fixed radius to partition the point set.  A linear order on the points is
*convex* when every ball is an interval of it; convex orders are the
combinatorial backbone of everything else in this package.

Point identity is by label.  Two spaces compare equal when they carry the
same label set with the same label-to-label distances, regardless of the
storage order of the rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import (
    AsymmetricMatrix,
    DuplicateLabel,
    EmptySpace,
    FormatError,
    NonzeroDiagonal,
    NonpositiveOffDiagonal,
    UltrametricViolation,
)
from .rational import as_fraction, format_rational, parse_rational

Matrix = tuple[tuple[Fraction, ...], ...]

_ZERO = Fraction(0)


@dataclass(frozen=True)
class DistanceSet:
    """Distinct distances of a space, strictly decreasing, all positive."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        for v in self.values:
            if v <= 0:
                raise ValueError(f"distance {v} is not positive")
        for a, b in zip(self.values, self.values[1:]):
            if a <= b:
                raise ValueError("distances must be strictly decreasing")

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, index: int) -> Fraction:
        return self.values[index]


@dataclass(frozen=True)
class ConvexOrder:
    """A permutation of point indices under which every ball is an interval."""

    sequence: tuple[int, ...]

    def __iter__(self) -> Iterator[int]:
        return iter(self.sequence)

    def __len__(self) -> int:
        return len(self.sequence)


@dataclass(frozen=True, eq=False)
class UltrametricSpace:
    labels: tuple[str, ...]
    dist: Matrix

    @property
    def size(self) -> int:
        return len(self.labels)

    def d(self, i: int, j: int) -> Fraction:
        return self.dist[i][j]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def restrict(self, points: Sequence[int]) -> "UltrametricSpace":
        """Induced subspace on the given point indices, labels preserved."""
        pts = tuple(points)
        return UltrametricSpace(
            tuple(self.labels[p] for p in pts),
            tuple(tuple(self.dist[p][q] for q in pts) for p in pts),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, UltrametricSpace):
            return NotImplemented
        if sorted(self.labels) != sorted(other.labels):
            return False
        om = {lab: i for i, lab in enumerate(other.labels)}
        n = self.size
        return all(
            self.dist[i][j] == other.dist[om[self.labels[i]]][om[self.labels[j]]]
            for i in range(n)
            for j in range(i + 1, n)
        )

    def __hash__(self) -> int:
        pairs = frozenset(
            (frozenset((self.labels[i], self.labels[j])), self.dist[i][j])
            for i in range(self.size)
            for j in range(i + 1, self.size)
        )
        return hash((frozenset(self.labels), pairs))

    def __repr__(self) -> str:
        return f"UltrametricSpace({list(self.labels)!r}, {self.size} points)"


def validate_space(matrix: Sequence[Sequence], labels: Sequence[str]) -> UltrametricSpace:
    """Check every space invariant and return the validated space.

    Raises the error naming the first witness found, scanning rows and
    unordered pairs in index order: EmptySpace, DuplicateLabel,
    NonzeroDiagonal, AsymmetricMatrix, NonpositiveOffDiagonal, then
    UltrametricViolation(x, y, z) where d(x,y) > max(d(x,z), d(z,y)).
    """
    names = tuple(labels)
    n = len(names)
    if n == 0:
        raise EmptySpace()
    seen = set()
    for name in names:
        if name in seen:
            raise DuplicateLabel(name)
        seen.add(name)
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square and match the label count")
    dist = tuple(tuple(as_fraction(v) for v in row) for row in matrix)
    for i in range(n):
        if dist[i][i] != 0:
            raise NonzeroDiagonal(names[i])
    for i in range(n):
        for j in range(i + 1, n):
            if dist[i][j] != dist[j][i]:
                raise AsymmetricMatrix(names[i], names[j])
            if dist[i][j] <= 0:
                raise NonpositiveOffDiagonal(names[i], names[j])
    for i in range(n):
        for j in range(i + 1, n):
            for z in range(n):
                if z == i or z == j:
                    continue
                if dist[i][j] > max(dist[i][z], dist[z][j]):
                    raise UltrametricViolation(names[i], names[j], names[z])
    return UltrametricSpace(names, dist)


def space_from_distances(labels: Sequence[str], pairs: dict) -> UltrametricSpace:
    """Build and validate a space from ``{(a, b): distance}`` label pairs."""
    names = tuple(labels)
    index = {lab: i for i, lab in enumerate(names)}
    n = len(names)
    rows = [[_ZERO] * n for _ in range(n)]
    for (a, b), value in pairs.items():
        v = as_fraction(value)
        rows[index[a]][index[b]] = v
        rows[index[b]][index[a]] = v
    return validate_space(rows, names)


def distance_set(space: UltrametricSpace) -> DistanceSet:
    """Distinct off-diagonal distances, largest first."""
    values = {
        space.dist[i][j]
        for i in range(space.size)
        for j in range(i + 1, space.size)
    }
    return DistanceSet(tuple(sorted(values, reverse=True)))


def ball_partition(space: UltrametricSpace, radius: Fraction) -> tuple[tuple[int, ...], ...]:
    """Closed balls of the given radius; in an ultrametric space they
    partition the points.  Blocks are sorted by smallest member."""
    r = as_fraction(radius)
    if r <= 0:
        raise ValueError("radius must be positive")
    blocks = []
    placed = [False] * space.size
    for i in range(space.size):
        if placed[i]:
            continue
        block = tuple(j for j in range(space.size) if space.dist[i][j] <= r)
        for j in block:
            placed[j] = True
        blocks.append(block)
    return tuple(blocks)


def _order_sequence(order) -> tuple[int, ...]:
    if isinstance(order, ConvexOrder):
        return order.sequence
    return tuple(order)


def is_convex_order(space: UltrametricSpace, order) -> bool:
    """True iff every ball at every realized radius is an interval of the
    order."""
    seq = _order_sequence(order)
    if sorted(seq) != list(range(space.size)):
        raise ValueError("order must be a permutation of the point indices")
    pos = [0] * space.size
    for p, point in enumerate(seq):
        pos[point] = p
    for radius in distance_set(space):
        for block in ball_partition(space, radius):
            places = [pos[p] for p in block]
            if max(places) - min(places) + 1 != len(places):
                return False
    return True


def canonical_convex_order(space: UltrametricSpace) -> ConvexOrder:
    """Deterministic convex order: refine balls radius by radius, visiting
    blocks in order of their smallest point index."""
    radii = distance_set(space).values
    height = len(radii)
    sequence: list[int] = []

    def arrange(points: list[int], level: int) -> None:
        if len(points) == 1:
            sequence.append(points[0])
            return
        threshold = radii[level] if level < height else _ZERO
        blocks: list[list[int]] = []
        for p in sorted(points):
            for block in blocks:
                if space.dist[block[0]][p] <= threshold:
                    block.append(p)
                    break
            else:
                blocks.append([p])
        if len(blocks) == 1:
            arrange(blocks[0], level + 1)
            return
        for block in blocks:
            arrange(block, level + 1)

    arrange(list(range(space.size)), 1)
    return ConvexOrder(tuple(sequence))


def order_labels(space: UltrametricSpace, order) -> tuple[str, ...]:
    return tuple(space.labels[p] for p in _order_sequence(order))


# --- USPACE text format ----------------------------------------------------
#
#   uspace v1
#   points <n>
#   labels <name_1> ... <name_n>
#   d <name_i> <name_j> <p/q>        one line per unordered pair

def format_uspace(space: UltrametricSpace) -> str:
    lines = [
        "uspace v1",
        f"points {space.size}",
        "labels " + " ".join(space.labels),
    ]
    for i in range(space.size):
        for j in range(i + 1, space.size):
            lines.append(
                f"d {space.labels[i]} {space.labels[j]} "
                f"{format_rational(space.dist[i][j])}"
            )
    return "\n".join(lines) + "\n"


def parse_uspace(text: str) -> UltrametricSpace:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "uspace v1":
        raise FormatError("expected 'uspace v1' header")
    if len(lines) < 3 or not lines[1].startswith("points "):
        raise FormatError("expected 'points <n>' line")
    try:
        n = int(lines[1].split()[1])
    except (IndexError, ValueError) as exc:
        raise FormatError("bad points line") from exc
    label_parts = lines[2].split()
    if not label_parts or label_parts[0] != "labels" or len(label_parts) != n + 1:
        raise FormatError("expected 'labels' line with one name per point")
    names = tuple(label_parts[1:])
    index = {lab: i for i, lab in enumerate(names)}
    if len(index) != n:
        raise DuplicateLabel(next(l for l in names if names.count(l) > 1))
    rows = [[_ZERO] * n for _ in range(n)]
    filled = set()
    for line in lines[3:]:
        parts = line.split()
        if len(parts) != 4 or parts[0] != "d":
            raise FormatError(f"bad distance line {line!r}")
        a, b = parts[1], parts[2]
        if a not in index or b not in index:
            raise FormatError(f"unknown label in {line!r}")
        key = frozenset((a, b))
        if a == b or key in filled:
            raise FormatError(f"repeated or diagonal pair in {line!r}")
        filled.add(key)
        value = parse_rational(parts[3])
        rows[index[a]][index[b]] = value
        rows[index[b]][index[a]] = value
    if len(filled) != n * (n - 1) // 2:
        raise FormatError("missing distance lines")
    return validate_space(rows, names)
