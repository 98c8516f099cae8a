"""Executable model of the countable homogeneous ultrametric space over a
finite distance menu.

Points are finitely supported rational-valued functions on the menu.  The
distance of two distinct points is the largest coordinate where they
differ, and the lexicographic order compares the values at that same
coordinate.  Under these definitions every finite subset induces a
convexly ordered ultrametric space with distances drawn from the menu.

Automorphisms (order-preserving self-isometries) are represented as finite
move lists.  A ``Translate`` adds a fixed point coordinatewise.  A
``CoordMap`` acts inside one ball: on the points that agree with a stored
center above some scale s and whose value at s exceeds a threshold, it
applies a strictly increasing piecewise-linear rational bijection at s and
adds fixed shifts below s; everything else is untouched.  The threshold
gate is what lets a CoordMap move one point of a ball onto another while
fixing previously matched points sitting lower in the order.

``extend_isometry`` grows any finite order-preserving isometry one point
at a time into a genuine automorphism: a translation matches the first
pair, and each further point is captured by one CoordMap.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import (
    DuplicatePoint,
    FormatError,
    NotOrderPreserving,
    NotPartialIsometry,
)
from .rational import as_fraction, format_rational, parse_rational

_ZERO = Fraction(0)

LESS = -1
EQUAL = 0
GREATER = 1


@dataclass(frozen=True)
class DistanceMenu:
    """Allowed distances: nonempty, strictly decreasing, positive."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("menu must be nonempty")
        for v in self.values:
            if v <= 0:
                raise ValueError("menu values must be positive")
        for a, b in zip(self.values, self.values[1:]):
            if a <= b:
                raise ValueError("menu must be strictly decreasing")

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, index: int) -> Fraction:
        return self.values[index]

    def __contains__(self, value) -> bool:
        return value in self.values


def menu_of(*values) -> DistanceMenu:
    return DistanceMenu(tuple(as_fraction(v) for v in values))


@dataclass(frozen=True)
class QsPoint:
    """Finitely supported function: (scale, value) pairs, scales strictly
    decreasing, values nonzero."""

    coords: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        for s, v in self.coords:
            if s <= 0:
                raise ValueError("scales must be positive")
            if v == 0:
                raise ValueError("zero values must be dropped")
        for (a, _), (b, _) in zip(self.coords, self.coords[1:]):
            if a <= b:
                raise ValueError("scales must be strictly decreasing")

    def value_at(self, scale: Fraction) -> Fraction:
        for s, v in self.coords:
            if s == scale:
                return v
            if s < scale:
                break
        return _ZERO

    def support(self) -> tuple[Fraction, ...]:
        return tuple(s for s, _ in self.coords)

    def restrict_above(self, scale: Fraction) -> "QsPoint":
        return QsPoint(tuple((s, v) for s, v in self.coords if s > scale))

    def __add__(self, other: "QsPoint") -> "QsPoint":
        items = dict(self.coords)
        for s, v in other.coords:
            items[s] = items.get(s, _ZERO) + v
        return qs_point(items)

    def __neg__(self) -> "QsPoint":
        return QsPoint(tuple((s, -v) for s, v in self.coords))

    def __sub__(self, other: "QsPoint") -> "QsPoint":
        return self + (-other)


ZERO_POINT = QsPoint()


def qs_point(mapping) -> QsPoint:
    """Normalize a {scale: value} mapping or pair iterable into a QsPoint."""
    items = dict(mapping) if not hasattr(mapping, "items") else mapping.items()
    cleaned = sorted(
        ((as_fraction(s), as_fraction(v)) for s, v in items if v != 0),
        key=lambda pair: pair[0],
        reverse=True,
    )
    return QsPoint(tuple(cleaned))


def _check_support(point: QsPoint, menu: DistanceMenu) -> None:
    for s in point.support():
        if s not in menu:
            raise ValueError(f"coordinate {format_rational(s)} not in menu")


def _largest_difference(x: QsPoint, y: QsPoint):
    """(scale, x value, y value) at the largest differing coordinate, or
    None when the points are equal."""
    cx, cy = x.coords, y.coords
    ix = iy = 0
    while ix < len(cx) or iy < len(cy):
        if iy >= len(cy) or (ix < len(cx) and cx[ix][0] > cy[iy][0]):
            return cx[ix][0], cx[ix][1], _ZERO
        if ix >= len(cx) or cy[iy][0] > cx[ix][0]:
            return cy[iy][0], _ZERO, cy[iy][1]
        if cx[ix][1] != cy[iy][1]:
            return cx[ix][0], cx[ix][1], cy[iy][1]
        ix += 1
        iy += 1
    return None


def qs_distance(x: QsPoint, y: QsPoint, menu: DistanceMenu | None = None) -> Fraction:
    """0 for equal points, otherwise the largest coordinate where they
    differ."""
    if menu is not None:
        _check_support(x, menu)
        _check_support(y, menu)
    diff = _largest_difference(x, y)
    return _ZERO if diff is None else diff[0]


def qs_lex_compare(x: QsPoint, y: QsPoint, menu: DistanceMenu | None = None) -> int:
    """LESS/EQUAL/GREATER by the values at the largest differing
    coordinate."""
    if menu is not None:
        _check_support(x, menu)
        _check_support(y, menu)
    diff = _largest_difference(x, y)
    if diff is None:
        return EQUAL
    return LESS if diff[1] < diff[2] else GREATER


@dataclass(frozen=True)
class PiecewiseLinearMap:
    """Strictly increasing piecewise-linear bijection of the rationals onto
    themselves: the identity up to the first breakpoint, then the given
    slope on each successive segment (the last slope extends to infinity)."""

    breakpoints: tuple[Fraction, ...] = ()
    slopes: tuple[Fraction, ...] = ()

    def __post_init__(self):
        if len(self.breakpoints) != len(self.slopes):
            raise ValueError("one slope per breakpoint")
        for a, b in zip(self.breakpoints, self.breakpoints[1:]):
            if a >= b:
                raise ValueError("breakpoints must be strictly increasing")
        for m in self.slopes:
            if m <= 0:
                raise ValueError("slopes must be positive")

    def _anchor_values(self) -> list[Fraction]:
        values = []
        if self.breakpoints:
            values.append(self.breakpoints[0])
            for i in range(1, len(self.breakpoints)):
                values.append(
                    values[-1]
                    + self.slopes[i - 1] * (self.breakpoints[i] - self.breakpoints[i - 1])
                )
        return values

    def __call__(self, x: Fraction) -> Fraction:
        if not self.breakpoints or x <= self.breakpoints[0]:
            return x
        values = self._anchor_values()
        for i in range(len(self.breakpoints) - 1, -1, -1):
            if x >= self.breakpoints[i]:
                return values[i] + self.slopes[i] * (x - self.breakpoints[i])
        raise AssertionError("unreachable")

    def inverse(self) -> "PiecewiseLinearMap":
        values = self._anchor_values()
        return PiecewiseLinearMap(
            tuple(values), tuple(1 / m for m in self.slopes)
        )


def stretch_above(alpha: Fraction, source: Fraction, image: Fraction) -> PiecewiseLinearMap:
    """Identity up to alpha, then the increasing map taking source to image
    (both above alpha) with a slope-1 tail."""
    if source <= alpha or image <= alpha:
        raise ValueError("source and image must lie above alpha")
    if source == image:
        return PiecewiseLinearMap((alpha,), (Fraction(1),))
    return PiecewiseLinearMap(
        (alpha, source),
        ((image - alpha) / (source - alpha), Fraction(1)),
    )


@dataclass(frozen=True)
class Translate:
    offset: QsPoint

    def apply(self, point: QsPoint) -> QsPoint:
        return point + self.offset

    def invert(self) -> "Translate":
        return Translate(-self.offset)


@dataclass(frozen=True)
class CoordMap:
    """Ball move: on points agreeing with ``center`` above ``scale`` whose
    value at ``scale`` exceeds ``threshold``, remap the value at ``scale``
    through ``value_map`` and add the fixed ``shifts`` below ``scale``."""

    scale: Fraction
    center: QsPoint
    threshold: Fraction
    value_map: PiecewiseLinearMap
    shifts: tuple[tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        for s, _ in self.center.coords:
            if s <= self.scale:
                raise ValueError("center must live strictly above the scale")
        for t, delta in self.shifts:
            if t >= self.scale:
                raise ValueError("shifts must live strictly below the scale")
            if delta == 0:
                raise ValueError("zero shifts must be dropped")
        if self.value_map.breakpoints and self.value_map.breakpoints[0] < self.threshold:
            raise ValueError("value map must be the identity up to the threshold")

    def apply(self, point: QsPoint) -> QsPoint:
        if point.restrict_above(self.scale) != self.center:
            return point
        value = point.value_at(self.scale)
        if value <= self.threshold:
            return point
        items = dict(point.coords)
        items[self.scale] = self.value_map(value)
        for t, delta in self.shifts:
            items[t] = items.get(t, _ZERO) + delta
        return qs_point(items)

    def invert(self) -> "CoordMap":
        return CoordMap(
            scale=self.scale,
            center=self.center,
            threshold=self.threshold,
            value_map=self.value_map.inverse(),
            shifts=tuple((t, -delta) for t, delta in self.shifts),
        )


Move = Translate | CoordMap


@dataclass(frozen=True)
class QsAutomorphism:
    moves: tuple[Move, ...] = ()

    def __call__(self, point: QsPoint) -> QsPoint:
        for move in self.moves:
            point = move.apply(point)
        return point


IDENTITY = QsAutomorphism()


def apply_automorphism(auto: QsAutomorphism, point: QsPoint) -> QsPoint:
    """Evaluate the move list left to right."""
    return auto(point)


def invert_automorphism(auto: QsAutomorphism) -> QsAutomorphism:
    return QsAutomorphism(tuple(move.invert() for move in reversed(auto.moves)))


def _vector(point: QsPoint, menu: DistanceMenu) -> tuple[Fraction, ...]:
    """Coordinates along the menu, largest scale first.  Plain tuple
    comparison of vectors is exactly the lexicographic point order."""
    return tuple(point.value_at(s) for s in menu)


def extend_isometry(
    pairs: Sequence[tuple[QsPoint, QsPoint]], menu: DistanceMenu
) -> QsAutomorphism:
    """Extend a finite distance- and order-preserving map to a full
    automorphism.

    The pairs are validated pairwise first (errors cite the positions in
    the given sequence), then sorted by the order of their sources.  The
    first pair is matched by a translation.  Each later source x, already
    carried to h(x) by the moves so far, is captured by one CoordMap: with
    s the distance from the previous source, h(x) and the wanted target
    agree above s and both sit above all earlier targets at s, so a
    threshold strictly between leaves the earlier targets fixed while a
    stretch at s plus shifts below s move h(x) exactly onto the target.
    """
    sources = [p for p, _ in pairs]
    targets = [q for _, q in pairs]
    for p in sources + targets:
        _check_support(p, menu)
    n = len(pairs)
    for i in range(n):
        for j in range(i + 1, n):
            if sources[i] == sources[j]:
                raise DuplicatePoint(f"sources {i} and {j} coincide")
            if qs_distance(sources[i], sources[j]) != qs_distance(targets[i], targets[j]):
                raise NotPartialIsometry(i, j)
            if qs_lex_compare(sources[i], sources[j]) != qs_lex_compare(targets[i], targets[j]):
                raise NotOrderPreserving(i, j)
    if n == 0:
        return IDENTITY
    ranking = sorted(range(n), key=lambda i: _vector(sources[i], menu))
    xs = [sources[i] for i in ranking]
    ys = [targets[i] for i in ranking]

    moves: list[Move] = []
    if xs[0] != ys[0]:
        moves.append(Translate(ys[0] - xs[0]))

    def run(point: QsPoint) -> QsPoint:
        for move in moves:
            point = move.apply(point)
        return point

    for m in range(1, n):
        carried = run(xs[m])
        wanted = ys[m]
        if carried == wanted:
            continue
        s = qs_distance(xs[m - 1], xs[m])
        # geometry of the sorted configuration, guaranteed by validation
        assert qs_distance(carried, wanted) <= s
        low = ys[m - 1].value_at(s)
        high = min(wanted.value_at(s), carried.value_at(s))
        assert low < high
        alpha = (low + high) / 2
        shifts = tuple(
            (t, wanted.value_at(t) - carried.value_at(t))
            for t in menu
            if t < s and wanted.value_at(t) != carried.value_at(t)
        )
        moves.append(
            CoordMap(
                scale=s,
                center=wanted.restrict_above(s),
                threshold=alpha,
                value_map=stretch_above(alpha, carried.value_at(s), wanted.value_at(s)),
                shifts=shifts,
            )
        )
    return QsAutomorphism(tuple(moves))


# --- randomized generation and the homogeneity harness ----------------------

def random_point(
    menu: DistanceMenu,
    rng: random.Random,
    density: float = 0.75,
    span: int = 18,
    grid: int = 6,
) -> QsPoint:
    """Random finitely supported point: each coordinate present with the
    given density, values on the integer grid scaled by 1/grid."""
    items = {}
    for s in menu:
        if rng.random() < density:
            items[s] = Fraction(rng.randint(-span, span), grid)
    return qs_point(items)


def random_automorphism(
    menu: DistanceMenu, rng: random.Random, max_moves: int = 3
) -> QsAutomorphism:
    """Random composition of valid primitive moves."""
    slopes = (
        Fraction(1, 3), Fraction(1, 2), Fraction(2, 3),
        Fraction(1), Fraction(3, 2), Fraction(2), Fraction(3),
    )
    moves: list[Move] = []
    for _ in range(rng.randint(1, max_moves)):
        if rng.random() < 0.5:
            moves.append(Translate(random_point(menu, rng)))
            continue
        scale = menu[rng.randrange(len(menu))]
        alpha = Fraction(rng.randint(-18, 18), 6)
        breakpoints = [alpha]
        for _ in range(rng.randint(0, 2)):
            breakpoints.append(breakpoints[-1] + Fraction(rng.randint(1, 12), 6))
        chosen = tuple(rng.choice(slopes) for _ in breakpoints)
        shift_items = []
        for t in menu:
            if t < scale and rng.random() < 0.5:
                delta = Fraction(rng.randint(-12, 12), 6)
                if delta != 0:
                    shift_items.append((t, delta))
        shifts = tuple(shift_items)
        moves.append(
            CoordMap(
                scale=scale,
                center=random_point(menu, rng).restrict_above(scale),
                threshold=alpha,
                value_map=PiecewiseLinearMap(tuple(breakpoints), chosen),
                shifts=shifts,
            )
        )
    return QsAutomorphism(tuple(moves))


@dataclass(frozen=True)
class HomogeneityReport:
    trials: int
    passes: int
    failures: tuple[int, ...]

    @property
    def all_passed(self) -> bool:
        return not self.failures


def check_homogeneity(
    menu: DistanceMenu,
    n: int,
    trials: int,
    seed: int,
    samples: int = 100,
) -> HomogeneityReport:
    """Randomized end-to-end exercise of the extension algorithm.

    Each trial draws n distinct points, pushes them through a random
    automorphism to get an order-isometric image, extends the finite map,
    and then checks that the extension hits every target exactly and
    preserves distance and order on every pair from an independent sample.
    Trial i uses seed + i, so trials are independent of scheduling.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    failures = []
    for t in range(trials):
        rng = random.Random(seed + t)
        points: list[QsPoint] = []
        while len(points) < n:
            candidate = random_point(menu, rng)
            if candidate not in points:
                points.append(candidate)
        scrambler = random_automorphism(menu, rng)
        images = [scrambler(p) for p in points]
        try:
            extension = extend_isometry(list(zip(points, images)), menu)
        except Exception:
            failures.append(t)
            continue
        ok = all(extension(p) == q for p, q in zip(points, images))
        if ok:
            sample = [random_point(menu, rng) for _ in range(samples)]
            vec_in = [_vector(p, menu) for p in sample]
            vec_out = [_vector(extension(p), menu) for p in sample]
            for i in range(samples):
                vi, wi = vec_in[i], vec_out[i]
                for j in range(i + 1, samples):
                    if _first_diff(vi, vec_in[j]) != _first_diff(wi, vec_out[j]) or (
                        (vi < vec_in[j]) != (wi < vec_out[j])
                    ):
                        ok = False
                        break
                if not ok:
                    break
        if not ok:
            failures.append(t)
    return HomogeneityReport(trials, trials - len(failures), tuple(failures))


def _first_diff(u: tuple, v: tuple) -> int:
    for i in range(len(u)):
        if u[i] != v[i]:
            return i
    return -1


# --- text formats ------------------------------------------------------------
#
#   menu v1                qpoint v1
#   1                      1 2
#   1/2                    1/2 -3/4

def format_menu(menu: DistanceMenu) -> str:
    return "\n".join(["menu v1"] + [format_rational(v) for v in menu]) + "\n"


def parse_menu(text: str) -> DistanceMenu:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "menu v1":
        raise FormatError("expected 'menu v1' header")
    if len(lines) == 1:
        raise FormatError("menu must list at least one distance")
    try:
        return DistanceMenu(tuple(parse_rational(tok) for tok in lines[1:]))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def format_qpoint(point: QsPoint) -> str:
    lines = ["qpoint v1"]
    for s, v in point.coords:
        lines.append(f"{format_rational(s)} {format_rational(v)}")
    return "\n".join(lines) + "\n"


def parse_qpoint(text: str, menu: DistanceMenu) -> QsPoint:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "qpoint v1":
        raise FormatError("expected 'qpoint v1' header")
    items = {}
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"bad coordinate line {line!r}")
        s = parse_rational(parts[0])
        if s not in menu:
            raise FormatError(f"coordinate {parts[0]} not in menu")
        if s in items:
            raise FormatError(f"repeated coordinate {parts[0]}")
        items[s] = parse_rational(parts[1])
    return qs_point(items)


def _inline_point(point: QsPoint) -> str:
    if not point.coords:
        return "0"
    return ",".join(
        f"{format_rational(s)}:{format_rational(v)}" for s, v in point.coords
    )


def _parse_inline_point(token: str) -> QsPoint:
    if token == "0":
        return ZERO_POINT
    items = {}
    for chunk in token.split(","):
        if ":" not in chunk:
            raise FormatError(f"bad point chunk {chunk!r}")
        s, v = chunk.split(":", 1)
        items[parse_rational(s)] = parse_rational(v)
    return qs_point(items)


def _inline_pairs(pairs: tuple[tuple[Fraction, Fraction], ...]) -> str:
    if not pairs:
        return "-"
    return ",".join(
        f"{format_rational(a)}:{format_rational(b)}" for a, b in pairs
    )


def _parse_inline_pairs(token: str) -> tuple[tuple[Fraction, Fraction], ...]:
    if token == "-":
        return ()
    out = []
    for chunk in token.split(","):
        if ":" not in chunk:
            raise FormatError(f"bad pair chunk {chunk!r}")
        a, b = chunk.split(":", 1)
        out.append((parse_rational(a), parse_rational(b)))
    return tuple(out)


def format_automorphism(auto: QsAutomorphism) -> str:
    lines = []
    for move in auto.moves:
        if isinstance(move, Translate):
            lines.append(f"translate {_inline_point(move.offset)}")
        else:
            phi = _inline_pairs(
                tuple(zip(move.value_map.breakpoints, move.value_map.slopes))
            )
            lines.append(
                f"coordmap s={format_rational(move.scale)}"
                f" center={_inline_point(move.center)}"
                f" alpha={format_rational(move.threshold)}"
                f" phi={phi}"
                f" shifts={_inline_pairs(move.shifts)}"
            )
    return "\n".join(lines) + ("\n" if lines else "")


def parse_automorphism(text: str, menu: DistanceMenu) -> QsAutomorphism:
    moves: list[Move] = []
    for line in (ln.strip() for ln in text.splitlines()):
        if not line:
            continue
        parts = line.split()
        if parts[0] == "translate" and len(parts) == 2:
            moves.append(Translate(_parse_inline_point(parts[1])))
            continue
        if parts[0] != "coordmap":
            raise FormatError(f"unknown move {line!r}")
        fields = {}
        for part in parts[1:]:
            if "=" not in part:
                raise FormatError(f"bad field {part!r}")
            key, value = part.split("=", 1)
            fields[key] = value
        try:
            pl_pairs = _parse_inline_pairs(fields["phi"])
            moves.append(
                CoordMap(
                    scale=parse_rational(fields["s"]),
                    center=_parse_inline_point(fields["center"]),
                    threshold=parse_rational(fields["alpha"]),
                    value_map=PiecewiseLinearMap(
                        tuple(a for a, _ in pl_pairs),
                        tuple(b for _, b in pl_pairs),
                    ),
                    shifts=_parse_inline_pairs(fields["shifts"]),
                )
            )
        except KeyError as exc:
            raise FormatError(f"missing coordmap field {exc}") from exc
        except ValueError as exc:
            raise FormatError(str(exc)) from exc
    auto = QsAutomorphism(tuple(moves))
    for move in auto.moves:
        if isinstance(move, Translate):
            _check_support(move.offset, menu)
    return auto
