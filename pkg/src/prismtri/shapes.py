"""Combinatorial model of two stacked regular n-gons.

Every vertex sits at an angle that is an integer multiple of pi/n: top vertex
``k`` at ``2k``, bottom vertex ``k`` at ``2k + delta`` where ``delta`` is 0 for
the prism and 1 for the antiprism.  Because cosine is strictly decreasing on
``[0, pi]``, the order of a linear functional that vanishes on a chord is
determined by folded angular distances alone, so everything here is integer
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum
from functools import lru_cache
from typing import NamedTuple

from .errors import DomainError


class Kind(str, Enum):
    PRISM = "prism"
    ANTIPRISM = "antiprism"


class Layer(IntEnum):
    TOP = 0
    BOTTOM = 1

    @property
    def letter(self) -> str:
        return "T" if self is Layer.TOP else "B"

    @property
    def opposite(self) -> Layer:
        return Layer.BOTTOM if self is Layer.TOP else Layer.TOP


@dataclass(frozen=True)
class ShapeSpec:
    """Which solid, and the number of polygon vertices."""

    kind: Kind
    n: int

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if not isinstance(self.n, int) or self.n < 3:
            raise DomainError(f"n must be an integer >= 3, got {self.n!r}")

    @classmethod
    def prism(cls, n: int) -> ShapeSpec:
        return cls(Kind.PRISM, n)

    @classmethod
    def antiprism(cls, n: int) -> ShapeSpec:
        return cls(Kind.ANTIPRISM, n)

    @property
    def delta(self) -> int:
        return 0 if self.kind is Kind.PRISM else 1

    def point(self, layer: Layer, index: int) -> PointId:
        return PointId(Layer(layer), index % self.n)

    def points(self) -> list[PointId]:
        """All 2n vertices, sorted by (layer, index)."""
        return [PointId(layer, k) for layer in Layer for k in range(self.n)]

    def angle_units(self, p: PointId) -> int:
        """Angle of ``p`` in units of pi/n."""
        return 2 * p.index + (self.delta if p.layer is Layer.BOTTOM else 0)

    def __str__(self):
        return f"{self.kind.value}-{self.n}"


class PointId(NamedTuple):
    layer: Layer
    index: int

    def __str__(self):
        return f"{self.layer.letter}{self.index}"

    def __repr__(self):
        return str(self)

    @classmethod
    def parse(cls, code: str, n: int | None = None) -> PointId:
        """Parse a point code ``T<k>`` or ``B<k>``."""
        if not isinstance(code, str) or len(code) < 2 or code[0] not in "TB":
            raise DomainError(f"bad point code {code!r}")
        digits = code[1:]
        if not digits.isdigit() or (len(digits) > 1 and digits[0] == "0"):
            raise DomainError(f"bad point code {code!r}")
        k = int(digits)
        if n is not None and not 0 <= k < n:
            raise DomainError(f"point code {code!r} out of range for n={n}")
        return cls(Layer.TOP if code[0] == "T" else Layer.BOTTOM, k)


def T(k: int) -> PointId:
    return PointId(Layer.TOP, k)


def B(k: int) -> PointId:
    return PointId(Layer.BOTTOM, k)


class Chord(NamedTuple):
    """Segment between two vertices of one layer, stored with ``a < b``."""

    layer: Layer
    a: int
    b: int

    @classmethod
    def of(cls, layer: Layer, a: int, b: int, n: int) -> Chord:
        a, b = a % n, b % n
        if a == b:
            raise DomainError("a chord needs two distinct endpoints")
        return cls(Layer(layer), min(a, b), max(a, b))

    def is_boundary(self, n: int) -> bool:
        return (self.b - self.a) % n in (1, n - 1)

    def __str__(self):
        return f"{self.layer.letter}({self.a},{self.b})"


class Side(Enum):
    """Which open arc of the circle a chord cuts off.

    ``ARC_AB`` holds the vertices met going counterclockwise from ``a`` to
    ``b``; ``ARC_BA`` those met going from ``b`` to ``a``.
    """

    ARC_AB = "ab"
    ARC_BA = "ba"


def top_chord(a: int, b: int, n: int) -> Chord:
    return Chord.of(Layer.TOP, a, b, n)


def boundary_edges(n: int, layer: Layer = Layer.TOP) -> list[Chord]:
    """The n polygon edges ``(a, a+1)``, in order of ``a``."""
    return [Chord.of(layer, a, a + 1, n) for a in range(n)]


def side_containing(chord: Chord, vertex: int) -> Side:
    """Side of ``chord`` holding same-layer ``vertex`` (not an endpoint)."""
    if vertex in (chord.a, chord.b):
        raise DomainError(f"vertex {vertex} is an endpoint of {chord}")
    return Side.ARC_AB if chord.a < vertex < chord.b else Side.ARC_BA


def interior_side(chord: Chord, n: int) -> Side:
    """For a boundary edge, the side facing the polygon interior."""
    if not chord.is_boundary(n):
        raise DomainError(f"{chord} is not a boundary edge")
    return Side.ARC_AB if chord.b - chord.a > 1 else Side.ARC_BA


def fold(r: int, n: int) -> int:
    """Fold a residue mod 2n into the angular distance range [0, n]."""
    r %= 2 * n
    return r if r <= n else 2 * n - r


@dataclass(frozen=True)
class FunctionalLevels:
    """Signed levels of the chord's functional on the opposite layer.

    ``levels[v]`` is the level of opposite-layer vertex ``v``.  Levels step by
    one between consecutive distinct functional values, are >= 0 exactly on
    the closed positive side, and level 0 is the class nearest the chord on
    that side.
    """

    chord: Chord
    side: Side
    levels: tuple[int, ...]

    def heights(self) -> tuple[int, ...]:
        lo = min(self.levels)
        return tuple(l - lo for l in self.levels)


def _validate_chord(shape: ShapeSpec, chord: Chord) -> None:
    n = shape.n
    if chord.a == chord.b:
        raise DomainError("degenerate chord (a == b)")
    if not (0 <= chord.a < n and 0 <= chord.b < n) or chord.a > chord.b:
        raise DomainError(f"{chord} is not a canonical chord for n={n}")


@lru_cache(maxsize=None)
def functional_levels(shape: ShapeSpec, chord: Chord, side: Side) -> FunctionalLevels:
    _validate_chord(shape, chord)
    n = shape.n
    side = Side(side)
    # offset of the opposite layer relative to the chord's layer, in pi/n units
    if chord.layer is Layer.TOP:
        shift = shape.delta
    else:
        shift = -shape.delta
    k_chord = chord.b - chord.a
    # the functional grows with k on the b->a arc, shrinks on the a->b arc
    sign = 1 if side is Side.ARC_BA else -1
    levels = tuple(
        (sign * (fold(2 * v + shift - chord.a - chord.b, n) - k_chord)) // 2
        for v in range(n)
    )
    return FunctionalLevels(chord, side, levels)


@lru_cache(maxsize=None)
def height_table(shape: ShapeSpec, chord: Chord, side: Side) -> tuple[int, ...]:
    """Heights of every opposite-layer vertex with respect to ``chord``."""
    return functional_levels(shape, chord, side).heights()


def height(shape: ShapeSpec, chord: Chord, side: Side, v: int) -> int:
    """Number of distinct functional values strictly below the one at ``v``."""
    if not 0 <= v < shape.n:
        raise DomainError(f"vertex {v} out of range for n={shape.n}")
    return height_table(shape, chord, side)[v]


def boundary_height(shape: ShapeSpec, a: int, v: int) -> int:
    """Closed-form height of opposite vertex ``v`` for top edge ``(a, a+1)``."""
    n = shape.n
    if shape.kind is Kind.PRISM:
        return min((v - a - 1) % n, (a - v) % n)
    return min((v - a) % n, (a - v) % n)


def boundary_height_profile(shape: ShapeSpec, base: int) -> list[int]:
    """Heights of bottom vertex ``base`` against each top edge ``(a, a+1)``."""
    if not 0 <= base < shape.n:
        raise DomainError(f"vertex {base} out of range for n={shape.n}")
    out = []
    for e in boundary_edges(shape.n):
        out.append(height(shape, e, interior_side(e, shape.n), base))
    return out


def profile_sum(shape: ShapeSpec) -> int:
    """Closed form of ``sum(boundary_height_profile(shape, v))``."""
    n = shape.n
    if shape.kind is Kind.PRISM:
        return (n * n - 2 * n) // 4 if n % 2 == 0 else (n * n - 2 * n + 1) // 4
    return n * n // 4 if n % 2 == 0 else (n * n - 1) // 4


def parallel_chords(shape: ShapeSpec, top: Chord, bottom: Chord) -> bool:
    """Whether a top chord and a bottom chord are parallel."""
    if top.layer is not Layer.TOP or bottom.layer is not Layer.BOTTOM:
        raise DomainError("expected a top chord and a bottom chord")
    return (bottom.a + bottom.b + shape.delta - top.a - top.b) % shape.n == 0
