"""Simple closed k-curves, integer windows, the wrap map onto a curve, and
cyclic covers between curves."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from digicov.lattice import AdjacencyKind, DigitalImage, DomainError, Point, adjacent, as_point
from digicov.morphism import DigitalMap


@dataclass(frozen=True)
class SimpleClosedCurve:
    """Points x_0..x_{l-1}, with x_i adjacent to x_j exactly when i - j = +-1 mod l."""

    image: DigitalImage
    order: tuple[Point, ...]

    @property
    def l(self) -> int:
        return len(self.order)

    def __getitem__(self, i: int) -> Point:
        return self.order[i % self.l]

    @property
    def name(self) -> str:
        kind = self.image.kind
        return f"sc{kind.k}-{kind.n}-{self.l}"

    def to_dict(self) -> dict:
        out = self.image.to_dict()
        position = {p: i for i, p in enumerate(self.image.order)}
        out["order"] = [position[p] for p in self.order]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> SimpleClosedCurve:
        image = DigitalImage.from_dict(data)
        raw = [as_point(p) for p in data["points"]]
        order = data.get("order", list(range(len(raw))))
        if sorted(order) != list(range(len(raw))):
            raise DomainError("order must be a permutation of the point indices")
        return validate_scc([raw[i] for i in order], image.kind)


class CurveError(DomainError):
    """A point sequence is not a simple closed curve; ``pair`` names the
    offending index pair when the failure is an adjacency violation."""

    def __init__(self, message: str, pair: tuple[int, int] | None = None):
        super().__init__(message)
        self.pair = pair


def validate_scc(points: Sequence, kind: AdjacencyKind) -> SimpleClosedCurve:
    pts = [as_point(p) for p in points]
    l = len(pts)
    if l < 4:
        raise CurveError(f"a simple closed curve needs at least 4 points, got {l}")
    if len(set(pts)) != l:
        raise CurveError("curve points must be distinct")
    for i in range(l):
        for j in range(i + 1, l):
            consecutive = (j - i) % l in (1, l - 1)
            if adjacent(pts[i], pts[j], kind) != consecutive:
                what = "consecutive points are not adjacent" if consecutive else "non-consecutive points are adjacent"
                raise CurveError(f"{what}: x_{i}={pts[i]}, x_{j}={pts[j]}", (i, j))
    return SimpleClosedCurve(DigitalImage(kind, frozenset(pts)), tuple(pts))


# Orientation is chosen so that x_{l-1} precedes x_1 lexicographically.
_CURVES: dict[str, tuple[tuple[int, int], list[tuple[int, ...]]]] = {
    "sc4-2-4": ((1, 2), [(0, 0), (1, 0), (1, 1), (0, 1)]),
    "sc4-2-8": ((1, 2), [(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1)]),
    "sc8-2-4": ((2, 2), [(1, 0), (0, 1), (-1, 0), (0, -1)]),
    "sc8-2-6": ((2, 2), [(0, 0), (1, 1), (1, 2), (0, 3), (-1, 2), (-1, 1)]),
    "sc8-2-7": ((2, 2), [(0, 0), (1, 1), (1, 2), (0, 3), (-1, 3), (-2, 2), (-1, 1)]),
    "sc8-2-8": ((2, 2), [(2, 0), (1, 1), (0, 2), (-1, 1), (-2, 0), (-1, -1), (0, -2), (1, -1)]),
    "sc6-3-4": ((1, 3), [(0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0)]),
    "sc6-3-6": ((1, 3), [(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1), (0, 1, 1), (0, 0, 1)]),
    "sc18-3-4": ((2, 3), [(1, 0, 0), (0, 1, 0), (-1, 0, 0), (0, -1, 0)]),
    "sc26-3-5": ((3, 3), [(0, 0, 0), (1, 1, 1), (2, 2, 0), (2, 1, -1), (1, 0, -1)]),
}


def catalog_names() -> list[str]:
    return list(_CURVES)


def scc_catalog(name: str) -> SimpleClosedCurve:
    key = name.lower().replace("_", "-")
    if key not in _CURVES:
        raise DomainError(f"unknown curve {name!r}; known: {', '.join(_CURVES)}")
    (t, n), pts = _CURVES[key]
    return validate_scc(pts, AdjacencyKind(t, n))


def interval_image(a: int, b: int) -> DigitalImage:
    """[a, b] of Z with 2-adjacency."""
    if a > b:
        raise DomainError(f"empty interval [{a}, {b}]")
    return DigitalImage(AdjacencyKind(1, 1), frozenset((i,) for i in range(a, b + 1)))


def wrap_map(curve: SimpleClosedCurve, window_end: int | None = None) -> DigitalMap:
    """t -> x_{t mod l} on [0, window_end]; the window defaults to [0, 3l]."""
    if window_end is None:
        window_end = 3 * curve.l
    if window_end < curve.l - 1:
        raise DomainError(f"window [0, {window_end}] does not reach all {curve.l} curve points")
    return DigitalMap(interval_image(0, window_end), curve.image, {(t,): curve[t] for t in range(window_end + 1)})


def cyclic_cover(big: SimpleClosedCurve, small: SimpleClosedCurve) -> DigitalMap:
    """x_i -> y_{i mod small.l}."""
    if big.l % small.l:
        raise DomainError(f"curve length {big.l} is not a multiple of {small.l}")
    return DigitalMap(big.image, small.image, {x: small[i] for i, x in enumerate(big.order)})
