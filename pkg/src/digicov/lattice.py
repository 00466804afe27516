"""Lattice points, k(t,n)-adjacency, digital images and neighborhoods."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Iterable, Sequence, Union

Point = tuple[int, ...]


class DomainError(ValueError):
    """Raised when an operation is called outside its domain."""


def as_point(p: Union[int, Sequence[int]]) -> Point:
    """Coerce a bare integer (a point of Z) or a coordinate sequence to a Point."""
    if isinstance(p, int):
        return (p,)
    pt = tuple(p)
    if not all(isinstance(c, int) and not isinstance(c, bool) for c in pt):
        raise DomainError(f"point coordinates must be integers: {p!r}")
    return pt


def k_value(t: int, n: int) -> int:
    """Number of k(t,n)-neighbors of a lattice point: sum of 2^i * C(n, i) for i <= t."""
    if not (isinstance(t, int) and isinstance(n, int)) or n < 1 or not 1 <= t <= n:
        raise DomainError(f"need 1 <= t <= n, got t={t}, n={n}")
    return sum(2**i * comb(n, i) for i in range(1, t + 1))


@dataclass(frozen=True)
class AdjacencyKind:
    """The pair (t, n). Two kinds are equal iff (t, n) are, whatever their k."""

    t: int
    n: int

    def __post_init__(self) -> None:
        k_value(self.t, self.n)

    @property
    def k(self) -> int:
        return k_value(self.t, self.n)

    def __str__(self) -> str:
        return f"k({self.t},{self.n})={self.k}"


def adjacent(p: Point, q: Point, kind: AdjacencyKind) -> bool:
    if len(p) != kind.n or len(q) != kind.n:
        raise DomainError(f"points {p}, {q} are not in Z^{kind.n}")
    differing = 0
    for a, b in zip(p, q):
        d = a - b
        if d:
            if d > 1 or d < -1:
                return False
            differing += 1
    return 1 <= differing <= kind.t


@dataclass(frozen=True)
class Neighborhood:
    center: Point
    members: frozenset[Point]

    def __contains__(self, p: Point) -> bool:
        return p in self.members

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class DigitalImage:
    """A finite set of points of Z^n carrying a k(t,n)-adjacency.

    Points are kept in lexicographic order; ``order[i]`` is the point with
    index ``i`` and ``nbr_masks[i]`` is the bitmask of N_k(order[i], 1).
    """

    kind: AdjacencyKind
    points: frozenset[Point]

    def __post_init__(self) -> None:
        for p in self.points:
            if len(p) != self.kind.n:
                raise DomainError(f"point {p} has dimension {len(p)}, expected {self.kind.n}")

    @classmethod
    def from_points(cls, points: Iterable, t: int, dim: int | None = None) -> DigitalImage:
        pts = [as_point(p) for p in points]
        if len(set(pts)) != len(pts):
            raise DomainError("duplicate points in image")
        if dim is None:
            if not pts:
                raise DomainError("dimension of an empty image must be given")
            dim = len(pts[0])
        return cls(AdjacencyKind(t, dim), frozenset(pts))

    @property
    def dim(self) -> int:
        return self.kind.n

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, p: Point) -> bool:
        return p in self.points

    @cached_property
    def order(self) -> tuple[Point, ...]:
        return tuple(sorted(self.points))

    @cached_property
    def index(self) -> dict[Point, int]:
        return {p: i for i, p in enumerate(self.order)}

    @cached_property
    def nbr_masks(self) -> tuple[int, ...]:
        pts = self.order
        idx = self.index
        n = self.kind.n
        masks = []
        # Probe the 3^n offsets when that is cheaper than scanning all points.
        if 3**n < len(pts):
            offsets = _unit_offsets(self.kind)
            for i, p in enumerate(pts):
                m = 1 << i
                for off in offsets:
                    j = idx.get(tuple(a + b for a, b in zip(p, off)))
                    if j is not None:
                        m |= 1 << j
                masks.append(m)
        else:
            for i, p in enumerate(pts):
                m = 1 << i
                for j, q in enumerate(pts):
                    if adjacent(p, q, self.kind):
                        m |= 1 << j
                masks.append(m)
        return tuple(masks)

    def points_of(self, mask: int) -> list[Point]:
        """Points whose indices are set in ``mask``, in lexicographic order."""
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(self.order[i])
            mask >>= 1
            i += 1
        return out

    def mask_of(self, pts: Iterable[Point]) -> int:
        m = 0
        for p in pts:
            m |= 1 << self.index[p]
        return m

    def subimage(self, pts: Iterable[Point]) -> DigitalImage:
        sub = frozenset(pts)
        if not sub <= self.points:
            raise DomainError("subimage points must lie in the image")
        return DigitalImage(self.kind, sub)

    def translate(self, offset: Sequence[int]) -> DigitalImage:
        return DigitalImage(self.kind, frozenset(tuple(a + b for a, b in zip(p, offset)) for p in self.points))

    def to_dict(self) -> dict:
        return {"dim": self.dim, "t": self.kind.t, "points": [list(p) for p in self.order]}

    @classmethod
    def from_dict(cls, data: dict) -> DigitalImage:
        try:
            dim, t, raw = data["dim"], data["t"], data["points"]
        except (KeyError, TypeError) as exc:
            raise DomainError(f"image object needs dim, t and points: {exc}") from None
        if not isinstance(raw, list):
            raise DomainError("points must be a list")
        image = cls.from_points(raw, t, dim)
        return image


def _unit_offsets(kind: AdjacencyKind) -> list[Point]:
    from itertools import product

    return [d for d in product((-1, 0, 1), repeat=kind.n) if 1 <= sum(1 for c in d if c) <= kind.t]


def neighborhood(X: DigitalImage, x: Point) -> Neighborhood:
    if x not in X.points:
        raise DomainError(f"{x} is not a point of the image")
    return Neighborhood(x, frozenset(X.points_of(X.nbr_masks[X.index[x]])))


def _component_masks(X: DigitalImage) -> list[int]:
    seen = 0
    blocks = []
    masks = X.nbr_masks
    for start in range(len(X.order)):
        if seen >> start & 1:
            continue
        block = 1 << start
        queue = deque([start])
        while queue:
            i = queue.popleft()
            new = masks[i] & ~block
            block |= new
            j = 0
            while new:
                if new & 1:
                    queue.append(j)
                new >>= 1
                j += 1
        seen |= block
        blocks.append(block)
    return blocks


def components(X: DigitalImage) -> list[frozenset[Point]]:
    """Maximal k-connected blocks, ordered by their lexicographically least point."""
    return [frozenset(X.points_of(b)) for b in _component_masks(X)]


def is_connected(X: DigitalImage) -> bool:
    if not X.points:
        raise DomainError("connectedness of the empty image is undefined")
    return len(_component_masks(X)) == 1
