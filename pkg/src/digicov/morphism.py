"""Digital maps and the continuity / isomorphism decision procedures.

Every procedure returns a :class:`Verdict`.  A failing verdict carries a
witness naming the lexicographically first failure, and every witness can
re-check itself against the map through ``certifies``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Callable, ClassVar, Iterable, Mapping, Optional

from digicov.lattice import DigitalImage, DomainError, Point, adjacent, as_point


# --------------------------------------------------------------------------
# witnesses


def _raw_nbhd(X: DigitalImage, x: Point) -> set[Point]:
    return {q for q in X.points if q == x or adjacent(x, q, X.kind)}


def _raw_restriction_is_iso(f: "DigitalMap", A: set[Point], B: set[Point]) -> bool:
    """Brute-force test that f restricted to A is an isomorphism onto B."""
    image = [f(a) for a in A]
    if len(set(image)) != len(A) or set(image) != B:
        return False
    for a in A:
        for a2 in A:
            if a != a2 and adjacent(a, a2, f.source.kind) != adjacent(f(a), f(a2), f.target.kind):
                return False
    return True


class Witness:
    """Base class; subclasses are small frozen records of points."""

    kind: ClassVar[str] = ""
    registry: ClassVar[dict[str, type]] = {}

    def __init_subclass__(cls, **kw):
        super().__init_subclass__(**kw)
        cls.kind = cls.__name__
        Witness.registry[cls.__name__] = cls

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        for name, value in self.__dict__.items():
            if isinstance(value, Witness):
                out[name] = value.to_dict()
            elif isinstance(value, tuple) and value and isinstance(value[0], int):
                out[name] = list(value)
            else:
                out[name] = value
        return out

    def certifies(self, f: "DigitalMap") -> bool:
        raise NotImplementedError


def witness_from_dict(data: Optional[dict]) -> Optional[Witness]:
    if data is None:
        return None
    data = dict(data)
    cls = Witness.registry.get(data.pop("kind", None))
    if cls is None:
        raise DomainError(f"unknown witness kind in {data!r}")
    kwargs = {}
    for name, value in data.items():
        if isinstance(value, dict):
            kwargs[name] = witness_from_dict(value)
        elif isinstance(value, list):
            kwargs[name] = tuple(value)
        else:
            kwargs[name] = value
    return cls(**kwargs)


@dataclass(frozen=True)
class NonContinuousAt(Witness):
    """x2 lies in N(x,1) but f(x2) is outside N(f(x),1)."""

    x: Point
    x2: Point

    def certifies(self, f):
        return self.x2 in _raw_nbhd(f.source, self.x) and f(self.x2) not in _raw_nbhd(f.target, f(self.x))


@dataclass(frozen=True)
class NotInjective(Witness):
    x1: Point
    x2: Point

    def certifies(self, f):
        return self.x1 != self.x2 and f(self.x1) == f(self.x2)


@dataclass(frozen=True)
class NotSurjective(Witness):
    y: Point

    def certifies(self, f):
        return self.y in f.target.points and all(f(x) != self.y for x in f.source.points)


@dataclass(frozen=True)
class InverseNotContinuousAt(Witness):
    """y2 lies in N(y,1) but the preimage of y2 is outside N(f^-1(y),1)."""

    y: Point
    y2: Point

    def certifies(self, f):
        inv = {v: k for k, v in f.assignment.items()}
        if len(inv) != len(f.assignment) or self.y not in inv or self.y2 not in inv:
            return False
        return self.y2 in _raw_nbhd(f.target, self.y) and inv[self.y2] not in _raw_nbhd(f.source, inv[self.y])


@dataclass(frozen=True)
class LocalFailure(Witness):
    """The restriction of f to N(x,1) is not an isomorphism onto N(f(x),1)
    (mode "local") or onto f(N(x,1)) (mode "wl"); ``detail`` is the failure
    of that restricted map."""

    x: Point
    reason: str
    mode: str
    detail: Witness

    def certifies(self, f):
        A = _raw_nbhd(f.source, self.x)
        B = _raw_nbhd(f.target, f(self.x)) if self.mode == "local" else {f(a) for a in A}
        if _raw_restriction_is_iso(f, A, B):
            return False
        if self.reason == "leaves-neighborhood":
            return self.detail.certifies(f)
        sub = DigitalMap(
            f.source.subimage(A),
            f.target.subimage(B | {f(a) for a in A}),
            {a: f(a) for a in A},
        )
        return self.detail.certifies(sub)


@dataclass(frozen=True)
class CoveringFailure(Witness):
    """A covering-type condition failed over base point b.

    reason "sheet-not-iso" / "sheet-not-wl-iso": the sheet N(e,1) does not
    restrict to the required isomorphism (``detail`` is its failure);
    "sheet-outside-preimage": point ``e`` of a sheet is not in p^-1(N(b,1));
    "no-index-set": no nonempty subset of the fiber satisfies the conditions.
    """

    b: Point
    reason: str
    e: Optional[Point] = None
    detail: Optional[Witness] = None

    def certifies(self, f):
        if self.b not in f.target.points:
            return False
        nb = _raw_nbhd(f.target, self.b)
        if self.reason == "sheet-outside-preimage":
            fiber = [x for x in f.source.points if f(x) == self.b]
            in_union = any(self.e in _raw_nbhd(f.source, e) for e in fiber)
            return in_union and f(self.e) not in nb
        if self.reason in ("sheet-not-iso", "sheet-not-wl-iso"):
            if self.e is None or f(self.e) != self.b:
                return False
            A = _raw_nbhd(f.source, self.e)
            B = nb if self.reason == "sheet-not-iso" else {f(a) for a in A}
            return not _raw_restriction_is_iso(f, A, B)
        if self.reason == "no-index-set":
            from digicov.covering import _subset_search_at

            return _subset_search_at(f, self.b) is None
        return False


@dataclass(frozen=True)
class MissingPreimagePoint(Witness):
    """e is in p^-1(N(b,1)) but in no sheet N(e_i,1) over the fiber of b."""

    b: Point
    e: Point

    def certifies(self, f):
        if self.b not in f.target.points or self.e not in f.source.points:
            return False
        fiber = [x for x in f.source.points if f(x) == self.b]
        return f(self.e) in _raw_nbhd(f.target, self.b) and not any(
            self.e in _raw_nbhd(f.source, e) for e in fiber
        )


@dataclass(frozen=True)
class OverlappingSheets(Witness):
    b: Point
    e_i: Point
    e_j: Point

    def certifies(self, f):
        return (
            self.e_i != self.e_j
            and f(self.e_i) == self.b == f(self.e_j)
            and bool(_raw_nbhd(f.source, self.e_i) & _raw_nbhd(f.source, self.e_j))
        )


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Optional[Witness] = None

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("a verdict holds exactly when it has no witness")

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {"holds": self.holds, "witness": self.witness.to_dict() if self.witness else None}


OK = Verdict(True)


def fail(w: Witness) -> Verdict:
    return Verdict(False, w)


# --------------------------------------------------------------------------
# maps


@dataclass(frozen=True, eq=False)
class DigitalMap:
    """A total assignment from source.points into target.points."""

    source: DigitalImage
    target: DigitalImage
    assignment: Mapping[Point, Point] = field(repr=False)

    def __post_init__(self) -> None:
        a = {as_point(k): as_point(v) for k, v in self.assignment.items()}
        if set(a) != set(self.source.points):
            missing = sorted(set(self.source.points) - set(a))
            extra = sorted(set(a) - set(self.source.points))
            raise DomainError(f"assignment is not total on the source (missing {missing[:3]}, extra {extra[:3]})")
        bad = [v for v in a.values() if v not in self.target.points]
        if bad:
            raise DomainError(f"assigned value {bad[0]} is not a target point")
        object.__setattr__(self, "assignment", a)

    @classmethod
    def identity(cls, X: DigitalImage) -> DigitalMap:
        return cls(X, X, {p: p for p in X.points})

    @classmethod
    def from_function(cls, source: DigitalImage, target: DigitalImage, fn: Callable[[Point], Point]) -> DigitalMap:
        return cls(source, target, {p: fn(p) for p in source.points})

    def __call__(self, p: Point) -> Point:
        return self.assignment[p]

    def __eq__(self, other) -> bool:
        if not isinstance(other, DigitalMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.assignment == other.assignment

    def __hash__(self) -> int:
        return hash((self.source, self.target, frozenset(self.assignment.items())))

    @cached_property
    def f_idx(self) -> tuple[int, ...]:
        """Target index of each source point, by source index."""
        tidx = self.target.index
        return tuple(tidx[self.assignment[p]] for p in self.source.order)

    @cached_property
    def fiber_masks(self) -> tuple[int, ...]:
        """Bitmask of p^-1(y) over the source, by target index."""
        out = [0] * len(self.target)
        for i, y in enumerate(self.f_idx):
            out[y] |= 1 << i
        return tuple(out)

    def preimage_mask(self, target_mask: int) -> int:
        out = 0
        for y in _bits(target_mask):
            out |= self.fiber_masks[y]
        return out

    def image_mask(self, mask: int) -> int:
        out = 0
        f = self.f_idx
        i = 0
        while mask:
            if mask & 1:
                out |= 1 << f[i]
            mask >>= 1
            i += 1
        return out

    def image(self, pts: Iterable[Point]) -> set[Point]:
        return {self.assignment[p] for p in pts}

    def preimage(self, pts: Iterable[Point]) -> set[Point]:
        wanted = set(pts)
        return {p for p, q in self.assignment.items() if q in wanted}

    def is_surjective(self) -> bool:
        return self.image_mask((1 << len(self.source)) - 1) == (1 << len(self.target)) - 1

    def to_dict(self) -> dict:
        return {
            "source": self.source.to_dict(),
            "target": self.target.to_dict(),
            "pairs": [[list(p), list(self.assignment[p])] for p in self.source.order],
        }

    @classmethod
    def from_dict(cls, data: dict, base: Path | None = None) -> DigitalMap:
        try:
            src, tgt, pairs = data["source"], data["target"], data["pairs"]
        except (KeyError, TypeError) as exc:
            raise DomainError(f"map object needs source, target and pairs: {exc}") from None
        source = _load_image_ref(src, base)
        target = _load_image_ref(tgt, base)
        assignment: dict[Point, Point] = {}
        for pair in pairs:
            if not (isinstance(pair, list) and len(pair) == 2):
                raise DomainError(f"malformed pair {pair!r}")
            p, q = as_point(pair[0]), as_point(pair[1])
            if p in assignment:
                raise DomainError(f"point {p} is assigned twice")
            assignment[p] = q
        return cls(source, target, assignment)


def _load_image_ref(ref, base: Path | None) -> DigitalImage:
    if isinstance(ref, str):
        path = Path(ref)
        if base is not None and not path.is_absolute():
            path = base / path
        try:
            ref = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise DomainError(f"cannot read image file {path}: {exc}") from None
    if not isinstance(ref, dict):
        raise DomainError("image must be an object or a file reference")
    return DigitalImage.from_dict(ref)


def restrict(f: DigitalMap, S: Iterable[Point], T: Iterable[Point]) -> DigitalMap:
    S, T = set(S), set(T)
    if not S <= f.source.points:
        raise DomainError("restriction domain is not a subset of the source")
    if not T <= f.target.points:
        raise DomainError("restriction codomain is not a subset of the target")
    outside = sorted(p for p in S if f(p) not in T)
    if outside:
        raise DomainError(f"f({outside[0]}) = {f(outside[0])} is not in the restriction codomain")
    return DigitalMap(f.source.subimage(S), f.target.subimage(T), {p: f(p) for p in S})


def compose(f: DigitalMap, g: DigitalMap) -> DigitalMap:
    """The map x -> g(f(x))."""
    if f.target != g.source:
        raise DomainError("target of the first map differs from source of the second")
    return DigitalMap(f.source, g.target, {p: g(q) for p, q in f.assignment.items()})


# --------------------------------------------------------------------------
# index-level core shared with the covering module


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _continuity_failure(f: DigitalMap, A: int) -> Optional[Witness]:
    """First x in A with a neighbor (inside A) mapped outside N(f(x),1)."""
    S, T, fi = f.source.nbr_masks, f.target.nbr_masks, f.f_idx
    for x in _bits(A):
        allowed = T[fi[x]]
        for x2 in _bits(S[x] & A):
            if not allowed >> fi[x2] & 1:
                return NonContinuousAt(f.source.order[x], f.source.order[x2])
    return None


def _iso_failure(f: DigitalMap, A: int, B: int) -> Optional[Witness]:
    """Why f restricted to the index sets A -> B is not an isomorphism of the
    induced sub-images, or None.  Requires f(A) subset of B."""
    src, tgt = f.source, f.target
    fi = f.f_idx
    inverse: dict[int, int] = {}
    for x in _bits(A):
        y = fi[x]
        if y in inverse:
            return NotInjective(src.order[inverse[y]], src.order[x])
        inverse[y] = x
    missing = B & ~f.image_mask(A)
    if missing:
        return NotSurjective(tgt.order[next(_bits(missing))])
    w = _continuity_failure(f, A)
    if w is not None:
        return w
    S, T = src.nbr_masks, tgt.nbr_masks
    for y in _bits(B):
        allowed = S[inverse[y]]
        for y2 in _bits(T[y] & B):
            if not allowed >> inverse[y2] & 1:
                return InverseNotContinuousAt(tgt.order[y], tgt.order[y2])
    return None


_REASONS = {
    NotInjective: "not-injective",
    NotSurjective: "not-onto",
    NonContinuousAt: "not-continuous",
    InverseNotContinuousAt: "inverse-not-continuous",
}


def local_failure_at(f: DigitalMap, x: int, mode: str) -> Optional[LocalFailure]:
    """Check the restriction of f to N(x,1) at source index x.

    mode "local": must be an isomorphism onto N(f(x),1); the set equality
    f(N(x,1)) = N(f(x),1) is tested first.  mode "wl": onto f(N(x,1)).
    """
    A = f.source.nbr_masks[x]
    img = f.image_mask(A)
    px = f.source.order[x]
    if mode == "local":
        B = f.target.nbr_masks[f.f_idx[x]]
        if img & ~B:
            x2 = next(j for j in _bits(A) if not B >> f.f_idx[j] & 1)
            return LocalFailure(px, "leaves-neighborhood", mode, NonContinuousAt(px, f.source.order[x2]))
        if B & ~img:
            return LocalFailure(px, "not-onto", mode, NotSurjective(f.target.order[next(_bits(B & ~img))]))
    else:
        B = img
    w = _iso_failure(f, A, B)
    if w is None:
        return None
    return LocalFailure(px, _REASONS[type(w)], mode, w)


# --------------------------------------------------------------------------
# decision procedures


def is_continuous(f: DigitalMap) -> Verdict:
    w = _continuity_failure(f, (1 << len(f.source)) - 1)
    return OK if w is None else fail(w)


def is_isomorphism(f: DigitalMap) -> Verdict:
    w = _iso_failure(f, (1 << len(f.source)) - 1, (1 << len(f.target)) - 1)
    return OK if w is None else fail(w)


def is_local_isomorphism(h: DigitalMap) -> Verdict:
    for x in range(len(h.source)):
        w = local_failure_at(h, x, "local")
        if w is not None:
            return fail(w)
    return OK


def is_wl_isomorphism(h: DigitalMap) -> Verdict:
    for x in range(len(h.source)):
        w = local_failure_at(h, x, "wl")
        if w is not None:
            return fail(w)
    return OK


def surjectivity(f: DigitalMap) -> Verdict:
    missing = ((1 << len(f.target)) - 1) & ~f.image_mask((1 << len(f.source)) - 1)
    if missing:
        return fail(NotSurjective(f.target.order[next(_bits(missing))]))
    return OK
