"""Exhaustive enumeration of small digital images and maps.

Used to re-derive expected values independently of the checkers and to
scan implications between predicates for counterexamples.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb
from typing import Iterator, Optional

from digicov.covering import PREDICATES, SCAN_PREDICATES, classify
from digicov.lattice import AdjacencyKind, DigitalImage, DomainError, Point, adjacent
from digicov.morphism import DigitalMap, Witness

DEFAULT_CEILING = 10**7


class SearchSpaceError(DomainError):
    """The requested enumeration exceeds its configured ceiling."""


def _default_ceiling() -> int:
    raw = os.environ.get("DIGICOV_CEILING")
    return int(raw) if raw else DEFAULT_CEILING


@dataclass(frozen=True)
class EnumerationBounds:
    """Images have at most ``max_points`` points and fit in a box of ``box``
    cells per axis; every dimension 1..dim and every t <= min(t, n) is used."""

    max_points: int = 5
    dim: int = 2
    t: int = 2
    box: int = 4
    ceiling: Optional[int] = None
    max_maps_per_pair: Optional[int] = None

    def __post_init__(self):
        if self.max_points < 1 or self.dim < 1 or self.t < 1 or self.box < 1:
            raise DomainError(f"invalid bounds {self}")
        if self.ceiling is None:
            object.__setattr__(self, "ceiling", _default_ceiling())

    def kinds(self) -> list[AdjacencyKind]:
        return [AdjacencyKind(t, n) for n in range(1, self.dim + 1) for t in range(1, min(self.t, n) + 1)]

    def image_space(self) -> int:
        """Upper bound on the point subsets visited by enumerate_images."""
        return sum(
            comb(self.box**k.n, s) for k in self.kinds() for s in range(1, self.max_points + 1)
        )


# --------------------------------------------------------------------------
# images


def normalize(points) -> frozenset[Point]:
    """Translate so the lexicographically smallest point is the origin."""
    lo = min(points)
    return frozenset(tuple(a - b for a, b in zip(p, lo)) for p in points)


def enumerate_images(bounds: EnumerationBounds) -> Iterator[DigitalImage]:
    """All connected images within the bounds, one per translation class,
    ordered by kind, then size, then sorted point list."""
    if bounds.image_space() > bounds.ceiling:
        raise SearchSpaceError(f"image search space {bounds.image_space()} exceeds ceiling {bounds.ceiling}")
    for kind in bounds.kinds():
        yield from _images_of_kind(kind, bounds.max_points, bounds.box)


@lru_cache(maxsize=None)
def _images_of_kind(kind: AdjacencyKind, max_points: int, box: int) -> tuple[DigitalImage, ...]:
    cells = list(product(range(box), repeat=kind.n))
    nbrs = {c: [d for d in cells if adjacent(c, d, kind)] for c in cells}
    level = {frozenset([c]) for c in cells}
    found = {normalize(s) for s in level}
    for _ in range(max_points - 1):
        grown = set()
        for s in level:
            for c in s:
                for d in nbrs[c]:
                    if d not in s:
                        grown.add(s | {d})
        level = grown
        found |= {normalize(s) for s in level}
    ordered = sorted(found, key=lambda s: (len(s), sorted(s)))
    return tuple(DigitalImage(kind, s) for s in ordered)


def graph_key(X: DigitalImage) -> tuple:
    """Canonical form of the adjacency graph of X: equal keys iff the graphs
    are isomorphic.  Vertices are first split by an invariant (degree and
    neighbor degrees) and only class-respecting labelings are compared."""
    n = len(X)
    masks = X.nbr_masks
    deg = [bin(m).count("1") - 1 for m in masks]
    inv = [(deg[i], tuple(sorted(deg[j] for j in range(n) if j != i and masks[i] >> j & 1))) for i in range(n)]
    classes: dict = {}
    for i in sorted(range(n), key=lambda i: inv[i]):
        classes.setdefault(inv[i], []).append(i)
    groups = list(classes.values())
    best = None
    for choice in product(*(permutations(g) for g in groups)):
        label = [0] * n
        pos = 0
        for g in choice:
            for v in g:
                label[v] = pos
                pos += 1
        edges = tuple(sorted(
            (min(label[i], label[j]), max(label[i], label[j]))
            for i in range(n) for j in range(i + 1, n) if masks[i] >> j & 1
        ))
        if best is None or edges < best:
            best = edges
    return (n, tuple(sorted(inv)), best)


# --------------------------------------------------------------------------
# maps


def surjection_count(n: int, m: int) -> int:
    """Number of surjections from an n-set onto an m-set."""
    return sum((-1) ** i * comb(m, i) * (m - i) ** n for i in range(m + 1))


def enumerate_surjections(
    S: DigitalImage, T: DigitalImage, continuous_only: bool = False, cap: Optional[int] = None
) -> Iterator[DigitalMap]:
    """All surjections S -> T in lexicographic order of their value lists
    (source points taken in lexicographic order)."""
    n, m = len(S), len(T)
    if n < m:
        raise DomainError(f"no surjection from {n} points onto {m}")
    if n == 0:
        return
    Smask, Tmask = S.nbr_masks, T.nbr_masks
    full = (1 << m) - 1
    values = [0] * n
    produced = 0

    def extend(i: int, used: int):
        nonlocal produced
        if i == n:
            if used == full:
                produced += 1
                if cap is not None and produced > cap:
                    raise SearchSpaceError(f"more than {cap} maps from a {n}-point onto a {m}-point image")
                yield DigitalMap(S, T, {S.order[j]: T.order[values[j]] for j in range(n)})
            return
        if bin(full & ~used).count("1") > n - i:
            return
        allowed = full
        if continuous_only:
            for j in range(i):
                if Smask[i] >> j & 1:
                    allowed &= Tmask[values[j]]
        for y in range(m):
            if allowed >> y & 1:
                values[i] = y
                yield from extend(i + 1, used | 1 << y)

    yield from extend(0, 0)


# --------------------------------------------------------------------------
# scans


QUOTIENTS = ("graph", "translation")


def image_pairs(bounds: EnumerationBounds, quotient: str = "graph") -> list[tuple[DigitalImage, DigitalImage]]:
    """Source/target pairs with |S| >= |T| in nondecreasing |S| + |T| order.

    quotient "graph" keeps the first image of each adjacency-graph
    isomorphism class; every predicate is invariant under isomorphisms of
    source and target, so scan outcomes are unchanged.  quotient
    "translation" keeps every enumerated image.
    """
    if quotient not in QUOTIENTS:
        raise DomainError(f"quotient must be one of {QUOTIENTS}")
    images = list(enumerate_images(bounds))
    if quotient == "graph":
        reps: dict = {}
        for X in images:
            reps.setdefault(graph_key(X), X)
        images = list(reps.values())
    pairs = [(S, T) for S in images for T in images if len(S) >= len(T)]
    space = sum(surjection_count(len(S), len(T)) for S, T in pairs)
    if space > bounds.ceiling:
        raise SearchSpaceError(f"{space} candidate maps exceed ceiling {bounds.ceiling}")
    order = {id(X): i for i, X in enumerate(images)}
    pairs.sort(key=lambda st: (len(st[0]) + len(st[1]), order[id(st[0])], order[id(st[1])]))
    return pairs


def scan_maps(bounds: EnumerationBounds, quotient: str = "graph", continuous_only: bool = True) -> Iterator[DigitalMap]:
    for S, T in image_pairs(bounds, quotient):
        yield from enumerate_surjections(S, T, continuous_only, bounds.max_maps_per_pair)


@lru_cache(maxsize=4)
def classified_maps(bounds: EnumerationBounds, quotient: str = "graph") -> tuple[tuple[DigitalMap, dict], ...]:
    """Every continuous surjection of the scan with its predicate flags.

    Each scan predicate implies continuity (condition 3 holds at every
    fiber point, so every neighborhood maps isomorphically onto its image),
    so restricting to continuous maps loses no counterexample.
    """
    return tuple((p, classify(p).flags()) for p in scan_maps(bounds, quotient))


@dataclass(frozen=True)
class Counterexample:
    map: DigitalMap
    conclusion: str
    witness: Optional[Witness]

    def to_dict(self) -> dict:
        out = self.map.to_dict()
        out["failing"] = {"predicate": self.conclusion, "witness": self.witness.to_dict() if self.witness else None}
        return out


def implication_scan(
    hypothesis: str,
    conclusion: str,
    bounds: EnumerationBounds = EnumerationBounds(),
    quotient: str = "graph",
    limit: Optional[int] = None,
) -> list[Counterexample]:
    """Maps of the scan satisfying ``hypothesis`` but not ``conclusion``,
    smallest |S| + |T| first.  An empty list means the implication held on
    the searched space."""
    for name in (hypothesis, conclusion):
        if name not in SCAN_PREDICATES:
            raise DomainError(f"unknown predicate {name!r}; choose from {', '.join(SCAN_PREDICATES)}")
    if quotient == "graph":
        candidates = (p for p, flags in classified_maps(bounds) if flags[hypothesis] and not flags[conclusion])
    else:
        # too many maps to keep; evaluate the two predicates while streaming
        candidates = (
            p for p in scan_maps(bounds, quotient)
            if PREDICATES[hypothesis](p).holds and not PREDICATES[conclusion](p).holds
        )
    found = []
    for p in candidates:
        found.append(Counterexample(p, conclusion, PREDICATES[conclusion](p).witness))
        if limit is not None and len(found) >= limit:
            break
    return found


# --------------------------------------------------------------------------
# independent recomputation


def naive_flags(p: DigitalMap) -> dict[str, bool]:
    """The scan predicates recomputed by direct set comprehension of each
    definition, sharing nothing with the morphism and covering modules
    beyond the adjacency relation."""
    S, T = p.source, p.target
    f = dict(p.assignment)

    def N(X: DigitalImage, x: Point) -> set:
        return {y for y in X.points if y == x or adjacent(x, y, X.kind)}

    def iso_onto(A: set, B: set) -> bool:
        image = {f[a] for a in A}
        if len(image) != len(A) or image != B:
            return False
        return all(adjacent(a, c, S.kind) == adjacent(f[a], f[c], T.kind) for a, c in combinations(A, 2))

    surjective = set(f.values()) == set(T.points)
    continuous = all(f[x2] in N(T, f[x]) for x in S.points for x2 in N(S, x))
    wl = all(iso_onto(N(S, x), {f[a] for a in N(S, x)}) for x in S.points)
    local = all(iso_onto(N(S, x), N(T, f[x])) for x in S.points)

    c1 = inc = c2 = c3wl = c3iso = True
    for b in T.points:
        fiber = [e for e in S.points if f[e] == b]
        sheets = [N(S, e) for e in fiber]
        union = set().union(*sheets)
        pre = {x for x in S.points if f[x] in N(T, b)}
        c1 &= union == pre
        inc &= union <= pre
        c2 &= all(not (A & B) for A, B in combinations(sheets, 2))
        c3wl &= all(iso_onto(A, {f[a] for a in A}) for A in sheets)
        c3iso &= all(iso_onto(A, N(T, b)) for A in sheets)

    return {
        "continuous": continuous,
        "wl-surjection": surjective and wl,
        "local-iso": local,
        "local-iso-surjection": surjective and local,
        "pseudo-original": surjective and c1 and c2 and c3wl,
        "pseudo-revised": surjective and inc and c2 and c3wl,
        "covering": surjective and c1 and c2 and c3iso,
    }


def iso_search(
    X: DigitalImage, Y: DigitalImage, fixed: Optional[dict] = None, cap: int = 8
) -> Optional[DigitalMap]:
    """Some isomorphism X -> Y extending ``fixed``, or None.

    Backtracking over bijections that keep adjacency and non-adjacency
    between every pair of assigned points.
    """
    if len(X) != len(Y):
        return None
    if len(X) > cap:
        raise SearchSpaceError(f"isomorphism search is capped at {cap} points")
    xs = sorted(X.points)
    ys = sorted(Y.points)
    fixed = dict(fixed or {})
    if len(set(fixed.values())) != len(fixed) or not set(fixed) <= X.points or not set(fixed.values()) <= Y.points:
        return None
    assigned: dict = {}

    def consistent(x, y) -> bool:
        return all(adjacent(x, a, X.kind) == adjacent(y, b, Y.kind) for a, b in assigned.items())

    def search(i: int) -> bool:
        if i == len(xs):
            return True
        x = xs[i]
        candidates = [fixed[x]] if x in fixed else ys
        for y in candidates:
            if y in assigned.values() or (x not in fixed and y in fixed.values()):
                continue
            if consistent(x, y):
                assigned[x] = y
                if search(i + 1):
                    return True
                del assigned[x]
        return False

    if search(0):
        return DigitalMap(X, Y, assigned)
    return None
