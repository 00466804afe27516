"""Covering-type predicates: the original and revised pseudocoverings, the
digital covering, WL-isomorphic surjections and the sheet/preimage inclusion.

All predicates fix a base point b, split p^-1(N(b,1)) against the sheets
N(e,1) over the fiber p^-1(b), and test three conditions:

1. the sheets exhaust p^-1(N(b,1)) (original and covering), or merely lie
   inside it (revised);
2. sheets over distinct fiber points are disjoint;
3. each sheet restricts to an isomorphism onto its own image ("wl") or onto
   all of N(b,1) ("iso").

Unless ``subset_search`` is requested, the index set of sheets is the whole
fiber.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Optional

from digicov.lattice import DomainError, Neighborhood, Point, neighborhood
from digicov.morphism import (
    OK,
    CoveringFailure,
    DigitalMap,
    MissingPreimagePoint,
    OverlappingSheets,
    Verdict,
    Witness,
    _bits,
    fail,
    is_continuous,
    is_local_isomorphism,
    is_wl_isomorphism,
    local_failure_at,
    surjectivity,
)

SUBSET_SEARCH_FIBER_CAP = 12


@dataclass(frozen=True)
class FiberDecomposition:
    base_point: Point
    fiber: frozenset[Point]
    sheets: list[Neighborhood]
    union: frozenset[Point]
    preimage_of_nbhd: frozenset[Point]


def fiber_decomposition(p: DigitalMap, b: Point) -> FiberDecomposition:
    if b not in p.target.points:
        raise DomainError(f"{b} is not a point of the target")
    fiber = sorted(p.preimage([b]))
    sheets = [neighborhood(p.source, e) for e in fiber]
    union = frozenset().union(*(s.members for s in sheets))
    pre = frozenset(p.preimage(neighborhood(p.target, b).members))
    return FiberDecomposition(b, frozenset(fiber), sheets, union, pre)


# --------------------------------------------------------------------------
# per-base-point conditions on index masks


def _masks(p: DigitalMap, b: int, fiber: Optional[int] = None) -> tuple[int, int, int]:
    """(fiber, union of sheets, preimage of N(b,1)) for target index b."""
    if fiber is None:
        fiber = p.fiber_masks[b]
    S = p.source.nbr_masks
    union = 0
    for e in _bits(fiber):
        union |= S[e]
    return fiber, union, p.preimage_mask(p.target.nbr_masks[b])


def _cond1(p: DigitalMap, b: int, union: int, pre: int, exact: bool) -> Optional[Witness]:
    pb = p.target.order[b]
    if exact and pre & ~union:
        return MissingPreimagePoint(pb, p.source.order[next(_bits(pre & ~union))])
    if union & ~pre:
        return CoveringFailure(pb, "sheet-outside-preimage", p.source.order[next(_bits(union & ~pre))])
    return None


def _cond2(p: DigitalMap, b: int, fiber: int) -> Optional[Witness]:
    S = p.source.nbr_masks
    pts = list(_bits(fiber))
    for i, j in combinations(pts, 2):
        if S[i] & S[j]:
            o = p.source.order
            return OverlappingSheets(p.target.order[b], o[i], o[j])
    return None


def _cond3(p: DigitalMap, b: int, fiber: int, mode: str) -> Optional[Witness]:
    for e in _bits(fiber):
        w = local_failure_at(p, e, "local" if mode == "iso" else "wl")
        if w is not None:
            reason = "sheet-not-iso" if mode == "iso" else "sheet-not-wl-iso"
            return CoveringFailure(p.target.order[b], reason, p.source.order[e], w)
    return None


def _base_index(p: DigitalMap, b: Point) -> int:
    if b not in p.target.points:
        raise DomainError(f"{b} is not a point of the target")
    return p.target.index[b]


def _verdict(w: Optional[Witness]) -> Verdict:
    return OK if w is None else fail(w)


def check_condition1_original(p: DigitalMap, b: Point) -> Verdict:
    """p^-1(N(b,1)) equals the union of the sheets over p^-1(b)."""
    i = _base_index(p, b)
    _, union, pre = _masks(p, i)
    return _verdict(_cond1(p, i, union, pre, exact=True))


def check_inclusion_at(p: DigitalMap, b: Point) -> Verdict:
    """The union of the sheets over p^-1(b) lies inside p^-1(N(b,1))."""
    i = _base_index(p, b)
    _, union, pre = _masks(p, i)
    return _verdict(_cond1(p, i, union, pre, exact=False))


def check_condition2_disjoint(p: DigitalMap, b: Point) -> Verdict:
    i = _base_index(p, b)
    return _verdict(_cond2(p, i, p.fiber_masks[i]))


def check_condition3(p: DigitalMap, b: Point, mode: str) -> Verdict:
    """mode "wl": every sheet maps isomorphically onto its image.
    mode "iso": every sheet maps isomorphically onto N(b,1)."""
    mode = mode.lower()
    if mode not in ("wl", "iso"):
        raise DomainError(f"mode must be 'wl' or 'iso', not {mode!r}")
    i = _base_index(p, b)
    return _verdict(_cond3(p, i, p.fiber_masks[i], mode))


def _subset_search_at(p: DigitalMap, b: Point) -> Optional[tuple[Point, ...]]:
    """A nonempty subset M of p^-1(b) whose sheets satisfy conditions 1-3
    of the original pseudocovering, preferring larger M; None if none does."""
    i = p.target.index[b]
    fiber = list(_bits(p.fiber_masks[i]))
    if len(fiber) > SUBSET_SEARCH_FIBER_CAP:
        raise DomainError(f"fiber over {b} has {len(fiber)} points; subset search is capped at {SUBSET_SEARCH_FIBER_CAP}")
    for size in range(len(fiber), 0, -1):
        for chosen in combinations(fiber, size):
            m = sum(1 << e for e in chosen)
            _, union, pre = _masks(p, i, m)
            if union != pre or _cond2(p, i, m) or _cond3(p, i, m, "wl"):
                continue
            return tuple(p.source.order[e] for e in chosen)
    return None


# --------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class BaseReport:
    b: Point
    cond1: Optional[bool]
    cond2: Optional[bool]
    cond3: Optional[bool]
    equality38: bool
    index_set: Optional[tuple[Point, ...]] = None

    def to_dict(self) -> dict:
        out = {
            "b": list(self.b),
            "cond1": self.cond1,
            "cond2": self.cond2,
            "cond3": self.cond3,
            "equality38": self.equality38,
        }
        if self.index_set is not None:
            out["index_set"] = [list(e) for e in self.index_set]
        return out


@dataclass(frozen=True)
class PredicateReport:
    predicate: str
    holds: bool
    witness: Optional[Witness] = None
    per_base: list[BaseReport] = field(default_factory=list)

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("a report holds exactly when it has no witness")

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        return {
            "predicate": self.predicate,
            "holds": self.holds,
            "witness": self.witness.to_dict() if self.witness else None,
            "per_base": [r.to_dict() for r in self.per_base],
        }


def _covering_report(name: str, p: DigitalMap, exact: bool, mode: str, subset_search: bool = False) -> PredicateReport:
    surj = surjectivity(p)
    first: Optional[Witness] = surj.witness
    rows = []
    for i, b in enumerate(p.target.order):
        fiber, union, pre = _masks(p, i)
        eq38 = union == pre
        chosen = None
        if subset_search:
            chosen = _subset_search_at(p, b)
            if chosen is not None:
                fiber, union, pre = _masks(p, i, p.source.mask_of(chosen))
        w1 = _cond1(p, i, union, pre, exact)
        w2 = _cond2(p, i, fiber)
        w3 = _cond3(p, i, fiber, mode)
        rows.append(BaseReport(b, w1 is None, w2 is None, w3 is None, eq38, chosen))
        if first is None:
            if subset_search and chosen is None:
                first = CoveringFailure(b, "no-index-set")
            else:
                first = w1 or w2 or w3
    return PredicateReport(name, first is None, first, rows)


def check_original_pseudocovering(p: DigitalMap, subset_search: bool = False) -> PredicateReport:
    return _covering_report("pseudo-original", p, exact=True, mode="wl", subset_search=subset_search)


def check_digital_covering(p: DigitalMap) -> PredicateReport:
    return _covering_report("covering", p, exact=True, mode="iso")


def check_revised_pseudocovering(p: DigitalMap) -> PredicateReport:
    return _covering_report("pseudo-revised", p, exact=False, mode="wl")


def check_wl_surjection(p: DigitalMap) -> PredicateReport:
    v = surjectivity(p)
    if v.holds:
        v = is_wl_isomorphism(p)
    return PredicateReport("wl-surjection", v.holds, v.witness)


def check_local_iso_surjection(p: DigitalMap) -> PredicateReport:
    v = surjectivity(p)
    if v.holds:
        v = is_local_isomorphism(p)
    return PredicateReport("local-iso-surjection", v.holds, v.witness)


def check_inclusion_39(p: DigitalMap) -> PredicateReport:
    """Sheets over each fiber lie inside the preimage of the base neighborhood;
    per-base rows also record whether the two sets are equal."""
    first = None
    rows = []
    for i, b in enumerate(p.target.order):
        _, union, pre = _masks(p, i)
        w = _cond1(p, i, union, pre, exact=False)
        rows.append(BaseReport(b, w is None, None, None, union == pre))
        first = first or w
    return PredicateReport("inclusion-39", first is None, first, rows)


def _wrap(name: str, check: Callable[[DigitalMap], Verdict]) -> Callable[[DigitalMap], PredicateReport]:
    def run(p: DigitalMap) -> PredicateReport:
        v = check(p)
        return PredicateReport(name, v.holds, v.witness)

    run.__name__ = f"check_{name.replace('-', '_')}"
    return run


PREDICATES: dict[str, Callable[[DigitalMap], PredicateReport]] = {
    "continuous": _wrap("continuous", is_continuous),
    "surjective": _wrap("surjective", surjectivity),
    "local-iso": _wrap("local-iso", is_local_isomorphism),
    "wl-iso": _wrap("wl-iso", is_wl_isomorphism),
    "wl-surjection": check_wl_surjection,
    "local-iso-surjection": check_local_iso_surjection,
    "pseudo-original": check_original_pseudocovering,
    "pseudo-revised": check_revised_pseudocovering,
    "covering": check_digital_covering,
    "inclusion-39": check_inclusion_39,
}

# predicates an implication scan may relate
SCAN_PREDICATES = ("continuous", "wl-surjection", "local-iso-surjection", "pseudo-original", "pseudo-revised", "covering")


@dataclass(frozen=True)
class Classification:
    continuous: Verdict
    wl_surjection: PredicateReport
    local_isomorphism: Verdict
    surjective: Verdict
    pseudo_original: PredicateReport
    pseudo_revised: PredicateReport
    covering: PredicateReport

    def flags(self) -> dict[str, bool]:
        return {
            "continuous": self.continuous.holds,
            "wl-surjection": self.wl_surjection.holds,
            "local-iso": self.local_isomorphism.holds,
            "local-iso-surjection": self.local_isomorphism.holds and self.surjective.holds,
            "pseudo-original": self.pseudo_original.holds,
            "pseudo-revised": self.pseudo_revised.holds,
            "covering": self.covering.holds,
        }

    def to_dict(self) -> dict:
        return {
            "flags": self.flags(),
            "continuous": self.continuous.to_dict(),
            "wl-surjection": self.wl_surjection.to_dict(),
            "local-iso": self.local_isomorphism.to_dict(),
            "pseudo-original": self.pseudo_original.to_dict(),
            "pseudo-revised": self.pseudo_revised.to_dict(),
            "covering": self.covering.to_dict(),
        }


def classify(p: DigitalMap) -> Classification:
    return Classification(
        continuous=is_continuous(p),
        wl_surjection=check_wl_surjection(p),
        local_isomorphism=is_local_isomorphism(p),
        surjective=surjectivity(p),
        pseudo_original=check_original_pseudocovering(p),
        pseudo_revised=check_revised_pseudocovering(p),
        covering=check_digital_covering(p),
    )
