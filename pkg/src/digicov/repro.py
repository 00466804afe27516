"""Mechanical reproduction of the named results: each runner returns a list
of claims, every one of which must hold for the result to be confirmed."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from digicov.catalog import catalog_names, scc_catalog, wrap_map
from digicov.covering import (
    check_digital_covering,
    check_inclusion_39,
    check_original_pseudocovering,
    check_revised_pseudocovering,
    check_wl_surjection,
)
from digicov.morphism import MissingPreimagePoint, is_local_isomorphism
from digicov.oracle import EnumerationBounds, classified_maps, implication_scan


@dataclass(frozen=True)
class Claim:
    statement: str
    ok: bool
    detail: str = ""


def wrap_curves(lengths=range(4, 9)):
    """Catalog curves whose length lies in ``lengths``, in catalog order."""
    return [c for c in map(scc_catalog, catalog_names()) if c.l in lengths]


def remark_wrap_map(bounds: EnumerationBounds | None = None) -> list[Claim]:
    claims = []
    for curve in wrap_curves():
        p = wrap_map(curve)
        l = curve.l
        orig = check_original_pseudocovering(p)
        expected = MissingPreimagePoint(curve[l - 1], (0,))
        claims.append(Claim(
            f"{curve.name}: wrap map on [0,{3 * l}] is not an original pseudocovering "
            f"(b = x_{l - 1}, missing 0)",
            not orig.holds and orig.witness == expected and orig.witness.certifies(p),
            f"witness {orig.witness.to_dict() if orig.witness else None}",
        ))
        claims.append(Claim(
            f"{curve.name}: wrap map is a revised pseudocovering",
            check_revised_pseudocovering(p).holds,
        ))
    return claims


def sheet_inclusion(bounds: EnumerationBounds | None = None) -> list[Claim]:
    bounds = bounds or EnumerationBounds()
    violations = 0
    checked = 0
    for p, flags in classified_maps(bounds):
        if flags["wl-surjection"]:
            checked += 1
            if not check_inclusion_39(p).holds:
                violations += 1
    claims = [Claim(
        "sheets over every fiber lie inside the preimage of the base neighborhood, for every WL-surjection scanned",
        checked > 0 and violations == 0,
        f"{checked} WL-surjections, {violations} violations",
    )]
    for curve in wrap_curves():
        p = wrap_map(curve)
        row = next(r for r in check_inclusion_39(p).per_base if r.b == curve[curve.l - 1])
        claims.append(Claim(
            f"{curve.name}: inclusion is strict at b = x_{curve.l - 1}",
            row.cond1 is True and row.equality38 is False,
        ))
    return claims


def _scan_claim(hyp: str, concl: str, expect_empty: bool, bounds: EnumerationBounds) -> Claim:
    found = implication_scan(hyp, concl, bounds)
    if expect_empty:
        return Claim(f"{hyp} implies {concl}", not found, f"{len(found)} counterexamples")
    detail = f"{len(found)} counterexamples"
    if found:
        detail += f"; smallest has {len(found[0].map.source)} -> {len(found[0].map.target)} points"
    return Claim(f"{hyp} does not imply {concl}", bool(found), detail)


def wl_lattice(bounds: EnumerationBounds | None = None) -> list[Claim]:
    bounds = bounds or EnumerationBounds()
    return [
        _scan_claim("pseudo-original", "wl-surjection", True, bounds),
        _scan_claim("wl-surjection", "pseudo-original", False, bounds),
        _scan_claim("wl-surjection", "pseudo-revised", True, bounds),
        _scan_claim("pseudo-revised", "wl-surjection", True, bounds),
    ]


def covering_is_local_iso(bounds: EnumerationBounds | None = None) -> list[Claim]:
    bounds = bounds or EnumerationBounds()
    return [
        _scan_claim("covering", "local-iso-surjection", True, bounds),
        _scan_claim("local-iso-surjection", "covering", True, bounds),
    ]


def summary(bounds: EnumerationBounds | None = None) -> list[Claim]:
    bounds = bounds or EnumerationBounds()
    claims = [
        _scan_claim("covering", "pseudo-revised", True, bounds),
        _scan_claim("pseudo-revised", "covering", False, bounds),
        _scan_claim("wl-surjection", "pseudo-revised", True, bounds),
        _scan_claim("pseudo-revised", "wl-surjection", True, bounds),
    ]
    for curve in wrap_curves():
        p = wrap_map(curve)
        claims.append(Claim(
            f"{curve.name}: wrap map is a WL-surjection and revised pseudocovering, "
            "but neither a local isomorphism nor a digital covering",
            check_wl_surjection(p).holds
            and check_revised_pseudocovering(p).holds
            and not is_local_isomorphism(p).holds
            and not check_digital_covering(p).holds,
        ))
    return claims


RESULTS: dict[str, Callable[..., list[Claim]]] = {
    "remark-3-1": remark_wrap_map,
    "prop-3-9": sheet_inclusion,
    "corollary": wl_lattice,
    "theorem-1": covering_is_local_iso,
    "summary": summary,
}
