import pytest

from digicov import (
    check_digital_covering,
    check_original_pseudocovering,
    check_revised_pseudocovering,
    check_wl_surjection,
    cyclic_cover,
    interval_image,
    is_continuous,
    is_isomorphism,
    is_local_isomorphism,
    scc_catalog,
    validate_scc,
    wrap_map,
)
from digicov.covering import check_condition1_original
from digicov.catalog import CurveError, SimpleClosedCurve, catalog_names
from digicov.lattice import AdjacencyKind, DomainError
from digicov.morphism import MissingPreimagePoint


def adjacency_table(pts, t):
    """Pairwise adjacency by Chebyshev distance 1 and at most t differing coordinates."""
    def adj(p, q):
        d = [abs(a - b) for a, b in zip(p, q)]
        return max(d) == 1 and sum(1 for c in d if c) <= t
    return {(i, j) for i in range(len(pts)) for j in range(len(pts)) if i < j and adj(pts[i], pts[j])}


def cyclic_pairs(l):
    return {(i, j) for i in range(l) for j in range(i + 1, l) if (j - i) % l in (1, l - 1)}


DIAMOND = [(1, 0), (0, 1), (-1, 0), (0, -1)]
RING = [(2, 0), (1, 1), (0, 2), (-1, 1), (-2, 0), (-1, -1), (0, -2), (1, -1)]


def test_validate_scc_examples():
    assert adjacency_table(DIAMOND, 2) == cyclic_pairs(4)
    c = validate_scc(DIAMOND, AdjacencyKind(2, 2))
    assert c.l == 4 and c.name == "sc8-2-4"

    assert adjacency_table(RING, 2) == cyclic_pairs(8)
    assert validate_scc(RING, AdjacencyKind(2, 2)).name == "sc8-2-8"

    with pytest.raises(CurveError) as err:
        validate_scc(DIAMOND, AdjacencyKind(1, 2))
    assert err.value.pair == (0, 1)


def test_validate_scc_rejections():
    with pytest.raises(CurveError):
        validate_scc(DIAMOND[:3], AdjacencyKind(2, 2))
    with pytest.raises(CurveError):
        validate_scc(DIAMOND + [DIAMOND[0]], AdjacencyKind(2, 2))
    # a 2x2 block is a 4-clique under 8-adjacency
    with pytest.raises(CurveError) as err:
        validate_scc([(0, 0), (1, 0), (1, 1), (0, 1)], AdjacencyKind(2, 2))
    assert err.value.pair == (0, 2)


@pytest.mark.parametrize("name", catalog_names())
def test_catalog_curves_validate(name):
    c = scc_catalog(name)
    assert c.name == name
    assert adjacency_table(list(c.order), c.image.kind.t) == cyclic_pairs(c.l)
    # orientation convention the wrap-map witness relies on
    assert c[c.l - 1] < c[1]


def test_catalog_named_examples():
    assert scc_catalog("sc8-2-4").order == tuple(DIAMOND)
    assert scc_catalog("sc4-2-8").order == ((0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1))
    with pytest.raises(DomainError):
        scc_catalog("sc8-2-3")


def test_curve_json_round_trip():
    c = scc_catalog("sc8-2-7")
    assert SimpleClosedCurve.from_dict(c.to_dict()) == c


def test_interval_image():
    assert interval_image(0, 3).points == {(0,), (1,), (2,), (3,)}
    assert len(interval_image(5, 5)) == 1
    assert len(interval_image(0, 12)) == 13
    with pytest.raises(DomainError):
        interval_image(3, 2)


def test_wrap_map_basics(diamond):
    p = wrap_map(diamond, 12)
    assert p((5,)) == diamond[1]
    assert len(p.source) == 13
    assert len(wrap_map(diamond).source) == 13
    with pytest.raises(DomainError):
        wrap_map(diamond, 2)


def test_cyclic_cover():
    big, small = scc_catalog("sc8-2-8"), scc_catalog("sc8-2-4")
    assert check_digital_covering(cyclic_cover(big, small))
    idn = cyclic_cover(big, big)
    assert is_isomorphism(idn) and all(idn(x) == x for x in big.order)
    with pytest.raises(DomainError):
        cyclic_cover(big, scc_catalog("sc26-3-5"))


@pytest.mark.parametrize("name", catalog_names())
def test_wrap_map_properties(name):
    c = scc_catalog(name)
    for end in range(c.l - 1, 4 * c.l):
        p = wrap_map(c, end)
        assert is_continuous(p) and check_wl_surjection(p)
        assert not is_local_isomorphism(p)
        if end >= 2 * c.l - 1:
            r = check_original_pseudocovering(p)
            assert not r.holds
            row = next(row for row in r.per_base if row.b == c[c.l - 1])
            assert row.cond1 is False
            assert check_condition1_original(p, c[c.l - 1]).witness == MissingPreimagePoint(c[c.l - 1], (0,))
            assert check_revised_pseudocovering(p)


def test_double_length_covers():
    curves = [scc_catalog(n) for n in catalog_names()]
    pairs = [(b, s) for b in curves for s in curves if b.l == 2 * s.l]
    assert pairs
    for big, small in pairs:
        assert check_digital_covering(cyclic_cover(big, small))
