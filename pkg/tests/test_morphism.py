import pytest
from hypothesis import assume, given, settings, strategies as st

from digicov import (
    DigitalImage,
    DigitalMap,
    DomainError,
    compose,
    is_connected,
    is_continuous,
    is_isomorphism,
    is_local_isomorphism,
    is_wl_isomorphism,
    neighborhood,
    restrict,
)
from digicov.morphism import (
    InverseNotContinuousAt,
    LocalFailure,
    NonContinuousAt,
    NotInjective,
    NotSurjective,
    witness_from_dict,
)

from conftest import images, line, maps


def test_identity_and_constant_are_continuous(diamond):
    X = diamond.image
    assert is_continuous(DigitalMap.identity(X))
    y = diamond[0]
    assert is_continuous(DigitalMap.from_function(X, X, lambda p: y))


def test_wrap_map_continuous(wrap12, diamond):
    # per-point oracle: consecutive integers land on equal or cyclically consecutive curve points
    for t in range(12):
        i, j = t % 4, (t + 1) % 4
        assert (j - i) % 4 in (1, 3)
    assert is_continuous(wrap12)


def test_noncontinuous_witness(diamond):
    f = DigitalMap(line(0, 1), diamond.image, {(0,): diamond[0], (1,): diamond[2]})
    v = is_continuous(f)
    assert not v.holds
    assert v.witness == NonContinuousAt((0,), (1,))
    assert v.witness.certifies(f)


def test_isomorphism_examples(wrap12):
    X = line(0, 1, 2)
    assert is_isomorphism(DigitalMap.identity(X))

    v = is_isomorphism(wrap12)
    assert isinstance(v.witness, NotInjective)

    k8 = DigitalImage.from_points([(0, 0), (1, 1)], t=2)
    assert is_isomorphism(DigitalMap(line(0, 1), k8, {(0,): (0, 0), (1,): (1, 1)}))
    k4 = DigitalImage.from_points([(0, 0), (1, 1)], t=1)
    v = is_isomorphism(DigitalMap(line(0, 1), k4, {(0,): (0, 0), (1,): (1, 1)}))
    assert isinstance(v.witness, (NonContinuousAt, InverseNotContinuousAt))

    # continuous bijection whose inverse is not continuous
    g = DigitalMap(line(0, 2), line(0, 1), {(0,): (0,), (2,): (1,)})
    assert is_continuous(g)
    v = is_isomorphism(g)
    assert v.witness == InverseNotContinuousAt((0,), (1,))
    assert v.witness.certifies(g)

    h = DigitalMap(line(0, 1), line(0, 1, 2), {(0,): (0,), (1,): (1,)})
    assert is_isomorphism(h).witness == NotSurjective((2,))


def test_restrict(wrap12, diamond):
    X = line(0, 1, 2)
    idn = DigitalMap.identity(X)
    assert restrict(idn, X.points, X.points) == idn

    S = {(0,), (1,), (2,)}
    T = neighborhood(diamond.image, diamond[1]).members
    r = restrict(wrap12, S, T)
    assert r.source.points == S and r.target.points == T
    assert r.source.kind == wrap12.source.kind

    with pytest.raises(DomainError):
        restrict(wrap12, S, {diamond[0], diamond[1]})


def test_local_isomorphism_examples(wrap12, diamond, double_cover):
    assert is_local_isomorphism(DigitalMap.identity(diamond.image))

    # counting oracle: |N(0)| = 2 in the window, |N(x_0)| = 3 on the curve
    assert len(neighborhood(wrap12.source, (0,))) == 2
    assert len(neighborhood(diamond.image, diamond[0])) == 3
    v = is_local_isomorphism(wrap12)
    assert v.witness.x == (0,) and v.witness.reason == "not-onto"
    assert v.witness.certifies(wrap12)

    assert is_local_isomorphism(double_cover)


def test_wl_isomorphism_examples(wrap12, double_cover):
    assert is_wl_isomorphism(wrap12)
    assert is_wl_isomorphism(double_cover)

    collapse = DigitalMap(line(0, 1, 2), line(5), {(0,): (5,), (1,): (5,), (2,): (5,)})
    v = is_wl_isomorphism(collapse)
    assert v.witness == LocalFailure((0,), "not-injective", "wl", NotInjective((0,), (1,)))
    assert v.witness.certifies(collapse)


def test_wl_needs_inverse_continuity():
    # N(1) = {0,1,2} maps injectively and continuously onto a triangle, whose
    # extra edge has no counterpart in the source
    tri = DigitalImage.from_points([(0, 0), (1, 0), (0, 1)], t=2)
    f = DigitalMap(line(0, 1, 2), tri, {(0,): (1, 0), (1,): (0, 0), (2,): (0, 1)})
    assert is_continuous(f)
    v = is_wl_isomorphism(f)
    assert v.witness.reason == "inverse-not-continuous"
    assert v.witness.certifies(f)


def test_compose(wrap12):
    idn = DigitalMap.identity(wrap12.source)
    assert compose(idn, wrap12) == wrap12
    with pytest.raises(DomainError):
        compose(wrap12, wrap12)


def test_map_validation(diamond):
    with pytest.raises(DomainError):
        DigitalMap(line(0, 1), diamond.image, {(0,): diamond[0]})
    with pytest.raises(DomainError):
        DigitalMap(line(0), diamond.image, {(0,): (9, 9)})


def test_map_json_round_trip(wrap12, tmp_path):
    data = wrap12.to_dict()
    assert DigitalMap.from_dict(data) == wrap12
    (tmp_path / "src.json").write_text(__import__("json").dumps(wrap12.source.to_dict()))
    data["source"] = "src.json"
    assert DigitalMap.from_dict(data, base=tmp_path) == wrap12
    dup = wrap12.to_dict()
    dup["pairs"].append(dup["pairs"][0])
    with pytest.raises(DomainError):
        DigitalMap.from_dict(dup)
    partial = wrap12.to_dict()
    partial["pairs"].pop()
    with pytest.raises(DomainError):
        DigitalMap.from_dict(partial)


@settings(max_examples=300)
@given(maps())
def test_witnesses_certify(f):
    for check in (is_continuous, is_isomorphism, is_local_isomorphism, is_wl_isomorphism):
        v = check(f)
        if not v.holds:
            assert v.witness.certifies(f)
            assert witness_from_dict(v.witness.to_dict()) == v.witness


@settings(max_examples=300)
@given(maps())
def test_iso_local_wl_chain(f):
    assume(is_connected(f.source) and is_connected(f.target))
    if is_isomorphism(f):
        assert is_local_isomorphism(f)
    if is_local_isomorphism(f):
        assert is_wl_isomorphism(f)
        # the image of a local isomorphism is closed under target adjacency
        assert f.is_surjective()


@given(maps(), st.data())
def test_composition_closure(f, data):
    tgt = data.draw(images())
    values = data.draw(st.lists(st.sampled_from(tgt.order), min_size=len(f.target), max_size=len(f.target)))
    g = DigitalMap(f.target, tgt, dict(zip(f.target.order, values)))
    if is_continuous(f) and is_continuous(g):
        assert is_continuous(compose(f, g))
