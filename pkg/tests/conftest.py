import pytest
from hypothesis import strategies as st

from digicov import DigitalImage, DigitalMap, cyclic_cover, scc_catalog, wrap_map
from digicov.lattice import AdjacencyKind


@pytest.fixture
def diamond():
    return scc_catalog("sc8-2-4")


@pytest.fixture
def wrap12(diamond):
    return wrap_map(diamond, 12)


@pytest.fixture
def double_cover(diamond):
    return cyclic_cover(scc_catalog("sc8-2-8"), diamond)


def line(*xs, t=1):
    return DigitalImage.from_points(xs, t=t, dim=1)


@st.composite
def images(draw, max_points=5, dim=None, box=3, nonempty=True):
    n = draw(st.integers(1, 2)) if dim is None else dim
    t = draw(st.integers(1, n))
    cell = st.tuples(*[st.integers(0, box - 1)] * n)
    pts = draw(st.sets(cell, min_size=1 if nonempty else 0, max_size=max_points))
    return DigitalImage(AdjacencyKind(t, n), frozenset(pts))


@st.composite
def maps(draw, max_points=5):
    S = draw(images(max_points=max_points))
    T = draw(images(max_points=max_points))
    tgt = sorted(T.points)
    values = draw(st.lists(st.sampled_from(tgt), min_size=len(S), max_size=len(S)))
    return DigitalMap(S, T, dict(zip(sorted(S.points), values)))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line_ in ACCEPTANCE_LINES:
            terminalreporter.write_line(line_)
