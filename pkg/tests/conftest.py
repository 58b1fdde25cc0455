import pytest

from digicover import DigitalImage, DigitalMap, make_scc

# c_i -> d_i on the unit square, with the d labels swapped on the top row
C = {"c0": (0, 0), "c1": (1, 0), "c2": (1, 1), "c3": (0, 1)}
D = {"d0": (0, 0), "d1": (1, 0), "d2": (0, 1), "d3": (1, 1)}
SQUARE = list(C.values())


def badexl(src="4", dst="4"):
    X = DigitalImage.of(SQUARE, src)
    Y = DigitalImage.of(SQUARE, dst)
    return DigitalMap(X, Y, {C[f"c{i}"]: D[f"d{i}"] for i in range(4)})


def interval(a, b):
    return DigitalImage.of([(i,) for i in range(a, b + 1)], 2)


@pytest.fixture
def scc4():
    return make_scc(4, 4)


@pytest.fixture
def scc8():
    return make_scc(4, 8)


@pytest.fixture
def wrap(scc4, scc8):
    (S8, p8), (S4, p4) = scc8, scc4
    return DigitalMap(S8, S4, {p8[i]: p4[i % 4] for i in range(8)})


@pytest.fixture
def pathwrap(scc4):
    S4, p4 = scc4
    return DigitalMap(interval(0, 3), S4, {(i,): p4[i] for i in range(4)})


@pytest.fixture
def inclusion():
    return DigitalMap.inclusion(interval(0, 1), interval(0, 2))


@pytest.fixture
def fold():
    return DigitalMap(interval(0, 2), interval(0, 1), {(0,): (0,), (1,): (1,), (2,): (0,)})


@pytest.fixture
def badexl44():
    return badexl("4", "4")


@pytest.fixture
def badexl48():
    return badexl("4", "8")


# lines recorded by the acceptance suite, echoed in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
