import itertools

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from dessinpairs.perm import Permutation

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def permutations_of(degree: int):
    return st.permutations(list(range(degree))).map(lambda images: Permutation(list(images)))


@st.composite
def perm_pairs(draw, min_degree=1, max_degree=9):
    n = draw(st.integers(min_degree, max_degree))
    return draw(permutations_of(n)), draw(permutations_of(n))


def closure(gens, degree):
    """Brute-force subgroup generated by ``gens``: breadth-first products of image tuples."""
    ident = tuple(range(degree))
    gens = [tuple(g.images) for g in gens]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                k = tuple(g[i] for i in h)  # h then g
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return seen


def sl2_order_bruteforce(m: int) -> int:
    return sum(1 for a, b, c, d in itertools.product(range(m), repeat=4) if (a * d - b * c) % m == 1)


@pytest.fixture(scope="session")
def ex5_triple():
    from dessinpairs.perm import perm_from_cycles
    from dessinpairs.triangle import make_triple

    x = perm_from_cycles([(1, 2), (3, 4)], 5)
    y = perm_from_cycles([(1, 3), (2, 4, 5)], 5)
    return make_triple(x, y, type=(2, 6, 6))


# one summary line per acceptance criterion, printed after the run
_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    item_doc = getattr(report, "criterion", None)
    if item_doc is None or report.when != "call" and report.outcome != "failed":
        return
    number, title = item_doc
    if report.when == "call" or number not in _CRITERIA:
        _CRITERIA[number] = (title, "PASS" if report.passed else "FAIL")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, status = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")
