from __future__ import annotations

import random

import networkx as nx
import pytest

from forts import kernels
from forts.graph import Graph, from_edge_list


def nx_to_graph(h) -> Graph:
    h = nx.convert_node_labels_to_integers(h)
    return from_edge_list(h.edges(), h.number_of_nodes())


def random_tree(n: int, rng: random.Random) -> Graph:
    if n == 1:
        return from_edge_list([], 1)
    if n == 2:
        return from_edge_list([(0, 1)], 2)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    return nx_to_graph(nx.from_prufer_sequence(seq))


@pytest.fixture(params=sorted(kernels.available_backends()))
def backend(request):
    return kernels.available_backends()[request.param]


@pytest.fixture(scope="session")
def rng():
    return random.Random(20240611)


# --- acceptance reporting: one line per criterion in the terminal summary ----------------

_CRITERIA: list[tuple[str, str, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    if rep.when == "setup" and rep.passed:
        return
    detail = dict(item.user_properties).get("detail", "")
    _CRITERIA.append(("PASS" if rep.passed else "FAIL", mark.args[0], detail))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for status, name, detail in _CRITERIA:
        terminalreporter.write_line(f"[{status}] {name}" + (f" -- {detail}" if detail else ""))
