import pytest

from traintrack.specfile import BUNDLED, bundled

SPECS = {name: bundled(name) for name in BUNDLED}
MAPS = {name: spec.to_graph_map() for name, spec in SPECS.items()}

# transition matrices of the four bundled maps, rows and columns in edge order
MATRICES = {
    "bk": [[0, 3, 2], [1, 0, 0], [0, 1, 1]],
    "bk-inv": [[0, 1, 0], [1, 0, 2], [1, 0, 3]],
    "tribonacci": [[1, 1, 1], [1, 0, 0], [0, 1, 0]],
    "tribonacci-inv": [[0, 1, 0, 0], [0, 0, 1, 0], [1, 0, 0, 1], [1, 1, 0, 0]],
}


@pytest.fixture(params=BUNDLED)
def spec_name(request):
    return request.param


@pytest.fixture
def gm(spec_name):
    return MAPS[spec_name]


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS, report_line

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for i in sorted(RESULTS):
            terminalreporter.write_line(report_line(i))
