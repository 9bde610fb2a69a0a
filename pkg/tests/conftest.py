import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

import acceptance_log


def pytest_terminal_summary(terminalreporter):
    if acceptance_log.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.RESULTS:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def corpus_graphs():
    import corpus

    return corpus.acceptance_corpus()
