import pytest


@pytest.fixture
def criterion(request):
    """Record one acceptance line: ``criterion(k, ok, detail)``."""
    store = request.config.stash.setdefault(_KEY, {})

    def record(k, ok, detail):
        line = f"criterion {k}: {'PASS' if ok else 'FAIL'} | {detail}"
        store[k] = line
        print(line)
        return ok

    return record


_KEY = pytest.StashKey[dict]()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_KEY, {})
    if store:
        terminalreporter.section("acceptance criteria")
        for k in sorted(store):
            terminalreporter.write_line(store[k])
