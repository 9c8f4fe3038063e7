import pytest

from qvir.exact import RatFunc


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("QVIR_CACHE_DIR", str(tmp_path / "cache"))


@pytest.fixture(scope="session")
def V():
    """Symbol lookup: V.q, V.t, V.u, ..."""
    class _V:
        def __getattr__(self, name):
            return RatFunc.var(name)
    return _V()


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    """acceptance(label, ok, note) records one PASS/FAIL line for the summary."""
    def record(label, ok, note=""):
        line = f"criterion {label}: {'PASS' if ok else 'FAIL'}" + (f"  ({note})" if note else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        def order(line):
            label = line.split(":")[0].split()[1]
            digits = label.rstrip("abcdefgh")
            return int(digits), label[len(digits):]

        for line in sorted(ACCEPTANCE_LINES, key=order):
            terminalreporter.write_line(line)
