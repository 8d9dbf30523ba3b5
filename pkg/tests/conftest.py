import time

import pytest

ACCEPTANCE = {}


class _Recorder:
    def __init__(self, key, title, limit):
        self.key, self.title, self.limit = key, title, limit
        self.notes = []

    def note(self, text):
        self.notes.append(text)


@pytest.fixture
def criterion(request):
    """Times an acceptance test and records a one-line verdict for the summary."""
    holder = {}

    def start(key, title, limit):
        holder["rec"] = _Recorder(key, title, limit)
        holder["t0"] = time.perf_counter()
        return holder["rec"]

    yield start
    rec = holder.get("rec")
    if rec is None:
        return
    elapsed = time.perf_counter() - holder["t0"]
    report = getattr(request.node, "rep_call", None)
    passed = bool(report and report.passed)
    ACCEPTANCE[rec.key] = (passed, rec.title, elapsed, rec.limit, "; ".join(rec.notes))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        passed, title, elapsed, limit, notes = ACCEPTANCE[key]
        verdict = "PASS" if passed else "FAIL"
        line = f"[{verdict}] {key:>2}. {title} ({elapsed:.2f} s, limit {limit} s)"
        if notes:
            line += f" -- {notes}"
        terminalreporter.write_line(line)
