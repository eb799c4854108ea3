"""Shared fixtures and the per-criterion acceptance summary."""

from __future__ import annotations

from collections import defaultdict

import pytest

from quasigalois.corpus import build_curve
from quasigalois.qgal import discover

_CRITERIA = {
    1: "Fermat census, even degrees 4, 6, 8",
    2: "Fermat census, odd degrees 5, 7",
    3: "Hessian sextic: 12 points, group of order 216",
    4: "Klein model: 21 involution centers, group of order 168",
    5: "half-degree family n=7: vertices of order 7, pairwise G-pairs",
    6: "quartic family a=1: Galois center and six involution centers",
    7: "mixed-order degree 7 example",
    8: "property suites",
    9: "flex formula on Fermat quartic and sextic",
    10: "Galois-closure bookkeeping",
}

_outcomes: dict[int, list[bool]] = defaultdict(list)


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes[crit].append(report.outcome == "passed")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.user_properties.append(("criterion", mark.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in _CRITERIA.items():
        runs = _outcomes.get(n)
        if not runs:
            verdict = "NOT RUN"
        else:
            verdict = "PASS" if all(runs) else "FAIL"
        count = f"({sum(runs or [])}/{len(runs or [])} tests)"
        terminalreporter.write_line(f"criterion {n:>2}: {verdict:<7} {count:<14} {title}")


_cache: dict = {}


def corpus_discovery(name, params=None):
    """Cached (curve, certificates) pair for a corpus curve."""
    key = (name, tuple(sorted((params or {}).items())))
    if key not in _cache:
        C = build_curve(name, params)
        _cache[key] = (C, discover(C.form, C.seeds))
    return _cache[key]


@pytest.fixture(scope="session")
def discovered():
    return corpus_discovery


CORPUS_KEYS = [
    ("fermat", {"d": 4}),
    ("fermat", {"d": 5}),
    ("fermat", {"d": 6}),
    ("hessian_sextic", {}),
    ("klein_model", {}),
    ("quartic_family", {"a": 1}),
    ("halfdeg_family", {"n": 3}),
]
