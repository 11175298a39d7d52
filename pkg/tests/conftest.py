from __future__ import annotations

import os
import random

import pytest

ACCEPTANCE_RESULTS: dict[int, tuple[str, bool, str]] = {}


def seed_from_env(default: int) -> int:
    value = os.environ.get("SATKIT_SEED")
    return int(value) if value else default


@pytest.fixture
def rng():
    return random.Random(seed_from_env(20240611))


def random_graph(rng: random.Random, nl: int, nr: int, p: float = 0.5):
    from satkit.bigraph import BipartiteGraph

    rows = []
    for _ in range(nl):
        row = 0
        for j in range(nr):
            if rng.random() < p:
                row |= 1 << j
        rows.append(row)
    return BipartiteGraph.from_rows(rows, nr)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        name, ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k}: {name} ({detail})")
