from __future__ import annotations

import random
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).resolve().parent))

from linklab import catalog  # noqa: E402
from linklab.diagram import crossing_change, from_passages  # noqa: E402
from linklab.moves import apply_move, reidemeister_moves  # noqa: E402

settings.register_profile("ci", derandomize=True, deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")

ROOT = Path(__file__).resolve().parents[1]


def code(*word):
    return [(int(w[1:]), w[0] == "O") for w in word]


UNKNOT = from_passages([("K", [])], {})
TREFOIL = from_passages([("K", code("O1", "U2", "O3", "U1", "O2", "U3"))], {1: 1, 2: 1, 3: 1})
HOPF = from_passages([("A", code("O1", "U2")), ("B", code("U1", "O2"))], {1: 1, 2: 1})
SPLIT2 = from_passages([("A", []), ("B", [])], {})


def inflate(d, rng: random.Random, steps: int, cap: int = 10):
    """Apply ``steps`` random moves, preferring ones that add crossings
    while the diagram is small."""
    for _ in range(steps):
        moves = reidemeister_moves(d)
        if d.crossing_count >= cap:
            moves = [m for m in moves if m.crossing_delta <= 0] or moves
        d = apply_move(d, rng.choice(moves))
    return d


def random_knot(seed: int, steps: int = 8, cap: int = 10):
    """Random connected knot diagram: an inflated unknot with random
    crossing changes."""
    rng = random.Random(seed)
    while True:
        d = inflate(UNKNOT, rng, rng.randint(3, steps), cap)
        for c in d.crossings:
            if rng.random() < 0.5:
                d = crossing_change(d, c.id)
        if d.crossing_count and len(d.pieces) == 1:
            return d


@pytest.fixture(scope="session")
def paper_L():
    return catalog.load("paper_L")


@pytest.fixture(scope="session")
def witnesses():
    return catalog.paper_witnesses()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
