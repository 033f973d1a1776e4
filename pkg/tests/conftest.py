import numpy as np
import pytest

from gsscodes.fields import FieldTower
from gsscodes.rng import make_rng
from gsscodes.rs import GrsSpec


@pytest.fixture
def rng():
    return make_rng(1234)


@pytest.fixture(scope="session")
def gf8():
    return FieldTower(2, 1, 3)


@pytest.fixture(scope="session")
def rs7_5(gf8):
    return GrsSpec.reed_solomon(gf8, 7, 5)


@pytest.fixture(scope="session")
def rs7_6(gf8):
    return GrsSpec.reed_solomon(gf8, 7, 6)


def brute_span(F, G):
    """All codewords, enumerated without the library's span helper."""
    import itertools

    G = np.asarray(G, dtype=np.int64)
    k, n = G.shape
    words = []
    for coeffs in itertools.product(range(F.order), repeat=k):
        w = np.zeros(n, dtype=np.int64)
        for c, row in zip(coeffs, G):
            w = F.add(w, F.mul(c, row))
        words.append(tuple(int(x) for x in w))
    return set(words)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not any(mod.RESULTS.values()):
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for c, title in mod.CRITERIA.items():
        parts = mod.RESULTS[c]
        if not parts:
            tr.write_line(f"[ SKIP ] {c}. {title} (not run)")
            continue
        verdict = "PASS" if all(ok for _, ok in parts) else "FAIL"
        tr.write_line(f"[ {verdict} ] {c}. {title}")
        for part, ok in parts:
            tr.write_line(f"           {'ok  ' if ok else 'FAIL'} {part}")
