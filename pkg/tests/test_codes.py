import numpy as np
import pytest
from conftest import brute_span

from gsscodes import codes
from gsscodes.codes import (
    BudgetExceeded,
    LinearCode,
    dual,
    min_weight,
    puncture,
    shorten,
    subfield_subcode,
    trace_code,
)
from gsscodes.fields import FieldTower
from gsscodes.properties import random_code

T4 = FieldTower(2, 1, 2)


def test_shorten_and_puncture_match_definitions(rng):
    F = T4.top
    for _ in range(20):
        n = int(rng.integers(3, 7))
        C = random_code(F, n, int(rng.integers(1, 4)), rng)
        words = brute_span(F, C.G)
        I = sorted(rng.choice(n, size=int(rng.integers(1, n)), replace=False).tolist())
        keep = [i for i in range(n) if i not in I]
        short = {tuple(w[i] for i in keep) for w in words if all(w[i] == 0 for i in I)}
        punct = {tuple(w[i] for i in keep) for w in words}
        assert brute_span(F, shorten(C, I).G) == short
        assert brute_span(F, puncture(C, I).G) == punct


def test_subfield_subcode_and_trace_match_definitions(rng):
    T = FieldTower(2, 1, 2)
    for _ in range(15):
        n = int(rng.integers(2, 6))
        C = random_code(T.top, n, int(rng.integers(1, 3)), rng)
        words = brute_span(T.top, C.G)
        rational = {w for w in words if max(w) < T.q}
        assert brute_span(T.base, subfield_subcode(C, T).G) == rational
        traced = {tuple(int(T.trace(x)) for x in w) for w in words}
        assert brute_span(T.base, trace_code(C, T).G) == traced


def test_dual_is_orthogonal_complement(rng):
    F = FieldTower(3, 1, 1).top
    C = random_code(F, 6, 3, rng)
    D = dual(C)
    assert C.k + D.k == 6
    assert not F.matmul(C.G, D.G.T).any()
    assert dual(D) == C


def test_code_equality_is_canonical(rng):
    F = T4.top
    C = random_code(F, 6, 3, rng)
    M = F.random(rng, (3, 3))
    while np.linalg.matrix_rank(M) < 3 or codes.linalg.rank(M, F) < 3:
        M = F.random(rng, (3, 3))
    assert LinearCode(F, F.matmul(M, C.G)) == C


def _brute_min_weight(F, G, block=1):
    ws = [codes.block_weights(np.array(w)[None, :], block)[0] for w in brute_span(F, G) if any(w)]
    return min(ws) if ws else None


def test_distance_methods_agree(rng):
    F = T4.top
    for _ in range(20):
        n = int(rng.integers(4, 9))
        C = random_code(F, n, int(rng.integers(1, 4)), rng)
        expected = _brute_min_weight(F, C.G)
        assert min_weight(F, C.G, n, method="enumerate") == expected
        assert min_weight(F, C.G, n, method="support") == expected


def test_block_distance_methods_agree(rng):
    T = FieldTower(2, 1, 1)
    F = T.top
    for _ in range(15):
        nb, r = int(rng.integers(3, 6)), 2
        G = F.random(rng, (int(rng.integers(1, 5)), nb * r))
        expected = _brute_min_weight(F, G, r)
        if expected is None:
            continue
        assert min_weight(F, G, nb, r, method="support") == expected
        assert min_weight(F, G, nb, r, method="enumerate") == expected


def test_budget_and_upper_bound(rng):
    F = T4.top
    C = random_code(F, 12, 6, rng)
    with pytest.raises(BudgetExceeded):
        min_weight(F, C.G, 12, method="enumerate", budget=10)
    up, word = codes.random_low_weight_search(F, C.G, trials=50, rng=rng)
    assert C.contains(word) and codes.block_weights(word[None, :])[0] == up
    assert up >= C.d


def test_analyze_distance_labels(rng):
    F = T4.top
    C = random_code(F, 6, 2, rng)
    rep = codes.analyze_distance(F, C.G, 6)
    assert rep.exact == C.d and "exact" in rep.label()
    rep = codes.analyze_distance(F, C.G, 6, budget=2, max_weight=1)
    assert rep.exact is None or rep.exact == C.d
    if rep.exact is None:
        assert rep.lower <= C.d <= rep.upper


def test_invalid_positions():
    C = LinearCode.full_space(T4.top, 3)
    with pytest.raises(ValueError):
        shorten(C, [3])
    with pytest.raises(ValueError):
        puncture(C, [0, 0])
