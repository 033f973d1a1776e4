"""Randomized property suites: duality identities and cross-algorithm equalities.

Each suite returns ``(trials, failures)`` where failures lists a short
description of every mismatching instance.
"""

from __future__ import annotations

import numpy as np

from . import gss
from .blocks import BlockCode, MonomialIsometry, adjoint_isometry, apply_isometry, q_ary_image
from .codes import LinearCode, dual, puncture, shorten, subfield_subcode, trace_code
from .fields import FieldTower
from .rs import GrsSpec, alternant_code

SMALL_TOWERS = ((2, 1, 2), (2, 1, 3))


def _tower(rng, towers=SMALL_TOWERS) -> FieldTower:
    return FieldTower(*towers[rng.integers(len(towers))])


def random_code(F, n: int, k: int, rng) -> LinearCode:
    return LinearCode(F, F.random(rng, (k, n)), n=n)


def random_grs(tower: FieldTower, rng, n_max: int = 12) -> GrsSpec:
    F = tower.top
    n = int(rng.integers(2, min(n_max, F.order) + 1))
    support = rng.choice(F.order, size=n, replace=False)
    v = F.random(rng, n, nonzero=True)
    k = int(rng.integers(1, n))
    return GrsSpec(tower, support, v, k)


def puncture_shorten_duality(trials: int, rng) -> tuple[int, list[str]]:
    """dual(Punct_I(C)) == Short_I(dual(C))."""
    fails = []
    for i in range(trials):
        F = _tower(rng).top
        n = int(rng.integers(2, 13))
        C = random_code(F, n, int(rng.integers(1, n + 1)), rng)
        I = sorted(rng.choice(n, size=int(rng.integers(1, n)), replace=False).tolist())
        if dual(puncture(C, I)) != shorten(dual(C), I):
            fails.append(f"trial {i}: GF({F.order}) n={n} I={I}")
    return trials, fails


def subfield_trace_duality(trials: int, rng) -> tuple[int, list[str]]:
    """dual(C restricted to GF(q)) == trace of dual(C)."""
    fails = []
    for i in range(trials):
        T = _tower(rng)
        n = int(rng.integers(2, 13))
        C = random_code(T.top, n, int(rng.integers(1, n + 1)), rng)
        if dual(subfield_subcode(C, T)) != trace_code(dual(C), T):
            fails.append(f"trial {i}: GF({T.top.order}) n={n}")
    return trials, fails


def isometry_dual(trials: int, rng) -> tuple[int, list[str]]:
    """dual(f(C)) == f*(dual(C)) for block-diagonal isometries of a q-ary image."""
    fails = []
    for i in range(trials):
        T = _tower(rng)
        n = int(rng.integers(2, 13))
        C = q_ary_image(random_code(T.top, n, int(rng.integers(1, n + 1)), rng), T)
        f = MonomialIsometry.random(T.base, n, T.m, rng, permute=False)
        left = apply_isometry(C, f).dual()
        right = apply_isometry(C.dual(), adjoint_isometry(f))
        if left != right:
            fails.append(f"trial {i}: GF({T.top.order}) n={n}")
    return trials, fails


def algorithm1_vs_shortening(trials: int, rng) -> tuple[int, list[str]]:
    fails = []
    for i in range(trials):
        spec = random_grs(_tower(rng), rng)
        C = spec.code()
        u = rng.integers(1, spec.tower.m + 1, size=spec.n)
        if gss.gss_algorithm1(C, u, spec.tower) != gss.s_u(C, u, spec.tower):
            fails.append(f"trial {i}: u={u.tolist()}")
    return trials, fails


def algorithm2_vs_algorithm3(trials: int, rng) -> tuple[int, list[str]]:
    fails = []
    for i in range(trials):
        spec = random_grs(_tower(rng), rng)
        T, C = spec.tower, spec.code()
        mon = MonomialIsometry.random(T.base, spec.n, T.m, rng)
        y = gss.y_from_isometry(mon, T)
        if gss.gss_algorithm2(C, mon, T) != gss.gss_algorithm3(C, mon.perm, y, T):
            fails.append(f"trial {i}: n={spec.n}")
    return trials, fails


def algorithm4_vs_algorithm3(trials: int, rng) -> tuple[int, list[str]]:
    """Subspace route with one-dimensional V_i = <y_i> against the multiplier route."""
    fails = []
    for i in range(trials):
        spec = random_grs(_tower(rng), rng)
        T, C = spec.tower, spec.code()
        y = T.top.random(rng, spec.n, nonzero=True)
        perm = rng.permutation(spec.n)
        W = gss.SubspaceFamily.from_elements(T, y[:, None])
        via_w = gss.gss_w(C, W).permute_blocks(perm)
        via_y = gss.gss_algorithm3(C, perm, y, T)
        if via_w.linear != via_y:
            fails.append(f"trial {i}: n={spec.n}")
    return trials, fails


def gss_vs_alternant(trials: int, rng) -> tuple[int, list[str]]:
    """One-dimensional GSS of a GRS code is the alternant code with multipliers v_i / y_i."""
    fails = []
    for i in range(trials):
        spec = random_grs(_tower(rng), rng)
        T, F = spec.tower, spec.tower.top
        y = F.random(rng, spec.n, nonzero=True)
        lhs = gss.gss_algorithm3(spec.code(), None, y, T)
        rhs = alternant_code(spec.with_multipliers(F.div(spec.multipliers, y)))
        if lhs != rhs:
            fails.append(f"trial {i}: n={spec.n}")
    return trials, fails


def membership(code: BlockCode, W: gss.SubspaceFamily, parent: LinearCode) -> bool:
    """Every generator row, embedded through W, is a parent codeword."""
    words = np.stack([W.embed(row) for row in code.G]) if code.k_q else np.zeros((0, W.n), dtype=np.int64)
    return all(parent.contains(w) for w in words)


DUALITY_SUITES = {
    "puncture-shorten duality": puncture_shorten_duality,
    "subfield-trace duality": subfield_trace_duality,
    "isometry adjoint duality": isometry_dual,
}

EQUIVALENCE_SUITES = {
    "parity route = shortened image": algorithm1_vs_shortening,
    "adjoint route = multiplier route": algorithm2_vs_algorithm3,
    "subspace route (r=1) = multiplier route": algorithm4_vs_algorithm3,
    "one-dimensional GSS of GRS = alternant": gss_vs_alternant,
}


__all__ = [
    "DUALITY_SUITES",
    "EQUIVALENCE_SUITES",
    "membership",
    "random_code",
    "random_grs",
]
