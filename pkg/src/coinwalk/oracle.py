"""Dense matrix reference evolution.

Builds the step operator explicitly as shift times block-diagonal coin
on a truncated window and applies it by matrix-vector products. This is
deliberately naive and slow; it exists as an independent check of the
recurrence implementation and refuses more than a handful of steps.

Basis ordering of the flattened vector: spin-up amplitudes over the
window first, then spin-down, i.e. index s*w + i for site lo + i.
"""

from __future__ import annotations

import numpy as np

from .disorder import CoinField
from .errors import ParameterDomainError
from .state import WalkerState

MAX_ORACLE_STEPS = 12


def shift_matrix(w: int) -> np.ndarray:
    """Conditional shift on a w-site window: up moves right, down moves left.

    Rows for amplitude shifted past the window edge stay zero; callers
    must pad the window so the light cone never reaches the edge.
    """
    s = np.zeros((2 * w, 2 * w), dtype=np.complex128)
    for i in range(w - 1):
        s[i + 1, i] = 1.0
    for i in range(1, w):
        s[w + i - 1, w + i] = 1.0
    return s


def coin_layer_matrix(field: CoinField, lo: int, w: int, t: int) -> np.ndarray:
    """Per-site coin at step t as a 2w x 2w matrix in the same basis."""
    c = np.zeros((2 * w, 2 * w), dtype=np.complex128)
    for i in range(w):
        m = field.coin_at(lo + i, t)
        c[i, i] = m.uu
        c[i, w + i] = m.ud
        c[w + i, i] = m.du
        c[w + i, w + i] = m.dd
    return c


def dense_oracle_evolve(state: WalkerState, field: CoinField, steps: int) -> WalkerState:
    """Evolve by explicit step matrices; limited to MAX_ORACLE_STEPS."""
    if steps < 0:
        raise ParameterDomainError(f"step count must be >= 0, got {steps}")
    if steps > MAX_ORACLE_STEPS:
        raise ParameterDomainError(
            f"dense oracle is limited to {MAX_ORACLE_STEPS} steps, got {steps}"
        )
    w0 = len(state.a)
    w = w0 + 2 * steps
    lo = state.lo - steps
    psi = np.zeros(2 * w, dtype=np.complex128)
    psi[steps : steps + w0] = state.a
    psi[w + steps : w + steps + w0] = state.b
    s = shift_matrix(w)
    for k in range(steps):
        u = s @ coin_layer_matrix(field, lo, w, state.t + k + 1)
        psi = u @ psi
    return WalkerState(lo, psi[:w].copy(), psi[w:].copy(), state.t + steps)
