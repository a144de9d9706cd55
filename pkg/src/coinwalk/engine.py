"""Batched evolution engine.

Evolves a block of disorder realizations in lockstep over a shared
window, tracking per-step reduced-spin sums and position moments
inside the same fused kernel that performs the coin-and-shift update.
Only the light cone is touched: the active slice grows by one column
per side each step.

Coins travel as six real planes (sqrt q, sqrt(1-q), cos/sin theta,
cos/sin phi). For the fluctuating regime with a two-coin ensemble the
counter RNG runs inside the kernel (same mixing chain as rng.absorb,
checked bit for bit against the numpy path by tests); everything else
gets planes from disorder.coin_planes, which vectorizes the trig.

All loops accumulate in a fixed serial order, so results are identical
for any chunking or thread count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba as nb
import numpy as np

from .disorder import Ensemble, Regime, TwoCoin, _plane_point, coin_planes, stream_bases
from .errors import ParameterDomainError

_GOLD = np.uint64(0x9E3779B97F4A7C15)
_MK1 = np.uint64(0xBF58476D1CE4E5B9)
_MK2 = np.uint64(0x94D049BB133111EB)
_R30 = np.uint64(30)
_R27 = np.uint64(27)
_R31 = np.uint64(31)
_R11 = np.uint64(11)
_U0 = np.uint64(0)
_TO_UNIT = 2.0 ** -53


@nb.njit(inline="always")
def _absorb(h, w):
    z = (h ^ w) + _GOLD
    z = (z ^ (z >> _R30)) * _MK1
    z = (z ^ (z >> _R27)) * _MK2
    return z ^ (z >> _R31)


@nb.njit(cache=True, nogil=True)
def _step_planes(a, b, a2, b2, rq, r1, ct, st, cp, sp, off, sel, s, e, lo, want_obs, out):
    nr = a.shape[0]
    for r in range(nr):
        for j in range(s, e):
            jc = (j - off) & sel
            crq = rq[r, jc]
            cr1 = r1[r, jc]
            cct = ct[r, jc]
            cst = st[r, jc]
            ccp = cp[r, jc]
            csp = sp[r, jc]
            cuu = complex(crq, 0.0)
            cud = complex(cr1 * cct, cr1 * cst)
            cdu = complex(cr1 * ccp, cr1 * csp)
            cdd = complex(-crq * (cct * ccp - cst * csp), -crq * (cst * ccp + cct * csp))
            av = cuu * a[r, j] + cud * b[r, j]
            bv = cdu * a[r, j] + cdd * b[r, j]
            a2[r, j + 1] = av
            b2[r, j - 1] = bv
        a2[r, s - 1] = 0.0
        a2[r, s] = 0.0
        b2[r, e - 1] = 0.0
        b2[r, e] = 0.0
        if want_obs:
            al = 0.0
            be = 0.0
            gr = 0.0
            gi = 0.0
            m1 = 0.0
            m2 = 0.0
            for j in range(s - 1, e + 1):
                ar = a2[r, j].real
                ai = a2[r, j].imag
                br = b2[r, j].real
                bi = b2[r, j].imag
                pa = ar * ar + ai * ai
                pb = br * br + bi * bi
                gr += ar * br + ai * bi
                gi += ai * br - ar * bi
                al += pa
                be += pb
                x = float(lo + j)
                pj = pa + pb
                m1 += x * pj
                m2 += x * x * pj
            out[0, r] = al
            out[1, r] = be
            out[2, r] = gr
            out[3, r] = gi
            out[4, r] = m1
            out[5, r] = m2


@nb.njit(cache=True, nogil=True)
def _step_fluct_twocoin(a, b, a2, b2, bases, t, p, v1, v2, s, e, lo, want_obs, out):
    nr = a.shape[0]
    tu = np.uint64(t)
    for r in range(nr):
        hb = _absorb(bases[r], tu)
        for j in range(s, e):
            hj = _absorb(hb, np.uint64(lo + j))
            u = np.float64(_absorb(hj, _U0) >> _R11) * _TO_UNIT
            if u < p:
                crq = v1[0]
                cr1 = v1[1]
                cct = v1[2]
                cst = v1[3]
                ccp = v1[4]
                csp = v1[5]
            else:
                crq = v2[0]
                cr1 = v2[1]
                cct = v2[2]
                cst = v2[3]
                ccp = v2[4]
                csp = v2[5]
            cuu = complex(crq, 0.0)
            cud = complex(cr1 * cct, cr1 * cst)
            cdu = complex(cr1 * ccp, cr1 * csp)
            cdd = complex(-crq * (cct * ccp - cst * csp), -crq * (cst * ccp + cct * csp))
            av = cuu * a[r, j] + cud * b[r, j]
            bv = cdu * a[r, j] + cdd * b[r, j]
            a2[r, j + 1] = av
            b2[r, j - 1] = bv
        a2[r, s - 1] = 0.0
        a2[r, s] = 0.0
        b2[r, e - 1] = 0.0
        b2[r, e] = 0.0
        if want_obs:
            al = 0.0
            be = 0.0
            gr = 0.0
            gi = 0.0
            m1 = 0.0
            m2 = 0.0
            for j in range(s - 1, e + 1):
                ar = a2[r, j].real
                ai = a2[r, j].imag
                br = b2[r, j].real
                bi = b2[r, j].imag
                pa = ar * ar + ai * ai
                pb = br * br + bi * bi
                gr += ar * br + ai * bi
                gi += ai * br - ar * bi
                al += pa
                be += pb
                x = float(lo + j)
                pj = pa + pb
                m1 += x * pj
                m2 += x * x * pj
            out[0, r] = al
            out[1, r] = be
            out[2, r] = gr
            out[3, r] = gi
            out[4, r] = m1
            out[5, r] = m2


@dataclass
class BatchResult:
    """Raw per-step sums for one block of realizations.

    Arrays are (steps, R): alpha/beta are spin-up/down weights, gre/gim
    the real and imaginary parts of the spin coherence, m1/m2 the first
    and second position moments. final_a/final_b are the end-state
    amplitudes over the full window whose leftmost site is lo.
    """

    alpha: np.ndarray
    beta: np.ndarray
    gre: np.ndarray
    gim: np.ndarray
    m1: np.ndarray
    m2: np.ndarray
    final_a: np.ndarray
    final_b: np.ndarray
    lo: int


def _as_plane_block(planes, r: int) -> tuple[np.ndarray, ...]:
    """Normalize plane arrays to C-contiguous (R, w) float64."""
    out = []
    for p in planes:
        arr = np.asarray(p, dtype=np.float64)
        if arr.ndim == 0:
            arr = np.broadcast_to(arr, (r,))
        if arr.ndim == 1:
            arr = arr.reshape(r, 1) if arr.shape[0] == r else np.broadcast_to(arr, (r, arr.shape[0]))
        out.append(np.ascontiguousarray(arr))
    return tuple(out)


def run_batch(
    regime: Regime,
    ensemble: Ensemble,
    seed: int,
    realizations: np.ndarray,
    a0: np.ndarray,
    b0: np.ndarray,
    lo: int,
    s0: int,
    e0: int,
    steps: int,
    want_obs: bool = True,
) -> BatchResult:
    """Evolve R realizations for `steps` steps.

    a0/b0 are (R, W) buffers holding the initial amplitudes in columns
    [s0, e0); they must leave `steps` columns of slack on each side.
    The buffers are consumed (used as scratch).
    """
    nr, w = a0.shape
    if b0.shape != (nr, w):
        raise ParameterDomainError("a0 and b0 must have equal shapes")
    if not (steps >= 1 and s0 >= steps and e0 + steps <= w and s0 < e0):
        raise ParameterDomainError(
            f"window does not fit {steps} steps: W={w}, active [{s0}, {e0})"
        )
    bases = stream_bases(seed, regime, np.asarray(realizations))
    bases = np.ascontiguousarray(np.atleast_1d(bases))
    if bases.shape[0] != nr:
        raise ParameterDomainError(
            f"need one realization id per row, got {bases.shape[0]} for {nr} rows"
        )

    a = np.ascontiguousarray(a0, dtype=np.complex128)
    b = np.ascontiguousarray(b0, dtype=np.complex128)
    a2 = np.zeros_like(a)
    b2 = np.zeros_like(b)

    obs = np.empty((steps if want_obs else 1, 6, nr), dtype=np.float64)
    dummy = obs[0]

    fluct_twocoin = regime is Regime.FLUCTUATING and isinstance(ensemble, TwoCoin)
    if fluct_twocoin:
        v1 = np.array(_plane_point(ensemble.c1), dtype=np.float64)
        v2 = np.array(_plane_point(ensemble.c2), dtype=np.float64)
        pw = float(ensemble.p)

    static_planes = None
    if regime is Regime.STATIC:
        sites_all = np.arange(lo, lo + w, dtype=np.int64)
        static_planes = _as_plane_block(
            coin_planes(bases, regime, ensemble, sites=sites_all), nr
        )
    ordered_planes = None
    if regime is Regime.ORDERED:
        ordered_planes = _as_plane_block(coin_planes(bases, regime, ensemble), nr)

    for k in range(1, steps + 1):
        s = s0 - (k - 1)
        e = e0 + (k - 1)
        out = obs[k - 1] if want_obs else dummy
        if fluct_twocoin:
            _step_fluct_twocoin(
                a, b, a2, b2, bases, k, pw, v1, v2, s, e, lo, want_obs, out
            )
        else:
            if regime is Regime.ORDERED:
                planes, off, sel = ordered_planes, 0, 0
            elif regime is Regime.DYNAMIC:
                planes = _as_plane_block(coin_planes(bases, regime, ensemble, t=k), nr)
                off, sel = 0, 0
            elif regime is Regime.STATIC:
                planes, off, sel = static_planes, 0, -1
            else:
                sites = np.arange(lo + s, lo + e, dtype=np.int64)
                planes = _as_plane_block(
                    coin_planes(bases, regime, ensemble, t=k, sites=sites), nr
                )
                off, sel = s, -1
            _step_planes(
                a, b, a2, b2, *planes, off, sel, s, e, lo, want_obs, out
            )
        a, a2 = a2, a
        b, b2 = b2, b

    if want_obs:
        return BatchResult(
            alpha=obs[:, 0, :],
            beta=obs[:, 1, :],
            gre=obs[:, 2, :],
            gim=obs[:, 3, :],
            m1=obs[:, 4, :],
            m2=obs[:, 5, :],
            final_a=a,
            final_b=b,
            lo=lo,
        )
    empty = np.empty((0, nr))
    return BatchResult(empty, empty, empty, empty, empty, empty, a, b, lo)
