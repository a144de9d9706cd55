"""Ensemble experiments: many initial conditions, many disorder draws.

Realizations are processed in fixed-size chunks (mixed initial
conditions within a chunk) so memory stays bounded and results are
bit-identical for any thread count: each chunk is a pure function of
(seed, realization ids), partial sums are stored per chunk and reduced
in index order on the main thread.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .disorder import Ensemble, Regime, validate_ensemble
from .engine import run_batch
from .errors import ConfigError, NumericalDomainError
from .initial import InitialCondition, build_state, support
from .observables import entropy_arrays

CHUNK = 128
NORM_TOL = 1e-9


def _initial_only(states, total, replicates, thresholds):
    """Degenerate zero-step run: summaries of the initial states."""
    from .observables import entropy, reduce_spin

    lo = min(st.lo for st in states)
    hi = max(st.hi for st in states)
    w = hi - lo + 1
    sum_p = np.zeros(w)
    final_ent = np.empty(total)
    for i, st in enumerate(states):
        e = entropy(reduce_spin(st))
        final_ent[i * replicates : (i + 1) * replicates] = e
        ofs = st.lo - lo
        p = st.a.real**2 + st.a.imag**2 + st.b.real**2 + st.b.imag**2
        sum_p[ofs : ofs + len(p)] += p * replicates
    rates = {float(th): float(np.mean(final_ent >= th)) for th in thresholds}
    empty = np.zeros(0)
    return EnsembleResult(
        steps=0,
        count=total,
        mean_entropy=empty,
        mean_distance=empty.copy(),
        mean_dispersion=empty.copy(),
        distribution_lo=lo,
        mean_distribution=sum_p / total,
        threshold_rates=rates,
        final_entropy=final_ent,
    )


@dataclass
class EnsembleResult:
    """Per-step ensemble means and final-state summaries.

    Series arrays have one entry per step (t = 1..steps). The mean
    final position distribution covers sites distribution_lo onward.
    threshold_rates maps an entropy threshold to the fraction of
    realizations whose final entropy reaches it.
    """

    steps: int
    count: int
    mean_entropy: np.ndarray
    mean_distance: np.ndarray
    mean_dispersion: np.ndarray
    distribution_lo: int
    mean_distribution: np.ndarray
    threshold_rates: dict[float, float]
    final_entropy: np.ndarray
    max_norm_drift: float = 0.0

    @property
    def final_mean_entropy(self) -> float:
        if self.steps == 0:
            return float(np.mean(self.final_entropy))
        return float(self.mean_entropy[-1])


def run_ensemble(
    regime: Regime,
    ensemble: Ensemble,
    ics: list[InitialCondition],
    steps: int,
    seed: int,
    *,
    thresholds: tuple[float, ...] = (0.95, 0.97, 0.99),
    replicates: int = 1,
    threads: int = 1,
) -> EnsembleResult:
    """Evolve every initial condition under `replicates` independent
    disorder realizations and average the observables.

    Realization ids are ic_index * replicates + replicate, so results
    are independent of chunking and thread count.
    """
    validate_ensemble(ensemble)
    if not ics:
        raise ConfigError("need at least one initial condition")
    if steps < 0:
        raise ConfigError(f"steps must be >= 0, got {steps}")
    if replicates < 1:
        raise ConfigError(f"replicates must be >= 1, got {replicates}")
    if threads < 1:
        raise ConfigError(f"threads must be >= 1, got {threads}")
    for th in thresholds:
        if not (0.0 <= th <= 1.0):
            raise ConfigError(f"entropy thresholds must lie in [0, 1], got {th!r}")

    states = [build_state(ic) for ic in ics]
    if steps == 0:
        return _initial_only(states, len(ics) * replicates, replicates, thresholds)
    lo_ic = min(support(ic)[0] for ic in ics)
    hi_ic = max(support(ic)[1] for ic in ics)
    w_ic = hi_ic - lo_ic + 1
    w = w_ic + 2 * steps
    lo = lo_ic - steps
    s0 = steps
    e0 = steps + w_ic

    total = len(ics) * replicates
    nchunks = math.ceil(total / CHUNK)
    sum_ent = np.zeros((nchunks, steps))
    sum_dist = np.zeros((nchunks, steps))
    sum_disp = np.zeros((nchunks, steps))
    sum_p = np.zeros((nchunks, w))
    final_ent = np.empty(total)
    norm_worst = np.zeros(nchunks)

    def do_chunk(ci: int) -> None:
        c0 = ci * CHUNK
        c1 = min(total, c0 + CHUNK)
        rc = c1 - c0
        a0 = np.zeros((rc, w), dtype=np.complex128)
        b0 = np.zeros((rc, w), dtype=np.complex128)
        for row in range(rc):
            st = states[(c0 + row) // replicates]
            ofs = s0 + (st.lo - lo_ic)
            a0[row, ofs : ofs + len(st.a)] = st.a
            b0[row, ofs : ofs + len(st.b)] = st.b
        alpha0 = np.sum(a0.real**2 + a0.imag**2, axis=1)
        g0 = np.sum(a0 * np.conj(b0), axis=1)

        rids = np.arange(c0, c1, dtype=np.int64)
        res = run_batch(regime, ensemble, seed, rids, a0, b0, lo, s0, e0, steps)

        nrm = res.alpha + res.beta
        norm_worst[ci] = float(np.max(np.abs(nrm - 1.0)))
        ent = entropy_arrays(res.alpha, res.gre, res.gim)
        aext = np.vstack([alpha0[None, :], res.alpha])
        grext = np.vstack([g0.real[None, :], res.gre])
        giext = np.vstack([g0.imag[None, :], res.gim])
        dist = np.sqrt(
            np.diff(aext, axis=0) ** 2
            + np.diff(grext, axis=0) ** 2
            + np.diff(giext, axis=0) ** 2
        )
        m1n = res.m1 / nrm
        m2n = res.m2 / nrm
        disp = np.sqrt(np.maximum(0.0, m2n - m1n * m1n))

        sum_ent[ci] = ent.sum(axis=1)
        sum_dist[ci] = dist.sum(axis=1)
        sum_disp[ci] = disp.sum(axis=1)
        sum_p[ci] = np.sum(
            res.final_a.real**2
            + res.final_a.imag**2
            + res.final_b.real**2
            + res.final_b.imag**2,
            axis=0,
        )
        final_ent[c0:c1] = ent[-1]

    if threads == 1:
        for ci in range(nchunks):
            do_chunk(ci)
    else:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            list(ex.map(do_chunk, range(nchunks)))

    worst = float(np.max(norm_worst))
    if worst > NORM_TOL:
        raise NumericalDomainError(
            f"norm drifted by {worst:.3e} (tolerance {NORM_TOL:.0e})"
        )

    rates = {float(th): float(np.mean(final_ent >= th)) for th in thresholds}
    return EnsembleResult(
        steps=steps,
        count=total,
        mean_entropy=sum_ent.sum(axis=0) / total,
        mean_distance=sum_dist.sum(axis=0) / total,
        mean_dispersion=sum_disp.sum(axis=0) / total,
        distribution_lo=lo,
        mean_distribution=sum_p.sum(axis=0) / total,
        threshold_rates=rates,
        final_entropy=final_ent,
        max_norm_drift=worst,
    )
