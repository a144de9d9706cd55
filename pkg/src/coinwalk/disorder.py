"""Coin disorder: regimes, ensembles, and deterministic coin fields.

A coin field assigns a coin to every (site, step) pair of one disorder
realization. The four regimes differ only in which labels the coin
depends on:

    ordered      one coin for the whole evolution
    dynamic      fresh coin each step, shared by all sites
    fluctuating  fresh coin for every site at every step
    static       fresh coin per site, frozen in time

Coins are drawn from one of two ensembles: a two-point mixture of named
coins (by default Hadamard and Fourier with equal weight) or the full
three-parameter family with independent uniform parameters.

Sampling is counter-based (see rng): the coin at (j, t) is a pure
function of (seed, regime, realization, j, t), so scalar queries, whole
layers, and batched planes for many realizations agree bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .coins import TWO_PI, CoinMatrix, CoinParams, validate_params
from .errors import ParameterDomainError
from .rng import COIN_STREAM, absorb, as_u64, chain, unit_at


class Regime(str, Enum):
    ORDERED = "ordered"
    DYNAMIC = "dynamic"
    FLUCTUATING = "fluctuating"
    STATIC = "static"


_REGIME_TAG = {
    Regime.ORDERED: 1,
    Regime.DYNAMIC: 2,
    Regime.FLUCTUATING: 3,
    Regime.STATIC: 4,
}

# Regimes whose coins depend on the step / on the site.
_TIME_KEYED = frozenset((Regime.DYNAMIC, Regime.FLUCTUATING))
_SITE_KEYED = frozenset((Regime.STATIC, Regime.FLUCTUATING))


@dataclass(frozen=True)
class TwoCoin:
    """Mixture of two fixed coins; c1 is drawn with probability p."""

    c1: CoinParams = CoinParams(0.5, 0.0, 0.0)
    c2: CoinParams = CoinParams(0.5, math.pi / 2.0, math.pi / 2.0)
    p: float = 0.5


@dataclass(frozen=True)
class ContinuousSU2:
    """Independent uniform q, theta, phi over sub-ranges of the full domain."""

    q_range: tuple[float, float] = (0.0, 1.0)
    theta_range: tuple[float, float] = (0.0, TWO_PI)
    phi_range: tuple[float, float] = (0.0, TWO_PI)


Ensemble = TwoCoin | ContinuousSU2


def validate_ensemble(e: Ensemble) -> None:
    if isinstance(e, TwoCoin):
        validate_params(e.c1)
        validate_params(e.c2)
        if not (0.0 <= e.p <= 1.0):
            raise ParameterDomainError(f"mixture weight p must lie in [0, 1], got {e.p!r}")
        return
    for name, (lo, hi), bound in (
        ("q_range", e.q_range, 1.0),
        ("theta_range", e.theta_range, TWO_PI),
        ("phi_range", e.phi_range, TWO_PI),
    ):
        if not (0.0 <= lo <= hi <= bound):
            raise ParameterDomainError(
                f"{name} must satisfy 0 <= lo <= hi <= {bound:.6g}, got {(lo, hi)!r}"
            )


def sample_coin(e: Ensemble, u: tuple[float, float, float]) -> CoinParams:
    """Map three unit uniforms to coin parameters under ensemble e."""
    if isinstance(e, TwoCoin):
        return e.c1 if u[0] < e.p else e.c2
    qlo, qhi = e.q_range
    tlo, thi = e.theta_range
    plo, phi_hi = e.phi_range
    return CoinParams(
        q=qlo + u[0] * (qhi - qlo),
        theta=tlo + u[1] * (thi - tlo),
        phi=plo + u[2] * (phi_hi - plo),
    )


# Coins are carried through the hot path as six real planes
# (sqrt q, sqrt(1-q), cos theta, sin theta, cos phi, sin phi); the
# complex entries are reassembled where needed.
def _plane_point(p: CoinParams) -> tuple[float, float, float, float, float, float]:
    return (
        math.sqrt(p.q),
        math.sqrt(1.0 - p.q),
        math.cos(p.theta),
        math.sin(p.theta),
        math.cos(p.phi),
        math.sin(p.phi),
    )


def planes_to_matrix(rq, r1, ct, st, cp, sp) -> CoinMatrix:
    """Assemble the complex coin entries from the six real planes."""
    return CoinMatrix(
        uu=complex(rq),
        ud=complex(r1 * ct, r1 * st),
        du=complex(r1 * cp, r1 * sp),
        dd=complex(-rq * (ct * cp - st * sp), -rq * (st * cp + ct * sp)),
    )


def stream_bases(seed: int, regime: Regime, realizations) -> np.uint64 | np.ndarray:
    """Hash state(s) rooting the coin stream of one or many realizations."""
    h = chain(seed, COIN_STREAM, _REGIME_TAG[regime])
    return absorb(h, realizations)


def coin_planes(bases, regime: Regime, e: Ensemble, t: int | None = None, sites=None):
    """Six coin planes for the given bases, step and sites.

    bases may be a scalar hash or an (R,) array; sites may be None, a
    scalar site index or a (w,) array. Shapes broadcast: (R,) bases with
    (w,) sites yield (R, w) planes. t is required for time-keyed
    regimes, sites for site-keyed ones; both are ignored otherwise.
    """
    h = bases
    if regime in _TIME_KEYED:
        h = absorb(h, t)
    if regime in _SITE_KEYED:
        s = as_u64(np.asarray(sites, dtype=np.int64)) if not np.isscalar(sites) else as_u64(sites)
        if isinstance(h, np.ndarray) and isinstance(s, np.ndarray) and h.ndim == s.ndim == 1:
            h = absorb(h[:, None], s[None, :])
        else:
            h = absorb(h, s)
    return _planes_from(e, h)


def _planes_from(e: Ensemble, h):
    if isinstance(e, TwoCoin):
        pick = unit_at(h, 0) < e.p
        v1 = _plane_point(e.c1)
        v2 = _plane_point(e.c2)
        return tuple(np.where(pick, a, b) for a, b in zip(v1, v2))
    qlo, qhi = e.q_range
    tlo, thi = e.theta_range
    plo, phi_hi = e.phi_range
    q = qlo + unit_at(h, 0) * (qhi - qlo)
    th = tlo + unit_at(h, 1) * (thi - tlo)
    ph = plo + unit_at(h, 2) * (phi_hi - plo)
    return (
        np.sqrt(q),
        np.sqrt(1.0 - q),
        np.cos(th),
        np.sin(th),
        np.cos(ph),
        np.sin(ph),
    )


@dataclass(frozen=True)
class CoinField:
    """One disorder realization: a deterministic map (j, t) -> coin."""

    regime: Regime
    ensemble: Ensemble
    seed: int
    realization: int = 0

    def base(self) -> np.uint64:
        return stream_bases(self.seed, self.regime, self.realization)

    def coin_at(self, j: int, t: int) -> CoinMatrix:
        """Coin applied at site j during step t (steps count from 1)."""
        if t < 1:
            raise ParameterDomainError(f"step index must be >= 1, got {t}")
        planes = coin_planes(self.base(), self.regime, self.ensemble, t=t, sites=j)
        return planes_to_matrix(*(float(v) for v in planes))

    def layer_planes(self, lo: int, hi: int, t: int):
        """Planes over the window of sites lo..hi inclusive at step t."""
        if t < 1:
            raise ParameterDomainError(f"step index must be >= 1, got {t}")
        sites = np.arange(lo, hi + 1, dtype=np.int64)
        planes = coin_planes(self.base(), self.regime, self.ensemble, t=t, sites=sites)
        w = hi - lo + 1
        return tuple(np.broadcast_to(np.asarray(p, dtype=np.float64), (w,)) for p in planes)
