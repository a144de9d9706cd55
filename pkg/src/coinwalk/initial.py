"""Initial conditions.

Spin part: |xi> = cos(alpha_s)|up> + e^{i beta_s} sin(alpha_s)|down>,
with alpha_s in [0, pi] and beta_s in [0, 2*pi]. Position part is one
of: a single site, a superposition of sites -1 and +1 with its own pair
of angles, or a normalized Gaussian profile of width sigma truncated at
ceil(cutoff * sigma) sites. The walker starts in the product state.

Grid families enumerate angles k * delta for k = 0, 1, ... while the
product stays <= the bound (pi for alphas, 2*pi for betas), in float
arithmetic; this makes the family sizes reproducible across machines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterDomainError
from .rng import IC_STREAM, chain, unit_at
from .state import WalkerState

PI = math.pi
TWO_PI = 2.0 * math.pi

# Spin states used by the Gaussian experiments:
# xi1 = (|up> + i |down>)/sqrt(2), xi2 = (|up> + |down>)/sqrt(2).
XI1 = (PI / 4.0, PI / 2.0)
XI2 = (PI / 4.0, 0.0)


@dataclass(frozen=True)
class Localized:
    site: int = 0


@dataclass(frozen=True)
class TwoSite:
    alpha_p: float = 0.0
    beta_p: float = 0.0


@dataclass(frozen=True)
class GaussianProfile:
    sigma: float
    cutoff: float = 6.0


Position = Localized | TwoSite | GaussianProfile


@dataclass(frozen=True)
class InitialCondition:
    spin: tuple[float, float] = (0.0, 0.0)
    position: Position = Localized()


def support(ic: InitialCondition) -> tuple[int, int]:
    """Window of sites the initial state occupies, inclusive."""
    pos = ic.position
    if isinstance(pos, Localized):
        return pos.site, pos.site
    if isinstance(pos, TwoSite):
        return -1, 1
    half = math.ceil(pos.cutoff * pos.sigma)
    return -half, half


def build_state(ic: InitialCondition) -> WalkerState:
    """Product state of the spin and position parts as a WalkerState."""
    alpha_s, beta_s = ic.spin
    up = math.cos(alpha_s)
    down = complex(math.cos(beta_s), math.sin(beta_s)) * math.sin(alpha_s)

    pos = ic.position
    if isinstance(pos, Localized):
        profile = np.ones(1, dtype=np.complex128)
        lo = pos.site
    elif isinstance(pos, TwoSite):
        profile = np.zeros(3, dtype=np.complex128)
        profile[0] = math.cos(pos.alpha_p)
        profile[2] = complex(math.cos(pos.beta_p), math.sin(pos.beta_p)) * math.sin(pos.alpha_p)
        lo = -1
    else:
        if pos.sigma <= 0.0 or pos.cutoff <= 0.0:
            raise ParameterDomainError(
                f"gaussian profile needs sigma > 0 and cutoff > 0, got {pos!r}"
            )
        half = math.ceil(pos.cutoff * pos.sigma)
        j = np.arange(-half, half + 1, dtype=np.float64)
        profile = np.exp(-(j * j) / (4.0 * pos.sigma * pos.sigma)).astype(np.complex128)
        profile /= math.sqrt(float(np.sum(np.abs(profile) ** 2)))
        lo = -half
    return WalkerState(lo, up * profile, down * profile, t=0)


def grid_angles(delta: float, bound: float) -> list[float]:
    """Angles k * delta for k >= 0 while k * delta <= bound (float product)."""
    if delta <= 0.0:
        raise ParameterDomainError(f"grid spacing must be > 0, got {delta!r}")
    out = []
    k = 0
    while k * delta <= bound:
        out.append(k * delta)
        k += 1
    return out


def grid_two_site(delta: float) -> list[InitialCondition]:
    """All spin x position angle quadruples on the delta-grid, spin-alpha
    outermost, position-beta innermost."""
    alphas = grid_angles(delta, PI)
    betas = grid_angles(delta, TWO_PI)
    return [
        InitialCondition(spin=(a_s, b_s), position=TwoSite(a_p, b_p))
        for a_s in alphas
        for b_s in betas
        for a_p in alphas
        for b_p in betas
    ]


def grid_localized(delta: float) -> list[InitialCondition]:
    """All spin angle pairs on the delta-grid, walker starting at site 0."""
    return [
        InitialCondition(spin=(a_s, b_s), position=Localized(0))
        for a_s in grid_angles(delta, PI)
        for b_s in grid_angles(delta, TWO_PI)
    ]


def random_ics(count: int, seed: int, kind: str = "localized") -> list[InitialCondition]:
    """Independent uniform-angle initial conditions, reproducible by seed.

    kind is "localized" (random spin, walker at site 0) or "two-site"
    (random spin and random two-site position angles).
    """
    if kind not in ("localized", "two-site"):
        raise ParameterDomainError(f"unknown initial-condition kind {kind!r}")
    if count < 0:
        raise ParameterDomainError(f"count must be >= 0, got {count}")
    out = []
    for i in range(count):
        h = chain(seed, IC_STREAM, i)
        spin = (unit_at(h, 0) * PI, unit_at(h, 1) * TWO_PI)
        if kind == "two-site":
            pos: Position = TwoSite(unit_at(h, 2) * PI, unit_at(h, 3) * TWO_PI)
        else:
            pos = Localized(0)
        out.append(InitialCondition(spin=spin, position=pos))
    return out


def gaussian_profile(sigma: float, spin: tuple[float, float] = XI1, cutoff: float = 6.0) -> InitialCondition:
    """Gaussian wave packet of width sigma with the given spin angles."""
    if sigma <= 0.0:
        raise ParameterDomainError(f"sigma must be > 0, got {sigma!r}")
    return InitialCondition(spin=spin, position=GaussianProfile(sigma, cutoff))
