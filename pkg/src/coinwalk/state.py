"""Walker state and single-realization evolution.

The state of the walker is a pair of complex amplitude arrays (spin up,
spin down) over a contiguous window of lattice sites. One step applies
a per-site coin and then shifts spin-up amplitude right and spin-down
amplitude left; the window grows by one site on each side per step, so
no amplitude is ever lost at a boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .coins import CoinMatrix
from .disorder import CoinField
from .errors import ParameterDomainError


@dataclass
class WalkerState:
    """Amplitudes over the window of sites lo..lo+len(a)-1 at time t."""

    lo: int
    a: np.ndarray
    b: np.ndarray
    t: int = 0

    def __post_init__(self) -> None:
        self.a = np.asarray(self.a, dtype=np.complex128)
        self.b = np.asarray(self.b, dtype=np.complex128)
        if self.a.shape != self.b.shape or self.a.ndim != 1 or self.a.size == 0:
            raise ParameterDomainError("amplitude arrays must be equal-length 1-D and nonempty")

    @property
    def hi(self) -> int:
        return self.lo + len(self.a) - 1

    def sites(self) -> np.ndarray:
        return np.arange(self.lo, self.hi + 1, dtype=np.int64)

    def norm(self) -> float:
        return float(np.sum(np.abs(self.a) ** 2) + np.sum(np.abs(self.b) ** 2))

    def copy(self) -> "WalkerState":
        return WalkerState(self.lo, self.a.copy(), self.b.copy(), self.t)


@dataclass
class CoinLayer:
    """Complex coin entries for every site of one window at one step."""

    lo: int
    uu: np.ndarray
    ud: np.ndarray
    du: np.ndarray
    dd: np.ndarray

    @property
    def width(self) -> int:
        return len(self.uu)

    @classmethod
    def from_planes(cls, lo: int, planes) -> "CoinLayer":
        rq, r1, ct, st, cp, sp = (np.asarray(p, dtype=np.float64) for p in planes)
        return cls(
            lo=lo,
            uu=rq + 0.0j,
            ud=r1 * (ct + 1.0j * st),
            du=r1 * (cp + 1.0j * sp),
            dd=(-rq * (ct * cp - st * sp)) + 1.0j * (-rq * (st * cp + ct * sp)),
        )

    @classmethod
    def from_field(cls, field: CoinField, lo: int, hi: int, t: int) -> "CoinLayer":
        return cls.from_planes(lo, field.layer_planes(lo, hi, t))

    @classmethod
    def from_matrix(cls, m: CoinMatrix, lo: int, hi: int) -> "CoinLayer":
        w = hi - lo + 1
        return cls(
            lo=lo,
            uu=np.full(w, m.uu, dtype=np.complex128),
            ud=np.full(w, m.ud, dtype=np.complex128),
            du=np.full(w, m.du, dtype=np.complex128),
            dd=np.full(w, m.dd, dtype=np.complex128),
        )

    @classmethod
    def from_lookup(cls, lookup: Callable[[int], CoinMatrix], lo: int, hi: int) -> "CoinLayer":
        mats = [lookup(j) for j in range(lo, hi + 1)]
        return cls(
            lo=lo,
            uu=np.array([m.uu for m in mats], dtype=np.complex128),
            ud=np.array([m.ud for m in mats], dtype=np.complex128),
            du=np.array([m.du for m in mats], dtype=np.complex128),
            dd=np.array([m.dd for m in mats], dtype=np.complex128),
        )


def step(state: WalkerState, layer: CoinLayer) -> WalkerState:
    """Apply one coin-and-shift step; returns a new state, window +1 each side."""
    w = len(state.a)
    if layer.lo != state.lo or layer.width != w:
        raise ParameterDomainError(
            f"coin layer window [{layer.lo}, {layer.lo + layer.width - 1}] does not "
            f"match state window [{state.lo}, {state.hi}]"
        )
    # Complex products are expanded into separately rounded real ops;
    # numpy's fused complex multiply contracts differently from the
    # batched kernel, and the two paths must agree bit for bit.
    ar, ai = state.a.real, state.a.imag
    br, bi = state.b.real, state.b.imag
    uur, uui = layer.uu.real, layer.uu.imag
    udr, udi = layer.ud.real, layer.ud.imag
    dur, dui = layer.du.real, layer.du.imag
    ddr, ddi = layer.dd.real, layer.dd.imag
    a2 = np.zeros(w + 2, dtype=np.complex128)
    b2 = np.zeros(w + 2, dtype=np.complex128)
    a2.real[2:] = (uur * ar - uui * ai) + (udr * br - udi * bi)
    a2.imag[2:] = (uur * ai + uui * ar) + (udr * bi + udi * br)
    b2.real[:w] = (dur * ar - dui * ai) + (ddr * br - ddi * bi)
    b2.imag[:w] = (dur * ai + dui * ar) + (ddr * bi + ddi * br)
    return WalkerState(state.lo - 1, a2, b2, state.t + 1)


def evolve(
    state: WalkerState,
    field: CoinField,
    steps: int,
    observer: Callable[[WalkerState], None] | None = None,
) -> WalkerState:
    """Run `steps` steps under the given coin field.

    The observer, if given, is called with the state after every step.
    The input state is not modified.
    """
    if steps < 0:
        raise ParameterDomainError(f"step count must be >= 0, got {steps}")
    st = state
    for _ in range(steps):
        layer = CoinLayer.from_field(field, st.lo, st.hi, st.t + 1)
        st = step(st, layer)
        if observer is not None:
            observer(st)
    return st
