"""SU(2) coin parametrization.

A coin is fixed by three reals (q, theta, phi):

    C = [ sqrt(q)                  sqrt(1-q) e^{i theta} ]
        [ sqrt(1-q) e^{i phi}     -sqrt(q)  e^{i (theta+phi)} ]

with q in [0, 1] and theta, phi in [0, 2*pi). Every such matrix is
unitary; the familiar Hadamard and Fourier (Kempe) coins are the points
(1/2, 0, 0) and (1/2, pi/2, pi/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterDomainError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CoinParams:
    """Point in the three-parameter coin family."""

    q: float
    theta: float = 0.0
    phi: float = 0.0


@dataclass(frozen=True)
class CoinMatrix:
    """The four complex entries of one coin, row-major."""

    uu: complex
    ud: complex
    du: complex
    dd: complex

    def as_array(self) -> np.ndarray:
        return np.array([[self.uu, self.ud], [self.du, self.dd]], dtype=np.complex128)


HADAMARD = CoinParams(0.5, 0.0, 0.0)
FOURIER = CoinParams(0.5, math.pi / 2.0, math.pi / 2.0)


def validate_params(p: CoinParams) -> None:
    """Raise ParameterDomainError unless p lies in the coin domain."""
    if not (0.0 <= p.q <= 1.0):
        raise ParameterDomainError(f"coin q must lie in [0, 1], got {p.q!r}")
    for name, angle in (("theta", p.theta), ("phi", p.phi)):
        if not (0.0 <= angle < TWO_PI):
            raise ParameterDomainError(
                f"coin {name} must lie in [0, 2*pi), got {angle!r}"
            )


def coin_matrix(p: CoinParams) -> CoinMatrix:
    """Build the unitary coin for parameters p.

    Raises ParameterDomainError for parameters outside the domain.
    """
    validate_params(p)
    rq = math.sqrt(p.q)
    r1 = math.sqrt(1.0 - p.q)
    et = complex(math.cos(p.theta), math.sin(p.theta))
    ep = complex(math.cos(p.phi), math.sin(p.phi))
    etp = complex(math.cos(p.theta + p.phi), math.sin(p.theta + p.phi))
    return CoinMatrix(uu=rq + 0.0j, ud=r1 * et, du=r1 * ep, dd=-rq * etp)


def unitarity_defect(m: CoinMatrix) -> float:
    """Max-norm deviation of C^dagger C from the identity."""
    c = m.as_array()
    return float(np.max(np.abs(c.conj().T @ c - np.eye(2))))
