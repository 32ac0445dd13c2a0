"""Alice-Rob state for a uniformly accelerated observer.

Alice stays inertial, Rob accelerates. Rob's Minkowski vacuum looks like a
two-mode squeezed state across Rindler regions I and II; once region II is
traced out the pair is left in a mixed state depending only on the
acceleration parameter ``r`` with ``0 <= r <= pi/4``.

Basis ordering is ``|00>, |01>, |10>, |11>`` with Alice as the first factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matcore import as_matrix, eigenvalues_hermitian, hermiticity_residual

R_MAX = math.pi / 4
# grid endpoints built as k*pi/n can overshoot pi/4 by an ulp or two
_R_SLACK = 1e-12

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10


class InvalidStateError(ValueError):
    """A matrix failed one of the density-matrix invariants."""


@dataclass(frozen=True)
class DensityMatrix:
    """Validated 4x4 two-qubit density matrix.

    Construction checks Hermiticity, unit trace and positive
    semi-definiteness (eigenvalues >= -1e-10) and stores a read-only copy.
    """

    mat: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.mat)
        if m.shape != (4, 4):
            raise InvalidStateError(f"density matrix must be 4x4, got {m.shape}")
        herm = hermiticity_residual(m)
        if herm > HERMITIAN_TOL:
            raise InvalidStateError(f"not Hermitian (residual {herm:.3e})")
        tr = abs(np.trace(m) - 1.0)
        if tr > TRACE_TOL:
            raise InvalidStateError(f"trace differs from 1 by {tr:.3e}")
        lo = eigenvalues_hermitian(m)[-1]
        if lo < -PSD_TOL:
            raise InvalidStateError(f"negative eigenvalue {lo:.3e}")
        object.__setattr__(self, "mat", m)

    @property
    def trace_residual(self) -> float:
        return float(abs(np.trace(self.mat) - 1.0))

    @property
    def hermiticity_residual(self) -> float:
        return hermiticity_residual(self.mat)

    def min_eigenvalue(self) -> float:
        return float(eigenvalues_hermitian(self.mat)[-1])


@dataclass(frozen=True)
class AccelerationInput:
    """Physical inputs fixing ``r``: particle frequency, light speed, acceleration."""

    omega: float
    c: float
    a: float

    def __post_init__(self):
        for name in ("omega", "c", "a"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"{name} must be a positive finite number, got {v!r}")


def check_r(r: float) -> float:
    r = float(r)
    if not (-_R_SLACK <= r <= R_MAX + _R_SLACK):
        raise ValueError(f"r must lie in [0, pi/4], got {r!r}")
    return min(max(r, 0.0), R_MAX)


def unruh_param_from_acceleration(inp: AccelerationInput) -> float:
    """Unruh angle ``r`` with ``cos r = (exp(-2 pi omega c / a) + 1) ** -0.5``.

    Equivalent to ``tan r = exp(-pi omega c / a)``, which is the form used
    here: it has no cancellation near ``r = pi/4`` and underflows gracefully
    to ``r = 0`` as ``a -> 0``.
    """
    x = math.pi * inp.omega * inp.c / inp.a
    return math.atan(math.exp(-x))


def unruh_density_matrix(r: float) -> DensityMatrix:
    """Alice-Rob state after tracing out Rindler region II."""
    r = check_r(r)
    c, s = math.cos(r), math.sin(r)
    m = np.zeros((4, 4), dtype=np.complex128)
    m[0, 0] = c * c
    m[0, 3] = m[3, 0] = c
    m[1, 1] = s * s
    m[3, 3] = 1.0
    return DensityMatrix(0.5 * m)


def rindler_pure_state(r: float) -> np.ndarray:
    """Three-mode pure state over (Alice, region I, region II), 8 amplitudes.

    Only used to check the region-II trace; the canonical object is
    ``unruh_density_matrix``.
    """
    r = check_r(r)
    psi = np.zeros(8, dtype=np.complex128)
    # index = 4*alice + 2*region_I + region_II
    psi[0b000] = math.cos(r)
    psi[0b011] = math.sin(r)
    psi[0b110] = 1.0
    return psi / math.sqrt(2.0)


def trace_out_last_qubit(psi: np.ndarray) -> np.ndarray:
    """Reduced density matrix of the first two qubits of a 3-qubit pure state."""
    t = np.asarray(psi, dtype=np.complex128).reshape(4, 2)
    return t @ t.conj().T
