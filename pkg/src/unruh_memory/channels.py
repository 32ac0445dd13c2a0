"""Noise channels with memory acting on both qubits of the Alice-Rob pair.

Two consecutive uses of a single-qubit channel are correlated with degree
``mu``: with probability ``mu`` the second qubit suffers the same error as
the first, with probability ``1 - mu`` an independent one.

For the Pauli family (depolarizing, bit-phase flip, phase flip) a single set
of sixteen operators

    A_ij = sqrt(p_i * ((1 - mu) * p_j + mu * delta_ij)) sigma_i (x) sigma_j

already realises the mixture. Amplitude damping is not a Pauli channel, so
its correlated part uses the non-factorisable pair

    A00 = diag(cos chi, 1, 1, 1),   A11 = sin chi |11><00|,   sin chi = sqrt(p)

mixed with the uncorrelated product channel in proportions ``mu`` and
``1 - mu``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .matcore import PAULI, SIGMA_Y, SIGMA_Z, SIGMA_X, IDENTITY2, as_matrix, tensor
from .state import DensityMatrix, InvalidStateError

COMPLETENESS_TOL = 1e-12


class ChannelKind(enum.Enum):
    AMPLITUDE_DAMPING = "ad"
    DEPOLARIZING = "dep"
    BIT_PHASE_FLIP = "bpf"
    PHASE_FLIP = "pf"

    @property
    def code(self) -> str:
        return self.value

    @property
    def label(self) -> str:
        return _LABELS[self]

    @property
    def is_pauli(self) -> bool:
        return self is not ChannelKind.AMPLITUDE_DAMPING

    @classmethod
    def parse(cls, text: str) -> "ChannelKind":
        key = text.strip().lower().replace("-", "_")
        for kind in cls:
            if key in (kind.value, kind.name.lower()):
                return kind
        raise ValueError(f"unknown channel {text!r}; expected one of ad, dep, bpf, pf")


_LABELS = {
    ChannelKind.AMPLITUDE_DAMPING: "amplitude damping",
    ChannelKind.DEPOLARIZING: "depolarizing",
    ChannelKind.BIT_PHASE_FLIP: "bit-phase flip",
    ChannelKind.PHASE_FLIP: "phase flip",
}


def _check_unit(name: str, value: float) -> float:
    value = float(value)
    if not (0.0 <= value <= 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
    return value


@dataclass(frozen=True)
class ChannelSpec:
    kind: ChannelKind
    p: float
    mu: float

    def __post_init__(self):
        if not isinstance(self.kind, ChannelKind):
            object.__setattr__(self, "kind", ChannelKind.parse(str(self.kind)))
        object.__setattr__(self, "p", _check_unit("p", self.p))
        object.__setattr__(self, "mu", _check_unit("mu", self.mu))


class ChannelError(RuntimeError):
    """Channel output violated a state invariant; indicates a bug, not bad input."""


@dataclass(frozen=True)
class KrausSet:
    """Two-qubit Kraus operators, already scaled: rho -> sum_k K rho K^dagger.

    Construction enforces completeness to within ``COMPLETENESS_TOL``.
    """

    operators: tuple

    def __post_init__(self):
        ops = tuple(as_matrix(k) for k in self.operators)
        if not ops:
            raise ValueError("a Kraus set needs at least one operator")
        for k in ops:
            if k.shape != (4, 4):
                raise ValueError(f"Kraus operators must be 4x4, got {k.shape}")
        object.__setattr__(self, "operators", ops)
        res = completeness_residual(ops)
        if res > COMPLETENESS_TOL:
            raise ValueError(f"Kraus set is not trace preserving (residual {res:.3e})")

    def __len__(self):
        return len(self.operators)

    def __iter__(self):
        return iter(self.operators)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        ks = np.stack(self.operators)
        return (ks @ rho @ ks.conj().transpose(0, 2, 1)).sum(axis=0)


def completeness_residual(ks: KrausSet | Sequence) -> float:
    """Max-entry deviation of ``sum_k K^dagger K`` from the identity."""
    ops = [np.asarray(k, dtype=np.complex128) for k in ks]
    dim = ops[0].shape[0]
    total = sum(k.conj().T @ k for k in ops)
    return float(np.max(np.abs(total - np.eye(dim))))


def single_qubit_kraus(kind: ChannelKind, p: float) -> list[np.ndarray]:
    """Standard single-qubit Kraus operators for ``kind`` at strength ``p``."""
    p = _check_unit("p", p)
    if kind is ChannelKind.AMPLITUDE_DAMPING:
        return [
            as_matrix([[1, 0], [0, math.sqrt(1 - p)]]),
            as_matrix([[0, math.sqrt(p)], [0, 0]]),
        ]
    if kind is ChannelKind.DEPOLARIZING:
        q = math.sqrt(p / 4)
        return [
            as_matrix(math.sqrt(1 - 3 * p / 4) * IDENTITY2),
            as_matrix(q * SIGMA_X),
            as_matrix(q * SIGMA_Y),
            as_matrix(q * SIGMA_Z),
        ]
    flip = SIGMA_Y if kind is ChannelKind.BIT_PHASE_FLIP else SIGMA_Z
    return [as_matrix(math.sqrt(1 - p) * IDENTITY2), as_matrix(math.sqrt(p) * flip)]


def pauli_probability_vector(kind: ChannelKind, p: float) -> tuple[float, float, float, float]:
    """Error probabilities over (I, X, Y, Z) for a Pauli channel."""
    p = _check_unit("p", p)
    if kind is ChannelKind.DEPOLARIZING:
        return (1 - 3 * p / 4, p / 4, p / 4, p / 4)
    if kind is ChannelKind.BIT_PHASE_FLIP:
        return (1 - p, 0.0, p, 0.0)
    if kind is ChannelKind.PHASE_FLIP:
        return (1 - p, 0.0, 0.0, p)
    raise ValueError(f"{kind.label} is not a Pauli channel")


def correlated_pauli_weights(kind: ChannelKind, p: float, mu: float) -> np.ndarray:
    """4x4 array of joint error probabilities ``p_i ((1-mu) p_j + mu delta_ij)``."""
    mu = _check_unit("mu", mu)
    probs = np.array(pauli_probability_vector(kind, p))
    return probs[:, None] * ((1 - mu) * probs[None, :] + mu * np.eye(4))


# sigma_i (x) sigma_j, built once
_PAULI_PAIRS = [[tensor(a, b) for b in PAULI] for a in PAULI]


def correlated_pauli_kraus(kind: ChannelKind, p: float, mu: float) -> KrausSet:
    w = correlated_pauli_weights(kind, p, mu)
    ops = [
        math.sqrt(w[i, j]) * _PAULI_PAIRS[i][j]
        for i in range(4)
        for j in range(4)
        if w[i, j] > 0
    ]
    return KrausSet(tuple(ops))


def correlated_ad_kraus(p: float) -> KrausSet:
    """Fully correlated amplitude damping on two qubits, ``sin chi = sqrt(p)``."""
    p = _check_unit("p", p)
    cos_chi, sin_chi = math.sqrt(1 - p), math.sqrt(p)
    a00 = np.eye(4, dtype=np.complex128)
    a00[0, 0] = cos_chi
    a11 = np.zeros((4, 4), dtype=np.complex128)
    a11[3, 0] = sin_chi
    ops = [a00] if sin_chi == 0 else [a00, a11]
    return KrausSet(tuple(ops))


def uncorrelated_kraus(kind: ChannelKind, p: float) -> KrausSet:
    """Independent uses on each qubit: all products ``A_i (x) A_j``."""
    single = single_qubit_kraus(kind, p)
    ops = [tensor(a, b) for a in single for b in single]
    return KrausSet(tuple(k for k in ops if np.any(k)))


def channel_kraus(spec: ChannelSpec) -> KrausSet:
    """Single Kraus set realising the memory channel described by ``spec``."""
    if spec.kind.is_pauli:
        return correlated_pauli_kraus(spec.kind, spec.p, spec.mu)
    ops = []
    if spec.mu < 1:
        ops += [math.sqrt(1 - spec.mu) * k for k in uncorrelated_kraus(spec.kind, spec.p)]
    if spec.mu > 0:
        ops += [math.sqrt(spec.mu) * k for k in correlated_ad_kraus(spec.p)]
    return KrausSet(tuple(ops))


def apply_channel(rho: DensityMatrix, spec: ChannelSpec) -> DensityMatrix:
    out = channel_kraus(spec).apply(rho.mat)
    try:
        return DensityMatrix(out)
    except InvalidStateError as exc:
        raise ChannelError(f"{spec}: channel output is not a valid state: {exc}") from exc
