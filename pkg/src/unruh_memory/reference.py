"""Published closed forms, transcribed literally.

These are audit targets, not the computational path. Several contain
transcription defects (non-Hermitian matrices, entries without a conjugate
partner), which is exactly what the cross-check machinery reports on. Do not
"fix" anything here; the point is to evaluate what was printed.

Shorthand used throughout: ``c = cos r``, ``s = sin r``, ``c2r = cos 2r``,
``c4r = cos 4r``. A printed ``cos r^4`` is read as ``cos^4 r``.
"""

from __future__ import annotations

import math

import numpy as np

from .channels import ChannelKind

# (row, col) entries printed without a matching (col, row) partner
UNPAIRED_ENTRIES = {
    ChannelKind.AMPLITUDE_DAMPING: (),
    ChannelKind.DEPOLARIZING: ((1, 2),),
    ChannelKind.BIT_PHASE_FLIP: ((1, 2),),
    ChannelKind.PHASE_FLIP: ((1, 2),),
}


def _trig(r):
    return math.cos(r), math.sin(r), math.cos(2 * r), math.cos(4 * r)


def _sqrt(x: float) -> float:
    # negative radicands become NaN so callers can count them
    return math.sqrt(x) if x >= 0 else math.nan


def _matrix_ad(p, mu, r):
    c, _, _, _ = _trig(r)
    c2 = c * c
    m = np.zeros((4, 4))
    m[0, 0] = 0.5 * (-(-1 + mu) * p * (1 + p) - (-1 + p) * c2)
    m[0, 3] = m[3, 0] = 0.5 * (1 - p + mu * (-1 + math.sqrt(1 - p) + p)) * c
    m[1, 1] = 0.5 * (1 + (-1 + mu) * p**2 + (-1 + p - mu * p) * c2)
    m[2, 2] = 0.5 * (-1 + mu) * (-1 + p) * p
    m[3, 3] = 0.5 * (1 - (-1 + mu) * (-2 + p) * p + mu * p * c2)
    return m


def _dep_like_common(p, mu, r):
    """Entries shared verbatim by the depolarizing and bit-phase flip printouts."""
    c, s, _, _ = _trig(r)
    c2, s2 = c * c, s * s
    big = 4 + p * (-10 + mu * (11 - 6 * p) + 6 * p)
    e14 = (1 / 16) * c * (4 + (-2 + mu) * p + big * c2)
    e41 = (1 / 8) * c * (2 + p * (-3 - 2 * mu * (-2 + p) + 2 * p) - (-2 + p) * (1 + (-1 + mu) * p) * c2)
    e22 = (1 / 16) * (4 + (-2 + mu) * p + 2 * (-2 + p) * (1 + (-1 + mu) * p) * c2) * s2
    e23 = -(1 / 16) * mu * p * c * s2
    e44 = (1 / 16) * (4 + (-2 + mu) * p + big * c2)
    return e14, e41, e22, e23, e44


def _matrix_dep(p, mu, r):
    c, _, _, _ = _trig(r)
    c2 = c * c
    e14, e41, e22, e23, e44 = _dep_like_common(p, mu, r)
    m = np.zeros((4, 4))
    m[0, 0] = (1 / 8) * c2 * (2 + p * (-3 - 2 * mu * (-2 + p) + 2 * p) - (-2 + p) * (1 + (-1 + mu) * p) * c2)
    m[0, 3], m[3, 0] = e14, e41
    m[1, 1], m[1, 2] = e22, e23
    m[3, 3] = e44
    return m


def _matrix_bpf(p, mu, r):
    _, _, c2r, _ = _trig(r)
    e14, e41, e22, e23, e44 = _dep_like_common(p, mu, r)
    m = np.zeros((4, 4))
    m[0, 0] = 0.25 * (1 + p * (-1 - 2 * mu * (-1 + p) + 2 * p) - (-1 + p) * (1 + 2 * (-1 + mu) * p) * c2r)
    m[0, 3], m[3, 0] = e14, e41
    m[1, 1], m[1, 2] = e22, e23
    m[3, 3] = e44
    return m


def _matrix_pf(p, mu, r):
    c, s, _, _ = _trig(r)
    m = np.zeros((4, 4))
    m[0, 0] = 0.5 * c * c
    m[0, 3] = m[3, 0] = 0.5 * (1 + 4 * p * (-1 + mu + p - mu * p)) * c
    m[1, 1] = 0.5 * s * s
    m[1, 2] = -(1 / 16) * mu * p * c * s * s
    m[3, 3] = 0.5
    return m


_MATRICES = {
    ChannelKind.AMPLITUDE_DAMPING: _matrix_ad,
    ChannelKind.DEPOLARIZING: _matrix_dep,
    ChannelKind.BIT_PHASE_FLIP: _matrix_bpf,
    ChannelKind.PHASE_FLIP: _matrix_pf,
}


def printed_density_matrix(kind: ChannelKind, p: float, mu: float, r: float,
                           zero_unpaired: bool = False) -> np.ndarray:
    """Final state exactly as published for ``kind``.

    With ``zero_unpaired`` the entries that have no conjugate partner in the
    printout are set to zero before returning.
    """
    m = _MATRICES[kind](p, mu, r)
    if zero_unpaired:
        for i, j in UNPAIRED_ENTRIES[kind]:
            m[i, j] = 0.0
    return m.astype(np.complex128)


def _lambdas_ad(p, mu, r):
    c, _, c2r, c4r = _trig(r)
    c2, c4 = c * c, c**4
    sq = math.sqrt(1 - p)
    t = (p - mu * p - p**2 + 3 * mu * p**2 - 2 * mu**2 * p**2 - p**3 + 2 * mu * p**3
         - mu**2 * p**3 + p**4 - 2 * mu * p**4 + mu**2 * p**4
         + 2 * c2 - 2 * mu * c2 + 2 * mu**2 * c2 + 2 * mu * sq * c2
         - 2 * mu**2 * sq * c2 - 5 * p * c2 + 6 * mu * p * c2 - 3 * mu**2 * p * c2
         - 2 * mu * sq * p * c2 + 2 * mu**2 * sq * p * c2 + 4 * p**2 * c2
         - 4 * mu * p**2 * c2 - p**3 * c2 + 2 * mu * p**3 * c2 - mu**2 * p**3 * c2
         + mu * p * c4 - mu * p**2 * c4)
    outer = (-1 + p) * (-1 + p - 2 * mu * (-1 + sq + p) + mu**2 * (-2 + 2 * sq + p))
    inner = (4 - 4 * p + 3 * mu * p + 4 * p**2 + 13 * mu * p**2 - 20 * mu**2 * p**2
             - 12 * p**3 + 24 * mu * p**3 - 12 * mu**2 * p**3 + 8 * p**4 - 16 * mu * p**4
             + 8 * mu**2 * p**4
             - 4 * (-1 - 3 * (-1 + mu) * p + (-3 + 3 * mu + mu**2) * p**2 + (-1 + mu)**2 * p**3) * c2r
             - mu * (-1 + p) * p * c4r)
    root = _sqrt(outer * c2 * inner) / math.sqrt(2)
    l34 = 0.25 * (-1 + mu) * (-1 + p) * p * (1 + (-1 + mu) * p**2 + (-1 + p - mu * p) * c2)
    return 0.25 * (t + root), 0.25 * (t - root), l34, l34


def _lambdas_dep(p, mu, r):
    c, _, _, _ = _trig(r)
    c2, c4 = c * c, c**4
    l1 = (1 / 32) * c2 * (
        8 + 2 * (-8 + 9 * mu) * p + (14 - 19 * mu + 4 * mu**2) * p**2 - 2 * (2 - 3 * mu + mu**2) * p**3
        + (16 + 48 * (-1 + mu) * p + 2 * (30 - 52 * mu + 23 * mu**2) * p**2
           + (-40 + 87 * mu - 47 * mu**2) * p**3 + 12 * (-1 + mu)**2 * p**4) * c2
        + (-2 + p) * (-4 + (14 - 15 * mu) * p + (-16 + 27 * mu - 11 * mu**2) * p**2
                      + 6 * (-1 + mu)**2 * p**3) * c4)
    return l1, 0.0, 0.0, 0.0


def _bpf_cos4r_tail(p, mu, c4r):
    """cos 4r part, printed identically in both eigenvalue pairs."""
    return (-p + 2 * mu * p + 5 * p**2 - 10 * mu * p**2 + 4 * mu**2 * p**2 - 8 * p**3
            + 16 * mu * p**3 - 8 * mu**2 * p**3 + 4 * p**4 - 8 * mu * p**4 + 4 * mu**2 * p**4) * c4r


def _lambdas_bpf(p, mu, r):
    c, _, c2r, c4r = _trig(r)
    c2 = c * c
    tail4 = _bpf_cos4r_tail(p, mu, c4r)
    s12 = (8 - 27 * p + 30 * mu * p + 55 * p**2 - 86 * mu * p**2 + 28 * mu**2 * p**2 - 56 * p**3
           + 112 * mu * p**3 - 56 * mu**2 * p**3 + 28 * p**4 - 56 * mu * p**4 + 28 * mu**2 * p**4
           + (8 - 36 * p + 32 * mu * p + 68 * p**2 - 96 * mu * p**2 + 32 * mu**2 * p**2
              - 64 * p**3 + 128 * mu * p**3 - 64 * mu**2 * p**3 + 32 * p**4 - 64 * mu * p**4
              + 32 * mu**2 * p**4) * c2r
           + tail4)
    q12 = ((1 + 2 * (-1 + mu) * p - 2 * (-1 + mu) * p**2)**2 * c2
           * (4 - 11 * p + 14 * mu * p + 23 * p**2 - 38 * mu * p**2 + 12 * mu**2 * p**2
              - 24 * p**3 + 48 * mu * p**3 - 24 * mu**2 * p**3 + 12 * p**4 - 24 * mu * p**4
              + 12 * mu**2 * p**4
              + 4 * (1 + (-5 + 4 * mu) * p + (3 - 2 * mu)**2 * p**2 - 8 * (-1 + mu)**2 * p**3
                     + 4 * (-1 + mu)**2 * p**4) * c2r
              + (-1 + p) * p * ((1 - 2 * p)**2 - 2 * mu * (1 - 2 * p)**2
                                + 4 * mu**2 * (-1 + p) * p) * c4r))
    root12 = 4 * math.sqrt(2) * _sqrt(q12)

    s34 = (5 * p - 2 * mu * p + 23 * p**2 - 54 * mu * p**2 + 28 * mu**2 * p**2 - 56 * p**3
           + 112 * mu * p**3 - 56 * mu**2 * p**3 + 28 * p**4 - 56 * mu * p**4 + 28 * mu**2 * p**4
           + (-4 * p + 36 * p**2 - 64 * mu * p**2 + 32 * mu**2 * p**2 - 64 * p**3
              + 128 * mu * p**3 - 64 * mu**2 * p**3 + 32 * p**4 - 64 * mu * p**4
              + 32 * mu**2 * p**4) * c2r
           + tail4)
    q34 = ((-1 + mu)**2 * (-1 + p)**3 * p**3 * c2
           * (-5 + 2 * mu - 12 * p + 24 * mu * p - 12 * mu**2 * p + 12 * p**2 - 24 * mu * p**2
              + 12 * mu**2 * p**2
              + 4 * (1 - 4 * (-1 + mu)**2 * p + 4 * (-1 + mu)**2 * p**2) * c2r
              + ((1 - 2 * p)**2 - 2 * mu * (1 - 2 * p)**2 + 4 * mu**2 * (-1 + p) * p) * c4r))
    root34 = 8 * math.sqrt(2) * _sqrt(q34)
    return ((s12 + root12) / 32, (s12 - root12) / 32, (s34 + root34) / 32, (s34 - root34) / 32)


def _lambdas_pf(p, mu, r):
    c2 = math.cos(r) ** 2
    l1 = (1 + 2 * (-1 + mu) * p - 2 * (-1 + mu) * p**2) ** 2 * c2
    l2 = 4 * (-1 + mu) ** 2 * (-1 + p) ** 2 * p**2 * c2
    return l1, l2, 0.0, 0.0


_LAMBDAS = {
    ChannelKind.AMPLITUDE_DAMPING: _lambdas_ad,
    ChannelKind.DEPOLARIZING: _lambdas_dep,
    ChannelKind.BIT_PHASE_FLIP: _lambdas_bpf,
    ChannelKind.PHASE_FLIP: _lambdas_pf,
}


def closed_form_lambdas(kind: ChannelKind, p: float, mu: float, r: float) -> tuple[float, float, float, float]:
    """Published eigenvalues of ``rho * rho_tilde``, in printed (unsorted) order.

    Entries are NaN where a printed square root has a negative argument.
    """
    return tuple(float(x) for x in _LAMBDAS[kind](float(p), float(mu), float(r)))
