import math

import numpy as np
import pytest

from unruh_memory.channels import ChannelKind, single_qubit_kraus

R_GRID = tuple(k * math.pi / 32 for k in range(9))
UNIT_GRID = tuple(k / 10 for k in range(11))

_ACCEPTANCE = []


def random_density(rng, rank=4):
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(rng, n=2):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def apply_local(rho, ops, qubit):
    """Apply a single-qubit Kraus set to one qubit of a 2-qubit state by index contraction."""
    t = np.asarray(rho).reshape(2, 2, 2, 2)
    out = np.zeros_like(t)
    for k in ops:
        k = np.asarray(k)
        if qubit == 0:
            out += np.einsum("ai,ijkl,bk->ajbl", k, t, k.conj())
        else:
            out += np.einsum("bj,ijkl,cl->ibkc", k, t, k.conj())
    return out.reshape(4, 4)


def tensor_channel_oracle(rho, kind: ChannelKind, p: float):
    """Independent uses of the single-qubit channel on Alice's and Rob's qubit."""
    ops = single_qubit_kraus(kind, p)
    return apply_local(apply_local(rho, ops, 0), ops, 1)


def x_state_concurrence(rho):
    """Closed-form concurrence valid for states with only diagonal and anti-diagonal entries."""
    r = np.asarray(rho)
    a = abs(r[0, 3]) - math.sqrt(max(r[1, 1].real * r[2, 2].real, 0.0))
    b = abs(r[1, 2]) - math.sqrt(max(r[0, 0].real * r[3, 3].real, 0.0))
    return 2 * max(0.0, a, b)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def record_criterion():
    def record(name, passed, detail=""):
        _ACCEPTANCE.append((name, bool(passed), detail))
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
