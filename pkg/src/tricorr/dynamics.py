"""Local amplitude damping of three qubits and the sudden-death closed forms.

Time is always measured in units of the damping timescale (``t_over_tau``).
With survival amplitude ``p = exp(-t/2)`` and ``q = sqrt(1 - p^2)`` the GMC of
the damped ``sqrt(1-y)|000> + sqrt(y)|111>`` state is

    2 p^3 (sqrt(y(1-y)) - 3 y q^3),  floored at zero,

which is what the X-state formula gives for this state. It reaches zero at
``sqrt(1/y - 1) = 3 q^3`` and is what inverting the ``|+><+|`` correlator
produces. Note its normalization: at t = 0 it is 2ab, not the squared
concurrence 4a^2b^2 reported by :func:`tricorr.measures.gmc`.
"""
from __future__ import annotations

import itertools
import math

import numpy as np
from scipy.optimize import bisect

from .core import DIM, as_matrix, check_density, tensor
from .states import pure_state, to_density

ESD_BRACKET = (0.0, 50.0)
ESD_RESIDUAL_TOL = 1e-12


def survival(t_over_tau: float) -> tuple[float, float]:
    """(p, q) with p^2 = exp(-t/tau) and p^2 + q^2 = 1."""
    if t_over_tau < 0:
        raise ValueError(f"time must be nonnegative, got {t_over_tau}")
    decay = math.exp(-t_over_tau)
    return math.sqrt(decay), math.sqrt(-math.expm1(-t_over_tau))


def kraus_operators(t_over_tau: float) -> tuple[np.ndarray, np.ndarray]:
    p, q = survival(t_over_tau)
    k0 = np.array([[1.0, 0.0], [0.0, p]], dtype=complex)
    k1 = np.array([[0.0, q], [0.0, 0.0]], dtype=complex)
    return k0, k1


def damp_state(state, t_over_tau: float) -> np.ndarray:
    """Apply the same amplitude-damping channel to every qubit.

    ``state`` may be an 8-vector or an 8x8 density matrix.
    """
    arr = np.asarray(state)
    rho = to_density(pure_state(arr)) if arr.ndim == 1 else check_density(as_matrix(arr))
    ks = kraus_operators(t_over_tau)
    out = np.zeros((DIM, DIM), dtype=complex)
    for i, j, k in itertools.product(range(2), repeat=3):
        m = tensor(ks[i], ks[j], ks[k])
        out += m @ rho @ m.conj().T
    return 0.5 * (out + out.conj().T)


def _check_y(y, open_interval=False):
    if open_interval:
        if not 0.0 < y < 1.0:
            raise ValueError(f"y must lie in (0, 1), got {y}")
    elif not 0.0 <= y <= 1.0:
        raise ValueError(f"y must lie in [0, 1], got {y}")


def gmc_damped_closed(y: float, t_over_tau: float) -> float:
    _check_y(y)
    p, q = survival(t_over_tau)
    return max(0.0, 2.0 * p**3 * (math.sqrt(y * (1.0 - y)) - 3.0 * y * q**3))


def esd_time(y: float) -> float | None:
    """Sudden-death time, or ``None`` when the GMC only decays asymptotically."""
    _check_y(y, open_interval=True)
    lhs = math.sqrt(1.0 / y - 1.0)
    if lhs >= 3.0:
        return None

    def residual(t):
        return 3.0 * (-math.expm1(-t)) ** 1.5 - lhs

    t = bisect(residual, *ESD_BRACKET, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    if abs(residual(t)) > ESD_RESIDUAL_TOL:
        raise ArithmeticError(f"bisection residual {residual(t)!r} too large")
    return t


def pcc_damped_closed(y: float, t_over_tau: float) -> float:
    """Tripartite ``|+><+|`` correlator of the damped GHZ-y state."""
    _check_y(y)
    if t_over_tau < 0:
        raise ValueError(f"time must be nonnegative, got {t_over_tau}")
    return 2.0 * math.exp(-1.5 * t_over_tau) / math.sqrt(3.0) * math.sqrt(y * (1.0 - y))


def gmc_from_pcc(c_plus: float, y: float) -> float:
    """Recover the damped-state GMC from a measured ``|+><+|`` correlator."""
    _check_y(y, open_interval=True)
    root = math.sqrt(y * (1.0 - y))
    c_max = 2.0 * root / math.sqrt(3.0)
    if c_plus < -1e-12 or c_plus > c_max * (1.0 + 1e-12):
        raise ValueError(f"c_plus={c_plus} outside the admissible range [0, {c_max}]")
    c_plus = min(max(c_plus, 0.0), c_max)
    ratio = math.sqrt(3.0) * c_plus / (2.0 * root)
    value = (math.sqrt(3.0) * c_plus / root) * (root - 3.0 * y * (1.0 - ratio ** (2.0 / 3.0)) ** 1.5)
    return max(0.0, value)


def x_state_gmc(rho, tol: float = 1e-12) -> float:
    """GMC of an X-shaped three-qubit density matrix from its entries.

    Uses 2 max_i(0, |z_i| - sum_{j != i} sqrt(a_j b_j)) with a_i, b_i the
    diagonal pairs (i, 7-i) and z_i the anti-diagonal coherences.
    """
    rho = check_density(rho)
    mask = np.eye(DIM, dtype=bool) | np.eye(DIM, dtype=bool)[::-1]
    if np.max(np.abs(rho[~mask])) > tol:
        raise ValueError("density matrix is not X-shaped")
    diag = np.real(np.diag(rho))
    pairs = np.sqrt(np.clip(diag[:4] * diag[::-1][:4], 0.0, None))
    best = 0.0
    for i in range(4):
        z = abs(rho[i, DIM - 1 - i])
        best = max(best, z - (pairs.sum() - pairs[i]))
    return 2.0 * best
