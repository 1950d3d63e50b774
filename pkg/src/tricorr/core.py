"""Dense complex linear algebra and density-matrix checks for three qubits.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Qubit 1 is the
leftmost tensor factor and the computational basis is ordered by binary
counting: ``|000>, |001>, ..., |111>``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

N_QUBITS = 3
DIM = 2**N_QUBITS

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
POSITIVITY_TOL = -1e-10

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class InvalidStateError(ValueError):
    """Raised when an array does not describe a valid three-qubit state."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def tensor(*ops) -> np.ndarray:
    """Kronecker product of the given matrices (or vectors), left to right."""
    if not ops:
        raise ValueError("tensor() needs at least one operand")
    return reduce(np.kron, (np.asarray(o, dtype=complex) for o in ops))


def _check_subsystems(qubits) -> frozenset:
    s = frozenset(int(q) for q in qubits)
    if not s or not s < {1, 2, 3}:
        raise ValueError(
            f"subsystem set must be a nonempty strict subset of {{1, 2, 3}}, got {sorted(s)}"
        )
    return s


def partial_trace(rho, discard) -> np.ndarray:
    """Trace out the qubits in ``discard`` (1-based labels).

    The kept qubits stay in their original relative order.
    """
    discard = _check_subsystems(discard)
    rho = as_matrix(rho)
    if rho.shape != (DIM, DIM):
        raise ValueError(f"expected an {DIM}x{DIM} matrix, got {rho.shape}")
    keep = [q for q in range(N_QUBITS) if q + 1 not in discard]
    t = rho.reshape([2] * (2 * N_QUBITS))
    rows = list(range(N_QUBITS))
    cols = [N_QUBITS + q if q in keep else q for q in range(N_QUBITS)]
    out = [q for q in keep] + [N_QUBITS + q for q in keep]
    d = 2 ** len(keep)
    return np.einsum(t, rows + cols, out).reshape(d, d)


def purity(m) -> float:
    """Tr(m^2) for a square Hermitian matrix."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"purity needs a square matrix, got {m.shape}")
    # Tr(m m) = sum_ij m_ij m_ji
    return float(np.real(np.sum(m * m.T)))


def hermitian_deviation(m) -> float:
    m = as_matrix(m)
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def _jacobi_rotation(a: np.ndarray, p: int, q: int) -> np.ndarray:
    """Unitary that annihilates a[p, q] of the Hermitian matrix a."""
    apq = a[p, q]
    mag = abs(apq)
    phase = apq / mag
    theta = (a[q, q].real - a[p, p].real) / (2.0 * mag)
    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
    if theta < 0.0:
        t = -t
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    g = np.eye(a.shape[0], dtype=complex)
    # diag(1, conj(phase)) makes a[p, q] real, then a real rotation zeroes it
    g[p, p] = c
    g[p, q] = s
    g[q, p] = -s * np.conj(phase)
    g[q, q] = c * np.conj(phase)
    return g


def hermitian_eigenvalues(m, tol: float = 1e-13, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Sweeps over all upper off-diagonal pivots until the Frobenius norm of the
    off-diagonal part drops below ``tol * max(1, ||m||_F)``.

    Returns
    -------
    numpy.ndarray
        Real eigenvalues in ascending order.
    """
    a = as_matrix(m).copy()
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"expected a square matrix, got {a.shape}")
    if hermitian_deviation(a) > 1e-10:
        raise ValueError("matrix is not Hermitian within 1e-10")
    a = 0.5 * (a + a.conj().T)
    scale = max(1.0, float(np.linalg.norm(a)))

    def off(x):
        return float(np.sqrt(np.sum(np.abs(x) ** 2) - np.sum(np.abs(np.diag(x)) ** 2)))

    for _ in range(max_sweeps):
        if off(a) <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) < 1e-300:
                    continue
                g = _jacobi_rotation(a, p, q)
                a = g.conj().T @ a @ g
                a[p, q] = a[q, p] = 0.0
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    return np.sort(np.real(np.diag(a)))


@dataclass(frozen=True)
class ValidationReport:
    hermitian_deviation: float
    trace_deviation: float
    min_eigenvalue: float
    shape_ok: bool = True

    @property
    def passed(self) -> bool:
        return (
            self.shape_ok
            and self.hermitian_deviation <= HERMITIAN_TOL
            and self.trace_deviation <= TRACE_TOL
            and self.min_eigenvalue >= POSITIVITY_TOL
        )

    def failures(self) -> list[str]:
        out = []
        if not self.shape_ok:
            out.append("shape")
        if self.hermitian_deviation > HERMITIAN_TOL:
            out.append("hermiticity")
        if self.trace_deviation > TRACE_TOL:
            out.append("trace")
        if self.min_eigenvalue < POSITIVITY_TOL:
            out.append("positivity")
        return out

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "hermitian_deviation": self.hermitian_deviation,
            "trace_deviation": self.trace_deviation,
            "min_eigenvalue": self.min_eigenvalue,
            "failures": self.failures(),
        }


def validate_density(rho) -> ValidationReport:
    """Check Hermiticity, unit trace and positivity of an 8x8 matrix.

    Never raises for a wrongly-valued matrix; the report carries the verdict.
    """
    rho = as_matrix(rho)
    if rho.shape != (DIM, DIM):
        return ValidationReport(np.inf, np.inf, -np.inf, shape_ok=False)
    herm = hermitian_deviation(rho)
    tr = abs(np.trace(rho) - 1.0)
    if herm > 1e-10:
        # eigenvalues of a non-Hermitian matrix are not meaningful here
        min_eig = -np.inf
    else:
        min_eig = float(hermitian_eigenvalues(rho)[0])
    return ValidationReport(herm, float(tr), min_eig)


def check_density(rho) -> np.ndarray:
    """Cheap structural check used on hot paths (shape, Hermiticity, trace).

    Positivity is left to :func:`validate_density`.
    """
    rho = as_matrix(rho)
    if rho.shape != (DIM, DIM):
        raise InvalidStateError(f"expected an {DIM}x{DIM} density matrix, got {rho.shape}")
    if hermitian_deviation(rho) > HERMITIAN_TOL:
        raise InvalidStateError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > TRACE_TOL:
        raise InvalidStateError(f"density matrix trace is {np.trace(rho).real!r}, not 1")
    return rho


def is_pure(rho, tol: float = 1e-10) -> bool:
    return abs(purity(rho) - 1.0) <= tol


def permute_qubits(rho, order) -> np.ndarray:
    """Reorder tensor factors: new qubit k is old qubit ``order[k]`` (0-based)."""
    order = list(order)
    if sorted(order) != list(range(N_QUBITS)):
        raise ValueError(f"not a permutation of (0, 1, 2): {order}")
    t = as_matrix(rho).reshape([2] * (2 * N_QUBITS))
    return t.transpose(order + [N_QUBITS + q for q in order]).reshape(DIM, DIM)
