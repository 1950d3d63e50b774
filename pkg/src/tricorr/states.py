"""Constructors for the three-qubit state families.

Pure states are length-8 complex vectors in the ``|000>..|111>`` basis;
mixtures are 8x8 density matrices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import DIM, InvalidStateError

NORM_TOL = 1e-12
GHZ_NORM_TOL = 1e-10

W_THETA = math.atan(math.sqrt(2.0))


def _basis_index(bits: str) -> int:
    return int(bits, 2)


def pure_state(amplitudes, normalize: bool = False) -> np.ndarray:
    """Validate (and optionally normalize) an 8-amplitude state vector."""
    psi = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if psi.shape != (DIM,):
        raise InvalidStateError(f"expected {DIM} amplitudes, got {psi.size}")
    if not np.all(np.isfinite(psi)):
        raise InvalidStateError("amplitudes must be finite")
    norm = float(np.linalg.norm(psi))
    if normalize:
        if norm <= 1e-14:
            raise InvalidStateError("cannot normalize the zero vector")
        return psi / norm
    if abs(norm - 1.0) > NORM_TOL:
        raise InvalidStateError(f"state has norm {norm!r}, expected 1")
    return psi


def to_density(psi) -> np.ndarray:
    psi = pure_state(psi)
    return np.outer(psi, psi.conj())


def make_ghz(a: float, b: float) -> np.ndarray:
    """``a|000> + b|111>`` with real a, b in [0, 1] and a^2 + b^2 = 1."""
    if not (0.0 <= a <= 1.0 and 0.0 <= b <= 1.0):
        raise ValueError(f"GHZ amplitudes must lie in [0, 1], got a={a}, b={b}")
    if abs(a * a + b * b - 1.0) > GHZ_NORM_TOL:
        raise ValueError(f"a^2 + b^2 = {a * a + b * b!r}, expected 1")
    psi = np.zeros(DIM, dtype=complex)
    psi[_basis_index("000")] = a
    psi[_basis_index("111")] = b
    # absorb the tolerated normalization slack
    return psi / np.linalg.norm(psi)


def make_w(theta: float) -> np.ndarray:
    """``cos(t)|100> + sin(t)/sqrt2 (|010> + |001>)`` for t in [0, pi/2]."""
    if not 0.0 <= theta <= math.pi / 2:
        raise ValueError(f"theta must lie in [0, pi/2], got {theta}")
    psi = np.zeros(DIM, dtype=complex)
    psi[_basis_index("100")] = math.cos(theta)
    psi[_basis_index("010")] = math.sin(theta) / math.sqrt(2.0)
    psi[_basis_index("001")] = math.sin(theta) / math.sqrt(2.0)
    return psi


def x_family_amplitudes(a: float) -> tuple[float, float, float, float]:
    """Unnormalized (|000>, |111>, |100>) amplitudes and their squared norm N."""
    c8, s8 = math.cos(math.pi / 8), math.sin(math.pi / 8)
    r2 = math.sqrt(2.0)
    c000 = a / r2 + c8 * (1.0 - r2 * a)
    c111 = a + s8 * (1.0 - r2 * a)
    c100 = a / r2
    norm_sq = c000**2 + c111**2 + c100**2
    return c000, c111, c100, norm_sq


def make_x_family(a: float) -> np.ndarray:
    """One-parameter family interpolating from cos/sin(pi/8) GHZ-like states."""
    c000, c111, c100, norm_sq = x_family_amplitudes(a)
    if norm_sq <= 1e-14:
        raise ValueError(f"degenerate x-family parameter a={a} (N={norm_sq})")
    n = math.sqrt(norm_sq)
    psi = np.zeros(DIM, dtype=complex)
    psi[_basis_index("000")] = c000 / n
    psi[_basis_index("111")] = c111 / n
    psi[_basis_index("100")] = c100 / n
    return psi


def make_ghz_y(y: float) -> np.ndarray:
    """``sqrt(1-y)|000> + sqrt(y)|111>``."""
    if not 0.0 <= y <= 1.0:
        raise ValueError(f"y must lie in [0, 1], got {y}")
    return make_ghz(math.sqrt(1.0 - y), math.sqrt(y))


GHZ = make_ghz(1 / math.sqrt(2.0), 1 / math.sqrt(2.0))
W = make_w(W_THETA)


def mix_ghz_w(p: float) -> np.ndarray:
    """``p |GHZ><GHZ| + (1-p) |W><W|`` with the symmetric GHZ and W states."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"mixing weight p must lie in [0, 1], got {p}")
    return p * to_density(GHZ) + (1.0 - p) * to_density(W)


def psi1() -> np.ndarray:
    """First member of the classic CF/GMC inequivalence example."""
    r = 1 / math.sqrt(2.0)
    return pure_state(
        [r * math.sin(math.pi / 5), 0, 0, 0, r * math.cos(math.pi / 5), 0, 0, r]
    )


def psi2() -> np.ndarray:
    """Second member of the inequivalence example, read as cos/sin(pi/8) GHZ.

    The literal ``sin(pi/8)(|000> + |111>)`` normalizes to the symmetric GHZ
    state, which cannot have GMC = 0.5; the cos/sin reading does.
    """
    return make_ghz(math.cos(math.pi / 8), math.sin(math.pi / 8))


@dataclass(frozen=True)
class Family:
    """A named state family scanned along a single real parameter."""

    id: str
    param: str
    domain: tuple[float, float]
    build: Callable[[float], np.ndarray]
    pure: bool = True
    extra_params: tuple[str, ...] = field(default_factory=tuple)

    def density(self, value: float) -> np.ndarray:
        out = self.build(value)
        return to_density(out) if self.pure else out


def _ghz_from_a(a: float) -> np.ndarray:
    return make_ghz(a, math.sqrt(max(0.0, 1.0 - a * a)))


FAMILIES: dict[str, Family] = {
    f.id: f
    for f in (
        Family("generalized-ghz", "a", (0.0, 1.0), _ghz_from_a, extra_params=("b",)),
        Family("generalized-w", "theta", (0.0, math.pi / 2), make_w),
        Family("x-family", "a", (-2.0, 2.0), make_x_family),
        Family("ghz-y", "y", (0.0, 1.0), make_ghz_y),
        Family("ghz-w-mixture", "p", (0.0, 1.0), mix_ghz_w, pure=False),
    )
}


def get_family(family_id: str) -> Family:
    try:
        return FAMILIES[family_id]
    except KeyError:
        raise ValueError(
            f"unknown family {family_id!r}; choose from {', '.join(FAMILIES)}"
        ) from None


def build_state(family_id: str, params: dict[str, float]) -> np.ndarray:
    """Density matrix for a family given its named parameters.

    ``generalized-ghz`` takes ``a`` and ``b`` (``b`` defaults to sqrt(1-a^2)).
    """
    fam = get_family(family_id)
    allowed = {fam.param, *fam.extra_params}
    unknown = set(params) - allowed
    if unknown:
        raise ValueError(f"family {family_id!r} has no parameter(s) {sorted(unknown)}")
    if fam.param not in params:
        raise ValueError(f"family {family_id!r} needs parameter {fam.param!r}")
    if family_id == "generalized-ghz" and "b" in params:
        return to_density(make_ghz(params["a"], params["b"]))
    return fam.density(params[fam.param])
