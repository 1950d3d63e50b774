"""Pearson correlation, mutual information and mutual predictability.

Each bipartite quantity is taken across one of the three one-versus-two cuts.
The tripartite quantity is the geometric mean over the cuts, with per-cut
values below 1e-12 treated as zero (the cube root would otherwise inflate
roundoff to ~1e-5). A Pearson
correlator whose variance product vanishes is *degenerate*: the bipartite
functions return ``None`` and the tripartite aggregate counts it as zero.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .core import I2, SIGMA_X, SIGMA_Y, SIGMA_Z, check_density, hermitian_deviation, permute_qubits, tensor

DEGENERATE_TOL = 1e-12
PROB_TOL = 1e-10
# per-cut values at or below this are roundoff on an exact zero
GEOMEAN_FLOOR = 1e-12


class Bipartition(IntEnum):
    """One-versus-two cut, named by its lone qubit (1-based)."""

    Q1 = 1
    Q2 = 2
    Q3 = 3

    @property
    def rest(self) -> tuple[int, int]:
        return tuple(q for q in (1, 2, 3) if q != self.value)

    @property
    def label(self) -> str:
        j, k = self.rest
        return f"{self.value}-({j}{k})"

    @property
    def order(self) -> list[int]:
        """0-based qubit order that puts the lone qubit first."""
        return [self.value - 1] + [q - 1 for q in self.rest]


CUTS = tuple(Bipartition)


@dataclass(frozen=True, eq=False)
class ObservableSpec:
    """A one-qubit observable and the two-qubit observable on the complement."""

    single: np.ndarray
    pair: np.ndarray
    label: str = ""

    def __post_init__(self):
        single = np.asarray(self.single, dtype=complex)
        pair = np.asarray(self.pair, dtype=complex)
        if single.shape != (2, 2) or pair.shape != (4, 4):
            raise ValueError("observable needs a 2x2 single and a 4x4 pair operator")
        if hermitian_deviation(single) > 1e-12 or hermitian_deviation(pair) > 1e-12:
            raise ValueError(f"observable {self.label!r} is not Hermitian")
        object.__setattr__(self, "single", single)
        object.__setattr__(self, "pair", pair)


@dataclass(frozen=True, eq=False)
class ProductBasis:
    """Three single-qubit orthonormal bases; column ``i`` of each is outcome ``i``."""

    qubit_bases: tuple[np.ndarray, np.ndarray, np.ndarray]
    label: str = ""

    def __post_init__(self):
        bases = tuple(np.asarray(b, dtype=complex) for b in self.qubit_bases)
        if len(bases) != 3:
            raise ValueError("a product basis needs exactly three single-qubit bases")
        for b in bases:
            if b.shape != (2, 2) or np.max(np.abs(b.conj().T @ b - I2)) > 1e-12:
                raise ValueError(f"basis {self.label!r} is not orthonormal")
        object.__setattr__(self, "qubit_bases", bases)

    @property
    def unitary(self) -> np.ndarray:
        return tensor(*self.qubit_bases)


@dataclass(frozen=True)
class CorrelatorReport:
    per_cut: tuple[float | None, float | None, float | None]
    tripartite: float
    degenerate_cuts: tuple[Bipartition, ...] = ()

    def to_dict(self) -> dict:
        return {
            "per_cut": {c.label: v for c, v in zip(CUTS, self.per_cut)},
            "tripartite": self.tripartite,
            "degenerate_cuts": [c.label for c in self.degenerate_cuts],
        }


_PLUS = np.array([1, 1], dtype=complex) / math.sqrt(2.0)
_MINUS = np.array([1, -1], dtype=complex) / math.sqrt(2.0)
_PLUS_I = np.array([1, 1j], dtype=complex) / math.sqrt(2.0)
_MINUS_I = np.array([1, -1j], dtype=complex) / math.sqrt(2.0)

_SINGLE = {
    "X": SIGMA_X,
    "Y": SIGMA_Y,
    "Z": SIGMA_Z,
    "P0": np.diag([1, 0]).astype(complex),
    "P1": np.diag([0, 1]).astype(complex),
    "Pplus": np.outer(_PLUS, _PLUS.conj()),
}

_BASES = {
    "X": np.column_stack([_PLUS, _MINUS]),
    "Y": np.column_stack([_PLUS_I, _MINUS_I]),
    "Z": np.eye(2, dtype=complex),
}
_BASES.update(P0=_BASES["Z"], P1=_BASES["Z"], Pplus=_BASES["X"])

OBSERVABLE_LABELS = tuple(_SINGLE)
BASIS_LABELS = tuple(_BASES)


def named_observable(label: str) -> ObservableSpec:
    """``single`` is the named operator and ``pair`` its self-tensor."""
    try:
        s = _SINGLE[label]
    except KeyError:
        raise ValueError(
            f"unknown observable {label!r}; choose from {', '.join(OBSERVABLE_LABELS)}"
        ) from None
    return ObservableSpec(s.copy(), np.kron(s, s), label)


def named_basis(label: str) -> ProductBasis:
    """The eigenbasis of the named operator on every qubit.

    Projector labels map to the eigenbasis of the Pauli they commute with.
    """
    try:
        b = _BASES[label]
    except KeyError:
        raise ValueError(
            f"unknown basis {label!r}; choose from {', '.join(BASIS_LABELS)}"
        ) from None
    return ProductBasis((b, b, b), label)


def cut_operators(obs: ObservableSpec, cut: Bipartition) -> tuple[np.ndarray, np.ndarray]:
    """Full 8x8 operators for ``single`` on the lone qubit and ``pair`` on the rest."""
    cut = Bipartition(cut)
    a = [I2, I2, I2]
    a[cut - 1] = obs.single
    # pair acts on (j, k) in increasing order; build in (cut, j, k) order then undo
    b = np.kron(I2, obs.pair)
    inverse = list(np.argsort(cut.order))
    return tensor(*a), permute_qubits(b, inverse)


def _expect(op, rho) -> float:
    return float(np.real(np.einsum("ij,ji->", op, rho)))


def pcc_bipartite(rho, cut: Bipartition, obs: ObservableSpec) -> float | None:
    """|cov(A, B)| / (sigma_A sigma_B) across ``cut``; ``None`` if degenerate."""
    rho = check_density(rho)
    a, b = cut_operators(obs, cut)
    ea, eb = _expect(a, rho), _expect(b, rho)
    var_a = _expect(a @ a, rho) - ea * ea
    var_b = _expect(b @ b, rho) - eb * eb
    if var_a * var_b <= DEGENERATE_TOL**2 or var_a <= 0 or var_b <= 0:
        return None
    cov = _expect(a @ b, rho) - ea * eb
    return abs(cov) / math.sqrt(var_a * var_b)


def geometric_mean(values) -> float:
    vals = list(values)
    if any(v is None or v <= GEOMEAN_FLOOR for v in vals):
        return 0.0
    return math.exp(sum(math.log(v) for v in vals) / len(vals))


def pcc_tripartite(rho, obs: ObservableSpec) -> CorrelatorReport:
    per_cut = tuple(pcc_bipartite(rho, c, obs) for c in CUTS)
    degenerate = tuple(c for c, v in zip(CUTS, per_cut) if v is None)
    return CorrelatorReport(per_cut, geometric_mean(per_cut), degenerate)


def joint_distribution(rho, basis: ProductBasis) -> np.ndarray:
    """Outcome probabilities ``p[i, j, k]`` for a product-basis measurement."""
    rho = check_density(rho)
    u = basis.unitary
    p = np.real(np.einsum("ai,ab,bi->i", u.conj(), rho, u))
    if np.any(p < -PROB_TOL) or np.any(p > 1 + PROB_TOL):
        raise ValueError("outcome probabilities fall outside [0, 1]")
    return np.clip(p, 0.0, 1.0).reshape(2, 2, 2)


def cut_table(p3: np.ndarray, cut: Bipartition) -> np.ndarray:
    """Collapse a 2x2x2 outcome table to 2x4 (lone qubit x rest)."""
    return np.transpose(p3, Bipartition(cut).order).reshape(2, 4)


def mutual_information(joint) -> float:
    """Shannon mutual information (bits) of a 2-D joint distribution."""
    joint = np.asarray(joint, dtype=float)
    pa = joint.sum(axis=1, keepdims=True)
    pb = joint.sum(axis=0, keepdims=True)
    mask = joint > 0
    ratio = joint[mask] / (pa * pb)[mask]
    return max(0.0, float(np.sum(joint[mask] * np.log2(ratio))))


def mi_bipartite(rho, cut: Bipartition, basis: ProductBasis) -> float:
    return mutual_information(cut_table(joint_distribution(rho, basis), cut))


def mi_tripartite(rho, basis: ProductBasis) -> CorrelatorReport:
    p3 = joint_distribution(rho, basis)
    per_cut = tuple(mutual_information(cut_table(p3, c)) for c in CUTS)
    return CorrelatorReport(per_cut, geometric_mean(per_cut))


def mp_tripartite(rho, basis: ProductBasis) -> float:
    """Probability that all three qubits give the same outcome index."""
    p3 = joint_distribution(rho, basis)
    return float(p3[0, 0, 0] + p3[1, 1, 1])


def maccone_sum(rho, obs1: ObservableSpec, obs2: ObservableSpec) -> float:
    """Sum of the tripartite correlators for two (complementary) observables."""
    return pcc_tripartite(rho, obs1).tripartite + pcc_tripartite(rho, obs2).tripartite


def outcome_table(rho, cut: Bipartition, obs: ObservableSpec):
    """Eigenvalues of A and B and their joint outcome distribution across ``cut``.

    Returns ``(values_a, values_b, probs)`` with ``probs`` of shape (2, 4).
    """
    rho = check_density(rho)
    cut = Bipartition(cut)
    va, ua = np.linalg.eigh(obs.single)
    vb, ub = np.linalg.eigh(obs.pair)
    local = permute_qubits(rho, cut.order)
    u = np.kron(ua, ub)
    p = np.real(np.einsum("ai,ab,bi->i", u.conj(), local, u)).reshape(2, 4)
    if np.any(p < -PROB_TOL):
        raise ValueError("negative outcome probability")
    return va, vb, np.clip(p, 0.0, 1.0)


def pcc_from_table(values_a, values_b, probs) -> float | None:
    """|Pearson correlation| of two discrete variables with joint ``probs``."""
    probs = np.asarray(probs, dtype=float)
    total = probs.sum()
    if total <= 0:
        return None
    probs = probs / total
    pa, pb = probs.sum(axis=1), probs.sum(axis=0)
    ea, eb = pa @ values_a, pb @ values_b
    var_a = pa @ (values_a - ea) ** 2
    var_b = pb @ (values_b - eb) ** 2
    if var_a * var_b <= DEGENERATE_TOL**2:
        return None
    cov = (values_a - ea) @ probs @ (values_b - eb)
    return abs(float(cov)) / math.sqrt(var_a * var_b)
