"""Concurrence triangle, Concurrence Fill, GMC and two non-genuine measures."""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from . import formulas
from .core import check_density, is_pure, partial_trace, purity

RADICAND_TOL = 1e-12
TIE_TOL = 1e-12

_DISCARD = ({2, 3}, {1, 3}, {1, 2})


class TriangleEdges(NamedTuple):
    """Squared one-versus-rest edges D^2_{i(jk)}."""

    d1_23: float
    d2_13: float
    d3_12: float


@dataclass(frozen=True)
class MeasureReport:
    edges: TriangleEdges
    concurrence_fill: float
    gmc: float
    global_measure: float | None = None
    tangle: float | None = None
    pure: bool = True

    @property
    def edge_label(self) -> str:
        if self.pure:
            return "squared concurrence"
        return "linear-entropy edges, not concurrence"

    @property
    def gmc_ties(self) -> list[int]:
        """1-based cuts whose edge ties the minimum within 1e-12."""
        return [i + 1 for i, e in enumerate(self.edges) if e - self.gmc <= TIE_TOL]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["edges"] = self.edges._asdict()
        d["edge_label"] = self.edge_label
        d["gmc_ties"] = self.gmc_ties
        return d


def single_qubit_purities(rho) -> tuple[float, float, float]:
    rho = check_density(rho)
    return tuple(purity(partial_trace(rho, d)) for d in _DISCARD)


def _edge(r) -> float:
    # 2(1 - Tr r^2) = 4 det r for unit trace; the determinant form keeps
    # full relative precision when the reduction is nearly pure
    return 4.0 * float(np.real(r[0, 0] * r[1, 1]) - abs(r[0, 1]) ** 2)


def triangle_edges(rho) -> TriangleEdges:
    """Squared edges 2(1 - Tr rho_i^2) for each single-qubit reduction."""
    rho = check_density(rho)
    return TriangleEdges(*(_edge(partial_trace(rho, d)) for d in _DISCARD))


def _fill_from_edges(edges) -> float:
    a, b, c = edges
    q = 0.5 * (a + b + c)
    radicand = (16.0 / 3.0) * q * (0.5 * (b + c - a)) * (0.5 * (a + c - b)) * (0.5 * (a + b - c))
    if radicand < -RADICAND_TOL:
        raise ArithmeticError(f"negative concurrence-triangle radicand {radicand!r}")
    return max(radicand, 0.0) ** 0.25


def concurrence_fill(rho) -> float:
    """Fourth root of (16/3) times Heron's product on the squared edges."""
    return _fill_from_edges(triangle_edges(rho))


def gmc(rho) -> float:
    """Genuine multipartite concurrence: the smallest squared edge."""
    return min(triangle_edges(rho))


def global_measure(rho) -> float:
    """2 (1 - mean single-qubit purity); nonzero on some biseparable states."""
    return sum(triangle_edges(rho)) / 3.0


def tangle_closed(family_id: str, **params) -> float:
    """Three-tangle for the families with a known closed form only."""
    if family_id == "generalized-ghz":
        a = params["a"]
        b = params.get("b", math.sqrt(max(0.0, 1.0 - a * a)))
        return formulas.ghz_tangle(a, b)
    if family_id == "generalized-w":
        return formulas.w_tangle(params["theta"])
    raise ValueError(f"no closed-form tangle for family {family_id!r}")


def closed_form_measures(family_id: str, **params) -> MeasureReport:
    """Analytic edges, CF, GMC, global measure and tangle for GHZ or W."""
    if family_id == "generalized-ghz":
        a = params["a"]
        b = params.get("b", math.sqrt(max(0.0, 1.0 - a * a)))
        e = formulas.ghz_edge(a, b)
        return MeasureReport(
            TriangleEdges(e, e, e),
            formulas.ghz_cf(a, b),
            formulas.ghz_gmc(a, b),
            formulas.ghz_global(a, b),
            formulas.ghz_tangle(a, b),
        )
    if family_id == "generalized-w":
        t = params["theta"]
        return MeasureReport(
            TriangleEdges(*formulas.w_edges(t)),
            formulas.w_cf(t),
            formulas.w_gmc(t),
            formulas.w_global(t),
            formulas.w_tangle(t),
        )
    raise ValueError(f"no closed-form measures for family {family_id!r}")


def measure_report(rho, tangle: float | None = None) -> MeasureReport:
    rho = check_density(rho)
    edges = triangle_edges(rho)
    return MeasureReport(
        edges=edges,
        concurrence_fill=_fill_from_edges(edges),
        gmc=min(edges),
        global_measure=sum(edges) / 3.0,
        tangle=tangle,
        pure=is_pure(rho),
    )

