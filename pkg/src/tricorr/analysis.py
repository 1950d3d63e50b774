"""Parameter sweeps and the studies built on them.

Everything here is deterministic for a fixed grid (and seed, for sampling).
"""
from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np
from scipy.stats import spearmanr

from . import formulas
from .correlators import (
    CUTS,
    Bipartition,
    CorrelatorReport,
    ObservableSpec,
    ProductBasis,
    cut_table,
    geometric_mean,
    joint_distribution,
    mi_tripartite,
    mp_tripartite,
    mutual_information,
    named_basis,
    named_observable,
    outcome_table,
    pcc_bipartite,
    pcc_from_table,
    pcc_tripartite,
)
from .measures import concurrence_fill, gmc, global_measure, triangle_edges
from .states import get_family, make_x_family, mix_ghz_w, to_density

GRID_POINTS_PER_UNIT = 400
MONOTONE_TIE_TOL = 1e-10
STRICT_GAP = 1e-6
BOOTSTRAP_RESAMPLES = 200
MIN_RELIABLE_SHOTS = 30


def _pcc(label):
    obs = named_observable(label)
    return lambda rho: pcc_tripartite(rho, obs).tripartite


def _mi(label):
    basis = named_basis(label)
    return lambda rho: mi_tripartite(rho, basis).tripartite


def _mp(label):
    basis = named_basis(label)
    return lambda rho: mp_tripartite(rho, basis)


def _edge(i):
    return lambda rho: triangle_edges(rho)[i]


# quantity-id -> (function of rho, meaningful only for pure states)
QUANTITIES: dict[str, tuple[Callable[[np.ndarray], float], bool]] = {
    "F123": (concurrence_fill, True),
    "C_GMC": (gmc, True),
    "G123": (global_measure, True),
    "D2_1": (_edge(0), True),
    "D2_2": (_edge(1), True),
    "D2_3": (_edge(2), True),
    "C123_X": (_pcc("X"), False),
    "C123_Y": (_pcc("Y"), False),
    "C123_Z": (_pcc("Z"), False),
    "C123_plus": (_pcc("Pplus"), False),
    "C123_0": (_pcc("P0"), False),
    "C123_1": (_pcc("P1"), False),
    "I123_X": (_mi("X"), False),
    "I123_Y": (_mi("Y"), False),
    "I123_Z": (_mi("Z"), False),
    "P_X": (_mp("X"), False),
    "P_Y": (_mp("Y"), False),
    "P_Z": (_mp("Z"), False),
}


@dataclass
class ScanRecord:
    param_name: str
    param: float
    quantities: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"param_name": self.param_name, "param": self.param, "quantities": dict(self.quantities)}

    @classmethod
    def from_dict(cls, d: dict) -> "ScanRecord":
        return cls(d["param_name"], float(d["param"]), {k: float(v) for k, v in d["quantities"].items()})


def default_grid(family_id: str, lo: float | None = None, hi: float | None = None,
                 per_unit: int = GRID_POINTS_PER_UNIT) -> np.ndarray:
    fam = get_family(family_id)
    lo = fam.domain[0] if lo is None else lo
    hi = fam.domain[1] if hi is None else hi
    n = max(2, int(math.ceil(per_unit * (hi - lo))) + 1)
    return np.linspace(lo, hi, n)


DOMAIN_SLACK = 1e-9


def clamp_to_domain(family_id: str, x: float) -> float:
    """``x`` snapped into the family domain if it overshoots by rounding only."""
    fam = get_family(family_id)
    lo, hi = fam.domain
    if not lo - DOMAIN_SLACK <= x <= hi + DOMAIN_SLACK:
        raise ValueError(f"{fam.param}={x} outside the domain [{lo}, {hi}] of {family_id}")
    return min(max(float(x), lo), hi)


def scan_family(family_id: str, grid: Iterable[float], quantities: Iterable[str]) -> list[ScanRecord]:
    fam = get_family(family_id)
    quantities = list(quantities)
    for q in quantities:
        if q not in QUANTITIES:
            raise ValueError(f"unknown quantity {q!r}; choose from {', '.join(QUANTITIES)}")
        if QUANTITIES[q][1] and not fam.pure:
            raise ValueError(
                f"{q} is defined here for pure states only; family {family_id!r} is mixed"
            )
    records = []
    for x in grid:
        x = float(x)
        rho = fam.density(clamp_to_domain(family_id, x))
        values = {q: float(QUANTITIES[q][0](rho)) for q in quantities}
        records.append(ScanRecord(fam.param, x, values))
    return records


def grid_argmax(records: list[ScanRecord], quantity: str) -> float:
    values = [r.quantities[quantity] for r in records]
    return records[int(np.argmax(values))].param


@dataclass(frozen=True)
class MonotonicityVerdict:
    pair: tuple[str, str]
    rank_correlation: float
    monotone: bool
    violations: list[tuple[float, float]]
    increasing: bool = True
    max_violation: float = 0.0


def check_monotonic(records: list[ScanRecord], x: str, y: str,
                    tie_tol: float = MONOTONE_TIE_TOL) -> MonotonicityVerdict:
    """Is ``y`` a monotone function of ``x`` over the scanned records?

    Records are sorted by ``x``; every adjacent pair where ``y`` moves against
    the overall direction by more than ``tie_tol`` is a violation, as is a pair
    with tied ``x`` but distinct ``y``. Violations are reported by the scan
    parameters of the two offending records.
    """
    if len(records) < 3:
        raise ValueError("need at least three records")
    xs = np.array([r.quantities[x] for r in records])
    ys = np.array([r.quantities[y] for r in records])
    if np.ptp(xs) <= tie_tol:
        raise ValueError(f"{x} is constant over the records; no ordering to check")
    rho = float(spearmanr(xs, ys)[0]) if np.ptp(ys) > 0 else 0.0
    order = np.lexsort((ys, xs))
    increasing = rho >= 0
    sign = 1.0 if increasing else -1.0
    if not increasing:
        # among x-ties sort y descending so a decreasing relation is not penalized
        order = np.lexsort((-ys, xs))
    violations, worst = [], 0.0
    for i, j in zip(order[:-1], order[1:]):
        dx, dy = xs[j] - xs[i], ys[j] - ys[i]
        if abs(dx) <= tie_tol:
            bad = abs(dy) > tie_tol
            size = abs(dy)
        else:
            bad = sign * dy < -tie_tol
            size = -sign * dy
        if bad:
            violations.append((records[i].param, records[j].param))
            worst = max(worst, size)
    return MonotonicityVerdict((x, y), rho, not violations, violations, increasing, worst)


@dataclass(frozen=True)
class InequivalencePair:
    a1: float
    a2: float
    gmc1: float
    gmc2: float
    cf1: float
    cf2: float
    kind: str  # "opposite" or "tie"


def _order(d: float, tie: float) -> int:
    if abs(d) <= tie:
        return 0
    return 1 if d > 0 else -1


def x_family_measures(a: float) -> tuple[float, float]:
    """(GMC, CF) of the x-family state at parameter a."""
    rho = to_density(make_x_family(a))
    edges = triangle_edges(rho)
    return min(edges), concurrence_fill(rho)


def find_inequivalence_pairs(grid: Iterable[float], decimals: int | None = None) -> list[InequivalencePair]:
    """Pairs of x-family states that GMC and CF rank differently.

    Values are compared at full precision, or after rounding to ``decimals``
    places when given. A pair counts when the two measures order it in
    opposite strict directions, or when one measure ties while the other
    orders it strictly. Strict means a gap above 1e-6.
    """
    grid = [float(a) for a in grid]
    vals = [x_family_measures(a) for a in grid]
    tie = MONOTONE_TIE_TOL
    if decimals is not None:
        vals = [(round(g, decimals), round(f, decimals)) for g, f in vals]
        tie = 0.5 * 10.0**-decimals
    out = []
    for i in range(len(grid)):
        for j in range(i + 1, len(grid)):
            (g1, f1), (g2, f2) = vals[i], vals[j]
            og, of = _order(g1 - g2, tie), _order(f1 - f2, tie)
            strict_g = abs(g1 - g2) > STRICT_GAP
            strict_f = abs(f1 - f2) > STRICT_GAP
            if og * of == -1 and strict_g and strict_f:
                kind = "opposite"
            elif (og == 0 and of != 0 and strict_f) or (of == 0 and og != 0 and strict_g):
                kind = "tie"
            else:
                continue
            out.append(InequivalencePair(grid[i], grid[j], g1, g2, f1, f2, kind))
    return out


MIXTURE_F123_NOTE = (
    "F123_quoted is a closed form obtained elsewhere by convex-roof minimization; "
    "it is not computed by this package"
)


def mixed_state_study(p_grid: Iterable[float]) -> list[ScanRecord]:
    """Numeric and closed-form correlators for p|GHZ><GHZ| + (1-p)|W><W|."""
    obs0, obsp = named_observable("P0"), named_observable("Pplus")
    zb = named_basis("Z")
    out = []
    for p in p_grid:
        p = float(p)
        rho = mix_ghz_w(p)
        q = {
            "C123_0": pcc_tripartite(rho, obs0).tripartite,
            "C123_0_closed": abs(formulas.mix_pcc_zero_signed(p)),
            "C123_0_signed_closed": formulas.mix_pcc_zero_signed(p),
            "C123_plus": pcc_tripartite(rho, obsp).tripartite,
            "C123_plus_closed": formulas.mix_pcc_plus(p),
            "I123_Z": mi_tripartite(rho, zb).tripartite,
            "I123_Z_closed": formulas.mix_mi_z(p),
            "F123_quoted": formulas.mix_cf_quoted(p),
        }
        out.append(ScanRecord("p", p, q))
    return out


def pcc_tripartite_continuous(family_id: str, value: float, obs: ObservableSpec,
                              step: float = 1e-3, points: int = 4) -> CorrelatorReport:
    """Tripartite correlator with degenerate cuts replaced by their limit
    along the family parameter.

    A degenerate cut has a 0/0 correlator at ``value``. Its one-sided limit is
    estimated by a polynomial through ``points`` nearby interior values.
    Non-degenerate cuts are evaluated directly.
    """
    fam = get_family(family_id)
    value = clamp_to_domain(family_id, value)
    report = pcc_tripartite(fam.density(value), obs)
    if not report.degenerate_cuts:
        return report
    lo, hi = fam.domain
    direction = 1.0 if value + points * step <= hi else -1.0
    if value + direction * points * step < lo:
        raise ValueError("family domain too narrow for the limit estimate")
    offsets = np.arange(1, points + 1) * step
    per_cut = list(report.per_cut)
    for cut in report.degenerate_cuts:
        ys = []
        for h in offsets:
            v = pcc_bipartite(fam.density(value + direction * h), cut, obs)
            if v is None:
                raise ArithmeticError(f"cut {cut.label} stays degenerate near {fam.param}={value}")
            ys.append(v)
        coef = np.polynomial.polynomial.polyfit(offsets, ys, points - 1)
        per_cut[cut - 1] = float(np.clip(coef[0], 0.0, 1.0))
    return CorrelatorReport(tuple(per_cut), geometric_mean(per_cut), report.degenerate_cuts)


def maccone_family(family_id: str, value: float, obs1: ObservableSpec, obs2: ObservableSpec) -> float:
    """Correlator sum on a family member, continuous across degenerate points."""
    return (
        pcc_tripartite_continuous(family_id, value, obs1).tripartite
        + pcc_tripartite_continuous(family_id, value, obs2).tripartite
    )


@dataclass(frozen=True)
class SampleEstimate:
    kind: str
    label: str
    value: float
    stderr: float
    per_cut: tuple
    shots: int
    seed: int
    degenerate_cuts: tuple[Bipartition, ...] = ()

    @property
    def reliable(self) -> bool:
        return self.shots >= MIN_RELIABLE_SHOTS and not self.degenerate_cuts and math.isfinite(self.stderr)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "label": self.label,
            "value": self.value,
            "stderr": self.stderr,
            "per_cut": list(self.per_cut),
            "shots": self.shots,
            "seed": self.seed,
            "degenerate_cuts": [c.label for c in self.degenerate_cuts],
            "reliable": self.reliable,
        }


def _boot_stderr(replicates) -> float:
    reps = np.asarray(replicates, dtype=float)
    return float(np.std(reps, ddof=1)) if reps.size > 1 else math.inf


def sample_correlators(rho, kind: str, spec: ObservableSpec | ProductBasis, shots: int, seed: int,
                       resamples: int = BOOTSTRAP_RESAMPLES) -> SampleEstimate:
    """Finite-shot plug-in estimate of a tripartite PCC, MI or MP.

    Each cut is a separate measurement setting with its own ``shots``
    (MP uses a single three-qubit setting). Outcomes are multinomial draws
    from the exact distribution, and the standard error comes from a
    multinomial bootstrap. Every draw has its own stream spawned from
    ``seed``.
    """
    if shots < 1:
        raise ValueError("shots must be at least 1")
    if kind not in ("pcc", "mi", "mp"):
        raise ValueError(f"kind must be pcc, mi or mp, got {kind!r}")
    streams = [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(6)]

    if kind == "mp":
        p = joint_distribution(rho, spec).ravel()
        counts = streams[0].multinomial(shots, p / p.sum())
        est = (counts[0] + counts[7]) / shots
        boot = streams[3].multinomial(shots, counts / shots, size=resamples)
        reps = (boot[:, 0] + boot[:, 7]) / shots
        return SampleEstimate(kind, spec.label, float(est), _boot_stderr(reps), (), shots, seed)

    if kind == "pcc":
        tables = [outcome_table(rho, c, spec) for c in CUTS]

        def stat(c, counts):
            va, vb, _ = tables[c]
            return pcc_from_table(va, vb, counts.reshape(2, 4))

        probs = [t[2].ravel() for t in tables]
    else:
        p3 = joint_distribution(rho, spec)
        probs = [cut_table(p3, c).ravel() for c in CUTS]

        def stat(c, counts):
            return mutual_information(counts.reshape(2, 4) / counts.sum())

    per_cut, boot_cuts = [], []
    for i in range(3):
        counts = streams[i].multinomial(shots, probs[i] / probs[i].sum())
        per_cut.append(stat(i, counts))
        boot = streams[3 + i].multinomial(shots, counts / shots, size=resamples)
        boot_cuts.append([stat(i, row) for row in boot])
    reps = [geometric_mean(vals) for vals in zip(*boot_cuts)]
    degenerate = tuple(c for c, v in zip(CUTS, per_cut) if v is None)
    return SampleEstimate(
        kind, spec.label, geometric_mean(per_cut), _boot_stderr(reps), tuple(per_cut), shots, seed, degenerate
    )


def _fmt(v: float) -> str:
    return format(v, ".12g")


def table_text(records: list[ScanRecord], fmt: str = "csv", columns: list[str] | None = None) -> str:
    if fmt == "json":
        return json.dumps([r.to_dict() for r in records], indent=2) + "\n"
    if fmt != "csv":
        raise ValueError(f"format must be csv or json, got {fmt!r}")
    if columns is None:
        columns = list(records[0].quantities) if records else []
    for r in records:
        if list(r.quantities) != columns:
            raise ValueError("records have inconsistent quantity columns")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["param", *columns])
    for r in records:
        w.writerow([_fmt(r.param), *(_fmt(r.quantities[c]) for c in columns)])
    return buf.getvalue()


def emit_table(records: list[ScanRecord], fmt: str = "csv", destination="-", columns: list[str] | None = None) -> None:
    """Write records as CSV (``param,<ids>``, 12 significant digits) or JSON.

    ``destination`` is a path, an open text stream, or ``"-"`` for stdout.
    """
    text = table_text(records, fmt, columns)
    if destination == "-":
        sys.stdout.write(text)
    elif hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w", newline="") as fh:
            fh.write(text)


def records_from_json(text: str) -> list[ScanRecord]:
    return [ScanRecord.from_dict(d) for d in json.loads(text)]
