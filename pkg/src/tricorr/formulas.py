"""Analytic expressions for the GHZ, W and GHZ/W-mixture families.

These never touch a density matrix; they serve as the independent check on
the numeric paths in :mod:`tricorr.measures` and :mod:`tricorr.correlators`.
Mutual informations use log base 2 with ``0 log 0 = 0``.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.special import xlogy

SQRT2 = math.sqrt(2.0)
LN2 = math.log(2.0)


def _xlog2(x, y):
    """x * log2(y), zero whenever x is zero."""
    return xlogy(x, y) / LN2


def _geomean(*vals):
    if min(vals) <= 1e-12:
        return 0.0
    return float(np.prod(vals)) ** (1.0 / len(vals))


# generalized GHZ: a|000> + b|111>

def ghz_edge(a, b):
    return 4.0 * a * a * b * b


ghz_cf = ghz_edge
ghz_gmc = ghz_edge
ghz_global = ghz_edge
ghz_tangle = ghz_edge


def ghz_pcc_x(a, b):
    return 2.0 * a * b


def ghz_mi_x(a, b):
    c = 2.0 * a * b
    return 0.5 * (_xlog2(1.0 + c, 1.0 + c) + _xlog2(1.0 - c, 1.0 - c))


def mi_from_concurrence_sq(f):
    """GHZ-family MI_X written through CF (or GMC): h(sqrt(f))."""
    c = math.sqrt(f)
    return 0.5 * (_xlog2(1.0 + c, 1.0 + c) + _xlog2(1.0 - c, 1.0 - c))


def ghz_mp_z(a, b):
    return 1.0


def ghz_maccone(a, b):
    return 1.0 + 2.0 * abs(a * b)


# generalized W: cos t|100> + sin t/sqrt2 (|010> + |001>)

def w_edges(theta):
    """(D^2_1(23), D^2_2(13), D^2_3(12))."""
    s2 = math.sin(theta) ** 2
    side = s2 * (1.0 + math.cos(theta) ** 2)
    return math.sin(2 * theta) ** 2, side, side


def w_cf(theta):
    c2 = math.cos(theta) ** 2
    s2 = math.sin(theta) ** 2
    inner = (4.0 / 3.0) * (1.0 - c2 * (1.0 + s2)) * (1.0 + c2 * (3.0 * s2 - 1.0))
    return math.sin(2 * theta) * max(inner, 0.0) ** 0.25


def w_gmc(theta):
    s = math.sin(theta)
    if s <= math.sqrt(2.0 / 3.0):
        return s * s * (1.0 + math.cos(theta) ** 2)
    return math.sin(2 * theta) ** 2


def w_global(theta):
    s2 = math.sin(theta) ** 2
    return (2.0 / 3.0) * s2 * (1.0 + 3.0 * math.cos(theta) ** 2)


def w_tangle(theta):
    return 0.0


def w_pcc_plus_factors(theta):
    """Per-cut |+><+| correlators: (cut 1-(23), cuts 2-(13) = 3-(12))."""
    s2t = math.sin(2 * theta)
    s2 = math.sin(theta) ** 2
    c2 = math.cos(theta) ** 2
    first = SQRT2 * s2t / math.sqrt((1.0 + s2) * (2.0 + c2))
    other = (s2t + SQRT2 * s2) / math.sqrt(6.0 + 2.0 * SQRT2 * s2t - s2t * s2t)
    return first, other


def w_pcc_plus(theta):
    first, other = w_pcc_plus_factors(theta)
    return _geomean(first, other, other)


def w_mi_x_cuts(theta):
    """Per-cut X-basis MI: (cut 1-(23), cuts 2-(13) = 3-(12)).

    The weight of the last term of the second cut is cos^2(t)/4: direct
    enumeration of the 2x4 outcome table gives probabilities c^2/8 there.
    """
    c, s = math.cos(theta), math.sin(theta)
    m2 = (c + SQRT2 * s) ** 2
    n2 = (c - SQRT2 * s) ** 2
    s2t = math.sin(2 * theta)
    up, dn = 2.0 + SQRT2 * s2t, 2.0 - SQRT2 * s2t
    first = (_xlog2(m2, m2 / (1.0 + s * s)) + _xlog2(n2, n2 / (1.0 + s * s))) / 4.0
    other = (
        _xlog2(m2, 2.0 * m2 / up)
        + _xlog2(n2, 2.0 * n2 / dn)
        + _xlog2(c * c, 4.0 * c**4 / (up * dn))
    ) / 4.0
    return first, other


def w_mi_x(theta):
    first, other = w_mi_x_cuts(theta)
    return _geomean(first, other, other)


w_mi_y = w_mi_x


def w_mi_z_cuts(theta):
    """Per-cut Z-basis MI: (cut 1-(23), cuts 2-(13) = 3-(12))."""
    c2 = math.cos(theta) ** 2
    s2 = math.sin(theta) ** 2
    first = -_xlog2(c2, c2) - _xlog2(s2, s2)
    lg = math.log2(4.0 / (3.0 + math.cos(2 * theta)))
    other = c2 * lg + (s2 / 2.0) * lg - _xlog2(s2 / 2.0, s2 / 2.0)
    return first, other


def w_mi_z(theta):
    first, other = w_mi_z_cuts(theta)
    return _geomean(first, other, other)


def w_mp_x(theta):
    return (3.0 - math.cos(2 * theta) + 2.0 * SQRT2 * math.sin(2 * theta)) / 8.0


def w_maccone(theta):
    """|0><0| plus |+><+| correlator sum; the |0><0| term is 1 on the family."""
    return 1.0 + w_pcc_plus(theta)


# p |GHZ><GHZ| + (1-p) |W><W|

def mix_pcc_zero_signed(p):
    """Signed |0><0| correlator; its modulus is the tripartite PCC."""
    return (p * p + 16.0 * p - 8.0) / ((2.0 + p) * (4.0 - p))


def mix_pcc_plus(p):
    return (4.0 - p) / math.sqrt((5.0 - 2.0 * p) * (7.0 + 2.0 * p))


def mix_mi_z(p):
    q = 1.0 - p
    return (
        _xlog2(2.0 * q / 3.0, 6.0 / (4.0 - p))
        + _xlog2(q / 3.0, 12.0 * q / (2.0 + p) ** 2)
        + _xlog2(p / 2.0, 6.0 / (2.0 + p))
        + _xlog2(p / 2.0, 18.0 * p / (8.0 + 2.0 * p - p * p))
    )


def mix_cf_quoted(p):
    """Convex-roof concurrence fill of the mixture, quoted from the literature."""
    return (5.0 * p * p - 4.0 * p + 8.0) / 9.0
