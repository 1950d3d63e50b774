import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tricorr.core import tensor, validate_density
from tricorr.correlators import named_observable, pcc_tripartite
from tricorr.dynamics import (
    damp_state,
    esd_time,
    gmc_damped_closed,
    gmc_from_pcc,
    kraus_operators,
    pcc_damped_closed,
    survival,
    x_state_gmc,
)
from tricorr.states import GHZ, make_ghz_y, to_density

from conftest import random_density, random_pure

ESD_HALF = -math.log(1 - (1 / 3) ** (2 / 3))


def _single_qubit_channel(r, t):
    """Amplitude damping written directly on a 2x2 density matrix."""
    decay = math.exp(-t)
    return np.array([
        [r[0, 0] + (1 - decay) * r[1, 1], math.sqrt(decay) * r[0, 1]],
        [math.sqrt(decay) * r[1, 0], decay * r[1, 1]],
    ])


class TestChannel:
    def test_kraus_completeness(self):
        for t in (0.0, 0.3, 2.0):
            k0, k1 = kraus_operators(t)
            assert np.allclose(k0.conj().T @ k0 + k1.conj().T @ k1, np.eye(2), atol=1e-14)

    def test_survival_identity(self):
        for t in np.linspace(0, 10, 50):
            p, q = survival(t)
            assert abs(p * p + q * q - 1) <= 1e-12

    def test_identity_at_zero(self, rng):
        rho = random_density(rng)
        assert np.allclose(damp_state(rho, 0.0), rho, atol=1e-14)

    def test_full_decay(self, rng):
        out = damp_state(random_pure(rng), 60.0)
        target = np.zeros((8, 8))
        target[0, 0] = 1
        assert np.allclose(out, target, atol=1e-12)

    def test_product_input_matches_single_qubit_map(self, rng):
        vs = [random_pure(rng, 2) for _ in range(3)]
        t = 0.7
        locals_ = [_single_qubit_channel(np.outer(v, v.conj()), t) for v in vs]
        assert np.allclose(damp_state(tensor(*vs), t), tensor(*locals_), atol=1e-13)

    def test_negative_time(self):
        with pytest.raises(ValueError):
            damp_state(GHZ, -0.1)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.floats(0, 10))
    def test_output_valid(self, seed, t):
        rho = random_density(np.random.default_rng(seed))
        assert validate_density(damp_state(rho, t)).passed

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.floats(0, 3), st.floats(0, 3))
    def test_markov_composition(self, seed, t1, t2):
        psi = random_pure(np.random.default_rng(seed))
        two_step = damp_state(damp_state(psi, t1), t2)
        assert np.max(np.abs(two_step - damp_state(psi, t1 + t2))) <= 1e-10


class TestClosedForms:
    @pytest.mark.parametrize("y", [0.1, 0.5, 0.9])
    def test_initial_gmc(self, y):
        assert gmc_damped_closed(y, 0.0) == pytest.approx(2 * math.sqrt(y * (1 - y)))

    def test_separable_zero(self):
        for t in (0.0, 0.5, 3.0):
            assert gmc_damped_closed(0.0, t) == 0.0
            assert pcc_damped_closed(0.0, t) == 0.0
            assert pcc_damped_closed(1.0, t) == 0.0

    def test_pcc_initial(self):
        assert pcc_damped_closed(0.5, 0.0) == pytest.approx(1 / math.sqrt(3))

    def test_pcc_strictly_decreasing(self):
        ts = np.linspace(0, 5, 100)
        for y in (0.1, 0.5, 0.8):
            vals = [pcc_damped_closed(y, t) for t in ts]
            assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_example_point(self):
        # y=0.5, t=0.2: 2 p^3 (1/2 - 3/2 q^3)
        p3 = math.exp(-0.3)
        q3 = (1 - math.exp(-0.2)) ** 1.5
        assert gmc_damped_closed(0.5, 0.2) == pytest.approx(p3 * (1 - 3 * q3), abs=1e-12)
        assert gmc_damped_closed(0.5, 0.2) == pytest.approx(0.5693, abs=1e-4)


class TestESD:
    def test_half(self):
        assert abs(esd_time(0.5) - ESD_HALF) <= 1e-10
        assert round(ESD_HALF, 3) == 0.655

    def test_no_sudden_death(self):
        assert esd_time(0.05) is None

    def test_boundary_has_no_sudden_death(self):
        # sqrt(1/y - 1) = 3 exactly: the root sits at t = infinity
        assert esd_time(0.1) is None

    @pytest.mark.parametrize("y", [0.15, 0.3, 0.5, 0.7, 0.99])
    def test_gmc_vanishes_at_root(self, y):
        t = esd_time(y)
        assert t is not None
        assert gmc_damped_closed(y, t) <= 1e-10
        assert gmc_damped_closed(y, 0.99 * t) > 0

    @pytest.mark.parametrize("y", [0.0, 1.0, -0.1])
    def test_domain(self, y):
        with pytest.raises(ValueError):
            esd_time(y)


class TestChannelAgainstClosedForms:
    def test_pcc_grid(self):
        obs = named_observable("Pplus")
        for y in np.linspace(0.0, 1.0, 20):
            psi = make_ghz_y(y)
            for t in np.linspace(0.0, 3.0, 20):
                num = pcc_tripartite(damp_state(psi, t), obs).tripartite
                assert abs(num - pcc_damped_closed(y, t)) <= 1e-9

    def test_x_state_gmc_matches_before_esd(self):
        for y in (0.2, 0.5, 0.8):
            t_end = esd_time(y)
            for t in np.linspace(0.0, 0.999 * t_end, 15):
                rho = damp_state(make_ghz_y(y), t)
                assert abs(x_state_gmc(rho) - gmc_damped_closed(y, t)) <= 1e-9

    def test_x_state_gmc_of_pure_ghz(self):
        a, b = 0.6, 0.8
        assert x_state_gmc(to_density(np.array([a, 0, 0, 0, 0, 0, 0, b]))) == pytest.approx(2 * a * b)

    def test_x_state_rejects_other_shapes(self, rng):
        with pytest.raises(ValueError):
            x_state_gmc(random_density(rng))


class TestInversion:
    @pytest.mark.parametrize("t", [0.0, 0.3, ESD_HALF, 1.0])
    def test_round_trip(self, t):
        y = 0.5
        assert abs(gmc_from_pcc(pcc_damped_closed(y, t), y) - gmc_damped_closed(y, t)) <= 1e-10

    def test_round_trip_other_y(self):
        for y in np.linspace(0.05, 0.95, 19):
            for t in np.linspace(0, 3, 13):
                assert abs(gmc_from_pcc(pcc_damped_closed(y, t), y) - gmc_damped_closed(y, t)) <= 1e-10

    def test_zero(self):
        assert gmc_from_pcc(0.0, 0.5) == 0.0

    def test_initial(self):
        assert gmc_from_pcc(1 / math.sqrt(3), 0.5) == pytest.approx(1.0)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            gmc_from_pcc(0.7, 0.5)
        with pytest.raises(ValueError):
            gmc_from_pcc(-0.1, 0.5)
