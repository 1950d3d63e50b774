import itertools
import math

import numpy as np
import pytest

from tricorr import formulas
from tricorr.core import permute_qubits
from tricorr.measures import (
    _fill_from_edges,
    closed_form_measures,
    concurrence_fill,
    gmc,
    global_measure,
    measure_report,
    single_qubit_purities,
    tangle_closed,
    triangle_edges,
)
from tricorr.states import make_ghz, make_w, mix_ghz_w, psi1, psi2, to_density

from conftest import random_pure

A_GRID = np.linspace(0.0, 1.0, 200)
THETA_GRID = np.linspace(0.0, math.pi / 2, 200)


def _ghz(a):
    return to_density(make_ghz(a, math.sqrt(max(0.0, 1 - a * a))))


def _schmidt_edges(psi):
    """Squared cut concurrences 4 s1^2 s2^2 from the SVD of each 2x4 reshaping."""
    t = psi.reshape(2, 2, 2)
    out = []
    for lone in range(3):
        rest = [q for q in range(3) if q != lone]
        s = np.linalg.svd(np.transpose(t, [lone, *rest]).reshape(2, 4), compute_uv=False)
        out.append(4 * s[0] ** 2 * s[1] ** 2)
    return out


def _heron_area(x, y, z):
    """Area of a triangle with sides x, y, z, via the side-length form."""
    return 0.25 * math.sqrt(max(0.0, (x + y + z) * (-x + y + z) * (x - y + z) * (x + y - z)))


class TestEdges:
    def test_schmidt_oracle(self, rng):
        for _ in range(50):
            psi = random_pure(rng)
            assert np.allclose(triangle_edges(to_density(psi)), _schmidt_edges(psi), atol=1e-12)

    def test_ghz_all_equal(self):
        a, b = 0.6, 0.8
        assert np.allclose(triangle_edges(to_density(make_ghz(a, b))), [4 * a * a * b * b] * 3)

    @pytest.mark.parametrize("theta", [0.2, 0.7, 1.3])
    def test_w_edges(self, theta):
        assert np.allclose(triangle_edges(to_density(make_w(theta))), formulas.w_edges(theta), atol=1e-12)

    def test_product_state(self):
        assert triangle_edges(to_density(np.eye(8)[0])) == (0.0, 0.0, 0.0)

    def test_triangle_inequality_random(self, rng):
        for _ in range(1000):
            e = triangle_edges(to_density(random_pure(rng)))
            assert all(-1e-10 <= x <= 1 + 1e-10 for x in e)
            for i in range(3):
                assert e[i] <= e[(i + 1) % 3] + e[(i + 2) % 3] + 1e-10


class TestConcurrenceFill:
    def test_matches_geometric_area(self, rng):
        # CF^4 = (16/3) * area^2 of the triangle with the squared edges as sides
        for _ in range(50):
            e = triangle_edges(to_density(random_pure(rng)))
            area = _heron_area(*e)
            assert _fill_from_edges(e) == pytest.approx((16 / 3 * area**2) ** 0.25, abs=1e-9)

    def test_equilateral_unit(self):
        assert _fill_from_edges((1.0, 1.0, 1.0)) == pytest.approx(1.0)

    def test_negative_radicand_raises(self):
        with pytest.raises(ArithmeticError):
            _fill_from_edges((1.0, 0.1, 0.1))

    def test_tiny_negative_radicand_clamped(self):
        assert _fill_from_edges((0.5, 0.25, 0.25 - 1e-14)) == pytest.approx(0.0, abs=1e-3)

    def test_symmetric_ghz(self):
        assert concurrence_fill(_ghz(1 / math.sqrt(2))) == pytest.approx(1.0, abs=1e-12)

    def test_w_state(self):
        assert concurrence_fill(to_density(make_w(math.atan(math.sqrt(2))))) == pytest.approx(8 / 9, abs=1e-12)

    def test_psi_examples(self):
        assert concurrence_fill(to_density(psi1())) == pytest.approx(0.626, abs=1e-3)
        assert concurrence_fill(to_density(psi2())) == pytest.approx(0.5, abs=1e-12)
        assert gmc(to_density(psi1())) == pytest.approx(0.345, abs=1e-3)
        assert gmc(to_density(psi2())) == pytest.approx(0.5, abs=1e-12)


class TestClosedForms:
    def test_ghz_grid(self):
        for a in A_GRID:
            b = math.sqrt(1 - a * a)
            rep = closed_form_measures("generalized-ghz", a=a)
            rho = _ghz(a)
            assert abs(concurrence_fill(rho) - rep.concurrence_fill) <= 1e-9
            assert abs(gmc(rho) - rep.gmc) <= 1e-9
            assert rep.gmc == pytest.approx(4 * a * a * b * b)

    def test_w_grid(self):
        for t in THETA_GRID:
            rep = closed_form_measures("generalized-w", theta=t)
            rho = to_density(make_w(t))
            assert abs(concurrence_fill(rho) - rep.concurrence_fill) <= 1e-9
            assert abs(gmc(rho) - rep.gmc) <= 1e-9
            assert abs(global_measure(rho) - rep.global_measure) <= 1e-9

    def test_w_gmc_branch(self):
        assert formulas.w_gmc(math.pi / 4) == pytest.approx(0.75)

    def test_w_biseparable_endpoint(self):
        rep = closed_form_measures("generalized-w", theta=math.pi / 2)
        assert rep.concurrence_fill == pytest.approx(0, abs=1e-7)
        assert rep.gmc == pytest.approx(0, abs=1e-12)
        # the global measure is not genuine: nonzero on a biseparable state
        assert global_measure(to_density(make_w(math.pi / 2))) == pytest.approx(2 / 3)

    def test_unsupported_family(self):
        with pytest.raises(ValueError):
            closed_form_measures("x-family", a=0.1)


class TestTangle:
    def test_ghz(self):
        assert tangle_closed("generalized-ghz", a=1 / math.sqrt(2)) == pytest.approx(1.0)
        assert tangle_closed("generalized-ghz", a=1.0) == 0.0

    def test_w(self):
        assert tangle_closed("generalized-w", theta=0.4) == 0.0

    def test_unsupported(self):
        with pytest.raises(ValueError):
            tangle_closed("ghz-w-mixture", p=0.5)


class TestGenuineness:
    @pytest.mark.parametrize("rho", [_ghz(0.0), _ghz(1.0), to_density(make_w(0.0)), to_density(make_w(math.pi / 2))])
    def test_endpoints_vanish(self, rho):
        assert gmc(rho) <= 1e-12
        assert concurrence_fill(rho) <= 1e-6

    def test_interior_positive(self):
        for a in A_GRID[1:-1]:
            assert gmc(_ghz(a)) > 0
        for t in THETA_GRID[1:-1]:
            rho = to_density(make_w(t))
            assert gmc(rho) > 0 and concurrence_fill(rho) > 0


class TestPermutationInvariance:
    def test_random_states(self, rng):
        for _ in range(100):
            rho = to_density(random_pure(rng))
            f, g = concurrence_fill(rho), gmc(rho)
            for perm in itertools.permutations(range(3)):
                r2 = permute_qubits(rho, perm)
                assert abs(concurrence_fill(r2) - f) <= 1e-10
                assert abs(gmc(r2) - g) <= 1e-10


class TestReport:
    def test_pure_report(self):
        rep = measure_report(_ghz(1 / math.sqrt(2)), tangle=1.0)
        assert rep.gmc == min(rep.edges)
        assert rep.gmc_ties == [1, 2, 3]
        assert rep.edge_label == "squared concurrence"
        assert rep.to_dict()["tangle"] == 1.0

    def test_mixed_label(self):
        rep = measure_report(mix_ghz_w(0.5))
        assert not rep.pure
        assert "not concurrence" in rep.edge_label

    def test_global_from_purities(self, rng):
        # 2(1 - mean purity), evaluated independently of the edges
        for _ in range(20):
            rho = to_density(random_pure(rng))
            expected = 2 * (1 - sum(single_qubit_purities(rho)) / 3)
            assert measure_report(rho).global_measure == pytest.approx(expected, abs=1e-12)
            assert global_measure(rho) == pytest.approx(expected, abs=1e-12)

    def test_edges_match_purity_form(self, rng):
        for _ in range(20):
            rho = to_density(random_pure(rng))
            assert np.allclose(triangle_edges(rho), [2 * (1 - p) for p in single_qubit_purities(rho)], atol=1e-12)
