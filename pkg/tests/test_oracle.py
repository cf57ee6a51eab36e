"""Verification oracles: partial-transpose reports, see-saw, product bound."""

import numpy as np
import pytest

from witgeo.linalg import tensor
from witgeo.measurements import standard_witness, three_qubit_witness
from witgeo.oracle import (
    SeeSawConfig,
    bell_bound_three_qubit,
    bell_correlation,
    min_over_products,
    ppt_report,
    product_bound_objective,
    product_from_angles,
)
from witgeo.states import (
    completely_random,
    max_entangled,
    three_qubit_family,
)

class TestPptReport:
    def test_bell_cut(self):
        report = ppt_report(max_entangled(2))
        assert set(report.min_eigenvalues) == {(1,)}
        assert report.min_eigenvalues[(1,)] == pytest.approx(-0.5, abs=1e-12)
        assert not report.is_ppt()

    def test_random_state(self):
        report = ppt_report(completely_random((2, 2)))
        assert report.minimum >= 0.25 - 1e-12

    def test_three_party_cut_cover(self):
        report = ppt_report(three_qubit_family(0.125, -0.125))
        assert set(report.min_eigenvalues) == {(1,), (2,), (1, 2)}
        assert report.is_ppt()

    def test_family_grid(self):
        for c in np.linspace(-0.125, 0.125, 5):
            for d in np.linspace(-0.125, 0.125, 5):
                assert ppt_report(three_qubit_family(c, d)).minimum >= -1e-10


class TestMinOverProducts:
    def test_constant_objective(self):
        res = min_over_products(np.eye(4), (2, 2), SeeSawConfig(restarts=4, seed=1))
        assert res.value == pytest.approx(1.0, abs=1e-12)

    def test_two_qubit_witness_floor(self):
        w = standard_witness(2)
        res = min_over_products(w.matrix, (2, 2), SeeSawConfig(restarts=32, seed=2))
        assert res.value >= -1e-8
        assert abs(res.value) <= 1e-8  # the nearest face touches the plane
        assert res.consensus >= 8

    def test_max_product_overlap_with_bell(self):
        res = min_over_products(
            -max_entangled(2).mat, (2, 2), SeeSawConfig(restarts=16, seed=3)
        )
        assert res.value == pytest.approx(-0.5, abs=1e-8)

    def test_qutrit_witness_floor(self):
        w = standard_witness(3)
        res = min_over_products(w.matrix, (3, 3), SeeSawConfig(restarts=24, seed=4))
        assert res.value >= -1e-8
        assert abs(res.value) <= 1e-7

    def test_local_unitary_invariance(self):
        rng = np.random.default_rng(5)
        w = standard_witness(2)
        base = min_over_products(w.matrix, (2, 2), SeeSawConfig(restarts=16, seed=6))
        for _ in range(3):
            us = []
            for _ in range(2):
                g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
                q, _r = np.linalg.qr(g)
                us.append(q)
            u = tensor(*us)
            rotated = u @ w.matrix @ u.conj().T
            res = min_over_products(rotated, (2, 2), SeeSawConfig(restarts=16, seed=6))
            assert abs(res.value - base.value) <= 1e-8

    def test_argmin_attains_value(self):
        w = standard_witness(2)
        res = min_over_products(w.matrix, (2, 2), SeeSawConfig(restarts=8, seed=7))
        direct = np.trace(w.matrix @ res.argmin.matrix()).real
        assert direct == pytest.approx(res.value, abs=1e-12)

    def test_rejects_non_hermitian(self):
        bad = np.array([[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(ValueError):
            min_over_products(tensor(bad, np.eye(2)), (2, 2))

    def test_three_qubit_witness_true_floor(self):
        # The constructed three-qubit witness plane cuts into the product
        # states: the analytic minimum is (t/4)(1 - sqrt(2)) < 0, attained
        # at theta = pi/4 and phases like (pi/4, -pi/4, -pi/4).  The
        # see-saw must find it; this documents the construction's defect.
        t = 1 / 8
        w = three_qubit_witness(0.0, t)
        res = min_over_products(w.matrix, (2, 2, 2), SeeSawConfig(restarts=32, seed=8))
        assert res.value == pytest.approx((t / 4) * (1 - np.sqrt(2)), abs=1e-9)
        assert res.consensus >= 8


class TestProductBound:
    def test_correlation_values(self):
        assert bell_correlation(0.0, 0.0, 0.0) == pytest.approx(2.0)
        phis = (0.0, 0.0, np.pi / 2)
        direct = (
            np.cos(sum(phis))
            + np.cos(phis[0] + phis[1] - phis[2])
            + np.cos(phis[0] - phis[1] + phis[2])
            - np.cos(phis[0] - phis[1] - phis[2])
        )
        assert bell_correlation(*phis) == pytest.approx(direct)

    def test_identity_with_witness_expectation(self):
        # 2 Tr(Wn pi) = 2 - sin sin sin * C for the integer-form witness
        t = 1 / 8
        wn = three_qubit_witness(0.0, t).matrix / (t / 4)
        rng = np.random.default_rng(9)
        for _ in range(100):
            thetas = rng.uniform(0, np.pi / 2, size=3)
            phis = rng.uniform(-np.pi, np.pi, size=3)
            pi = product_from_angles(thetas, phis)
            lhs = 2 * np.trace(wn @ pi.matrix()).real
            rhs = 2 - product_bound_objective(thetas, phis)
            assert abs(lhs - rhs) <= 1e-10

    def test_attaining_point_reaches_two(self):
        assert product_bound_objective([np.pi / 4] * 3, [0.0, 0.0, 0.0]) == pytest.approx(2.0)

    def test_global_maximum_value(self):
        # The analytic maximum over all angles is 2*sqrt(2) (at phase
        # triples like (pi/4, -pi/4, -pi/4)), strictly above the value 2
        # reached at zero phases; see the ledger note on the three-qubit
        # positivity defect.
        val = bell_bound_three_qubit(restarts=60, seed=10)
        assert val == pytest.approx(2 * np.sqrt(2), abs=1e-6)

    def test_consistency_with_seesaw(self):
        # max of the trig objective <-> min of the witness over products
        t = 1 / 8
        w = three_qubit_witness(0.0, t)
        res = min_over_products(w.matrix, (2, 2, 2), SeeSawConfig(restarts=24, seed=11))
        val = bell_bound_three_qubit(restarts=60, seed=12)
        assert res.value == pytest.approx((t / 4) * (2 - val) / 2, abs=1e-8)


def test_witness_floor_for_ghz_targets():
    from witgeo.measurements import ghz_decomposition

    for n in (3, 4):
        g = ghz_decomposition(n)
        res = min_over_products(
            g.witness.matrix, (2,) * n, SeeSawConfig(restarts=24, seed=13)
        )
        assert res.value >= -1e-8


def test_witness_floor_for_far_face():
    from witgeo.upb import estimate_epsilon, far_face_witness, tiles

    upb = tiles()
    est = estimate_epsilon(upb, restarts=32, seed=14)
    w = far_face_witness(upb, est.epsilon)
    res = min_over_products(w.matrix, (3, 3), SeeSawConfig(restarts=32, seed=15))
    assert res.value >= -1e-8
