import math

import numpy as np
from django.test import SimpleTestCase
from numpy.testing import assert_allclose, assert_array_equal

from interferometry import qubit
from interferometry.exceptions import InvalidOracleConfig, InvalidScheme
from interferometry.extraction import closed_form, extract_povm, measurement_scheme
from interferometry.interferometer import Experiment, MzConfig
from interferometry.oracle import (
    OracleConfig,
    cross_check,
    direct_probabilities,
    direct_table,
    grid_maximize,
    povm_table,
    random_bloch_vectors,
    random_density_operators,
    random_pure_states,
)
from interferometry.povm import pauli_pvm


class OracleConfigTests(SimpleTestCase):
    def test_rejects_bad_values(self):
        for kwargs in ({'seed': -1}, {'seed': 2 ** 64}, {'samples': 0}, {'tolerance': 0.0}, {'grid_resolution': 1.0}):
            with self.subTest(**kwargs), self.assertRaises(InvalidOracleConfig):
                OracleConfig(**kwargs)

    def test_streams_are_reproducible_and_independent(self):
        oracle = OracleConfig(seed=42, samples=8)
        assert_array_equal(random_pure_states(oracle, stream=3), random_pure_states(oracle, stream=3))
        self.assertFalse(np.allclose(random_pure_states(oracle, stream=3), random_pure_states(oracle, stream=4)))
        other = OracleConfig(seed=43, samples=8)
        self.assertFalse(np.allclose(random_pure_states(oracle), random_pure_states(other)))


class SamplingTests(SimpleTestCase):
    def setUp(self):
        self.oracle = OracleConfig(samples=50)

    def test_pure_states_are_unit_vectors(self):
        states = random_pure_states(self.oracle)
        self.assertEqual(states.shape, (50, 2))
        assert_allclose(np.linalg.norm(states, axis=1), 1.0, atol=1e-14)

    def test_bloch_vectors_lie_in_the_ball(self):
        vectors = random_bloch_vectors(self.oracle, count=200)
        self.assertEqual(vectors.shape, (200, 3))
        self.assertTrue(np.all(np.linalg.norm(vectors, axis=1) <= 1 + 1e-12))

    def test_density_operators(self):
        states = random_density_operators(self.oracle, count=5)
        self.assertEqual(len(states), 5)
        self.assertTrue(all(rho.purity <= 1 + 1e-12 for rho in states))


class ProbabilityTests(SimpleTestCase):
    def test_direct_probabilities_of_marking(self):
        delta, alpha, beta = 0.4, 0.6, 0.8j
        scheme = measurement_scheme(MzConfig(Experiment.MARKING, delta))
        probabilities = direct_probabilities(scheme, [alpha, beta])
        self.assertAlmostEqual(probabilities['11'], 0.5 * 0.36 * (1 + math.cos(delta)), places=12)
        self.assertAlmostEqual(sum(probabilities.values()), 1.0, places=12)

    def test_tables_agree(self):
        scheme = measurement_scheme(MzConfig(Experiment.ERASURE, 0.3, gamma=1.2))
        states = random_pure_states(OracleConfig(samples=20))
        direct = direct_table(scheme, states)
        predicted = povm_table(extract_povm(scheme), states)
        self.assertEqual(list(direct.columns), ['11', '21', '12', '22'])
        assert_allclose(direct.to_numpy(), predicted[list(direct.columns)].to_numpy(), atol=1e-12)
        assert_allclose(direct.sum(axis=1), 1.0, atol=1e-12)

    def test_cross_check(self):
        oracle = OracleConfig(samples=30)
        config = MzConfig(Experiment.QUANTITATIVE, -math.pi / 2, theta=math.pi / 3)
        self.assertLessEqual(cross_check(config, oracle), 1e-12)
        perturbed = closed_form(config).perturbed(1e-6).joint
        self.assertAlmostEqual(cross_check(config, oracle, perturbed), 1e-6, delta=1e-12)

    def test_cross_check_needs_matching_outcomes(self):
        with self.assertRaises(InvalidScheme):
            cross_check(MzConfig(Experiment.MARKING), OracleConfig(samples=2), pauli_pvm('z'))


class GridSearchTests(SimpleTestCase):
    def test_linear_objective(self):
        n = np.array([1.0, 2.0, 2.0]) / 3
        value, r = grid_maximize(lambda rho: float(rho.bloch.as_array() @ n), OracleConfig())
        self.assertAlmostEqual(value, 1.0, places=9)
        assert_allclose(r.as_array(), n, atol=1e-4)

    def test_equatorial_search(self):
        rho = qubit.density_from_bloch(qubit.BlochVector(0.3, 0.4, 0.5))
        value, n = grid_maximize(
            lambda state: qubit.expectation(qubit.dot_sigma(state.bloch.as_array()), rho), OracleConfig(), equatorial=True,
        )
        self.assertAlmostEqual(value, 0.5, places=9)
        self.assertAlmostEqual(n.r3, 0.0, places=12)
