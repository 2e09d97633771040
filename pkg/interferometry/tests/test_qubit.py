import itertools
import math

import numpy as np
from django.test import SimpleTestCase
from numpy.testing import assert_allclose

from interferometry import qubit
from interferometry.exceptions import BlochOutOfBall, DimensionMismatch, NotHermitian, NotNormalized
from interferometry.interferometer import perpendicular
from interferometry.qubit import BlochVector, DensityOperator


class StateTests(SimpleTestCase):
    def test_ket_rejects_unnormalized_vector(self):
        with self.assertRaises(NotNormalized) as ctx:
            qubit.ket([1, 1])
        self.assertEqual(ctx.exception.code, 'not_normalized')

    def test_ket_checks_dimension(self):
        with self.assertRaises(DimensionMismatch):
            qubit.ket([1, 0, 0], dim=2)

    def test_ket_is_read_only(self):
        v = qubit.ket([0, 1])
        with self.assertRaises(ValueError):
            v[0] = 1

    def test_normalized_scales_and_rejects_zero(self):
        assert_allclose(qubit.normalized([3, 4j]), [0.6, 0.8j])
        with self.assertRaises(NotNormalized):
            qubit.normalized([0, 0])

    def test_bloch_vector_outside_ball(self):
        with self.assertRaises(BlochOutOfBall) as ctx:
            BlochVector(1.0, 1.0, 0.0)
        self.assertEqual(ctx.exception.code, 'bloch_out_of_ball')

    def test_density_operator_rejects_non_hermitian(self):
        with self.assertRaises(NotHermitian):
            DensityOperator(np.array([[0.5, 0.5], [0.0, 0.5]]))

    def test_density_operator_rejects_negative_eigenvalue(self):
        with self.assertRaises(BlochOutOfBall):
            DensityOperator(np.array([[1.2, 0.0], [0.0, -0.2]]))

    def test_bloch_round_trip_and_expectations(self):
        r = BlochVector(0.3, -0.4, 0.5)
        rho = qubit.density_from_bloch(r)
        assert_allclose(rho.bloch.as_array(), r.as_array(), atol=1e-15)
        for axis, expected in zip('xyz', r.as_array()):
            self.assertAlmostEqual(qubit.expectation(qubit.pauli(axis), rho), expected, places=12)
        self.assertAlmostEqual(rho.purity, 0.5 * (1 + 0.5), places=12)

    def test_bloch_of_ket(self):
        plus = np.array([1, 1]) / math.sqrt(2)
        assert_allclose(qubit.bloch_of_ket(plus).as_array(), [1, 0, 0], atol=1e-15)
        self.assertEqual(qubit.bloch_of_ket([0, 1]), BlochVector(0.0, 0.0, -1.0))

    def test_variance_of_pauli(self):
        rho = qubit.density_from_bloch(BlochVector(0.6, 0.0, 0.0))
        self.assertAlmostEqual(qubit.variance(qubit.pauli('x'), rho), 1 - 0.36, places=12)
        self.assertAlmostEqual(qubit.variance(qubit.pauli('z'), rho), 1.0, places=12)

    def test_pauli_algebra(self):
        sigmas = qubit.pauli_vector()
        for i, j in itertools.product(range(3), repeat=2):
            anticommutator = sigmas[i] @ sigmas[j] + sigmas[j] @ sigmas[i]
            assert_allclose(anticommutator, 2 * (i == j) * np.eye(2), atol=1e-14)
        assert_allclose(sigmas[0] @ sigmas[1] - sigmas[1] @ sigmas[0], 2j * sigmas[2], atol=1e-14)

    def test_bloch_round_trip_on_random_vectors(self):
        rng = np.random.default_rng(17)
        directions = rng.standard_normal((1000, 3))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        for r in directions * rng.random((1000, 1)) ** (1 / 3):
            rho = qubit.density_from_bloch(BlochVector.from_array(r))
            assert_allclose(qubit.bloch_from_density(rho).as_array(), r, atol=1e-12)

    def test_expectation_tolerates_hermitian_rounding(self):
        a = qubit.pauli('x') + np.array([[0, 5e-11], [0, 0]])
        rho = qubit.density_from_bloch(BlochVector(0.0, 1.0, 0.0))
        self.assertAlmostEqual(qubit.expectation(a, rho), 0.0, places=9)
        with self.assertRaises(NotHermitian):
            qubit.expectation(np.array([[0, 1], [0, 0]]), rho)

    def test_unknown_pauli_axis(self):
        with self.assertRaises(ValueError):
            qubit.pauli('w')


class TwoPartyTests(SimpleTestCase):
    def test_tensor_puts_photon_first(self):
        op = qubit.tensor(qubit.pauli('z'), qubit.I2)
        assert_allclose(np.diag(op).real, [1, 1, -1, -1])
        self.assertEqual(op.shape, (4, 4))

    def test_partial_trace_of_product_state(self):
        psi = np.kron([1, 1], [0, 1]) / math.sqrt(2)
        rho = qubit.partial_trace_probe(psi)
        assert_allclose(rho.matrix, [[0.5, 0.5], [0.5, 0.5]], atol=1e-15)

    def test_partial_trace_of_bell_state(self):
        psi = np.array([1, 0, 0, 1]) / math.sqrt(2)
        assert_allclose(qubit.partial_trace_probe(psi).matrix, np.eye(2) / 2, atol=1e-15)

    def test_partial_trace_of_random_product_states(self):
        rng = np.random.default_rng(19)
        for _ in range(100):
            photon, probe = (v / np.linalg.norm(v) for v in rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
            rho = qubit.partial_trace_probe(np.kron(photon, probe))
            assert_allclose(rho.matrix, np.outer(photon, photon.conj()), atol=1e-12)


class EigensolverTests(SimpleTestCase):
    def test_two_by_two(self):
        pairs = qubit.eig_hermitian(qubit.pauli('x'))
        self.assertEqual([round(value, 12) for value, _ in pairs], [1.0, -1.0])
        for value, vector in pairs:
            assert_allclose(qubit.pauli('x') @ vector, value * vector, atol=1e-15)

    def test_degenerate_two_by_two(self):
        pairs = qubit.eig_hermitian(2 * np.eye(2))
        self.assertEqual([value for value, _ in pairs], [2.0, 2.0])

    def test_jacobi_reconstructs_random_hermitian(self):
        rng = np.random.default_rng(7)
        for n in (3, 4, 8):
            a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            a = a + a.conj().T
            pairs = qubit.eig_hermitian(a)
            values = [value for value, _ in pairs]
            self.assertEqual(values, sorted(values, reverse=True))
            assert_allclose(values, np.linalg.eigvalsh(a)[::-1], atol=1e-11)
            rebuilt = sum(value * np.outer(v, v.conj()) for value, v in pairs)
            assert_allclose(rebuilt, a, atol=1e-11)

    def test_reconstructs_many_random_four_by_four(self):
        rng = np.random.default_rng(42)
        worst = 0.0
        for _ in range(1000):
            a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            a = a + a.conj().T
            rebuilt = sum(value * np.outer(v, v.conj()) for value, v in qubit.eig_hermitian(a))
            worst = max(worst, float(np.max(np.abs(rebuilt - a))))
        self.assertLessEqual(worst, 1e-11)

    def test_nearly_diagonal_matrix_is_fully_resolved(self):
        a = np.diag([3.0, 1.0, -1.0, -2.0]).astype(complex)
        a[0, 1], a[1, 0] = 1e-7, 1e-7
        a[2, 3], a[3, 2] = 1e-7j, -1e-7j
        rebuilt = sum(value * np.outer(v, v.conj()) for value, v in qubit.eig_hermitian(a))
        assert_allclose(rebuilt, a, atol=1e-13)

    def test_dimension_limit(self):
        with self.assertRaises(DimensionMismatch):
            qubit.eig_hermitian(np.eye(17))


class SchmidtTests(SimpleTestCase):
    def test_product_state(self):
        psi = np.kron([0.6, 0.8], [1, 0])
        decomposition = qubit.schmidt(psi)
        self.assertAlmostEqual(decomposition.weight, 1.0, places=12)
        self.assertTrue(decomposition.is_product())
        self.assertAlmostEqual(qubit.adapted_observable_variance(psi), 0.0, places=12)

    def test_maximally_entangled_state(self):
        psi = np.array([1, 0, 0, 1]) / math.sqrt(2)
        decomposition = qubit.schmidt(psi)
        self.assertEqual(decomposition.weight, 0.5)
        assert_allclose(decomposition.reconstruct(), psi, atol=1e-15)
        assert_allclose(qubit.partial_trace_probe(psi).matrix, np.eye(2) / 2, atol=1e-15)
        self.assertAlmostEqual(qubit.adapted_observable_variance(psi), 1.0, places=12)

    def test_generic_state(self):
        rng = np.random.default_rng(3)
        psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        psi /= np.linalg.norm(psi)
        decomposition = qubit.schmidt(psi)
        assert_allclose(decomposition.reconstruct(), psi, atol=1e-12)
        largest = max(np.linalg.eigvalsh(qubit.partial_trace_probe(psi).matrix))
        self.assertAlmostEqual(decomposition.weight, largest, places=12)
        w = decomposition.weight
        self.assertAlmostEqual(qubit.adapted_observable_variance(psi), 4 * w * (1 - w), places=12)
        # photon vectors carry a real positive leading component
        for photon in decomposition.photon:
            k = int(np.argmax(np.abs(photon)))
            self.assertAlmostEqual(photon[k].imag, 0.0, places=12)
            self.assertGreater(photon[k].real, 0)

    def _random_unit(self, rng):
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        return v / np.linalg.norm(v)

    def test_product_iff_zero_adapted_variance(self):
        rng = np.random.default_rng(23)
        for _ in range(100):
            product = np.kron(self._random_unit(rng), self._random_unit(rng))
            self.assertTrue(qubit.schmidt(product).is_product())
            self.assertLessEqual(qubit.adapted_observable_variance(product), 1e-12)

            a, b = self._random_unit(rng), self._random_unit(rng)
            t = rng.uniform(0.1, math.pi / 2 - 0.1)
            entangled = (math.cos(t) * np.kron(a, b)
                         + math.sin(t) * np.kron(perpendicular(a), perpendicular(b)))
            self.assertFalse(qubit.schmidt(entangled).is_product())
            self.assertAlmostEqual(qubit.adapted_observable_variance(entangled), math.sin(2 * t) ** 2, places=10)

    def test_equal_weights_follow_the_phase_convention(self):
        rng = np.random.default_rng(29)
        a, b = self._random_unit(rng), self._random_unit(rng)
        psi = (np.kron(a, b) + np.kron(perpendicular(a), perpendicular(b))) * 1j / math.sqrt(2)
        decomposition = qubit.schmidt(psi)
        self.assertEqual(decomposition.weight, 0.5)
        assert_allclose(decomposition.reconstruct(), psi, atol=1e-12)
        for photon in decomposition.photon:
            k = int(np.argmax(np.abs(photon)))
            self.assertAlmostEqual(photon[k].imag, 0.0, places=12)
            self.assertGreater(photon[k].real, 0)
