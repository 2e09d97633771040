import itertools
import math

import numpy as np
from django.test import SimpleTestCase
from numpy.testing import assert_allclose

from interferometry import qubit
from interferometry.exceptions import InvalidScheme, UnsupportedExperiment, ZeroProbabilityCondition
from interferometry.extraction import (
    MeasurementScheme,
    closed_form,
    conditional_probability,
    extract_povm,
    group_marginals,
    measurement_scheme,
)
from interferometry.interferometer import Experiment, MzConfig, output_projection
from interferometry.povm import pauli_pvm, validate
from interferometry.qubit import I2, DensityOperator, pauli

ANGLES = (0.0, math.pi / 6, -math.pi / 4, math.pi / 2, -math.pi / 2, math.pi)


def assert_povms_close(first, second, atol):
    assert first.labels == second.labels, (first.labels, second.labels)
    for label in first.labels:
        assert_allclose(first[label], second[label], atol=atol, err_msg=label)


class DetectionTests(SimpleTestCase):
    def test_path_detection_measures_sigma_z(self):
        povm = extract_povm(measurement_scheme(MzConfig(Experiment.PATH)))
        assert_povms_close(povm, pauli_pvm('z'), atol=1e-12)
        probabilities = povm.probabilities(DensityOperator.from_ket([1, 0]))
        self.assertAlmostEqual(probabilities['1'], 1.0, places=12)

    def test_interference_detection_measures_sigma_x(self):
        povm = extract_povm(measurement_scheme(MzConfig(Experiment.INTERFERENCE, -math.pi / 2)))
        assert_povms_close(povm, pauli_pvm('x'), atol=1e-12)
        plus = np.array([1, 1]) / math.sqrt(2)
        self.assertAlmostEqual(povm.probabilities(DensityOperator.from_ket(plus))['1'], 1.0, places=12)

    def test_interference_at_general_phase(self):
        delta = 0.7
        povm = extract_povm(measurement_scheme(MzConfig(Experiment.INTERFERENCE, delta)))
        expected = 0.5 * (I2 + math.cos(delta) * pauli('z') - math.sin(delta) * pauli('x'))
        assert_allclose(povm['1'], expected, atol=1e-12)


class ClosedFormTests(SimpleTestCase):
    def test_extracted_joint_and_marginals_match(self):
        for experiment in (Experiment.MARKING, Experiment.ERASURE, Experiment.QUANTITATIVE):
            for delta, other in itertools.product(ANGLES, repeat=2):
                config = MzConfig(experiment, delta, gamma=other, theta=other)
                with self.subTest(config=config):
                    extracted = extract_povm(measurement_scheme(config))
                    expected = closed_form(config)
                    assert_povms_close(extracted, expected.joint, atol=1e-10)
                    for name, grouped in group_marginals(extracted).items():
                        assert_povms_close(grouped, expected[name], atol=1e-10)

    def test_marking_probability(self):
        delta, alpha, beta = 0.9, 0.6, 0.8
        povm = extract_povm(measurement_scheme(MzConfig(Experiment.MARKING, delta)))
        p11 = povm.probabilities(DensityOperator.from_ket([alpha, beta]))['11']
        self.assertAlmostEqual(p11, 0.5 * alpha ** 2 * (1 + math.cos(delta)), places=12)

    def test_unmarked_experiments_have_no_closed_form(self):
        with self.assertRaises(UnsupportedExperiment):
            closed_form(MzConfig(Experiment.PATH))

    def test_perturbed_copy(self):
        expected = closed_form(MzConfig(Experiment.ERASURE, -math.pi / 2))
        shifted = expected.perturbed(1e-6)
        assert_allclose(shifted.joint['11'] - expected.joint['11'], 1e-6 * I2, atol=1e-18)
        assert_allclose(shifted.joint['22'], expected.joint['22'])

    def test_completion_phase_does_not_change_povm(self):
        config = MzConfig(Experiment.QUANTITATIVE, 0.3, theta=1.1)
        first = extract_povm(measurement_scheme(config))
        second = extract_povm(measurement_scheme(config, completion_phase=2.5))
        assert_povms_close(first, second, atol=1e-12)

    def test_limit_cases(self):
        low = group_marginals(extract_povm(measurement_scheme(MzConfig(Experiment.QUANTITATIVE, -math.pi / 2, theta=0.0))))
        self.assertEqual(validate(low['G']).kind, 'sharp')
        self.assertEqual(validate(low['F']).kind, 'trivial')
        high = group_marginals(extract_povm(measurement_scheme(MzConfig(Experiment.QUANTITATIVE, -math.pi / 2, theta=math.pi / 2))))
        self.assertEqual(validate(high['F']).kind, 'sharp')
        self.assertEqual(validate(high['G']).kind, 'trivial')


class ErasureTests(SimpleTestCase):
    def setUp(self):
        self.joint = extract_povm(measurement_scheme(MzConfig(Experiment.ERASURE, -math.pi / 2, 0.0)))
        self.plus = np.array([1, 1]) / math.sqrt(2)

    def test_fringes_and_antifringes(self):
        fringes = conditional_probability(self.joint, '1', self.plus)
        antifringes = conditional_probability(self.joint, '2', self.plus)
        self.assertAlmostEqual(fringes['1'], 1.0, places=12)
        self.assertAlmostEqual(fringes['2'], 0.0, places=12)
        self.assertAlmostEqual(antifringes['1'], 0.0, places=12)
        self.assertAlmostEqual(antifringes['2'], 1.0, places=12)

    def test_zero_probability_condition(self):
        joint = extract_povm(measurement_scheme(MzConfig(Experiment.MARKING)))
        with self.assertRaises(ZeroProbabilityCondition) as ctx:
            conditional_probability(joint, '2', [1, 0])
        self.assertEqual(ctx.exception.code, 'zero_probability_condition')


class SchemeValidationTests(SimpleTestCase):
    def outputs(self):
        return tuple((str(k), output_projection(k)) for k in (1, 2))

    def test_rejects_non_unitary(self):
        with self.assertRaises(InvalidScheme):
            MeasurementScheme(2 * qubit.I4, [1, 0], self.outputs())

    def test_rejects_incomplete_outputs(self):
        with self.assertRaises(InvalidScheme):
            MeasurementScheme(qubit.I4, [1, 0], self.outputs()[:1])

    def test_rejects_unnormalized_probe(self):
        with self.assertRaises(InvalidScheme):
            MeasurementScheme(qubit.I4, [1, 1], self.outputs())

    def test_labels(self):
        scheme = measurement_scheme(MzConfig(Experiment.MARKING))
        self.assertEqual(scheme.labels, ('11', '21', '12', '22'))
        self.assertEqual(measurement_scheme(MzConfig(Experiment.PATH)).labels, ('1', '2'))
