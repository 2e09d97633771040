import math

from django.test import SimpleTestCase
from numpy.testing import assert_allclose

from interferometry.forms import RunForm, SweepForm, VerifyForm, first_error
from interferometry.interferometer import Experiment


class RunFormTests(SimpleTestCase):
    def test_defaults(self):
        form = RunForm({'experiment': 'interference'})
        self.assertTrue(form.is_valid(), form.errors)
        config = form.cleaned_data['config']
        self.assertEqual(config.experiment, Experiment.INTERFERENCE)
        self.assertEqual(config.delta, -math.pi / 2)
        assert_allclose(form.cleaned_data['psi'], [1 / math.sqrt(2), 1 / math.sqrt(2)])

    def test_degrees(self):
        form = RunForm({'experiment': 'quantitative', 'theta': '60', 'delta': '-90', 'degrees': True})
        self.assertTrue(form.is_valid(), form.errors)
        config = form.cleaned_data['config']
        self.assertAlmostEqual(config.theta, math.pi / 3)
        self.assertAlmostEqual(config.delta, -math.pi / 2)

    def test_renormalizes_with_warning(self):
        form = RunForm({'experiment': 'path', 'input': '2,0,0,0'})
        with self.assertLogs('interferometry.forms', level='WARNING'):
            self.assertTrue(form.is_valid())
        assert_allclose(form.cleaned_data['psi'], [1, 0])

    def test_small_norm_error_is_silent(self):
        form = RunForm({'experiment': 'path', 'input': '1.0000001,0,0,0'})
        with self.assertNoLogs('interferometry.forms', level='WARNING'):
            self.assertTrue(form.is_valid())

    def test_invalid_input(self):
        for raw in ('1,0', 'a,b,c,d', 'nan,0,0,0'):
            form = RunForm({'experiment': 'path', 'input': raw})
            self.assertFalse(form.is_valid())
            self.assertTrue(first_error(form).startswith('input: '))

    def test_zero_input(self):
        form = RunForm({'experiment': 'path', 'input': '0,0,0,0'})
        self.assertFalse(form.is_valid())
        self.assertEqual(first_error(form), 'Input state is the zero vector.')

    def test_unknown_experiment(self):
        form = RunForm({'experiment': 'bogus'})
        self.assertFalse(form.is_valid())
        self.assertIn('experiment', form.errors)

    def test_non_numeric_angle(self):
        form = RunForm({'experiment': 'erasure', 'gamma': 'wide'})
        self.assertFalse(form.is_valid())
        self.assertTrue(first_error(form).startswith('gamma: '))


class SweepFormTests(SimpleTestCase):
    def data(self, **overrides):
        return {'experiment': 'quantitative', 'param': 'theta', 'start': '0', 'stop': '1', 'steps': '3', **overrides}

    def test_valid(self):
        form = SweepForm(self.data(start='0', stop='90', degrees=True))
        self.assertTrue(form.is_valid(), form.errors)
        self.assertAlmostEqual(form.cleaned_data['stop'], math.pi / 2)

    def test_empty_range(self):
        form = SweepForm(self.data(start='1', stop='1'))
        self.assertFalse(form.is_valid())
        self.assertEqual(form.errors.as_data()['__all__'][0].code, 'empty_range')

    def test_step_limits(self):
        self.assertFalse(SweepForm(self.data(steps='1')).is_valid())
        form = SweepForm(self.data(steps='100001'))
        self.assertFalse(form.is_valid())
        self.assertEqual(form.errors.as_data()['steps'][0].code, 'too_many_steps')

    def test_unknown_parameter(self):
        self.assertFalse(SweepForm(self.data(param='phi')).is_valid())


class VerifyFormTests(SimpleTestCase):
    def test_valid(self):
        form = VerifyForm({'seed': '42', 'samples': '10', 'tol': '1e-10'})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data['perturb'], 0.0)

    def test_invalid(self):
        for data in (
            {'seed': '-1', 'samples': '10', 'tol': '1e-10'},
            {'seed': str(2 ** 64), 'samples': '10', 'tol': '1e-10'},
            {'seed': '1', 'samples': '0', 'tol': '1e-10'},
            {'seed': '1', 'samples': '10', 'tol': '0'},
        ):
            with self.subTest(**data):
                self.assertFalse(VerifyForm(data).is_valid())
