import json
import math

import numpy as np
from django.test import SimpleTestCase

from interferometry.interferometer import Experiment, MzConfig
from interferometry.reports import SWEEP_COLUMNS, canonical_json, run_report, sweep_csv, sweep_frame

PLUS = np.array([1, 1]) / math.sqrt(2)


class RunReportTests(SimpleTestCase):
    def test_unmarked_report(self):
        report = run_report(MzConfig(Experiment.PATH), [1, 0])
        self.assertAlmostEqual(report['probabilities']['1'], 1.0, places=12)
        self.assertAlmostEqual(report['probabilities']['2'], 0.0, places=12)
        self.assertEqual(report['povm']['classification'], 'sharp')
        self.assertEqual(report['marginals'], {})
        self.assertNotIn('distinguishability', report)
        self.assertTrue(all(r['satisfied'] for r in report['relations']))

    def test_marked_report(self):
        report = run_report(MzConfig(Experiment.QUANTITATIVE, -math.pi / 2, theta=math.pi / 3), PLUS)
        self.assertEqual(sorted(report['probabilities']), ['11', '12', '21', '22'])
        self.assertEqual(sorted(report['marginals']), ['F', 'G', 'H'])
        self.assertAlmostEqual(report['marginals']['G']['contrast'], 0.5, places=12)
        self.assertAlmostEqual(report['distinguishability']['D'], 0.5, places=12)
        self.assertAlmostEqual(report['visibility']['V_e'], math.sqrt(3) / 2, places=12)
        names = {r['name']: r for r in report['relations']}
        self.assertLessEqual(names['erasure duality']['slack'], 1e-9)
        self.assertIn('joint unsharpness', names)

    def test_effect_serialization(self):
        report = run_report(MzConfig(Experiment.MARKING), PLUS)
        effect = report['povm']['effects']['11']
        self.assertEqual(np.shape(effect), (2, 2, 2))
        self.assertEqual(report['marginals']['G']['classification'], 'sharp')

    def test_impossible_condition_is_null(self):
        report = run_report(MzConfig(Experiment.MARKING), [1, 0])
        self.assertIsNone(report['conditional_probabilities']['2'])
        self.assertAlmostEqual(report['conditional_probabilities']['1']['1'], 1.0, places=12)

    def test_canonical_json(self):
        text = canonical_json(run_report(MzConfig(Experiment.ERASURE), PLUS))
        self.assertEqual(canonical_json(json.loads(text)), text)
        with self.assertRaises(ValueError):
            canonical_json({'x': math.nan})


class SweepTests(SimpleTestCase):
    def test_quantitative_contrasts(self):
        template = MzConfig(Experiment.QUANTITATIVE, -math.pi / 2)
        frame = sweep_frame(template, 'theta', 0.0, math.pi / 2, 5, PLUS)
        self.assertEqual(list(frame.columns), SWEEP_COLUMNS)
        self.assertEqual(len(frame), 5)
        np.testing.assert_allclose(frame['G_contrast'], np.cos(frame['param_value']), atol=1e-12)
        np.testing.assert_allclose(frame['F_contrast'], np.sin(frame['param_value']), atol=1e-12)
        np.testing.assert_allclose(frame['duality_slack'], 0.0, atol=1e-9)

    def test_erasure_detector_contrast(self):
        frame = sweep_frame(MzConfig(Experiment.ERASURE), 'delta', 0.0, math.pi / 2, 4, PLUS)
        np.testing.assert_allclose(frame['F_contrast'], np.cos(frame['param_value']), atol=1e-12)

    def test_unmarked_rows_leave_fields_empty(self):
        frame = sweep_frame(MzConfig(Experiment.INTERFERENCE), 'delta', -1.0, 1.0, 2, PLUS)
        lines = sweep_csv(frame).splitlines()
        self.assertEqual(lines[0], ','.join(SWEEP_COLUMNS))
        self.assertEqual(len(lines), 3)
        row = lines[1].split(',')
        self.assertEqual(len(row), len(SWEEP_COLUMNS))
        self.assertEqual(row[SWEEP_COLUMNS.index('p12')], '')
        self.assertEqual(row[SWEEP_COLUMNS.index('D')], '')
        self.assertEqual(row[0], '-1')
