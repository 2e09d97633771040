"""
Machine-readable output: the JSON report of a single run and the sweep table.

JSON is canonical (sorted keys, no NaN, Python's shortest round-trip floats),
complex numbers are [re, im] pairs and matrices are row-major lists of rows.
"""
import dataclasses
import json
import logging
import math

import numpy as np
import pandas as pd

from . import qubit
from .exceptions import ZeroProbabilityCondition
from .extraction import closed_form, conditional_probability, extract_povm, group_marginals, measurement_scheme
from .interferometer import Experiment, MzConfig, probes_for
from .oracle import direct_probabilities
from .povm import UnsharpPair, contrast, pauli_pvm, validate
from .relations import (
    contrasts,
    distinguishability,
    duality_relations,
    entropic_bound,
    erasure_duality,
    joint_measurement_relations,
    marked_state,
    triple_relations,
    variance_ur,
    visibility_reduced,
)

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = [
    'param_value', 'p11', 'p12', 'p21', 'p22',
    'F_contrast', 'G_contrast', 'H_contrast',
    'C_P', 'C_Ix', 'D', 'V_e', 'duality_slack',
]


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, allow_nan=False)


def complex_pair(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def matrix_pairs(m) -> list[list[list[float]]]:
    return [[complex_pair(z) for z in row] for row in np.asarray(m)]


def povm_payload(p) -> dict:
    return {
        'classification': validate(p).kind,
        'effects': {effect.label: matrix_pairs(effect.operator) for effect in p},
    }


def run_report(config: MzConfig, psi) -> dict:
    psi = qubit.ket(psi, dim=2)
    alpha, beta = complex(psi[0]), complex(psi[1])
    rho = qubit.DensityOperator.from_ket(psi)
    probes = probes_for(config)
    scheme = measurement_scheme(config, probes)
    povm = extract_povm(scheme)

    relations = [variance_ur(rho), *triple_relations(rho), *duality_relations(rho)]
    relations.append(entropic_bound(pauli_pvm('z'), pauli_pvm('x'), psi))

    report = {
        'experiment': str(config.experiment),
        'config': {name: getattr(config, name) for name in ('delta', 'gamma', 'theta')},
        'effective_delta': config.effective_delta,
        'input': [complex_pair(alpha), complex_pair(beta)],
        'probabilities': direct_probabilities(scheme, psi),
        'povm': povm_payload(povm),
        'marginals': {},
        'conditional_probabilities': {},
    }

    if config.is_marked:
        marginals = group_marginals(povm)
        report['marginals'] = {
            name: {**povm_payload(p), 'contrast': contrast(p)} for name, p in marginals.items()
        }
        for label in ('1', '2'):
            try:
                report['conditional_probabilities'][label] = conditional_probability(povm, label, psi)
            except ZeroProbabilityCondition as e:
                logger.info('No conditional probabilities for probe outcome %s: %s', label, e)
                report['conditional_probabilities'][label] = None

        result = distinguishability(alpha, beta, probes.p1, probes.p2)
        rho_e = qubit.partial_trace_probe(marked_state(alpha, beta, probes.p1, probes.p2))
        v_e, n = visibility_reduced(rho_e)
        report['distinguishability'] = {
            'D': result.D,
            'L': result.L,
            'r0': None if result.r0 is None else list(dataclasses.astuple(result.r0)),
        }
        report['visibility'] = {'V_e': v_e, 'n': list(dataclasses.astuple(n))}
        relations.extend(erasure_duality(alpha, beta, probes.p1, probes.p2))

        if config.experiment == Experiment.QUANTITATIVE and abs(math.cos(config.delta)) <= qubit.STRUCTURE_TOL:
            # at delta = +-pi/2 the marginals are the unbiased sigma_x / sigma_z pair
            closed = closed_form(config)
            pair = UnsharpPair(contrast(closed['F']), contrast(closed['G']))
            relations.extend(joint_measurement_relations(pair, rho))

    report['relations'] = [r.as_dict() for r in relations]
    return report


def sweep_row(config: MzConfig, psi) -> dict:
    alpha, beta = complex(psi[0]), complex(psi[1])
    probes = probes_for(config)
    scheme = measurement_scheme(config, probes)
    povm = extract_povm(scheme)
    probabilities = direct_probabilities(scheme, psi)
    row = dict.fromkeys(SWEEP_COLUMNS, math.nan)

    if config.is_marked:
        row.update({f'p{label}': value for label, value in probabilities.items()})
        for name, p in group_marginals(povm).items():
            row[f'{name}_contrast'] = contrast(p)
        marked = marked_state(alpha, beta, probes.p1, probes.p2)
        rho_e = qubit.partial_trace_probe(marked)
        d = distinguishability(alpha, beta, probes.p1, probes.p2).D
        v_e, _ = visibility_reduced(rho_e)
        row.update({'D': d, 'V_e': v_e, 'duality_slack': 1 - (d ** 2 + v_e ** 2)})
    else:
        row['p11'], row['p21'] = probabilities['1'], probabilities['2']
        row['F_contrast'] = contrast(povm)
        rho_e = qubit.DensityOperator.from_ket(psi)

    c = contrasts(rho_e)
    row['C_P'], row['C_Ix'] = c.path, c.interference_x
    return row


def sweep_frame(template: MzConfig, param: str, start: float, stop: float, steps: int, psi) -> pd.DataFrame:
    """One row per value of ``param``, in increasing order."""
    psi = qubit.ket(psi, dim=2)
    rows = []
    for value in np.linspace(start, stop, steps):
        config = dataclasses.replace(template, **{param: float(value)})
        row = sweep_row(config, psi)
        row['param_value'] = float(value)
        rows.append(row)
    return pd.DataFrame(rows, columns=SWEEP_COLUMNS)


def sweep_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, na_rep='', float_format='%.17g', lineterminator='\n')
