"""
The measured input POVM of a measurement scheme, the closed-form POVMs of the
marked experiments and conditional detector probabilities.

A scheme is (U, p0, {M_kl}). The effect of output kl has matrix elements

    E_kl[i, j] = <i| <p0| U^dagger M_kl U |p0> |j>

computed directly on the basis inputs |1> (x) p0 and |2> (x) p0.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from . import qubit
from .exceptions import InvalidScheme, NotNormalized, UnsupportedExperiment, ZeroProbabilityCondition
from .interferometer import (
    Experiment,
    MzConfig,
    ProbeTriple,
    marking_unitary,
    mz_evolution,
    output_projection,
    pointers_for,
    probes_for,
)
from .povm import JOINT_GROUPINGS, DiscretePovm, Effect, marginal
from .qubit import I2, STRUCTURE_TOL, frozen, ket, pauli, tensor

logger = logging.getLogger(__name__)

UNITARY_TOL = 1e-12
ZERO_PROBABILITY = 1e-12
DETECTOR_LABELS = ('1', '2')


@dataclass(frozen=True, eq=False)
class MeasurementScheme:
    unitary: np.ndarray
    probe_init: np.ndarray
    outputs: tuple[tuple[str, np.ndarray], ...]

    def __post_init__(self):
        u = qubit.require_finite(np.asarray(self.unitary, dtype=complex), 'scheme unitary')
        if u.shape != (4, 4):
            raise InvalidScheme(params={'reason': f'unitary has shape {u.shape}'})
        defect = qubit.unitarity_defect(u)
        if defect > UNITARY_TOL:
            raise InvalidScheme(params={'reason': f'unitarity defect {defect:.3g}'})
        try:
            probe_init = ket(self.probe_init, dim=2)
        except NotNormalized as e:
            raise InvalidScheme(params={'reason': str(e)}) from e

        outputs = tuple((str(label), frozen(m)) for label, m in self.outputs)
        if not outputs:
            raise InvalidScheme(params={'reason': 'no outputs'})
        for label, m in outputs:
            if m.shape != (4, 4):
                raise InvalidScheme(params={'reason': f'output {label} has shape {m.shape}'})
            idempotence = float(np.max(np.abs(m @ m - m)))
            if idempotence > STRUCTURE_TOL or not qubit.is_hermitian(m):
                raise InvalidScheme(params={'reason': f'output {label} is not a projection'})
        completeness = float(np.max(np.abs(sum(m for _, m in outputs) - qubit.I4)))
        if completeness > STRUCTURE_TOL:
            raise InvalidScheme(params={'reason': f'outputs sum to I4 only within {completeness:.3g}'})

        object.__setattr__(self, 'unitary', frozen(u))
        object.__setattr__(self, 'probe_init', probe_init)
        object.__setattr__(self, 'outputs', outputs)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.outputs)

    def final_state(self, psi) -> np.ndarray:
        return self.unitary @ np.kron(ket(psi, dim=2), self.probe_init)


def measurement_scheme(config: MzConfig, probes: ProbeTriple | None = None, pointers=None,
                       completion_phase: float = 0.0) -> MeasurementScheme:
    """
    Scheme for ``config``. Without a pointer pair only the detectors are read
    (outputs '1', '2'); with one the outputs are 11, 21, 12, 22 (detector
    first, pointer second).
    """
    probes = probes or probes_for(config)
    if pointers is None:
        pointers = pointers_for(config, probes)
    unitary = tensor(mz_evolution(config.effective_delta), I2) @ marking_unitary(probes, completion_phase)
    if pointers is None:
        outputs = tuple((str(k), output_projection(k)) for k in (1, 2))
    else:
        outputs = tuple(
            (f'{k}{l}', output_projection(k, pointers[l - 1]))
            for l in (1, 2)
            for k in (1, 2)
        )
    return MeasurementScheme(unitary, probes.p0, outputs)


def extract_povm(s: MeasurementScheme) -> DiscretePovm:
    # columns: U (|1> (x) p0), U (|2> (x) p0)
    inputs = np.column_stack([np.kron(basis, s.probe_init) for basis in np.eye(2, dtype=complex)])
    evolved = s.unitary @ inputs
    effects = []
    for label, m in s.outputs:
        e = evolved.conj().T @ m @ evolved
        effects.append(Effect(label, (e + e.conj().T) / 2))
    povm = DiscretePovm(tuple(effects))
    logger.debug('Extracted POVM with outcomes %s', ','.join(povm.labels))
    return povm


# --- CLOSED FORMS ---
@dataclass(frozen=True, eq=False)
class ClosedForm:
    """Four-outcome POVM with its detector (F), probe (G) and coincidence (H) marginals."""

    joint: DiscretePovm
    marginals: dict[str, DiscretePovm]

    def __getitem__(self, name: str) -> DiscretePovm:
        return self.marginals[name]

    def perturbed(self, epsilon: float, label: str = '11') -> ClosedForm:
        """Copy with epsilon * I added to one joint effect."""
        operators = self.joint.as_dict()
        operators[label] = operators[label] + epsilon * I2
        return ClosedForm(DiscretePovm.from_operators(operators), self.marginals)


def _pair(first: np.ndarray) -> DiscretePovm:
    return DiscretePovm((Effect('1', first), Effect('2', I2 - first)))


def _marking(delta: float) -> ClosedForm:
    cos_sq, sin_sq = math.cos(delta / 2) ** 2, math.sin(delta / 2) ** 2
    up, down = 0.5 * (I2 + pauli('z')), 0.5 * (I2 - pauli('z'))
    joint = DiscretePovm.from_operators({
        '11': cos_sq * up,
        '21': sin_sq * up,
        '12': sin_sq * down,
        '22': cos_sq * down,
    })
    return ClosedForm(joint, {
        'F': _pair(0.5 * (I2 + math.cos(delta) * pauli('z'))),
        'G': _pair(up),
        'H': _pair(cos_sq * I2),
    })


def _erasure(delta: float, gamma: float) -> ClosedForm:
    sd, cd = math.sin(delta), math.cos(delta)
    # sin(delta) (cos(gamma) sigma_x + sin(gamma) sigma_y)
    m = sd * (math.cos(gamma) * pauli('x') + math.sin(gamma) * pauli('y'))
    z = cd * pauli('z')
    joint = DiscretePovm.from_operators({
        '11': 0.25 * (I2 - m + z),
        '21': 0.25 * (I2 + m - z),
        '12': 0.25 * (I2 + m + z),
        '22': 0.25 * (I2 - m - z),
    })
    return ClosedForm(joint, {
        'F': _pair(0.5 * (I2 + z)),
        'G': _pair(0.5 * I2),
        'H': _pair(0.5 * (I2 - m)),
    })


def _quantitative(delta: float, theta: float) -> ClosedForm:
    sd, cd = math.sin(delta), math.cos(delta)
    st, ct = math.sin(theta), math.cos(theta)
    x, z = pauli('x'), pauli('z')
    joint = DiscretePovm.from_operators({
        '11': 0.25 * ((1 + ct * cd) * I2 - sd * st * x + (cd + ct) * z),
        '21': 0.25 * ((1 - ct * cd) * I2 + sd * st * x + (ct - cd) * z),
        '12': 0.25 * ((1 - ct * cd) * I2 - sd * st * x + (cd - ct) * z),
        '22': 0.25 * ((1 + ct * cd) * I2 + sd * st * x - (ct + cd) * z),
    })
    return ClosedForm(joint, {
        'F': _pair(0.5 * (I2 - sd * st * x + cd * z)),
        'G': _pair(0.5 * (I2 + ct * z)),
        'H': _pair(0.5 * (1 + ct * cd) * I2),
    })


def closed_form(config: MzConfig) -> ClosedForm:
    match config.experiment:
        case Experiment.MARKING:
            return _marking(config.delta)
        case Experiment.ERASURE:
            return _erasure(config.delta, config.gamma)
        case Experiment.QUANTITATIVE:
            return _quantitative(config.delta, config.theta)
    raise UnsupportedExperiment(params={'experiment': str(config.experiment)})


def group_marginals(joint: DiscretePovm) -> dict[str, DiscretePovm]:
    """F (by detector), G (by pointer) and H (coincidences) of a four-outcome POVM."""
    return {name: marginal(joint, grouping) for name, grouping in JOINT_GROUPINGS.items()}


def conditional_probability(joint: DiscretePovm, condition: str, psi) -> dict[str, float]:
    """prob(D_k | pointer outcome l) = <psi|E_kl|psi> / <psi|G_l|psi> for k = 1, 2."""
    psi = ket(psi, dim=2)
    probe_marginal = marginal(joint, JOINT_GROUPINGS['G'])
    denominator = float(np.vdot(psi, probe_marginal[condition] @ psi).real)
    if denominator <= ZERO_PROBABILITY:
        raise ZeroProbabilityCondition(params={'label': condition, 'probability': denominator})
    return {
        k: float(np.vdot(psi, joint[f'{k}{condition}'] @ psi).real) / denominator
        for k in DETECTOR_LABELS
    }
