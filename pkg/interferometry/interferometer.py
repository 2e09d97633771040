"""
Mach-Zehnder optical elements, the path-marking coupling and the evolved
photon x probe states of the five experiments.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from django.db import models

from . import qubit
from .exceptions import InvalidBasis, InvalidScheme, NonFiniteValue
from .qubit import STRUCTURE_TOL, frozen, ket, projector, tensor, unit_ket


class Experiment(models.TextChoices):
    PATH = 'path', 'Path detection'
    INTERFERENCE = 'interference', 'Interference detection'
    MARKING = 'marking', 'Path marking'
    ERASURE = 'erasure', 'Quantum erasure'
    QUANTITATIVE = 'quantitative', 'Quantitative erasure'


DEFAULT_DELTA = {
    Experiment.PATH: 0.0,
    Experiment.INTERFERENCE: -math.pi / 2,
    Experiment.MARKING: 0.0,
    Experiment.ERASURE: -math.pi / 2,
    Experiment.QUANTITATIVE: -math.pi / 2,
}

# probe basis |q1>, |q2>
Q1 = frozen([1, 0])
Q2 = frozen([0, 1])


@dataclass(frozen=True)
class MzConfig:
    """
    One interferometer setting. Angles the experiment does not use are kept
    but ignored; path detection always runs at delta = 0.
    """

    experiment: Experiment
    delta: float = 0.0
    gamma: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'experiment', Experiment(self.experiment))
        for name in ('delta', 'gamma', 'theta'):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise NonFiniteValue(params={'what': name})
            object.__setattr__(self, name, value)

    @classmethod
    def for_experiment(cls, experiment, delta: float | None = None, gamma: float = 0.0, theta: float = 0.0) -> MzConfig:
        experiment = Experiment(experiment)
        if delta is None:
            delta = DEFAULT_DELTA[experiment]
        return cls(experiment, delta, gamma, theta)

    @property
    def effective_delta(self) -> float:
        return 0.0 if self.experiment == Experiment.PATH else self.delta

    @property
    def is_marked(self) -> bool:
        return self.experiment in (Experiment.MARKING, Experiment.ERASURE, Experiment.QUANTITATIVE)


@dataclass(frozen=True, eq=False)
class ProbeTriple:
    """Neutral probe state p0 and the marker states p1, p2."""

    p0: np.ndarray = field(default_factory=lambda: Q1)
    p1: np.ndarray = field(default_factory=lambda: Q1)
    p2: np.ndarray = field(default_factory=lambda: Q1)

    def __post_init__(self):
        for name in ('p0', 'p1', 'p2'):
            object.__setattr__(self, name, unit_ket(getattr(self, name), dim=2))

    @classmethod
    def unmarked(cls) -> ProbeTriple:
        return cls(Q1, Q1, Q1)

    @classmethod
    def orthogonal(cls) -> ProbeTriple:
        return cls(Q1, Q1, Q2)

    @classmethod
    def tilted(cls, theta: float) -> ProbeTriple:
        p1, p2 = marker_states(theta)
        return cls(Q1, p1, p2)

    @property
    def overlap(self) -> complex:
        """<p1|p2>."""
        return complex(np.vdot(self.p1, self.p2))


# --- OPTICAL ELEMENTS ---
def mz_evolution(delta: float) -> np.ndarray:
    """Beam splitter, mirrors, phase shifter PS_delta and second beam splitter as one unitary."""
    c = np.exp(1j * delta)
    a = -(1 + c) / 2
    b = 1j * (c - 1) / 2
    return frozen([[a, -b], [b, a]])


def marker_states(theta: float) -> tuple[np.ndarray, np.ndarray]:
    """Markers tilted by theta; <p1|p2> = sin(theta)."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return frozen([c, s]), frozen([s, c])


def perpendicular(v) -> np.ndarray:
    """(a, b) -> (-conj(b), conj(a))."""
    a, b = np.asarray(v, dtype=complex)
    return frozen([-np.conj(b), np.conj(a)])


def marking_unitary(probes: ProbeTriple, completion_phase: float = 0.0) -> np.ndarray:
    """
    |1><1| (x) V1 + |2><2| (x) V2 with V_k |p0> = |p_k>.

    Off the inputs psi (x) p0 the coupling is completed by
    V_k |p0_perp> = exp(i chi) |p_k_perp>; every chi gives the same measured
    observable.
    """
    p0_perp = perpendicular(probes.p0)
    phase = np.exp(1j * completion_phase)
    blocks = []
    for marker in (probes.p1, probes.p2):
        v = np.outer(marker, probes.p0.conj()) + phase * np.outer(perpendicular(marker), p0_perp.conj())
        blocks.append(v)
    u = tensor(projector(Q1), blocks[0]) + tensor(projector(Q2), blocks[1])
    defect = qubit.unitarity_defect(u)
    if defect > STRUCTURE_TOL:
        raise InvalidScheme(params={'reason': f'coupling unitarity defect {defect:.3g}'})
    return frozen(u)


def final_state(psi, probes: ProbeTriple, config: MzConfig) -> np.ndarray:
    """(U_mz (x) I) . coupling . (psi (x) p0)."""
    psi = ket(psi, dim=2)
    evolution = tensor(mz_evolution(config.effective_delta), qubit.I2) @ marking_unitary(probes)
    out = evolution @ np.kron(psi, probes.p0)
    return frozen(out)


def output_projection(k: int, pointer=None) -> np.ndarray:
    """
    M_kl = |k><k| (x) |r_l><r_l|. Without a pointer the probe is not read and
    the projection is |k><k| (x) I.
    """
    if k not in (1, 2):
        raise ValueError(f'Detector index must be 1 or 2, got {k!r}.')
    detector = projector(Q1 if k == 1 else Q2)
    if pointer is None:
        return tensor(detector, qubit.I2)
    return tensor(detector, projector(unit_ket(pointer, dim=2)))


# --- POINTER BASES ---
def erasure_pointers(gamma: float, probes: ProbeTriple | None = None) -> tuple[np.ndarray, np.ndarray]:
    """(p1 +- exp(i gamma) p2) / sqrt 2; requires orthogonal markers."""
    probes = probes or ProbeTriple.orthogonal()
    overlap = abs(probes.overlap)
    if overlap > STRUCTURE_TOL:
        raise InvalidBasis(params={'defect': overlap})
    phase = np.exp(1j * gamma)
    r1 = (probes.p1 + phase * probes.p2) / math.sqrt(2)
    r2 = (probes.p1 - phase * probes.p2) / math.sqrt(2)
    return ket(r1, dim=2), ket(r2, dim=2)


def probes_for(config: MzConfig) -> ProbeTriple:
    if config.experiment in (Experiment.PATH, Experiment.INTERFERENCE):
        return ProbeTriple.unmarked()
    if config.experiment == Experiment.QUANTITATIVE:
        return ProbeTriple.tilted(config.theta)
    return ProbeTriple.orthogonal()


def pointers_for(config: MzConfig, probes: ProbeTriple) -> tuple[np.ndarray, np.ndarray] | None:
    """Orthonormal probe readout basis, or None when the probe is not read."""
    match config.experiment:
        case Experiment.MARKING:
            pointers = (probes.p1, probes.p2)
        case Experiment.ERASURE:
            pointers = erasure_pointers(config.gamma, probes)
        case Experiment.QUANTITATIVE:
            pointers = (Q1, Q2)
        case _:
            return None
    gram = abs(np.vdot(*pointers))
    if gram > STRUCTURE_TOL:
        raise InvalidBasis(params={'defect': gram})
    return pointers
