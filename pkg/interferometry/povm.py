"""
Discrete POVMs on the photon qubit.

The joint observable of the unsharp sigma_x / sigma_z pair uses the label
order 11, 21, 12, 22. The first index is the sigma_x outcome and the second
the sigma_z outcome, so grouping by the first index yields
F = {1/2 (I +- f sigma_x)} and grouping by the second yields
G = {1/2 (I +- g sigma_z)}.
"""
from __future__ import annotations

from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np

from . import qubit
from .exceptions import (
    DimensionMismatch,
    InvalidPovm,
    InvalidStochasticMatrix,
    NotAPartition,
    NotJointlyMeasurable,
    NotSharp,
    NotTwoOutcome,
)
from .qubit import I2, STRUCTURE_TOL, DensityOperator, eig_hermitian, frozen, pauli

MAX_OUTCOMES = 8
STOCHASTIC_TOL = 1e-12
JOINT_LABELS = ('11', '21', '12', '22')


@dataclass(frozen=True, eq=False)
class Effect:
    label: str
    operator: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'label', str(self.label))
        object.__setattr__(self, 'operator', frozen(qubit.require_finite(self.operator, f'effect {self.label}')))

    def probability(self, rho: DensityOperator) -> float:
        return float(np.trace(self.operator @ rho.matrix).real)


@dataclass(frozen=True, eq=False)
class DiscretePovm:
    effects: tuple[Effect, ...]

    def __post_init__(self):
        effects = tuple(self.effects)
        if not 1 <= len(effects) <= MAX_OUTCOMES:
            raise DimensionMismatch(params={'expected': f'1..{MAX_OUTCOMES} outcomes', 'actual': len(effects)})
        labels = [e.label for e in effects]
        if len(set(labels)) != len(labels):
            raise NotAPartition(params={'reason': f'duplicate labels {labels}'})
        shapes = {e.operator.shape for e in effects}
        if len(shapes) != 1:
            raise DimensionMismatch(params={'expected': 'equal effect shapes', 'actual': sorted(shapes)})
        object.__setattr__(self, 'effects', effects)

    @classmethod
    def from_operators(cls, operators: Mapping[str, np.ndarray]) -> DiscretePovm:
        return cls(tuple(Effect(label, op) for label, op in operators.items()))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(e.label for e in self.effects)

    @property
    def dimension(self) -> int:
        return self.effects[0].operator.shape[0]

    def __len__(self):
        return len(self.effects)

    def __iter__(self) -> Iterator[Effect]:
        return iter(self.effects)

    def __getitem__(self, label: str) -> np.ndarray:
        for effect in self.effects:
            if effect.label == label:
                return effect.operator
        raise KeyError(label)

    def total(self) -> np.ndarray:
        return sum((e.operator for e in self.effects), np.zeros_like(self.effects[0].operator))

    def probabilities(self, rho: DensityOperator) -> dict[str, float]:
        return {e.label: e.probability(rho) for e in self.effects}

    def as_dict(self) -> dict[str, np.ndarray]:
        return {e.label: e.operator for e in self.effects}

    def full_clean(self, tol: float = STRUCTURE_TOL) -> Classification:
        """Validate and raise InvalidPovm listing every broken invariant."""
        result = validate(self, tol)
        if not result.valid:
            raise InvalidPovm(params={'violations': '; '.join(str(v) for v in result.violations)})
        return result


# --- CLASSIFICATION ---
@dataclass(frozen=True)
class Violation:
    invariant: str
    label: str
    excess: float

    def __str__(self):
        return f'{self.invariant} at {self.label} by {self.excess:.3g}'


@dataclass(frozen=True)
class Classification:
    valid: bool
    sharp: bool
    trivial: bool
    violations: tuple[Violation, ...] = field(default=())

    @property
    def kind(self) -> str:
        if not self.valid:
            return 'invalid'
        if self.trivial:
            return 'trivial'
        return 'sharp' if self.sharp else 'unsharp'


def validate(p: DiscretePovm, tol: float = STRUCTURE_TOL) -> Classification:
    """
    Check positivity, E <= I and normalization; classify as sharp and/or trivial.

    Never raises for an invalid family: the violations are returned.
    """
    violations = []
    identity = np.eye(p.dimension)
    for effect in p.effects:
        op = effect.operator
        defect = qubit.hermitian_defect(op)
        if defect > tol:
            violations.append(Violation('hermitian', effect.label, defect))
            continue
        spectrum = [value for value, _ in eig_hermitian(op)]
        if spectrum[-1] < -tol:
            violations.append(Violation('positive', effect.label, -spectrum[-1]))
        if spectrum[0] > 1 + tol:
            violations.append(Violation('bounded by identity', effect.label, spectrum[0] - 1))
    normalization = float(np.max(np.abs(p.total() - identity)))
    if normalization > tol:
        violations.append(Violation('sums to identity', '*', normalization))

    sharp = all(np.max(np.abs(e.operator @ e.operator - e.operator)) <= tol for e in p.effects)
    trivial = all(_is_multiple_of_identity(e.operator, tol) for e in p.effects)
    return Classification(not violations, sharp, trivial, tuple(violations))


def _is_multiple_of_identity(op: np.ndarray, tol: float) -> bool:
    scale = np.trace(op) / op.shape[0]
    return float(np.max(np.abs(op - scale * np.eye(op.shape[0])))) <= tol


def spectral_measure(a, labels: Sequence[str] | None = None, tol: float = STRUCTURE_TOL) -> DiscretePovm:
    """PVM of a Hermitian operator, degenerate eigenvalues grouped, eigenvalues descending."""
    groups: list[list] = []
    for value, vector in eig_hermitian(a):
        if groups and abs(groups[-1][0] - value) <= tol:
            groups[-1][1] = groups[-1][1] + np.outer(vector, vector.conj())
        else:
            groups.append([value, np.outer(vector, vector.conj())])
    labels = labels or [str(i + 1) for i in range(len(groups))]
    if len(labels) != len(groups):
        raise DimensionMismatch(params={'expected': len(groups), 'actual': len(labels)})
    return DiscretePovm(tuple(Effect(label, proj) for label, (_, proj) in zip(labels, groups)))


def pauli_pvm(axis: str) -> DiscretePovm:
    """{1/2 (I + sigma), 1/2 (I - sigma)} with labels '1', '2'."""
    s = pauli(axis)
    return DiscretePovm((Effect('1', 0.5 * (I2 + s)), Effect('2', 0.5 * (I2 - s))))


def interference_observable(xi: float) -> np.ndarray:
    """cos(xi) sigma_x + sin(xi) sigma_y."""
    return frozen(np.cos(xi) * pauli('x') + np.sin(xi) * pauli('y'))


def interference_pvm(xi: float) -> DiscretePovm:
    s = interference_observable(xi)
    return DiscretePovm((Effect('1', 0.5 * (I2 + s)), Effect('2', 0.5 * (I2 - s))))


# --- SMEARING ---
@dataclass(frozen=True, eq=False)
class StochasticMatrix:
    """w[l, k] >= 0 with every column summing to 1 (rows: new outcomes, columns: sharp ones)."""

    w: np.ndarray

    def __post_init__(self):
        w = np.array(self.w, dtype=float)
        if w.ndim != 2:
            raise InvalidStochasticMatrix(params={'reason': f'expected a matrix, got shape {w.shape}'})
        if not np.all(np.isfinite(w)):
            raise InvalidStochasticMatrix(params={'reason': 'non-finite entry'})
        if np.min(w) < 0:
            raise InvalidStochasticMatrix(params={'reason': f'negative entry {np.min(w):.3g}'})
        column_defect = float(np.max(np.abs(w.sum(axis=0) - 1)))
        if column_defect > STOCHASTIC_TOL:
            raise InvalidStochasticMatrix(params={'reason': f'column sums off by {column_defect:.3g}'})
        w.setflags(write=False)
        object.__setattr__(self, 'w', w)

    @property
    def shape(self) -> tuple[int, int]:
        return self.w.shape


def smear(sharp: DiscretePovm, w: StochasticMatrix) -> DiscretePovm:
    """E_l = sum_k w[l, k] P_k."""
    if not isinstance(w, StochasticMatrix):
        w = StochasticMatrix(w)
    result = validate(sharp)
    if not (result.valid and result.sharp):
        raise NotSharp(params={'which': 'to smear'})
    rows, columns = w.shape
    if columns != len(sharp):
        raise DimensionMismatch(params={'expected': len(sharp), 'actual': columns})
    projections = [e.operator for e in sharp.effects]
    return DiscretePovm(tuple(
        Effect(str(l + 1), sum(w.w[l, k] * projections[k] for k in range(columns)))
        for l in range(rows)
    ))


def marginal(p: DiscretePovm, grouping: Mapping[str, Sequence[str]]) -> DiscretePovm:
    """Coarse-grain: each new outcome is the sum of the effects of its group."""
    seen: list[str] = [label for group in grouping.values() for label in group]
    if len(seen) != len(set(seen)):
        raise NotAPartition(params={'reason': 'a label appears in two groups'})
    if set(seen) != set(p.labels):
        missing = sorted(set(p.labels) - set(seen))
        unknown = sorted(set(seen) - set(p.labels))
        raise NotAPartition(params={'reason': f'missing {missing}, unknown {unknown}'})
    if any(len(group) == 0 for group in grouping.values()):
        raise NotAPartition(params={'reason': 'empty group'})
    return DiscretePovm(tuple(
        Effect(new_label, sum(p[label] for label in group))
        for new_label, group in grouping.items()
    ))


# --- THE UNSHARP sigma_x / sigma_z PAIR ---
@dataclass(frozen=True)
class UnsharpPair:
    f: float
    g: float

    def __post_init__(self):
        qubit.require_finite([self.f, self.g], 'unsharpness parameters')
        for name in ('f', 'g'):
            if abs(getattr(self, name)) > 1:
                raise InvalidStochasticMatrix(params={'reason': f'|{name}| = {abs(getattr(self, name)):.12g} > 1'})

    @property
    def radius_sq(self) -> float:
        return self.f ** 2 + self.g ** 2


def unsharp_x(f: float) -> DiscretePovm:
    """F = {1/2 (I +- f sigma_x)}, the smeared spectral measure of sigma_x."""
    return DiscretePovm((Effect('1', 0.5 * (I2 + f * pauli('x'))), Effect('2', 0.5 * (I2 - f * pauli('x')))))


def unsharp_z(g: float) -> DiscretePovm:
    """G = {1/2 (I +- g sigma_z)}."""
    return DiscretePovm((Effect('1', 0.5 * (I2 + g * pauli('z'))), Effect('2', 0.5 * (I2 - g * pauli('z')))))


def jointly_measurable(pair: UnsharpPair, tol: float = 1e-12) -> bool:
    return pair.radius_sq <= 1 + tol


def joint_xz(pair: UnsharpPair, tol: float = STRUCTURE_TOL) -> DiscretePovm:
    """E_kl = 1/4 (I +- f sigma_x +- g sigma_z) in the order 11, 21, 12, 22."""
    if pair.radius_sq > 1 + tol:
        raise NotJointlyMeasurable(params={'radius_sq': pair.radius_sq})
    fx, gz = pair.f * pauli('x'), pair.g * pauli('z')
    return DiscretePovm((
        Effect('11', 0.25 * (I2 + fx + gz)),
        Effect('21', 0.25 * (I2 - fx + gz)),
        Effect('12', 0.25 * (I2 + fx - gz)),
        Effect('22', 0.25 * (I2 - fx - gz)),
    ))


JOINT_GROUPINGS = {
    # detector / first index
    'F': {'1': ('11', '12'), '2': ('21', '22')},
    # probe / second index
    'G': {'1': ('11', '21'), '2': ('12', '22')},
    # coincidences
    'H': {'1': ('11', '22'), '2': ('12', '21')},
}


# --- CONTRAST AND UNSHARPNESS ---
def two_outcome_form(p: DiscretePovm) -> tuple[float, np.ndarray]:
    """(b, u) with the first effect written as 1/2 ((1 + b) I + u . sigma)."""
    if len(p) != 2:
        raise NotTwoOutcome(params={'count': len(p)})
    first = p.effects[0].operator
    if first.shape != (2, 2):
        raise DimensionMismatch(params={'expected': (2, 2), 'actual': first.shape})
    b = float(np.trace(first).real) - 1
    u = np.array([float(np.trace(first @ s).real) for s in qubit.pauli_vector()])
    return b, u


def contrast(p: DiscretePovm) -> float:
    """max over states of |tr rho E1 - tr rho E2| = |b| + |u|, clamped to [0, 1]."""
    b, u = two_outcome_form(p)
    return float(min(1.0, max(0.0, abs(b) + np.linalg.norm(u))))


def unsharpness(p: DiscretePovm) -> float:
    """U = 1 - C^2, the minimum over states of the +-1 outcome variance."""
    return 1.0 - contrast(p) ** 2


def outcome_variance(p: DiscretePovm, rho: DensityOperator) -> float:
    """Variance of the +-1-valued distribution of a two-outcome POVM."""
    if len(p) != 2:
        raise NotTwoOutcome(params={'count': len(p)})
    first, second = (e.probability(rho) for e in p.effects)
    return 1.0 - (first - second) ** 2
