"""
Uncertainty, duality and erasure relations, each evaluated into a
RelationReport so every relation is audited the same way.
"""
from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from django.db import models

from . import qubit
from .exceptions import NotNormalized, NotSharp
from .povm import DiscretePovm, Effect, UnsharpPair, outcome_variance, pauli_pvm, unsharp_x, unsharp_z, unsharpness, validate
from .qubit import I2, BlochVector, DensityOperator, bloch_of_ket, expectation, ket, pauli, variance

logger = logging.getLogger(__name__)

RELATION_TOL = 1e-9
ZERO_NORM = 1e-12


class RelationKind(models.TextChoices):
    GEQ = 'geq', '>='
    LEQ = 'leq', '<='
    EQ = 'eq', '='


@dataclass(frozen=True)
class RelationReport:
    name: str
    lhs: float
    rhs: float
    kind: RelationKind
    satisfied: bool
    slack: float
    details: dict = field(default_factory=dict, compare=False)

    @classmethod
    def evaluate(cls, name: str, lhs: float, rhs: float, kind: RelationKind,
                 tol: float = RELATION_TOL, **details) -> RelationReport:
        """
        slack is lhs - rhs for geq, rhs - lhs for leq and |lhs - rhs| for eq.
        Inequalities hold down to a slack of -tol; equalities up to tol.
        """
        kind = RelationKind(kind)
        lhs, rhs = float(lhs), float(rhs)
        if kind == RelationKind.EQ:
            slack = abs(lhs - rhs)
            satisfied = slack <= tol
        else:
            slack = lhs - rhs if kind == RelationKind.GEQ else rhs - lhs
            satisfied = slack >= -tol
        return cls(name, lhs, rhs, kind, satisfied, slack, {k: float(v) for k, v in details.items()})

    def as_dict(self) -> dict:
        return {
            'name': self.name,
            'lhs': self.lhs,
            'rhs': self.rhs,
            'kind': str(self.kind),
            'satisfied': self.satisfied,
            'slack': self.slack,
            'details': dict(self.details),
        }


def _rho(state) -> DensityOperator:
    if isinstance(state, DensityOperator):
        return state
    return DensityOperator.from_ket(state)


# --- VARIANCE AND ENTROPY ---
def variance_ur(rho: DensityOperator) -> RelationReport:
    """Var(x) Var(z) >= 1/4 |<[x, z]>|^2 + 1/4 (<{x, z}> - 2 <x><z>)^2."""
    x, z = pauli('x'), pauli('z')
    m = rho.matrix
    commutator = complex(np.trace((x @ z - z @ x) @ m))
    anticommutator = expectation(x @ z + z @ x, rho)
    lhs = variance(x, rho) * variance(z, rho)
    rhs = 0.25 * abs(commutator) ** 2 + 0.25 * (anticommutator - 2 * expectation(x, rho) * expectation(z, rho)) ** 2
    r = rho.bloch
    return RelationReport.evaluate(
        'variance uncertainty (x, z)', lhs, rhs, RelationKind.GEQ,
        # rhs = <y>^2 + <x>^2 <z>^2, and lhs - rhs = 1 - |r|^2
        identity_rhs=r.r2 ** 2 + r.r1 ** 2 * r.r3 ** 2,
        bloch_norm_sq=r.norm ** 2,
    )


def shannon_entropy(p: DiscretePovm, rho: DensityOperator) -> float:
    """Entropy in bits of the outcome distribution, 0 log 0 = 0."""
    probabilities = np.clip(np.array(list(p.probabilities(_rho(rho)).values())), 0.0, 1.0)
    nonzero = probabilities[probabilities > 0]
    return float(-np.sum(nonzero * np.log2(nonzero)))


def entropic_bound(a: DiscretePovm, b: DiscretePovm, psi) -> RelationReport:
    """
    H(A) + H(B) >= -2 log2 max |<psi|P_i Q_k|psi>| / (|P_i psi| |Q_k psi|).

    Terms where either projected vector is shorter than 1e-12 are left out.
    """
    for name, measure in (('A', a), ('B', b)):
        result = validate(measure)
        if not (result.valid and result.sharp):
            raise NotSharp(params={'which': name})
    psi = ket(psi)
    rho = DensityOperator.from_ket(psi)
    best = 0.0
    for p in a:
        p_psi = p.operator @ psi
        p_norm = np.linalg.norm(p_psi)
        if p_norm < ZERO_NORM:
            continue
        for q in b:
            q_psi = q.operator @ psi
            q_norm = np.linalg.norm(q_psi)
            if q_norm < ZERO_NORM:
                continue
            best = max(best, abs(np.vdot(p_psi, q_psi)) / (p_norm * q_norm))
    rhs = -2 * math.log2(min(1.0, best))
    lhs = shannon_entropy(a, rho) + shannon_entropy(b, rho)
    return RelationReport.evaluate('entropic uncertainty', lhs, rhs, RelationKind.GEQ)


def triple_relations(rho: DensityOperator) -> list[RelationReport]:
    entropies = [shannon_entropy(pauli_pvm(axis), rho) for axis in 'xyz']
    variances = [variance(pauli(axis), rho) for axis in 'xyz']
    c = contrasts(rho)
    return [
        RelationReport.evaluate('entropic triple (x, y, z)', sum(entropies), 2.0, RelationKind.GEQ),
        RelationReport.evaluate('variance triple (x, y, z)', sum(variances), 2.0, RelationKind.GEQ),
        RelationReport.evaluate(
            'contrast triple (P, Ix, Iy)', c.path ** 2 + c.interference_x ** 2 + c.interference_y ** 2,
            1.0, RelationKind.LEQ,
        ),
    ]


# --- CONTRASTS AND DUALITY ---
@dataclass(frozen=True)
class Contrasts:
    path: float
    interference_x: float
    interference_y: float
    visibility: float


def contrasts(rho: DensityOperator) -> Contrasts:
    r = rho.bloch
    return Contrasts(abs(r.r3), abs(r.r1), abs(r.r2), math.hypot(r.r1, r.r2))


def duality_relations(rho: DensityOperator) -> list[RelationReport]:
    c = contrasts(rho)
    return [
        RelationReport.evaluate('path/interference duality', c.path ** 2 + c.interference_x ** 2, 1.0, RelationKind.LEQ),
        RelationReport.evaluate(
            'path/interference variances', variance(pauli('z'), rho) + variance(pauli('x'), rho),
            1.0, RelationKind.GEQ,
        ),
    ]


def joint_measurement_relations(pair: UnsharpPair, rho: DensityOperator) -> list[RelationReport]:
    """U_F + U_G >= 1, and Var(F) + Var(G) >= U_F + U_G in every state."""
    f, g = unsharp_x(pair.f), unsharp_z(pair.g)
    total = unsharpness(f) + unsharpness(g)
    return [
        RelationReport.evaluate('joint unsharpness', total, 1.0, RelationKind.GEQ),
        RelationReport.evaluate(
            'joint variances', outcome_variance(f, rho) + outcome_variance(g, rho), total, RelationKind.GEQ,
        ),
    ]


# --- DISTINGUISHABILITY AND ERASURE ---
@dataclass(frozen=True)
class DistinguishabilityResult:
    """
    r0 is the optimal pointer direction, L the best probability of inferring
    the path correctly and D = 2L - 1. r0 is None when every pointer direction
    does equally well.
    """

    r0: BlochVector | None
    L: float
    D: float

    @property
    def degenerate(self) -> bool:
        return self.r0 is None


def _amplitudes(alpha, beta) -> tuple[complex, complex]:
    alpha, beta = ket([alpha, beta], dim=2)
    return complex(alpha), complex(beta)


def distinguishability(alpha, beta, p1, p2) -> DistinguishabilityResult:
    alpha, beta = _amplitudes(alpha, beta)
    p1, p2 = ket(p1, dim=2), ket(p2, dim=2)
    d = abs(alpha) ** 2 * bloch_of_ket(p1).as_array() - abs(beta) ** 2 * bloch_of_ket(p2).as_array()
    length = float(np.linalg.norm(d))
    if length < ZERO_NORM:
        logger.warning('Distinguishability direction is degenerate (|d| = %.3g); D = 0', length)
        return DistinguishabilityResult(None, 0.5, 0.0)
    L = 0.5 * (1 + min(1.0, length))
    return DistinguishabilityResult(BlochVector.from_array(d / length), L, 2 * L - 1)


def distinguishability_closed_form(alpha, beta, overlap) -> float:
    """sqrt(1 - 4 |alpha|^2 |beta|^2 |<p1|p2>|^2)."""
    alpha, beta = _amplitudes(alpha, beta)
    return math.sqrt(max(0.0, 1 - 4 * abs(alpha) ** 2 * abs(beta) ** 2 * abs(overlap) ** 2))


def coincidence_povm(p1, p2, r) -> DiscretePovm:
    """H0_1 = 1/2 ((1 + r.(p1 - p2)/2) I + r.(p1 + p2)/2 sigma_z), H0_2 = I - H0_1."""
    if not isinstance(r, BlochVector):
        r = BlochVector.from_array(r)
    r = r.as_array()
    b1, b2 = bloch_of_ket(ket(p1, dim=2)).as_array(), bloch_of_ket(ket(p2, dim=2)).as_array()
    first = 0.5 * ((1 + 0.5 * r @ (b1 - b2)) * I2 + 0.5 * (r @ (b1 + b2)) * pauli('z'))
    return DiscretePovm((Effect('1', first), Effect('2', I2 - first)))


def visibility_reduced(rho_e: DensityOperator) -> tuple[float, BlochVector]:
    """Largest |tr(rho_e n.sigma)| over equatorial n, and the maximizing n."""
    r = rho_e.bloch
    v = math.hypot(r.r1, r.r2)
    if v < ZERO_NORM:
        return 0.0, BlochVector(1.0, 0.0, 0.0)
    return v, BlochVector(r.r1 / v, r.r2 / v, 0.0)


def visibility_full_sphere(rho: DensityOperator) -> tuple[float, BlochVector]:
    """Largest |tr(rho n.sigma)| over all unit n."""
    r = rho.bloch
    if r.norm < ZERO_NORM:
        return 0.0, BlochVector(0.0, 0.0, 1.0)
    return r.norm, BlochVector.from_array(r.as_array() / r.norm)


def marked_state(alpha, beta, p1, p2) -> np.ndarray:
    """alpha |1>|p1> + beta |2>|p2>."""
    alpha, beta = _amplitudes(alpha, beta)
    return ket(alpha * np.kron([1, 0], ket(p1, dim=2)) + beta * np.kron([0, 1], ket(p2, dim=2)), dim=4)


def erasure_duality(alpha, beta, p1, p2) -> tuple[RelationReport, RelationReport]:
    """D^2 + V_e^2 = 1 and Var(H0, psi) + Var(n.sigma, rho_e) = 1, both at the optima."""
    alpha, beta = _amplitudes(alpha, beta)
    result = distinguishability(alpha, beta, p1, p2)
    rho_e = qubit.partial_trace_probe(marked_state(alpha, beta, p1, p2))
    v_e, n = visibility_reduced(rho_e)

    r = result.r0 or BlochVector(0.0, 0.0, 1.0)
    psi_rho = DensityOperator.from_ket([alpha, beta])
    coincidence_var = outcome_variance(coincidence_povm(p1, p2, r), psi_rho)
    interference_var = variance(qubit.dot_sigma(n.as_array()), rho_e)
    # reported only: z pointer and sigma_x readout, no optimization
    off_optimum = (
        outcome_variance(coincidence_povm(p1, p2, BlochVector(0.0, 0.0, 1.0)), psi_rho)
        + variance(pauli('x'), rho_e)
    )
    return (
        RelationReport.evaluate('erasure duality', result.D ** 2 + v_e ** 2, 1.0, RelationKind.EQ, D=result.D, V_e=v_e),
        RelationReport.evaluate(
            'erasure uncertainty', coincidence_var + interference_var, 1.0, RelationKind.EQ,
            coincidence_variance=coincidence_var, interference_variance=interference_var,
            off_optimum_sum=off_optimum,
        ),
    )


def mixed_marker_duality(alpha, beta, mixture: Sequence[tuple[float, np.ndarray, np.ndarray]]) -> RelationReport:
    """
    D^2 + V_e^2 <= 1 when the marker pair (p1, p2) is drawn from ``mixture``
    with the given weights.

    D is the trace norm of |alpha|^2 sigma_1 - |beta|^2 sigma_2, sigma_k the
    mixed marker state on path k; for a qubit that is max(| |alpha|^2 - |beta|^2 |, |d|).
    """
    alpha, beta = _amplitudes(alpha, beta)
    weights = np.array([w for w, _, _ in mixture], dtype=float)
    if np.any(weights < 0) or abs(weights.sum() - 1) > qubit.STRUCTURE_TOL:
        raise NotNormalized(params={'norm': float(weights.sum())})
    b1 = sum(w * bloch_of_ket(p1).as_array() for w, p1, _ in mixture)
    b2 = sum(w * bloch_of_ket(p2).as_array() for w, _, p2 in mixture)
    a_sq, b_sq = abs(alpha) ** 2, abs(beta) ** 2
    d = float(np.linalg.norm(a_sq * b1 - b_sq * b2))
    distinguish = max(abs(a_sq - b_sq), d)
    coherence = sum(w * np.vdot(ket(p2, dim=2), ket(p1, dim=2)) for w, p1, p2 in mixture)
    v_e = 2 * abs(alpha * np.conj(beta) * coherence)
    return RelationReport.evaluate(
        'mixed marker duality', distinguish ** 2 + v_e ** 2, 1.0, RelationKind.LEQ, D=distinguish, V_e=v_e,
    )
