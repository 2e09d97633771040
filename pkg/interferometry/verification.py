"""
The invariant suite run by ``manage.py verify``.

Every check measures one number, compares it with a threshold and records the
outcome; a failed check never raises. The closed-form audit and the oracle
cross-check use the caller's tolerance, the other checks the fixed bounds
they are stated with.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd

from . import qubit
from .complementarity import OrthonormalBasis, fourier_partner, is_mutually_unbiased, probabilistically_complementary
from .exceptions import NotJointlyMeasurable
from .extraction import closed_form, conditional_probability, extract_povm, group_marginals, measurement_scheme
from .interferometer import (
    Q1,
    Q2,
    Experiment,
    MzConfig,
    ProbeTriple,
    final_state,
    marker_states,
    marking_unitary,
    mz_evolution,
    probes_for,
)
from .oracle import (
    OracleConfig,
    cross_check,
    grid_maximize,
    random_bloch_vectors,
    random_density_operators,
    random_pure_states,
)
from .povm import (
    JOINT_GROUPINGS,
    DiscretePovm,
    Effect,
    StochasticMatrix,
    UnsharpPair,
    contrast,
    joint_xz,
    jointly_measurable,
    marginal,
    pauli_pvm,
    smear,
    spectral_measure,
    two_outcome_form,
    unsharp_x,
    unsharp_z,
    unsharpness,
    validate,
)
from .qubit import I2, DensityOperator, bloch_of_ket, pauli
from .relations import (
    contrasts,
    distinguishability,
    distinguishability_closed_form,
    duality_relations,
    entropic_bound,
    erasure_duality,
    marked_state,
    mixed_marker_duality,
    shannon_entropy,
    triple_relations,
    variance_ur,
    visibility_reduced,
)

logger = logging.getLogger(__name__)

GRID_ANGLES = (0.0, math.pi / 6, -math.pi / 6, math.pi / 4, -math.pi / 4, math.pi / 2, -math.pi / 2, math.pi)
MARKED = (Experiment.MARKING, Experiment.ERASURE, Experiment.QUANTITATIVE)
ANALYTIC_TOL = 1e-12
RELATION_TOL = 1e-9
OPTIMIZATION_TOL = 1e-6
OPTIMIZATION_INSTANCES = 50
EIGEN_MATRICES = 1000
SMEARING_SAMPLES = 1000
BLOCH_SAMPLES = 1000
PRODUCT_STATES = 100
OPTICS_PHASES = 1000
PROBE_TRIPLES = 200
JOINT_PAIRS = 200
POINTER_PAIRS = 50

# oracle streams 0 .. len(grid_configs()) - 1 belong to the cross-check
STREAM_DUALITY = 10_000
STREAM_PURE = 10_001
STREAM_VARIANCE = 10_002
STREAM_ERASURE = 10_003
STREAM_OPTIMIZATION = 10_004
STREAM_SMEARING = 10_005
STREAM_BASES = 10_006
STREAM_EIGEN = 10_007
STREAM_MARKERS = 10_008
STREAM_POINTERS = 10_009
STREAM_BLOCH = 10_010
STREAM_PRODUCTS = 10_011
STREAM_ENTANGLED = 10_012
STREAM_OPTICS = 10_013
STREAM_FINAL_STATES = 10_014
STREAM_JOINT = 10_015
STREAM_DISTINGUISH = 10_016

XZ_EIGENSTATES = (
    np.array([1, 0]),
    np.array([0, 1]),
    np.array([1, 1]) / math.sqrt(2),
    np.array([1, -1]) / math.sqrt(2),
)
Y_EIGENSTATES = (np.array([1, 1j]) / math.sqrt(2), np.array([1, -1j]) / math.sqrt(2))


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    threshold: float
    passed: bool

    @classmethod
    def at_most(cls, name: str, value: float, threshold: float) -> Check:
        return cls(name, float(value), float(threshold), bool(value <= threshold))

    @classmethod
    def at_least(cls, name: str, value: float, threshold: float) -> Check:
        return cls(name, float(value), float(threshold), bool(value >= threshold))


def grid_configs() -> list[MzConfig]:
    """Every experiment over delta, gamma, theta in {0, +-pi/6, +-pi/4, +-pi/2, pi}."""
    configs = [MzConfig(Experiment.PATH)]
    configs += [MzConfig(Experiment.INTERFERENCE, delta) for delta in GRID_ANGLES]
    for experiment in MARKED:
        configs += [MzConfig(experiment, *angles) for angles in itertools.product(GRID_ANGLES, repeat=3)]
    return configs


def max_deviation(a: DiscretePovm, b: DiscretePovm) -> float:
    return max(float(np.max(np.abs(a[label] - b[label]))) for label in a.labels)


# --- QUBIT CORE ---
def check_qubit_core(oracle: OracleConfig) -> list[Check]:
    sigmas = qubit.pauli_vector()
    algebra = max(
        float(np.max(np.abs(sigmas[i] @ sigmas[j] + sigmas[j] @ sigmas[i] - 2 * (i == j) * I2)))
        for i, j in itertools.product(range(3), repeat=2)
    )
    round_trip = 0.0
    for r in random_bloch_vectors(oracle, STREAM_BLOCH, count=BLOCH_SAMPLES):
        rho = qubit.density_from_bloch(qubit.BlochVector.from_array(r))
        round_trip = max(round_trip, float(np.max(np.abs(qubit.bloch_from_density(rho).as_array() - r))))

    factors = random_pure_states(oracle, STREAM_PRODUCTS, count=2 * PRODUCT_STATES)
    partial = 0.0
    mismatches = 0
    for photon, probe in zip(factors[:PRODUCT_STATES], factors[PRODUCT_STATES:]):
        product = np.kron(photon, probe)
        partial = max(partial, float(np.max(np.abs(qubit.partial_trace_probe(product).matrix - np.outer(photon, photon.conj())))))
        mismatches += not (qubit.schmidt(product).is_product() and qubit.adapted_observable_variance(product) <= ANALYTIC_TOL)
    rng = oracle.generator(STREAM_ENTANGLED)
    for _ in range(PRODUCT_STATES):
        psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        psi /= np.linalg.norm(psi)
        mismatches += qubit.schmidt(psi).is_product() or qubit.adapted_observable_variance(psi) <= ANALYTIC_TOL
    return [
        Check.at_most('Pauli anticommutation relations', algebra, 1e-14),
        Check.at_most('Bloch vector round trip', round_trip, ANALYTIC_TOL),
        Check.at_most('partial trace of product states', partial, ANALYTIC_TOL),
        Check.at_most('Var(S) = 0 iff the state is a product', mismatches, 0),
    ]


# --- INTERFEROMETER AND EXTRACTION ---
def check_optics(oracle: OracleConfig) -> list[Check]:
    rng = oracle.generator(STREAM_OPTICS)
    evolution = max(qubit.unitarity_defect(mz_evolution(delta)) for delta in rng.uniform(-math.pi, math.pi, OPTICS_PHASES))
    marking = 0.0
    for _ in range(PROBE_TRIPLES):
        vectors = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
        probes = ProbeTriple(*(v / np.linalg.norm(v) for v in vectors))
        u = marking_unitary(probes, completion_phase=rng.uniform(-math.pi, math.pi))
        marking = max(
            marking,
            qubit.unitarity_defect(u),
            float(np.max(np.abs(u @ np.kron(Q1, probes.p0) - np.kron(Q1, probes.p1)))),
            float(np.max(np.abs(u @ np.kron(Q2, probes.p0) - np.kron(Q2, probes.p2)))),
        )
    configs = grid_configs()
    norm = max(
        abs(float(np.linalg.norm(final_state(psi, probes_for(config), config))) - 1)
        for psi, config in zip(random_pure_states(oracle, STREAM_FINAL_STATES, count=len(configs)), configs)
    )
    return [
        Check.at_most('Mach-Zehnder evolution is unitary', evolution, 1e-14),
        Check.at_most('marking coupling is unitary and marks the paths', marking, ANALYTIC_TOL),
        Check.at_most('final states are normalized', norm, ANALYTIC_TOL),
    ]


def check_detection() -> list[Check]:
    path = extract_povm(measurement_scheme(MzConfig(Experiment.PATH)))
    interference = extract_povm(measurement_scheme(MzConfig(Experiment.INTERFERENCE, -math.pi / 2)))
    return [
        Check.at_most('path detection measures sigma_z', max_deviation(path, pauli_pvm('z')), ANALYTIC_TOL),
        Check.at_most('interference detection measures sigma_x', max_deviation(interference, pauli_pvm('x')), ANALYTIC_TOL),
    ]


def check_closed_forms(tol: float, perturbation: float = 0.0) -> list[Check]:
    joint_dev = marginal_dev = negativity = completeness = 0.0
    for config in grid_configs():
        if config.experiment not in MARKED:
            continue
        extracted = extract_povm(measurement_scheme(config))
        expected = closed_form(config)
        if perturbation:
            expected = expected.perturbed(perturbation)
        joint_dev = max(joint_dev, max_deviation(extracted, expected.joint))
        for name, grouped in group_marginals(extracted).items():
            marginal_dev = max(marginal_dev, max_deviation(grouped, expected[name]))
        for effect in extracted:
            negativity = max(negativity, -qubit.eig_hermitian(effect.operator)[-1][0])
        completeness = max(completeness, float(np.max(np.abs(extracted.total() - I2))))
    return [
        Check.at_most('closed-form joint POVMs', joint_dev, tol),
        Check.at_most('closed-form marginals', marginal_dev, tol),
        Check.at_most('extracted effects are positive', negativity, qubit.STRUCTURE_TOL),
        Check.at_most('extracted effects sum to I', completeness, ANALYTIC_TOL),
    ]


def check_cross(oracle: OracleConfig, perturbation: float = 0.0) -> list[Check]:
    deviation = 0.0
    for stream, config in enumerate(grid_configs()):
        povm = None
        if perturbation and config.experiment in MARKED:
            povm = closed_form(config).perturbed(perturbation).joint
        deviation = max(deviation, cross_check(config, oracle, povm, stream=stream))
    return [Check.at_most('oracle probability reproduction', deviation, oracle.tolerance)]


def check_completion_independence() -> list[Check]:
    deviation = 0.0
    for experiment in MARKED:
        config = MzConfig.for_experiment(experiment, gamma=math.pi / 4, theta=math.pi / 3)
        first = extract_povm(measurement_scheme(config))
        second = extract_povm(measurement_scheme(config, completion_phase=1.234))
        deviation = max(deviation, max_deviation(first, second))
    return [Check.at_most('coupling completion does not change the POVM', deviation, ANALYTIC_TOL)]


def check_erasure() -> list[Check]:
    config = MzConfig(Experiment.ERASURE, -math.pi / 2, 0.0)
    psi = np.array([1, 1]) / math.sqrt(2)
    joint = extract_povm(measurement_scheme(config))
    fringes = conditional_probability(joint, '1', psi)
    antifringes = conditional_probability(joint, '2', psi)
    deviation = max(abs(fringes['1'] - 1), abs(fringes['2']), abs(antifringes['1']), abs(antifringes['2'] - 1))
    weight = qubit.schmidt(final_state(psi, probes_for(config), config)).weight
    return [
        Check.at_most('erasure fringes and antifringes', deviation, ANALYTIC_TOL),
        Check.at_most('erasure final state has Schmidt weight 1/2', abs(weight - 0.5), ANALYTIC_TOL),
    ]


def check_limit_cases() -> list[Check]:
    expected = {0.0: ('trivial', 'sharp'), math.pi / 2: ('sharp', 'trivial')}
    wrong = 0
    for theta, (f_kind, g_kind) in expected.items():
        marginals = group_marginals(extract_povm(measurement_scheme(MzConfig(Experiment.QUANTITATIVE, -math.pi / 2, 0.0, theta))))
        wrong += validate(marginals['F']).kind != f_kind
        wrong += validate(marginals['G']).kind != g_kind
    return [Check.at_most('limit-case complementarity', wrong, 0)]


def check_pointer_freedom(oracle: OracleConfig) -> list[Check]:
    """Quantitative erasure read out in random orthonormal pointer bases."""
    rng = oracle.generator(STREAM_POINTERS)
    shared = transverse = 0.0
    for _ in range(POINTER_PAIRS):
        q, _ = np.linalg.qr(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))
        config = MzConfig(Experiment.QUANTITATIVE, rng.uniform(-math.pi, math.pi), theta=rng.uniform(0, math.pi))
        probe = group_marginals(extract_povm(measurement_scheme(config, pointers=(q[:, 0], q[:, 1]))))['G']
        _, first = two_outcome_form(probe)
        _, second = two_outcome_form(DiscretePovm(probe.effects[::-1]))
        shared = max(shared, float(np.max(np.abs(first + second))))
        transverse = max(transverse, float(np.max(np.abs(first[:2]))))
    return [
        Check.at_most('probe marginal effects share one direction', shared, ANALYTIC_TOL),
        Check.at_most('probe marginal is an unsharp path observable', transverse, ANALYTIC_TOL),
    ]


# --- POVMS ---
def check_joint_measurability() -> list[Check]:
    mismatches = 0
    worst = math.inf
    for f, g in itertools.product(np.linspace(-1, 1, 101), repeat=2):
        pair = UnsharpPair(f, g)
        try:
            ok = validate(joint_xz(pair)).valid
        except NotJointlyMeasurable:
            ok = False
        mismatches += ok != (f * f + g * g <= 1 + 1e-10)
        mismatches += ok != jointly_measurable(pair)
        if ok:
            worst = min(worst, unsharpness(unsharp_x(f)) + unsharpness(unsharp_z(g)))
    return [
        Check.at_most('joint observable exists iff f^2 + g^2 <= 1', mismatches, 0),
        Check.at_least('U_F + U_G on jointly measurable pairs', worst, 1 - ANALYTIC_TOL),
    ]


def check_joint_marginals(oracle: OracleConfig) -> list[Check]:
    rng = oracle.generator(STREAM_JOINT)
    deviation = 0.0
    for radius, angle in zip(np.sqrt(rng.random(JOINT_PAIRS)), rng.uniform(-math.pi, math.pi, JOINT_PAIRS)):
        f, g = radius * math.cos(angle), radius * math.sin(angle)
        joint = joint_xz(UnsharpPair(f, g))
        deviation = max(
            deviation,
            max_deviation(marginal(joint, JOINT_GROUPINGS['F']), unsharp_x(f)),
            max_deviation(marginal(joint, JOINT_GROUPINGS['G']), unsharp_z(g)),
        )
    return [Check.at_most('joint observable has the unsharp x and z marginals', deviation, 1e-14)]


def check_smearing(oracle: OracleConfig) -> list[Check]:
    rng = oracle.generator(STREAM_SMEARING)
    invalid = 0
    commutator = 0.0
    for _ in range(SMEARING_SAMPLES):
        a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        sharp = spectral_measure(a + a.conj().T)
        w = rng.random((3, len(sharp)))
        smeared = smear(sharp, StochasticMatrix(w / w.sum(axis=0)))
        invalid += not validate(smeared).valid
        for e, f in itertools.combinations([e.operator for e in smeared], 2):
            commutator = max(commutator, float(np.max(np.abs(e @ f - f @ e))))
    return [
        Check.at_most('smeared POVMs are valid', invalid, 0),
        Check.at_most('smeared effects commute', commutator, ANALYTIC_TOL),
    ]


def check_contrast_oracle(oracle: OracleConfig) -> list[Check]:
    rng = oracle.generator(STREAM_OPTIMIZATION)
    deviation = 0.0
    for _ in range(OPTIMIZATION_INSTANCES):
        u = rng.standard_normal(3)
        u *= rng.random() / np.linalg.norm(u)
        b = (1 - np.linalg.norm(u)) * rng.uniform(-1, 1)
        first = 0.5 * ((1 + b) * I2 + qubit.dot_sigma(u))
        p = DiscretePovm((Effect('1', first), Effect('2', I2 - first)))
        # max |p1 - p2| taken as the larger of two linear maxima, each with a single peak
        value = max(
            grid_maximize(lambda rho: sign * (2 * qubit.expectation(first, rho) - 1), oracle)[0]
            for sign in (1, -1)
        )
        deviation = max(deviation, abs(value - contrast(p)))
    return [Check.at_most('contrast equals grid maximum', deviation, OPTIMIZATION_TOL)]


# --- COMPLEMENTARITY AND EIGENSOLVER ---
def check_bases(oracle: OracleConfig) -> list[Check]:
    rng = oracle.generator(STREAM_BASES)
    failures = 0
    for n in range(2, 9):
        q, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
        basis = OrthonormalBasis(q)
        failures += not is_mutually_unbiased(basis, fourier_partner(basis), tol=RELATION_TOL)

    up = 0.5 * (I2 + pauli('z'))
    mismatches = 0
    for polar_deg, azimuth_deg in itertools.product(range(0, 181, 10), range(0, 360, 10)):
        direction = qubit.BlochVector.from_spherical(math.radians(polar_deg), math.radians(azimuth_deg)).as_array()
        q = 0.5 * (I2 + qubit.dot_sigma(direction))
        overlap = float(np.trace(up @ q).real)
        expected = ANALYTIC_TOL < overlap < 1 - ANALYTIC_TOL
        mismatches += probabilistically_complementary(up, q) != expected
    return [
        Check.at_most('Fourier partners are mutually unbiased', failures, 0),
        Check.at_most('probabilistic complementarity iff 0 < tr PQ < 1', mismatches, 0),
    ]


def check_eigensolver(oracle: OracleConfig) -> list[Check]:
    rng = oracle.generator(STREAM_EIGEN)
    worst = 0.0
    for _ in range(EIGEN_MATRICES):
        a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        a = a + a.conj().T
        rebuilt = sum(value * np.outer(vector, vector.conj()) for value, vector in qubit.eig_hermitian(a))
        worst = max(worst, float(np.max(np.abs(a - rebuilt))))
    return [Check.at_most('Hermitian eigensolver reconstruction', worst, 1e-11)]


# --- RELATIONS ---
def check_duality(oracle: OracleConfig) -> list[Check]:
    z, x = pauli_pvm('z'), pauli_pvm('x')
    contrast_slack = variance_slack = entropic = entropic_triple = variance_triple = math.inf
    bloch_identity = variance_identity = 0.0
    for rho in random_density_operators(oracle, STREAM_DUALITY, count=100 * oracle.samples):
        entropy_sum, variance_sum, contrast_sum = triple_relations(rho)
        _, variances = duality_relations(rho)
        c = contrasts(rho)
        r_sq = rho.bloch.norm ** 2
        contrast_slack = min(contrast_slack, contrast_sum.slack)
        bloch_identity = max(bloch_identity, abs(c.path ** 2 + c.interference_x ** 2 + c.interference_y ** 2 - r_sq))
        variance_identity = max(variance_identity, abs(variance_sum.lhs - (3 - r_sq)))
        variance_slack = min(variance_slack, variances.slack)
        entropic = min(entropic, shannon_entropy(z, rho) + shannon_entropy(x, rho))
        entropic_triple = min(entropic_triple, entropy_sum.slack)
        variance_triple = min(variance_triple, variance_sum.slack)

    saturation = 0.0
    pure_bound = math.inf
    for psi in random_pure_states(oracle, STREAM_PURE, count=100 * oracle.samples):
        saturation = max(saturation, abs(triple_relations(DensityOperator.from_ket(psi))[2].lhs - 1))
        pure_bound = min(pure_bound, entropic_bound(z, x, psi).slack)

    attained = 0.0
    for psi in XZ_EIGENSTATES:
        report = entropic_bound(z, x, psi)
        attained = max(attained, abs(report.lhs - 1), abs(report.rhs - 1))
    for psi in XZ_EIGENSTATES + Y_EIGENSTATES:
        attained = max(attained, abs(triple_relations(DensityOperator.from_ket(psi))[0].lhs - 2))
    return [
        Check.at_least('C_P^2 + C_Ix^2 + C_Iy^2 <= 1', contrast_slack, -ANALYTIC_TOL),
        Check.at_most('contrast triple equals |r|^2', bloch_identity, ANALYTIC_TOL),
        Check.at_most('pure states saturate the contrast triple', saturation, 1e-10),
        Check.at_most('sum of Pauli variances is 3 - |r|^2', variance_identity, ANALYTIC_TOL),
        Check.at_least('Var(x) + Var(y) + Var(z) >= 2', variance_triple, -RELATION_TOL),
        Check.at_least('Var(z) + Var(x) >= 1', variance_slack, -RELATION_TOL),
        Check.at_least('H(z) + H(x) >= 1', entropic, 1 - RELATION_TOL),
        Check.at_least('H(x) + H(y) + H(z) >= 2', entropic_triple, -RELATION_TOL),
        Check.at_least('entropic bound on pure states', pure_bound, -RELATION_TOL),
        Check.at_most('entropic bounds attained at Pauli eigenstates', attained, RELATION_TOL),
    ]


def check_variance_relation(oracle: OracleConfig) -> list[Check]:
    worst = 0.0
    identity = 0.0
    for r in random_bloch_vectors(oracle, STREAM_VARIANCE, count=100 * oracle.samples):
        report = variance_ur(qubit.density_from_bloch(qubit.BlochVector.from_array(r)))
        worst = min(worst, report.slack)
        identity = max(identity, abs(report.slack - (1 - float(r @ r))))
    return [
        Check.at_least('variance uncertainty relation', worst, -ANALYTIC_TOL),
        Check.at_most('variance relation slack is 1 - |r|^2', identity, 1e-10),
    ]


def check_quantitative_erasure(oracle: OracleConfig) -> list[Check]:
    rng = oracle.generator(STREAM_MARKERS)
    amplitudes = random_pure_states(oracle, STREAM_ERASURE, count=10 * oracle.samples)
    duality = uncertainty = closed = 0.0
    for alpha, beta in amplitudes:
        p1, p2 = marker_states(rng.uniform(0, math.pi))
        first, second = erasure_duality(alpha, beta, p1, p2)
        duality = max(duality, first.slack)
        uncertainty = max(uncertainty, second.slack)
        exact = distinguishability_closed_form(alpha, beta, np.vdot(p1, p2))
        closed = max(closed, abs(distinguishability(alpha, beta, p1, p2).D - exact))

    alpha = beta = 1 / math.sqrt(2)
    p1, p2 = marker_states(math.pi / 3)
    worked = distinguishability(alpha, beta, p1, p2).D
    v_e, _ = visibility_reduced(qubit.partial_trace_probe(marked_state(alpha, beta, p1, p2)))
    mixed = mixed_marker_duality(alpha, beta, [(0.5, *marker_states(math.pi / 6)), (0.5, *marker_states(math.pi / 3))])
    return [
        Check.at_most('D^2 + V_e^2 = 1', duality, RELATION_TOL),
        Check.at_most('Var(H0) + Var(sigma_n) = 1 at the optima', uncertainty, RELATION_TOL),
        Check.at_most('D = 2L - 1 matches the overlap form', closed, ANALYTIC_TOL),
        Check.at_most('worked point D = 1/2, V_e = sqrt(3)/2', max(abs(worked - 0.5), abs(v_e - math.sqrt(3) / 2)), ANALYTIC_TOL),
        Check.at_most('mixed markers give D^2 + V_e^2 < 1', mixed.lhs, 1 - OPTIMIZATION_TOL),
    ]


def check_optimization_oracle(oracle: OracleConfig) -> list[Check]:
    rng = oracle.generator(STREAM_DISTINGUISH)
    distinguish = visibility = 0.0
    for _ in range(OPTIMIZATION_INSTANCES):
        alpha, beta = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        norm = math.hypot(abs(alpha), abs(beta))
        alpha, beta = alpha / norm, beta / norm
        p1, p2 = marker_states(rng.uniform(0, math.pi))
        result = distinguishability(alpha, beta, p1, p2)
        d = abs(alpha) ** 2 * bloch_of_ket(p1).as_array() - abs(beta) ** 2 * bloch_of_ket(p2).as_array()
        best_l, _ = grid_maximize(lambda rho: 0.5 * (1 + rho.bloch.as_array() @ d), oracle)
        distinguish = max(distinguish, abs(best_l - result.L))

        rho_e = qubit.partial_trace_probe(marked_state(alpha, beta, p1, p2))
        v_e, _ = visibility_reduced(rho_e)
        best_v, _ = grid_maximize(
            lambda rho: abs(qubit.expectation(qubit.dot_sigma(rho.bloch.as_array()), rho_e)), oracle, equatorial=True,
        )
        visibility = max(visibility, abs(best_v - v_e))
    return [
        Check.at_most('L equals grid maximum', distinguish, OPTIMIZATION_TOL),
        Check.at_most('V_e equals equatorial grid maximum', visibility, OPTIMIZATION_TOL),
    ]


def run_suite(oracle: OracleConfig, perturbation: float = 0.0) -> list[Check]:
    """All checks in a fixed order. ``perturbation`` adds epsilon * I to the closed-form E_11."""
    stages = [
        ('qubit core', lambda: check_qubit_core(oracle)),
        ('optics', lambda: check_optics(oracle)),
        ('detection', check_detection),
        ('closed forms', lambda: check_closed_forms(oracle.tolerance, perturbation)),
        ('oracle cross-check', lambda: check_cross(oracle, perturbation)),
        ('completion', check_completion_independence),
        ('erasure', check_erasure),
        ('limit cases', check_limit_cases),
        ('joint measurability', check_joint_measurability),
        ('joint marginals', lambda: check_joint_marginals(oracle)),
        ('smearing', lambda: check_smearing(oracle)),
        ('contrast', lambda: check_contrast_oracle(oracle)),
        ('bases', lambda: check_bases(oracle)),
        ('eigensolver', lambda: check_eigensolver(oracle)),
        ('duality', lambda: check_duality(oracle)),
        ('variance relation', lambda: check_variance_relation(oracle)),
        ('quantitative erasure', lambda: check_quantitative_erasure(oracle)),
        ('optimization', lambda: check_optimization_oracle(oracle)),
        ('pointer freedom', lambda: check_pointer_freedom(oracle)),
    ]
    checks: list[Check] = []
    for name, stage in stages:
        logger.info('Running %s checks', name)
        checks.extend(stage())
    failed = sum(not c.passed for c in checks)
    logger.info('%d of %d checks passed', len(checks) - failed, len(checks))
    return checks


def suite_table(checks: list[Check]) -> pd.DataFrame:
    return pd.DataFrame({
        'check': [c.name for c in checks],
        'value': [f'{c.value:.3e}' for c in checks],
        'threshold': [f'{c.threshold:.3e}' for c in checks],
        'result': ['PASS' if c.passed else 'FAIL' for c in checks],
    })
