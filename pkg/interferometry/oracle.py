"""
Brute-force checks that share nothing with the closed forms: probabilities
read directly off the final photon x probe state, seeded random inputs and a
grid search over the Bloch sphere.

Random streams are ``SeedSequence(seed, spawn_key=(stream,))`` feeding a
PCG64 generator, one stream per batch, so a batch can be regenerated on its
own and serial and parallel runs agree.
"""
from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
import pandas as pd

from .exceptions import InvalidOracleConfig, InvalidScheme
from .extraction import MeasurementScheme, extract_povm, measurement_scheme
from .interferometer import MzConfig
from .povm import DiscretePovm
from .qubit import BlochVector, DensityOperator, density_from_bloch, ket

logger = logging.getLogger(__name__)

REFINEMENT_HALVINGS = 20
MAX_CLIMB = 64
MAX_SEED = 2 ** 64


@dataclass(frozen=True)
class OracleConfig:
    seed: int = 42
    samples: int = 100
    grid_resolution: float = math.pi / 16
    tolerance: float = 1e-10

    def __post_init__(self):
        if not 0 <= int(self.seed) < MAX_SEED:
            raise InvalidOracleConfig(params={'reason': f'seed {self.seed} is not a 64-bit unsigned integer'})
        if int(self.samples) < 1:
            raise InvalidOracleConfig(params={'reason': f'samples must be at least 1, got {self.samples}'})
        if not 0 < self.grid_resolution <= math.pi / 8:
            raise InvalidOracleConfig(params={'reason': f'grid resolution {self.grid_resolution} outside (0, pi/8]'})
        if not self.tolerance > 0:
            raise InvalidOracleConfig(params={'reason': f'tolerance must be positive, got {self.tolerance}'})

    def generator(self, stream: int = 0) -> np.random.Generator:
        logger.debug('Oracle stream %d from seed %d', stream, self.seed)
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(self.seed), spawn_key=(stream,))))


# --- SAMPLING ---
def random_pure_states(oracle: OracleConfig, stream: int = 0, count: int | None = None) -> np.ndarray:
    """(count, 2) array of Haar-random unit vectors: two normalized complex Gaussians per row."""
    count = oracle.samples if count is None else count
    rng = oracle.generator(stream)
    raw = rng.standard_normal((count, 2)) + 1j * rng.standard_normal((count, 2))
    return raw / np.linalg.norm(raw, axis=1, keepdims=True)


def random_bloch_vectors(oracle: OracleConfig, stream: int = 0, count: int | None = None) -> np.ndarray:
    """(count, 3) array uniform in the unit ball."""
    count = oracle.samples if count is None else count
    rng = oracle.generator(stream)
    directions = rng.standard_normal((count, 3))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    radii = rng.random(count) ** (1 / 3)
    return directions * radii[:, None]


def random_density_operators(oracle: OracleConfig, stream: int = 0, count: int | None = None) -> list[DensityOperator]:
    return [density_from_bloch(BlochVector.from_array(r)) for r in random_bloch_vectors(oracle, stream, count)]


# --- PROBABILITIES ---
def direct_probabilities(scheme: MeasurementScheme, psi) -> dict[str, float]:
    """<Psi_f|M_kl|Psi_f> with Psi_f = U (psi (x) p0)."""
    final = scheme.final_state(ket(psi, dim=2))
    return {label: float(np.vdot(final, m @ final).real) for label, m in scheme.outputs}


def direct_table(scheme: MeasurementScheme, states: np.ndarray) -> pd.DataFrame:
    """Vectorized direct_probabilities: one row per input state, one column per output."""
    finals = scheme.unitary @ np.kron(states, scheme.probe_init).T
    return pd.DataFrame({
        label: np.einsum('in,ij,jn->n', finals.conj(), m, finals).real
        for label, m in scheme.outputs
    })


def povm_table(povm: DiscretePovm, states: np.ndarray) -> pd.DataFrame:
    """<psi|E|psi> for every effect and every row of ``states``."""
    return pd.DataFrame({
        effect.label: np.einsum('ni,ij,nj->n', states.conj(), effect.operator, states).real
        for effect in povm
    })


def cross_check(config: MzConfig, oracle: OracleConfig, povm: DiscretePovm | None = None, stream: int = 0) -> float:
    """
    Largest |direct - <psi|E|psi>| over ``oracle.samples`` random inputs. The
    POVM defaults to the one extracted from the scheme; the caller decides
    whether the deviation is acceptable.
    """
    scheme = measurement_scheme(config)
    povm = povm or extract_povm(scheme)
    if set(povm.labels) != set(scheme.labels):
        raise InvalidScheme(params={'reason': f'POVM outcomes {povm.labels} do not match outputs {scheme.labels}'})
    states = random_pure_states(oracle, stream)
    direct = direct_table(scheme, states)
    predicted = povm_table(povm, states)[list(direct.columns)]
    return float((direct - predicted).abs().to_numpy().max())


# --- GRID SEARCH ---
def _point(polar: float, azimuth: float) -> DensityOperator:
    return density_from_bloch(BlochVector.from_spherical(polar, azimuth))


def grid_maximize(objective: Callable[[DensityOperator], float], oracle: OracleConfig,
                  equatorial: bool = False) -> tuple[float, BlochVector]:
    """
    Maximize ``objective`` over pure states: a latitude/longitude sweep at
    ``oracle.grid_resolution``, then a pattern search whose step is halved 20
    times. With ``equatorial`` only states on the equator are searched.
    """
    step = oracle.grid_resolution
    polars = [math.pi / 2] if equatorial else np.arange(0.0, math.pi + step / 2, step)
    azimuths = np.arange(0.0, 2 * math.pi, step)

    best_value, best_polar, best_azimuth = -math.inf, 0.0, 0.0
    for polar in polars:
        for azimuth in azimuths:
            value = objective(_point(polar, azimuth))
            if value > best_value:
                best_value, best_polar, best_azimuth = value, float(polar), float(azimuth)

    if equatorial:
        moves = [(0, 1), (0, -1)]
    else:
        moves = [(dp, da) for dp in (-1, 0, 1) for da in (-1, 0, 1) if (dp, da) != (0, 0)]
    for _ in range(REFINEMENT_HALVINGS):
        step /= 2
        for _ in range(MAX_CLIMB):
            candidates = [
                (objective(_point(best_polar + dp * step, best_azimuth + da * step)),
                 best_polar + dp * step, best_azimuth + da * step)
                for dp, da in moves
            ]
            value, polar, azimuth = max(candidates, key=lambda c: c[0])
            if value <= best_value:
                break
            best_value, best_polar, best_azimuth = value, polar, azimuth
    return float(best_value), BlochVector.from_spherical(best_polar, best_azimuth)
