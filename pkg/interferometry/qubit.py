"""
Qubit core: dense complex linear algebra for the photon (dimension 2) and the
photon x probe system (dimension 4).

Conventions
-----------
* |1> = (1, 0) is the +1 eigenvector of sigma_z; |2> = (0, 1).
* Two-party vectors are ordered photon (x) probe with the photon index slow:
  |1>|q1>, |1>|q2>, |2>|q1>, |2>|q2>.
* Operators are plain ``numpy`` complex arrays. Arrays built here are returned
  read-only so values can be shared freely between threads.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .exceptions import BlochOutOfBall, DimensionMismatch, NonFiniteValue, NotHermitian, NotNormalized

logger = logging.getLogger(__name__)

# Structural predicates (Hermitian, PSD, unitary, normalized)
STRUCTURE_TOL = 1e-10
ZERO_NORM = 1e-12
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 60
MAX_DIMENSION = 16


def frozen(array) -> np.ndarray:
    """Complex copy of ``array`` that cannot be written to."""
    out = np.array(array, dtype=complex)
    out.setflags(write=False)
    return out


I2 = frozen(np.eye(2))
I4 = frozen(np.eye(4))

_PAULI = {
    'x': frozen([[0, 1], [1, 0]]),
    'y': frozen([[0, -1j], [1j, 0]]),
    'z': frozen([[1, 0], [0, -1]]),
}


def pauli(axis: str) -> np.ndarray:
    """Pauli matrix for ``axis`` in {'x', 'y', 'z'}."""
    try:
        return _PAULI[axis]
    except KeyError:
        raise ValueError(f"Unknown Pauli axis {axis!r}; expected 'x', 'y' or 'z'.") from None


def pauli_vector() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return _PAULI['x'], _PAULI['y'], _PAULI['z']


def dot_sigma(vector) -> np.ndarray:
    """n . sigma for a real 3-vector."""
    n1, n2, n3 = (float(c) for c in vector)
    return n1 * _PAULI['x'] + n2 * _PAULI['y'] + n3 * _PAULI['z']


# --- VALIDATION HELPERS ---
def require_finite(array, what: str = 'array') -> np.ndarray:
    array = np.asarray(array)
    if not np.all(np.isfinite(array)):
        raise NonFiniteValue(params={'what': what})
    return array


def hermitian_defect(a) -> float:
    a = np.asarray(a, dtype=complex)
    return float(np.max(np.abs(a - a.conj().T)))


def is_hermitian(a, tol: float = STRUCTURE_TOL) -> bool:
    return hermitian_defect(a) <= tol


def require_hermitian(a, tol: float = STRUCTURE_TOL) -> np.ndarray:
    a = require_finite(np.asarray(a, dtype=complex), 'operator')
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(params={'expected': 'square matrix', 'actual': a.shape})
    defect = hermitian_defect(a)
    if defect > tol:
        raise NotHermitian(params={'defect': defect})
    return a


def is_unitary(u, tol: float = STRUCTURE_TOL) -> bool:
    return unitarity_defect(u) <= tol


def unitarity_defect(u) -> float:
    u = np.asarray(u, dtype=complex)
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def ket(components, dim: int | None = None, tol: float = STRUCTURE_TOL) -> np.ndarray:
    """A unit vector. Rejects non-unit input instead of normalizing it."""
    v = require_finite(np.asarray(components, dtype=complex).reshape(-1), 'state vector')
    if dim is not None and v.shape[0] != dim:
        raise DimensionMismatch(params={'expected': dim, 'actual': v.shape[0]})
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > tol:
        raise NotNormalized(params={'norm': norm})
    return frozen(v)


def unit_ket(components, dim: int | None = None, tol: float = STRUCTURE_TOL) -> np.ndarray:
    """Like ket, but the accepted vector is rescaled to exact unit norm."""
    return normalized(ket(components, dim, tol))


def normalized(components) -> np.ndarray:
    """Scale a nonzero vector to unit norm. Vectors shorter than 1e-12 are rejected."""
    v = require_finite(np.asarray(components, dtype=complex).reshape(-1), 'state vector')
    norm = float(np.linalg.norm(v))
    if norm < ZERO_NORM:
        raise NotNormalized(params={'norm': norm})
    return frozen(v / norm)


def projector(v) -> np.ndarray:
    """|v><v|."""
    v = np.asarray(v, dtype=complex)
    return frozen(np.outer(v, v.conj()))


# --- STATES ---
@dataclass(frozen=True)
class BlochVector:
    r1: float
    r2: float
    r3: float

    def __post_init__(self):
        require_finite([self.r1, self.r2, self.r3], 'Bloch vector')
        length = self.norm
        if length > 1 + STRUCTURE_TOL:
            raise BlochOutOfBall(params={'length': length})

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.r1 ** 2 + self.r2 ** 2 + self.r3 ** 2))

    def as_array(self) -> np.ndarray:
        return np.array([self.r1, self.r2, self.r3], dtype=float)

    @classmethod
    def from_array(cls, values) -> BlochVector:
        r1, r2, r3 = (float(x) for x in values)
        return cls(r1, r2, r3)

    @classmethod
    def from_spherical(cls, polar: float, azimuth: float, radius: float = 1.0) -> BlochVector:
        return cls(
            radius * np.sin(polar) * np.cos(azimuth),
            radius * np.sin(polar) * np.sin(azimuth),
            radius * np.cos(polar),
        )


def bloch_of_ket(v) -> BlochVector:
    """Bloch vector of the pure qubit state |v><v|."""
    a, b = np.asarray(v, dtype=complex)
    cross = np.conj(a) * b
    return BlochVector(2 * cross.real, 2 * cross.imag, abs(a) ** 2 - abs(b) ** 2)


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Qubit state. Hermitian, positive and of unit trace, each within 1e-10."""

    matrix: np.ndarray

    def __post_init__(self):
        m = require_hermitian(self.matrix)
        if m.shape != (2, 2):
            raise DimensionMismatch(params={'expected': (2, 2), 'actual': m.shape})
        trace = complex(np.trace(m))
        if abs(trace - 1) > STRUCTURE_TOL:
            raise NotNormalized(params={'norm': trace.real})
        # lower eigenvalue, 2x2 closed form
        half_gap = np.sqrt(((m[0, 0] - m[1, 1]).real / 2) ** 2 + abs(m[0, 1]) ** 2)
        lowest = trace.real / 2 - half_gap
        if lowest < -STRUCTURE_TOL:
            raise BlochOutOfBall(params={'length': 1 - 2 * lowest})
        object.__setattr__(self, 'matrix', frozen(m))

    @classmethod
    def from_ket(cls, v) -> DensityOperator:
        return cls(projector(ket(v, dim=2)))

    @property
    def bloch(self) -> BlochVector:
        return bloch_from_density(self)

    @property
    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)

    def __eq__(self, other):
        if not isinstance(other, DensityOperator):
            return NotImplemented
        return np.array_equal(self.matrix, other.matrix)

    __hash__ = None


def density_from_bloch(r: BlochVector) -> DensityOperator:
    if not isinstance(r, BlochVector):
        r = BlochVector.from_array(r)
    return DensityOperator(0.5 * (I2 + dot_sigma(r.as_array())))


def bloch_from_density(rho: DensityOperator) -> BlochVector:
    m = rho.matrix
    r1 = 2 * m[1, 0].real
    r2 = 2 * m[1, 0].imag
    r3 = (m[0, 0] - m[1, 1]).real
    return BlochVector(r1, r2, r3)


def expectation(a, rho: DensityOperator) -> float:
    """tr[A rho] for Hermitian A."""
    a = require_hermitian(a)
    a = (a + a.conj().T) / 2
    value = complex(np.trace(a @ rho.matrix))
    # tr of a product of two Hermitian matrices is real
    if abs(value.imag) > STRUCTURE_TOL:
        raise NotHermitian(params={'defect': abs(value.imag)})
    return value.real


def variance(a, rho: DensityOperator) -> float:
    a = require_hermitian(a)
    mean = expectation(a, rho)
    return expectation(a @ a, rho) - mean ** 2


# --- PHOTON x PROBE ---
def tensor(a, b) -> np.ndarray:
    """Kronecker product, photon factor first."""
    return frozen(np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)))


def _as_two_party(psi) -> np.ndarray:
    """Check normalization and reshape to the 2x2 coefficient matrix M[photon, probe]."""
    return ket(psi, dim=4).reshape(2, 2)


def partial_trace_probe(psi) -> DensityOperator:
    """Reduced photon state of a normalized photon x probe vector."""
    m = _as_two_party(psi)
    return DensityOperator(m @ m.conj().T)


# --- EIGENDECOMPOSITION ---
def _eig2(a: np.ndarray) -> list[tuple[float, np.ndarray]]:
    """Closed-form eigensystem of a 2x2 Hermitian matrix, eigenvalues descending."""
    p, d = a[0, 0].real, a[1, 1].real
    b = a[0, 1]
    mean = (p + d) / 2
    half_gap = float(np.hypot((p - d) / 2, abs(b)))
    upper, lower = mean + half_gap, mean - half_gap
    if half_gap == 0.0:
        return [(upper, np.array([1, 0], dtype=complex)), (lower, np.array([0, 1], dtype=complex))]
    # pick the row of (A - upper I) v = 0 that avoids cancellation
    if p >= d:
        v = np.array([(p - d) / 2 + half_gap, np.conj(b)], dtype=complex)
    else:
        v = np.array([b, (d - p) / 2 + half_gap], dtype=complex)
    v /= np.linalg.norm(v)
    w = np.array([-np.conj(v[1]), np.conj(v[0])])
    return [(upper, v), (lower, w)]


def _jacobi(a: np.ndarray) -> list[tuple[float, np.ndarray]]:
    """Cyclic Jacobi: annihilate each off-diagonal pair with a 2x2 unitary rotation."""
    a = np.array(a, dtype=complex)
    n = a.shape[0]
    vectors = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))
    sweeps = 0
    for sweeps in range(1, JACOBI_MAX_SWEEPS + 1):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= JACOBI_TOL * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) < 1e-300:
                    continue
                block = a[np.ix_([p, q], [p, q])]
                (_, v1), (_, v2) = _eig2(block)
                rot = np.column_stack([v1, v2])
                # keep the rotation close to the identity
                if abs(rot[0, 0]) < abs(rot[0, 1]):
                    rot = rot[:, ::-1]
                g = np.eye(n, dtype=complex)
                g[np.ix_([p, q], [p, q])] = rot
                a = g.conj().T @ a @ g
                a[p, q] = a[q, p] = 0.0
                vectors = vectors @ g
    logger.debug('Jacobi converged in %d sweeps (n=%d)', sweeps, n)
    values = np.diag(a).real
    order = np.argsort(-values, kind='stable')
    return [(float(values[i]), vectors[:, i].copy()) for i in order]


def eig_hermitian(a) -> list[tuple[float, np.ndarray]]:
    """
    Eigenvalues (descending) and unit eigenvectors of a Hermitian matrix.

    The 2x2 case is solved in closed form, larger ones (up to 16) by cyclic
    Jacobi iterated until the off-diagonal norm is below 1e-13.
    """
    a = require_hermitian(a)
    n = a.shape[0]
    if n > MAX_DIMENSION:
        raise DimensionMismatch(params={'expected': f'at most {MAX_DIMENSION}', 'actual': n})
    # symmetrize away the sub-tolerance anti-Hermitian part
    a = (a + a.conj().T) / 2
    if n == 1:
        return [(float(a[0, 0].real), np.ones(1, dtype=complex))]
    if n == 2:
        return _eig2(a)
    return _jacobi(a)


# --- SCHMIDT DECOMPOSITION ---
@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    """psi = sqrt(w) photon[0] (x) probe[0] + sqrt(1 - w) photon[1] (x) probe[1], w >= 1/2."""

    weight: float
    photon: tuple[np.ndarray, np.ndarray]
    probe: tuple[np.ndarray, np.ndarray]

    @property
    def coefficients(self) -> tuple[float, float]:
        return float(np.sqrt(self.weight)), float(np.sqrt(max(0.0, 1 - self.weight)))

    def reconstruct(self) -> np.ndarray:
        c1, c2 = self.coefficients
        return c1 * np.kron(self.photon[0], self.probe[0]) + c2 * np.kron(self.photon[1], self.probe[1])

    def is_product(self, tol: float = 1e-8) -> bool:
        """True when dropping the second Schmidt term moves psi by at most ``tol``."""
        return float(np.sqrt(max(0.0, 1 - self.weight))) <= tol


def _phase_fix(photon: np.ndarray, probe: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Rotate the pair's phase so the photon vector's largest component is real-positive."""
    k = int(np.argmax(np.abs(photon)))
    phase = photon[k] / abs(photon[k])
    return photon / phase, probe * phase


def schmidt(psi, tol: float = STRUCTURE_TOL) -> SchmidtDecomposition:
    m = _as_two_party(psi)
    u, s, vh = np.linalg.svd(m)
    # 1 - w = s1^2, exactly zero on product states
    weight = float(min(1.0, max(0.5, 1 - s[1] ** 2)))
    if abs(s[0] - s[1]) <= tol:
        # w = 1/2: any photon basis will do. Take |1>, |2>, read the probe partners
        # off the rows of M and fix phases like the nondegenerate case.
        weight = 0.5
        pairs = [_phase_fix(photon, m[i] / np.linalg.norm(m[i])) for i, photon in enumerate(np.eye(2, dtype=complex))]
    else:
        pairs = [_phase_fix(u[:, i], vh[i]) for i in range(2)]
    return SchmidtDecomposition(
        weight,
        (frozen(pairs[0][0]), frozen(pairs[1][0])),
        (frozen(pairs[0][1]), frozen(pairs[1][1])),
    )


def adapted_observable(decomposition: SchmidtDecomposition) -> np.ndarray:
    """S = P1 - P2 on the Schmidt product vectors, zero on their complement."""
    first = np.kron(decomposition.photon[0], decomposition.probe[0])
    second = np.kron(decomposition.photon[1], decomposition.probe[1])
    return frozen(np.outer(first, first.conj()) - np.outer(second, second.conj()))


def adapted_observable_variance(psi) -> float:
    """Var(S, psi); equals 4w(1 - w) and vanishes exactly on product states."""
    psi = ket(psi, dim=4)
    s = adapted_observable(schmidt(psi))
    mean = np.vdot(psi, s @ psi).real
    second = np.vdot(psi, s @ s @ psi).real
    return float(max(0.0, second - mean ** 2))
