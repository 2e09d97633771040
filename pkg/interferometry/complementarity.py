"""
Value and probabilistic complementarity: mutually unbiased bases, the Fourier
partner of a basis and the projection-meet conditions.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from . import qubit
from .exceptions import DimensionMismatch, InvalidBasis, NotAProjection
from .povm import spectral_measure
from .qubit import STRUCTURE_TOL, eig_hermitian, frozen

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class OrthonormalBasis:
    """Basis vectors stored as the columns of ``vectors``."""

    vectors: np.ndarray

    def __post_init__(self):
        v = qubit.require_finite(np.asarray(self.vectors, dtype=complex), 'basis')
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise DimensionMismatch(params={'expected': 'n x n column matrix', 'actual': v.shape})
        if v.shape[0] > qubit.MAX_DIMENSION:
            raise DimensionMismatch(params={'expected': f'at most {qubit.MAX_DIMENSION}', 'actual': v.shape[0]})
        defect = float(np.max(np.abs(v.conj().T @ v - np.eye(v.shape[0]))))
        if defect > STRUCTURE_TOL:
            raise InvalidBasis(params={'defect': defect})
        object.__setattr__(self, 'vectors', frozen(v))

    @classmethod
    def from_vectors(cls, vectors) -> OrthonormalBasis:
        return cls(np.column_stack([np.asarray(v, dtype=complex) for v in vectors]))

    @classmethod
    def standard(cls, n: int) -> OrthonormalBasis:
        return cls(np.eye(n))

    @classmethod
    def of_pauli(cls, axis: str) -> OrthonormalBasis:
        """Eigenbasis of a Pauli matrix, +1 eigenvector first."""
        return cls.from_vectors(vector for _, vector in eig_hermitian(qubit.pauli(axis)))

    @property
    def dimension(self) -> int:
        return self.vectors.shape[0]

    def __getitem__(self, index: int) -> np.ndarray:
        return self.vectors[:, index]

    def __iter__(self):
        return (self.vectors[:, k] for k in range(self.dimension))


def fourier_partner(b: OrthonormalBasis) -> OrthonormalBasis:
    """phi_l = n^-1/2 sum_k exp(2 pi i k l / n) psi_k, with k, l = 0 .. n-1."""
    if not isinstance(b, OrthonormalBasis):
        b = OrthonormalBasis(b)
    n = b.dimension
    k = np.arange(n)
    dft = np.exp(2j * np.pi * np.outer(k, k) / n) / np.sqrt(n)
    return OrthonormalBasis(b.vectors @ dft)


def overlaps(a: OrthonormalBasis, b: OrthonormalBasis) -> np.ndarray:
    """|<a_k|b_l>| as an n x n real array."""
    if a.dimension != b.dimension:
        raise DimensionMismatch(params={'expected': a.dimension, 'actual': b.dimension})
    return np.abs(a.vectors.conj().T @ b.vectors)


def is_mutually_unbiased(a: OrthonormalBasis, b: OrthonormalBasis, tol: float = STRUCTURE_TOL) -> bool:
    target = 1 / np.sqrt(a.dimension)
    return bool(np.max(np.abs(overlaps(a, b) - target)) <= tol)


# --- PROJECTION MEETS ---
def require_projection(p, tol: float = STRUCTURE_TOL) -> np.ndarray:
    p = qubit.require_hermitian(p, tol)
    defect = float(np.max(np.abs(p @ p - p)))
    if defect > tol:
        raise NotAProjection(params={'defect': defect})
    return p


def projection_meet(p, q, tol: float = STRUCTURE_TOL) -> np.ndarray:
    """
    P ^ Q, the projection onto ran P intersected with ran Q.

    A unit vector lies in both ranges exactly when it is an eigenvector of P + Q
    with eigenvalue 2, so the meet is read off that eigenspace.
    """
    p, q = require_projection(p, tol), require_projection(q, tol)
    if p.shape != q.shape:
        raise DimensionMismatch(params={'expected': p.shape, 'actual': q.shape})
    meet = np.zeros_like(p)
    for value, vector in eig_hermitian(p + q):
        if value < 2 - tol:
            break
        meet = meet + np.outer(vector, vector.conj())
    return frozen(meet)


def probabilistically_complementary(p, q, tol: float = STRUCTURE_TOL) -> bool:
    """True iff P ^ Q, P ^ (I - Q) and (I - P) ^ Q are all the zero operator."""
    p, q = require_projection(p, tol), require_projection(q, tol)
    identity = np.eye(p.shape[0])
    meets = (
        projection_meet(p, q, tol),
        projection_meet(p, identity - q, tol),
        projection_meet(identity - p, q, tol),
    )
    return all(float(np.max(np.abs(m))) <= tol for m in meets)


def value_complementary(a, b, tol: float = 1e-12) -> bool:
    """
    Every eigenstate of A gives B's values uniform probability, and vice versa.

    Only operators with nondegenerate spectra qualify; for those the condition
    is that their eigenbases are mutually unbiased.
    """
    a, b = qubit.require_hermitian(a), qubit.require_hermitian(b)
    if a.shape != b.shape:
        raise DimensionMismatch(params={'expected': a.shape, 'actual': b.shape})
    n = a.shape[0]
    for first, second in ((a, b), (b, a)):
        measure = spectral_measure(second)
        if len(measure) != n:
            logger.debug('Degenerate spectrum; not value complementary')
            return False
        for _, vector in eig_hermitian(first):
            for effect in measure:
                probability = np.vdot(vector, effect.operator @ vector).real
                if abs(probability - 1 / n) > tol:
                    return False
    return True
