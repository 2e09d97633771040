"""
Domain errors.

Every error is a Django ValidationError carrying a stable ``code`` and the
measured ``params``, so the command layer can print one clean line and the
tests can assert on the code instead of on message text.
"""
from django.core.exceptions import ValidationError


class InterferometryError(ValidationError):
    default_code = 'invalid'
    default_message = 'Invalid value.'

    def __init__(self, message=None, params=None):
        super().__init__(message or self.default_message, code=self.default_code, params=params)

    def __str__(self):
        return self.messages[0]


# --- LINEAR ALGEBRA ---
class NonFiniteValue(InterferometryError):
    default_code = 'non_finite'
    default_message = 'NaN or infinite entry in %(what)s.'


class NotHermitian(InterferometryError):
    default_code = 'not_hermitian'
    default_message = 'Operator is not Hermitian (defect %(defect).3g).'


class NotNormalized(InterferometryError):
    default_code = 'not_normalized'
    default_message = 'Vector norm %(norm).12g is not 1.'


class BlochOutOfBall(InterferometryError):
    default_code = 'bloch_out_of_ball'
    default_message = 'Bloch vector length %(length).12g exceeds 1.'


class DimensionMismatch(InterferometryError):
    default_code = 'dimension_mismatch'
    default_message = 'Dimension mismatch: %(expected)s vs %(actual)s.'


class NotAProjection(InterferometryError):
    default_code = 'not_a_projection'
    default_message = 'Operator is not a projection (defect %(defect).3g).'


class InvalidBasis(InterferometryError):
    default_code = 'invalid_basis'
    default_message = 'Vectors do not form an orthonormal basis (Gram defect %(defect).3g).'


# --- POVMS ---
class InvalidPovm(InterferometryError):
    default_code = 'invalid_povm'
    default_message = 'Not a valid POVM: %(violations)s.'


class InvalidStochasticMatrix(InterferometryError):
    default_code = 'invalid_stochastic_matrix'
    default_message = 'Not a stochastic matrix: %(reason)s.'


class NotAPartition(InterferometryError):
    default_code = 'not_a_partition'
    default_message = 'Grouping does not partition the outcome labels: %(reason)s.'


class NotJointlyMeasurable(InterferometryError):
    default_code = 'not_jointly_measurable'
    default_message = 'f^2 + g^2 = %(radius_sq).12g exceeds 1; no joint observable.'


class NotTwoOutcome(InterferometryError):
    default_code = 'not_two_outcome'
    default_message = 'Expected a two-outcome POVM, got %(count)d outcomes.'


class NotSharp(InterferometryError):
    default_code = 'not_sharp'
    default_message = 'POVM %(which)s is not projection valued.'


# --- EXPERIMENTS ---
class UnsupportedExperiment(InterferometryError):
    default_code = 'unsupported_experiment'
    default_message = 'Experiment %(experiment)r is not supported here.'


class InvalidScheme(InterferometryError):
    default_code = 'invalid_scheme'
    default_message = 'Invalid measurement scheme: %(reason)s.'


class ZeroProbabilityCondition(InterferometryError):
    default_code = 'zero_probability_condition'
    default_message = 'Conditioning outcome %(label)s has probability %(probability).3g.'


# --- ORACLE ---
class InvalidOracleConfig(InterferometryError):
    default_code = 'invalid_oracle_config'
    default_message = 'Invalid oracle configuration: %(reason)s.'
