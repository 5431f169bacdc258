"""Exception hierarchy for corewave.

Every error raised by library code derives from :class:`CorewaveError`, so
callers (and the CLI) can distinguish domain failures from programming bugs.
The CLI maps subtrees of this hierarchy onto exit codes: config problems → 2,
data problems → 3, numerical failures → 4.
"""


class CorewaveError(Exception):
    """Base class for all corewave errors."""


class ConfigError(CorewaveError):
    """Invalid configuration or invalid argument values (CLI exit code 2)."""


class DataError(CorewaveError):
    """Problems with input data files or their contents (CLI exit code 3)."""


class NumericalError(CorewaveError):
    """Numerical failures: non-convergence, degeneracy (CLI exit code 4)."""


# --- wavelet ---------------------------------------------------------------

class InvalidOrder(ConfigError):
    """Wavelet order outside the supported range 1..20."""


class UnknownFamily(ConfigError):
    """Wavelet family is not one of haar / daubechies / symlet."""


class SignalTooShort(DataError):
    """Signal too short to decompose (need at least 2 samples)."""


class NonFiniteInput(DataError):
    """Input contains NaN or infinity."""


class LevelOutOfRange(ConfigError):
    """Requested level is outside the decomposition's 0..J range."""


class LevelCapExceeded(ConfigError):
    """Requested maximum level exceeds the supported cap of 10."""


class EmptyInput(DataError):
    """Empty coefficient vector."""


# --- stats -----------------------------------------------------------------

class DegenerateSeries(NumericalError):
    """Series has zero sample variance where variation is required."""


class TooFewObservations(DataError):
    """Not enough observations for the requested statistic."""


class Misaligned(DataError):
    """Two series do not share a start date and length."""


class ZeroDenominator(NumericalError):
    """Parent statistic in a ratio is zero."""


# --- estimators ------------------------------------------------------------

class NonPositiveIndex(DataError):
    """Price index contains a zero or negative value."""


class TooShort(DataError):
    """Series too short for the requested estimator."""


class AllExcluded(ConfigError):
    """Component exclusion set covers the entire panel."""


class UnknownComponent(ConfigError):
    """Excluded component id not present in the panel."""


class InvalidTrim(ConfigError):
    """Trim percentage outside [0, 50)."""


class WindowTooLarge(ConfigError):
    """Moving-average window exceeds the series length."""


class InvalidGain(ConfigError):
    """Smoother gain outside (0, 1]."""


class NonConvergence(NumericalError):
    """Iterative estimation failed to converge; carries the best point found."""

    def __init__(self, message, iterations=None, best_point=None):
        super().__init__(message)
        self.iterations = iterations
        self.best_point = best_point


# --- econometrics ----------------------------------------------------------

class RankDeficient(NumericalError):
    """Regressor matrix is rank deficient (condition number >= 1e12)."""


class DimensionMismatch(DataError):
    """Regression inputs have inconsistent shapes."""


class HorizonTooLarge(ConfigError):
    """Prediction horizon leaves fewer than two overlapping observations."""


class CoreEqualsParent(NumericalError):
    """Core equals parent, so the prediction regressor is degenerate."""


class DegenerateResiduals(NumericalError):
    """First-stage residuals are numerically zero (exact linear dependence)."""


class InvalidThreshold(ConfigError):
    """Screening threshold outside its valid open interval."""


# --- pipeline --------------------------------------------------------------

class MalformedRow(DataError):
    """CSV row that cannot be parsed; carries the 1-based line number."""

    def __init__(self, message, line_number=None):
        super().__init__(message)
        self.line_number = line_number


class NonContiguousDates(DataError):
    """Monthly series has a gap or a duplicate month."""


class EmptyFile(DataError):
    """CSV file contains a header but no data rows."""


class WeightSumOutOfRange(DataError):
    """Panel weights for some month do not sum to 1 within tolerance."""


class IoError(DataError):
    """Output directory is not writable or a file operation failed."""
