"""Chi-square and MAD conformity testing against an expected digit law.

Two MAD conventions circulate: the sum over bins of |f_obs - f_exp|, and
that sum divided by the bin count.  Reported conformity tables often use
the sum while the conventional class thresholds apply to the mean, so
both forms are first-class here and a disagreement flag is exposed.
"""

from __future__ import annotations

import enum
import operator
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq
from scipy.special import gammainc

from .digits import DigitTally
from .errors import DegenerateInputError, DomainError
from .laws import ExpectedDistribution, LawKind, expected_distribution


class ConformityClass(enum.Enum):
    """Ordered conformity verdicts, best to worst."""

    CLOSE = "close"
    ACCEPTABLE = "acceptable"
    MARGINAL = "marginal"
    NONCONFORMING = "nonconforming"

    @property
    def rank(self) -> int:
        return _CLASS_ORDER.index(self)


_CLASS_ORDER = [
    ConformityClass.CLOSE,
    ConformityClass.ACCEPTABLE,
    ConformityClass.MARGINAL,
    ConformityClass.NONCONFORMING,
]

# mean-MAD upper bounds for Close / Acceptable / Marginal, per law
_THRESHOLDS = {
    LawKind.FIRST_DIGIT: (0.006, 0.012, 0.015),
    LawKind.SECOND_DIGIT: (0.008, 0.010, 0.012),
    LawKind.FIRST_TWO_DIGITS: (0.0012, 0.0018, 0.0022),
}


@lru_cache(maxsize=None)
def _prob_vector(kind: LawKind) -> np.ndarray:
    dist = expected_distribution(kind)
    return np.array([dist.probs[b] for b in kind.bins])


def _count_vector(tally: DigitTally) -> np.ndarray:
    return np.array([tally.count(b) for b in tally.kind.bins], dtype=float)


def _check_pair(tally: DigitTally, expected: ExpectedDistribution):
    if not isinstance(tally, DigitTally) or not isinstance(expected, ExpectedDistribution):
        raise DomainError("chi_square/mad require a DigitTally and an ExpectedDistribution")
    if tally.kind is not expected.kind:
        raise DomainError(
            f"law mismatch: tally is {tally.kind.value}, expected distribution is {expected.kind.value}"
        )
    if tally.n_included <= 0:
        raise DegenerateInputError("cannot test an empty or all-excluded series")


def chi_square(tally: DigitTally, expected: ExpectedDistribution):
    """Goodness-of-fit statistic and degrees of freedom (bins - 1)."""
    _check_pair(tally, expected)
    observed = _count_vector(tally)
    e = tally.n_included * _prob_vector(tally.kind)
    statistic = float(((observed - e) ** 2 / e).sum())
    return statistic, tally.kind.bin_count - 1


def chi_square_critical(df, alpha=0.05) -> float:
    """Upper-tail chi-squared quantile.

    Computed by inverting the regularized incomplete gamma function with
    a bracketed root-find to absolute tolerance 1e-6; no quantile table
    is consulted.
    """
    try:
        df = operator.index(df)
    except TypeError:
        raise DomainError(f"df must be an integer, got {df!r}") from None
    if df < 1:
        raise DomainError(f"df must be at least 1, got {df}")
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie strictly between 0 and 1, got {alpha}")
    target = 1.0 - alpha

    def cdf_shifted(x):
        return gammainc(df / 2.0, x / 2.0) - target

    hi = float(max(2 * df, 16))
    while cdf_shifted(hi) < 0.0:
        hi *= 2.0
    return float(brentq(cdf_shifted, 0.0, hi, xtol=1e-6))


def mad_paper(tally: DigitTally, expected: ExpectedDistribution) -> float:
    """Sum over bins of |f_obs - f_exp| (the sum-form MAD)."""
    _check_pair(tally, expected)
    frequencies = _count_vector(tally) / tally.n_included
    return float(np.abs(frequencies - _prob_vector(tally.kind)).sum())


def mad_mean(tally: DigitTally, expected: ExpectedDistribution) -> float:
    """Sum-form MAD divided by the bin count (the thresholded form)."""
    return mad_paper(tally, expected) / tally.kind.bin_count


def classify(mad_mean_value, kind: LawKind) -> ConformityClass:
    """Map a mean-MAD value to a conformity class.

    Boundaries are inclusive in the lower (better) class.
    """
    value = float(mad_mean_value)
    if value < 0 or value != value:
        raise DomainError(f"mad value must be nonnegative, got {mad_mean_value!r}")
    close, acceptable, marginal = _THRESHOLDS[kind]
    if value <= close:
        return ConformityClass.CLOSE
    if value <= acceptable:
        return ConformityClass.ACCEPTABLE
    if value <= marginal:
        return ConformityClass.MARGINAL
    return ConformityClass.NONCONFORMING


@dataclass(frozen=True)
class TestResult:
    """Every decision-relevant statistic for one tally against one law."""

    kind: LawKind
    chi2: float
    df: int
    chi2_critical: float
    chi2_reject: bool
    mad_paper: float
    mad_mean: float
    conformity: ConformityClass
    alpha: float

    @property
    def mad_convention_disagrees(self) -> bool:
        """True when thresholding the sum form would change the verdict."""
        return classify(self.mad_paper, self.kind) is not self.conformity


def run_test(tally: DigitTally, expected: ExpectedDistribution, alpha=0.05) -> TestResult:
    """Compose chi-square and both MAD forms into one TestResult."""
    statistic, df = chi_square(tally, expected)
    critical = chi_square_critical(df, alpha)
    mad_sum = mad_paper(tally, expected)
    mad_avg = mad_sum / tally.kind.bin_count
    return TestResult(
        kind=tally.kind,
        chi2=statistic,
        df=df,
        chi2_critical=critical,
        chi2_reject=statistic > critical,
        mad_paper=mad_sum,
        mad_mean=mad_avg,
        conformity=classify(mad_avg, tally.kind),
        alpha=float(alpha),
    )
