"""Closed-form false positive and replication rates under NHST,
with and without P-hacking, and the outcome proportion tables behind them.

Conventions used throughout:

* ``alpha`` is the operative significance cutoff, ``beta`` the Type-II
  error rate at that cutoff (power = 1 - beta), ``phi`` the proportion of
  tested hypotheses with a true null (prior odds in favor of H1 are
  ``(1 - phi) / phi``).
* ``h`` is the proportion of all observed P-values that are hacked; by
  convention every hacked P-value is significant at the baseline cutoff.
* ``psi`` is the persistence: the proportion of hacked P-values that stay
  significant after the cutoff is lowered.
"""

from __future__ import annotations

from dataclasses import dataclass

from scipy.stats import norm

from .errors import CutoffAboveBaselineError, DegenerateDesignError, DomainError

__all__ = [
    "TestDesign",
    "DirectPsi",
    "InterpolatedPsi",
    "LowerBoundPsi",
    "HackingRegime",
    "OutcomeTable",
    "Rates",
    "fpr_sound",
    "rr_sound",
    "table_sound",
    "fpr_hacked",
    "rr_hacked",
    "resolve_psi",
    "fpr_regime",
    "rr_regime",
    "fpr_bound",
    "table_regime",
    "power_at_new_cutoff",
]

#: Absolute tolerance for internal identity checks (complementarity,
#: table cell sums).  Paper-value regressions use a looser 5e-3 because
#: the source reports two decimals.
IDENTITY_ATOL = 1e-12


def _check_prob(name, value, *, lo=0.0, hi=1.0, open_lo=False, open_hi=False):
    if not (lo <= value <= hi) or (open_lo and value == lo) or (open_hi and value == hi):
        lo_b = "(" if open_lo else "["
        hi_b = ")" if open_hi else "]"
        raise DomainError(f"{name}={value!r} outside {lo_b}{lo}, {hi}{hi_b}")


@dataclass(frozen=True)
class TestDesign:
    """Significance level, Type-II error rate and true-null proportion
    for a family of tests.

    ``beta`` is interpreted at ``alpha``, i.e. power = 1 - beta is the
    rejection probability of a sound test of a false null at this cutoff.
    """

    alpha: float
    beta: float
    phi: float

    def __post_init__(self):
        _check_prob("alpha", self.alpha, open_lo=True, open_hi=True)
        _check_prob("beta", self.beta)
        _check_prob("phi", self.phi)

    @property
    def power(self) -> float:
        return 1.0 - self.beta

    @property
    def prior_odds(self) -> float:
        """Odds (1 - phi) / phi in favor of H1; requires phi > 0."""
        if self.phi == 0.0:
            raise DomainError("prior_odds undefined for phi = 0")
        return (1.0 - self.phi) / self.phi

    def with_alpha(self, alpha: float) -> "TestDesign":
        return TestDesign(alpha, self.beta, self.phi)


@dataclass(frozen=True)
class DirectPsi:
    """Persistence given directly as a number in [0, 1]."""

    value: float

    def __post_init__(self):
        _check_prob("psi", self.value)


@dataclass(frozen=True)
class InterpolatedPsi:
    """Persistence interpolated between the naive CDF value of hacked
    P-values below the new cutoff (pi = 0) and full persistence (pi = 1):
    resolved psi = pi + (1 - pi) * naive_cdf.
    """

    pi: float
    naive_cdf: float

    def __post_init__(self):
        _check_prob("pi", self.pi)
        _check_prob("naive_cdf", self.naive_cdf)


@dataclass(frozen=True)
class LowerBoundPsi:
    """Conservative choice naive_cdf = 0, so resolved psi = pi.

    This is the computable lower-bound curve: any interpolated persistence
    with the same pi is at least this large.
    """

    pi: float

    def __post_init__(self):
        _check_prob("pi", self.pi)


PsiSpec = DirectPsi | InterpolatedPsi | LowerBoundPsi


@dataclass(frozen=True)
class HackingRegime:
    """Hacking rate plus a persistence specification relative to a
    baseline cutoff (at which all hacked P-values are significant)."""

    h: float
    baseline_alpha: float = 0.05
    psi_spec: PsiSpec = DirectPsi(1.0)

    def __post_init__(self):
        _check_prob("h", self.h, open_hi=True)
        _check_prob("baseline_alpha", self.baseline_alpha, open_lo=True, open_hi=True)


def resolve_psi(regime: HackingRegime, new_alpha: float) -> float:
    """Persistence of hacked P-values at ``new_alpha``.

    At the baseline cutoff the answer is exactly 1 regardless of mode.
    Raises CutoffAboveBaselineError for new_alpha > baseline_alpha: the
    monotonicity assumption only covers lowering the cutoff.
    """
    _check_prob("new_alpha", new_alpha, open_lo=True, open_hi=True)
    if new_alpha > regime.baseline_alpha:
        raise CutoffAboveBaselineError(
            f"new_alpha={new_alpha} > baseline_alpha={regime.baseline_alpha}"
        )
    if new_alpha == regime.baseline_alpha:
        return 1.0
    spec = regime.psi_spec
    if isinstance(spec, DirectPsi):
        return spec.value
    if isinstance(spec, InterpolatedPsi):
        return spec.pi * 1.0 + (1.0 - spec.pi) * spec.naive_cdf
    if isinstance(spec, LowerBoundPsi):
        return spec.pi
    raise TypeError(f"unknown psi spec {spec!r}")


@dataclass(frozen=True)
class OutcomeTable:
    """The nine-cell proportion table: sound/unsound columns split by
    H0 status and reject/not-reject rows, plus the three column masses.

    Cells sum to 1; with h = 0 the unsound column vanishes and the table
    reduces to the classical no-hacking proportions.
    """

    sound_true_reject: float
    sound_true_notreject: float
    unsound_reject: float
    unsound_notreject: float
    sound_false_reject: float
    sound_false_notreject: float
    phi_sound: float
    mass_unsound: float
    mass_sound_false: float

    def __post_init__(self):
        for name, cell in self.cells().items():
            if cell < 0:
                raise DomainError(f"negative cell {name}={cell}")
        total = sum(self.cells().values())
        if abs(total - 1.0) > IDENTITY_ATOL:
            raise DomainError(f"cells sum to {total}, not 1")
        checks = [
            (self.sound_true_reject + self.sound_true_notreject, self.phi_sound),
            (self.unsound_reject + self.unsound_notreject, self.mass_unsound),
            (self.sound_false_reject + self.sound_false_notreject, self.mass_sound_false),
        ]
        for got, declared in checks:
            if abs(got - declared) > IDENTITY_ATOL:
                raise DomainError(f"column sum {got} != declared mass {declared}")

    def cells(self) -> dict[str, float]:
        return {
            "sound_true_reject": self.sound_true_reject,
            "sound_true_notreject": self.sound_true_notreject,
            "unsound_reject": self.unsound_reject,
            "unsound_notreject": self.unsound_notreject,
            "sound_false_reject": self.sound_false_reject,
            "sound_false_notreject": self.sound_false_notreject,
        }

    @property
    def reject_total(self) -> float:
        return self.sound_true_reject + self.unsound_reject + self.sound_false_reject

    def rates(self) -> "Rates":
        """FPR/RR computed directly from the reject-row cells."""
        total = self.reject_total
        if total == 0.0:
            raise DegenerateDesignError("no rejections: rates undefined")
        fpr = (self.sound_true_reject + self.unsound_reject) / total
        return Rates(fpr=fpr, rr=self.sound_false_reject / total)


@dataclass(frozen=True)
class Rates:
    fpr: float
    rr: float

    def __post_init__(self):
        if abs(self.fpr + self.rr - 1.0) > IDENTITY_ATOL:
            raise DomainError(f"fpr + rr = {self.fpr + self.rr} != 1")


def fpr_sound(design: TestDesign) -> float:
    """False positive rate with no P-hacking:
    alpha*phi / (alpha*phi + (1-beta)*(1-phi))."""
    a, b, p = design.alpha, design.beta, design.phi
    num = a * p
    den = num + (1.0 - b) * (1.0 - p)
    if den == 0.0:
        raise DegenerateDesignError("no rejections occur (zero denominator)")
    return num / den


def rr_sound(design: TestDesign) -> float:
    """Replication rate with no P-hacking; complementary to fpr_sound
    under perfect reproducibility."""
    a, b, p = design.alpha, design.beta, design.phi
    tp = (1.0 - b) * (1.0 - p)
    den = a * p + tp
    if den == 0.0:
        raise DegenerateDesignError("no rejections occur (zero denominator)")
    return tp / den


def fpr_hacked(design: TestDesign, h: float) -> float:
    """False positive rate when a proportion h of all P-values is hacked
    and every hacked P-value is significant at ``design.alpha``."""
    _check_prob("h", h, open_hi=True)
    a, b, p = design.alpha, design.beta, design.phi
    num = a * p * (1.0 - h) + h
    den = num + (1.0 - b) * (1.0 - p) * (1.0 - h)
    if den == 0.0:
        raise DegenerateDesignError("no rejections occur (zero denominator)")
    return num / den


def rr_hacked(design: TestDesign, h: float) -> float:
    """Replication rate under hacking, from its own closed form
    (true-positive mass over total significant mass)."""
    _check_prob("h", h, open_hi=True)
    a, b, p = design.alpha, design.beta, design.phi
    tp = (1.0 - b) * (1.0 - p) * (1.0 - h)
    den = a * p * (1.0 - h) + tp + h
    if den == 0.0:
        raise DegenerateDesignError("no rejections occur (zero denominator)")
    return tp / den


def fpr_regime(design_new: TestDesign, h: float, psi: float) -> float:
    """False positive rate at a lowered cutoff.

    ``design_new.alpha`` is the new cutoff and ``design_new.beta`` the
    Type-II rate achieved at it; ``psi`` is the persistence of hacked
    P-values at the new cutoff.  With psi = 1 this equals fpr_hacked
    evaluated at the new cutoff.
    """
    _check_prob("h", h, open_hi=True)
    _check_prob("psi", psi)
    a, b, p = design_new.alpha, design_new.beta, design_new.phi
    num = a * p * (1.0 - h) + h * psi
    den = num + (1.0 - b) * (1.0 - p) * (1.0 - h)
    if den == 0.0:
        raise DegenerateDesignError("no rejections occur (zero denominator)")
    return num / den


def rr_regime(design_new: TestDesign, h: float, psi: float) -> float:
    """Replication rate at a lowered cutoff; complementary to fpr_regime."""
    _check_prob("h", h, open_hi=True)
    _check_prob("psi", psi)
    a, b, p = design_new.alpha, design_new.beta, design_new.phi
    tp = (1.0 - b) * (1.0 - p) * (1.0 - h)
    den = a * p * (1.0 - h) + h * psi + tp
    if den == 0.0:
        raise DegenerateDesignError("no rejections occur (zero denominator)")
    return tp / den


def fpr_bound(design_new: TestDesign, h: float, pi: float) -> float:
    """Conservative lower bound on the regime-change FPR, obtained by
    substituting the persistence parameter pi for the resolved psi
    (resolved psi >= pi, and fpr_regime is increasing in psi)."""
    return fpr_regime(design_new, h, pi)


def table_sound(design: TestDesign) -> OutcomeTable:
    """Proportion table with no hacking (unsound column all zero)."""
    return table_regime(design, 0.0, 1.0)


def table_regime(design_new: TestDesign, h: float, psi: float) -> OutcomeTable:
    """Proportion table under hacking with persistence ``psi`` at the
    operative cutoff ``design_new.alpha``.

    psi = 1 gives the baseline-cutoff hacking table; h = 0 gives the
    classical table.
    """
    _check_prob("h", h, open_hi=True)
    _check_prob("psi", psi)
    a, b, p = design_new.alpha, design_new.beta, design_new.phi
    sound = 1.0 - h
    return OutcomeTable(
        sound_true_reject=a * p * sound,
        sound_true_notreject=(1.0 - a) * p * sound,
        unsound_reject=h * psi,
        unsound_notreject=h * (1.0 - psi),
        sound_false_reject=(1.0 - b) * (1.0 - p) * sound,
        sound_false_notreject=b * (1.0 - p) * sound,
        phi_sound=p * sound,
        mass_unsound=h,
        mass_sound_false=(1.0 - p) * sound,
    )


def power_at_new_cutoff(power_at_alpha: float, alpha: float, new_alpha: float) -> float:
    """Power at a lower cutoff under a one-sided normal shift with the
    sample size fixed.

    The effect delta is calibrated so the rejection probability at
    ``alpha`` equals ``power_at_alpha``; the returned value is the
    rejection probability of the same test at ``new_alpha``.  This is a
    convenience mapping, never applied implicitly by the rate formulas.
    """
    if not (0.0 < power_at_alpha < 1.0):
        raise DomainError(f"power_at_alpha={power_at_alpha} outside (0, 1)")
    if not (0.0 < new_alpha <= alpha < 1.0):
        raise DomainError(f"need 0 < new_alpha <= alpha < 1, got {new_alpha}, {alpha}")
    delta = norm.ppf(power_at_alpha) + norm.ppf(1.0 - alpha)
    return float(norm.cdf(delta - norm.ppf(1.0 - new_alpha)))


def normal_shift_delta(power: float, alpha: float) -> float:
    """Effect size of the one-sided z-test with the given power at alpha."""
    if not (0.0 < power < 1.0) or not (0.0 < alpha < 1.0):
        raise DomainError("power and alpha must lie in (0, 1)")
    return float(norm.ppf(power) + norm.ppf(1.0 - alpha))
