"""Fitting the hacking rate to observed replication counts and solving
inverse persistence problems.

The psychology replication counts (36/97 overall; 24/47 for original
P < 0.005 and 12/50 for 0.005 < P < 0.05) ship as ``PSYCH_REP``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from scipy.optimize import bisect
from scipy.stats import norm

from .errors import DomainError, NoRootError, UnachievableError
from .rates import TestDesign, normal_shift_delta, rr_hacked, rr_regime

__all__ = [
    "ReplicationStratum",
    "ReplicationData",
    "HackingEstimate",
    "PSYCH_REP",
    "fit_h",
    "fit_h_stratified",
    "rr_ratio",
    "solve_psi_for_rr_ratio",
    "PsiSolution",
]

_H_MAX = 1.0 - 1e-12
_ROOT_XTOL = 1e-12


@dataclass(frozen=True)
class ReplicationStratum:
    p_low: float
    p_high: float
    total: int
    replicated: int

    def __post_init__(self):
        if not 0.0 <= self.p_low < self.p_high:
            raise DomainError(f"bad P-value range ({self.p_low}, {self.p_high})")
        if self.replicated < 0 or self.total < 0 or self.replicated > self.total:
            raise DomainError(f"bad counts {self.replicated}/{self.total}")

    @property
    def rate(self) -> float:
        return self.replicated / self.total


@dataclass(frozen=True)
class ReplicationData:
    """Observed replication counts, overall and stratified by the
    original study's P-value range."""

    total: int
    replicated: int
    strata: tuple[ReplicationStratum, ...] = ()

    def __post_init__(self):
        if self.total <= 0:
            raise DomainError("overall total must be positive")
        if self.replicated < 0 or self.replicated > self.total:
            raise DomainError(f"bad counts {self.replicated}/{self.total}")

    @property
    def rate(self) -> float:
        return self.replicated / self.total


#: Replication counts from the psychology replication project.
PSYCH_REP = ReplicationData(
    total=97,
    replicated=36,
    strata=(
        ReplicationStratum(0.0, 0.005, total=47, replicated=24),
        ReplicationStratum(0.005, 0.05, total=50, replicated=12),
    ),
)


@dataclass(frozen=True)
class HackingEstimate:
    """Pooled point estimate plus the stratified range.

    ``residuals`` holds one record per stratum: observed rate, fitted
    rate at the root (or the nearest attainable rate when no root
    exists), the root itself (None if absent) and a ``no_root`` flag.
    The point comes from the pooled fit, so it need not lie inside
    [range_low, range_high].
    """

    point: float
    range_low: float
    range_high: float
    residuals: tuple[dict, ...] = field(default_factory=tuple)


def fit_h(data: ReplicationData, design: TestDesign) -> float:
    """Hacking rate whose predicted replication rate matches the pooled
    observed rate, by bisection on [0, 1).

    rr_hacked is strictly decreasing in h (when the design has positive
    true-positive mass), so the root is unique.  Raises NoRootError when
    the observed rate is 0 or at least the no-hacking prediction.
    """
    return _solve_h_for_rate(data.rate, design)


def _solve_h_for_rate(rate: float, design: TestDesign) -> float:
    rr0 = rr_hacked(design, 0.0)
    if rate <= 0.0:
        raise NoRootError(f"observed rate {rate} <= 0: no h in [0, 1) fits")
    if rate >= rr0:
        raise NoRootError(
            f"observed rate {rate} >= no-hacking prediction {rr0:.6g}: "
            "bracket [0, 1) contains no root"
        )

    def f(h):
        return rr_hacked(design, h) - rate

    return float(bisect(f, 0.0, _H_MAX, xtol=_ROOT_XTOL))


def _stratum_split(design: TestDesign) -> tuple[float, float]:
    """Fraction of significant sound P-values falling below 0.005 under
    the 0.05 regime, for (false nulls, true nulls).

    True-null sound P-values are uniform; false-null sound P-values
    follow the one-sided normal shift calibrated to the design's power.
    """
    delta = normal_shift_delta(design.power, design.alpha)
    sub = float(norm.cdf(delta - norm.ppf(1.0 - 0.005)))
    return sub / design.power, 0.005 / design.alpha


def _clustered_stratum_rate(design: TestDesign, stratum: ReplicationStratum, h: float) -> float:
    """Predicted replication rate inside one stratum when all hacked
    P-values cluster just below the operative threshold (i.e. land in
    the upper stratum)."""
    tp_frac, fp_frac = _stratum_split(design)
    upper = stratum.p_high >= design.alpha
    if upper:
        tp_frac, fp_frac = 1.0 - tp_frac, 1.0 - fp_frac
    a, b, p = design.alpha, design.beta, design.phi
    sound = 1.0 - h
    tp = (1.0 - b) * (1.0 - p) * sound * tp_frac
    fp = a * p * sound * fp_frac
    hacked = h if upper else 0.0
    den = tp + fp + hacked
    if den == 0.0:
        raise NoRootError("empty stratum prediction")
    return tp / den


def fit_h_stratified(
    data: ReplicationData,
    design: TestDesign,
    model: str = "per_stratum_rate",
) -> HackingEstimate:
    """Pooled point estimate plus a range from per-stratum fits.

    Two stratum models are available:

    * ``per_stratum_rate`` (default): each stratum's observed replication
      rate is fitted with the pooled hacked-replication formula, as if it
      were an independent observation of the overall rate.  On the
      psychology counts this yields endpoints near 0.02 and 0.16,
      bracketing the published 0.05-0.15 range.
    * ``threshold_clustering``: hacked P-values are assigned entirely to
      the stratum just below the baseline cutoff; sound P-values split
      between strata by the uniform law (true nulls) and the normal-shift
      law (false nulls).  Under this model the lower stratum's predicted
      rate does not depend on h, so that stratum usually yields no root
      (flagged in residuals).
    """
    if not data.strata:
        raise DomainError("stratified fit requires strata")
    point = fit_h(data, design)
    roots = []
    residuals = []
    for stratum in data.strata:
        rec = {
            "p_range": (stratum.p_low, stratum.p_high),
            "observed": stratum.rate,
            "root": None,
            "fitted": None,
            "no_root": False,
        }
        try:
            if model == "per_stratum_rate":
                root = _solve_h_for_rate(stratum.rate, design)
                rec["fitted"] = rr_hacked(design, root)
            elif model == "threshold_clustering":
                root = _solve_h_clustered(design, stratum)
                rec["fitted"] = _clustered_stratum_rate(design, stratum, root)
            else:
                raise DomainError(f"unknown stratum model {model!r}")
            rec["root"] = root
            roots.append(root)
        except NoRootError:
            rec["no_root"] = True
            rec["fitted"] = _nearest_attainable(model, design, stratum)
        residuals.append(rec)
    if not roots:
        raise NoRootError("no stratum admitted a root")
    lo = min(max(r, 0.0) for r in roots)
    hi = max(min(r, _H_MAX) for r in roots)
    return HackingEstimate(point=point, range_low=lo, range_high=hi, residuals=tuple(residuals))


def _solve_h_clustered(design: TestDesign, stratum: ReplicationStratum) -> float:
    rate = stratum.rate

    def f(h):
        return _clustered_stratum_rate(design, stratum, h) - rate

    f0, f1 = f(0.0), f(_H_MAX)
    if f0 * f1 > 0.0:
        raise NoRootError(
            f"stratum ({stratum.p_low}, {stratum.p_high}): predicted rate "
            f"spans [{min(f0, f1) + rate:.4g}, {max(f0, f1) + rate:.4g}], "
            f"observed {rate:.4g} outside"
        )
    return float(bisect(f, 0.0, _H_MAX, xtol=_ROOT_XTOL))


def _nearest_attainable(model, design, stratum):
    if model == "per_stratum_rate":
        return rr_hacked(design, 0.0)
    return _clustered_stratum_rate(design, stratum, 0.0)


def rr_ratio(design_new: TestDesign, design_old: TestDesign, h: float, psi: float) -> float:
    """Replication rate under the new cutoff relative to the hacked
    replication rate under the old cutoff."""
    old = rr_hacked(design_old, h)
    if old == 0.0:
        raise DomainError("old replication rate is 0: ratio undefined")
    return rr_regime(design_new, h, psi) / old


class PsiSolution(NamedTuple):
    psi: float
    achievable: bool


def solve_psi_for_rr_ratio(
    target_ratio: float,
    design_new: TestDesign,
    design_old: TestDesign,
    h: float,
    strict: bool = False,
) -> PsiSolution:
    """Persistence at which the replication-rate ratio equals
    ``target_ratio``.

    The ratio is strictly decreasing in psi (for h > 0), so bisection on
    [0, 1] suffices.  When the target lies outside the attainable range
    the nearest boundary is returned with ``achievable=False``; with
    ``strict=True`` an UnachievableError is raised instead.
    """
    if target_ratio <= 0.0:
        raise DomainError(f"target_ratio={target_ratio} must be positive")
    if h <= 0.0:
        raise DomainError("solve requires h > 0 (psi has no effect at h = 0)")

    def gap(psi):
        return rr_ratio(design_new, design_old, h, psi) - target_ratio

    at0, at1 = gap(0.0), gap(1.0)
    for boundary, value in ((0.0, at0), (1.0, at1)):
        if value == 0.0:
            return PsiSolution(boundary, True)
    if at0 < 0.0 or at1 > 0.0:
        boundary = 0.0 if at0 < 0.0 else 1.0
        if strict:
            raise UnachievableError(
                f"ratio {target_ratio} unattainable; nearest boundary psi={boundary}"
            )
        return PsiSolution(boundary, False)
    return PsiSolution(float(bisect(gap, 0.0, 1.0, xtol=_ROOT_XTOL)), True)
