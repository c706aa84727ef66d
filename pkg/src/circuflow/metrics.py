"""The four-member circularity metric family.

All four are quotients over one account, differing only in how much of the
input is admitted to the denominator:

    apparent              recycled / total
    dissipative-adjusted  recycled / (total - energetic)
    real                  recycled / (total - energetic - net stock additions)
    potential ceiling     (total - energetic) / total

Metrics return exact quotients; rounding to presentation percentages is the
rendering layer's job.  Zero denominators raise named errors instead of
collapsing to 0 or 1: a fully dissipative economy has no defined
circularity, which is worth saying out loud.
"""

from __future__ import annotations

from dataclasses import dataclass

from .accounts import MaterialFlowAccount
from .errors import MetricDomainError, UndefinedDenominatorError


@dataclass(frozen=True)
class CircularityReport:
    """The metric family plus the three mass denominators it used (Gt)."""

    apparent: float
    dissipative_adjusted: float
    real_rate: float
    potential_ceiling: float
    denominator_total: float
    denominator_recoverable: float
    denominator_annually_recoverable: float

    def rates(self) -> dict[str, float]:
        return {
            "apparent": self.apparent,
            "dissipative_adjusted": self.dissipative_adjusted,
            "real_rate": self.real_rate,
            "potential_ceiling": self.potential_ceiling,
        }


def apparent_circularity(account: MaterialFlowAccount) -> float:
    """Recycled share of all resource input (the headline circularity rate)."""
    total = float(account.total_input)
    if total <= 0:
        raise UndefinedDenominatorError("total_input", "apparent_circularity")
    return float(account.recycled_input) / total


def dissipative_adjusted_circularity(account: MaterialFlowAccount) -> float:
    """Recycled share of the non-dissipative input (total minus energetic)."""
    denominator = float(account.total_input) - float(account.energetic_input)
    if denominator <= 0:
        raise UndefinedDenominatorError(
            "total_input - energetic_input", "dissipative_adjusted_circularity"
        )
    return float(account.recycled_input) / denominator


def real_circularity(account: MaterialFlowAccount) -> float:
    """Recycled share of the annually recoverable input.

    Denominator excludes both the dissipative share and this year's net
    stock additions.  The raw quotient is returned; it exceeds 1 when the
    reverse flow is larger than the annually recoverable pool (a state
    ``metric_suite`` refuses to report).
    """
    denominator = (
        float(account.total_input)
        - float(account.energetic_input)
        - float(account.net_stock_additions)
    )
    if denominator <= 0:
        raise UndefinedDenominatorError(
            "total_input - energetic_input - net_stock_additions", "real_circularity"
        )
    return float(account.recycled_input) / denominator


def potential_ceiling(account: MaterialFlowAccount) -> float:
    """Maximum apparent circularity attainable with zero losses.

    The dissipative share of input can never come back as original
    material, so the ceiling is the non-energetic share of total input.
    """
    total = float(account.total_input)
    if total <= 0:
        raise UndefinedDenominatorError("total_input", "potential_ceiling")
    return (total - float(account.energetic_input)) / total


# The category identity (structural vs total - energetic) is exact only up
# to this relative drift; rates overshooting 1 by no more than the drift,
# amplified by total / denominator, are float noise and snap to 1.
_IDENTITY_REL = 1e-9


def metric_suite(account: MaterialFlowAccount) -> CircularityReport:
    """Assemble the four metrics and the denominators they divide by.

    The caller is expected to have validated the account.  Denominator
    errors from individual metrics propagate (each names its metric);
    a rate outside [0, 1] raises MetricDomainError.
    """
    total = float(account.total_input)
    recoverable = total - float(account.energetic_input)
    annually_recoverable = recoverable - float(account.net_stock_additions)
    rates = {
        "apparent": (apparent_circularity(account), total),
        "dissipative_adjusted": (dissipative_adjusted_circularity(account), recoverable),
        "real_rate": (real_circularity(account), annually_recoverable),
        "potential_ceiling": (potential_ceiling(account), total),
    }
    snapped = {}
    for name, (rate, denominator) in rates.items():
        noise = _IDENTITY_REL * max(total, 1.0) / denominator
        if 1.0 < rate <= 1.0 + noise:
            rate = 1.0
        elif not 0.0 <= rate <= 1.0:
            detail = ""
            if name == "real_rate" and rate > 1.0:
                detail = (
                    f": recycled_input ({float(account.recycled_input):.6g} Gt) exceeds the "
                    f"annually recoverable pool ({annually_recoverable:.6g} Gt)"
                )
            raise MetricDomainError(f"{name} = {rate:.6g} is outside [0, 1]{detail}")
        snapped[name] = rate
    report = CircularityReport(
        apparent=snapped["apparent"],
        dissipative_adjusted=snapped["dissipative_adjusted"],
        real_rate=snapped["real_rate"],
        potential_ceiling=snapped["potential_ceiling"],
        denominator_total=total,
        denominator_recoverable=recoverable,
        denominator_annually_recoverable=annually_recoverable,
    )
    # Same numerator over shrinking positive denominators: the chain is arithmetic.
    assert report.apparent <= report.dissipative_adjusted <= report.real_rate
    return report
