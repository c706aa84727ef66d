"""Attribution of annual GDP across resource-flow categories.

GDP is partitioned five ways: value created by the reverse flow (recycling
and recovery sectors), by dissipative flows (energy, agri-food, chemicals),
by net additions to stock (net fixed capital formation), by waste (fixed at
zero, unmanaged waste adds nothing), and a residual.  The residual is
never an input: whatever the year's resource inputs cannot explain is
booked to the use and management of the pre-existing stock base (the
"legacy stocks").
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

from .errors import (
    OverAttributionError,
    StockDepletionWarning,
    UndefinedDenominatorError,
)
from .quantities import MonetaryQuantity

CATEGORY_REVERSE_FLOW = "reverse_flow"
CATEGORY_DISSIPATIVE_FLOW = "dissipative_flow"
SECTOR_CATEGORIES = (CATEGORY_REVERSE_FLOW, CATEGORY_DISSIPATIVE_FLOW)

#: Consumption-of-fixed-capital rate assumed when a dataset does not carry one.
DEFAULT_CFC_RATE = 0.13

# Slack for "attributed <= gdp" comparisons; economies whose categories sum
# exactly to GDP must not trip the over-attribution error on float dust.
_ATTRIBUTION_REL = 1e-9


@dataclass(frozen=True)
class SectorValue:
    """Annual value a sector adds, tagged with the flow category it rides on."""

    name: str
    value: MonetaryQuantity
    category: str

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("sector name must be non-empty")
        object.__setattr__(self, "value", MonetaryQuantity(self.value))
        if float(self.value) < 0:
            raise ValueError(f"sector value must be non-negative, got {float(self.value)!r}")
        if self.category not in SECTOR_CATEGORIES:
            raise ValueError(
                f"sector category must be one of {SECTOR_CATEGORIES}, got {self.category!r}"
            )


@dataclass(frozen=True)
class EconomicAccount:
    """One year's monetary aggregates, in trillion currency units.

    ``services_share`` is context only (displayed, never computed with).
    """

    year: int
    gdp: MonetaryQuantity
    gfcf_rate: float
    cfc_rate: float = DEFAULT_CFC_RATE
    sectors: tuple[SectorValue, ...] = field(default_factory=tuple)
    services_share: float | None = None

    def __post_init__(self) -> None:
        if isinstance(self.year, bool) or not isinstance(self.year, int):
            raise ValueError(f"year must be an integer, got {self.year!r}")
        object.__setattr__(self, "gdp", MonetaryQuantity(self.gdp))
        if float(self.gdp) < 0:
            raise ValueError(f"gdp must be non-negative, got {float(self.gdp)!r}")
        for name in ("gfcf_rate", "cfc_rate"):
            rate = float(getattr(self, name))
            if not math.isfinite(rate) or not 0.0 <= rate <= 1.0:
                raise ValueError(f"{name} must be a fraction in [0, 1], got {rate!r}")
            object.__setattr__(self, name, rate)
        object.__setattr__(self, "sectors", tuple(self.sectors))
        if self.services_share is not None:
            share = float(self.services_share)
            if not math.isfinite(share) or not 0.0 <= share <= 1.0:
                raise ValueError(f"services_share must be a fraction in [0, 1], got {share!r}")
            object.__setattr__(self, "services_share", share)

    def sector_total(self, category: str) -> float:
        return sum(float(s.value) for s in self.sectors if s.category == category)


@dataclass(frozen=True)
class ValueAttribution:
    """Five-way partition of GDP; values in trillions, shares as fractions.

    The five values sum to gdp by construction (legacy is the residual);
    waste_value is identically zero.
    """

    gdp: MonetaryQuantity
    reverse_flow_value: MonetaryQuantity
    dissipative_flow_value: MonetaryQuantity
    stock_addition_value: MonetaryQuantity
    waste_value: MonetaryQuantity
    legacy_stock_value: MonetaryQuantity
    reverse_flow_share: float
    dissipative_flow_share: float
    stock_addition_share: float
    waste_share: float
    legacy_stock_share: float

    def values_by_category(self) -> dict[str, float]:
        return {
            "reverse_flow": float(self.reverse_flow_value),
            "dissipative_flow": float(self.dissipative_flow_value),
            "stock_addition": float(self.stock_addition_value),
            "waste": float(self.waste_value),
            "legacy_stock": float(self.legacy_stock_value),
        }

    def shares_by_category(self) -> dict[str, float]:
        return {
            "reverse_flow": self.reverse_flow_share,
            "dissipative_flow": self.dissipative_flow_share,
            "stock_addition": self.stock_addition_share,
            "waste": self.waste_share,
            "legacy_stock": self.legacy_stock_share,
        }


def nfcf_rate(economy: EconomicAccount) -> float:
    """Net fixed capital formation as a GDP share: gross formation minus consumption.

    Negative results (net stock depletion) are legal and flagged with a
    StockDepletionWarning.
    """
    rate = economy.gfcf_rate - economy.cfc_rate
    if rate < 0:
        warnings.warn(
            f"net fixed capital formation is negative ({rate:+.4f} of GDP): "
            "fixed stocks are being depleted",
            StockDepletionWarning,
            stacklevel=2,
        )
    return rate


def stock_addition_value(economy: EconomicAccount) -> MonetaryQuantity:
    """GDP value created by this year's net additions to stock (NFCF x GDP)."""
    return MonetaryQuantity(nfcf_rate(economy) * float(economy.gdp))


def reverse_flow_gdp_share(economy: EconomicAccount) -> float:
    """Share of GDP generated by reverse-flow (recovery) sectors."""
    if float(economy.gdp) <= 0:
        raise UndefinedDenominatorError("gdp", "reverse_flow_gdp_share")
    return economy.sector_total(CATEGORY_REVERSE_FLOW) / float(economy.gdp)


def attribute_value(economy: EconomicAccount) -> ValueAttribution:
    """Partition GDP across flow categories and derive the legacy-stock residual.

    Raises:
        OverAttributionError: If the non-residual categories exceed GDP.
        UndefinedDenominatorError: If GDP is zero (shares undefined).
    """
    gdp = float(economy.gdp)
    if gdp <= 0:
        raise UndefinedDenominatorError("gdp", "attribute_value")
    reverse = economy.sector_total(CATEGORY_REVERSE_FLOW)
    dissipative = economy.sector_total(CATEGORY_DISSIPATIVE_FLOW)
    stock = float(stock_addition_value(economy))
    waste = 0.0  # unmanaged waste adds no value by definition
    attributed = reverse + dissipative + stock + waste
    excess = attributed - gdp
    if excess > _ATTRIBUTION_REL * max(gdp, 1.0):
        raise OverAttributionError(excess)
    legacy = gdp - attributed
    if legacy < 0:
        legacy = 0.0  # float dust from the exact-sum edge case
    return ValueAttribution(
        gdp=MonetaryQuantity(gdp),
        reverse_flow_value=MonetaryQuantity(reverse),
        dissipative_flow_value=MonetaryQuantity(dissipative),
        stock_addition_value=MonetaryQuantity(stock),
        waste_value=MonetaryQuantity(waste),
        legacy_stock_value=MonetaryQuantity(legacy),
        reverse_flow_share=reverse / gdp,
        dissipative_flow_share=dissipative / gdp,
        stock_addition_share=stock / gdp,
        waste_share=waste / gdp,
        legacy_stock_share=legacy / gdp,
    )


def material_intensity(mass_kg: float, spend: float) -> float:
    """Mass used per unit of spending (kg per currency unit) in a consumption domain."""
    mass = float(mass_kg)
    if not math.isfinite(mass) or mass < 0:
        raise ValueError(f"mass must be non-negative and finite, got {mass_kg!r}")
    if not (float(spend) > 0):
        raise UndefinedDenominatorError("spend", "material_intensity")
    return mass / float(spend)
