"""Economy-wide material flow account for one year, with consistency checks.

All masses are annual aggregates in Gt/yr.  The account keeps two books:

    total_input = energetic_input + structural_input                (exact)
    total_input ~ emissions_output + waste_output + net_stock_additions

The second identity is approximate: published aggregates are rounded, so a
bounded unexplained residual is tolerated (default 5% of total input) and
reported, never hidden.  The recovered reverse flow (recycled_input) counts
inside both total_input and structural_input (secondary materials are
non-energetic), so the output side of the balance carries no recovery bin.

Accounts are immutable values; ``validate`` is a pure function and the
single place where cross-field rules are judged.  Construction only rejects
field-level nonsense (negative or non-finite masses).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import AccountInvariantError, UndefinedDenominatorError
from .quantities import MassQuantity

DEFAULT_BALANCE_TOLERANCE = 0.05

# Residuals at or below this share of total input count as exactly balanced;
# absorbs float rounding when accounts are scaled or rebuilt from parts.
_EXACT_BALANCE_REL = 1e-12
# The category identity is "exact" up to the same kind of float drift.
_CATEGORY_REL = 1e-9

MASS_FIELDS = (
    "total_input",
    "energetic_input",
    "structural_input",
    "recycled_input",
    "emissions_output",
    "waste_output",
    "net_stock_additions",
)

# Stable invariant codes, usable by callers to tell violations apart.
POSITIVE_TOTAL_INPUT = "positive_total_input"
CATEGORY_SUM = "category_sum"
RECYCLED_WITHIN_STRUCTURAL = "recycled_within_structural"
STOCK_ADDITIONS_WITHIN_STRUCTURAL = "stock_additions_within_structural"
MASS_BALANCE = "mass_balance"


@dataclass(frozen=True)
class MaterialFlowAccount:
    """One year's economy-wide mass flows, in Gt/yr.

    Attributes:
        year: Calendar year of the account.
        total_input: All resource input to the socioeconomic system.
        energetic_input: Dissipative share (fossil fuels, burned biomass).
        structural_input: Structural and technical materials.
        recycled_input: Reverse flow of recovered secondary materials
            (a subset of structural_input, hence of total_input).
        emissions_output: Air emissions.
        waste_output: Solid and liquid waste.
        net_stock_additions: Net additions to in-use stocks (buildings,
            infrastructure, machinery), unavailable for same-year recovery.
        balance_tolerance: Unexplained residual permitted, as a fraction
            of total_input.
    """

    year: int
    total_input: MassQuantity
    energetic_input: MassQuantity
    structural_input: MassQuantity
    recycled_input: MassQuantity
    emissions_output: MassQuantity
    waste_output: MassQuantity
    net_stock_additions: MassQuantity
    balance_tolerance: float = DEFAULT_BALANCE_TOLERANCE

    def __post_init__(self) -> None:
        if isinstance(self.year, bool) or not isinstance(self.year, int):
            raise ValueError(f"year must be an integer, got {self.year!r}")
        for name in MASS_FIELDS:
            object.__setattr__(self, name, MassQuantity(getattr(self, name)))
        tol = float(self.balance_tolerance)
        if not math.isfinite(tol) or not 0.0 <= tol <= 1.0:
            raise ValueError(f"balance_tolerance must be a fraction in [0, 1], got {tol!r}")
        object.__setattr__(self, "balance_tolerance", tol)

    def mass_residual(self) -> float:
        """Unexplained mass: total input minus the sum of the output bins."""
        return float(self.total_input) - (
            float(self.emissions_output)
            + float(self.waste_output)
            + float(self.net_stock_additions)
        )

    def scaled(self, factor: float) -> "MaterialFlowAccount":
        """Return a copy with every mass field multiplied by ``factor`` (> 0)."""
        if not (factor > 0 and math.isfinite(factor)):
            raise ValueError(f"scale factor must be positive and finite, got {factor!r}")
        values = {name: float(getattr(self, name)) * factor for name in MASS_FIELDS}
        return MaterialFlowAccount(year=self.year, balance_tolerance=self.balance_tolerance, **values)


class ValidationStatus(Enum):
    PASS = "pass"
    PASS_WITH_WARNING = "pass-with-warning"
    FAIL = "fail"


@dataclass(frozen=True)
class CheckResult:
    """One invariant's verdict: ``invariant`` is a stable code, message is for humans."""

    invariant: str
    passed: bool
    message: str


@dataclass(frozen=True)
class ValidationOutcome:
    status: ValidationStatus
    residual: float
    residual_share: float
    checks: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return self.status is not ValidationStatus.FAIL

    @property
    def violations(self) -> tuple[CheckResult, ...]:
        return tuple(check for check in self.checks if not check.passed)


def validate(account: MaterialFlowAccount) -> ValidationOutcome:
    """Judge every cross-field invariant of an account.

    Returns PASS when all invariants hold and the books close exactly,
    PASS_WITH_WARNING when the only blemish is a nonzero residual within
    tolerance, and FAIL otherwise (each violated invariant listed).
    Pure and idempotent: the same account always yields the same outcome.
    """
    checks: list[CheckResult] = []
    total = float(account.total_input)

    checks.append(
        CheckResult(
            POSITIVE_TOTAL_INPUT,
            total > 0,
            "total_input is positive"
            if total > 0
            else "total_input must be positive; every rate downstream divides by it",
        )
    )

    category_gap = (
        float(account.energetic_input) + float(account.structural_input) - total
    )
    category_ok = abs(category_gap) <= _CATEGORY_REL * max(total, 1.0)
    checks.append(
        CheckResult(
            CATEGORY_SUM,
            category_ok,
            "energetic_input + structural_input equals total_input"
            if category_ok
            else f"energetic_input + structural_input differs from total_input by {category_gap:+.6g} Gt",
        )
    )

    recycled_ok = float(account.recycled_input) <= float(account.structural_input)
    checks.append(
        CheckResult(
            RECYCLED_WITHIN_STRUCTURAL,
            recycled_ok,
            "recycled_input fits within structural_input"
            if recycled_ok
            else f"recycled_input ({float(account.recycled_input):.6g} Gt) exceeds "
            f"structural_input ({float(account.structural_input):.6g} Gt)",
        )
    )

    stock_ok = float(account.net_stock_additions) <= float(account.structural_input)
    checks.append(
        CheckResult(
            STOCK_ADDITIONS_WITHIN_STRUCTURAL,
            stock_ok,
            "net_stock_additions fit within structural_input"
            if stock_ok
            else f"net_stock_additions ({float(account.net_stock_additions):.6g} Gt) exceed "
            f"structural_input ({float(account.structural_input):.6g} Gt)",
        )
    )

    residual = account.mass_residual()
    residual_share = residual / total if total > 0 else math.nan
    exactly_balanced = abs(residual) <= _EXACT_BALANCE_REL * max(total, 1.0)
    within_tolerance = (
        total > 0 and abs(residual) <= account.balance_tolerance * total
    )
    if exactly_balanced:
        balance_message = "outputs sum exactly to total_input"
    elif within_tolerance:
        balance_message = (
            f"unexplained residual {residual:.6g} Gt "
            f"({residual_share:.2%} of total input) within the "
            f"{account.balance_tolerance:.0%} tolerance"
        )
    else:
        balance_message = (
            f"unexplained residual {residual:.6g} Gt "
            f"({residual_share:.2%} of total input) exceeds the "
            f"{account.balance_tolerance:.0%} tolerance"
        )
    checks.append(
        CheckResult(MASS_BALANCE, exactly_balanced or within_tolerance, balance_message)
    )

    if any(not check.passed for check in checks):
        status = ValidationStatus.FAIL
    elif exactly_balanced:
        status = ValidationStatus.PASS
    else:
        status = ValidationStatus.PASS_WITH_WARNING
    return ValidationOutcome(
        status=status,
        residual=residual,
        residual_share=residual_share,
        checks=tuple(checks),
    )


def recoverable_input(account: MaterialFlowAccount) -> MassQuantity:
    """Input not dissipated in use: the structural share (total minus energetic)."""
    return MassQuantity(account.structural_input)


def annually_recoverable_input(account: MaterialFlowAccount) -> MassQuantity:
    """Structural input minus what this year locked into long-lived stocks.

    Raises:
        AccountInvariantError: If stock additions exceed structural input
            (such an account also fails ``validate``).
    """
    leftover = float(account.structural_input) - float(account.net_stock_additions)
    if leftover < 0:
        raise AccountInvariantError(
            f"net_stock_additions ({float(account.net_stock_additions):.6g} Gt) exceed "
            f"structural_input ({float(account.structural_input):.6g} Gt)"
        )
    return MassQuantity(leftover)


def waste_share(account: MaterialFlowAccount) -> float:
    """Fraction of total resource input ending as solid and liquid waste."""
    if float(account.total_input) <= 0:
        raise UndefinedDenominatorError("total_input", "waste_share")
    return float(account.waste_output) / float(account.total_input)
