"""circuflow: material flow accounts, circularity metrics, GDP value attribution.

A small, dependency-free library plus a CLI.  It models one year's
economy-wide mass flows, computes the circularity metric family (apparent,
dissipative-adjusted, real, potential ceiling), partitions GDP across
flow categories with a legacy-stock residual, and evaluates declarative
what-if scenarios against the pair.
"""

from .accounts import (
    DEFAULT_BALANCE_TOLERANCE,
    CheckResult,
    MaterialFlowAccount,
    ValidationOutcome,
    ValidationStatus,
    annually_recoverable_input,
    recoverable_input,
    validate,
    waste_share,
)
from .errors import (
    AccountInvariantError,
    CircuflowError,
    DocumentError,
    MetricDomainError,
    OverAttributionError,
    ProvenanceWarning,
    ScenarioError,
    StockDepletionWarning,
    UndefinedDenominatorError,
)
from .metrics import (
    CircularityReport,
    apparent_circularity,
    dissipative_adjusted_circularity,
    metric_suite,
    potential_ceiling,
    real_circularity,
)
from .quantities import MassQuantity, MonetaryQuantity
from .scenarios import (
    DivertWasteToStock,
    ReplaceEnergeticWithStock,
    ScaleReverseFlowValue,
    Scenario,
    ScenarioResult,
    SetRecoveryRate,
    apply_scenario,
    full_recovery_potential,
)
from .valuemap import (
    CATEGORY_DISSIPATIVE_FLOW,
    CATEGORY_REVERSE_FLOW,
    DEFAULT_CFC_RATE,
    EconomicAccount,
    SectorValue,
    ValueAttribution,
    attribute_value,
    material_intensity,
    nfcf_rate,
    reverse_flow_gdp_share,
    stock_addition_value,
)

__version__ = "0.1.0"

__all__ = [
    "AccountInvariantError",
    "CATEGORY_DISSIPATIVE_FLOW",
    "CATEGORY_REVERSE_FLOW",
    "CheckResult",
    "CircuflowError",
    "CircularityReport",
    "DEFAULT_BALANCE_TOLERANCE",
    "DEFAULT_CFC_RATE",
    "DivertWasteToStock",
    "DocumentError",
    "EconomicAccount",
    "MassQuantity",
    "MaterialFlowAccount",
    "MetricDomainError",
    "MonetaryQuantity",
    "OverAttributionError",
    "ProvenanceWarning",
    "ReplaceEnergeticWithStock",
    "ScaleReverseFlowValue",
    "Scenario",
    "ScenarioError",
    "ScenarioResult",
    "SectorValue",
    "SetRecoveryRate",
    "StockDepletionWarning",
    "UndefinedDenominatorError",
    "ValidationOutcome",
    "ValidationStatus",
    "ValueAttribution",
    "annually_recoverable_input",
    "apparent_circularity",
    "apply_scenario",
    "attribute_value",
    "dissipative_adjusted_circularity",
    "full_recovery_potential",
    "material_intensity",
    "metric_suite",
    "nfcf_rate",
    "potential_ceiling",
    "real_circularity",
    "recoverable_input",
    "reverse_flow_gdp_share",
    "stock_addition_value",
    "validate",
    "waste_share",
]
