"""Flat key-value documents for accounts, economies and scenarios.

One shared grammar, three schemas:

    key = value          # one pair per line; '#' starts a comment
    sector = name, 1.2, reverse_flow      (economy: repeatable)
    step = set_recovery_rate, 1.0         (scenario: repeatable)

Unknown keys are rejected, scalar keys may appear at most once, and every
parse error names the offending line and field.  Rendering emits the same
grammar with shortest-round-trip floats, so parse(render(x)) == x.

Masses may be tagged t/kt/Mt/Gt via the ``unit`` key and are converted to
gigatonnes on load.  See docs/file-formats.md for the published schemas.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .accounts import DEFAULT_BALANCE_TOLERANCE, MASS_FIELDS, MaterialFlowAccount
from .errors import DocumentError, ProvenanceWarning
from .quantities import CANONICAL_MASS_UNIT, GT_PER_UNIT, MassQuantity, MonetaryQuantity
from .scenarios import (
    DivertWasteToStock,
    ReplaceEnergeticWithStock,
    ScaleReverseFlowValue,
    Scenario,
    SetRecoveryRate,
    Transformation,
)
from .valuemap import DEFAULT_CFC_RATE, EconomicAccount, SectorValue

ACCOUNT_REQUIRED_KEYS = ("year",) + MASS_FIELDS
ACCOUNT_OPTIONAL_KEYS = ("unit", "balance_tolerance")

ECONOMY_REQUIRED_KEYS = ("year", "gdp", "gfcf_rate")
ECONOMY_OPTIONAL_KEYS = ("cfc_rate", "services_share")

STEP_OPS: dict[str, type[Transformation]] = {
    "set_recovery_rate": SetRecoveryRate,
    "divert_waste_to_stock": DivertWasteToStock,
    "replace_energetic_with_stock": ReplaceEnergeticWithStock,
    "scale_reverse_flow_value": ScaleReverseFlowValue,
}
_OP_NAMES = {cls: op for op, cls in STEP_OPS.items()}


@dataclass(frozen=True)
class _Entry:
    line: int
    key: str
    value: str


def _parse_entries(text: str) -> list[_Entry]:
    entries = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DocumentError("expected 'key = value'", line=line_no)
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise DocumentError("missing key before '='", line=line_no)
        if not value:
            raise DocumentError("missing value after '='", line=line_no, field=key)
        entries.append(_Entry(line_no, key, value))
    return entries


def _split_scalars(
    entries: list[_Entry],
    *,
    scalar_keys: tuple[str, ...],
    repeated_key: str | None = None,
) -> tuple[dict[str, _Entry], list[_Entry]]:
    scalars: dict[str, _Entry] = {}
    repeated: list[_Entry] = []
    for entry in entries:
        if repeated_key is not None and entry.key == repeated_key:
            repeated.append(entry)
        elif entry.key in scalar_keys:
            if entry.key in scalars:
                raise DocumentError(
                    f"duplicate key (first seen on line {scalars[entry.key].line})",
                    line=entry.line,
                    field=entry.key,
                )
            scalars[entry.key] = entry
        else:
            raise DocumentError("unknown key", line=entry.line, field=entry.key)
    return scalars, repeated


def _require(scalars: dict[str, _Entry], keys: tuple[str, ...]) -> None:
    for key in keys:
        if key not in scalars:
            raise DocumentError("missing required field", field=key)


def _parse_float(entry: _Entry) -> float:
    try:
        return float(entry.value)
    except ValueError:
        raise DocumentError(
            f"not a number: {entry.value!r}", line=entry.line, field=entry.key
        ) from None


def _parse_int(entry: _Entry) -> int:
    try:
        return int(entry.value)
    except ValueError:
        raise DocumentError(
            f"not an integer: {entry.value!r}", line=entry.line, field=entry.key
        ) from None


def _parse_fraction(entry: _Entry) -> float:
    value = _parse_float(entry)
    if not 0.0 <= value <= 1.0:
        raise DocumentError(
            f"must be a fraction in [0, 1], got {value!r}", line=entry.line, field=entry.key
        )
    return value


def parse_account(text: str, *, default_tolerance: float | None = None) -> MaterialFlowAccount:
    """Parse an account document; masses are converted to Gt on load.

    ``default_tolerance`` applies only when the document carries no
    ``balance_tolerance`` key (``None`` means the library default).
    """
    scalars, _ = _split_scalars(
        _parse_entries(text), scalar_keys=ACCOUNT_REQUIRED_KEYS + ACCOUNT_OPTIONAL_KEYS
    )
    _require(scalars, ACCOUNT_REQUIRED_KEYS)

    unit = CANONICAL_MASS_UNIT
    if "unit" in scalars:
        entry = scalars["unit"]
        if entry.value not in GT_PER_UNIT:
            known = ", ".join(sorted(GT_PER_UNIT))
            raise DocumentError(
                f"unknown mass unit {entry.value!r} (expected one of: {known})",
                line=entry.line,
                field="unit",
            )
        unit = entry.value

    masses = {}
    for name in MASS_FIELDS:
        entry = scalars[name]
        value = _parse_float(entry)
        try:
            masses[name] = MassQuantity.from_unit(value, unit)
        except ValueError as exc:
            raise DocumentError(str(exc), line=entry.line, field=name) from None

    if "balance_tolerance" in scalars:
        tolerance = _parse_fraction(scalars["balance_tolerance"])
    elif default_tolerance is not None:
        tolerance = float(default_tolerance)
    else:
        tolerance = DEFAULT_BALANCE_TOLERANCE

    return MaterialFlowAccount(
        year=_parse_int(scalars["year"]), balance_tolerance=tolerance, **masses
    )


def render_account(account: MaterialFlowAccount) -> str:
    """Emit the canonical (Gt) document for an account."""
    lines = [f"year = {account.year}", f"unit = {CANONICAL_MASS_UNIT}"]
    lines += [f"{name} = {float(getattr(account, name))!r}" for name in MASS_FIELDS]
    lines.append(f"balance_tolerance = {account.balance_tolerance!r}")
    return "\n".join(lines) + "\n"


def _parse_sector(entry: _Entry) -> SectorValue:
    parts = [part.strip() for part in entry.value.split(",")]
    if len(parts) != 3:
        raise DocumentError(
            "expected 'sector = name, value, category'", line=entry.line, field="sector"
        )
    name, value_text, category = parts
    try:
        value = float(value_text)
    except ValueError:
        raise DocumentError(
            f"not a number: {value_text!r}", line=entry.line, field="sector"
        ) from None
    try:
        return SectorValue(name=name, value=MonetaryQuantity(value), category=category)
    except ValueError as exc:
        raise DocumentError(str(exc), line=entry.line, field="sector") from None


def parse_economy(text: str) -> EconomicAccount:
    """Parse an economy document.

    A missing ``cfc_rate`` defaults to the global-average estimate and is
    flagged with a ProvenanceWarning.
    """
    scalars, sector_entries = _split_scalars(
        _parse_entries(text),
        scalar_keys=ECONOMY_REQUIRED_KEYS + ECONOMY_OPTIONAL_KEYS,
        repeated_key="sector",
    )
    _require(scalars, ECONOMY_REQUIRED_KEYS)

    gdp = _parse_float(scalars["gdp"])
    if not math.isfinite(gdp) or gdp < 0:
        raise DocumentError(
            f"gdp must be non-negative and finite, got {gdp!r}",
            line=scalars["gdp"].line,
            field="gdp",
        )

    if "cfc_rate" in scalars:
        cfc_rate = _parse_fraction(scalars["cfc_rate"])
    else:
        cfc_rate = DEFAULT_CFC_RATE
        warnings.warn(
            f"cfc_rate missing; defaulting to {DEFAULT_CFC_RATE} "
            "(global-average estimate, no single published value)",
            ProvenanceWarning,
            stacklevel=2,
        )

    services_share = (
        _parse_fraction(scalars["services_share"]) if "services_share" in scalars else None
    )

    return EconomicAccount(
        year=_parse_int(scalars["year"]),
        gdp=MonetaryQuantity(gdp),
        gfcf_rate=_parse_fraction(scalars["gfcf_rate"]),
        cfc_rate=cfc_rate,
        sectors=tuple(_parse_sector(entry) for entry in sector_entries),
        services_share=services_share,
    )


def render_economy(economy: EconomicAccount) -> str:
    lines = [
        f"year = {economy.year}",
        f"gdp = {float(economy.gdp)!r}",
        f"gfcf_rate = {economy.gfcf_rate!r}",
        f"cfc_rate = {economy.cfc_rate!r}",
    ]
    if economy.services_share is not None:
        lines.append(f"services_share = {economy.services_share!r}")
    for sector in economy.sectors:
        lines.append(f"sector = {sector.name}, {float(sector.value)!r}, {sector.category}")
    return "\n".join(lines) + "\n"


def _parse_step(entry: _Entry) -> Transformation:
    parts = [part.strip() for part in entry.value.split(",")]
    if len(parts) != 2:
        raise DocumentError(
            "expected 'step = op, parameter'", line=entry.line, field="step"
        )
    op, parameter = parts
    cls = STEP_OPS.get(op)
    if cls is None:
        known = ", ".join(sorted(STEP_OPS))
        raise DocumentError(
            f"unknown op {op!r} (expected one of: {known})", line=entry.line, field="step"
        )
    if cls is ScaleReverseFlowValue:
        if parameter not in ("on", "off"):
            raise DocumentError(
                f"expected 'on' or 'off', got {parameter!r}", line=entry.line, field="step"
            )
        return ScaleReverseFlowValue(enabled=parameter == "on")
    try:
        fraction = float(parameter)
    except ValueError:
        raise DocumentError(
            f"not a number: {parameter!r}", line=entry.line, field="step"
        ) from None
    try:
        return cls(fraction=fraction)
    except ValueError as exc:
        raise DocumentError(str(exc), line=entry.line, field="step") from None


def parse_scenario(text: str) -> Scenario:
    scalars, step_entries = _split_scalars(
        _parse_entries(text), scalar_keys=("name",), repeated_key="step"
    )
    _require(scalars, ("name",))
    return Scenario(
        name=scalars["name"].value,
        steps=tuple(_parse_step(entry) for entry in step_entries),
    )


def render_scenario(scenario: Scenario) -> str:
    lines = [f"name = {scenario.name}"]
    for step in scenario.steps:
        if isinstance(step, ScaleReverseFlowValue):
            lines.append(f"step = scale_reverse_flow_value, {'on' if step.enabled else 'off'}")
        else:
            lines.append(f"step = {_OP_NAMES[type(step)]}, {step.fraction!r}")
    return "\n".join(lines) + "\n"
