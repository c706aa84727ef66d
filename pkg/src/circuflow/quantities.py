"""Dimensional scalar types: mass flows in Gt/yr and money in trillions/yr.

Both types subclass float so downstream formulas stay plain arithmetic;
construction is where the invariants live.  Every mass is stored in
gigatonnes per year: ingestion converts tagged tonne/kilotonne/megatonne
values once, on load, so no downstream formula ever sees a mixed unit.
"""

from __future__ import annotations

import math

#: Conversion factors to gigatonnes for the accepted mass unit tags.
GT_PER_UNIT = {"t": 1e-9, "kt": 1e-6, "Mt": 1e-3, "Gt": 1.0}

CANONICAL_MASS_UNIT = "Gt"


class MassQuantity(float):
    """Non-negative, finite mass flow in gigatonnes per year."""

    __slots__ = ()

    def __new__(cls, value: float) -> "MassQuantity":
        v = float(value)
        if not math.isfinite(v):
            raise ValueError(f"mass must be finite, got {value!r}")
        if v < 0:
            raise ValueError(f"mass must be non-negative, got {value!r}")
        return super().__new__(cls, v)

    @classmethod
    def from_unit(cls, value: float, unit: str) -> "MassQuantity":
        """Convert a tagged mass value to gigatonnes.

        Raises:
            ValueError: If ``unit`` is not one of t, kt, Mt, Gt.
        """
        try:
            factor = GT_PER_UNIT[unit]
        except KeyError:
            known = ", ".join(sorted(GT_PER_UNIT))
            raise ValueError(f"unknown mass unit {unit!r} (expected one of: {known})") from None
        return cls(float(value) * factor)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"MassQuantity({float(self)!r})"


class MonetaryQuantity(float):
    """Finite monetary aggregate in trillion currency units per year.

    May be signed: net capital formation, for instance, is negative in a
    year of stock depletion.  Non-negativity, where required, is enforced
    by the owning record (GDP, sector values).
    """

    __slots__ = ()

    def __new__(cls, value: float) -> "MonetaryQuantity":
        v = float(value)
        if not math.isfinite(v):
            raise ValueError(f"monetary value must be finite, got {value!r}")
        return super().__new__(cls, v)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"MonetaryQuantity({float(self)!r})"
