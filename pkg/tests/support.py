"""Shared test plumbing: reference records, paths, random generators.

The oracles themselves live next to the tests that use them, written
fresh from raw fields; only construction helpers are shared.
"""

from __future__ import annotations

import random
from pathlib import Path

from circuflow import EconomicAccount, MaterialFlowAccount, MonetaryQuantity, SectorValue

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = REPO_ROOT / "data"
SCENARIO_DIR = REPO_ROOT / "scenarios"

ACCOUNT_PATH = DATA_DIR / "global_2020.account"
ECONOMY_PATH = DATA_DIR / "global_2020.economy"
FULL_RECOVERY_PATH = SCENARIO_DIR / "full_recovery.scenario"
WASTE_DIVERSION_PATH = SCENARIO_DIR / "waste_diversion.scenario"


def reference_account(**overrides) -> MaterialFlowAccount:
    """The 2020 global account: 104 = 40 + 64, outputs 45 + 25 + 31."""
    fields = dict(
        year=2020,
        total_input=104.0,
        energetic_input=40.0,
        structural_input=64.0,
        recycled_input=9.0,
        emissions_output=45.0,
        waste_output=25.0,
        net_stock_additions=31.0,
    )
    fields.update(overrides)
    return MaterialFlowAccount(**fields)


def reference_economy(**overrides) -> EconomicAccount:
    """The 2020 global economy: $86T GDP, 26%/13% GFCF/CFC, $1.2T + $15T sectors."""
    fields = dict(
        year=2020,
        gdp=86.0,
        gfcf_rate=0.26,
        cfc_rate=0.13,
        sectors=(
            SectorValue("waste_management", MonetaryQuantity(1.2), "reverse_flow"),
            SectorValue("fossil_energy", MonetaryQuantity(6.0), "dissipative_flow"),
            SectorValue("agriculture_food", MonetaryQuantity(4.5), "dissipative_flow"),
            SectorValue("chemicals_industrial_materials", MonetaryQuantity(4.5), "dissipative_flow"),
        ),
        services_share=0.65,
    )
    fields.update(overrides)
    return EconomicAccount(**fields)


def random_valid_account(rng: random.Random, year: int = 2020) -> MaterialFlowAccount:
    """A random account guaranteed to pass validation.

    Also guaranteed saturable: the recovery increase needed to reach 100%
    of the annually recoverable pool fits inside the waste bin, and the
    recycled flow never exceeds the pool (real rate stays in [0, 1]).
    """
    total = rng.uniform(1.0, 500.0)
    energetic = rng.uniform(0.05, 0.8) * total
    structural = total - energetic
    stock_additions = rng.uniform(0.0, 0.9) * structural
    residual_target = rng.uniform(-0.04, 0.04) * total
    outputs = total - residual_target
    emissions = rng.uniform(0.0, 1.0) * (outputs - stock_additions)
    waste = outputs - stock_additions - emissions
    pool = structural - stock_additions
    recycled = rng.uniform(max(0.0, pool - waste), pool)
    return MaterialFlowAccount(
        year=year,
        total_input=total,
        energetic_input=energetic,
        structural_input=structural,
        recycled_input=recycled,
        emissions_output=emissions,
        waste_output=waste,
        net_stock_additions=stock_additions,
    )


def random_economy(rng: random.Random, year: int = 2020) -> EconomicAccount:
    """A random, non-depleting economy that never over-attributes."""
    gdp = rng.uniform(1.0, 200.0)
    gfcf = rng.uniform(0.0, 0.5)
    cfc = rng.uniform(0.0, gfcf)
    budget = (1.0 - (gfcf - cfc)) * gdp
    count = rng.randint(0, 5)
    sectors = []
    if count:
        weights = [rng.random() for _ in range(count)]
        total_weight = sum(weights) or 1.0
        total_value = rng.uniform(0.0, 0.9) * budget
        for index, weight in enumerate(weights):
            sectors.append(
                SectorValue(
                    name=f"sector_{index}",
                    value=MonetaryQuantity(weight / total_weight * total_value),
                    category=rng.choice(("reverse_flow", "dissipative_flow")),
                )
            )
    return EconomicAccount(
        year=year, gdp=MonetaryQuantity(gdp), gfcf_rate=gfcf, cfc_rate=cfc, sectors=tuple(sectors)
    )


def scale_economy(economy: EconomicAccount, factor: float) -> EconomicAccount:
    """Multiply GDP and every sector value by ``factor`` (rates untouched)."""
    return EconomicAccount(
        year=economy.year,
        gdp=MonetaryQuantity(float(economy.gdp) * factor),
        gfcf_rate=economy.gfcf_rate,
        cfc_rate=economy.cfc_rate,
        sectors=tuple(
            SectorValue(s.name, MonetaryQuantity(float(s.value) * factor), s.category)
            for s in economy.sectors
        ),
        services_share=economy.services_share,
    )
