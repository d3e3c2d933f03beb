from __future__ import annotations

import os
from collections.abc import Mapping
from dataclasses import dataclass, replace
from typing import Optional

from twistk.core.errors import ValidationError

__all__ = ["Settings", "DEFAULT_SETTINGS", "ENV_SEARCH_BUDGET", "ENV_MAX_GROUP_ORDER", "ENV_MAX_OPERATOR_ENTRIES"]

ENV_SEARCH_BUDGET = "TWISTK_SEARCH_BUDGET"
ENV_MAX_GROUP_ORDER = "TWISTK_MAX_GROUP_ORDER"
ENV_MAX_OPERATOR_ENTRIES = "TWISTK_MAX_OPERATOR_ENTRIES"


@dataclass(frozen=True)
class Settings:
    """Tunable limits for the exponential or cubic parts of twistk.

    Attributes:
        max_group_order: Largest group order accepted by table validation.
        search_budget: Node budget for lift and equivalence searches.
        max_operator_entries: Upper bound on ``d^(2(r+s))``, the size of the
            operator acting on ``d^s x d^r`` matrices.
        rs_bound: Default bound on ``r + s`` when building special categories.
    """

    max_group_order: int = 2000
    search_budget: int = 10**7
    max_operator_entries: int = 2**16
    rs_bound: int = 4

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None) -> Settings:
        """Build settings, overriding defaults from ``TWISTK_*`` variables."""

        env = os.environ if environ is None else environ
        settings = cls()
        overrides: dict[str, int] = {}
        for var, attr in (
            (ENV_SEARCH_BUDGET, "search_budget"),
            (ENV_MAX_GROUP_ORDER, "max_group_order"),
            (ENV_MAX_OPERATOR_ENTRIES, "max_operator_entries"),
        ):
            raw = env.get(var)
            if raw is None or raw.strip() == "":
                continue
            try:
                value = int(raw)
            except ValueError as exc:
                raise ValidationError(f"Environment variable {var}={raw!r} is not an integer") from exc
            if value <= 0:
                raise ValidationError(f"Environment variable {var} must be positive, got {value}")
            overrides[attr] = value
        return replace(settings, **overrides) if overrides else settings


DEFAULT_SETTINGS = Settings()
