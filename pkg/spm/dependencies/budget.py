# spm/dependencies/budget.py
from typing import Optional

import click

from spm.config import settings


def resolve_budget(value: Optional[int]) -> int:
    """--budget when given, else SPM_BUDGET from the environment / .env."""
    if value is not None and value < 1:
        raise click.BadParameter("budget must be positive", param_hint="--budget")
    return settings.SPM_BUDGET if value is None else value


def get_budget(ctx: click.Context) -> int:
    """
    Dependency for commands: the node budget resolved once by the root group.
    Commands invoked outside the group fall back to the settings value.
    """
    obj = ctx.find_root().obj or {}
    return obj.get("budget", settings.SPM_BUDGET)
