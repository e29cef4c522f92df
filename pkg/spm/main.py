# spm/main.py (the `spm` command line)
import logging
import sys
from typing import Optional

import click

from spm import __version__
from spm.commands import bench, build, count, export, query, reconcile, tree, verify
from spm.config import settings
from spm.core.errors import SpmError
from spm.dependencies.budget import resolve_budget

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]


class SpmGroup(click.Group):
    """Turns package errors into a one-line message and the error's exit code."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except SpmError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(exc.exit_code)


# =====================================================
# 🔹 Root group
# =====================================================
@click.group(cls=SpmGroup)
@click.version_option(__version__, prog_name="spm")
@click.option("--budget", type=int, default=None,
              help="Maximum number of nodes a single construction may intern (default: SPM_BUDGET).")
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default=None,
              help="Log level for stderr (default: SPM_LOG_LEVEL).")
@click.pass_context
def cli(ctx: click.Context, budget: Optional[int], log_level: Optional[str]):
    """Sand Pile Model lattices: construction, verification and counting."""
    logging.basicConfig(
        level=(log_level or settings.SPM_LOG_LEVEL).upper(),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )
    ctx.ensure_object(dict)
    ctx.obj["budget"] = resolve_budget(budget)


# =====================================================
# 🔹 Command mounting
# =====================================================
cli.add_command(build.build)
cli.add_command(build.build_upto_command)
cli.add_command(count.count)
cli.add_command(query.query)
cli.add_command(tree.tree)
cli.add_command(verify.verify)
cli.add_command(reconcile.reconcile)
cli.add_command(export.export)
cli.add_command(bench.bench)


if __name__ == "__main__":
    cli()
