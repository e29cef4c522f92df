# spm/commands/count.py
import click

from spm.counting import C_VARIANTS, DELTA_VARIANTS, count as count_elements
from spm.dependencies.budget import get_budget


# ---------------------------------------------------------------------
# 🔢 count: |SPM(n)|
# ---------------------------------------------------------------------
@click.command("count", help="Print |SPM(n)| computed by the chosen method.")
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--method", type=click.Choice(["bfs", "incremental", "p-rec", "tree"]), default="bfs", show_default=True)
@click.option("--variant", type=click.Choice(DELTA_VARIANTS + C_VARIANTS), default=None,
              help="delta variant for p-rec (default corrected), c variant for tree (default structural-c).")
@click.pass_context
def count(ctx: click.Context, n: int, method: str, variant):
    if method == "p-rec" and variant in C_VARIANTS or method == "tree" and variant in DELTA_VARIANTS:
        raise click.BadParameter(f"{variant} does not apply to --method {method}", param_hint="--variant")
    click.echo(count_elements(n, method, variant, budget=get_budget(ctx)))
