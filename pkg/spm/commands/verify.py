# spm/commands/verify.py
import click

from spm.dependencies.budget import get_budget
from spm.verify import run_suites, summary_lines


# ---------------------------------------------------------------------
# ✅ verify: invariant suites
# ---------------------------------------------------------------------
@click.command("verify", help="Run every invariant suite at grain count n; exit 1 on any failure.")
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--show-failures", is_flag=True, help="Print the failing witnesses under each FAIL line.")
@click.pass_context
def verify(ctx: click.Context, n: int, show_failures: bool):
    results = run_suites(n, get_budget(ctx))
    for line, r in zip(summary_lines(results), results):
        click.echo(line)
        if show_failures and not r.passed:
            for witness in r.failures:
                click.echo(f"  {witness}")
    if not all(r.passed for r in results):
        ctx.exit(1)
