# spm/commands/reconcile.py
import io
from typing import Optional

import click

from spm.commands import write_output
from spm.counting import reconcile as run_reconcile, write_report_csv, write_report_json
from spm.dependencies.budget import get_budget


# ---------------------------------------------------------------------
# 📊 reconcile: recurrences vs oracles
# ---------------------------------------------------------------------
@click.command("reconcile", help="Compare every counting formula with its oracle. "
                                 "Mismatches are reported as data; the exit status stays 0.")
@click.option("--max-n", type=click.IntRange(min=0), required=True)
@click.option("--max-l", type=click.IntRange(min=1), default=8, show_default=True)
@click.option("--max-k", type=click.IntRange(min=1), default=4, show_default=True)
@click.option("--gp-max-n", type=click.IntRange(min=4), default=200, show_default=True,
              help="Upper end of the generating-partition count comparison.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
@click.pass_context
def reconcile(ctx: click.Context, max_n: int, max_l: int, max_k: int, gp_max_n: int, fmt: str, out: Optional[str]):
    report = run_reconcile(max_n, max_l, max_k, gp_max_n, get_budget(ctx))
    buf = io.StringIO()
    if fmt == "csv":
        write_report_csv(report, buf)
    else:
        write_report_json(report, buf)
    write_output(buf.getvalue().encode(), out)
    click.echo(f"{len(report.rows)} rows, {len(report.mismatches())} mismatches", err=True)
