# spm/commands/bench.py
import csv
import io
import time

import click

from spm.dependencies.budget import get_budget
from spm.infinite import build_upto
from spm.schemas import BenchRow


def bench_rows(max_n: int, min_n: int = 0, budget=None) -> list[BenchRow]:
    """Wall-clock of build_upto(n) per node + edge, for min_n <= n <= max_n."""
    rows = []
    for n in range(min_n, max_n + 1):
        start = time.perf_counter()
        d = build_upto(n, budget=budget)
        seconds = time.perf_counter() - start
        size = len(d) + len(d.edges)
        rows.append(BenchRow(
            n=n, nodes=len(d), edges=len(d.edges), seconds=seconds, seconds_per_element=seconds / size,
        ))
    return rows


# ---------------------------------------------------------------------
# ⏱ bench: SPM(<=n) construction time
# ---------------------------------------------------------------------
@click.command("bench", help="Time build_upto(n) for every n up to --max-n; CSV on stdout.")
@click.option("--max-n", type=click.IntRange(min=0), required=True)
@click.option("--min-n", type=click.IntRange(min=0), default=0, show_default=True)
@click.pass_context
def bench(ctx: click.Context, max_n: int, min_n: int):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "nodes", "edges", "seconds", "seconds_per_element"])
    for r in bench_rows(max_n, min_n, get_budget(ctx)):
        writer.writerow([r.n, r.nodes, r.edges, f"{r.seconds:.6f}", f"{r.seconds_per_element:.3e}"])
    click.echo(buf.getvalue(), nl=False)
