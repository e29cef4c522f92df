# spm/commands/build.py
from typing import Optional

import click

from spm.commands import write_output
from spm.dependencies.budget import get_budget
from spm.diagram import build_bfs, export
from spm.incremental import build_chain
from spm.infinite import build_upto

FORMATS = click.Choice(["dot", "json"])


# ---------------------------------------------------------------------
# 🏗 build: SPM(n)
# ---------------------------------------------------------------------
@click.command("build", help="Build SPM(n) and print it as DOT or JSON.")
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--method", type=click.Choice(["bfs", "incremental"]), default="bfs", show_default=True)
@click.option("--format", "fmt", type=FORMATS, default="dot", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
@click.pass_context
def build(ctx: click.Context, n: int, method: str, fmt: str, out: Optional[str]):
    budget = get_budget(ctx)
    d = build_bfs(n, budget) if method == "bfs" else build_chain(n, budget)[-1]
    write_output(export(d, fmt), out)


# ---------------------------------------------------------------------
# 🏗 build-upto: SPM(<=n)
# ---------------------------------------------------------------------
@click.command("build-upto", help="Build SPM(<=n) inside SPM(infinity).")
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--coords", type=click.Choice(["finite", "infinite"]), default="infinite", show_default=True)
@click.option("--mode", type=click.Choice(["incremental", "component"]), default="incremental", show_default=True)
@click.option("--format", "fmt", type=FORMATS, default="dot", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
@click.pass_context
def build_upto_command(ctx: click.Context, n: int, coords: str, mode: str, fmt: str, out: Optional[str]):
    d = build_upto(n, mode=mode, budget=get_budget(ctx))
    write_output(export(d, fmt, coords=coords), out)
