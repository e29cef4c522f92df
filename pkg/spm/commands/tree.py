# spm/commands/tree.py
import csv
import io
from typing import Optional

import click

from spm.commands import write_output
from spm.core.partition import parse_partition
from spm.dependencies.budget import get_budget
from spm.sptree import build_tree, chain_decomposition, chain_rows, export_tree_dot, successors_via_tree


@click.group("tree", help="SPT(infinity): classification, rightmost chain and materialization.")
def tree():
    pass


# ---------------------------------------------------------------------
# 🏷 tree classify
# ---------------------------------------------------------------------
@tree.command("classify", help="Print the N_k / X_k roles of a partition.")
@click.argument("partition")
@click.pass_context
def classify(ctx: click.Context, partition: str):
    s = parse_partition(partition)
    t = build_tree(0, root=s, budget=get_budget(ctx))

    def joined(values) -> str:
        return ",".join(str(v) for v in sorted(values)) or "-"

    click.echo(f"partition: {s}")
    click.echo(f"n_roots: {joined(t.nk_roots[s])}")
    click.echo(f"x_order: {t.xk_root[s]}")
    click.echo(f"n_memberships: {joined(t.memberships[s])}")
    click.echo(f"successor_labels: {joined(successors_via_tree(s, t))}")


# ---------------------------------------------------------------------
# ⛓ tree chain
# ---------------------------------------------------------------------
@tree.command("chain", help="Rows level,node,attachment along the rightmost chain.")
@click.option("--depth", type=click.IntRange(min=1), required=True)
def chain(depth: int):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["level", "node", "attachment"])
    for row in chain_rows(chain_decomposition(depth)):
        writer.writerow([row.level, row.node, row.attachment])
    click.echo(buf.getvalue(), nl=False)


# ---------------------------------------------------------------------
# 🌳 tree build
# ---------------------------------------------------------------------
@tree.command("build", help="Materialize the tree to a depth and print it as DOT.")
@click.option("--depth", type=click.IntRange(min=0), required=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
@click.pass_context
def build(ctx: click.Context, depth: int, out: Optional[str]):
    write_output(export_tree_dot(build_tree(depth, budget=get_budget(ctx))), out)
