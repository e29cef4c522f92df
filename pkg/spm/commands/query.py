# spm/commands/query.py
import click

from spm.core.errors import GrainCountMismatchError
from spm.core.partition import parse_partition
from spm.dependencies.budget import get_budget
from spm.diagram import build_bfs, infimum, leq, supremum
from spm.infinite import inf_infinite, leq_infinite, parse_infinite, sup_infinite


# ---------------------------------------------------------------------
# ⚖️ query: order, meet and join
# ---------------------------------------------------------------------
@click.command("query", help="Compare two partitions or compute their meet / join. "
                             "Literals starting with '~' are SPM(infinity) elements.")
@click.argument("op", type=click.Choice(["inf", "sup", "leq"]))
@click.argument("a")
@click.argument("b")
@click.pass_context
def query(ctx: click.Context, op: str, a: str, b: str):
    if a.strip().startswith("~") or b.strip().startswith("~"):
        x, y = parse_infinite(a), parse_infinite(b)
        if op == "leq":
            click.echo(leq_infinite(x, y).value)
        else:
            click.echo(inf_infinite(x, y) if op == "inf" else sup_infinite(x, y, get_budget(ctx)))
        return

    x, y = parse_partition(a), parse_partition(b)
    if x.n != y.n:
        raise GrainCountMismatchError(f"{x} has {x.n} grains but {y} has {y.n}")
    if op == "leq":
        click.echo(leq(x, y).value)
    elif op == "inf":
        click.echo(infimum(x, y))
    else:
        click.echo(supremum(x, y, build_bfs(x.n, get_budget(ctx))))
