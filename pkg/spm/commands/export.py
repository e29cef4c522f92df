# spm/commands/export.py
from pathlib import Path
from typing import Optional

import click

from spm.commands import write_output
from spm.diagram import export as export_diagram, import_json


# ---------------------------------------------------------------------
# 📤 export: re-serialize a stored JSON diagram
# ---------------------------------------------------------------------
@click.command("export", help="Read a JSON diagram and print it as DOT or JSON.")
@click.argument("source", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=click.Choice(["dot", "json"]), default="dot", show_default=True)
@click.option("--coords", type=click.Choice(["finite", "infinite"]), default="infinite", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None)
def export(source: str, fmt: str, coords: str, out: Optional[str]):
    d = import_json(Path(source).read_bytes())
    write_output(export_diagram(d, fmt, coords=coords), out)
