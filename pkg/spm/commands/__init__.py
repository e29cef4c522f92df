# spm/commands/__init__.py
from typing import Optional

import click


def write_output(data: bytes, out: Optional[str]) -> None:
    """Bytes go to --out unchanged; on stdout a final newline is ensured."""
    if out:
        with open(out, "wb") as fh:
            fh.write(data)
        return
    text = data.decode()
    click.echo(text, nl=not text.endswith("\n"))
