# main.py (root entry point: `python main.py <subcommand>`)
from spm.main import cli

# =====================================================
# 🔹 Entry Point
# =====================================================
if __name__ == "__main__":
    cli(prog_name="spm")
