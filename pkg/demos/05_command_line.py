"""
The command-line tool
=====================

The same pipeline driven from files in corpus/, with JSON reports.
"""

import json
from pathlib import Path

from formalcr.cli import run_command

corpus = Path(__file__).resolve().parent.parent / "corpus"

for argv in (["finite-type", "codim2.man"],
             ["constancy", "lewy.man", "const-half.map"],
             ["constancy", "lewy.man", "w.map"],
             ["constancy", "lebl12.man", "lebl12-ratio.map", "--jmax", "3"]):
    code, report = run_command([str(corpus / a) if "." in a else a for a in argv])
    print(f"formalcr {' '.join(argv):45} exit {code}  {report['verdict']['status']}")

code, report = run_command(["finite-type", str(corpus / "codim2.man")])
stage = report["stages"][-1]
print(json.dumps(stage["certificate"], indent=2, sort_keys=True))
