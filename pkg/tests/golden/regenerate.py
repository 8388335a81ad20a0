"""Rewrite the expected outputs of the CLI golden cases.

Run from anywhere: ``python3 tests/golden/regenerate.py``.  Review the diff
before committing; the goldens are the contract.
"""

import json
import os
import pathlib

from resinterp.cli import run_command

HERE = pathlib.Path(__file__).resolve().parent


def main():
    os.chdir(HERE)
    for case in json.loads((HERE / "cases.json").read_text()):
        code, out = run_command(case["args"])
        if code != case["exit"]:
            raise SystemExit(f"{case['name']}: exit {code}, expected {case['exit']}")
        (HERE / f"{case['name']}.out").write_text(out, encoding="utf-8")


if __name__ == "__main__":
    main()
