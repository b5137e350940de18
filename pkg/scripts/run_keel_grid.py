#!/usr/bin/env python3
"""Run the bundled 11-dataset comparison grid and write reports to out/.

Equivalent to:

    entrosmote compare --plan plans/keel11.toml --out out --jobs 4

but kept as a script so the default experiment is one command away.
"""

import argparse
import sys
from pathlib import Path

from entrosmote.cli import main

REPO = Path(__file__).resolve().parent.parent


def parse_args():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--plan", default=str(REPO / "plans" / "keel11.toml"))
    p.add_argument("--out", default=str(REPO / "out"))
    p.add_argument("--jobs", type=int, default=4)
    return p.parse_args()


if __name__ == "__main__":
    args = parse_args()
    sys.exit(main([
        "compare", "--plan", args.plan, "--out", args.out, "--jobs", str(args.jobs),
    ]))
