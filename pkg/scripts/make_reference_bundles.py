#!/usr/bin/env python3
"""Regenerate the CSV bundles under figures/tests/data/.

The figure tests consume simulator output through files only, so the
bundles are checked in. Rerun this after changing any of the shipped
configs or the output formats, then commit the result.
"""

import shutil
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "figures" / "tests" / "data"

BUNDLES = (
    ("traces", ["slif", "simulate", "--config", "configs/traces.json"]),
    ("response", ["slif", "ist-sweep", "--config", "configs/response.json",
                  "--jobs", "4"]),
    ("map", ["slif", "grid-sweep", "--config", "configs/map.json",
             "--jobs", "4"]),
)


def main() -> int:
    for name, cmd in BUNDLES:
        out = DATA / name
        if out.exists():
            shutil.rmtree(out)
        print(f"[{name}] {' '.join(cmd)}")
        subprocess.run([*cmd, "--out", str(out)], cwd=ROOT, check=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
