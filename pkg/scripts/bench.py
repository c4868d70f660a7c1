"""Reproduction table for the desk-scale boards.

Chains `hdqueens solve` once per board and cut family, then prints a markdown
table built from the JSON reports. Nothing in the table is typed by hand.

    python3 scripts/bench.py [--out-dir DIR] [--time-limit S] [--cuts base,cs]
"""
import argparse
import json
import subprocess
import sys
import tempfile
from pathlib import Path

from hdqueens.bounds import Exact, known

BOARDS = list(dict.fromkeys([(1, 3), (2, 3), (3, 3), (4, 3), (5, 3), (3, 4), (4, 4), (3, 5)] + [(2, d) for d in range(1, 6)]))


def run(n, d, cuts, out_dir, time_limit):
    cmd = [sys.executable, "-m", "hdqueens.cli", "--format", "json", "--out-dir", str(out_dir),
           "solve", "-n", str(n), "-d", str(d), "--cuts", cuts, "--time-limit", str(time_limit)]
    proc = subprocess.run(cmd, capture_output=True, text=True, check=False)
    if proc.returncode not in (0, 2):
        raise SystemExit(f"{' '.join(cmd)} failed ({proc.returncode}): {proc.stderr.strip()}")
    return json.loads(proc.stdout)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", help="keep certificates and reports here (default: temporary)")
    ap.add_argument("--time-limit", type=float, default=600.0)
    ap.add_argument("--cuts", default="base,cs", help="comma separated families")
    args = ap.parse_args(argv)
    families = args.cuts.split(",")

    with tempfile.TemporaryDirectory() as tmp:
        out = Path(args.out_dir or tmp)
        print("| board | known | " + " | ".join(f"{c} primal | {c} status | {c} nodes | {c} s" for c in families) + " |")
        print("|---|---|" + "---|" * (4 * len(families)))
        for n, d in BOARDS:
            value = known(n, d)
            cells = [f"({n},{d})", str(value.k) if isinstance(value, Exact) else "?"]
            for cuts in families:
                rep = run(n, d, cuts, out, args.time_limit)
                cells += [str(rep["primal"]), rep["status"], str(rep["nodes"]), f"{rep['seconds']:.2f}"]
            print("| " + " | ".join(cells) + " |", flush=True)


if __name__ == "__main__":
    main()
